#pragma once

// Continuous relaxations and classical randomized rounding.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "wsqopt/problem.hpp"
#include "wsqopt/random.hpp"

namespace wsqopt {

struct RelaxedSolution {
    Eigen::VectorXd c_star;  ///< in [0, 1]^n
    double objective = 0.0;  ///< x^T sigma x + mu^T x + offset at c_star
    int iterations = 0;
    double kkt_residual = 0.0;
};

struct QpOptions {
    double tol = 1e-9;
    int max_iters = 2'000'000;
};

/// Box-constrained convex QP min_{x in [0,1]^n} x^T sigma x + mu^T x by
/// accelerated projected gradient with step 1/L, L = 2 lambda_max(sigma).
/// Stops when the projected-gradient (KKT) residual drops below tol.
/// Throws NotConvex if sigma has an eigenvalue below -1e-9 and IterationLimit
/// if max_iters is reached first.
RelaxedSolution solve_qp(const QuboProblem& q, const QpOptions& options = {});

/// max_i of the box-KKT violation at x for gradient g.
double box_kkt_residual(const Eigen::VectorXd& x, const Eigen::VectorXd& gradient);

/// Unit-norm rows v_i of an n x k matrix.
struct GramFactor {
    Eigen::MatrixXd vectors;
    double objective = 0.0;  ///< 1/2 sum_ij w_ij (1 - v_i . v_j)
    bool stationary = false;
    int sweeps = 0;

    int n() const noexcept { return static_cast<int>(vectors.rows()); }
    int rank() const noexcept { return static_cast<int>(vectors.cols()); }
    /// Throws InvalidInput unless every row has unit norm within 1e-9.
    void validate() const;
};

struct SdpOptions {
    int rank = 0;  ///< 0 selects ceil(sqrt(2n))
    double tol = 1e-9;
    int max_sweeps = 100'000;
};

int default_sdp_rank(int n);

/// MAXCUT SDP in Burer-Monteiro form, maximised by cyclic coordinate updates
/// v_i <- normalize(-sum_j w_ij v_j) from a seeded random start. A zero
/// weighted sum leaves v_i in place. Returns the last iterate with
/// stationary = false when max_sweeps runs out.
GramFactor solve_maxcut_sdp(const WeightedGraph& g, std::uint64_t seed, const SdpOptions& options = {});

/// Relaxation value of arbitrary unit vectors.
double sdp_objective(const WeightedGraph& g, const Eigen::MatrixXd& vectors);

/// Random-hyperplane rounding: z_i = +1 iff r . v_i >= 0 with r isotropic.
CutAssignment gw_round(const GramFactor& f, Rng& rng);

/// (1/pi) sum_ij w_ij arccos(clamp(v_i . v_j)), the mean cut of gw_round.
double expected_cut_value(const WeightedGraph& g, const GramFactor& f);

/// (2/pi) min_{0 < theta <= pi} theta / (1 - cos theta), computed numerically.
double gw_alpha();

struct GwCuts {
    GramFactor factor;
    std::vector<CutAssignment> cuts;  ///< canonical, best first
    std::vector<double> values;       ///< cut values, aligned with cuts
    std::vector<double> all_values;   ///< every rounding's value, in draw order
};

/// N roundings of one SDP solution, canonicalised and deduplicated, sorted by
/// cut value (descending, ties by lexicographic canonical spins); the top M are
/// kept.
GwCuts gw_best_cuts(const WeightedGraph& g, int num_samples, int keep, std::uint64_t seed,
                    const SdpOptions& options = {});

}  // namespace wsqopt
