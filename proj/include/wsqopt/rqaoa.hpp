#pragma once

// Recursive QAOA on MAXCUT: depth-one correlation matrices, aggregation over
// several warm starts, correlation-driven node elimination, recursion down to
// an exhaustively solvable size and back-substitution. A purely classical
// variant takes its correlations from the best GW cuts instead.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wsqopt/problem.hpp"
#include "wsqopt/relaxation.hpp"
#include "wsqopt/simulator.hpp"
#include "wsqopt/variational.hpp"

namespace wsqopt {

/// Symmetric, zero diagonal, nonzero only on edges.
using CorrelationMatrix = Eigen::MatrixXd;

/// M_ij = <Z_i Z_j> of the depth-one state for every edge (i, j).
CorrelationMatrix correlation_matrix_depth1(const WeightedGraph& g, std::span<const double> c_star,
                                            double epsilon, double beta, double gamma, MixerKind kind);

/// Correlators of the averaged distribution, i.e. the entrywise mean.
CorrelationMatrix aggregate_correlations(std::span<const CorrelationMatrix> runs);

/// z_eliminated = sign * z_kept.
struct EliminationRecord {
    int eliminated = 0;
    int kept = 0;
    int sign = 1;
    double correlator = 0.0;
};

struct Elimination {
    ReducedGraph reduced;
    EliminationRecord record;  ///< indices of the graph passed in
};

/// Picks the edge with the largest |M_ij| (ties: smallest (i, j)), removes the
/// larger endpoint j and substitutes z_j = sign(M_ij) z_i, sign(0) = +1.
/// Throws AmbiguousElimination when every edge correlator is zero unless
/// allow_ambiguous is set, in which case the first edge is used with sign +1.
Elimination eliminate(const WeightedGraph& g, const CorrelationMatrix& m, bool allow_ambiguous = false);

enum class RqaoaMode { Standard, WarmStart, ClassicalGw };

const char* to_string(RqaoaMode mode) noexcept;
/// "standard", "warm-start" (or "ws"), "classical-gw".
RqaoaMode parse_rqaoa_mode(std::string_view text);

struct RqaoaConfig {
    RqaoaMode mode = RqaoaMode::WarmStart;
    int n_stop = 1;
    int gw_samples = 10;  ///< N
    int gw_keep = 5;      ///< M
    double epsilon = 0.25;
    GridSpec grid;
    OptimizerConfig optimizer;
    SdpOptions sdp;
    /// Skips the angle optimisation and uses these (beta, gamma) everywhere.
    std::optional<std::pair<double, double>> fixed_angles;
    bool allow_ambiguous = false;

    void validate() const;
};

struct RqaoaIteration {
    int iter = 0;
    int n = 0;  ///< nodes before the elimination
    EliminationRecord record;  ///< original node ids
    double offset = 0.0;
    std::optional<double> gw_best_value;
    /// Optimised angles, one pair per QAOA run of the iteration.
    std::vector<std::pair<double, double>> angles;
};

struct RqaoaResult {
    CutAssignment cut{Spins{1}};  ///< canonical, original node ids
    double value = 0.0;
    double reduced_value = 0.0;  ///< exact optimum of the final reduced graph
    double offset_total = 0.0;
    std::vector<RqaoaIteration> trace;
};

/// Eliminates until at most n_stop nodes remain (or the graph has no edges),
/// solves the rest exhaustively and back-substitutes. Every run checks that
/// value == reduced_value + offset_total.
RqaoaResult run_rqaoa(const WeightedGraph& g, const RqaoaConfig& cfg, std::uint64_t seed);

/// run_rqaoa in ClassicalGw mode.
RqaoaResult run_classical_recursive_gw(const WeightedGraph& g, RqaoaConfig cfg, std::uint64_t seed);

}  // namespace wsqopt
