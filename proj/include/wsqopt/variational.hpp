#pragma once

// Classical outer loop for QAOA: a Nelder-Mead simplex minimiser, grid-search
// seeding over (beta, gamma) and the driver that optimises a QAOA circuit.

#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "wsqopt/problem.hpp"
#include "wsqopt/simulator.hpp"

namespace wsqopt {

struct OptimizerConfig {
    int max_evals = 2000;
    double x_tolerance = 1e-7;
    double f_tolerance = 1e-10;
    double initial_simplex_scale = 0.25;

    void validate() const;
};

enum class Termination { Converged, MaxEvals };

struct MinimizeResult {
    std::vector<double> x;
    double f = 0.0;
    int evals = 0;
    Termination reason = Termination::Converged;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead with reflection 1, expansion 2, contraction 0.5 and shrink 0.5.
/// The starting simplex is x0 plus scale * e_i. Stops once the simplex is
/// within x_tolerance of its best vertex and the value spread is within
/// f_tolerance, or after max_evals evaluations. f <= objective(x0) always.
MinimizeResult minimize(const Objective& objective, std::vector<double> x0, const OptimizerConfig& cfg = {});

struct GridSpec {
    double beta_lo = 0.0;
    double beta_hi = std::numbers::pi;
    double gamma_lo = 0.0;
    double gamma_hi = 2.0 * std::numbers::pi;
    int beta_points = 24;
    int gamma_points = 24;
    /// false: points lo + k (hi - lo) / points (upper end excluded);
    /// true:  points lo + k (hi - lo) / (points - 1).
    bool closed = false;

    void validate() const;
    double beta(int k) const;
    double gamma(int k) const;
};

struct GridPoint {
    double beta = 0.0;
    double gamma = 0.0;
    double value = 0.0;
};

/// Minimum of objective(beta, gamma) over the grid. Ties go to the smaller
/// beta, then the smaller gamma.
GridPoint grid_search(const std::function<double(double, double)>& objective, const GridSpec& spec = {});

enum class SeedingKind { Grid, Random, Explicit };

struct Seeding {
    SeedingKind kind = SeedingKind::Grid;
    GridSpec grid;                   ///< grid seeding, and the ranges of random starts
    int starts = 10;                 ///< random starts
    std::uint64_t seed = 0;          ///< random starts
    std::optional<QaoaParams> start; ///< explicit seeding
};

struct QaoaResult {
    QaoaParams params;
    double energy = 0.0;
    StateVector state{1};
    int evals = 0;
    std::optional<double> p_target;
};

/// Minimises <H_C> over the 2p angles (betas first, then gammas). Grid seeding
/// searches (beta_1, gamma_1) with the remaining layers at zero; random seeding
/// keeps the best of `starts` local searches; explicit seeding starts from
/// `start` (which must have depth p). When `target` is given, p_target is the
/// probability of that cut (either orientation).
QaoaResult run_qaoa(const IsingModel& ising, MixerKind kind, const std::optional<std::vector<double>>& c_star,
                    double epsilon, int p, const Seeding& seeding = {}, const OptimizerConfig& cfg = {},
                    const std::optional<Spins>& target = std::nullopt);

/// |amplitude|^2 of a basis state.
double probability_of(const StateVector& state, std::uint64_t index);
/// max(P(z), P(-z)).
double probability_of_cut(const StateVector& state, std::span<const int> z);

}  // namespace wsqopt
