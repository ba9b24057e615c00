#pragma once

// Sticky Brownian rounding. Every node i follows
//   dW_i = phi(W_i) v_i . dB,   W_i(0) = 0,
// driven by one shared k-dimensional Brownian motion B, and is absorbed at
// +-1; the absorbed sign is the rounded spin.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "wsqopt/relaxation.hpp"

namespace wsqopt {

/// sqrt(2/pi) exp(-Phi^{-1}((1 - s) / 2)^2 / 2), zero at s = +-1.
double krivine_speed(double s);
/// (1 - s^2)^alpha.
double poly_speed(double alpha, double s);

class SpeedFunction {
public:
    enum class Kind { Polynomial, Krivine };

    static SpeedFunction polynomial(double alpha = 1.0);
    static SpeedFunction krivine();

    Kind kind() const noexcept { return kind_; }
    double alpha() const noexcept { return alpha_; }
    double operator()(double s) const;

private:
    SpeedFunction(Kind kind, double alpha) : kind_(kind), alpha_(alpha) {}
    Kind kind_;
    double alpha_;
};

struct DiffusionConfig {
    double dt = 1e-3;
    double absorb_tol = 1e-4;  ///< |W| >= 1 - absorb_tol counts as absorbed
    int max_steps = 100'000;
    int trajectories = 20'000;
    std::uint64_t seed = 0;

    void validate() const;
};

struct SignSamples {
    int n = 0;
    int trajectories = 0;
    std::vector<signed char> signs;     ///< row-major trajectories x n
    std::vector<std::size_t> truncated; ///< per node, trajectories not absorbed by max_steps

    int at(int t, int i) const { return signs[static_cast<std::size_t>(t) * n + i]; }
    double truncated_fraction(int i) const;
};

/// Euler-Maruyama with one N(0, dt I_k) increment per step shared by all
/// nodes. W_i is clamped to [-1, 1] and frozen once absorbed; nodes still
/// moving after max_steps take sign(W_i) (sign(0) = +1) and are counted as
/// truncated. Trajectory t draws from derive_seed(seed, "diffusion", {t}).
SignSamples simulate_signs(const GramFactor& f, const SpeedFunction& speed, const DiffusionConfig& cfg);

struct CorrelationRow {
    int i = 0;
    int j = 0;
    double u_dot_v = 0.0;
    double empirical = 0.0;
    double predicted = 0.0;  ///< (2/pi) arcsin(u . v)
    double abs_err = 0.0;
    double std_err = 0.0;    ///< sqrt((1 - empirical^2) / trajectories)
    double truncated_frac = 0.0;
};

std::vector<CorrelationRow> correlation_report(const SignSamples& samples, const GramFactor& f,
                                               std::span<const std::pair<int, int>> pairs);

/// Unit vectors in dimension `dim` laid out as pairs: rows 2p and 2p+1 have
/// inner product dots[p] exactly.
GramFactor paired_factor(std::span<const double> dots, int dim, std::uint64_t seed);

}  // namespace wsqopt
