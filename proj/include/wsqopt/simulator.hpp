#pragma once

// Dense statevector simulation of standard, warm-start and rounded warm-start
// QAOA circuits, plus the closed-form depth-one two-qubit correlator used by
// recursive QAOA.
//
// Conventions: qubit i is bit i of the basis index; |1> on qubit i is x_i = 1,
// i.e. spin z_i = -1. Cost evolution is exp(-i gamma H_C) with H_C the diagonal
// Ising energy (offset included, so it contributes a global phase).

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wsqopt/kernels.hpp"
#include "wsqopt/problem.hpp"

namespace wsqopt {

using Complex = std::complex<double>;
using kernels::Gate2;

inline constexpr int kDefaultMaxQubits = 24;

/// Statevector size cap: WSQOPT_MAX_QUBITS when set to a positive integer,
/// kDefaultMaxQubits otherwise.
int max_qubits();

class StateVector {
public:
    /// |0...0>.
    explicit StateVector(int n);

    static StateVector basis(int n, std::uint64_t index);
    /// |+>^n.
    static StateVector uniform(int n);

    int n() const noexcept { return n_; }
    std::size_t dim() const noexcept { return amps_.size(); }
    std::span<Complex> amplitudes() noexcept { return amps_; }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    Complex operator[](std::uint64_t index) const { return amps_[index]; }

    double norm_squared() const;
    double probability(std::uint64_t index) const { return std::norm(amps_[index]); }
    std::vector<double> probabilities() const;

    void apply_gate(int qubit, const Gate2& gate);

private:
    int n_;
    std::vector<Complex> amps_;
};

/// Per-basis-state energies of an Ising model: energies()[x] = E(z(x)).
class DiagonalHamiltonian {
public:
    explicit DiagonalHamiltonian(const IsingModel& ising);

    int n() const noexcept { return n_; }
    std::span<const double> energies() const noexcept { return energies_; }

private:
    int n_;
    std::vector<double> energies_;
};

enum class MixerKind { Standard, WarmStart, WarmStartRounded };

const char* to_string(MixerKind kind) noexcept;
/// Accepts "standard", "warm-start", "warm-start-rounded" (and "rounded").
MixerKind parse_mixer_kind(std::string_view text);

/// clamp(c, eps, 1 - eps): the regularised probability of |1>.
double regularize(double c, double epsilon);

struct WarmStartAngles {
    std::vector<double> theta;  ///< radians, each in [0, pi]
    double epsilon = 0.0;

    /// theta_i = 2 asin(sqrt(regularize(c_i, epsilon))).
    static WarmStartAngles from_relaxed(std::span<const double> c_star, double epsilon);
    /// Regularised probability of |1> on qubit i, sin^2(theta_i / 2).
    double probability(int i) const;
};

struct MixerSpec {
    MixerKind kind = MixerKind::Standard;
    std::optional<WarmStartAngles> angles;  ///< required for the warm kinds
};

struct QaoaParams {
    std::vector<double> betas;
    std::vector<double> gammas;

    int depth() const noexcept { return static_cast<int>(betas.size()); }
    void validate() const;
};

using Matrix2 = std::array<std::array<Complex, 2>, 2>;

/// The single-qubit warm-start mixer Hamiltonian built from c:
/// [[2c-1, -2 sqrt(c(1-c))], [-2 sqrt(c(1-c)), 1-2c]].
Matrix2 warm_start_mixer_hamiltonian(double c);

/// Per-qubit mixer unitary.
///  standard:            exp(+i beta X), the warm-start gate at theta = pi/2
///  warm-start:          R_Y(theta) R_Z(-2 beta) R_Y(-theta)
///  warm-start-rounded:  R_Y(-theta) R_Z(-2 beta) R_Y(theta)
Gate2 mixer_gate(MixerKind kind, double theta, double beta);

/// Product state with per-qubit amplitudes (cos(theta_i/2), sin(theta_i/2)).
StateVector prepare_ws_state(std::span<const double> c_star, double epsilon);
StateVector prepare_ws_state(const WarmStartAngles& angles);

void apply_cost_evolution(StateVector& state, const DiagonalHamiltonian& cost, double gamma);
void apply_cost_evolution(StateVector& state, const IsingModel& ising, double gamma);
void apply_mixer(StateVector& state, const MixerSpec& mixer, double beta);

/// Initial state (|+>^n for standard, the warm-start product state otherwise)
/// followed by p layers of cost then mixer evolution.
StateVector qaoa_state(const DiagonalHamiltonian& cost, const std::optional<std::vector<double>>& c_star,
                       MixerKind kind, const QaoaParams& params, double epsilon);
StateVector qaoa_state(const IsingModel& ising, const std::optional<std::vector<double>>& c_star,
                       MixerKind kind, const QaoaParams& params, double epsilon);

double expectation(const StateVector& state, const DiagonalHamiltonian& cost);
double expectation(const StateVector& state, const IsingModel& ising);

/// <Z_i Z_j> of a full statevector.
double zz_correlator(const StateVector& state, int i, int j);

/// Basis index -> count; deterministic per seed; counts sum to shots.
std::map<std::uint64_t, std::size_t> sample(const StateVector& state, std::size_t shots,
                                            std::uint64_t seed);

/// Depth-one <Z_i Z_j> on the MAXCUT cost Hamiltonian of a graph, evaluated on
/// the 4x4 reduced density matrix of qubits (i, j) in O(n) per pair.
///
/// Diagonal phases from couplings to every spectator k are folded into one
/// phase per qubit; each spectator's conditional phase is then averaged over
/// its initial |0>/|1> weights; the (i, j) coupling and the mixers on i and j
/// are applied last.
class Depth1Simulator {
public:
    /// `c_star` is ignored for MixerKind::Standard.
    Depth1Simulator(const WeightedGraph& g, std::span<const double> c_star, double epsilon,
                    MixerKind kind);

    int n() const noexcept { return n_; }
    double correlator(int i, int j, double beta, double gamma) const;
    /// Correlators for every edge of the graph, in graph edge order.
    std::vector<double> edge_correlators(double beta, double gamma) const;
    /// <H_C> of the depth-one state (equals minus the expected cut).
    double energy(double beta, double gamma) const;

private:
    struct PhaseTable;
    double correlator_with(const PhaseTable& table, int i, int j, double beta, double gamma) const;

    int n_;
    std::vector<Edge> edges_;
    double offset_;
    Eigen::MatrixXd coupling_;  ///< J = omega / 2, dense, zero diagonal
    Eigen::VectorXd row_sum_;   ///< sum_k J_ik
    std::vector<double> prob_one_;
    std::vector<std::array<double, 2>> amp_;
    std::vector<double> theta_;
    MixerKind kind_;
};

double depth1_correlator(const WeightedGraph& g, std::span<const double> c_star, double epsilon,
                         double beta, double gamma, int i, int j, MixerKind kind);

}  // namespace wsqopt
