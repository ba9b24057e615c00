#include "wsqopt/simulator.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "wsqopt/errors.hpp"
#include "wsqopt/random.hpp"

namespace wsqopt {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidInput(what);
}

void check_qubits(int n) {
    require(n >= 1, "statevector needs at least one qubit");
    const int cap = max_qubits();
    if (n > cap)
        throw CapacityExceeded("statevector of " + std::to_string(n) + " qubits exceeds the cap of " +
                               std::to_string(cap) + " (set WSQOPT_MAX_QUBITS to raise it)");
}

constexpr double kPi = std::numbers::pi;

}  // namespace

int max_qubits() {
    if (const char* env = std::getenv("WSQOPT_MAX_QUBITS")) {
        int value = 0;
        const char* end = env + std::char_traits<char>::length(env);
        auto [ptr, ec] = std::from_chars(env, end, value);
        if (ec == std::errc() && ptr == end && value > 0) return std::min(value, 40);
    }
    return kDefaultMaxQubits;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(int n) : n_(n) {
    check_qubits(n);
    amps_.assign(std::size_t{1} << n, Complex(0.0, 0.0));
    amps_[0] = 1.0;
}

StateVector StateVector::basis(int n, std::uint64_t index) {
    StateVector s(n);
    require(index < s.dim(), "basis index out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

StateVector StateVector::uniform(int n) {
    StateVector s(n);
    const double a = 1.0 / std::sqrt(static_cast<double>(s.dim()));
    std::fill(s.amps_.begin(), s.amps_.end(), Complex(a, 0.0));
    return s;
}

double StateVector::norm_squared() const { return kernels::active().norm_squared(amps_); }

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t x = 0; x < amps_.size(); ++x) p[x] = std::norm(amps_[x]);
    return p;
}

void StateVector::apply_gate(int qubit, const Gate2& gate) {
    require(qubit >= 0 && qubit < n_, "qubit index out of range");
    kernels::active().apply_gate(amps_, qubit, gate);
}

// ---------------------------------------------------------------------------
// DiagonalHamiltonian

DiagonalHamiltonian::DiagonalHamiltonian(const IsingModel& ising) : n_(ising.n()) {
    check_qubits(n_);
    const int n = n_;
    Eigen::MatrixXd coupling = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [key, value] : ising.couplings()) {
        coupling(key.first, key.second) = value;
        coupling(key.second, key.first) = value;
    }
    // Local field of spin t when every higher spin is +1.
    std::vector<double> upper(n, 0.0);
    for (int t = 0; t < n; ++t)
        for (int j = t + 1; j < n; ++j) upper[t] += coupling(t, j);

    const std::size_t dim = std::size_t{1} << n;
    energies_.assign(dim, 0.0);
    energies_[0] = ising.energy(Spins(n, 1));
    for (std::size_t x = 1; x < dim; ++x) {
        const int t = std::bit_width(x) - 1;
        const std::size_t prev = x ^ (std::size_t{1} << t);
        double local = ising.fields()[t] + upper[t];
        for (int j = 0; j < t; ++j) local += coupling(t, j) * (((prev >> j) & 1u) ? -1.0 : 1.0);
        energies_[x] = energies_[prev] - 2.0 * local;
    }
}

// ---------------------------------------------------------------------------
// Mixers and angles

const char* to_string(MixerKind kind) noexcept {
    switch (kind) {
        case MixerKind::Standard: return "standard";
        case MixerKind::WarmStart: return "warm-start";
        case MixerKind::WarmStartRounded: return "warm-start-rounded";
    }
    return "unknown";
}

MixerKind parse_mixer_kind(std::string_view text) {
    if (text == "standard") return MixerKind::Standard;
    if (text == "warm-start" || text == "warm") return MixerKind::WarmStart;
    if (text == "warm-start-rounded" || text == "rounded") return MixerKind::WarmStartRounded;
    throw InvalidInput("unknown mixer kind '" + std::string(text) + "'");
}

double regularize(double c, double epsilon) {
    require(c >= 0.0 && c <= 1.0, "relaxed value must lie in [0, 1]");
    require(epsilon >= 0.0 && epsilon <= 0.5, "epsilon must lie in [0, 0.5]");
    if (c <= epsilon) return epsilon;
    if (c >= 1.0 - epsilon) return 1.0 - epsilon;
    return c;
}

WarmStartAngles WarmStartAngles::from_relaxed(std::span<const double> c_star, double epsilon) {
    WarmStartAngles a;
    a.epsilon = epsilon;
    a.theta.reserve(c_star.size());
    for (double c : c_star) a.theta.push_back(2.0 * std::asin(std::sqrt(regularize(c, epsilon))));
    return a;
}

double WarmStartAngles::probability(int i) const {
    const double s = std::sin(0.5 * theta.at(static_cast<std::size_t>(i)));
    return s * s;
}

void QaoaParams::validate() const {
    require(!betas.empty(), "QAOA depth must be at least 1");
    require(betas.size() == gammas.size(), "betas and gammas must have the same length");
    for (double v : betas) require(std::isfinite(v), "beta must be finite");
    for (double v : gammas) require(std::isfinite(v), "gamma must be finite");
}

Matrix2 warm_start_mixer_hamiltonian(double c) {
    require(c >= 0.0 && c <= 1.0, "relaxed value must lie in [0, 1]");
    const double off = -2.0 * std::sqrt(c * (1.0 - c));
    return {{{Complex(2.0 * c - 1.0), Complex(off)}, {Complex(off), Complex(1.0 - 2.0 * c)}}};
}

Gate2 mixer_gate(MixerKind kind, double theta, double beta) {
    // R_Y(t) R_Z(-2b) R_Y(-t) = exp(i b (sin t X + cos t Z)); the rounded form
    // negates t, which flips the sign of the off-diagonal entries.
    const double cb = std::cos(beta);
    const double sb = std::sin(beta);
    switch (kind) {
        case MixerKind::Standard:
            return {Complex(cb, 0.0), Complex(0.0, sb), Complex(0.0, sb), Complex(cb, 0.0)};
        case MixerKind::WarmStart:
        case MixerKind::WarmStartRounded: {
            const double off = (kind == MixerKind::WarmStart ? 1.0 : -1.0) * sb * std::sin(theta);
            const double diag = sb * std::cos(theta);
            return {Complex(cb, diag), Complex(0.0, off), Complex(0.0, off), Complex(cb, -diag)};
        }
    }
    throw InvalidInput("unknown mixer kind");
}

// ---------------------------------------------------------------------------
// State preparation and evolution

StateVector prepare_ws_state(const WarmStartAngles& angles) {
    const int n = static_cast<int>(angles.theta.size());
    StateVector s(n);
    auto amps = s.amplitudes();
    std::size_t filled = 1;
    for (int i = 0; i < n; ++i) {
        const double a0 = std::cos(0.5 * angles.theta[i]);
        const double a1 = std::sin(0.5 * angles.theta[i]);
        for (std::size_t x = 0; x < filled; ++x) {
            amps[x + filled] = amps[x] * a1;
            amps[x] *= a0;
        }
        filled <<= 1;
    }
    return s;
}

StateVector prepare_ws_state(std::span<const double> c_star, double epsilon) {
    return prepare_ws_state(WarmStartAngles::from_relaxed(c_star, epsilon));
}

void apply_cost_evolution(StateVector& state, const DiagonalHamiltonian& cost, double gamma) {
    require(state.n() == cost.n(), "cost Hamiltonian and state differ in qubit count");
    if (gamma == 0.0) return;
    kernels::active().apply_phase(state.amplitudes(), cost.energies(), gamma);
}

void apply_cost_evolution(StateVector& state, const IsingModel& ising, double gamma) {
    apply_cost_evolution(state, DiagonalHamiltonian(ising), gamma);
}

void apply_mixer(StateVector& state, const MixerSpec& mixer, double beta) {
    if (mixer.kind == MixerKind::Standard) {
        const Gate2 g = mixer_gate(MixerKind::Standard, 0.0, beta);
        for (int q = 0; q < state.n(); ++q) state.apply_gate(q, g);
        return;
    }
    require(mixer.angles.has_value(), "warm-start mixers need angles");
    require(static_cast<int>(mixer.angles->theta.size()) == state.n(),
            "mixer angles and state differ in qubit count");
    for (int q = 0; q < state.n(); ++q) state.apply_gate(q, mixer_gate(mixer.kind, mixer.angles->theta[q], beta));
}

StateVector qaoa_state(const DiagonalHamiltonian& cost, const std::optional<std::vector<double>>& c_star,
                       MixerKind kind, const QaoaParams& params, double epsilon) {
    params.validate();
    MixerSpec mixer{kind, std::nullopt};
    StateVector state = [&] {
        if (kind == MixerKind::Standard) return StateVector::uniform(cost.n());
        require(c_star.has_value(), "warm-start kinds need a relaxed solution");
        require(static_cast<int>(c_star->size()) == cost.n(), "relaxed solution has the wrong length");
        mixer.angles = WarmStartAngles::from_relaxed(*c_star, epsilon);
        return prepare_ws_state(*mixer.angles);
    }();
    for (int layer = 0; layer < params.depth(); ++layer) {
        apply_cost_evolution(state, cost, params.gammas[layer]);
        apply_mixer(state, mixer, params.betas[layer]);
    }
    return state;
}

StateVector qaoa_state(const IsingModel& ising, const std::optional<std::vector<double>>& c_star,
                       MixerKind kind, const QaoaParams& params, double epsilon) {
    return qaoa_state(DiagonalHamiltonian(ising), c_star, kind, params, epsilon);
}

double expectation(const StateVector& state, const DiagonalHamiltonian& cost) {
    require(state.n() == cost.n(), "cost Hamiltonian and state differ in qubit count");
    return kernels::active().expectation(state.amplitudes(), cost.energies());
}

double expectation(const StateVector& state, const IsingModel& ising) {
    return expectation(state, DiagonalHamiltonian(ising));
}

double zz_correlator(const StateVector& state, int i, int j) {
    require(i >= 0 && j >= 0 && i < state.n() && j < state.n(), "qubit index out of range");
    const auto amps = state.amplitudes();
    double acc = 0.0;
    for (std::size_t x = 0; x < amps.size(); ++x) {
        const bool odd = (((x >> i) ^ (x >> j)) & 1u) != 0;
        acc += odd ? -std::norm(amps[x]) : std::norm(amps[x]);
    }
    return acc;
}

std::map<std::uint64_t, std::size_t> sample(const StateVector& state, std::size_t shots,
                                            std::uint64_t seed) {
    require(shots >= 1, "shots must be at least 1");
    const auto amps = state.amplitudes();
    std::vector<double> cdf(amps.size());
    double acc = 0.0;
    for (std::size_t x = 0; x < amps.size(); ++x) {
        acc += std::norm(amps[x]);
        cdf[x] = acc;
    }
    Rng rng(seed);
    std::map<std::uint64_t, std::size_t> counts;
    for (std::size_t s = 0; s < shots; ++s) {
        const double u = rng.uniform() * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const auto x = std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1);
        ++counts[static_cast<std::uint64_t>(x)];
    }
    return counts;
}

// ---------------------------------------------------------------------------
// Depth-one correlator

struct Depth1Simulator::PhaseTable {
    // exp(4 i gamma J_ab), the ratio of a spectator's conditional phases.
    Eigen::MatrixXcd spectator;
};

Depth1Simulator::Depth1Simulator(const WeightedGraph& g, std::span<const double> c_star, double epsilon,
                                 MixerKind kind)
    : n_(g.n()), edges_(g.edges()), offset_(-0.5 * g.total_weight()), kind_(kind) {
    require(n_ >= 2, "depth-one correlators need at least two nodes");
    coupling_ = 0.5 * g.weight_matrix();
    row_sum_ = coupling_.rowwise().sum();
    prob_one_.resize(n_);
    amp_.resize(n_);
    theta_.resize(n_);
    if (kind == MixerKind::Standard) {
        for (int k = 0; k < n_; ++k) {
            theta_[k] = kPi / 2;
            prob_one_[k] = 0.5;
            amp_[k] = {std::sqrt(0.5), std::sqrt(0.5)};
        }
        return;
    }
    require(static_cast<int>(c_star.size()) == n_, "relaxed solution has the wrong length");
    const WarmStartAngles angles = WarmStartAngles::from_relaxed(c_star, epsilon);
    for (int k = 0; k < n_; ++k) {
        theta_[k] = angles.theta[k];
        amp_[k] = {std::cos(0.5 * theta_[k]), std::sin(0.5 * theta_[k])};
        prob_one_[k] = amp_[k][1] * amp_[k][1];
    }
}

double Depth1Simulator::correlator(int i, int j, double beta, double gamma) const {
    require(i >= 0 && j >= 0 && i < n_ && j < n_, "node index out of range");
    require(i != j, "correlator needs two distinct nodes");
    PhaseTable table;
    table.spectator.resize(n_, 2);
    for (int k = 0; k < n_; ++k) {
        table.spectator(k, 0) = std::polar(1.0, 4.0 * gamma * coupling_(i, k));
        table.spectator(k, 1) = std::polar(1.0, 4.0 * gamma * coupling_(j, k));
    }
    return correlator_with(table, i, j, beta, gamma);
}

// Pair basis index s = b_i + 2 b_j.
double Depth1Simulator::correlator_with(const PhaseTable& table, int i, int j, double beta,
                                        double gamma) const {
    static constexpr int zi[4] = {1, -1, 1, -1};
    static constexpr int zj[4] = {1, 1, -1, -1};

    // Initial product amplitudes, then every deterministic diagonal phase: the
    // aggregated single-qubit phases from spectators (as if each were |0>) and
    // the (i, j) coupling itself.
    const double jij = coupling_(i, j);
    const double field_i = row_sum_[i] - jij;
    const double field_j = row_sum_[j] - jij;
    std::array<Complex, 4> psi;
    for (int s = 0; s < 4; ++s) {
        const double amp = amp_[i][s & 1] * amp_[j][s >> 1];
        const double phase = -gamma * (zi[s] * field_i + zj[s] * field_j + jij * zi[s] * zj[s]);
        psi[s] = std::polar(amp, phase);
    }

    // Spectator k in |1> multiplies the pair by exp(2 i gamma (J_ik z_i + J_jk z_j)).
    // On rho_ab this is exp(4 i gamma (J_ik d_i + J_jk d_j)) with d = (z_a - z_b)/2,
    // so only four distinct factors occur across the upper triangle.
    Complex f_i(1.0), f_j(1.0), f_ij(1.0), f_ji(1.0);
    for (int k = 0; k < n_; ++k) {
        if (k == i || k == j) continue;
        const double c = prob_one_[k];
        if (c == 0.0) continue;
        const Complex ei = table.spectator(k, 0);
        const Complex ej = table.spectator(k, 1);
        const double stay = 1.0 - c;
        f_i *= stay + c * ei;
        f_j *= stay + c * ej;
        f_ij *= stay + c * (ei * ej);
        f_ji *= stay + c * (std::conj(ei) * ej);
    }

    // (d_i, d_j) for the upper-triangle pairs: (0,1)->(1,0) (0,2)->(0,1) (0,3)->(1,1)
    // (1,2)->(-1,1) (1,3)->(0,1) (2,3)->(1,0).
    std::array<std::array<Complex, 4>, 4> rho;
    for (int s = 0; s < 4; ++s) rho[s][s] = std::norm(psi[s]);
    auto set = [&](int a, int b, Complex factor) {
        rho[a][b] = psi[a] * std::conj(psi[b]) * factor;
        rho[b][a] = std::conj(rho[a][b]);
    };
    set(0, 1, f_i);
    set(0, 2, f_j);
    set(0, 3, f_ij);
    set(1, 2, f_ji);
    set(1, 3, f_j);
    set(2, 3, f_i);

    const Gate2 gi = mixer_gate(kind_, theta_[i], beta);
    const Gate2 gj = mixer_gate(kind_, theta_[j], beta);
    auto elem = [](const Gate2& g, int r, int c) {
        return r == 0 ? (c == 0 ? g.u00 : g.u01) : (c == 0 ? g.u10 : g.u11);
    };
    std::array<std::array<Complex, 4>, 4> u;
    for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t) u[s][t] = elem(gi, s & 1, t & 1) * elem(gj, s >> 1, t >> 1);

    double zz = 0.0;
    for (int s = 0; s < 4; ++s) {
        Complex diag(0.0);
        for (int a = 0; a < 4; ++a) {
            Complex row(0.0);
            for (int b = 0; b < 4; ++b) row += rho[a][b] * std::conj(u[s][b]);
            diag += u[s][a] * row;
        }
        zz += zi[s] * zj[s] * diag.real();
    }
    return zz;
}

std::vector<double> Depth1Simulator::edge_correlators(double beta, double gamma) const {
    std::vector<Complex> phase(static_cast<std::size_t>(n_) * n_);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) phase[a * n_ + b] = std::polar(1.0, 4.0 * gamma * coupling_(a, b));
    std::vector<double> out;
    out.reserve(edges_.size());
    PhaseTable table;
    table.spectator.resize(n_, 2);
    for (const Edge& e : edges_) {
        for (int k = 0; k < n_; ++k) {
            table.spectator(k, 0) = phase[e.i * n_ + k];
            table.spectator(k, 1) = phase[e.j * n_ + k];
        }
        out.push_back(correlator_with(table, e.i, e.j, beta, gamma));
    }
    return out;
}

double Depth1Simulator::energy(double beta, double gamma) const {
    const std::vector<double> corr = edge_correlators(beta, gamma);
    double e = offset_;
    for (std::size_t k = 0; k < edges_.size(); ++k) e += 0.5 * edges_[k].w * corr[k];
    return e;
}

double depth1_correlator(const WeightedGraph& g, std::span<const double> c_star, double epsilon,
                         double beta, double gamma, int i, int j, MixerKind kind) {
    return Depth1Simulator(g, c_star, epsilon, kind).correlator(i, j, beta, gamma);
}

}  // namespace wsqopt
