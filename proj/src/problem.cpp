#include "wsqopt/problem.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "wsqopt/errors.hpp"
#include "wsqopt/random.hpp"

namespace wsqopt {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidInput(what);
}

}  // namespace

Bits spins_to_bits(std::span<const int> z) {
    Bits x(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        require(z[i] == 1 || z[i] == -1, "spin entries must be +1 or -1");
        x[i] = (1 - z[i]) / 2;
    }
    return x;
}

Spins bits_to_spins(std::span<const int> x) {
    Spins z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        require(x[i] == 0 || x[i] == 1, "bit entries must be 0 or 1");
        z[i] = 1 - 2 * x[i];
    }
    return z;
}

Spins spins_from_index(std::uint64_t index, int n) {
    Spins z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) z[i] = ((index >> i) & 1u) ? -1 : 1;
    return z;
}

std::uint64_t index_from_spins(std::span<const int> z) {
    require(z.size() <= 64, "too many spins for a basis index");
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < z.size(); ++i)
        if (z[i] == -1) index |= std::uint64_t{1} << i;
    return index;
}

// ---------------------------------------------------------------------------
// QuboProblem

QuboProblem::QuboProblem(Eigen::MatrixXd sigma, Eigen::VectorXd mu, double offset)
    : mu_(std::move(mu)), offset_(offset) {
    require(mu_.size() >= 1, "QUBO needs at least one variable");
    require(sigma.rows() == mu_.size() && sigma.cols() == mu_.size(),
            "QUBO sigma must be n x n with n = |mu|");
    require(sigma.allFinite() && mu_.allFinite() && std::isfinite(offset),
            "QUBO coefficients must be finite");
    sigma_ = 0.5 * (sigma + sigma.transpose());
}

double QuboProblem::objective(std::span<const int> x) const {
    require(static_cast<int>(x.size()) == n(), "QUBO objective: length mismatch");
    Eigen::VectorXd v(n());
    for (int i = 0; i < n(); ++i) v[i] = x[i];
    return objective(v);
}

double QuboProblem::objective(const Eigen::VectorXd& x) const {
    require(x.size() == n(), "QUBO objective: length mismatch");
    return x.dot(sigma_ * x) + mu_.dot(x) + offset_;
}

// ---------------------------------------------------------------------------
// IsingModel

IsingModel::IsingModel(int n) : n_(n), fields_(Eigen::VectorXd::Zero(n)) {
    require(n >= 1, "Ising model needs at least one spin");
}

void IsingModel::add_coupling(int i, int j, double value) {
    require(i >= 0 && j >= 0 && i < n_ && j < n_, "coupling index out of range");
    require(i != j, "self-coupling is a constant for spins; use add_offset");
    require(std::isfinite(value), "coupling must be finite");
    if (i > j) std::swap(i, j);
    couplings_[{i, j}] += value;
}

void IsingModel::add_field(int i, double value) {
    require(i >= 0 && i < n_, "field index out of range");
    require(std::isfinite(value), "field must be finite");
    fields_[i] += value;
}

double IsingModel::energy(std::span<const int> z) const {
    require(static_cast<int>(z.size()) == n_, "Ising energy: length mismatch");
    double e = offset_;
    for (int i = 0; i < n_; ++i) e += fields_[i] * z[i];
    for (const auto& [key, value] : couplings_) e += value * z[key.first] * z[key.second];
    return e;
}

// ---------------------------------------------------------------------------
// WeightedGraph

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    require(n >= 0, "node count must be non-negative");
    for (Edge& e : edges_) {
        require(e.i != e.j, "self-loops are not allowed");
        if (e.i > e.j) std::swap(e.i, e.j);
        require(e.i >= 0 && e.j < n, "edge endpoint out of range");
        require(std::isfinite(e.w), "edge weight must be finite");
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
    for (std::size_t k = 1; k < edges_.size(); ++k)
        require(edges_[k - 1].i != edges_[k].i || edges_[k - 1].j != edges_[k].j,
                "duplicate edge (" + std::to_string(edges_[k].i) + ", " +
                    std::to_string(edges_[k].j) + ")");
}

double WeightedGraph::total_weight() const noexcept {
    double s = 0.0;
    for (const Edge& e : edges_) s += e.w;
    return s;
}

double WeightedGraph::weight(int i, int j) const noexcept {
    if (i > j) std::swap(i, j);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{i, j},
                               [](const Edge& e, const std::pair<int, int>& k) {
                                   return std::tie(e.i, e.j) < std::tie(k.first, k.second);
                               });
    if (it != edges_.end() && it->i == i && it->j == j) return it->w;
    return 0.0;
}

Eigen::MatrixXd WeightedGraph::weight_matrix() const {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n_, n_);
    for (const Edge& e : edges_) {
        w(e.i, e.j) = e.w;
        w(e.j, e.i) = e.w;
    }
    return w;
}

// ---------------------------------------------------------------------------
// CutAssignment

CutAssignment::CutAssignment(Spins z) : z_(std::move(z)) {
    for (int s : z_) require(s == 1 || s == -1, "cut entries must be exactly +1 or -1");
}

CutAssignment CutAssignment::canonical() const {
    if (z_.empty() || z_[0] == 1) return *this;
    return complement();
}

CutAssignment CutAssignment::complement() const {
    Spins flipped(z_);
    for (int& s : flipped) s = -s;
    return CutAssignment(std::move(flipped));
}

bool CutAssignment::same_cut(const CutAssignment& other) const {
    return canonical() == other.canonical();
}

// ---------------------------------------------------------------------------
// PortfolioInstance

void PortfolioInstance::validate() const {
    const auto n = mu.size();
    require(n >= 1, "portfolio needs at least one asset");
    require(sigma.rows() == n && sigma.cols() == n, "portfolio sigma must be n x n");
    require((sigma - sigma.transpose()).cwiseAbs().maxCoeff() <= 1e-9,
            "portfolio sigma must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma, Eigen::EigenvaluesOnly);
    require(eig.eigenvalues().minCoeff() >= -1e-9, "portfolio sigma must be PSD");
    require(budget >= 0 && budget <= n, "portfolio budget must lie in [0, n]");
}

// ---------------------------------------------------------------------------
// Conversions

IsingModel qubo_to_ising(const QuboProblem& q) {
    // x = (1 - z) / 2 expanded term by term; z_i^2 = 1 folds the diagonal into
    // the constant.
    const int n = q.n();
    const Eigen::MatrixXd& s = q.sigma();
    IsingModel ising(n);
    double offset = q.offset() + 0.25 * s.sum() + 0.25 * s.trace() + 0.5 * q.mu().sum();
    for (int i = 0; i < n; ++i) {
        ising.add_field(i, -0.5 * s.row(i).sum() - 0.5 * q.mu()[i]);
        for (int j = i + 1; j < n; ++j)
            if (s(i, j) != 0.0) ising.add_coupling(i, j, 0.5 * s(i, j));
    }
    ising.add_offset(offset);
    return ising;
}

IsingModel maxcut_to_ising(const WeightedGraph& g) {
    IsingModel ising(g.n());
    for (const Edge& e : g.edges()) ising.add_coupling(e.i, e.j, 0.5 * e.w);
    ising.add_offset(-0.5 * g.total_weight());
    return ising;
}

QuboProblem portfolio_qubo(const PortfolioInstance& p) {
    p.validate();
    const auto n = p.mu.size();
    const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(n, n);
    Eigen::MatrixXd sigma = p.q * p.sigma + p.lambda * ones;
    Eigen::VectorXd mu = -p.mu - Eigen::VectorXd::Constant(n, 2.0 * p.lambda * p.budget);
    return QuboProblem(std::move(sigma), std::move(mu),
                       p.lambda * static_cast<double>(p.budget) * p.budget);
}

double cut_value(const WeightedGraph& g, std::span<const int> z) {
    require(static_cast<int>(z.size()) == g.n(), "cut_value: length mismatch");
    double v = 0.0;
    for (const Edge& e : g.edges())
        if (z[e.i] != z[e.j]) v += e.w;
    return v;
}

// ---------------------------------------------------------------------------
// MAXCUT reduction

ReducedGraph reduce_maxcut(const WeightedGraph& g, int elim, int keep, int sign) {
    require(elim >= 0 && elim < g.n() && keep >= 0 && keep < g.n(), "node index out of range");
    require(elim != keep, "eliminated and kept node must differ");
    require(sign == 1 || sign == -1, "sign must be +1 or -1");

    // omega (1 - z_o s z_keep) / 2 = s omega (1 - z_o z_keep) / 2 + omega (1 - s) / 2
    std::map<std::pair<int, int>, double> merged;
    double offset = 0.0;
    auto remap = [elim](int v) { return v > elim ? v - 1 : v; };
    auto accumulate = [&](int a, int b, double w) {
        a = remap(a);
        b = remap(b);
        if (a > b) std::swap(a, b);
        merged[{a, b}] += w;
    };
    for (const Edge& e : g.edges()) {
        if (e.i != elim && e.j != elim) {
            accumulate(e.i, e.j, e.w);
            continue;
        }
        const int other = e.i == elim ? e.j : e.i;
        offset += 0.5 * e.w * (1 - sign);
        if (other != keep) accumulate(other, keep, sign * e.w);
    }
    std::vector<Edge> edges;
    edges.reserve(merged.size());
    for (const auto& [key, w] : merged)
        if (std::abs(w) > 1e-12) edges.push_back({key.first, key.second, w});
    return {WeightedGraph(g.n() - 1, std::move(edges)), offset};
}

// ---------------------------------------------------------------------------
// Exhaustive search

GroundState brute_force(const IsingModel& ising) {
    const int n = ising.n();
    if (n > kBruteForceMaxSpins)
        throw CapacityExceeded("brute force is limited to " + std::to_string(kBruteForceMaxSpins) +
                               " spins, got " + std::to_string(n));

    Eigen::MatrixXd coupling = Eigen::MatrixXd::Zero(n, n);
    double scale = 1.0 + std::abs(ising.offset()) + ising.fields().cwiseAbs().sum();
    for (const auto& [key, value] : ising.couplings()) {
        coupling(key.first, key.second) = value;
        coupling(key.second, key.first) = value;
        scale += std::abs(value);
    }
    const double tol = 1e-10 * scale;

    // Lexicographic order on x_0 x_1 ... is numeric order of the bit-reversed index.
    auto lex_key = [n](std::uint64_t x) {
        std::uint64_t r = 0;
        for (int i = 0; i < n; ++i)
            if ((x >> i) & 1u) r |= std::uint64_t{1} << (n - 1 - i);
        return r;
    };

    std::vector<int> z(n, 1);
    std::vector<double> local(n);  // h_t + sum_j J_tj z_j
    for (int t = 0; t < n; ++t) local[t] = ising.fields()[t] + coupling.row(t).sum();
    double energy = ising.energy(z);

    std::uint64_t x = 0;
    std::uint64_t best_x = 0;
    double best = energy;
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < count; ++k) {
        const int t = std::countr_zero(k);
        const int old = z[t];
        energy += -2.0 * old * local[t];
        z[t] = -old;
        x ^= std::uint64_t{1} << t;
        const double delta = -2.0 * old;
        for (int j = 0; j < n; ++j) local[j] += coupling(j, t) * delta;
        if (energy < best - tol || (energy <= best + tol && lex_key(x) < lex_key(best_x))) {
            best = std::min(best, energy);
            best_x = x;
        }
    }
    Spins zs = spins_from_index(best_x, n);
    return {zs, ising.energy(zs)};
}

MaxCut brute_force_maxcut(const WeightedGraph& g) {
    if (g.n() == 0) return {CutAssignment({}), 0.0};
    GroundState gs = brute_force(maxcut_to_ising(g));
    CutAssignment cut = CutAssignment(gs.z).canonical();
    return {cut, cut_value(g, cut.spins())};
}

// ---------------------------------------------------------------------------
// Generators

PortfolioInstance gbm_portfolio(const GbmConfig& cfg) {
    require(cfg.n_assets >= 1, "GBM needs at least one asset");
    require(cfg.n_days >= 2, "GBM needs at least two days");
    require(std::isfinite(cfg.mu_lo) && std::isfinite(cfg.mu_hi) && std::isfinite(cfg.sigma_lo) &&
                std::isfinite(cfg.sigma_hi),
            "GBM ranges must be finite");
    const int n = cfg.n_assets;
    const int days = cfg.n_days;
    Rng rng(cfg.seed);

    Eigen::VectorXd drift(n), vol(n);
    for (int i = 0; i < n; ++i) {
        drift[i] = rng.uniform(cfg.mu_lo, cfg.mu_hi);
        vol[i] = rng.uniform(cfg.sigma_lo, cfg.sigma_hi);
    }
    // One Brownian path W_k shared by every asset.
    std::vector<double> brownian(days + 1, 0.0);
    for (int k = 1; k <= days; ++k)
        brownian[k] = brownian[k - 1] + rng.normal() / std::sqrt(static_cast<double>(days));

    Eigen::MatrixXd returns(days, n);
    for (int i = 0; i < n; ++i) {
        auto log_price = [&](int k) {
            return (drift[i] - 0.5 * vol[i] * vol[i]) * k / days + vol[i] * brownian[k];
        };
        for (int k = 1; k <= days; ++k)
            returns(k - 1, i) = std::exp(log_price(k) - log_price(k - 1)) - 1.0;
    }
    Eigen::VectorXd mean = returns.colwise().mean();
    Eigen::MatrixXd centered = returns.rowwise() - mean.transpose();
    Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(days - 1);
    cov = (0.5 * (cov + cov.transpose())).eval();

    PortfolioInstance p;
    p.sigma = std::move(cov);
    p.mu = std::move(mean);
    p.q = 1.0;
    p.budget = n / 2;
    p.lambda = 0.0;
    return p;
}

WeightedGraph random_graph(int n, double p_edge, std::span<const double> weight_set,
                           std::uint64_t seed) {
    require(n >= 2, "random_graph needs n >= 2");
    require(p_edge >= 0.0 && p_edge <= 1.0, "edge probability must lie in [0, 1]");
    require(!weight_set.empty(), "weight set must be non-empty");
    Rng rng(seed);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (!(rng.uniform() < p_edge)) continue;
            const auto pick = rng.uniform_int(0, static_cast<std::int64_t>(weight_set.size()) - 1);
            edges.push_back({i, j, weight_set[static_cast<std::size_t>(pick)]});
        }
    return WeightedGraph(n, std::move(edges));
}

WeightedGraph complete_graph(int n, std::uint64_t seed, int lo, int hi) {
    require(n >= 2, "complete_graph needs n >= 2");
    require(lo <= hi, "weight range must satisfy lo <= hi");
    Rng rng(seed);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const auto w = rng.uniform_int(lo, hi);
            if (w != 0) edges.push_back({i, j, static_cast<double>(w)});
        }
    return WeightedGraph(n, std::move(edges));
}

}  // namespace wsqopt
