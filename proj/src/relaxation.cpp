#include "wsqopt/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "wsqopt/errors.hpp"
#include "wsqopt/seed.hpp"

namespace wsqopt {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidInput(what);
}

Eigen::VectorXd clip01(const Eigen::VectorXd& x) { return x.cwiseMax(0.0).cwiseMin(1.0); }

}  // namespace

// ---------------------------------------------------------------------------
// QP

double box_kkt_residual(const Eigen::VectorXd& x, const Eigen::VectorXd& gradient) {
    double r = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double g = gradient[i];
        double v;
        if (x[i] <= 0.0)
            v = std::max(0.0, -g);
        else if (x[i] >= 1.0)
            v = std::max(0.0, g);
        else
            v = std::abs(g);
        r = std::max(r, v);
    }
    return r;
}

RelaxedSolution solve_qp(const QuboProblem& q, const QpOptions& options) {
    require(options.tol > 0.0, "QP tolerance must be positive");
    require(options.max_iters >= 1, "QP iteration limit must be positive");
    const Eigen::MatrixXd& sigma = q.sigma();
    const Eigen::VectorXd& mu = q.mu();
    const int n = q.n();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (lo < -1e-9) throw NotConvex(lo);

    auto gradient = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return 2.0 * sigma * x + mu; };
    RelaxedSolution out;

    if (hi <= 1e-300) {
        // Linear objective: each coordinate sits at the bound its cost prefers.
        out.c_star = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < n; ++i)
            if (mu[i] < 0.0) out.c_star[i] = 1.0;
        out.objective = q.objective(out.c_star);
        out.kkt_residual = box_kkt_residual(out.c_star, gradient(out.c_star));
        return out;
    }

    // FISTA with the fixed step 1/L and gradient-based adaptive restart.
    const double step = 1.0 / (2.0 * hi);
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 0.5);
    Eigen::VectorXd y = x;
    double t = 1.0;
    for (int it = 1; it <= options.max_iters; ++it) {
        const Eigen::VectorXd x_next = clip01(y - step * gradient(y));
        const Eigen::VectorXd g_next = gradient(x_next);
        const double residual = box_kkt_residual(x_next, g_next);
        if (residual <= options.tol) {
            out.c_star = x_next;
            out.objective = q.objective(x_next);
            out.iterations = it;
            out.kkt_residual = residual;
            return out;
        }
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        if ((y - x_next).dot(x_next - x) > 0.0) {
            t = 1.0;
            y = x_next;
        } else {
            y = x_next + ((t - 1.0) / t_next) * (x_next - x);
            t = t_next;
        }
        x = x_next;
    }
    throw IterationLimit("QP did not reach KKT tolerance " + std::to_string(options.tol) + " in " +
                         std::to_string(options.max_iters) + " iterations");
}

// ---------------------------------------------------------------------------
// SDP

void GramFactor::validate() const {
    require(vectors.rows() >= 1 && vectors.cols() >= 1, "Gram factor must be non-empty");
    for (Eigen::Index i = 0; i < vectors.rows(); ++i)
        require(std::abs(vectors.row(i).norm() - 1.0) <= 1e-9, "Gram factor rows must be unit vectors");
}

int default_sdp_rank(int n) {
    return std::max(1, static_cast<int>(std::ceil(std::sqrt(2.0 * n))));
}

double sdp_objective(const WeightedGraph& g, const Eigen::MatrixXd& vectors) {
    double v = 0.0;
    for (const Edge& e : g.edges()) v += 0.5 * e.w * (1.0 - vectors.row(e.i).dot(vectors.row(e.j)));
    return v;
}

GramFactor solve_maxcut_sdp(const WeightedGraph& g, std::uint64_t seed, const SdpOptions& options) {
    const int n = g.n();
    require(n >= 1, "SDP needs at least one node");
    const int k = options.rank > 0 ? options.rank : default_sdp_rank(n);
    require(options.tol > 0.0 && options.max_sweeps >= 1, "invalid SDP options");

    Rng rng(seed);
    Eigen::MatrixXd v(n, k);
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c < k; ++c) v(i, c) = rng.normal();
        v.row(i).normalize();
    }

    std::vector<std::vector<std::pair<int, double>>> adjacency(n);
    for (const Edge& e : g.edges()) {
        adjacency[e.i].push_back({e.j, e.w});
        adjacency[e.j].push_back({e.i, e.w});
    }

    GramFactor f;
    Eigen::RowVectorXd sum(k);
    for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
        double change = 0.0;
        for (int i = 0; i < n; ++i) {
            sum.setZero();
            for (const auto& [j, w] : adjacency[i]) sum.noalias() += w * v.row(j);
            const double norm = sum.norm();
            if (norm <= 1e-14) continue;
            const Eigen::RowVectorXd next = -sum / norm;
            change = std::max(change, (next - v.row(i)).norm());
            v.row(i) = next;
        }
        f.sweeps = sweep;
        if (change <= options.tol) {
            f.stationary = true;
            break;
        }
    }
    f.vectors = std::move(v);
    f.objective = sdp_objective(g, f.vectors);
    return f;
}

// ---------------------------------------------------------------------------
// Rounding

CutAssignment gw_round(const GramFactor& f, Rng& rng) {
    Eigen::VectorXd r(f.rank());
    for (int c = 0; c < f.rank(); ++c) r[c] = rng.normal();
    const Eigen::VectorXd proj = f.vectors * r;
    Spins z(static_cast<std::size_t>(f.n()));
    for (int i = 0; i < f.n(); ++i) z[i] = proj[i] >= 0.0 ? 1 : -1;
    return CutAssignment(std::move(z));
}

double expected_cut_value(const WeightedGraph& g, const GramFactor& f) {
    require(f.n() == g.n(), "Gram factor and graph differ in node count");
    double v = 0.0;
    for (const Edge& e : g.edges()) {
        const double dot = std::clamp(f.vectors.row(e.i).dot(f.vectors.row(e.j)), -1.0, 1.0);
        v += e.w * std::acos(dot);
    }
    return v / std::numbers::pi;
}

double gw_alpha() {
    // theta / (1 - cos theta) is unimodal on (0, pi]; golden-section search.
    auto f = [](double t) { return t / (1.0 - std::cos(t)); };
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 0.1;
    double b = std::numbers::pi;
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    while (b - a > 1e-12) {
        if (f(c) < f(d))
            b = d;
        else
            a = c;
        c = b - ratio * (b - a);
        d = a + ratio * (b - a);
    }
    return 2.0 / std::numbers::pi * f(0.5 * (a + b));
}

GwCuts gw_best_cuts(const WeightedGraph& g, int num_samples, int keep, std::uint64_t seed,
                    const SdpOptions& options) {
    require(keep >= 1 && num_samples >= keep, "need N >= M >= 1");
    GwCuts out;
    out.factor = solve_maxcut_sdp(g, derive_seed(seed, "gw-sdp"), options);
    Rng rng(derive_seed(seed, "gw-round"));
    std::set<CutAssignment> unique;
    out.all_values.reserve(static_cast<std::size_t>(num_samples));
    for (int s = 0; s < num_samples; ++s) {
        CutAssignment cut = gw_round(out.factor, rng).canonical();
        out.all_values.push_back(cut_value(g, cut.spins()));
        unique.insert(std::move(cut));
    }
    std::vector<std::pair<double, CutAssignment>> ranked;
    for (const CutAssignment& c : unique) ranked.emplace_back(cut_value(g, c.spins()), c);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int m = 0; m < keep && m < static_cast<int>(ranked.size()); ++m) {
        out.values.push_back(ranked[m].first);
        out.cuts.push_back(ranked[m].second);
    }
    return out;
}

}  // namespace wsqopt
