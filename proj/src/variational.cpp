#include "wsqopt/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "wsqopt/errors.hpp"
#include "wsqopt/random.hpp"
#include "wsqopt/seed.hpp"

namespace wsqopt {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidInput(what);
}

struct Vertex {
    std::vector<double> x;
    double f;
};

}  // namespace

void OptimizerConfig::validate() const {
    require(max_evals >= 1, "max_evals must be at least 1");
    require(x_tolerance > 0.0 && f_tolerance > 0.0, "optimizer tolerances must be positive");
    require(initial_simplex_scale > 0.0, "initial simplex scale must be positive");
}

MinimizeResult minimize(const Objective& objective, std::vector<double> x0, const OptimizerConfig& cfg) {
    cfg.validate();
    require(!x0.empty(), "starting point must be non-empty");
    for (double v : x0) require(std::isfinite(v), "starting point must be finite");
    const std::size_t d = x0.size();
    MinimizeResult out;
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        const double f = objective(x);
        return std::isnan(f) ? std::numeric_limits<double>::infinity() : f;
    };

    std::vector<Vertex> simplex;
    simplex.push_back({x0, eval(x0)});
    for (std::size_t i = 0; i < d && evals < cfg.max_evals; ++i) {
        std::vector<double> x = x0;
        x[i] += cfg.initial_simplex_scale;
        simplex.push_back({x, eval(x)});
    }
    auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };

    out.reason = Termination::MaxEvals;
    while (simplex.size() == d + 1) {
        std::stable_sort(simplex.begin(), simplex.end(), by_value);
        const Vertex& best = simplex.front();
        double spread = 0.0;
        for (const Vertex& v : simplex)
            for (std::size_t i = 0; i < d; ++i) spread = std::max(spread, std::abs(v.x[i] - best.x[i]));
        if (spread <= cfg.x_tolerance && simplex.back().f - best.f <= cfg.f_tolerance) {
            out.reason = Termination::Converged;
            break;
        }
        if (evals >= cfg.max_evals) break;

        std::vector<double> centroid(d, 0.0);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t i = 0; i < d; ++i) centroid[i] += simplex[k].x[i] / static_cast<double>(d);
        auto along = [&](double t) {
            std::vector<double> x(d);
            for (std::size_t i = 0; i < d; ++i) x[i] = centroid[i] + t * (simplex.back().x[i] - centroid[i]);
            return x;
        };

        Vertex reflected{along(-1.0), 0.0};
        reflected.f = eval(reflected.x);
        if (reflected.f < simplex.front().f) {
            if (evals < cfg.max_evals) {
                Vertex expanded{along(-2.0), 0.0};
                expanded.f = eval(expanded.x);
                simplex.back() = expanded.f < reflected.f ? std::move(expanded) : std::move(reflected);
            } else {
                simplex.back() = std::move(reflected);
            }
            continue;
        }
        if (reflected.f < simplex[d - 1].f) {
            simplex.back() = std::move(reflected);
            continue;
        }
        if (evals >= cfg.max_evals) break;
        const bool outside = reflected.f < simplex.back().f;
        Vertex contracted{along(outside ? -0.5 : 0.5), 0.0};
        contracted.f = eval(contracted.x);
        if (contracted.f < (outside ? reflected.f : simplex.back().f)) {
            simplex.back() = std::move(contracted);
            continue;
        }
        for (std::size_t k = 1; k <= d && evals < cfg.max_evals; ++k) {
            for (std::size_t i = 0; i < d; ++i)
                simplex[k].x[i] = simplex[0].x[i] + 0.5 * (simplex[k].x[i] - simplex[0].x[i]);
            simplex[k].f = eval(simplex[k].x);
        }
    }
    const auto best = std::min_element(simplex.begin(), simplex.end(), by_value);
    out.x = best->x;
    out.f = best->f;
    out.evals = evals;
    return out;
}

// ---------------------------------------------------------------------------
// Grid

void GridSpec::validate() const {
    require(beta_points >= 2 && gamma_points >= 2, "grid needs at least two points per axis");
    require(std::isfinite(beta_lo) && std::isfinite(beta_hi) && beta_lo <= beta_hi, "invalid beta range");
    require(std::isfinite(gamma_lo) && std::isfinite(gamma_hi) && gamma_lo <= gamma_hi, "invalid gamma range");
}

double GridSpec::beta(int k) const {
    return beta_lo + k * (beta_hi - beta_lo) / (closed ? beta_points - 1 : beta_points);
}

double GridSpec::gamma(int k) const {
    return gamma_lo + k * (gamma_hi - gamma_lo) / (closed ? gamma_points - 1 : gamma_points);
}

GridPoint grid_search(const std::function<double(double, double)>& objective, const GridSpec& spec) {
    spec.validate();
    GridPoint best{spec.beta(0), spec.gamma(0), std::numeric_limits<double>::infinity()};
    bool first = true;
    for (int a = 0; a < spec.beta_points; ++a) {
        for (int b = 0; b < spec.gamma_points; ++b) {
            const double v = objective(spec.beta(a), spec.gamma(b));
            if (first || v < best.value) {
                best = {spec.beta(a), spec.gamma(b), v};
                first = false;
            }
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// QAOA driver

double probability_of(const StateVector& state, std::uint64_t index) {
    require(index < state.dim(), "basis index out of range");
    return state.probability(index);
}

double probability_of_cut(const StateVector& state, std::span<const int> z) {
    require(static_cast<int>(z.size()) == state.n(), "cut length differs from qubit count");
    const std::uint64_t idx = index_from_spins(z);
    const std::uint64_t flipped = idx ^ (state.dim() - 1);
    return std::max(state.probability(idx), state.probability(flipped));
}

QaoaResult run_qaoa(const IsingModel& ising, MixerKind kind, const std::optional<std::vector<double>>& c_star,
                    double epsilon, int p, const Seeding& seeding, const OptimizerConfig& cfg,
                    const std::optional<Spins>& target) {
    require(p >= 1, "depth must be at least 1");
    cfg.validate();
    const DiagonalHamiltonian cost(ising);
    auto unpack = [p](std::span<const double> x) {
        QaoaParams params;
        params.betas.assign(x.begin(), x.begin() + p);
        params.gammas.assign(x.begin() + p, x.begin() + 2 * p);
        return params;
    };
    auto energy = [&](std::span<const double> x) {
        return expectation(qaoa_state(cost, c_star, kind, unpack(x), epsilon), cost);
    };

    std::vector<std::vector<double>> starts;
    int evals = 0;
    switch (seeding.kind) {
        case SeedingKind::Grid: {
            std::vector<double> x(2 * static_cast<std::size_t>(p), 0.0);
            const GridPoint g = grid_search(
                [&](double beta, double gamma) {
                    x[0] = beta;
                    x[p] = gamma;
                    return energy(x);
                },
                seeding.grid);
            evals += seeding.grid.beta_points * seeding.grid.gamma_points;
            x[0] = g.beta;
            x[p] = g.gamma;
            starts.push_back(std::move(x));
            break;
        }
        case SeedingKind::Random: {
            require(seeding.starts >= 1, "need at least one random start");
            seeding.grid.validate();
            for (int s = 0; s < seeding.starts; ++s) {
                Rng rng(derive_seed(seeding.seed, "qaoa-start", {static_cast<std::uint64_t>(s)}));
                std::vector<double> x(2 * static_cast<std::size_t>(p));
                for (int l = 0; l < p; ++l) x[l] = rng.uniform(seeding.grid.beta_lo, seeding.grid.beta_hi);
                for (int l = 0; l < p; ++l) x[p + l] = rng.uniform(seeding.grid.gamma_lo, seeding.grid.gamma_hi);
                starts.push_back(std::move(x));
            }
            break;
        }
        case SeedingKind::Explicit: {
            require(seeding.start.has_value(), "explicit seeding needs starting parameters");
            seeding.start->validate();
            require(seeding.start->depth() == p, "explicit starting parameters have the wrong depth");
            std::vector<double> x = seeding.start->betas;
            x.insert(x.end(), seeding.start->gammas.begin(), seeding.start->gammas.end());
            starts.push_back(std::move(x));
            break;
        }
    }

    MinimizeResult best;
    best.f = std::numeric_limits<double>::infinity();
    for (const auto& x0 : starts) {
        MinimizeResult r = minimize(energy, x0, cfg);
        evals += r.evals;
        if (r.f < best.f || best.x.empty()) best = std::move(r);
    }

    QaoaResult out;
    out.params = unpack(best.x);
    out.state = qaoa_state(cost, c_star, kind, out.params, epsilon);
    out.energy = expectation(out.state, cost);
    out.evals = evals;
    if (target) out.p_target = probability_of_cut(out.state, *target);
    return out;
}

}  // namespace wsqopt
