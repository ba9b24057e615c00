#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "wsqopt/errors.hpp"
#include "wsqopt/relaxation.hpp"
#include "wsqopt/variational.hpp"

using namespace wsqopt;

TEST_SUITE("variational") {

TEST_CASE("Nelder-Mead on a quadratic") {
    auto f = [](std::span<const double> x) { return (x[0] - 1.0) * (x[0] - 1.0) + 3.0 * (x[1] + 2.0) * (x[1] + 2.0); };
    const MinimizeResult r = minimize(f, {0.0, 0.0});
    CHECK(r.reason == Termination::Converged);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(r.x[1] == doctest::Approx(-2.0).epsilon(1e-5));
    CHECK(r.f <= 1e-9);
}

TEST_CASE("Nelder-Mead on Rosenbrock") {
    auto f = [](std::span<const double> x) {
        return 100.0 * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]) + (1.0 - x[0]) * (1.0 - x[0]);
    };
    OptimizerConfig cfg;
    cfg.max_evals = 5000;
    const MinimizeResult r = minimize(f, {-1.2, 1.0}, cfg);
    CHECK(r.evals <= 5000);
    CHECK(std::abs(r.x[0] - 1.0) <= 1e-3);
    CHECK(std::abs(r.x[1] - 1.0) <= 1e-3);
}

TEST_CASE("Nelder-Mead never returns worse than the start") {
    Rng rng(2);
    for (int k = 0; k < 20; ++k) {
        const double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
        auto f = [](std::span<const double> x) { return std::sin(3 * x[0]) * std::cos(2 * x[1]) + 0.1 * x[0]; };
        OptimizerConfig cfg;
        cfg.max_evals = 1 + k * 5;
        const std::vector<double> x0{a, b};
        const MinimizeResult r = minimize(f, x0, cfg);
        CHECK(r.f <= f(x0));
        CHECK(r.evals <= cfg.max_evals);
    }
}

TEST_CASE("Nelder-Mead argument validation") {
    auto f = [](std::span<const double> x) { return x[0]; };
    CHECK_THROWS_AS(minimize(f, {}), InvalidInput);
    OptimizerConfig bad;
    bad.max_evals = 0;
    CHECK_THROWS_AS(minimize(f, {0.0}, bad), InvalidInput);
}

TEST_CASE("grid search") {
    GridSpec spec;
    spec.beta_lo = 0.0;
    spec.beta_hi = 3.0;
    spec.gamma_lo = 0.0;
    spec.gamma_hi = 3.0;
    spec.beta_points = 31;
    spec.gamma_points = 31;
    spec.closed = true;
    const GridPoint p = grid_search([](double b, double g) { return (b - 1.0) * (b - 1.0) + (g - 2.0) * (g - 2.0); }, spec);
    CHECK(p.beta == doctest::Approx(1.0));
    CHECK(p.gamma == doctest::Approx(2.0));
    CHECK(p.value == doctest::Approx(0.0));

    const GridPoint flat = grid_search([](double, double) { return 7.0; }, spec);
    CHECK(flat.beta == 0.0);
    CHECK(flat.gamma == 0.0);

    const GridSpec half;
    CHECK(half.beta(12) == doctest::Approx(std::numbers::pi / 2));
    CHECK(half.gamma(0) == 0.0);
    CHECK(half.beta(23) < std::numbers::pi);

    GridSpec bad;
    bad.beta_points = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidInput);
}

TEST_CASE("single qubit QAOA reaches the ground state") {
    IsingModel h(1);
    h.add_field(0, 1.0);
    const QaoaResult r = run_qaoa(h, MixerKind::Standard, std::nullopt, 0.0, 1);
    CHECK(r.energy == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(r.params.depth() == 1);
}

TEST_CASE("rounded warm start is never worse than its GW cut") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const WeightedGraph g = complete_graph(7, seed);
        const GwCuts gw = gw_best_cuts(g, 10, 1, seed);
        const Bits x = spins_to_bits(gw.cuts.front().spins());
        const std::vector<double> c(x.begin(), x.end());
        const QaoaResult r = run_qaoa(maxcut_to_ising(g), MixerKind::WarmStartRounded, c, 0.25, 1);
        CHECK(-r.energy >= gw.values.front() - 1e-9);
    }
}

TEST_CASE("explicit seeding and random starts") {
    const WeightedGraph g = testutil::random_weighted_graph(6, 0.7, 3);
    const IsingModel ising = maxcut_to_ising(g);
    Seeding explicit_seed;
    explicit_seed.kind = SeedingKind::Explicit;
    explicit_seed.start = QaoaParams{{0.2, 0.1}, {0.3, 0.4}};
    const QaoaResult e = run_qaoa(ising, MixerKind::Standard, std::nullopt, 0.0, 2, explicit_seed);
    CHECK(e.energy <= expectation(qaoa_state(ising, std::nullopt, MixerKind::Standard, *explicit_seed.start, 0.0), ising) + 1e-12);
    explicit_seed.start = QaoaParams{{0.2}, {0.3}};
    CHECK_THROWS_AS(run_qaoa(ising, MixerKind::Standard, std::nullopt, 0.0, 2, explicit_seed), InvalidInput);

    Seeding random;
    random.kind = SeedingKind::Random;
    random.starts = 4;
    random.seed = 17;
    const QaoaResult a = run_qaoa(ising, MixerKind::Standard, std::nullopt, 0.0, 2, random);
    const QaoaResult b = run_qaoa(ising, MixerKind::Standard, std::nullopt, 0.0, 2, random);
    CHECK(a.energy == b.energy);
    CHECK(a.params.betas == b.params.betas);
}

TEST_CASE("deeper circuits with zero padding are no worse") {
    const WeightedGraph g = testutil::random_weighted_graph(6, 0.7, 5);
    const IsingModel ising = maxcut_to_ising(g);
    const QaoaResult one = run_qaoa(ising, MixerKind::Standard, std::nullopt, 0.0, 1);
    Seeding padded;
    padded.kind = SeedingKind::Explicit;
    padded.start = QaoaParams{{one.params.betas[0], 0.0}, {one.params.gammas[0], 0.0}};
    const QaoaResult two = run_qaoa(ising, MixerKind::Standard, std::nullopt, 0.0, 2, padded);
    CHECK(two.energy <= one.energy + 1e-12);
}

TEST_CASE("probability of a cut counts both orientations") {
    const StateVector s = StateVector::basis(3, 6);
    CHECK(probability_of(s, 6) == 1.0);
    const std::vector<int> z{1, -1, -1};
    const std::vector<int> flipped{-1, 1, 1};
    CHECK(probability_of_cut(s, z) == 1.0);
    CHECK(probability_of_cut(s, flipped) == 1.0);
    const StateVector u = StateVector::uniform(3);
    CHECK(probability_of_cut(u, z) == doctest::Approx(0.125));
}

}
