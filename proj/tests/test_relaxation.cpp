#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "wsqopt/errors.hpp"
#include "wsqopt/relaxation.hpp"

using namespace wsqopt;

namespace {

double qubo_binary_optimum(const QuboProblem& q) {
    double best = 1e300;
    for (std::uint64_t idx = 0; idx < (1u << q.n()); ++idx) best = std::min(best, q.objective(testutil::all_bits(idx, q.n())));
    return best;
}

QuboProblem random_psd_qubo(int n, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::MatrixXd a(n, n);
    Eigen::VectorXd mu(n);
    for (int i = 0; i < n; ++i) {
        mu[i] = rng.uniform(-3, 3);
        for (int j = 0; j < n; ++j) a(i, j) = rng.uniform(-1, 1);
    }
    return QuboProblem(a * a.transpose(), mu);
}

GramFactor factor_of(std::initializer_list<std::initializer_list<double>> rows) {
    GramFactor f;
    f.vectors.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    int i = 0;
    for (const auto& r : rows) {
        int j = 0;
        for (double v : r) f.vectors(i, j++) = v;
        ++i;
    }
    return f;
}

}  // namespace

TEST_SUITE("relaxation") {

TEST_CASE("solve_qp examples") {
    const RelaxedSolution zero = solve_qp(QuboProblem(Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2)));
    CHECK(zero.c_star.norm() <= 1e-9);
    CHECK(zero.objective == doctest::Approx(0.0));

    const RelaxedSolution clipped =
        solve_qp(QuboProblem(Eigen::MatrixXd::Identity(2, 2), Eigen::Vector2d(-4.0, -1.0)));
    CHECK(clipped.c_star[0] == doctest::Approx(1.0));
    CHECK(clipped.c_star[1] == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(clipped.objective == doctest::Approx(-3.25));
    CHECK(clipped.kkt_residual <= 1e-9);
}

TEST_CASE("solve_qp on a penalised portfolio meets the budget") {
    GbmConfig cfg;
    cfg.seed = 21;
    PortfolioInstance p = gbm_portfolio(cfg);
    p.q = 2.0;
    p.budget = 3;
    p.lambda = 100.0;
    const RelaxedSolution r = solve_qp(portfolio_qubo(p));
    CHECK(std::abs(r.c_star.sum() - 3.0) <= 0.05);
    CHECK(r.kkt_residual <= 1e-9);
}

TEST_CASE("solve_qp errors") {
    Eigen::MatrixXd s(2, 2);
    s << 0, 1, 1, 0;
    CHECK_THROWS_AS(solve_qp(QuboProblem(s, Eigen::VectorXd::Zero(2))), NotConvex);
    QpOptions tight;
    tight.max_iters = 1;
    CHECK_THROWS_AS(solve_qp(random_psd_qubo(5, 3), tight), IterationLimit);
}

TEST_CASE("solve_qp with a zero quadratic term") {
    const RelaxedSolution r = solve_qp(QuboProblem(Eigen::MatrixXd::Zero(3, 3), Eigen::Vector3d(-1.0, 2.0, 0.0)));
    CHECK(r.c_star == Eigen::Vector3d(1.0, 0.0, 0.0));
    CHECK(r.objective == doctest::Approx(-1.0));
}

TEST_CASE("QP relaxation bounds the binary optimum") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const QuboProblem q = random_psd_qubo(2 + static_cast<int>(seed % 8), seed);
        const RelaxedSolution r = solve_qp(q);
        CHECK(r.objective <= qubo_binary_optimum(q) + 1e-9);
        CHECK(r.c_star.minCoeff() >= 0.0);
        CHECK(r.c_star.maxCoeff() <= 1.0);
        const Eigen::VectorXd grad = 2.0 * q.sigma() * r.c_star + q.mu();
        CHECK(box_kkt_residual(r.c_star, grad) <= 1e-9);
    }
}

TEST_CASE("SDP examples") {
    const GramFactor edge = solve_maxcut_sdp(WeightedGraph(2, {{0, 1, 1.0}}), 1);
    CHECK(edge.objective == doctest::Approx(1.0));
    CHECK(edge.vectors.row(0).dot(edge.vectors.row(1)) == doctest::Approx(-1.0));
    CHECK(edge.stationary);

    const GramFactor tri = solve_maxcut_sdp(testutil::unit_triangle(), 2);
    CHECK(tri.objective == doctest::Approx(2.25).epsilon(1e-8));
    CHECK(tri.vectors.row(0).dot(tri.vectors.row(1)) == doctest::Approx(-0.5).epsilon(1e-6));
    CHECK_NOTHROW(tri.validate());
    CHECK(default_sdp_rank(20) == 7);
}

TEST_CASE("SDP bounds the max cut") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        Rng rng(seed);
        std::vector<Edge> edges;
        for (int i = 0; i < 8; ++i)
            for (int j = i + 1; j < 8; ++j)
                if (rng.uniform() < 0.6) edges.push_back({i, j, rng.uniform(0.1, 2.0)});
        const WeightedGraph g(8, edges);
        const GramFactor f = solve_maxcut_sdp(g, seed);
        CHECK(f.objective >= testutil::exhaustive_max_cut(g) - 1e-6);
    }
}

TEST_CASE("SDP stationarity and degenerate rows") {
    const WeightedGraph g = testutil::random_weighted_graph(10, 0.5, 5);
    const GramFactor f = solve_maxcut_sdp(g, 3);
    REQUIRE(f.stationary);
    const Eigen::MatrixXd w = g.weight_matrix();
    for (int i = 0; i < g.n(); ++i) {
        const Eigen::RowVectorXd sum = w.row(i) * f.vectors;
        if (sum.norm() > 1e-12) CHECK((f.vectors.row(i) + sum.normalized()).norm() <= 1e-6);
    }
    // an isolated node keeps its random start
    const GramFactor iso = solve_maxcut_sdp(WeightedGraph(3, {{0, 1, 1.0}}), 4);
    CHECK(iso.vectors.row(2).norm() == doctest::Approx(1.0));
    CHECK(iso.stationary);
}

TEST_CASE("gw_round") {
    Rng rng(1);
    const GramFactor anti = factor_of({{1, 0}, {-1, 0}});
    const GramFactor same = factor_of({{0.6, 0.8}, {0.6, 0.8}});
    const WeightedGraph edge(2, {{0, 1, 1.0}});
    for (int k = 0; k < 200; ++k) {
        CHECK(cut_value(edge, gw_round(anti, rng).spins()) == 1.0);
        CHECK(cut_value(edge, gw_round(same, rng).spins()) == 0.0);
    }
    const double s3 = std::sqrt(3.0) / 2.0;
    const GramFactor tri = factor_of({{1, 0}, {-0.5, s3}, {-0.5, -s3}});
    double mean = 0.0;
    const int reps = 100000;
    for (int k = 0; k < reps; ++k) mean += cut_value(testutil::unit_triangle(), gw_round(tri, rng).spins()) / reps;
    CHECK(std::abs(mean - 2.0) <= 0.02);
}

TEST_CASE("expected_cut_value") {
    const WeightedGraph edge(2, {{0, 1, 1.0}});
    CHECK(expected_cut_value(edge, factor_of({{1, 0}, {-1, 0}})) == doctest::Approx(1.0));
    CHECK(expected_cut_value(edge, factor_of({{1, 0}, {0, 1}})) == doctest::Approx(0.5));
    const double s3 = std::sqrt(3.0) / 2.0;
    CHECK(expected_cut_value(testutil::unit_triangle(), factor_of({{1, 0}, {-0.5, s3}, {-0.5, -s3}})) ==
          doctest::Approx(2.0));
    // slightly-too-long rows must not produce NaN
    CHECK(std::isfinite(expected_cut_value(edge, factor_of({{1 + 1e-15, 0}, {-1 - 1e-15, 0}}))));
}

TEST_CASE("rounding is unbiased and rotation invariant") {
    const WeightedGraph g = testutil::random_weighted_graph(9, 0.7, 8);
    const GramFactor f = solve_maxcut_sdp(g, 8);
    Rng rng(99);
    const int reps = 20000;
    double mean = 0.0, total = 0.0;
    for (int k = 0; k < reps; ++k) mean += cut_value(g, gw_round(f, rng).spins()) / reps;
    for (const Edge& e : g.edges()) total += std::abs(e.w);
    CHECK(std::abs(mean - expected_cut_value(g, f)) <= 4.0 / std::sqrt(reps) * total);

    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::MatrixXd::Random(f.rank(), f.rank()));
    GramFactor rotated = f;
    rotated.vectors = f.vectors * Eigen::MatrixXd(qr.householderQ());
    CHECK(expected_cut_value(g, rotated) == doctest::Approx(expected_cut_value(g, f)).epsilon(1e-9));
}

TEST_CASE("GW guarantee on nonnegative weights") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const double unit[] = {1.0, 2.0, 3.0};
        const WeightedGraph g = random_graph(10, 0.5, unit, seed);
        const GramFactor f = solve_maxcut_sdp(g, seed);
        CHECK(expected_cut_value(g, f) >= gw_alpha() * f.objective - 1e-9);
    }
}

TEST_CASE("gw_alpha") {
    CHECK(gw_alpha() > 0.87856);
    CHECK(gw_alpha() < 0.87857);
    CHECK(std::abs(gw_alpha() - 0.878567) <= 1e-5);
}

TEST_CASE("gw_best_cuts") {
    const WeightedGraph g = complete_graph(10, 3);
    const GwCuts one = gw_best_cuts(g, 1, 1, 5);
    CHECK(one.cuts.size() == 1);

    const GwCuts anti = gw_best_cuts(WeightedGraph(2, {{0, 1, 1.0}}), 25, 5, 5);
    CHECK(anti.cuts.size() == 1);

    const GwCuts many = gw_best_cuts(g, 40, 5, 7);
    CHECK(many.cuts.size() <= 5);
    CHECK(many.all_values.size() == 40);
    for (std::size_t k = 0; k < many.cuts.size(); ++k) {
        CHECK(many.cuts[k].spins()[0] == 1);
        CHECK(many.values[k] == doctest::Approx(cut_value(g, many.cuts[k].spins())));
        if (k > 0) {
            CHECK(many.values[k - 1] >= many.values[k]);
            CHECK(many.cuts[k - 1] != many.cuts[k]);
        }
    }
    CHECK(many.values.front() == *std::max_element(many.all_values.begin(), many.all_values.end()));
    const GwCuts again = gw_best_cuts(g, 40, 5, 7);
    CHECK(again.cuts == many.cuts);
    CHECK_THROWS_AS(gw_best_cuts(g, 2, 3, 1), InvalidInput);
}

}
