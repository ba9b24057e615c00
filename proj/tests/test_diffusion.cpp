#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wsqopt/diffusion.hpp"
#include "wsqopt/errors.hpp"

using namespace wsqopt;

namespace {

GramFactor rows(std::initializer_list<std::initializer_list<double>> values) {
    GramFactor f;
    f.vectors.resize(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.begin()->size()));
    Eigen::Index r = 0;
    for (const auto& row : values) {
        Eigen::Index c = 0;
        for (double v : row) f.vectors(r, c++) = v;
        f.vectors.row(r).normalize();
        ++r;
    }
    return f;
}

DiffusionConfig small(int trajectories, std::uint64_t seed) {
    DiffusionConfig cfg;
    cfg.trajectories = trajectories;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_SUITE("diffusion") {

TEST_CASE("speed functions") {
    CHECK(krivine_speed(0.0) == doctest::Approx(std::sqrt(2.0 / std::numbers::pi)));
    CHECK(krivine_speed(1.0) == 0.0);
    CHECK(krivine_speed(-1.0) == 0.0);
    CHECK(krivine_speed(0.3) == doctest::Approx(krivine_speed(-0.3)));
    CHECK(poly_speed(1.0, 0.5) == doctest::Approx(0.75));
    CHECK(poly_speed(2.0, 1.0) == 0.0);
    const SpeedFunction p = SpeedFunction::polynomial(1.5);
    CHECK(p.kind() == SpeedFunction::Kind::Polynomial);
    CHECK(p(0.2) == doctest::Approx(std::pow(0.96, 1.5)));
    CHECK(SpeedFunction::krivine()(0.4) == doctest::Approx(krivine_speed(0.4)));
    CHECK_THROWS_AS(SpeedFunction::polynomial(0.0), InvalidInput);
}

TEST_CASE("identical and antipodal vectors give perfect correlation") {
    const GramFactor f = rows({{1, 0, 0}, {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}});
    for (const SpeedFunction& speed : {SpeedFunction::krivine(), SpeedFunction::polynomial(1.0)}) {
        const SignSamples s = simulate_signs(f, speed, small(50, 3));
        for (int t = 0; t < s.trajectories; ++t) {
            CHECK(s.at(t, 0) == s.at(t, 1));
            CHECK(s.at(t, 0) == -s.at(t, 2));
            CHECK(std::abs(s.at(t, 3)) == 1);
        }
    }
}

TEST_CASE("node order does not change the samples") {
    const GramFactor a = rows({{1, 0.2, 0}, {0.1, 1, 0.4}, {0, -0.3, 1}});
    GramFactor b = a;
    b.vectors.row(0) = a.vectors.row(2);
    b.vectors.row(2) = a.vectors.row(0);
    const SignSamples sa = simulate_signs(a, SpeedFunction::krivine(), small(30, 9));
    const SignSamples sb = simulate_signs(b, SpeedFunction::krivine(), small(30, 9));
    for (int t = 0; t < 30; ++t) {
        CHECK(sa.at(t, 0) == sb.at(t, 2));
        CHECK(sa.at(t, 1) == sb.at(t, 1));
        CHECK(sa.at(t, 2) == sb.at(t, 0));
    }
}

TEST_CASE("simulation is deterministic per seed") {
    const GramFactor f = rows({{1, 0}, {0.6, 0.8}});
    const SignSamples a = simulate_signs(f, SpeedFunction::krivine(), small(40, 5));
    const SignSamples b = simulate_signs(f, SpeedFunction::krivine(), small(40, 5));
    CHECK(a.signs == b.signs);
}

TEST_CASE("Krivine speed reproduces the arcsine law on a small sample") {
    const std::vector<double> dots{0.6, -0.4};
    const GramFactor f = paired_factor(dots, 4, 2);
    for (int p = 0; p < 2; ++p)
        CHECK(f.vectors.row(2 * p).dot(f.vectors.row(2 * p + 1)) == doctest::Approx(dots[p]).epsilon(1e-12));
    const SignSamples s = simulate_signs(f, SpeedFunction::krivine(), small(400, 11));
    const std::vector<std::pair<int, int>> pairs{{0, 1}, {2, 3}};
    for (const CorrelationRow& row : correlation_report(s, f, pairs)) {
        CHECK(row.predicted == doctest::Approx(2.0 / std::numbers::pi * std::asin(row.u_dot_v)));
        CHECK(row.abs_err <= 4.0 * row.std_err + 1e-12);
        CHECK(row.truncated_frac <= 0.01);
    }
}

TEST_CASE("halving dt moves correlations by less than the sampling noise") {
    const std::vector<double> dots{0.3};
    const GramFactor f = paired_factor(dots, 3, 4);
    const std::vector<std::pair<int, int>> pairs{{0, 1}};
    DiffusionConfig coarse = small(600, 21);
    coarse.dt = 8e-3;
    DiffusionConfig fine = coarse;
    fine.dt = 4e-3;
    const CorrelationRow a = correlation_report(simulate_signs(f, SpeedFunction::krivine(), coarse), f, pairs)[0];
    const CorrelationRow b = correlation_report(simulate_signs(f, SpeedFunction::krivine(), fine), f, pairs)[0];
    CHECK(std::abs(a.empirical - b.empirical) <= 3.0 * std::hypot(a.std_err, b.std_err));
}

TEST_CASE("config validation") {
    DiffusionConfig cfg;
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidInput);
    cfg = DiffusionConfig{};
    cfg.trajectories = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidInput);
    const std::vector<double> bad{1.5};
    CHECK_THROWS_AS(paired_factor(bad, 3, 1), InvalidInput);
}

}
