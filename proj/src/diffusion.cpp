#include "wsqopt/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/erf.hpp>

#include "wsqopt/errors.hpp"
#include "wsqopt/random.hpp"
#include "wsqopt/seed.hpp"

namespace wsqopt {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw InvalidInput(what);
}

using FastPolicy = boost::math::policies::policy<boost::math::policies::promote_double<false>>;

void check_domain(double s) { require(s >= -1.0 && s <= 1.0, "speed argument outside [-1, 1]"); }

}  // namespace

double krivine_speed(double s) {
    check_domain(s);
    if (std::abs(s) == 1.0) return 0.0;
    // Phi^{-1}((1 - s) / 2)^2 / 2 == erf^{-1}(s)^2
    const double e = boost::math::erf_inv(s, FastPolicy());
    return std::sqrt(2.0 / std::numbers::pi) * std::exp(-e * e);
}

double poly_speed(double alpha, double s) {
    check_domain(s);
    require(alpha > 0.0, "polynomial speed needs alpha > 0");
    return std::pow(1.0 - s * s, alpha);
}

SpeedFunction SpeedFunction::polynomial(double alpha) {
    require(alpha > 0.0, "polynomial speed needs alpha > 0");
    return {Kind::Polynomial, alpha};
}

SpeedFunction SpeedFunction::krivine() { return {Kind::Krivine, 0.0}; }

double SpeedFunction::operator()(double s) const {
    return kind_ == Kind::Krivine ? krivine_speed(s) : poly_speed(alpha_, s);
}

void DiffusionConfig::validate() const {
    require(dt > 0.0, "dt must be positive");
    require(absorb_tol > 0.0 && absorb_tol < 1.0, "absorb_tol must lie in (0, 1)");
    require(max_steps >= 1 && trajectories >= 1, "max_steps and trajectories must be positive");
}

double SignSamples::truncated_fraction(int i) const {
    return trajectories == 0 ? 0.0 : static_cast<double>(truncated[i]) / trajectories;
}

SignSamples simulate_signs(const GramFactor& f, const SpeedFunction& speed, const DiffusionConfig& cfg) {
    cfg.validate();
    f.validate();
    const int n = f.n();
    const int k = f.rank();
    SignSamples out;
    out.n = n;
    out.trajectories = cfg.trajectories;
    out.signs.assign(static_cast<std::size_t>(n) * cfg.trajectories, 1);
    out.truncated.assign(n, 0);

    const double sqrt_dt = std::sqrt(cfg.dt);
    const double edge = 1.0 - cfg.absorb_tol;
    std::vector<double> w(n), db(k);
    std::vector<int> active;
    active.reserve(n);

    for (int t = 0; t < cfg.trajectories; ++t) {
        Rng rng(derive_seed(cfg.seed, "diffusion", {static_cast<std::uint64_t>(t)}));
        std::fill(w.begin(), w.end(), 0.0);
        active.resize(n);
        for (int i = 0; i < n; ++i) active[i] = i;
        signed char* row = out.signs.data() + static_cast<std::size_t>(t) * n;

        for (int step = 0; step < cfg.max_steps && !active.empty(); ++step) {
            for (int c = 0; c < k; ++c) db[c] = sqrt_dt * rng.normal();
            std::size_t keep = 0;
            for (int i : active) {
                double proj = 0.0;
                for (int c = 0; c < k; ++c) proj += f.vectors(i, c) * db[c];
                const double next = std::clamp(w[i] + speed(w[i]) * proj, -1.0, 1.0);
                w[i] = next;
                if (std::abs(next) >= edge)
                    row[i] = next >= 0.0 ? 1 : -1;
                else
                    active[keep++] = i;
            }
            active.resize(keep);
        }
        for (int i : active) {
            row[i] = w[i] >= 0.0 ? 1 : -1;
            ++out.truncated[i];
        }
    }
    return out;
}

std::vector<CorrelationRow> correlation_report(const SignSamples& samples, const GramFactor& f,
                                               std::span<const std::pair<int, int>> pairs) {
    require(samples.n == f.n(), "samples and Gram factor differ in node count");
    require(samples.trajectories >= 1, "no trajectories");
    std::vector<CorrelationRow> rows;
    for (const auto& [i, j] : pairs) {
        require(i >= 0 && j >= 0 && i < f.n() && j < f.n(), "pair index out of range");
        CorrelationRow r;
        r.i = i;
        r.j = j;
        r.u_dot_v = std::clamp(f.vectors.row(i).dot(f.vectors.row(j)), -1.0, 1.0);
        long long sum = 0;
        for (int t = 0; t < samples.trajectories; ++t) sum += samples.at(t, i) * samples.at(t, j);
        r.empirical = static_cast<double>(sum) / samples.trajectories;
        r.predicted = 2.0 / std::numbers::pi * std::asin(r.u_dot_v);
        r.abs_err = std::abs(r.empirical - r.predicted);
        r.std_err = std::sqrt(std::max(0.0, 1.0 - r.empirical * r.empirical) / samples.trajectories);
        r.truncated_frac = std::max(samples.truncated_fraction(i), samples.truncated_fraction(j));
        rows.push_back(r);
    }
    return rows;
}

GramFactor paired_factor(std::span<const double> dots, int dim, std::uint64_t seed) {
    require(dim >= 2, "paired vectors need dimension at least 2");
    Rng rng(seed);
    auto random_unit = [&] {
        Eigen::RowVectorXd v(dim);
        for (int c = 0; c < dim; ++c) v[c] = rng.normal();
        return Eigen::RowVectorXd(v.normalized());
    };
    GramFactor f;
    f.vectors.resize(2 * static_cast<Eigen::Index>(dots.size()), dim);
    for (std::size_t p = 0; p < dots.size(); ++p) {
        const double t = dots[p];
        require(t >= -1.0 && t <= 1.0, "inner product outside [-1, 1]");
        const Eigen::RowVectorXd u = random_unit();
        Eigen::RowVectorXd w = random_unit();
        w -= w.dot(u) * u;
        w.normalize();
        f.vectors.row(2 * p) = u;
        f.vectors.row(2 * p + 1) = (t * u + std::sqrt(1.0 - t * t) * w).normalized();
    }
    f.stationary = true;
    return f;
}

}  // namespace wsqopt
