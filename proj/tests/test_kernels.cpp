#include <cmath>
#include <vector>

#include "doctest.h"
#include "wsqopt/kernels.hpp"
#include "wsqopt/random.hpp"

using namespace wsqopt;
using namespace wsqopt::kernels;

namespace {

std::vector<Complex> random_amps(std::size_t dim, Rng& rng) {
    std::vector<Complex> a(dim);
    for (auto& x : a) x = {rng.normal(), rng.normal()};
    return a;
}

Gate2 random_gate(Rng& rng) {
    return {{rng.normal(), rng.normal()}, {rng.normal(), rng.normal()}, {rng.normal(), rng.normal()},
            {rng.normal(), rng.normal()}};
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar reference against hand computation") {
    std::vector<Complex> amps{{1, 0}, {0, 0}, {0, 0}, {0, 0}};
    const Gate2 x{{0, 0}, {1, 0}, {1, 0}, {0, 0}};
    scalar_table().apply_gate(amps, 1, x);
    CHECK(amps[2] == Complex(1, 0));
    CHECK(amps[0] == Complex(0, 0));

    const std::vector<double> energies{0.0, 1.0, 2.0, 3.0};
    std::vector<Complex> p{{0.5, 0}, {0.5, 0}, {0.5, 0}, {0.5, 0}};
    scalar_table().apply_phase(p, energies, 0.25);
    CHECK(std::abs(p[2] - std::polar(0.5, -0.5)) < 1e-15);
    CHECK(scalar_table().expectation(p, energies) == doctest::Approx(1.5));
    CHECK(scalar_table().norm_squared(p) == doctest::Approx(1.0));
}

TEST_CASE("AVX2 kernels match the scalar reference") {
    const KernelTable* simd = avx2_table();
    if (simd == nullptr || !avx2_available()) {
        MESSAGE("AVX2 kernels not available on this build/CPU; equivalence not exercised");
        return;
    }
    Rng rng(2024);
    for (int n = 1; n <= 11; ++n) {
        const std::size_t dim = std::size_t{1} << n;
        for (int target = 0; target < n; ++target) {
            const Gate2 g = random_gate(rng);
            auto a = random_amps(dim, rng);
            auto b = a;
            scalar_table().apply_gate(a, target, g);
            simd->apply_gate(b, target, g);
            CHECK(max_diff(a, b) <= 1e-12);
        }
        std::vector<double> energies(dim);
        for (auto& e : energies) e = rng.uniform(-50.0, 50.0);
        for (double gamma : {0.0, 0.37, -2.1, 13.7}) {
            auto a = random_amps(dim, rng);
            auto b = a;
            scalar_table().apply_phase(a, energies, gamma);
            simd->apply_phase(b, energies, gamma);
            CHECK(max_diff(a, b) <= 1e-12);
        }
        const auto a = random_amps(dim, rng);
        const double ref = scalar_table().expectation(a, energies);
        CHECK(simd->expectation(a, energies) == doctest::Approx(ref).epsilon(1e-12));
        CHECK(simd->norm_squared(a) == doctest::Approx(scalar_table().norm_squared(a)).epsilon(1e-12));
    }
}

TEST_CASE("vectorised sincos over a wide argument range") {
    const KernelTable* simd = avx2_table();
    if (simd == nullptr || !avx2_available()) return;
    std::vector<double> energies(4096);
    for (std::size_t k = 0; k < energies.size(); ++k) energies[k] = -1.0e4 + 5.0 * static_cast<double>(k) + 0.123;
    std::vector<Complex> a(energies.size(), Complex(1, 0)), b = a;
    scalar_table().apply_phase(a, energies, 1.0);
    simd->apply_phase(b, energies, 1.0);
    CHECK(max_diff(a, b) <= 1e-11);
}

TEST_CASE("backend selection") {
    const Backend before = active_backend();
    set_backend(Backend::Scalar);
    CHECK(active().name == scalar_table().name);
    if (avx2_available()) {
        set_backend(Backend::Avx2);
        CHECK(active_backend() == Backend::Avx2);
    }
    set_backend(before);
}

}
