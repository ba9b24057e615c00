#include <cmath>
#include <cstdlib>
#include <cstring>

#include "wsqopt/errors.hpp"
#include "wsqopt/kernels.hpp"

namespace wsqopt::kernels {

namespace {

void apply_gate_scalar(std::span<Complex> amps, int target, const Gate2& g) {
    const std::size_t stride = std::size_t{1} << target;
    const std::size_t dim = amps.size();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            Complex& a = amps[base + off];
            Complex& b = amps[base + off + stride];
            const Complex a0 = a;
            const Complex b0 = b;
            a = g.u00 * a0 + g.u01 * b0;
            b = g.u10 * a0 + g.u11 * b0;
        }
    }
}

void apply_phase_scalar(std::span<Complex> amps, std::span<const double> energies, double gamma) {
    for (std::size_t x = 0; x < amps.size(); ++x) {
        const double angle = gamma * energies[x];
        amps[x] *= Complex(std::cos(angle), -std::sin(angle));
    }
}

double expectation_scalar(std::span<const Complex> amps, std::span<const double> energies) {
    double acc = 0.0;
    for (std::size_t x = 0; x < amps.size(); ++x) acc += std::norm(amps[x]) * energies[x];
    return acc;
}

double norm_squared_scalar(std::span<const Complex> amps) {
    double acc = 0.0;
    for (const Complex& a : amps) acc += std::norm(a);
    return acc;
}

constexpr KernelTable kScalar{"scalar", apply_gate_scalar, apply_phase_scalar, expectation_scalar,
                              norm_squared_scalar};

#if defined(WSQOPT_HAVE_AVX2)
bool cpu_has_avx2() noexcept {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable* initial_table() noexcept {
    if (const char* env = std::getenv("WSQOPT_SIMD"); env && std::strcmp(env, "scalar") == 0)
        return &kScalar;
    if (avx2_available()) return avx2_table();
    return &kScalar;
}

const KernelTable*& current() noexcept {
    static const KernelTable* table = initial_table();
    return table;
}

}  // namespace

#if defined(WSQOPT_HAVE_AVX2)
const KernelTable& avx2_kernels() noexcept;  // kernels_avx2.cpp
const KernelTable* avx2_table() noexcept { return &avx2_kernels(); }
bool avx2_available() noexcept {
    static const bool ok = cpu_has_avx2();
    return ok;
}
#else
const KernelTable* avx2_table() noexcept { return nullptr; }
bool avx2_available() noexcept { return false; }
#endif

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable& active() noexcept { return *current(); }

Backend active_backend() noexcept { return current() == &kScalar ? Backend::Scalar : Backend::Avx2; }

void set_backend(Backend backend) {
    if (backend == Backend::Scalar) {
        current() = &kScalar;
        return;
    }
    if (!avx2_available()) throw InvalidInput("AVX2 kernels are not available on this machine");
    current() = avx2_table();
}

}  // namespace wsqopt::kernels
