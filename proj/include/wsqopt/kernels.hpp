#pragma once

// Data-parallel inner loops of the statevector simulator.
//
// Every kernel has a portable scalar reference implementation and, on x86-64
// builds, an AVX2+FMA variant compiled in its own translation unit. The active
// table is chosen once at first use: AVX2 when the CPU reports both AVX2 and
// FMA, scalar otherwise. Setting WSQOPT_SIMD=scalar in the environment (or
// calling set_backend) forces the reference path.

#include <complex>
#include <span>
#include <string_view>

namespace wsqopt::kernels {

using Complex = std::complex<double>;

/// Row-major 2x2 complex matrix acting on one qubit: |0> -> (u00, u10), |1> -> (u01, u11).
struct Gate2 {
    Complex u00, u01, u10, u11;
};

struct KernelTable {
    std::string_view name;
    /// Applies `gate` to qubit `target` of a 2^n amplitude vector.
    void (*apply_gate)(std::span<Complex> amps, int target, const Gate2& gate);
    /// amps[x] *= exp(-i * gamma * energies[x]).
    void (*apply_phase)(std::span<Complex> amps, std::span<const double> energies, double gamma);
    /// sum_x |amps[x]|^2 * energies[x].
    double (*expectation)(std::span<const Complex> amps, std::span<const double> energies);
    /// sum_x |amps[x]|^2.
    double (*norm_squared)(std::span<const Complex> amps);
};

enum class Backend { Scalar, Avx2 };

const KernelTable& scalar_table() noexcept;
/// Null when the library was built without the AVX2 translation unit.
const KernelTable* avx2_table() noexcept;

/// Compiled in and supported by the running CPU.
bool avx2_available() noexcept;

const KernelTable& active() noexcept;
Backend active_backend() noexcept;
/// Throws InvalidInput when the requested backend is unavailable.
void set_backend(Backend backend);

}  // namespace wsqopt::kernels
