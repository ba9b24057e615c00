// AVX2 + FMA variants of the statevector kernels. This file is compiled with
// -mavx2 -mfma and only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "wsqopt/kernels.hpp"

namespace wsqopt::kernels {

namespace {

// Two interleaved complex numbers per register: [re0, im0, re1, im1].

inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

/// (ur + i ui) * v for a broadcast complex scalar.
inline __m256d mul_scalar(__m256d ur, __m256d ui, __m256d v) {
    return _mm256_fmaddsub_pd(ur, v, _mm256_mul_pd(ui, swap_re_im(v)));
}

/// Lane-wise complex product w * v.
inline __m256d mul_lanes(__m256d w, __m256d v) {
    const __m256d wr = _mm256_movedup_pd(w);
    const __m256d wi = _mm256_permute_pd(w, 0b1111);
    return _mm256_fmaddsub_pd(wr, v, _mm256_mul_pd(wi, swap_re_im(v)));
}

inline __m256d load(const Complex* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store(Complex* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// Cephes-style sin/cos: three-part Cody-Waite reduction by pi/4 and degree-6
// minimax polynomials on [-pi/4, pi/4]. Accurate to a few ulp for |x| < 1e8.
inline void sincos(__m256d x, __m256d& s, __m256d& c) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    const __m256d sign_x = _mm256_and_pd(x, sign_mask);
    const __m256d ax = _mm256_andnot_pd(sign_mask, x);

    __m256d y = _mm256_floor_pd(_mm256_mul_pd(ax, _mm256_set1_pd(1.27323954473516268615)));
    __m128i j = _mm256_cvttpd_epi32(y);
    j = _mm_and_si128(_mm_add_epi32(j, _mm_set1_epi32(1)), _mm_set1_epi32(~1));
    y = _mm256_cvtepi32_pd(j);

    __m256d z = _mm256_fnmadd_pd(y, _mm256_set1_pd(7.85398125648498535156e-1), ax);
    z = _mm256_fnmadd_pd(y, _mm256_set1_pd(3.77489470793079817668e-8), z);
    z = _mm256_fnmadd_pd(y, _mm256_set1_pd(2.69515142907905952645e-15), z);
    const __m256d zz = _mm256_mul_pd(z, z);

    __m256d ps = _mm256_set1_pd(1.58962301576546568060e-10);
    ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(-2.50507477628578072866e-8));
    ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(2.75573136213857245213e-6));
    ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(-1.98412698295895385996e-4));
    ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(8.33333333332211858878e-3));
    ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(-1.66666666666666307295e-1));
    ps = _mm256_fmadd_pd(_mm256_mul_pd(ps, zz), z, z);

    __m256d pc = _mm256_set1_pd(-1.13585365213876817300e-11);
    pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(2.08757008419747316778e-9));
    pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(-2.75573141792967388112e-7));
    pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(2.48015872888517045348e-5));
    pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(-1.38888888888730564116e-3));
    pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(4.16666666666665929218e-2));
    pc = _mm256_fmadd_pd(_mm256_mul_pd(pc, zz), zz, _mm256_fnmadd_pd(_mm256_set1_pd(0.5), zz, _mm256_set1_pd(1.0)));

    // Quadrant q = (j / 2) mod 4 of the reduced argument.
    const __m128i q = _mm_and_si128(_mm_srli_epi32(j, 1), _mm_set1_epi32(3));
    auto widen = [](__m128i m) { return _mm256_castsi256_pd(_mm256_cvtepi32_epi64(m)); };
    const __m128i zero = _mm_setzero_si128();
    const __m256d swap = widen(_mm_cmpgt_epi32(_mm_and_si128(q, _mm_set1_epi32(1)), zero));
    const __m256d sin_neg = widen(_mm_cmpgt_epi32(_mm_and_si128(q, _mm_set1_epi32(2)), zero));
    const __m256d cos_neg = widen(
        _mm_cmpgt_epi32(_mm_and_si128(_mm_add_epi32(q, _mm_set1_epi32(1)), _mm_set1_epi32(2)), zero));

    s = _mm256_blendv_pd(ps, pc, swap);
    c = _mm256_blendv_pd(pc, ps, swap);
    s = _mm256_xor_pd(s, _mm256_and_pd(sin_neg, sign_mask));
    s = _mm256_xor_pd(s, sign_x);
    c = _mm256_xor_pd(c, _mm256_and_pd(cos_neg, sign_mask));
}

void apply_gate_avx2(std::span<Complex> amps, int target, const Gate2& g) {
    const std::size_t dim = amps.size();
    Complex* data = amps.data();
    if (dim < 4) {
        scalar_table().apply_gate(amps, target, g);
        return;
    }
    if (target == 0) {
        // Each register holds one (|..0>, |..1>) pair.
        const __m256d diag = _mm256_setr_pd(g.u00.real(), g.u00.imag(), g.u11.real(), g.u11.imag());
        const __m256d anti = _mm256_setr_pd(g.u01.real(), g.u01.imag(), g.u10.real(), g.u10.imag());
        for (std::size_t x = 0; x < dim; x += 2) {
            const __m256d v = load(data + x);
            const __m256d flipped = _mm256_permute2f128_pd(v, v, 0x01);
            store(data + x, _mm256_add_pd(mul_lanes(diag, v), mul_lanes(anti, flipped)));
        }
        return;
    }
    const __m256d r00 = _mm256_set1_pd(g.u00.real()), i00 = _mm256_set1_pd(g.u00.imag());
    const __m256d r01 = _mm256_set1_pd(g.u01.real()), i01 = _mm256_set1_pd(g.u01.imag());
    const __m256d r10 = _mm256_set1_pd(g.u10.real()), i10 = _mm256_set1_pd(g.u10.imag());
    const __m256d r11 = _mm256_set1_pd(g.u11.real()), i11 = _mm256_set1_pd(g.u11.imag());
    const std::size_t stride = std::size_t{1} << target;
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t off = 0; off < stride; off += 2) {
            Complex* pa = data + base + off;
            Complex* pb = pa + stride;
            const __m256d a = load(pa);
            const __m256d b = load(pb);
            store(pa, _mm256_add_pd(mul_scalar(r00, i00, a), mul_scalar(r01, i01, b)));
            store(pb, _mm256_add_pd(mul_scalar(r10, i10, a), mul_scalar(r11, i11, b)));
        }
    }
}

void apply_phase_avx2(std::span<Complex> amps, std::span<const double> energies, double gamma) {
    const std::size_t dim = amps.size();
    Complex* data = amps.data();
    const __m256d vg = _mm256_set1_pd(gamma);
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    std::size_t x = 0;
    for (; x + 4 <= dim; x += 4) {
        __m256d s, c;
        sincos(_mm256_mul_pd(vg, _mm256_loadu_pd(energies.data() + x)), s, c);
        const __m256d ns = _mm256_xor_pd(s, sign_mask);
        const __m256d lo = _mm256_unpacklo_pd(c, ns);  // c0 -s0 c2 -s2
        const __m256d hi = _mm256_unpackhi_pd(c, ns);  // c1 -s1 c3 -s3
        const __m256d w01 = _mm256_permute2f128_pd(lo, hi, 0x20);
        const __m256d w23 = _mm256_permute2f128_pd(lo, hi, 0x31);
        store(data + x, mul_lanes(w01, load(data + x)));
        store(data + x + 2, mul_lanes(w23, load(data + x + 2)));
    }
    for (; x < dim; ++x) {
        const double angle = gamma * energies[x];
        data[x] *= Complex(std::cos(angle), -std::sin(angle));
    }
}

double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double expectation_avx2(std::span<const Complex> amps, std::span<const double> energies) {
    const std::size_t dim = amps.size();
    const Complex* data = amps.data();
    __m256d acc = _mm256_setzero_pd();
    std::size_t x = 0;
    for (; x + 4 <= dim; x += 4) {
        const __m256d v0 = load(data + x);
        const __m256d v1 = load(data + x + 2);
        // hadd yields [|a0|^2, |a2|^2, |a1|^2, |a3|^2]
        const __m256d p = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
        const __m256d e = _mm256_permute4x64_pd(_mm256_loadu_pd(energies.data() + x), 0b11011000);
        acc = _mm256_fmadd_pd(p, e, acc);
    }
    double total = hsum(acc);
    for (; x < dim; ++x) total += std::norm(data[x]) * energies[x];
    return total;
}

double norm_squared_avx2(std::span<const Complex> amps) {
    const std::size_t dim = amps.size();
    const Complex* data = amps.data();
    __m256d acc = _mm256_setzero_pd();
    std::size_t x = 0;
    for (; x + 2 <= dim; x += 2) {
        const __m256d v = load(data + x);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double total = hsum(acc);
    for (; x < dim; ++x) total += std::norm(data[x]);
    return total;
}

constexpr KernelTable kAvx2{"avx2", apply_gate_avx2, apply_phase_avx2, expectation_avx2,
                            norm_squared_avx2};

}  // namespace

const KernelTable& avx2_kernels() noexcept { return kAvx2; }

}  // namespace wsqopt::kernels
