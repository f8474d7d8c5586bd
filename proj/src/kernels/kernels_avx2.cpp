// Compiled with -mavx2 -mfma; only reached after a CPUID check.

#ifdef SYMQFI_COMPILE_AVX2

#include <immintrin.h>

#include "symqfi/kernels.hpp"

namespace symqfi {
namespace {

// One __m256d holds two complex doubles as (re0, im0, re1, im1).

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

// z * v for a broadcast complex scalar z = (zr, zi).
inline __m256d cmul_scalar(__m256d zr, __m256d zi, __m256d v) {
    return _mm256_fmaddsub_pd(zr, v, _mm256_mul_pd(zi, swap_re_im(v)));
}

inline __m256d conj2(__m256d v) {
    return _mm256_xor_pd(v, _mm256_set_pd(-0.0, 0.0, -0.0, 0.0));
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

cplx dot_conj_avx2(const cplx* a, const cplx* b, std::size_t n) {
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = load2(a + i);
        const __m256d vb = load2(b + i);
        // (ar br, ai bi) and (ar bi, ai br)
        acc_re = _mm256_fmadd_pd(va, vb, acc_re);
        acc_im = _mm256_fmadd_pd(va, swap_re_im(vb), acc_im);
    }
    const __m256d alt = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
    double re = hsum(acc_re);
    double im = hsum(_mm256_mul_pd(acc_im, alt));
    for (; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const __m256d zr = _mm256_set1_pd(alpha.real());
    const __m256d zi = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) store2(y + i, _mm256_add_pd(load2(y + i), cmul_scalar(zr, zi, load2(x + i))));
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + (alpha.real() * xr - alpha.imag() * xi),
                y[i].imag() + (alpha.real() * xi + alpha.imag() * xr)};
    }
}

void axpy_conj_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const __m256d zr = _mm256_set1_pd(alpha.real());
    const __m256d zi = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        store2(y + i, _mm256_add_pd(load2(y + i), cmul_scalar(zr, zi, conj2(load2(x + i)))));
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = -x[i].imag();
        y[i] = {y[i].real() + (alpha.real() * xr - alpha.imag() * xi),
                y[i].imag() + (alpha.real() * xi + alpha.imag() * xr)};
    }
}

void mix_pair_avx2(cplx a, cplx b, cplx c, cplx d, cplx* x, cplx* y, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real()), ai = _mm256_set1_pd(a.imag());
    const __m256d br = _mm256_set1_pd(b.real()), bi = _mm256_set1_pd(b.imag());
    const __m256d cr = _mm256_set1_pd(c.real()), ci = _mm256_set1_pd(c.imag());
    const __m256d dr = _mm256_set1_pd(d.real()), di = _mm256_set1_pd(d.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = load2(x + i);
        const __m256d vy = load2(y + i);
        store2(x + i, _mm256_add_pd(cmul_scalar(ar, ai, vx), cmul_scalar(br, bi, vy)));
        store2(y + i, _mm256_add_pd(cmul_scalar(cr, ci, vx), cmul_scalar(dr, di, vy)));
    }
    for (; i < n; ++i) {
        const cplx xi = x[i];
        const cplx yi = y[i];
        auto mul = [](cplx u, cplx v) {
            return cplx{u.real() * v.real() - u.imag() * v.imag(), u.real() * v.imag() + u.imag() * v.real()};
        };
        x[i] = mul(a, xi) + mul(b, yi);
        y[i] = mul(c, xi) + mul(d, yi);
    }
}

double norm_sq_avx2(const cplx* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = load2(x + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

}  // namespace

const KernelTable* avx2_kernels() {
    static const KernelTable table{SimdLevel::avx2, dot_conj_avx2, axpy_avx2,
                                   axpy_conj_avx2, mix_pair_avx2, norm_sq_avx2};
    return &table;
}

}  // namespace symqfi

#endif  // SYMQFI_COMPILE_AVX2
