#pragma once

// Complex inner-loop kernels with a scalar reference and an AVX2 variant.
//
// All operations act on contiguous std::complex<double> ranges. The scalar
// path is the reference; the AVX2 path must agree with it to rounding (the
// kernel equivalence tests pin this at a few ulps of the operand scale).
// Selection happens once at first use from CPUID and can be overridden with
// the SYMQFI_SIMD environment variable ("none" or "avx2") or force_simd_level.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace symqfi {

using cplx = std::complex<double>;

enum class SimdLevel { none, avx2 };

struct KernelTable {
    SimdLevel level;
    // sum_i conj(a_i) * b_i
    cplx (*dot_conj)(const cplx* a, const cplx* b, std::size_t n);
    // y_i += alpha * x_i
    void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
    // y_i += alpha * conj(x_i)
    void (*axpy_conj)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
    // (x_i, y_i) <- (a x_i + b y_i, c x_i + d y_i)
    void (*mix_pair)(cplx a, cplx b, cplx c, cplx d, cplx* x, cplx* y, std::size_t n);
    // sum_i |x_i|^2
    double (*norm_sq)(const cplx* x, std::size_t n);
};

const KernelTable& scalar_kernels();
// nullptr when the build has no AVX2 translation unit.
const KernelTable* avx2_kernels();

bool cpu_supports_avx2();

// Table used by the library. Thread-safe.
const KernelTable& kernels();

// Overrides the active table; throws if the level is unavailable on this CPU.
void force_simd_level(SimdLevel level);
SimdLevel active_simd_level();
std::string_view simd_level_name(SimdLevel level);

// Span conveniences over the active table.
inline cplx dot_conj(std::span<const cplx> a, std::span<const cplx> b) {
    return kernels().dot_conj(a.data(), b.data(), a.size());
}

inline double norm_sq(std::span<const cplx> x) {
    return kernels().norm_sq(x.data(), x.size());
}

inline void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    kernels().axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace symqfi
