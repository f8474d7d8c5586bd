#include "symqfi/kernels.hpp"

namespace symqfi {
namespace {

// Products are spelled out in real arithmetic so the reference does not
// depend on the library's complex multiply (which adds NaN recovery).

cplx dot_conj_scalar(const cplx* a, const cplx* b, std::size_t n) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

void axpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const double zr = alpha.real(), zi = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + (zr * xr - zi * xi), y[i].imag() + (zr * xi + zi * xr)};
    }
}

void axpy_conj_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const double zr = alpha.real(), zi = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = -x[i].imag();
        y[i] = {y[i].real() + (zr * xr - zi * xi), y[i].imag() + (zr * xi + zi * xr)};
    }
}

inline cplx mul(cplx u, cplx v) {
    return {u.real() * v.real() - u.imag() * v.imag(), u.real() * v.imag() + u.imag() * v.real()};
}

void mix_pair_scalar(cplx a, cplx b, cplx c, cplx d, cplx* x, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const cplx xi = x[i];
        const cplx yi = y[i];
        x[i] = mul(a, xi) + mul(b, yi);
        y[i] = mul(c, xi) + mul(d, yi);
    }
}

double norm_sq_scalar(const cplx* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{SimdLevel::none, dot_conj_scalar, axpy_scalar,
                                   axpy_conj_scalar, mix_pair_scalar, norm_sq_scalar};
    return table;
}

}  // namespace symqfi
