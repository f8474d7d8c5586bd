#include <doctest.h>

#include <cstdlib>
#include <random>

#include "oracles.hpp"
#include "symqfi/kernels.hpp"

using namespace symqfi;

namespace {

// a few ulps of the operand scale
double tol(std::size_t n, double scale) { return 64.0 * 2.2e-16 * scale * double(n + 1); }

}  // namespace

TEST_CASE("scalar kernels against written-out loops") {
    std::mt19937_64 rng(7);
    const auto& k = scalar_kernels();
    CHECK(k.level == SimdLevel::none);
    for (std::size_t n : {0u, 1u, 2u, 3u, 5u, 8u, 17u}) {
        auto a = oracle::random_vector(rng, n), b = oracle::random_vector(rng, n);
        cplx d = 0.0;
        double ns = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d += std::conj(a[i]) * b[i];
            ns += std::norm(a[i]);
        }
        CHECK(std::abs(k.dot_conj(a.data(), b.data(), n) - d) <= tol(n, 10.0));
        CHECK(std::abs(k.norm_sq(a.data(), n) - ns) <= tol(n, 10.0));

        const cplx alpha(0.3, -1.1);
        auto y = b;
        k.axpy(alpha, a.data(), y.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y[i] - (b[i] + alpha * a[i])) <= 1e-14);
        y = b;
        k.axpy_conj(alpha, a.data(), y.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y[i] - (b[i] + alpha * std::conj(a[i]))) <= 1e-14);

        const cplx p(0.6, 0.1), q(-0.2, 0.7), r(1.3, 0.0), s(0.0, -0.4);
        auto x = a;
        y = b;
        k.mix_pair(p, q, r, s, x.data(), y.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(x[i] - (p * a[i] + q * b[i])) <= 1e-14);
            CHECK(std::abs(y[i] - (r * a[i] + s * b[i])) <= 1e-14);
        }
    }
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
    const KernelTable* v = avx2_kernels();
    if (v == nullptr || !cpu_supports_avx2()) {
        MESSAGE("AVX2 variant not available on this build/CPU; equivalence not exercised");
        return;
    }
    CHECK(v->level == SimdLevel::avx2);
    const auto& s = scalar_kernels();
    std::mt19937_64 rng(11);
    for (std::size_t n = 0; n <= 67; ++n) {
        for (int rep = 0; rep < 4; ++rep) {
            auto a = oracle::random_vector(rng, n), b = oracle::random_vector(rng, n);
            double scale = 1.0;
            for (std::size_t i = 0; i < n; ++i) scale += std::abs(a[i]) * std::abs(b[i]) + std::norm(a[i]);
            CHECK(std::abs(v->dot_conj(a.data(), b.data(), n) - s.dot_conj(a.data(), b.data(), n)) <= tol(n, scale));
            CHECK(std::abs(v->norm_sq(a.data(), n) - s.norm_sq(a.data(), n)) <= tol(n, scale));

            const cplx alpha = oracle::random_cplx(rng);
            auto y1 = b, y2 = b;
            v->axpy(alpha, a.data(), y1.data(), n);
            s.axpy(alpha, a.data(), y2.data(), n);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-13);
            y1 = b;
            y2 = b;
            v->axpy_conj(alpha, a.data(), y1.data(), n);
            s.axpy_conj(alpha, a.data(), y2.data(), n);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-13);

            const cplx p = oracle::random_cplx(rng), q = oracle::random_cplx(rng), r = oracle::random_cplx(rng),
                       t = oracle::random_cplx(rng);
            auto x1 = a, x2 = a;
            y1 = b;
            y2 = b;
            v->mix_pair(p, q, r, t, x1.data(), y1.data(), n);
            s.mix_pair(p, q, r, t, x2.data(), y2.data(), n);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(std::abs(x1[i] - x2[i]) <= 1e-13);
                CHECK(std::abs(y1[i] - y2[i]) <= 1e-13);
            }
        }
    }
}

TEST_CASE("runtime selection can be forced and reported") {
    const SimdLevel initial = active_simd_level();
    force_simd_level(SimdLevel::none);
    CHECK(active_simd_level() == SimdLevel::none);
    CHECK(&kernels() == &scalar_kernels());
    CHECK(std::string(simd_level_name(SimdLevel::none)) != std::string(simd_level_name(SimdLevel::avx2)));
    if (avx2_kernels() != nullptr && cpu_supports_avx2()) {
        force_simd_level(SimdLevel::avx2);
        CHECK(active_simd_level() == SimdLevel::avx2);
    } else {
        CHECK_THROWS(force_simd_level(SimdLevel::avx2));
    }
    force_simd_level(initial);
}
