#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "symqfi/errors.hpp"
#include "symqfi/linalg.hpp"

using namespace symqfi;

TEST_CASE("matrix product, adjoint and matvec match naive loops") {
    std::mt19937_64 rng(3);
    for (std::size_t n : {1u, 2u, 3u, 7u, 12u}) {
        const ComplexMatrix a = oracle::random_matrix(rng, n, n + 1);
        const ComplexMatrix b = oracle::random_matrix(rng, n + 1, n);
        CHECK(oracle::naive_max_diff(a * b, oracle::naive_product(a, b)) <= 1e-12);
        CHECK(oracle::naive_max_diff(a.adjoint(), oracle::naive_adjoint(a)) == 0.0);
        const auto x = oracle::random_vector(rng, n + 1);
        const CVector y = a * std::span<const cplx>(x);
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < n + 1; ++k) s += a(i, k) * x[k];
            CHECK(std::abs(y[i] - s) <= 1e-12);
        }
    }
    CHECK_THROWS_AS(oracle::random_matrix(rng, 2, 3) * oracle::random_matrix(rng, 2, 3), InvalidArgument);
}

TEST_CASE("elementwise helpers") {
    const ComplexMatrix a{{1.0, cplx(0, 2)}, {cplx(0, -2), 3.0}};
    CHECK(hermitian_asymmetry(a) == 0.0);
    CHECK(a.trace() == cplx(4.0));
    CHECK(max_abs(a) == doctest::Approx(3.0));
    CHECK(frobenius_norm(a) == doctest::Approx(std::sqrt(1 + 4 + 4 + 9.0)));
    const ComplexMatrix b{{1.0, cplx(0, 2)}, {cplx(0, 2), 3.0}};
    CHECK(hermitian_asymmetry(b) == doctest::Approx(4.0));
    CHECK(sandwich(std::vector<cplx>{1.0, 0.0}, a, std::vector<cplx>{0.0, 1.0}) == cplx(0, 2));
}

TEST_CASE("Jacobi eigensolver on closed forms") {
    SUBCASE("diagonal input is returned sorted") {
        const std::vector<double> d{3.0, -1.0, 2.0};
        const auto e = eig_hermitian(ComplexMatrix::diagonal(d));
        CHECK(e.values == std::vector<double>{-1.0, 2.0, 3.0});
    }
    SUBCASE("2x2 closed form") {
        // [[a, b], [b*, c]] has eigenvalues (a+c)/2 -+ sqrt(((a-c)/2)^2 + |b|^2)
        const double a = 0.7, c = -0.4;
        const cplx b(0.3, -0.9);
        const auto e = eig_hermitian(ComplexMatrix{{a, b}, {std::conj(b), c}});
        const double m = (a + c) / 2, r = std::sqrt((a - c) * (a - c) / 4 + std::norm(b));
        CHECK(e.values[0] == doctest::Approx(m - r).epsilon(1e-14));
        CHECK(e.values[1] == doctest::Approx(m + r).epsilon(1e-14));
    }
    SUBCASE("N=4 circulant has DFT eigenvalues") {
        const std::vector<cplx> c{2.0, cplx(0.5, 0.25), 0.3, cplx(0.5, -0.25)};
        ComplexMatrix m(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) m(i, j) = c[(j + 4 - i) % 4];
        std::vector<double> expect;
        for (int k = 0; k < 4; ++k) {
            cplx s = 0.0;
            for (int j = 0; j < 4; ++j) s += c[j] * std::polar(1.0, 2 * oracle::pi * j * k / 4);
            expect.push_back(s.real());
        }
        std::sort(expect.begin(), expect.end());
        const auto e = eig_hermitian(m);
        for (int k = 0; k < 4; ++k) CHECK(e.values[k] == doctest::Approx(expect[k]).epsilon(1e-13));
    }
}

TEST_CASE("Jacobi eigensolver residuals on random Hermitian matrices") {
    std::mt19937_64 rng(5);
    for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 16u, 32u}) {
        for (int rep = 0; rep < 5; ++rep) {
            const ComplexMatrix h = oracle::random_hermitian(rng, n);
            const auto e = eig_hermitian(h);
            CHECK(std::is_sorted(e.values.begin(), e.values.end()));
            const double scale = frobenius_norm(h);
            const ComplexMatrix hv = oracle::naive_product(h, e.vectors);
            double res = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k)
                    res = std::max(res, std::abs(hv(i, k) - e.values[k] * e.vectors(i, k)));
            CHECK(res <= 1e-12 * std::max(1.0, scale));
            CHECK(oracle::naive_max_diff(oracle::naive_product(oracle::naive_adjoint(e.vectors), e.vectors),
                                         ComplexMatrix::identity(n)) <= 1e-12);
            double tr = 0.0, sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) tr += h(i, i).real();
            for (double v : e.values) sum += v;
            CHECK(sum == doctest::Approx(tr).epsilon(1e-12).scale(scale));
        }
    }
}

TEST_CASE("eigensolver handles degenerate and rank-deficient spectra") {
    std::mt19937_64 rng(9);
    const ComplexMatrix u = oracle::random_unitary(rng, 6);
    const std::vector<double> d{0.0, 0.0, 0.25, 0.25, 0.25, 0.25};
    const ComplexMatrix h = oracle::naive_product(oracle::naive_product(u, ComplexMatrix::diagonal(d)),
                                                  oracle::naive_adjoint(u));
    const auto e = eig_hermitian(h);
    for (std::size_t k = 0; k < 6; ++k) CHECK(e.values[k] == doctest::Approx(d[k]).scale(1.0).epsilon(1e-13));
}

TEST_CASE("eigensolver rejects non-Hermitian input") {
    CHECK_THROWS_AS(eig_hermitian(ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(eig_hermitian(ComplexMatrix(2, 3)), InvalidArgument);
}

TEST_CASE("unitary distance against a fine phase grid") {
    std::mt19937_64 rng(13);
    for (std::size_t n : {2u, 3u, 5u}) {
        const ComplexMatrix u = oracle::random_unitary(rng, n);
        const ComplexMatrix v = oracle::random_unitary(rng, n);
        const int steps = 200000;
        const double grid = oracle::grid_unitary_distance(u, v, steps);
        const double lib = unitary_distance(u, v);
        CHECK(lib <= grid + 1e-12);
        CHECK(lib >= grid - max_abs(v) * oracle::pi / steps - 1e-12);

        // a global phase is invisible; a small perturbation is bounded by its size
        CHECK(unitary_distance(u, std::polar(1.0, 2.1) * u) <= 1e-14);
        ComplexMatrix w = std::polar(1.0, -0.7) * u;
        w(0, 0) += 1e-6;
        const double d = unitary_distance(u, w);
        CHECK(d <= 1e-6 + 1e-15);
        CHECK(d > 1e-8);
    }
}

TEST_CASE("orthonormalize_columns yields an orthonormal span-preserving basis") {
    std::mt19937_64 rng(17);
    const ComplexMatrix a = oracle::random_matrix(rng, 6, 4);
    const ComplexMatrix q = orthonormalize_columns(a);
    CHECK(oracle::naive_max_diff(oracle::naive_product(oracle::naive_adjoint(q), q), ComplexMatrix::identity(4)) <=
          1e-13);
    // each original column lies in the span: a - Q Q^dagger a = 0
    const ComplexMatrix proj = oracle::naive_product(q, oracle::naive_product(oracle::naive_adjoint(q), a));
    CHECK(oracle::naive_max_diff(proj, a) <= 1e-12);
}
