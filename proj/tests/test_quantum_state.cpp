#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "symqfi/errors.hpp"
#include "symqfi/quantum_state.hpp"

using namespace symqfi;

TEST_CASE("source states are normalized plane waves") {
    const DiscretePSF psf{{{1.0, 0.0}, {0.0, 2.0}, {-1.0, 1.0}}};
    const PureState s = source_state(psf, {0.3, -0.4});
    CHECK(s.dim() == 3);
    double n = 0.0;
    for (auto a : s.amplitudes) n += std::norm(a);
    CHECK(n == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(s.amplitudes[1] - std::polar(1 / std::sqrt(3.0), 0.8)) <= 1e-15);
}

TEST_CASE("density matrix matches the entrywise formula") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<Point2> src(1 + rep % 4), mom(2 + rep % 5);
        for (auto& p : src) p = {u(rng), u(rng)};
        for (auto& p : mom) p = {u(rng), u(rng)};
        const DensityMatrix rho = density_matrix(src, DiscretePSF{mom});
        CHECK(oracle::naive_max_diff(rho.matrix(), oracle::density(src, mom)) <= 1e-14);
        CHECK(hermitian_asymmetry(rho.matrix()) == 0.0);
        CHECK(std::abs(rho.matrix().trace() - 1.0) <= 1e-14);
    }
}

TEST_CASE("pair state has the closed-form entries") {
    // rho = [[1/2, cos(2pr)/2], [cos(2pr)/2, 1/2]] for the on-axis pair
    const double p = 1.3, r = 0.4;
    const auto c = make_pair(r, 0.0);
    const DensityMatrix rho = density_matrix(c, matching_psf(c, p, 0.0));
    CHECK(std::abs(rho.matrix()(0, 1) - 0.5 * std::cos(2 * p * r)) <= 1e-15);
    CHECK(std::abs(rho.matrix()(0, 0) - 0.5) <= 1e-15);
}

TEST_CASE("density matrix construction validates its input") {
    CHECK_THROWS_AS(DensityMatrix(ComplexMatrix{{0.5, 1.0}, {0.0, 0.5}}), InvalidArgument);
    CHECK_THROWS_AS(DensityMatrix(ComplexMatrix{{0.5, 0.0}, {0.0, 0.6}}), InvalidArgument);
    CHECK_THROWS_AS(density_matrix(std::vector<Point2>{}, DiscretePSF{{{1, 0}}}), InvalidArgument);
    CHECK_THROWS_AS(source_state(DiscretePSF{}, {0, 0}), InvalidArgument);
}

TEST_CASE("permutation matrices and overlaps") {
    const std::vector<std::size_t> perm{2, 0, 1};
    const ComplexMatrix p = permutation_matrix(perm);
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t j = 0; j < 3; ++j) CHECK(p(j, k) == cplx(j == perm[k] ? 1.0 : 0.0));
    const PureState a{{1.0, 0.0}}, b{{cplx(0, 1) / std::sqrt(2.0), 1 / std::sqrt(2.0)}};
    CHECK(std::abs(overlap(a, b) - cplx(0, 1) / std::sqrt(2.0)) <= 1e-15);
    CHECK_THROWS_AS(permutation_matrix(std::vector<std::size_t>{0, 0}), InvalidArgument);
}
