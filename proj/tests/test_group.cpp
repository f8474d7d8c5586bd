#include <doctest.h>

#include "oracles.hpp"
#include "symqfi/errors.hpp"
#include "symqfi/group.hpp"

using namespace symqfi;

TEST_CASE("mixed-radix indexing, multiplication and inverses") {
    const AbelianGroupSpec g({2, 3});
    CHECK(g.order() == 6);
    CHECK(g.digits(5) == std::vector<int>{1, 2});
    CHECK(g.index({1, 0}) == 3);
    for (std::size_t a = 0; a < 6; ++a) {
        CHECK(g.index(g.digits(a)) == a);
        CHECK(g.multiply(a, g.inverse(a)) == 0);
        for (std::size_t b = 0; b < 6; ++b) {
            CHECK(g.multiply(a, b) == g.multiply(b, a));
            const auto da = g.digits(a), db = g.digits(b);
            CHECK(g.multiply(a, b) == g.index({(da[0] + db[0]) % 2, (da[1] + db[1]) % 3}));
        }
    }
    CHECK_THROWS_AS(AbelianGroupSpec({}), InvalidArgument);
    CHECK_THROWS_AS(AbelianGroupSpec({0}), InvalidArgument);
}

TEST_CASE("cyclic characters are the DFT phases") {
    const int n = 5;
    const CharacterTable chi = characters(AbelianGroupSpec({n}));
    for (int l = 0; l < n; ++l)
        for (int g = 0; g < n; ++g)
            CHECK(std::abs(chi(l, g) - std::polar(1.0, 2 * oracle::pi * l * g / n)) <= 1e-15);
}

TEST_CASE("characters are homomorphisms and orthogonal") {
    for (const auto& f : {std::vector<int>{2}, std::vector<int>{4}, std::vector<int>{2, 2}, std::vector<int>{3, 4}}) {
        const AbelianGroupSpec g(f);
        const CharacterTable chi = characters(g);
        const std::size_t n = g.order();
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    CHECK(std::abs(chi(l, g.multiply(a, b)) - chi(l, a) * chi(l, b)) <= 1e-13);
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t m = 0; m < n; ++m) {
                cplx s = 0.0;
                for (std::size_t a = 0; a < n; ++a) s += std::conj(chi(l, a)) * chi(m, a);
                CHECK(std::abs(s - (l == m ? double(n) : 0.0)) <= 1e-12);
            }
    }
}

TEST_CASE("group Fourier transform") {
    SUBCASE("Z2 is the real Hadamard") {
        const ComplexMatrix u = qft_matrix(AbelianGroupSpec({2}));
        const double h = 1 / std::sqrt(2.0);
        CHECK(oracle::naive_max_diff(u, ComplexMatrix{{h, h}, {h, -h}}) <= 1e-15);
    }
    SUBCASE("Z2 x Z2 is the two-fold Hadamard tensor product") {
        const ComplexMatrix u = qft_matrix(AbelianGroupSpec({2, 2}));
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                const int sign = __builtin_popcount(a & b) % 2 ? -1 : 1;
                CHECK(std::abs(u(a, b) - 0.5 * sign) <= 1e-15);
            }
    }
    SUBCASE("Z_N uses the inverse element") {
        const int n = 6;
        const ComplexMatrix u = qft_matrix(AbelianGroupSpec({n}));
        for (int l = 0; l < n; ++l)
            for (int g = 0; g < n; ++g)
                CHECK(std::abs(u(l, g) - std::polar(1 / std::sqrt(double(n)), -2 * oracle::pi * l * g / n)) <= 1e-14);
        CHECK(unitarity_residual(u) <= 1e-14);
    }
}
