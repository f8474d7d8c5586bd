#include <doctest.h>

#include "oracles.hpp"
#include "symqfi/constellation.hpp"
#include "symqfi/errors.hpp"

using namespace symqfi;

namespace {

bool near(Point2 a, Point2 b, double tol = 1e-12) { return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol; }

}  // namespace

TEST_CASE("group actions on points") {
    CHECK(near(apply_group_element(SymmetrySpec::cyclic(4), 1, {1, 0}), {0, 1}));
    CHECK(near(apply_group_element(SymmetrySpec::cyclic(4), 2, {1, 0}), {-1, 0}));
    CHECK(near(apply_group_element(SymmetrySpec::reflection(), 1, {0.3, -0.2}), {-0.3, 0.2}));
    CHECK(near(apply_group_element(SymmetrySpec::rect(), 1, {0.3, 0.2}), {0.3, -0.2}));
    CHECK(near(apply_group_element(SymmetrySpec::rect(), 2, {0.3, 0.2}), {-0.3, 0.2}));
    CHECK(near(apply_group_element(SymmetrySpec::rect(), 3, {0.3, 0.2}), {-0.3, -0.2}));
    CHECK_THROWS_AS(apply_group_element(SymmetrySpec::rect(), 4, {0, 0}), InvalidArgument);
    CHECK_THROWS_AS(SymmetrySpec::cyclic(1), InvalidArgument);
}

TEST_CASE("constructors follow the g-carries-0-to-g convention") {
    const auto check = [](const Constellation& c) {
        for (std::size_t g = 0; g < c.points.size(); ++g)
            CHECK(near(apply_group_element(c.symmetry, g, c.points[0]), c.points[g]));
    };
    check(make_pair(0.7, 0.4));
    check(make_rectangle(0.4, 0.9));
    for (int n = 2; n <= 8; ++n) check(make_ring(n, 1.3, 0.2));
    const auto rect = make_rectangle(0.4, 0.9);
    CHECK(near(rect.points[1], {0.4, -0.9}));
    CHECK(near(rect.points[2], {-0.4, 0.9}));
}

TEST_CASE("matching PSFs share the source symmetry") {
    for (int n = 2; n <= 7; ++n) {
        const auto c = make_ring(n, 0.5, 0.0);
        const auto psf = matching_psf(c, 2.0, 0.3);
        CHECK(psf.momenta.size() == std::size_t(n));
        CHECK(validate_symmetry(c.symmetry, psf.momenta).ok);
        CHECK(std::hypot(psf.momenta[0].x, psf.momenta[0].y) == doctest::Approx(2.0));
    }
    const auto r = rect_psf(1.0, 2.0);
    CHECK(near(r.momenta[3], {-1.0, -2.0}));
    CHECK_THROWS_AS(rect_psf(0.0, 1.0), InvalidArgument);
}

TEST_CASE("validation produces permutation tables") {
    const auto c = make_ring(4, 1.0, 0.0);
    const auto chk = validate_symmetry(c.symmetry, c.points);
    REQUIRE(chk);
    for (std::size_t g = 0; g < 4; ++g)
        for (std::size_t i = 0; i < 4; ++i) CHECK(chk.permutations[g][i] == (i + g) % 4);

    const auto r = make_rectangle(0.2, 0.5);
    const auto rc = validate_symmetry(r.symmetry, r.points);
    REQUIRE(rc);
    // Z2 x Z2 acts by XOR on the index
    for (std::size_t g = 0; g < 4; ++g)
        for (std::size_t i = 0; i < 4; ++i) CHECK(rc.permutations[g][i] == (i ^ g));
}

TEST_CASE("validation reports the offending element") {
    std::vector<Point2> pts = make_ring(4, 1.0, 0.0).points;
    pts[2] = {-1.0, 0.01};
    const auto chk = validate_symmetry(SymmetrySpec::cyclic(4), pts);
    CHECK_FALSE(chk);
    CHECK(chk.offending_element == 1);
    REQUIRE(chk.unmatched_point.has_value());
    CHECK(!chk.message.empty());
}
