#pragma once

// Source constellations, delta-comb momentum PSFs and the planar symmetry
// actions relating them.
//
// Index convention: every constructor orders its points so that the group
// element g carries point 0 onto point g. Matching PSFs use the same order,
// so source index, momentum index and group element index coincide.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "symqfi/group.hpp"

namespace symqfi {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

double dot(Point2 a, Point2 b);

enum class SymmetryKind {
    cyclic,           // Z_N acting by rotation through 2*pi*g/N
    reflection_1d,    // Z_2 acting by point inversion (x, y) -> (-x, -y)
    rect_reflections  // Z_2 x Z_2; element g = 2*gx + gy flips x (gx) and y (gy)
};

struct SymmetrySpec {
    SymmetryKind kind = SymmetryKind::reflection_1d;
    int order = 2;  // N for cyclic; implied otherwise

    static SymmetrySpec cyclic(int n);
    static SymmetrySpec reflection();
    static SymmetrySpec rect();

    std::size_t group_order() const;
    AbelianGroupSpec group() const;
    std::string describe() const;
};

struct Constellation {
    std::vector<Point2> points;
    SymmetrySpec symmetry;
};

struct DiscretePSF {
    std::vector<Point2> momenta;
};

inline constexpr double kSymmetryTolerance = 1e-9;

/// Two sources at +-(r cos theta, r sin theta).
Constellation make_pair(double r, double theta);
/// Corners (+-x0, +-y0) ordered (x0,y0), (x0,-y0), (-x0,y0), (-x0,-y0).
Constellation make_rectangle(double x0, double y0);
/// N sources at radius r and angles phase + 2*pi*n/N.
Constellation make_ring(int n, double r, double phase);

/// Momenta with the constellation's symmetry and point count. The phase
/// rotates pair and ring momenta; rectangle momenta stay axis-aligned at
/// (+-p, +-p) (use rect_psf for unequal sides).
DiscretePSF matching_psf(const Constellation& c, double p, double phase);
DiscretePSF rect_psf(double px, double py);

Point2 apply_group_element(const SymmetrySpec& spec, std::size_t g, Point2 pt);
std::vector<Point2> apply_group_element(const SymmetrySpec& spec, std::size_t g,
                                        const std::vector<Point2>& pts);

// perm[g][i] = j such that g . pts[i] == pts[j].
using PermutationTable = std::vector<std::vector<std::size_t>>;

struct SymmetryCheck {
    bool ok = false;
    PermutationTable permutations;
    std::size_t offending_element = 0;
    std::optional<Point2> unmatched_point;
    std::string message;

    explicit operator bool() const { return ok; }
};

SymmetryCheck validate_symmetry(const SymmetrySpec& spec, const std::vector<Point2>& pts);

}  // namespace symqfi
