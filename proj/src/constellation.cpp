#include "symqfi/constellation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "symqfi/errors.hpp"

namespace symqfi {

double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }

SymmetrySpec SymmetrySpec::cyclic(int n) {
    if (n < 2) throw InvalidArgument("cyclic symmetry requires N >= 2");
    return {SymmetryKind::cyclic, n};
}

SymmetrySpec SymmetrySpec::reflection() { return {SymmetryKind::reflection_1d, 2}; }
SymmetrySpec SymmetrySpec::rect() { return {SymmetryKind::rect_reflections, 4}; }

std::size_t SymmetrySpec::group_order() const {
    switch (kind) {
        case SymmetryKind::cyclic:
            return static_cast<std::size_t>(order);
        case SymmetryKind::reflection_1d:
            return 2;
        case SymmetryKind::rect_reflections:
            return 4;
    }
    return 0;
}

AbelianGroupSpec SymmetrySpec::group() const {
    switch (kind) {
        case SymmetryKind::cyclic:
            return AbelianGroupSpec({order});
        case SymmetryKind::reflection_1d:
            return AbelianGroupSpec({2});
        case SymmetryKind::rect_reflections:
            return AbelianGroupSpec({2, 2});
    }
    return AbelianGroupSpec({2});
}

std::string SymmetrySpec::describe() const {
    switch (kind) {
        case SymmetryKind::cyclic:
            return "cyclic(" + std::to_string(order) + ")";
        case SymmetryKind::reflection_1d:
            return "reflection_1d";
        case SymmetryKind::rect_reflections:
            return "rect_reflections";
    }
    return "?";
}

Constellation make_pair(double r, double theta) {
    if (!(r >= 0.0)) throw InvalidArgument("make_pair: r must be nonnegative");
    const Point2 a{r * std::cos(theta), r * std::sin(theta)};
    return {{a, {-a.x, -a.y}}, SymmetrySpec::reflection()};
}

Constellation make_rectangle(double x0, double y0) {
    if (!(x0 >= 0.0) || !(y0 >= 0.0)) throw InvalidArgument("make_rectangle: sides must be nonnegative");
    return {{{x0, y0}, {x0, -y0}, {-x0, y0}, {-x0, -y0}}, SymmetrySpec::rect()};
}

static std::vector<Point2> circle_points(int n, double radius, double phase) {
    std::vector<Point2> pts(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double a = phase + 2.0 * std::numbers::pi * k / n;
        pts[static_cast<std::size_t>(k)] = {radius * std::cos(a), radius * std::sin(a)};
    }
    return pts;
}

Constellation make_ring(int n, double r, double phase) {
    if (n < 2) throw InvalidArgument("make_ring: N must be at least 2");
    if (!(r >= 0.0)) throw InvalidArgument("make_ring: r must be nonnegative");
    return {circle_points(n, r, phase), SymmetrySpec::cyclic(n)};
}

DiscretePSF matching_psf(const Constellation& c, double p, double phase) {
    if (!(p > 0.0)) throw InvalidArgument("matching_psf: p must be positive");
    switch (c.symmetry.kind) {
        case SymmetryKind::reflection_1d:
            return {circle_points(2, p, phase)};
        case SymmetryKind::rect_reflections:
            return rect_psf(p, p);
        case SymmetryKind::cyclic:
            return {circle_points(c.symmetry.order, p, phase)};
    }
    return {};
}

DiscretePSF rect_psf(double px, double py) {
    if (!(px > 0.0) || !(py > 0.0)) throw InvalidArgument("rect_psf: momenta must be positive");
    return {{{px, py}, {px, -py}, {-px, py}, {-px, -py}}};
}

Point2 apply_group_element(const SymmetrySpec& spec, std::size_t g, Point2 pt) {
    if (g >= spec.group_order()) {
        std::ostringstream os;
        os << "apply_group_element: element " << g << " out of range for " << spec.describe();
        throw InvalidArgument(os.str());
    }
    switch (spec.kind) {
        case SymmetryKind::cyclic: {
            if (g == 0) return pt;
            const double a = 2.0 * std::numbers::pi * static_cast<double>(g) / spec.order;
            const double c = std::cos(a), s = std::sin(a);
            return {c * pt.x - s * pt.y, s * pt.x + c * pt.y};
        }
        case SymmetryKind::reflection_1d:
            return g == 0 ? pt : Point2{-pt.x, -pt.y};
        case SymmetryKind::rect_reflections:
            return {(g & 2u) ? -pt.x : pt.x, (g & 1u) ? -pt.y : pt.y};
    }
    return pt;
}

std::vector<Point2> apply_group_element(const SymmetrySpec& spec, std::size_t g,
                                        const std::vector<Point2>& pts) {
    std::vector<Point2> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(apply_group_element(spec, g, p));
    return out;
}

SymmetryCheck validate_symmetry(const SymmetrySpec& spec, const std::vector<Point2>& pts) {
    SymmetryCheck check;
    const std::size_t order = spec.group_order();
    check.permutations.assign(order, std::vector<std::size_t>(pts.size()));
    for (std::size_t g = 0; g < order; ++g) {
        std::vector<bool> used(pts.size(), false);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const Point2 moved = apply_group_element(spec, g, pts[i]);
            std::optional<std::size_t> match;
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (used[j]) continue;
                if (std::abs(moved.x - pts[j].x) <= kSymmetryTolerance &&
                    std::abs(moved.y - pts[j].y) <= kSymmetryTolerance) {
                    match = j;
                    break;
                }
            }
            if (!match) {
                check.offending_element = g;
                check.unmatched_point = pts[i];
                std::ostringstream os;
                os << spec.describe() << " element " << g << " maps point " << i << " (" << pts[i].x << ", "
                   << pts[i].y << ") to (" << moved.x << ", " << moved.y << "), which is not in the set";
                check.message = os.str();
                check.permutations.clear();
                return check;
            }
            used[*match] = true;
            check.permutations[g][i] = *match;
        }
    }
    check.ok = true;
    return check;
}

}  // namespace symqfi
