#pragma once

// Test-only ground truth built from surface.hpp alone: deck elements are
// enumerated over a fixed, generous index box instead of the library's
// radius-derived bounds.

#include <farpoint/surface.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace farpoint::brute {

struct BruteLift {
    PlanePoint point;
    DeckElement element;
};

inline std::vector<BruteLift> brute_lifts(const Surface& s, PlanePoint base, std::int64_t bound) {
    std::vector<BruteLift> out;
    for (std::int64_t i = -bound; i <= bound; ++i)
        for (std::int64_t j = -bound; j <= bound; ++j) out.push_back({deck_apply(s, {i, j}, base), {i, j}});
    return out;
}

// Index bound large enough to cover every lift within `radius` of a point of
// the fundamental domain, for the side lengths used in the tests.
inline std::int64_t brute_bound(const Surface& s, double radius) {
    const double a = side_a(s);
    const double b = side_b(s);
    double h = std::min(a, b);
    if (const auto* t = std::get_if<TorusSpec>(&s)) h = std::abs(cross(t->u(), t->v())) / std::max(a, b);
    return static_cast<std::int64_t>(std::ceil((radius + a + b) / h)) + 3;
}

inline double brute_distance(const Surface& s, PlanePoint p, PlanePoint q) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& l : brute_lifts(s, q, brute_bound(s, side_a(s) + side_b(s))))
        best = std::min(best, dist(l.point, p));
    return best;
}

inline int brute_segments(const Surface& s, PlanePoint p, PlanePoint q, double tol) {
    const double d = brute_distance(s, p, q);
    int n = 0;
    for (const auto& l : brute_lifts(s, q, brute_bound(s, side_a(s) + side_b(s))))
        if (dist(l.point, p) <= d + tol) ++n;
    return n;
}

// Circumcenter by Cramer's rule on the two perpendicular-bisector equations.
inline PlanePoint cramer_circumcenter(PlanePoint a, PlanePoint b, PlanePoint c) {
    const double a11 = 2 * (b.x - a.x), a12 = 2 * (b.y - a.y), r1 = norm2(b) - norm2(a);
    const double a21 = 2 * (c.x - a.x), a22 = 2 * (c.y - a.y), r2 = norm2(c) - norm2(a);
    const double det = a11 * a22 - a12 * a21;
    return {(r1 * a22 - a12 * r2) / det, (a11 * r2 - r1 * a21) / det};
}

// Random canonical torus: a = 1 scaled, b/a in [1, max_ratio], alpha in
// [arccos(a / 2b), alpha_max].
inline TorusSpec random_torus(std::mt19937_64& rng, double max_ratio = 2.5, double alpha_max = 1.5707963267948966) {
    std::uniform_real_distribution<double> scale(0.5, 2.0);
    std::uniform_real_distribution<double> ratio(1.0, max_ratio);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double a = scale(rng);
    const double b = a * ratio(rng);
    const double lo = std::acos(a / (2.0 * b));
    const double alpha = lo + unit(rng) * (alpha_max - lo);
    return make_torus_spec(a, b, alpha);
}

inline PlanePoint random_plane_point(std::mt19937_64& rng, double extent) {
    std::uniform_real_distribution<double> u(-extent, extent);
    return {u(rng), u(rng)};
}

} // namespace farpoint::brute
