#pragma once

#include <farpoint/surface.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace farpoint {

struct OrbitPoint {
    PlanePoint point;
    DeckElement element;
};

struct OrbitSet {
    PlanePoint center;
    double radius = 0.0;
    std::vector<OrbitPoint> points; // sorted by (distance to center, polar angle)
};

struct DistanceResult {
    double distance = 0.0;
    int n_segments = 0;
    std::vector<PlanePoint> directions; // unit vectors at the source lift; empty when p == q
    bool low_confidence = false;        // another lift lies just outside the multiplicity window
};

inline constexpr std::size_t default_orbit_cap = 1'000'000;

// Upper bound on the distance between any two points of the surface.
inline double diameter_bound(const Surface& surface) {
    return side_a(surface) + side_b(surface);
}

namespace detail {

struct IndexBox {
    std::int64_t a_lo, a_hi; // inclusive
    std::int64_t b_lo, b_hi; // inclusive, torus only
};

inline std::int64_t floor_i(double x) { return static_cast<std::int64_t>(std::floor(x)); }
inline std::int64_t ceil_i(double x) { return static_cast<std::int64_t>(std::ceil(x)); }

// Calls fn(point, element) for every lift of `base` that can lie within
// `radius` of `center`, plus a margin; callers filter by distance.
template <class Fn>
void for_each_lift(const Surface& surface, PlanePoint base, PlanePoint center, double radius,
                   std::size_t cap, Fn&& fn) {
    if (const auto* t = std::get_if<TorusSpec>(&surface)) {
        const PlanePoint u = t->u();
        const PlanePoint v = t->v();
        const double area = std::abs(cross(u, v));
        const double height_u = area / norm(v); // spacing of lattice lines parallel to v
        const double height_v = area / norm(u); // spacing of lattice lines parallel to u
        const PlanePoint c0 = torus_coords(*t, center - base);
        const std::int64_t m_lo = floor_i(c0.x - radius / height_u) - 2;
        const std::int64_t m_hi = ceil_i(c0.x + radius / height_u) + 2;
        const std::int64_t n_lo = floor_i(c0.y - radius / height_v) - 2;
        const std::int64_t n_hi = ceil_i(c0.y + radius / height_v) + 2;
        const double count = static_cast<double>(m_hi - m_lo + 1) * static_cast<double>(n_hi - n_lo + 1);
        if (count > static_cast<double>(cap)) {
            throw GeometryError(ErrorCode::RadiusTooLarge, "orbit enumeration exceeds the point cap");
        }
        for (std::int64_t m = m_lo; m <= m_hi; ++m) {
            for (std::int64_t n = n_lo; n <= n_hi; ++n) {
                fn(base + static_cast<double>(m) * u + static_cast<double>(n) * v, DeckElement{m, n});
            }
        }
        return;
    }
    const auto& k = std::get<KleinSpec>(surface);
    const std::int64_t g_lo = floor_i((center.x - radius - base.x) / k.a) - 2;
    const std::int64_t g_hi = ceil_i((center.x + radius - base.x) / k.a) + 2;
    const std::int64_t per_column = ceil_i(2.0 * radius / k.b) + 5;
    const double count = static_cast<double>(g_hi - g_lo + 1) * static_cast<double>(per_column);
    if (count > static_cast<double>(cap)) {
        throw GeometryError(ErrorCode::RadiusTooLarge, "orbit enumeration exceeds the point cap");
    }
    for (std::int64_t g = g_lo; g <= g_hi; ++g) {
        const double y0 = (g % 2 == 0) ? base.y : -base.y;
        const double x = base.x + static_cast<double>(g) * k.a;
        const std::int64_t n_lo = floor_i((center.y - radius - y0) / k.b) - 2;
        const std::int64_t n_hi = ceil_i((center.y + radius - y0) / k.b) + 2;
        for (std::int64_t n = n_lo; n <= n_hi; ++n) {
            fn(PlanePoint{x, y0 + static_cast<double>(n) * k.b}, DeckElement{g, n});
        }
    }
}

} // namespace detail

// All lifts of p within `radius` of `center`.
inline OrbitSet orbit(const Surface& surface, const SurfacePoint& p, PlanePoint center, double radius,
                      std::size_t cap = default_orbit_cap) {
    OrbitSet out{center, radius, {}};
    const double r2 = radius * radius;
    detail::for_each_lift(surface, p.rep, center, radius, cap, [&](PlanePoint q, DeckElement e) {
        if (dist2(q, center) <= r2) {
            out.points.push_back({q, e});
        }
    });
    std::sort(out.points.begin(), out.points.end(), [&](const OrbitPoint& l, const OrbitPoint& r) {
        const double dl = dist2(l.point, center);
        const double dr = dist2(r.point, center);
        if (dl != dr) return dl < dr;
        const PlanePoint ol = l.point - center;
        const PlanePoint orr = r.point - center;
        return std::atan2(ol.y, ol.x) < std::atan2(orr.y, orr.x);
    });
    return out;
}

// Squared distance from x to the nearest lift of `base`; no allocation.
inline double nearest_lift_distance2(const Surface& surface, PlanePoint base, PlanePoint x) {
    const double radius = diameter_bound(surface);
    double best = std::numeric_limits<double>::infinity();
    detail::for_each_lift(surface, base, x, radius, default_orbit_cap,
                          [&](PlanePoint q, DeckElement) { best = std::min(best, dist2(q, x)); });
    return best;
}

// Intrinsic distance between p and q, with the number of segments realizing it.
inline DistanceResult distance(const Surface& surface, const SurfacePoint& p, const SurfacePoint& q) {
    const double tau = tau_dist(surface);
    const PlanePoint src = p.rep;
    const OrbitSet lifts = orbit(surface, q, src, diameter_bound(surface) + tau);

    DistanceResult result;
    const double dmin = std::sqrt(dist2(lifts.points.front().point, src));
    const double window2 = (dmin + tau) * (dmin + tau);
    const double wide2 = (dmin + 1000.0 * tau) * (dmin + 1000.0 * tau);
    result.distance = dmin;
    for (const auto& lift : lifts.points) {
        const double d2 = dist2(lift.point, src);
        if (d2 <= window2) {
            ++result.n_segments;
            if (dmin > tau) {
                result.directions.push_back((lift.point - src) / std::sqrt(d2));
            }
        } else if (d2 <= wide2) {
            result.low_confidence = true;
        }
    }
    if (dmin <= tau) {
        // p and q coincide: the constant path is the only segment
        result.n_segments = 1;
        result.directions.clear();
    }
    return result;
}

} // namespace farpoint
