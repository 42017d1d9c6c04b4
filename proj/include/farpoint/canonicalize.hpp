#pragma once

#include <farpoint/surface.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

namespace farpoint {

// Row-major 2x2 integer matrix acting on a basis stored as rows:
// reduced_first = m[0][0] u + m[0][1] v, reduced_second = m[1][0] u + m[1][1] v.
using IntMatrix2 = std::array<std::array<std::int64_t, 2>, 2>;

inline std::int64_t determinant(const IntMatrix2& m) {
    return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

struct ReductionResult {
    TorusSpec spec;
    IntMatrix2 change_of_basis{{{1, 0}, {0, 1}}};
    // first: the second reduced vector was negated to bring alpha into (0, pi/2];
    // second: the reduced basis is clockwise, so the isometry onto T_{a,b,alpha}
    // includes a reflection.
    std::pair<bool, bool> sign_flips{false, false};
};

// Lagrange-Gauss reduction of the lattice Zu + Zv to the canonical T_{a,b,alpha}
// with 2 b cos(alpha) <= a <= b.
inline ReductionResult reduce_basis(PlanePoint u, PlanePoint v, Tolerances tol = {}) {
    if (!is_finite(u) || !is_finite(v) || std::abs(cross(u, v)) <= tol.param * norm(u) * norm(v)) {
        throw GeometryError(ErrorCode::DegenerateBasis, "basis vectors are (nearly) collinear");
    }
    PlanePoint first = u;
    PlanePoint second = v;
    IntMatrix2 m{{{1, 0}, {0, 1}}};

    for (int guard = 0; guard < 10000; ++guard) {
        if (norm2(first) > norm2(second) * (1.0 + 1e-12)) {
            std::swap(first, second);
            std::swap(m[0], m[1]);
        }
        const double ratio = dot(first, second) / norm2(first);
        if (std::abs(ratio) <= 0.5 + 1e-12) {
            break;
        }
        const auto q = static_cast<std::int64_t>(std::llround(ratio));
        second = second - static_cast<double>(q) * first;
        m[1][0] -= q * m[0][0];
        m[1][1] -= q * m[0][1];
    }

    ReductionResult result;
    if (dot(first, second) < 0.0) {
        second = -second;
        m[1][0] = -m[1][0];
        m[1][1] = -m[1][1];
        result.sign_flips.first = true;
    }
    result.sign_flips.second = cross(first, second) < 0.0;
    result.change_of_basis = m;

    const double a = norm(first);
    const double b = norm(second);
    const double alpha = std::atan2(std::abs(cross(first, second)), dot(first, second));
    result.spec = make_torus_spec(a, b, alpha, tol);
    return result;
}

// Isometry of the plane normalizing the Klein deck group:
// canonical (x, y) -> (x + x_offset, sign * y + y_offset), with y_offset a
// multiple of b/2 and sign = -1 when `reflect` is set.
struct KleinFrame {
    double x_offset = 0.0;
    double y_offset = 0.0;
    bool reflect = false;

    PlanePoint to_user(PlanePoint c) const {
        return {c.x + x_offset, (reflect ? -c.y : c.y) + y_offset};
    }
    PlanePoint to_canonical(PlanePoint p) const {
        const double y = p.y - y_offset;
        return {p.x - x_offset, reflect ? -y : y};
    }
};

struct KleinCanonicalPoint {
    double xi = 0.0;     // distance to the nearest main geodesic, in [0, b/4]
    double lambda = 0.0; // 2 xi / b, in [0, 1/2]
    KleinFrame frame;    // maps the canonical lift (0, -xi) back to the user's representative
    double x_offset = 0.0;

    PlanePoint canonical_lift() const { return {0.0, -xi}; }
};

// Moves p so that its lift is (0, -xi), xi in [0, b/4].
inline KleinCanonicalPoint klein_canonicalize(const KleinSpec& spec, const SurfacePoint& p) {
    const Surface surface = spec;
    const PlanePoint rep = wrap_point(surface, p.rep);
    const double half = spec.b / 2.0;

    // Nearest main geodesic line y = n b/2; ties (xi = b/4) go to the line below.
    const double below = std::floor(rep.y / half) * half;
    const double above = below + half;
    double line = below;
    if (above - rep.y < rep.y - below) {
        line = above;
    }
    double xi = std::abs(rep.y - line);
    xi = std::clamp(xi, 0.0, spec.b / 4.0);

    KleinCanonicalPoint out;
    out.xi = xi;
    out.lambda = 2.0 * xi / spec.b;
    out.x_offset = rep.x;
    // lift (0, -xi) must land on rep: below the line keeps orientation, above reflects
    out.frame = KleinFrame{rep.x, line, rep.y > line};
    return out;
}

} // namespace farpoint
