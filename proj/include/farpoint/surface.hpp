#pragma once

#include <farpoint/geometry.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <variant>

namespace farpoint {

// Flat torus T_{a,b,alpha}: the plane modulo the lattice spanned by
// u = (a, 0) and v = (b cos(alpha), b sin(alpha)).
struct TorusSpec {
    double a = 1.0;
    double b = 1.0;
    double alpha = std::numbers::pi / 2;
    Tolerances tol{};

    PlanePoint u() const { return {a, 0.0}; }
    PlanePoint v() const { return {b * std::cos(alpha), b * std::sin(alpha)}; }
    PlanePoint h() const { return u() + v(); }
    double tau_param() const { return tol.param * std::max(a, b); }
    double tau_dist() const { return tol.dist * (a + b); }
};

// Flat Klein bottle K_{a,b}: the plane modulo the group generated by
// t(x, y) = (x, y + b) and the glide reflection g(x, y) = (x + a, -y).
// Main geodesics are the images of the lines y = n b / 2.
struct KleinSpec {
    double a = 1.0;
    double b = 1.0;
    Tolerances tol{};

    double tau_param() const { return tol.param * std::max(a, b); }
    double tau_dist() const { return tol.dist * (a + b); }
};

using Surface = std::variant<TorusSpec, KleinSpec>;

inline bool is_torus(const Surface& s) { return std::holds_alternative<TorusSpec>(s); }
inline bool is_klein(const Surface& s) { return std::holds_alternative<KleinSpec>(s); }

inline double side_a(const Surface& s) {
    return std::visit([](const auto& spec) { return spec.a; }, s);
}
inline double side_b(const Surface& s) {
    return std::visit([](const auto& spec) { return spec.b; }, s);
}
inline double tau_dist(const Surface& s) {
    return std::visit([](const auto& spec) { return spec.tau_dist(); }, s);
}
inline const Tolerances& tolerances(const Surface& s) {
    return std::visit([](const auto& spec) -> const Tolerances& { return spec.tol; }, s);
}

// Deck transformation.
//   torus: translation by along_a * u + along_b * v
//   Klein: t^along_b composed after g^along_a, i.e.
//          (x, y) -> (x + along_a * a, (-1)^along_a * y + along_b * b)
struct DeckElement {
    std::int64_t along_a = 0;
    std::int64_t along_b = 0;

    friend bool operator==(const DeckElement&, const DeckElement&) = default;
};

struct SurfacePoint {
    Surface surface;
    PlanePoint rep; // representative in the half-open fundamental domain
};

inline TorusSpec make_torus_spec(double a, double b, double alpha, Tolerances tol = {}) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw GeometryError(ErrorCode::NonPositiveSide, "torus sides must be positive and finite");
    }
    if (!(alpha > 0.0) || alpha > std::numbers::pi / 2 + tol.classify) {
        throw GeometryError(ErrorCode::AngleOutOfRange, "alpha must lie in (0, pi/2]");
    }
    alpha = std::min(alpha, std::numbers::pi / 2);
    TorusSpec spec{a, b, alpha, tol};
    const double tau = spec.tau_param();
    if (a > b + tau || 2.0 * b * std::cos(alpha) > a + tau) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "parameters (a=" << a << ", b=" << b << ", alpha=" << alpha
            << ") violate 2 b cos(alpha) <= a <= b; reduce the lattice basis first (reduce_basis / `farpoint reduce`)";
        throw GeometryError(ErrorCode::NotCanonical, msg.str());
    }
    if (std::abs(cross(spec.u(), spec.v())) <= tau * std::max(a, b)) {
        throw GeometryError(ErrorCode::DegenerateBasis, "torus lattice is degenerate");
    }
    return spec;
}

inline KleinSpec make_klein_spec(double a, double b, Tolerances tol = {}) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw GeometryError(ErrorCode::NonPositiveSide, "Klein bottle sides must be positive and finite");
    }
    return KleinSpec{a, b, tol};
}

inline PlanePoint deck_apply(const Surface& surface, DeckElement g, PlanePoint p) {
    if (const auto* t = std::get_if<TorusSpec>(&surface)) {
        return p + static_cast<double>(g.along_a) * t->u() + static_cast<double>(g.along_b) * t->v();
    }
    const auto& k = std::get<KleinSpec>(surface);
    const double sign = (g.along_a % 2 == 0) ? 1.0 : -1.0;
    return {p.x + static_cast<double>(g.along_a) * k.a, sign * p.y + static_cast<double>(g.along_b) * k.b};
}

// Group product: deck_apply(compose(g, h), p) == deck_apply(g, deck_apply(h, p)).
inline DeckElement compose(const Surface& surface, DeckElement g, DeckElement h) {
    if (is_torus(surface)) {
        return {g.along_a + h.along_a, g.along_b + h.along_b};
    }
    const std::int64_t flip = (g.along_a % 2 == 0) ? 1 : -1;
    return {g.along_a + h.along_a, g.along_b + flip * h.along_b};
}

inline DeckElement inverse(const Surface& surface, DeckElement g) {
    if (is_torus(surface)) {
        return {-g.along_a, -g.along_b};
    }
    const std::int64_t flip = (g.along_a % 2 == 0) ? 1 : -1;
    return {-g.along_a, -flip * g.along_b};
}

namespace detail {

// Splits t into floor part and fractional part in [0, 1); fractions within
// 1e-12 of 1 are folded to 0 so that re-wrapping a representative is stable.
inline double split_unit(double t, std::int64_t& whole) {
    double f = std::floor(t);
    double frac = t - f;
    if (frac >= 1.0 - 1e-12) {
        f += 1.0;
        frac = 0.0;
    }
    whole = static_cast<std::int64_t>(f);
    return std::max(frac, 0.0);
}

// Lattice coordinates (s, t) with p = s u + t v.
inline PlanePoint torus_coords(const TorusSpec& spec, PlanePoint p) {
    const PlanePoint u = spec.u();
    const PlanePoint v = spec.v();
    const double det = cross(u, v);
    return {cross(p, v) / det, cross(u, p) / det};
}

} // namespace detail

// Canonical representative of p in the fundamental domain, together with the
// deck element g such that deck_apply(g, p) == rep.
inline PlanePoint wrap_point(const Surface& surface, PlanePoint p, DeckElement* moved = nullptr) {
    if (const auto* t = std::get_if<TorusSpec>(&surface)) {
        const PlanePoint st = detail::torus_coords(*t, p);
        std::int64_t m = 0;
        std::int64_t n = 0;
        const double s = detail::split_unit(st.x, m);
        const double r = detail::split_unit(st.y, n);
        if (moved) *moved = {-m, -n};
        return s * t->u() + r * t->v();
    }
    const auto& k = std::get<KleinSpec>(surface);
    std::int64_t glides = 0;
    const double x = detail::split_unit(p.x / k.a, glides) * k.a;
    const double y_flipped = (glides % 2 == 0) ? p.y : -p.y;
    std::int64_t lifts = 0;
    const double y = detail::split_unit(y_flipped / k.b, lifts) * k.b;
    // undo `glides` glides, then `lifts` vertical periods
    if (moved) {
        const DeckElement unglide = inverse(surface, DeckElement{glides, 0});
        *moved = compose(surface, DeckElement{0, -lifts}, unglide);
    }
    return {x, y};
}

inline SurfacePoint wrap(const Surface& surface, PlanePoint p) {
    return SurfacePoint{surface, wrap_point(surface, p)};
}

} // namespace farpoint
