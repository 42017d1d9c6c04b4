#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace farpoint {

// A point (or vector) of the Euclidean plane covering the surface.
struct PlanePoint {
    double x = 0.0;
    double y = 0.0;

    friend PlanePoint operator+(PlanePoint p, PlanePoint q) { return {p.x + q.x, p.y + q.y}; }
    friend PlanePoint operator-(PlanePoint p, PlanePoint q) { return {p.x - q.x, p.y - q.y}; }
    friend PlanePoint operator-(PlanePoint p) { return {-p.x, -p.y}; }
    friend PlanePoint operator*(double s, PlanePoint p) { return {s * p.x, s * p.y}; }
    friend PlanePoint operator*(PlanePoint p, double s) { return {s * p.x, s * p.y}; }
    friend PlanePoint operator/(PlanePoint p, double s) { return {p.x / s, p.y / s}; }
    friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

inline double dot(PlanePoint p, PlanePoint q) { return p.x * q.x + p.y * q.y; }
inline double cross(PlanePoint p, PlanePoint q) { return p.x * q.y - p.y * q.x; }
inline double norm2(PlanePoint p) { return dot(p, p); }
inline double norm(PlanePoint p) { return std::hypot(p.x, p.y); }
inline double dist2(PlanePoint p, PlanePoint q) { return norm2(p - q); }
inline double dist(PlanePoint p, PlanePoint q) { return norm(p - q); }
inline bool is_finite(PlanePoint p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Center of the circle through a, b, c. Collinear input yields non-finite coordinates.
inline PlanePoint circumcenter(PlanePoint a, PlanePoint b, PlanePoint c) {
    const PlanePoint ab = b - a;
    const PlanePoint ac = c - a;
    const double d = 2.0 * cross(ab, ac);
    const double ab2 = norm2(ab);
    const double ac2 = norm2(ac);
    return {a.x + (ac.y * ab2 - ab.y * ac2) / d, a.y + (ab.x * ac2 - ac.x * ab2) / d};
}

enum class ErrorCode {
    NonPositiveSide,
    AngleOutOfRange,
    NotCanonical,
    DegenerateBasis,
    LambdaOutOfRange,
    RadiusTooLarge,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NonPositiveSide: return "NonPositiveSide";
    case ErrorCode::AngleOutOfRange: return "AngleOutOfRange";
    case ErrorCode::NotCanonical: return "NotCanonical";
    case ErrorCode::DegenerateBasis: return "DegenerateBasis";
    case ErrorCode::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorCode::RadiusTooLarge: return "RadiusTooLarge";
    }
    return "Unknown";
}

class GeometryError : public std::runtime_error {
public:
    GeometryError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Relative tolerance factors. Absolute tolerances are obtained by scaling
// with the surface's side lengths (see TorusSpec/KleinSpec accessors).
struct Tolerances {
    double param = 1e-9;     // spec validation, scaled by max(a, b)
    double dist = 1e-9;      // metric comparisons, scaled by a + b
    double classify = 1e-12; // case boundaries (Delta scaled by max(a^2, b^2); lambda and angle raw)
};

} // namespace farpoint
