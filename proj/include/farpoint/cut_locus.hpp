#pragma once

#include <farpoint/canonicalize.hpp>
#include <farpoint/orbit_metric.hpp>
#include <farpoint/surface.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace farpoint {

// ---------------------------------------------------------------------------
// Analytic data
// ---------------------------------------------------------------------------

struct TorusCutData {
    PlanePoint c1; // circumcenter of (o, u, v), o the lift of p
    PlanePoint c2; // circumcenter of (u, v, h)
    bool degenerate = false; // alpha == pi/2: c1 and c2 are the same point of the torus
};

inline TorusCutData torus_cut_data(const TorusSpec& spec, const SurfacePoint& p) {
    const PlanePoint o = p.rep;
    const PlanePoint u = o + spec.u();
    const PlanePoint v = o + spec.v();
    const PlanePoint h = o + spec.h();
    TorusCutData out;
    out.c1 = circumcenter(o, u, v);
    out.c2 = circumcenter(u, v, h);
    out.degenerate = std::abs(spec.alpha - std::numbers::pi / 2) < spec.tol.classify;
    return out;
}

enum class KleinCase {
    LambdaZero,
    DeltaPositive,
    DeltaZero,
    DeltaNegativeInterior,
    DeltaNegativeHalf,
};

inline const char* to_string(KleinCase c) {
    switch (c) {
    case KleinCase::LambdaZero: return "lambda-zero";
    case KleinCase::DeltaPositive: return "delta-positive";
    case KleinCase::DeltaZero: return "delta-zero";
    case KleinCase::DeltaNegativeInterior: return "delta-negative-interior";
    case KleinCase::DeltaNegativeHalf: return "delta-negative-half";
    }
    return "unknown";
}

// Circumcenters of the kite p0 = (0, -xi), v = (0, b - xi), h = (+-a, xi)
// in the canonical frame, xi = lambda b / 2.
struct KleinCutData {
    double lambda = 0.0;
    double delta = 0.0;                 // a^2 - b^2 lambda (1 - lambda)
    std::optional<double> lambda0;      // root of delta, only for b >= 2a
    PlanePoint p0, v, h_plus, h_minus;  // kite vertices
    PlanePoint c_plus, c_minus;         // circumcenters of (p0, v, h+-)
    std::optional<PlanePoint> c0;       // circumcenter of (p0, h+, h-), undefined at lambda = 0
    PlanePoint c1;                      // circumcenter of (v, h-, h+)
    KleinCase case_label = KleinCase::LambdaZero;
};

inline std::optional<double> klein_lambda0(const KleinSpec& spec) {
    const double disc = 0.25 - (spec.a * spec.a) / (spec.b * spec.b);
    if (spec.b < 2.0 * spec.a - spec.tau_param()) {
        return std::nullopt;
    }
    return 0.5 - std::sqrt(std::max(disc, 0.0));
}

inline KleinCutData klein_cut_data(const KleinSpec& spec, double lambda) {
    const double tau_lambda = spec.tol.classify;
    if (!(lambda >= -tau_lambda && lambda <= 0.5 + tau_lambda)) {
        throw GeometryError(ErrorCode::LambdaOutOfRange, "lambda must lie in [0, 1/2]");
    }
    lambda = std::clamp(lambda, 0.0, 0.5);
    const double a = spec.a;
    const double b = spec.b;
    const double mu = 1.0 - lambda;
    const double xi = lambda * b / 2.0;

    KleinCutData out;
    out.lambda = lambda;
    out.delta = a * a - b * b * lambda * mu;
    out.lambda0 = klein_lambda0(spec);
    out.p0 = {0.0, -xi};
    out.v = {0.0, b - xi};
    out.h_plus = {a, xi};
    out.h_minus = {-a, xi};
    out.c_plus = {out.delta / (2.0 * a), b * mu / 2.0};
    out.c_minus = {-out.delta / (2.0 * a), b * mu / 2.0};
    if (lambda > 0.0) {
        out.c0 = PlanePoint{0.0, a * a / (2.0 * b * lambda)};
    }
    out.c1 = {0.0, (b * b * mu * mu - out.delta) / (2.0 * b * mu)};

    const double tau_delta = spec.tol.classify * std::max(a * a, b * b);
    if (lambda < tau_lambda) {
        out.case_label = KleinCase::LambdaZero;
    } else if (out.delta > tau_delta) {
        out.case_label = KleinCase::DeltaPositive;
    } else if (out.delta >= -tau_delta) {
        out.case_label = KleinCase::DeltaZero;
    } else if (lambda < 0.5 - tau_lambda) {
        out.case_label = KleinCase::DeltaNegativeInterior;
    } else {
        out.case_label = KleinCase::DeltaNegativeHalf;
    }
    return out;
}

// d(p0, c0)^2 - d(v, c1)^2 in closed form.
inline double klein_vertex_gap(const KleinSpec& spec, double lambda) {
    const double a2 = spec.a * spec.a;
    const double b2 = spec.b * spec.b;
    const double mu = 1.0 - lambda;
    const double delta = a2 - b2 * lambda * mu;
    return (1.0 - 2.0 * lambda) * delta * (a2 + b2 * mu * lambda) / (4.0 * b2 * mu * mu * lambda * lambda);
}

// ---------------------------------------------------------------------------
// Voronoi cell of the base lift and the cut locus graph
// ---------------------------------------------------------------------------

// Dirichlet domain of p's lift: the Voronoi cell of p.rep among all lifts of p.
// Edge i runs from corners[i] to corners[i+1] and bisects p.rep and the lift
// deck_apply(neighbors[i], p.rep).
struct VoronoiCell {
    PlanePoint site;
    std::vector<PlanePoint> corners; // counter-clockwise
    std::vector<DeckElement> neighbors;
};

inline VoronoiCell voronoi_cell(const Surface& surface, const SurfacePoint& p) {
    const double reach = diameter_bound(surface);
    const double tau = tau_dist(surface);
    const PlanePoint site = p.rep;

    // Work relative to the site. The cell lies within `reach` of the site, so
    // lifts beyond 4 * reach cannot clip the starting box.
    struct Corner {
        PlanePoint at;
        std::ptrdiff_t edge; // -1: starting box
    };
    const double box = 2.0 * reach;
    std::vector<Corner> poly{{{-box, -box}, -1}, {{box, -box}, -1}, {{box, box}, -1}, {{-box, box}, -1}};

    const OrbitSet lifts = orbit(surface, p, site, 4.0 * reach);
    std::vector<DeckElement> labels;
    for (const auto& lift : lifts.points) {
        const PlanePoint s = lift.point - site;
        const double s2 = norm2(s);
        if (s2 <= tau * tau) continue;
        const auto label = static_cast<std::ptrdiff_t>(labels.size());
        labels.push_back(lift.element);

        const auto side = [&](PlanePoint x) { return dot(s, x) - 0.5 * s2; };
        std::vector<Corner> next;
        next.reserve(poly.size() + 2);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const Corner& cur = poly[i];
            const Corner& nxt = poly[(i + 1) % poly.size()];
            const double fc = side(cur.at);
            const double fn = side(nxt.at);
            if (fc <= 0.0) {
                next.push_back(cur);
                if (fn > 0.0) {
                    const double t = fc / (fc - fn);
                    next.push_back({cur.at + t * (nxt.at - cur.at), label});
                }
            } else if (fn <= 0.0) {
                const double t = fc / (fc - fn);
                next.push_back({cur.at + t * (nxt.at - cur.at), cur.edge});
            }
        }
        poly = std::move(next);
    }

    // Merge corners closer than tau (drops zero-length edges).
    bool changed = true;
    while (changed && poly.size() > 3) {
        changed = false;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const std::size_t j = (i + 1) % poly.size();
            if (dist(poly[i].at, poly[j].at) < tau) {
                poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }

    VoronoiCell cell;
    cell.site = site;
    for (const auto& c : poly) {
        if (c.edge < 0) {
            throw std::logic_error("voronoi_cell: starting box was not fully clipped");
        }
        cell.corners.push_back(site + c.at);
        cell.neighbors.push_back(labels[static_cast<std::size_t>(c.edge)]);
    }
    return cell;
}

struct CutLocusVertex {
    SurfacePoint point;
    int degree = 0;
    double distance_from_p = 0.0;
};

struct CutLocusEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    double length = 0.0;
};

struct CutLocusGraph {
    std::vector<CutLocusVertex> vertices;
    std::vector<CutLocusEdge> edges;

    int euler_characteristic() const {
        return static_cast<int>(vertices.size()) - static_cast<int>(edges.size());
    }
    int degree_sum() const {
        int s = 0;
        for (const auto& v : vertices) s += v.degree;
        return s;
    }
};

// C(p) as the image of the boundary of p's Voronoi cell. Corners of the cell
// that are lifts of the same surface point form one vertex whose degree is the
// number of such corners; the two sides of the cell swapped by a deck element
// and its inverse form one edge.
inline CutLocusGraph cut_locus(const Surface& surface, const SurfacePoint& p) {
    const VoronoiCell cell = voronoi_cell(surface, p);
    const std::size_t n = cell.corners.size();
    const double tau = tau_dist(surface);

    std::vector<SurfacePoint> wrapped;
    wrapped.reserve(n);
    for (const auto& c : cell.corners) wrapped.push_back(wrap(surface, c));

    std::vector<std::size_t> cls(n, n);
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < reps.size(); ++r) {
            if (distance(surface, wrapped[reps[r]], wrapped[i]).distance <= 10.0 * tau) {
                cls[i] = r;
                break;
            }
        }
        if (cls[i] == n) {
            cls[i] = reps.size();
            reps.push_back(i);
        }
    }

    std::vector<CutLocusVertex> vertices(reps.size());
    for (std::size_t r = 0; r < reps.size(); ++r) {
        vertices[r].point = wrapped[reps[r]];
        vertices[r].distance_from_p = dist(cell.corners[reps[r]], cell.site);
    }
    for (std::size_t i = 0; i < n; ++i) ++vertices[cls[i]].degree;

    // Deterministic order: farthest first, then by representative coordinates.
    std::vector<std::size_t> order(reps.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        const auto& vl = vertices[l];
        const auto& vr = vertices[r];
        if (std::abs(vl.distance_from_p - vr.distance_from_p) > tau) {
            return vl.distance_from_p > vr.distance_from_p;
        }
        if (vl.point.rep.x != vr.point.rep.x) return vl.point.rep.x < vr.point.rep.x;
        return vl.point.rep.y < vr.point.rep.y;
    });
    std::vector<std::size_t> rank(reps.size());
    CutLocusGraph graph;
    for (std::size_t k = 0; k < order.size(); ++k) {
        rank[order[k]] = k;
        graph.vertices.push_back(vertices[order[k]]);
    }

    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        const DeckElement partner = inverse(surface, cell.neighbors[i]);
        std::size_t j = n;
        for (std::size_t k = 0; k < n; ++k) {
            if (k != i && !used[k] && cell.neighbors[k] == partner) {
                j = k;
                break;
            }
        }
        if (j == n) {
            throw std::logic_error("cut_locus: unpaired Voronoi cell edge");
        }
        used[i] = used[j] = true;
        std::size_t from = rank[cls[i]];
        std::size_t to = rank[cls[(i + 1) % n]];
        if (from > to) std::swap(from, to);
        graph.edges.push_back({from, to, dist(cell.corners[i], cell.corners[(i + 1) % n])});
    }
    std::sort(graph.edges.begin(), graph.edges.end(), [](const CutLocusEdge& l, const CutLocusEdge& r) {
        if (l.from != r.from) return l.from < r.from;
        if (l.to != r.to) return l.to < r.to;
        return l.length < r.length;
    });
    return graph;
}

// ---------------------------------------------------------------------------
// Farthest points
// ---------------------------------------------------------------------------

struct FarthestPoint {
    SurfacePoint point;  // wrapped, in the user's coordinates
    PlanePoint lift;     // plane lift: torus relative to p.rep, Klein in the canonical frame
    int n_segments = 0;
    double distance = 0.0;
};

struct FarthestReport {
    std::vector<FarthestPoint> points;
    std::string case_label;
    double radius = 0.0;
    std::optional<KleinCutData> klein; // raw lambda / Delta for Klein bottles
};

inline FarthestReport torus_farthest(const TorusSpec& spec, const SurfacePoint& p) {
    const Surface surface = spec;
    const TorusCutData data = torus_cut_data(spec, p);
    FarthestReport report;
    report.radius = dist(data.c1, p.rep);
    if (data.degenerate) {
        report.case_label = "rectangular";
        report.points.push_back({wrap(surface, data.c1), data.c1 - p.rep, 4, report.radius});
    } else {
        report.case_label = "oblique";
        report.points.push_back({wrap(surface, data.c1), data.c1 - p.rep, 3, report.radius});
        report.points.push_back({wrap(surface, data.c2), data.c2 - p.rep, 3, dist(data.c2, p.rep + spec.u())});
    }
    return report;
}

inline FarthestReport klein_farthest(const KleinSpec& spec, const SurfacePoint& p) {
    const Surface surface = spec;
    const KleinCanonicalPoint canon = klein_canonicalize(spec, p);
    const KleinCutData data = klein_cut_data(spec, canon.lambda);

    FarthestReport report;
    report.case_label = to_string(data.case_label);
    const auto add = [&](PlanePoint c, int segments, double d) {
        report.points.push_back({wrap(surface, canon.frame.to_user(c)), c, segments, d});
    };
    switch (data.case_label) {
    case KleinCase::LambdaZero: {
        const PlanePoint centre = data.p0 + PlanePoint{spec.a / 2.0, spec.b / 2.0};
        add(centre, 4, dist(centre, data.p0));
        break;
    }
    case KleinCase::DeltaPositive:
        add(data.c_plus, 3, dist(data.c_plus, data.p0));
        add(data.c_minus, 3, dist(data.c_minus, data.p0));
        break;
    case KleinCase::DeltaZero:
        add(*data.c0, 4, dist(*data.c0, data.p0));
        break;
    case KleinCase::DeltaNegativeInterior:
        add(data.c1, 3, dist(data.c1, data.v));
        break;
    case KleinCase::DeltaNegativeHalf:
        add(*data.c0, 3, dist(*data.c0, data.p0));
        add(data.c1, 3, dist(data.c1, data.v));
        break;
    }
    report.radius = 0.0;
    for (const auto& f : report.points) report.radius = std::max(report.radius, f.distance);
    report.klein = data;
    return report;
}

inline FarthestReport farthest_points(const Surface& surface, const SurfacePoint& p) {
    if (const auto* t = std::get_if<TorusSpec>(&surface)) {
        return torus_farthest(*t, p);
    }
    return klein_farthest(std::get<KleinSpec>(surface), p);
}

} // namespace farpoint
