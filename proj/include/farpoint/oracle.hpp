#pragma once

// Brute-force ground truth. Never consults cut_locus.hpp.

#include <farpoint/canonicalize.hpp>
#include <farpoint/orbit_metric.hpp>
#include <farpoint/surface.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace farpoint::oracle {

struct Resolution {
    std::size_t nx = 512;
    std::size_t ny = 512;
};

// Distance from p sampled at cell centers of the fundamental domain.
// Torus cells live in lattice coordinates (s, t); Klein cells in (x, y).
class DistanceField {
public:
    DistanceField(Surface surface, Resolution res, PlanePoint base = {})
        : surface_(std::move(surface)), res_(res), base_(base) {
        values_.assign(res.nx * res.ny, 0.0);
    }

    Resolution resolution() const { return res_; }
    const Surface& surface() const { return surface_; }
    PlanePoint base() const { return base_; } // lift of the source point

    PlanePoint cell_center(std::size_t i, std::size_t j) const {
        const double s = (static_cast<double>(i) + 0.5) / static_cast<double>(res_.nx);
        const double t = (static_cast<double>(j) + 0.5) / static_cast<double>(res_.ny);
        if (const auto* spec = std::get_if<TorusSpec>(&surface_)) {
            return s * spec->u() + t * spec->v();
        }
        return {s * side_a(surface_), t * side_b(surface_)};
    }
    SurfacePoint sample_point(std::size_t i, std::size_t j) const {
        return SurfacePoint{surface_, cell_center(i, j)};
    }

    double& at(std::size_t i, std::size_t j) { return values_[j * res_.nx + i]; }
    double at(std::size_t i, std::size_t j) const { return values_[j * res_.nx + i]; }

    // Longest diagonal of one grid cell.
    double cell_diagonal() const {
        if (const auto* spec = std::get_if<TorusSpec>(&surface_)) {
            const PlanePoint du = spec->u() / static_cast<double>(res_.nx);
            const PlanePoint dv = spec->v() / static_cast<double>(res_.ny);
            return std::max(norm(du + dv), norm(du - dv));
        }
        return std::hypot(side_a(surface_) / static_cast<double>(res_.nx),
                          side_b(surface_) / static_cast<double>(res_.ny));
    }

    // Periodic 8-neighbour lookup following the surface identifications.
    bool neighbor(std::size_t i, std::size_t j, int di, int dj, std::size_t& oi, std::size_t& oj) const {
        const auto nx = static_cast<std::int64_t>(res_.nx);
        const auto ny = static_cast<std::int64_t>(res_.ny);
        std::int64_t x = static_cast<std::int64_t>(i) + di;
        std::int64_t y = static_cast<std::int64_t>(j) + dj;
        if (is_klein(surface_) && (x < 0 || x >= nx)) {
            // crossing x = 0 or x = a applies the glide, which flips y
            y = ny - 1 - y;
        }
        x = ((x % nx) + nx) % nx;
        y = ((y % ny) + ny) % ny;
        oi = static_cast<std::size_t>(x);
        oj = static_cast<std::size_t>(y);
        return true;
    }

private:
    Surface surface_;
    Resolution res_;
    PlanePoint base_;
    std::vector<double> values_;
};

inline DistanceField distance_field(const Surface& surface, const SurfacePoint& p, Resolution res,
                                    unsigned threads = 0) {
    if (res.nx < 16 || res.ny < 16) {
        throw std::invalid_argument("distance_field: resolution must be at least 16 per axis");
    }
    DistanceField field(surface, res, p.rep);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(res.ny));
    const auto work = [&](unsigned worker) {
        for (std::size_t j = worker; j < res.ny; j += threads) {
            for (std::size_t i = 0; i < res.nx; ++i) {
                field.at(i, j) = std::sqrt(nearest_lift_distance2(surface, p.rep, field.cell_center(i, j)));
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& t : pool) t.join();
    return field;
}

struct OracleFarthest {
    std::vector<SurfacePoint> points; // one representative per cluster, best first
    std::vector<double> point_distances;
    double distance = 0.0;            // refined maximum
    double resolution_bound = 0.0;    // 2 x cell diagonal
};

namespace detail {

// Pattern search on a 9 x 9 stencil: recentre on the best sample, halve the
// window once the centre wins. Ends on the local maximum of d(p, .).
inline PlanePoint climb(const Surface& surface, PlanePoint base, PlanePoint start, double half, double& value) {
    const auto f = [&](PlanePoint x) { return nearest_lift_distance2(surface, base, x); };
    constexpr int k = 4;
    const double stop = 1e-13 * (side_a(surface) + side_b(surface));
    PlanePoint centre = start;
    double best = f(centre);
    for (int iter = 0; iter < 1000 && half > stop; ++iter) {
        PlanePoint arg = centre;
        for (int j = -k; j <= k; ++j) {
            for (int i = -k; i <= k; ++i) {
                const PlanePoint x = centre + PlanePoint{half * i / k, half * j / k};
                const double v = f(x);
                if (v > best) {
                    best = v;
                    arg = x;
                }
            }
        }
        if (arg == centre) half *= 0.5;
        centre = arg;
    }
    value = std::sqrt(best);
    return centre;
}

} // namespace detail

// Grid argmax clusters. A cell is kept when its value is within half a cell
// diagonal of the field maximum: the distance function is 1-Lipschitz, so the
// cell containing any true farthest point always qualifies.
inline OracleFarthest farthest_from_field(const DistanceField& field) {
    const Resolution res = field.resolution();
    const std::size_t total = res.nx * res.ny;
    double best = 0.0;
    for (std::size_t j = 0; j < res.ny; ++j)
        for (std::size_t i = 0; i < res.nx; ++i) best = std::max(best, field.at(i, j));

    const double diag = field.cell_diagonal();
    const double cutoff = best - 0.5 * diag * (1.0 + 1e-9) - tau_dist(field.surface());

    std::vector<std::size_t> parent(total);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    const auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    const auto selected = [&](std::size_t i, std::size_t j) { return field.at(i, j) >= cutoff; };

    for (std::size_t j = 0; j < res.ny; ++j) {
        for (std::size_t i = 0; i < res.nx; ++i) {
            if (!selected(i, j)) continue;
            for (int dj = -1; dj <= 1; ++dj) {
                for (int di = -1; di <= 1; ++di) {
                    if (di == 0 && dj == 0) continue;
                    std::size_t oi = 0;
                    std::size_t oj = 0;
                    field.neighbor(i, j, di, dj, oi, oj);
                    if (!selected(oi, oj)) continue;
                    const std::size_t ra = find(j * res.nx + i);
                    const std::size_t rb = find(oj * res.nx + oi);
                    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
                }
            }
        }
    }

    // Representative: best cell of each cluster (lowest index on ties).
    std::vector<std::size_t> rep_of(total, total);
    std::vector<std::size_t> roots;
    for (std::size_t idx = 0; idx < total; ++idx) {
        const std::size_t i = idx % res.nx;
        const std::size_t j = idx / res.nx;
        if (!selected(i, j)) continue;
        const std::size_t r = find(idx);
        if (rep_of[r] == total) {
            roots.push_back(r);
            rep_of[r] = idx;
        } else {
            const std::size_t cur = rep_of[r];
            if (field.at(i, j) > field.at(cur % res.nx, cur / res.nx)) rep_of[r] = idx;
        }
    }
    // Cells along a gently sloping ridge can pass the cutoff in fragments, so
    // every component climbs to its local maximum before clusters are formed.
    struct Peak {
        PlanePoint at;
        double value;
    };
    const Surface& surface = field.surface();
    std::vector<Peak> peaks;
    for (const auto r : roots) {
        const std::size_t c = rep_of[r];
        double value = 0.0;
        const PlanePoint at = detail::climb(surface, field.base(), field.cell_center(c % res.nx, c / res.nx), 2.0 * diag,
                                            value);
        peaks.push_back({at, value});
    }
    std::stable_sort(peaks.begin(), peaks.end(), [](const Peak& l, const Peak& r) { return l.value > r.value; });

    OracleFarthest out;
    out.distance = peaks.empty() ? best : std::max(best, peaks.front().value);
    out.resolution_bound = 2.0 * diag;
    const double keep = 100.0 * tau_dist(surface);
    for (const auto& peak : peaks) {
        if (peak.value < out.distance - keep) continue; // a lower local maximum
        const SurfacePoint q = wrap(surface, peak.at);
        const bool merged = std::any_of(out.points.begin(), out.points.end(),
                                        [&](const SurfacePoint& w) { return distance(surface, w, q).distance <= diag; });
        if (merged) continue;
        out.points.push_back(q);
        out.point_distances.push_back(peak.value);
    }
    return out;
}

inline OracleFarthest grid_farthest(const Surface& surface, const SurfacePoint& p, Resolution res = {},
                                    unsigned threads = 0) {
    return farthest_from_field(distance_field(surface, p, res, threads));
}

struct Region {
    double x_min, y_min, x_max, y_max;
};

struct VoronoiVertex {
    PlanePoint point;
    int degree = 0;
};

// Voronoi vertices of a finite site set by the empty-circumdisk test over all
// site triples. `tau` <= 0 picks 1e-9 times the extent of the sites.
inline std::vector<VoronoiVertex> voronoi_vertex_oracle(const std::vector<PlanePoint>& sites, Region region,
                                                        double tau = 0.0) {
    if (sites.size() < 3) {
        throw std::invalid_argument("voronoi_vertex_oracle: need at least 3 sites");
    }
    if (tau <= 0.0) {
        double extent = 0.0;
        for (const auto& s : sites)
            for (const auto& t : sites) extent = std::max(extent, dist(s, t));
        tau = 1e-9 * std::max(extent, 1.0);
    }
    std::vector<VoronoiVertex> out;
    const std::size_t n = sites.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                const PlanePoint c = circumcenter(sites[i], sites[j], sites[k]);
                if (!is_finite(c)) continue;
                if (c.x < region.x_min - tau || c.x > region.x_max + tau || c.y < region.y_min - tau ||
                    c.y > region.y_max + tau) {
                    continue;
                }
                const double r = dist(c, sites[i]);
                bool empty = true;
                int degree = 0;
                for (const auto& s : sites) {
                    const double d = dist(c, s);
                    if (d < r - tau) {
                        empty = false;
                        break;
                    }
                    if (d <= r + tau) ++degree;
                }
                if (!empty) continue;
                const bool seen = std::any_of(out.begin(), out.end(),
                                              [&](const VoronoiVertex& w) { return dist(w.point, c) <= tau; });
                if (!seen) out.push_back({c, degree});
            }
        }
    }
    return out;
}

struct RestrictionReport {
    bool passed = true;
    std::size_t samples = 0;
    std::vector<PlanePoint> counterexamples;
    std::vector<PlanePoint> tile; // the four tile vertices used as local sites
};

// Samples x uniformly in the tile (parallelogram o, u, h, v for tori; the kite
// p0, h+, v, h- for Klein bottles) and checks that the nearest tile vertex is
// a nearest lift of p overall.
inline RestrictionReport restriction_check(const Surface& surface, const SurfacePoint& p, std::size_t n_samples,
                                           std::uint64_t seed = 1) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    RestrictionReport report;
    report.samples = n_samples;

    std::vector<PlanePoint> tile;
    std::function<PlanePoint()> draw;
    if (const auto* t = std::get_if<TorusSpec>(&surface)) {
        const PlanePoint o = p.rep;
        const PlanePoint u = t->u();
        const PlanePoint v = t->v();
        tile = {o, o + u, o + u + v, o + v};
        draw = [&, o, u, v] { return o + unit(rng) * u + unit(rng) * v; };
    } else {
        const auto& k = std::get<KleinSpec>(surface);
        const KleinCanonicalPoint canon = klein_canonicalize(k, p);
        const double xi = canon.xi;
        const PlanePoint p0 = canon.frame.to_user({0.0, -xi});
        const PlanePoint hp = canon.frame.to_user({k.a, xi});
        const PlanePoint v = canon.frame.to_user({0.0, k.b - xi});
        const PlanePoint hm = canon.frame.to_user({-k.a, xi});
        tile = {p0, hp, v, hm};
        // two triangles of equal area split by the diagonal p0 -> v
        draw = [&, p0, hp, v, hm] {
            double r1 = unit(rng);
            double r2 = unit(rng);
            if (r1 + r2 > 1.0) {
                r1 = 1.0 - r1;
                r2 = 1.0 - r2;
            }
            const PlanePoint side = unit(rng) < 0.5 ? hp : hm;
            return p0 + r1 * (v - p0) + r2 * (side - p0);
        };
    }
    report.tile = tile;

    PlanePoint centre{};
    for (const auto& w : tile) centre = centre + w / 4.0;
    const double reach = 3.0 * diameter_bound(surface);
    const OrbitSet sites = orbit(surface, p, centre, reach);
    const double tau = tau_dist(surface);

    for (std::size_t s = 0; s < n_samples; ++s) {
        const PlanePoint x = draw();
        double local = std::numeric_limits<double>::infinity();
        for (const auto& w : tile) local = std::min(local, dist(w, x));
        double global = std::numeric_limits<double>::infinity();
        for (const auto& site : sites.points) global = std::min(global, dist(site.point, x));
        if (local > global + tau) {
            report.passed = false;
            report.counterexamples.push_back(x);
        }
    }
    return report;
}

} // namespace farpoint::oracle
