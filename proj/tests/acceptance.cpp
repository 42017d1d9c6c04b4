// Acceptance suite: one PASS/FAIL line per criterion.

#include <farpoint/farpoint.hpp>

#include "brute.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace farpoint;

namespace {

constexpr double pi = std::numbers::pi;
constexpr oracle::Resolution grid512{512, 512};

struct Outcome {
    bool ok = true;
    std::string detail;
    std::vector<std::string> failures;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (failures.size() < 5) failures.push_back(what);
        }
    }
};

// Graphs collected by criteria 1-3 for criterion 7.
struct GraphCase {
    Surface surface;
    SurfacePoint p;
    CutLocusGraph graph;
    FarthestReport report;
};
std::vector<GraphCase> collected;

bool same_point(const Surface& s, const SurfacePoint& x, const SurfacePoint& y, double tol) {
    return distance(s, x, y).distance <= tol;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// #F_p and segment count straight from the classification theorem for flat
// Klein bottles; written independently of the library's case labels.
std::pair<std::size_t, int> klein_expected(double a, double b, double lambda) {
    const auto eq = [](double x, double y) { return std::abs(x - y) <= 1e-12; };
    if (eq(lambda, 0)) return {1, 4};
    if (b < 2 * a && !eq(b, 2 * a)) return {2, 3};
    if (eq(b, 2 * a)) return eq(lambda, 0.5) ? std::pair<std::size_t, int>{1, 4} : std::pair<std::size_t, int>{2, 3};
    const double lambda0 = 0.5 - std::sqrt(0.25 - a * a / (b * b));
    if (eq(lambda, lambda0)) return {1, 4};
    if (lambda < lambda0) return {2, 3};
    if (eq(lambda, 0.5)) return {2, 3};
    return {1, 3};
}

Outcome square_torus() {
    Outcome out;
    std::mt19937_64 rng(101);
    const Surface s = make_torus_spec(1, 1, pi / 2);
    for (int i = 0; i < 50; ++i) {
        const auto p = wrap(s, brute::random_plane_point(rng, 5));
        const auto r = farthest_points(s, p);
        out.require(r.points.size() == 1, "expected one farthest point");
        if (r.points.size() != 1) continue;
        out.require(r.points[0].n_segments == 4, "expected 4 segments");
        out.require(std::abs(r.points[0].distance - std::sqrt(0.5)) <= 1e-9, "distance != sqrt(2)/2");
        const auto centre = wrap(s, p.rep + PlanePoint{0.5, 0.5});
        out.require(same_point(s, r.points[0].point, centre, 1e-9), "farthest point is not the translated tile centre");
        collected.push_back({s, p, cut_locus(s, p), r});
    }
    out.detail = "50 base points";
    return out;
}

Outcome torus_sweep() {
    Outcome out;
    std::mt19937_64 rng(202);
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    while (accepted < 200) {
        const TorusSpec t = brute::random_torus(rng, 2.5, pi / 2 - 1e-3);
        const Surface s = t;
        const auto p = wrap(s, brute::random_plane_point(rng, 3));
        const auto r = farthest_points(s, p);
        // Oracle sweeps need distinct farthest points at least min(a, b)/4 apart.
        if (r.points.size() == 2 && distance(s, r.points[0].point, r.points[1].point).distance < std::min(t.a, t.b) / 4) {
            ++rejected;
            continue;
        }
        ++accepted;
        out.require(r.points.size() == 2, "expected two farthest points");
        if (r.points.size() != 2) continue;
        for (const auto& f : r.points) out.require(f.n_segments == 3, "expected 3 segments");
        out.require(std::abs(r.points[0].distance - r.points[1].distance) <= 1e-9 * r.radius, "not equidistant");

        const auto grid = oracle::grid_farthest(s, p, grid512);
        out.require(grid.points.size() == 2,
                    "grid found " + std::to_string(grid.points.size()) + " clusters for a=" + fmt("%.6g", t.a) +
                        " b=" + fmt("%.6g", t.b) + " alpha=" + fmt("%.6g", t.alpha));
        out.require(oracle_agrees(s, r, grid), "grid clusters not within 2 cell diagonals of the analytic points");
        collected.push_back({s, p, cut_locus(s, p), r});
    }
    out.detail = "200 tori (" + std::to_string(rejected) + " draws skipped for separation < min(a,b)/4)";
    return out;
}

Outcome klein_sweep() {
    Outcome out;
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> unit(0, 1);
    std::size_t runs = 0;
    for (const double b : {1.0, 2.0, 4.0}) {
        const KleinSpec k = make_klein_spec(1, b);
        const Surface s = k;
        std::vector<double> lambdas{0.0, 0.5};
        if (const auto l0 = klein_lambda0(k)) {
            lambdas = {0.0, *l0 / 2, *l0, (*l0 + 0.5) / 2, 0.5};
        } else {
            lambdas.insert(lambdas.begin() + 1, 0.25);
        }
        for (const double lambda : lambdas) {
            const double xi = lambda * b / 2;
            // the four placements of a point at distance xi from the main geodesics
            const double ys[] = {-xi, xi, b / 2 - xi, b / 2 + xi};
            const auto p = wrap(s, {unit(rng) * k.a, ys[runs % 4]});
            ++runs;
            const auto r = farthest_points(s, p);
            const auto [count, segments] = klein_expected(1, b, lambda);
            const std::string tag = "K_{1," + fmt("%g", b) + "} lambda=" + fmt("%.6f", lambda);
            out.require(r.points.size() == count, tag + ": #F_p mismatch");
            for (const auto& f : r.points) out.require(f.n_segments == segments, tag + ": segment count mismatch");

            const auto grid = oracle::grid_farthest(s, p, grid512);
            out.require(grid.points.size() == count,
                        tag + ": grid found " + std::to_string(grid.points.size()) + " clusters");
            out.require(oracle_agrees(s, r, grid), tag + ": grid locations disagree");
            collected.push_back({s, p, cut_locus(s, p), r});
        }
    }

    // specific checks
    const KleinSpec k14 = make_klein_spec(1, 4);
    const auto r1 = farthest_points(k14, wrap(k14, {0, -0.5}));
    out.require(r1.points.size() == 1 && r1.points[0].n_segments == 3, "K_{1,4} lambda=1/4: expected one point, 3 segments");
    if (!r1.points.empty()) {
        out.require(dist(r1.points[0].lift, {0, 11.0 / 6.0}) <= 1e-12, "K_{1,4} lambda=1/4: point not at (0, 11/6)");
    }
    const double l0 = 0.5 - std::sqrt(3.0) / 4;
    const auto r2 = farthest_points(k14, wrap(k14, {0, -l0 * 2}));
    out.require(r2.points.size() == 1 && r2.points[0].n_segments == 4, "K_{1,4} lambda=lambda0: expected one point, 4 segments");

    out.detail = std::to_string(runs) + " (surface, lambda) cases";
    return out;
}

Outcome identities() {
    Outcome out;
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> side(0.2, 5.0), lam(1e-3, 0.5);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const KleinSpec k = make_klein_spec(side(rng), side(rng));
        const double lambda = i == 0 ? 0.5 : lam(rng);
        const auto d = klein_cut_data(k, lambda);
        const PlanePoint c0 = *d.c0;
        // relative to the larger of |rhs| and the squared distances subtracted
        const auto rel = [](double lhs_a, double lhs_b, double rhs) {
            return std::abs((lhs_a - lhs_b) - rhs) / std::max({std::abs(rhs), lhs_a, lhs_b});
        };
        const double e10 = rel(dist2(c0, d.v), dist2(c0, d.p0), -d.delta / lambda);
        const double e11 = rel(dist2(d.c_plus, d.h_minus), dist2(d.c_plus, d.p0), 2 * d.delta);
        const double e12 = rel(dist2(d.c1, d.v), dist2(d.c1, d.p0), d.delta / (1 - lambda));
        const double eg = rel(dist2(d.p0, c0), dist2(d.v, d.c1), klein_vertex_gap(k, lambda));
        worst = std::max({worst, e10, e11, e12, eg});
        out.require(e10 <= 1e-9 && e11 <= 1e-9 && e12 <= 1e-9 && eg <= 1e-9, "identity violated");
        if (d.delta < 0) out.require(klein_vertex_gap(k, lambda) <= 0, "vertex gap positive for Delta < 0");
    }
    out.detail = "1000 draws, worst relative error " + fmt("%.2e", worst);
    return out;
}

Outcome restriction_claims() {
    Outcome out;
    std::mt19937_64 rng(505);
    std::uniform_real_distribution<double> side(0.4, 3.0);
    std::size_t bad = 0;
    for (int i = 0; i < 20; ++i) {
        const Surface t = brute::random_torus(rng);
        const auto rt = oracle::restriction_check(t, wrap(t, brute::random_plane_point(rng, 3)), 10000, 600 + i);
        const Surface k = make_klein_spec(side(rng), side(rng));
        const auto rk = oracle::restriction_check(k, wrap(k, brute::random_plane_point(rng, 3)), 10000, 700 + i);
        bad += rt.counterexamples.size() + rk.counterexamples.size();
        out.require(rt.passed, "torus counterexample");
        out.require(rk.passed, "Klein counterexample");
    }
    out.detail = "20 tori + 20 Klein bottles x 10^4 samples, " + std::to_string(bad) + " counterexamples";
    return out;
}

Outcome basis_reduction() {
    Outcome out;
    std::mt19937_64 rng(606);
    std::uniform_int_distribution<int> entry(-5, 5);
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < 500; ++i) {
        const TorusSpec spec = brute::random_torus(rng);
        IntMatrix2 m{};
        do {
            m = {{{entry(rng), entry(rng)}, {entry(rng), entry(rng)}}};
        } while (std::abs(determinant(m)) != 1);
        PlanePoint u = static_cast<double>(m[0][0]) * spec.u() + static_cast<double>(m[0][1]) * spec.v();
        PlanePoint v = static_cast<double>(m[1][0]) * spec.u() + static_cast<double>(m[1][1]) * spec.v();
        if (coin(rng)) u = -u;
        if (coin(rng)) v = -v;
        const auto r = reduce_basis(u, v);
        out.require(std::abs(r.spec.a - spec.a) <= 1e-9 * spec.a, "a not recovered");
        out.require(std::abs(r.spec.b - spec.b) <= 1e-9 * spec.b, "b not recovered");
        out.require(std::abs(r.spec.alpha - spec.alpha) <= 1e-9 * spec.alpha, "alpha not recovered");
        const double tau = 1e-9 * std::max(r.spec.a, r.spec.b);
        out.require(r.spec.a <= r.spec.b + tau && 2 * r.spec.b * std::cos(r.spec.alpha) <= r.spec.a + tau,
                    "output violates 2 b cos(alpha) <= a <= b");
        out.require(std::abs(determinant(r.change_of_basis)) == 1, "change of basis not unimodular");
    }
    out.detail = "500 scrambled specs";
    return out;
}

Outcome graph_invariants() {
    Outcome out;
    for (const auto& c : collected) {
        out.require(c.graph.euler_characteristic() == -1, "V - E != -1");
        out.require(c.graph.degree_sum() == 2 * static_cast<int>(c.graph.edges.size()), "sum of degrees != 2E");
        const double tol = 1e-8 * (side_a(c.surface) + side_b(c.surface));
        for (const auto& f : c.report.points) {
            bool found = false;
            for (const auto& v : c.graph.vertices) {
                if (same_point(c.surface, v.point, f.point, tol)) {
                    found = true;
                    out.require(v.degree == f.n_segments, "vertex degree != segment count");
                }
            }
            out.require(found, "farthest point is not a cut locus vertex");
        }
    }
    out.detail = std::to_string(collected.size()) + " graphs from criteria 1-3";
    return out;
}

Outcome figures() {
    Outcome out;
    struct Figure {
        std::string name;
        Surface surface;
        PlanePoint point;
        std::vector<std::string> layers;
    };
    const std::vector<Figure> figs{
        {"torus_tiling", make_torus_spec(1, 1.25, 1.25), {0, 0}, {"tiling", "voronoi", "sites", "farthest", "domain"}},
        {"torus_lattice_voronoi", make_torus_spec(1, 1.1, 1.2), {0.2, 0.1}, {"voronoi", "farthest"}},
        {"klein_kites", make_klein_spec(1, 1.5), {0, -0.3}, {"tiling", "voronoi", "sites", "main-geodesics", "farthest"}},
        {"klein_delta_negative", make_klein_spec(1, 4), {0, -0.5}, {"tiling", "voronoi", "main-geodesics"}},
    };
    const std::filesystem::path dir = "acceptance_figures";
    std::filesystem::create_directories(dir);
    for (const auto& f : figs) {
        const auto render = [&] {
            const auto p = wrap(f.surface, f.point);
            return emit_svg(f.surface, p, farthest_points(f.surface, p), voronoi_cell(f.surface, p), {3, 800, 1.0});
        };
        const std::string first = render();
        const std::string second = render();
        out.require(first == second, f.name + ": output differs between runs");
        for (const auto& layer : f.layers)
            out.require(first.find("<g id=\"" + layer + "\"") != std::string::npos, f.name + ": missing " + layer);
        if (is_klein(f.surface)) out.require(first.find("#888888") != std::string::npos, f.name + ": no second coset");
        std::ofstream(dir / (f.name + ".svg"), std::ios::binary) << first;
    }
    out.detail = std::to_string(figs.size()) + " figures written to " + dir.string() + "/";
    return out;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        std::string name;
        double limit_s; // 0: no runtime bound
        std::function<Outcome()> body;
    };
    const std::vector<Criterion> criteria{
        {1, "square torus farthest point", 1.0, square_torus},
        {2, "flat torus sweep vs grid oracle", 120.0, torus_sweep},
        {3, "Klein bottle case table vs grid oracle", 120.0, klein_sweep},
        {4, "Klein circumcenter identities", 1.0, identities},
        {5, "restriction claims", 30.0, restriction_claims},
        {6, "basis reduction", 5.0, basis_reduction},
        {7, "cut locus graph invariants", 0.0, graph_invariants},
        {8, "deterministic figures", 0.0, figures},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o = c.body();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0 && secs >= c.limit_s) {
            o.ok = false;
            o.failures.push_back("runtime " + fmt("%.2f", secs) + " s exceeds " + fmt("%.0f", c.limit_s) + " s");
        }
        std::printf("[%s] criterion %d: %s -- %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    o.detail.c_str(), secs);
        for (const auto& f : o.failures) std::printf("       %s\n", f.c_str());
        if (!o.ok) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    std::fflush(stdout);
    return failed == 0 ? 0 : 1;
}
