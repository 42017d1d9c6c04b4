#pragma once

#include <farpoint/cut_locus.hpp>
#include <farpoint/oracle.hpp>

#include <json.hpp>

#include <optional>

namespace farpoint {

inline constexpr int json_schema_version = 1;

struct VerifySummary {
    std::size_t resolution = 0;
    std::size_t clusters = 0;
    bool agrees = false;
};

inline nlohmann::json surface_json(const Surface& surface) {
    nlohmann::json j;
    if (const auto* t = std::get_if<TorusSpec>(&surface)) {
        j["type"] = "torus";
        j["a"] = t->a;
        j["b"] = t->b;
        j["alpha"] = t->alpha;
    } else {
        const auto& k = std::get<KleinSpec>(surface);
        j["type"] = "klein";
        j["a"] = k.a;
        j["b"] = k.b;
    }
    return j;
}

inline nlohmann::json report_json(const Surface& surface, const SurfacePoint& p, const FarthestReport& report,
                                  const CutLocusGraph& graph, const std::optional<VerifySummary>& verify = {}) {
    nlohmann::json j;
    j["schema"] = json_schema_version;
    j["surface"] = surface_json(surface);
    j["point"] = {{"x", p.rep.x}, {"y", p.rep.y}};
    j["case"] = report.case_label;
    j["radius"] = report.radius;

    nlohmann::json farthest = nlohmann::json::array();
    for (const auto& f : report.points) {
        farthest.push_back(
            {{"x", f.point.rep.x}, {"y", f.point.rep.y}, {"segments", f.n_segments}, {"distance", f.distance}});
    }
    j["farthest"] = farthest;

    nlohmann::json vertices = nlohmann::json::array();
    for (const auto& v : graph.vertices) {
        vertices.push_back({{"x", v.point.rep.x},
                            {"y", v.point.rep.y},
                            {"degree", v.degree},
                            {"distance", v.distance_from_p}});
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : graph.edges) {
        edges.push_back({{"from", e.from}, {"to", e.to}, {"length", e.length}});
    }
    j["cut_locus"] = {{"vertices", vertices}, {"edges", edges}};

    if (report.klein) {
        const auto& k = *report.klein;
        nlohmann::json kj{{"xi", k.lambda * side_b(surface) / 2.0}, {"lambda", k.lambda}, {"delta", k.delta}};
        if (k.lambda0) kj["lambda0"] = *k.lambda0;
        j["klein"] = kj;
    }
    if (verify) {
        j["verify"] = {{"resolution", verify->resolution}, {"clusters", verify->clusters}, {"agrees", verify->agrees}};
    }
    return j;
}

inline nlohmann::json reduction_json(const ReductionResult& r) {
    const auto& m = r.change_of_basis;
    return {{"schema", json_schema_version},
            {"reduce",
             {{"a", r.spec.a},
              {"b", r.spec.b},
              {"alpha", r.spec.alpha},
              {"matrix", {{m[0][0], m[0][1]}, {m[1][0], m[1][1]}}},
              {"sign_flips", {r.sign_flips.first, r.sign_flips.second}}}}};
}

// Grid oracle agreement: same number of clusters, every analytic point within
// resolution_bound of a cluster representative, and consistent maxima.
inline bool oracle_agrees(const Surface& surface, const FarthestReport& analytic, const oracle::OracleFarthest& grid) {
    if (grid.points.size() != analytic.points.size()) return false;
    const double bound = grid.resolution_bound;
    if (grid.distance > analytic.radius + tau_dist(surface) || analytic.radius > grid.distance + bound) return false;
    for (const auto& f : analytic.points) {
        bool matched = false;
        for (const auto& g : grid.points) {
            if (distance(surface, f.point, g).distance <= bound) {
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

} // namespace farpoint
