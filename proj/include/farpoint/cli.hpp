#pragma once

#include <farpoint/canonicalize.hpp>
#include <farpoint/cut_locus.hpp>
#include <farpoint/oracle.hpp>
#include <farpoint/report.hpp>
#include <farpoint/svg.hpp>

#include <CLI11.hpp>

#include <array>
#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace farpoint::cli {

enum class Command { Torus, Klein, Reduce };

enum ExitCode : int {
    exit_ok = 0,
    exit_verify_mismatch = 1,
    exit_usage = 2,
    exit_geometry = 3,
};

struct RunConfig {
    Command command = Command::Torus;
    Surface surface = TorusSpec{};
    PlanePoint point{};
    std::array<double, 4> basis{};
    bool json = false;
    std::optional<std::string> svg_path;
    std::optional<std::size_t> verify;
    SvgOptions svg{};
    Tolerances tol{};
};

struct ParseResult {
    std::optional<RunConfig> config;
    int exit_code = exit_ok; // meaningful when config is empty
    std::string message;
};

namespace detail {

inline std::vector<double> split_numbers(const std::string& text, std::size_t expected, const std::string& flag) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw CLI::ValidationError(flag, "not a number: '" + item + "'");
        }
        if (used != item.size() || !std::isfinite(v)) {
            throw CLI::ValidationError(flag, "not a finite number: '" + item + "'");
        }
        out.push_back(v);
    }
    if (out.size() != expected) {
        throw CLI::ValidationError(flag, "expected " + std::to_string(expected) + " comma-separated numbers");
    }
    return out;
}

} // namespace detail

inline ParseResult parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Farthest points and cut loci on flat tori and flat Klein bottles", "farpoint"};
    app.require_subcommand(1);

    double a = 0.0;
    double b = 0.0;
    double alpha = 0.0;
    std::string point = "0,0";
    std::string basis;
    bool json = false;
    bool degrees = false;
    std::string svg;
    std::size_t verify = 0;
    int tiles = 3;
    double tolerance = 0.0;

    auto* torus = app.add_subcommand("torus", "flat torus T_{a,b,alpha}");
    auto* klein = app.add_subcommand("klein", "flat Klein bottle K_{a,b}");
    auto* reduce = app.add_subcommand("reduce", "reduce a lattice basis to canonical torus parameters");

    for (auto* sub : {torus, klein}) {
        sub->add_option("--a", a, "first side length")->required();
        sub->add_option("--b", b, "second side length")->required();
        sub->add_option("--point", point, "base point x,y")->capture_default_str();
        sub->add_option("--svg", svg, "write an SVG figure to PATH");
        sub->add_option("--verify", verify, "check against the grid oracle at N x N")->check(CLI::Range(16, 8192));
        sub->add_option("--tiles", tiles, "tiles per axis in the SVG figure")->check(CLI::Range(0, 64));
    }
    torus->add_option("--alpha", alpha, "angle between the sides (radians)")->required();
    torus->add_flag("--degrees", degrees, "read --alpha in degrees");
    reduce->add_option("--basis", basis, "lattice basis ux,uy,vx,vy")->required();
    for (auto* sub : {torus, klein, reduce}) {
        sub->add_flag("--json", json, "print a JSON report");
        sub->add_option("--tolerance", tolerance, "relative distance tolerance (default 1e-9)")
            ->check(CLI::PositiveNumber);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    ParseResult result;
    RunConfig config;
    try {
        app.parse(reversed);
        config.json = json;
        if (!svg.empty()) config.svg_path = svg;
        if (verify > 0) config.verify = verify;
        config.svg.tiles = tiles;
        if (tolerance > 0.0) config.tol.dist = tolerance;
        config.command = *reduce ? Command::Reduce : (*klein ? Command::Klein : Command::Torus);
        if (config.command == Command::Reduce) {
            const auto v = detail::split_numbers(basis, 4, "--basis");
            config.basis = {v[0], v[1], v[2], v[3]};
        } else {
            const auto v = detail::split_numbers(point, 2, "--point");
            config.point = {v[0], v[1]};
        }
    } catch (const CLI::CallForHelp& e) {
        result.exit_code = exit_ok;
        result.message = app.help();
        return result;
    } catch (const CLI::CallForAllHelp& e) {
        result.exit_code = exit_ok;
        result.message = app.help("", CLI::AppFormatMode::All);
        return result;
    } catch (const CLI::ParseError& e) {
        result.exit_code = exit_usage;
        result.message = std::string("usage error: ") + e.what() + "\nRun with --help for usage.";
        return result;
    }

    try {
        if (config.command == Command::Torus) {
            const double radians = degrees ? alpha * std::numbers::pi / 180.0 : alpha;
            config.surface = make_torus_spec(a, b, radians, config.tol);
        } else if (config.command == Command::Klein) {
            config.surface = make_klein_spec(a, b, config.tol);
        }
    } catch (const GeometryError& e) {
        result.exit_code = exit_geometry;
        result.message = std::string("invalid geometry: ") + e.what();
        return result;
    }
    result.config = config;
    return result;
}

inline ParseResult parse_args(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return parse_args(args);
}

inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.command == Command::Reduce) {
            const auto& v = config.basis;
            const ReductionResult r = reduce_basis({v[0], v[1]}, {v[2], v[3]}, config.tol);
            if (config.json) {
                out << reduction_json(r).dump(2) << '\n';
            } else {
                const auto& m = r.change_of_basis;
                out.precision(17);
                out << "a = " << r.spec.a << "\nb = " << r.spec.b << "\nalpha = " << r.spec.alpha << '\n'
                    << "change of basis = [[" << m[0][0] << ", " << m[0][1] << "], [" << m[1][0] << ", " << m[1][1]
                    << "]]\n";
            }
            return exit_ok;
        }

        const Surface& surface = config.surface;
        const SurfacePoint p = wrap(surface, config.point);
        const FarthestReport report = farthest_points(surface, p);
        const CutLocusGraph graph = cut_locus(surface, p);

        std::optional<VerifySummary> verify;
        if (config.verify) {
            const oracle::OracleFarthest grid =
                oracle::grid_farthest(surface, p, {*config.verify, *config.verify});
            verify = VerifySummary{*config.verify, grid.points.size(), oracle_agrees(surface, report, grid)};
        }

        if (config.svg_path) {
            write_svg(*config.svg_path, emit_svg(surface, p, report, voronoi_cell(surface, p), config.svg));
        }

        if (config.json) {
            out << report_json(surface, p, report, graph, verify).dump(2) << '\n';
        } else {
            out.precision(12);
            out << (is_torus(surface) ? "torus" : "klein") << " case " << report.case_label << '\n';
            out << "point (" << p.rep.x << ", " << p.rep.y << ")\n";
            out << "farthest distance " << report.radius << '\n';
            for (const auto& f : report.points) {
                out << "  farthest (" << f.point.rep.x << ", " << f.point.rep.y << ") segments " << f.n_segments
                    << '\n';
            }
            out << "cut locus: " << graph.vertices.size() << " vertices, " << graph.edges.size() << " edges\n";
            if (verify) {
                out << "verify " << verify->resolution << "x" << verify->resolution << ": " << verify->clusters
                    << (verify->clusters == 1 ? " cluster, " : " clusters, ")
                    << (verify->agrees ? "matches analytic" : "DISAGREES with analytic") << '\n';
            }
        }
        if (verify && !verify->agrees) {
            err << "verification failed: grid oracle disagrees with the analytic farthest points\n";
            return exit_verify_mismatch;
        }
        return exit_ok;
    } catch (const GeometryError& e) {
        err << "invalid geometry: " << e.what() << '\n';
        return exit_geometry;
    } catch (const std::exception& e) {
        // runtime failures (e.g. the SVG file cannot be written) share exit code 1
        err << "error: " << e.what() << '\n';
        return exit_verify_mismatch;
    }
}

} // namespace farpoint::cli
