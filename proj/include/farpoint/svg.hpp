#pragma once

#include <farpoint/cut_locus.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace farpoint {

struct SvgOptions {
    int tiles = 3;          // tiles per axis around the fundamental domain; 0 draws the outline only
    int width_px = 800;
    double stroke = 1.0;    // base stroke width in pixels
};

namespace svg_detail {

inline std::string num(double v) {
    if (std::abs(v) < 5e-7) v = 0.0;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline std::string pt(PlanePoint p) { return num(p.x) + "," + num(p.y); }

struct Box {
    double x0, y0, x1, y1;

    void include(PlanePoint p) {
        x0 = std::min(x0, p.x);
        y0 = std::min(y0, p.y);
        x1 = std::max(x1, p.x);
        y1 = std::max(y1, p.y);
    }
    bool contains(PlanePoint p, double pad) const {
        return p.x >= x0 - pad && p.x <= x1 + pad && p.y >= y0 - pad && p.y <= y1 + pad;
    }
    PlanePoint center() const { return {(x0 + x1) / 2.0, (y0 + y1) / 2.0}; }
    double diagonal() const { return std::hypot(x1 - x0, y1 - y0); }
};

inline Box empty_box() { return {1e300, 1e300, -1e300, -1e300}; }

inline std::vector<PlanePoint> domain_outline(const Surface& surface) {
    if (const auto* t = std::get_if<TorusSpec>(&surface)) {
        return {{0.0, 0.0}, t->u(), t->h(), t->v()};
    }
    const double a = side_a(surface);
    const double b = side_b(surface);
    return {{0.0, 0.0}, {a, 0.0}, {a, b}, {0.0, b}};
}

inline std::string polygon(const std::vector<PlanePoint>& pts, const std::string& attrs) {
    std::string s = "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) s += ' ';
        s += pt(pts[i]);
    }
    return s + "\" " + attrs + "/>\n";
}

inline std::string line(PlanePoint a, PlanePoint b, const std::string& attrs) {
    return "<line x1=\"" + num(a.x) + "\" y1=\"" + num(a.y) + "\" x2=\"" + num(b.x) + "\" y2=\"" + num(b.y) +
           "\" " + attrs + "/>\n";
}

inline std::string circle(PlanePoint c, double r, const std::string& attrs) {
    return "<circle cx=\"" + num(c.x) + "\" cy=\"" + num(c.y) + "\" r=\"" + num(r) + "\" " + attrs + "/>\n";
}

} // namespace svg_detail

// SVG 1.1 figure: tiling, lifts of p, Voronoi diagram of the lifts (gray),
// farthest points (red), fundamental domain, and for Klein bottles the main
// geodesics (dotted) with the two cosets of lifts in black and gray.
inline std::string emit_svg(const Surface& surface, const SurfacePoint& p, const FarthestReport& report,
                            const VoronoiCell& cell, const SvgOptions& opt = {}) {
    using namespace svg_detail;
    const double a = side_a(surface);
    const double b = side_b(surface);
    const auto outline = domain_outline(surface);

    Box view = empty_box();
    for (const auto& q : outline) view.include(q);
    const int k = std::max(opt.tiles, 0);
    const int lo = -(k - 1) / 2;
    if (k > 0) {
        for (int m = lo; m < lo + k; ++m) {
            for (int n = lo; n < lo + k; ++n) {
                for (const auto& q : outline) {
                    if (const auto* t = std::get_if<TorusSpec>(&surface)) {
                        view.include(q + static_cast<double>(m) * t->u() + static_cast<double>(n) * t->v());
                    } else {
                        view.include(q + PlanePoint{m * a, n * b});
                    }
                }
            }
        }
    }
    const double margin = 0.05 * std::max(view.x1 - view.x0, view.y1 - view.y0);
    view = {view.x0 - margin, view.y0 - margin, view.x1 + margin, view.y1 + margin};

    const double scale = opt.width_px / (view.x1 - view.x0);
    const int height_px = static_cast<int>(std::ceil(scale * (view.y1 - view.y0)));
    const double dot_r = 0.006 * std::max(view.x1 - view.x0, view.y1 - view.y0);
    const std::string stroke = num(opt.stroke);
    const std::string thin = num(0.6 * opt.stroke);

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(opt.width_px) +
         "\" height=\"" + std::to_string(height_px) + "\" viewBox=\"0 0 " + std::to_string(opt.width_px) + " " +
         std::to_string(height_px) + "\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(opt.width_px) + "\" height=\"" +
         std::to_string(height_px) + "\" fill=\"white\"/>\n";
    // y-up plane coordinates to y-down SVG coordinates
    s += "<g transform=\"matrix(" + num(scale) + " 0 0 " + num(-scale) + " " + num(-scale * view.x0) + " " +
         num(scale * view.y1) + ")\">\n";

    if (k > 0) {
        const double reach = diameter_bound(surface);
        const OrbitSet lifts = orbit(surface, p, view.center(), view.diagonal() / 2.0 + reach);

        s += "<g id=\"tiling\" fill=\"none\" stroke=\"black\" stroke-width=\"" + stroke +
             "\" vector-effect=\"non-scaling-stroke\">\n";
        if (const auto* t = std::get_if<TorusSpec>(&surface)) {
            for (const auto& l : lifts.points) {
                const PlanePoint o = l.point;
                if (!view.contains(o, reach)) continue;
                s += polygon({o, o + t->u(), o + t->h(), o + t->v()}, "vector-effect=\"non-scaling-stroke\"");
            }
        } else {
            const auto& spec = std::get<KleinSpec>(surface);
            const KleinCanonicalPoint canon = klein_canonicalize(spec, p);
            const double sign = canon.frame.reflect ? -1.0 : 1.0;
            const double xi = canon.xi;
            for (const auto& l : lifts.points) {
                if (l.element.along_a % 2 != 0 || !view.contains(l.point, reach)) continue;
                const PlanePoint x = l.point;
                for (const double dx : {-a, a}) {
                    s += line(x, x + PlanePoint{dx, sign * (b - 2.0 * xi)}, "vector-effect=\"non-scaling-stroke\"");
                    s += line(x, x + PlanePoint{dx, -sign * 2.0 * xi}, "vector-effect=\"non-scaling-stroke\"");
                }
            }
        }
        s += "</g>\n";

        s += "<g id=\"voronoi\" fill=\"none\" stroke=\"#999999\" stroke-width=\"" + stroke + "\">\n";
        for (const auto& l : lifts.points) {
            if (!view.contains(l.point, reach)) continue;
            std::vector<PlanePoint> image;
            image.reserve(cell.corners.size());
            for (const auto& c : cell.corners) image.push_back(deck_apply(surface, l.element, c));
            s += polygon(image, "vector-effect=\"non-scaling-stroke\"");
        }
        s += "</g>\n";

        if (is_klein(surface)) {
            s += "<g id=\"main-geodesics\" stroke=\"black\" stroke-width=\"" + thin +
                 "\" stroke-dasharray=\"2,4\">\n";
            const auto first = static_cast<long>(std::floor(view.y0 / (b / 2.0)));
            const auto last = static_cast<long>(std::ceil(view.y1 / (b / 2.0)));
            for (long n = first; n <= last; ++n) {
                const double y = static_cast<double>(n) * b / 2.0;
                s += line({view.x0, y}, {view.x1, y}, "vector-effect=\"non-scaling-stroke\"");
            }
            s += "</g>\n";
        }
    }

    s += "<g id=\"domain\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"" + num(2.0 * opt.stroke) + "\">\n";
    s += polygon(outline, "vector-effect=\"non-scaling-stroke\"");
    s += "</g>\n";

    if (k > 0) {
        const OrbitSet lifts = orbit(surface, p, view.center(), view.diagonal() / 2.0);
        s += "<g id=\"sites\">\n";
        for (const auto& l : lifts.points) {
            if (!view.contains(l.point, 0.0)) continue;
            const bool odd = is_klein(surface) && l.element.along_a % 2 != 0;
            s += circle(l.point, dot_r, odd ? "fill=\"#888888\"" : "fill=\"black\"");
        }
        s += "</g>\n";

        s += "<g id=\"farthest\" fill=\"#d62728\" stroke=\"none\">\n";
        for (const auto& f : report.points) {
            const OrbitSet images = orbit(surface, f.point, view.center(), view.diagonal() / 2.0);
            for (const auto& l : images.points) {
                if (!view.contains(l.point, 0.0)) continue;
                s += circle(l.point, 1.4 * dot_r, "");
            }
        }
        s += "</g>\n";
    }

    s += "</g>\n</svg>\n";
    return s;
}

inline void write_svg(const std::string& path, const std::string& document) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << document;
    if (!out) {
        throw std::runtime_error("failed writing " + path);
    }
}

} // namespace farpoint
