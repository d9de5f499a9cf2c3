#include "snowwalk/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "snowwalk/errors.hpp"

namespace snowwalk {

namespace {

constexpr double kImageWidth = 840.0;
constexpr double kLegendWidth = 70.0;
constexpr double kMargin = 20.0;

struct Rgb {
    int r, g, b;
};

// Two-segment ramp: deep blue -> teal -> warm yellow.
Rgb ramp(double u) {
    u = std::clamp(u, 0.0, 1.0);
    const auto mix = [](double a, double b, double t) { return a + (b - a) * t; };
    double r, g, b;
    if (u < 0.5) {
        const double t = u * 2.0;
        r = mix(13, 38, t);
        g = mix(27, 166, t);
        b = mix(94, 154, t);
    } else {
        const double t = (u - 0.5) * 2.0;
        r = mix(38, 253, t);
        g = mix(166, 219, t);
        b = mix(154, 90, t);
    }
    return {static_cast<int>(std::lround(r)), static_cast<int>(std::lround(g)),
            static_cast<int>(std::lround(b))};
}

std::string color(double u) {
    const Rgb c = ramp(u);
    char buffer[8];
    std::snprintf(buffer, sizeof(buffer), "#%02x%02x%02x", c.r, c.g, c.b);
    return buffer;
}

std::string num(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.4f", v);
    return buffer;
}

std::string label(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.6g", v);
    return buffer;
}

} // namespace

std::string heatmap_svg(const Mesh& mesh, const BoundaryPolygon& poly,
                        std::span<const double> field, const std::string& title) {
    if (static_cast<int>(field.size()) != mesh.size()) {
        throw PreconditionError("field length does not match mesh");
    }
    double lo = field[0];
    double hi = field[0];
    for (double v : field) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double span = hi - lo;

    const BoundingBox bbox = poly.bounding_box();
    const double world_w = bbox.max.x - bbox.min.x;
    const double world_h = bbox.max.y - bbox.min.y;
    const double plot_w = kImageWidth - kLegendWidth - 3.0 * kMargin;
    const double scale = plot_w / world_w;
    const double plot_h = world_h * scale;
    const double height = plot_h + 2.0 * kMargin + 24.0;

    const auto sx = [&](double x) { return kMargin + (x - bbox.min.x) * scale; };
    const auto sy = [&](double y) { return kMargin + 18.0 + (bbox.max.y - y) * scale; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kImageWidth << "\" height=\""
        << num(height) << "\" viewBox=\"0 0 " << kImageWidth << ' ' << num(height) << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kMargin << "\" y=\"" << kMargin - 4.0
        << "\" font-family=\"monospace\" font-size=\"13\">" << title << "</text>\n";

    const double h = mesh.spacing;
    if (mesh.kind == DomainKind::square) {
        const double cell = h * scale;
        for (int id = 0; id < mesh.size(); ++id) {
            const Point& p = mesh.positions[static_cast<std::size_t>(id)];
            const double u = span > 0.0 ? (field[static_cast<std::size_t>(id)] - lo) / span : 0.5;
            svg << "<rect x=\"" << num(sx(p.x) - cell / 2) << "\" y=\"" << num(sy(p.y) - cell / 2)
                << "\" width=\"" << num(cell) << "\" height=\"" << num(cell) << "\" fill=\""
                << color(u) << "\"/>\n";
        }
    } else {
        // Pointy-top hexagon: the Voronoi cell of the triangular lattice.
        const double rx = 0.5 * h;                      // horizontal half-width
        const double ry = h / 1.7320508075688772;       // vertical circumradius h/sqrt(3)
        for (int id = 0; id < mesh.size(); ++id) {
            const Point& p = mesh.positions[static_cast<std::size_t>(id)];
            const double u = span > 0.0 ? (field[static_cast<std::size_t>(id)] - lo) / span : 0.5;
            const double cx = sx(p.x);
            const double cy = sy(p.y);
            const double wx = rx * scale;
            const double wy2 = 0.5 * ry * scale;
            const double wy = ry * scale;
            svg << "<polygon points=\"" << num(cx) << ',' << num(cy - wy) << ' ' << num(cx + wx)
                << ',' << num(cy - wy2) << ' ' << num(cx + wx) << ',' << num(cy + wy2) << ' '
                << num(cx) << ',' << num(cy + wy) << ' ' << num(cx - wx) << ',' << num(cy + wy2)
                << ' ' << num(cx - wx) << ',' << num(cy - wy2) << "\" fill=\"" << color(u)
                << "\"/>\n";
        }
    }

    svg << "<polygon points=\"";
    for (std::size_t i = 0; i < poly.vertices().size(); ++i) {
        const Point& v = poly.vertices()[i];
        if (i > 0) svg << ' ';
        svg << num(sx(v.x)) << ',' << num(sy(v.y));
    }
    svg << "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.8\"/>\n";

    // Legend: vertical ramp with min/max labels.
    const double legend_x = kImageWidth - kLegendWidth - kMargin;
    const double legend_y = kMargin + 18.0;
    const int bands = 48;
    const double band_h = plot_h / bands;
    for (int b = 0; b < bands; ++b) {
        const double u = 1.0 - (static_cast<double>(b) + 0.5) / bands;
        svg << "<rect x=\"" << num(legend_x) << "\" y=\"" << num(legend_y + b * band_h)
            << "\" width=\"16\" height=\"" << num(band_h + 0.5) << "\" fill=\"" << color(u)
            << "\"/>\n";
    }
    svg << "<text x=\"" << num(legend_x + 20) << "\" y=\"" << num(legend_y + 10)
        << "\" font-family=\"monospace\" font-size=\"11\">" << label(hi) << "</text>\n";
    svg << "<text x=\"" << num(legend_x + 20) << "\" y=\"" << num(legend_y + plot_h)
        << "\" font-family=\"monospace\" font-size=\"11\">" << label(lo) << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

} // namespace snowwalk
