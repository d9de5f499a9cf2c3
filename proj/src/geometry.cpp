#include "snowwalk/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

namespace snowwalk {

namespace {

constexpr double kSqrt3Half = 0.8660254037844386467637231707529362; // sqrt(3)/2

struct IVec {
    std::int64_t x = 0;
    std::int64_t y = 0;
};

IVec operator+(IVec a, IVec b) { return {a.x + b.x, a.y + b.y}; }
IVec operator-(IVec a, IVec b) { return {a.x - b.x, a.y - b.y}; }
IVec operator*(std::int64_t s, IVec v) { return {s * v.x, s * v.y}; }

// 90-degree counter-clockwise rotation on square-grid coordinates.
IVec rot_ccw(IVec v) { return {-v.y, v.x}; }

// 60-degree clockwise rotation on triangular-lattice coordinates with basis
// e1 = (1, 0), e2 = (1/2, sqrt(3)/2).
IVec rot_cw60(IVec v) { return {v.x + v.y, -v.x}; }

double distance_point_segment(Point p, Point a, Point b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0) {
        t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
        t = std::clamp(t, 0.0, 1.0);
    }
    const double ex = p.x - (a.x + t * dx);
    const double ey = p.y - (a.y + t * dy);
    return std::hypot(ex, ey);
}

// Map a ray into the frame where it points along +x from the origin.
Point to_ray_frame(Point p, const AxisRay& ray) {
    const double rx = p.x - ray.origin.x;
    const double ry = p.y - ray.origin.y;
    switch (ray.direction) {
        case AxisDirection::right: return {rx, ry};
        case AxisDirection::left: return {-rx, ry};
        case AxisDirection::up: return {ry, rx};
        case AxisDirection::down: return {-ry, rx};
    }
    return {rx, ry};
}

} // namespace

std::string to_string(DomainKind kind) {
    return kind == DomainKind::square ? "square" : "triadic";
}

DomainKind domain_kind_from_string(const std::string& name) {
    if (name == "square") return DomainKind::square;
    if (name == "triadic") return DomainKind::triadic;
    throw DataError("unknown domain kind: '" + name + "' (expected 'square' or 'triadic')");
}

std::string to_string(AxisDirection dir) {
    switch (dir) {
        case AxisDirection::right: return "right";
        case AxisDirection::left: return "left";
        case AxisDirection::up: return "up";
        case AxisDirection::down: return "down";
    }
    return "right";
}

BoundaryPolygon::BoundaryPolygon(DomainKind kind, int fractal_level, std::vector<Point> vertices)
    : kind_(kind), level_(fractal_level), vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) throw DataError("boundary polygon needs at least 3 vertices");
    if (level_ < 0) throw PreconditionError("fractal level must be non-negative");
    bbox_.min = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    bbox_.max = {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Point& v : vertices_) {
        bbox_.min.x = std::min(bbox_.min.x, v.x);
        bbox_.min.y = std::min(bbox_.min.y, v.y);
        bbox_.max.x = std::max(bbox_.max.x, v.x);
        bbox_.max.y = std::max(bbox_.max.y, v.y);
    }
}

std::pair<Point, Point> BoundaryPolygon::edge(std::size_t i) const {
    const std::size_t n = vertices_.size();
    return {vertices_[i], vertices_[(i + 1) % n]};
}

double BoundaryPolygon::perimeter() const {
    double total = 0.0;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto [a, b] = edge(i);
        total += std::hypot(b.x - a.x, b.y - a.y);
    }
    return total;
}

PointClass BoundaryPolygon::classify(Point p) const {
    if (p.x < bbox_.min.x - kBoundaryTolerance || p.x > bbox_.max.x + kBoundaryTolerance ||
        p.y < bbox_.min.y - kBoundaryTolerance || p.y > bbox_.max.y + kBoundaryTolerance) {
        return PointClass::exterior;
    }
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto [a, b] = edge(i);
        if (distance_point_segment(p, a, b) <= kBoundaryTolerance) return PointClass::boundary;
    }
    // Even-odd crossing count along the +x ray. The strict/non-strict split
    // on the two endpoint comparisons makes every vertex crossing count once.
    bool inside = false;
    for (std::size_t i = 0; i < n; ++i) {
        const auto [a, b] = edge(i);
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_int = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (x_int > p.x) inside = !inside;
        }
    }
    return inside ? PointClass::interior : PointClass::exterior;
}

double BoundaryPolygon::ray_distance(const AxisRay& ray) const {
    if (classify(ray.origin) != PointClass::interior) {
        throw PreconditionError("ray origin is not strictly interior");
    }
    const std::size_t n = vertices_.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const auto [va, vb] = edge(i);
        const Point a = to_ray_frame(va, ray);
        const Point b = to_ray_frame(vb, ray);
        if (a.y == b.y) {
            if (a.y != 0.0) continue;
            // Collinear edge: the nearest point ahead is an endpoint.
            if (a.x > 0.0) best = std::min(best, a.x);
            if (b.x > 0.0) best = std::min(best, b.x);
            continue;
        }
        // Half-open parameterization: the edge owns its start vertex only.
        const double s = (0.0 - a.y) / (b.y - a.y);
        if (s < 0.0 || s >= 1.0) continue;
        const double x_int = a.x + s * (b.x - a.x);
        if (x_int > 0.0) best = std::min(best, x_int);
    }
    if (!std::isfinite(best)) {
        throw NumericalError("axis ray from interior point found no boundary intersection");
    }
    return best;
}

BoundaryPolygon generate_square_boundary(int level, std::size_t vertex_cap) {
    if (level < 0) throw PreconditionError("fractal level must be non-negative");
    // 4 * 8^L vertices, one per edge.
    double projected = 4.0;
    for (int l = 0; l < level; ++l) projected *= 8.0;
    if (projected > static_cast<double>(vertex_cap)) {
        throw ResourceLimitError("square boundary at level " + std::to_string(level) +
                                 " needs " + std::to_string(static_cast<std::uint64_t>(projected)) +
                                 " vertices, above the cap of " + std::to_string(vertex_cap));
    }

    // Integer coordinates in units of 4^-level keep every rewrite exact.
    std::vector<IVec> pts = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (int l = 0; l < level; ++l) {
        std::vector<IVec> next;
        next.reserve(pts.size() * 8);
        const std::size_t n = pts.size();
        for (std::size_t i = 0; i < n; ++i) {
            const IVec a = 4 * pts[i];
            const IVec b = 4 * pts[(i + 1) % n];
            const IVec d = {(b.x - a.x) / 4, (b.y - a.y) / 4};
            const IVec l90 = rot_ccw(d);
            // forward, L, forward, R, forward, R, forward, forward,
            // L, forward, L, forward, R, forward
            next.push_back(a);
            next.push_back(a + d);
            next.push_back(a + d + l90);
            next.push_back(a + 2 * d + l90);
            next.push_back(a + 2 * d);
            next.push_back(a + 2 * d - l90);
            next.push_back(a + 3 * d - l90);
            next.push_back(a + 3 * d);
        }
        pts = std::move(next);
    }

    double unit = 1.0;
    for (int l = 0; l < level; ++l) unit *= 0.25;
    std::vector<Point> vertices;
    vertices.reserve(pts.size());
    for (const IVec& v : pts) {
        vertices.push_back({static_cast<double>(v.x) * unit, static_cast<double>(v.y) * unit});
    }
    return BoundaryPolygon(DomainKind::square, level, std::move(vertices));
}

BoundaryPolygon generate_triadic_boundary(int level, std::size_t vertex_cap) {
    if (level < 0) throw PreconditionError("fractal level must be non-negative");
    double projected = 3.0;
    for (int l = 0; l < level; ++l) projected *= 4.0;
    if (projected > static_cast<double>(vertex_cap)) {
        throw ResourceLimitError("triadic boundary at level " + std::to_string(level) +
                                 " needs " + std::to_string(static_cast<std::uint64_t>(projected)) +
                                 " vertices, above the cap of " + std::to_string(vertex_cap));
    }

    // Integer coordinates over the triangular-lattice basis e1 = (1, 0),
    // e2 = (1/2, sqrt(3)/2), in units of 3^-level.
    std::vector<IVec> pts = {{0, 0}, {1, 0}, {0, 1}};
    for (int l = 0; l < level; ++l) {
        std::vector<IVec> next;
        next.reserve(pts.size() * 4);
        const std::size_t n = pts.size();
        for (std::size_t i = 0; i < n; ++i) {
            const IVec a = 3 * pts[i];
            const IVec b = 3 * pts[(i + 1) % n];
            const IVec e = {(b.x - a.x) / 3, (b.y - a.y) / 3};
            // The polygon runs counter-clockwise, so the outward bump turns
            // clockwise away from the interior.
            const IVec apex = a + e + rot_cw60(e);
            next.push_back(a);
            next.push_back(a + e);
            next.push_back(apex);
            next.push_back(a + 2 * e);
        }
        pts = std::move(next);
    }

    double unit = 1.0;
    for (int l = 0; l < level; ++l) unit /= 3.0;
    std::vector<Point> vertices;
    vertices.reserve(pts.size());
    for (const IVec& v : pts) {
        const double x = (static_cast<double>(v.x) + 0.5 * static_cast<double>(v.y)) * unit;
        const double y = static_cast<double>(v.y) * kSqrt3Half * unit;
        vertices.push_back({x, y});
    }
    return BoundaryPolygon(DomainKind::triadic, level, std::move(vertices));
}

} // namespace snowwalk
