#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "snowwalk/errors.hpp"

namespace snowwalk {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }

enum class DomainKind { square, triadic };

std::string to_string(DomainKind kind);
DomainKind domain_kind_from_string(const std::string& name);

enum class PointClass { interior, boundary, exterior };

enum class AxisDirection { right, left, up, down };

std::string to_string(AxisDirection dir);

/// Axis-aligned ray used for the directional boundary-distance queries.
/// The origin must be strictly inside the polygon when a distance is taken.
struct AxisRay {
    Point origin;
    AxisDirection direction = AxisDirection::right;
};

struct BoundingBox {
    Point min;
    Point max;
};

/// Closed simple polygon bounding a prefractal domain. Vertices are stored
/// counter-clockwise (interior on the left); the closing edge from the last
/// vertex back to the first is implicit. Immutable after construction, so
/// queries are safe from any number of threads.
class BoundaryPolygon {
public:
    /// Distance below which a point is classified as lying on the boundary.
    static constexpr double kBoundaryTolerance = 1e-12;

    BoundaryPolygon(DomainKind kind, int fractal_level, std::vector<Point> vertices);

    DomainKind kind() const { return kind_; }
    int fractal_level() const { return level_; }
    const std::vector<Point>& vertices() const { return vertices_; }

    std::size_t edge_count() const { return vertices_.size(); }
    /// Endpoints of edge i, running from vertex i to vertex i+1 (mod n).
    std::pair<Point, Point> edge(std::size_t i) const;
    double perimeter() const;
    BoundingBox bounding_box() const { return bbox_; }

    /// Classify a point as interior / boundary / exterior. Points within
    /// kBoundaryTolerance of an edge report boundary; otherwise the class is
    /// decided by even-odd crossing parity with a half-open edge convention.
    PointClass classify(Point p) const;

    /// Distance from the ray origin to the nearest boundary intersection.
    /// The origin must be strictly interior. A ray collinear with an edge
    /// reports the distance to the nearest point of that edge.
    double ray_distance(const AxisRay& ray) const;

private:
    DomainKind kind_;
    int level_;
    std::vector<Point> vertices_;
    BoundingBox bbox_;
};

/// Default cap on generated boundary vertices. Square level 7 (33.5M edges)
/// and beyond are rejected.
inline constexpr std::size_t kDefaultVertexCap = 8'000'000;

/// Quadratic Koch (Minkowski) rewrite: each edge of length s becomes 8 edges
/// of length s/4, bumping first into the interior and then out of it.
/// Level 0 is the unit square [0,1]^2.
BoundaryPolygon generate_square_boundary(int level, std::size_t vertex_cap = kDefaultVertexCap);

/// Standard triadic Koch rewrite: each edge of length s becomes 4 edges of
/// length s/3 with the bump pointing away from the interior. Level 0 is the
/// equilateral triangle of side 1 with horizontal base and apex at
/// (1/2, sqrt(3)/2).
BoundaryPolygon generate_triadic_boundary(int level, std::size_t vertex_cap = kDefaultVertexCap);

} // namespace snowwalk
