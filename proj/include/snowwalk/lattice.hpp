#pragma once

#include <vector>

#include "snowwalk/geometry.hpp"

namespace snowwalk {

/// Interior lattice discretization of a prefractal domain.
///
/// Square domains use a square lattice of spacing H = (1/2)^(2L+R) anchored
/// at the origin; triadic domains use a triangular lattice of spacing
/// H = (1/3)^(L+R) with one row along the triangle base. Only points strictly
/// inside the boundary are kept, restricted to the largest connected
/// component. Node ids run scanline order: increasing y, then increasing x.
/// Immutable after construction.
struct Mesh {
    DomainKind kind = DomainKind::square;
    int level = 0;
    int refine = 0;
    double spacing = 1.0;
    std::vector<Point> positions;            // node id -> coordinates
    std::vector<std::vector<int>> neighbors; // sorted, symmetric adjacency

    int size() const { return static_cast<int>(positions.size()); }
    std::size_t edge_count() const;
    const Point& position(int id) const;
    const std::vector<int>& neighbors_of(int id) const;
};

/// Grid spacing for a domain kind at fractal level L and refinement R.
double lattice_spacing(DomainKind kind, int level, int refine);

/// Discretize the interior of `poly` at refinement level `refine`.
/// Throws DegenerateMeshError when no lattice point lies strictly inside.
Mesh build_mesh(const BoundaryPolygon& poly, int refine);

/// Straight-line distance between two nodes. Throws DataError on bad ids.
double euclidean_distance(const Mesh& mesh, int i, int j);

} // namespace snowwalk
