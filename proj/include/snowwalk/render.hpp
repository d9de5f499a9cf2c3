#pragma once

#include <span>
#include <string>

#include "snowwalk/lattice.hpp"

namespace snowwalk {

/// SVG heatmap of a per-node scalar field: one filled lattice cell per node
/// (squares on the square lattice, hexagons on the triangular one), a linear
/// color ramp from the field minimum to maximum, a legend, and the boundary
/// outline. Output is a deterministic function of the inputs.
std::string heatmap_svg(const Mesh& mesh, const BoundaryPolygon& poly,
                        std::span<const double> field, const std::string& title);

} // namespace snowwalk
