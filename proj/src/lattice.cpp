#include "snowwalk/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <unordered_map>

namespace snowwalk {

namespace {

constexpr double kSqrt3Half = 0.8660254037844386467637231707529362;

std::uint64_t cell_key(std::int64_t i, std::int64_t j) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(j));
}

struct Candidate {
    std::int64_t i; // column index
    std::int64_t j; // row index
    Point p;
};

} // namespace

std::size_t Mesh::edge_count() const {
    std::size_t twice = 0;
    for (const auto& nb : neighbors) twice += nb.size();
    return twice / 2;
}

const Point& Mesh::position(int id) const {
    if (id < 0 || id >= size()) throw DataError("unknown node id " + std::to_string(id));
    return positions[static_cast<std::size_t>(id)];
}

const std::vector<int>& Mesh::neighbors_of(int id) const {
    if (id < 0 || id >= size()) throw DataError("unknown node id " + std::to_string(id));
    return neighbors[static_cast<std::size_t>(id)];
}

double lattice_spacing(DomainKind kind, int level, int refine) {
    if (level < 0 || refine < 0) throw PreconditionError("levels must be non-negative");
    double h = 1.0;
    if (kind == DomainKind::square) {
        for (int k = 0; k < 2 * level + refine; ++k) h *= 0.5;
    } else {
        for (int k = 0; k < level + refine; ++k) h /= 3.0;
    }
    return h;
}

Mesh build_mesh(const BoundaryPolygon& poly, int refine) {
    if (refine < 0) throw PreconditionError("refinement level must be non-negative");
    const DomainKind kind = poly.kind();
    const double h = lattice_spacing(kind, poly.fractal_level(), refine);
    const BoundingBox bbox = poly.bounding_box();

    // Enumerate lattice points inside the bounding box and keep the strictly
    // interior ones, in scanline order (increasing y, then x).
    std::vector<Candidate> kept;
    if (kind == DomainKind::square) {
        const auto i_lo = static_cast<std::int64_t>(std::floor(bbox.min.x / h)) - 1;
        const auto i_hi = static_cast<std::int64_t>(std::ceil(bbox.max.x / h)) + 1;
        const auto j_lo = static_cast<std::int64_t>(std::floor(bbox.min.y / h)) - 1;
        const auto j_hi = static_cast<std::int64_t>(std::ceil(bbox.max.y / h)) + 1;
        for (std::int64_t j = j_lo; j <= j_hi; ++j) {
            for (std::int64_t i = i_lo; i <= i_hi; ++i) {
                const Point p{static_cast<double>(i) * h, static_cast<double>(j) * h};
                if (poly.classify(p) == PointClass::interior) kept.push_back({i, j, p});
            }
        }
    } else {
        const double row = kSqrt3Half * h;
        const auto j_lo = static_cast<std::int64_t>(std::floor(bbox.min.y / row)) - 1;
        const auto j_hi = static_cast<std::int64_t>(std::ceil(bbox.max.y / row)) + 1;
        for (std::int64_t j = j_lo; j <= j_hi; ++j) {
            const double y = static_cast<double>(j) * row;
            const double off = 0.5 * static_cast<double>(j);
            const auto i_lo = static_cast<std::int64_t>(std::floor(bbox.min.x / h - off)) - 1;
            const auto i_hi = static_cast<std::int64_t>(std::ceil(bbox.max.x / h - off)) + 1;
            for (std::int64_t i = i_lo; i <= i_hi; ++i) {
                const Point p{(static_cast<double>(i) + off) * h, y};
                if (poly.classify(p) == PointClass::interior) kept.push_back({i, j, p});
            }
        }
    }
    if (kept.empty()) {
        throw DegenerateMeshError("no lattice point lies strictly inside the boundary");
    }

    std::unordered_map<std::uint64_t, int> index;
    index.reserve(kept.size() * 2);
    for (std::size_t id = 0; id < kept.size(); ++id) {
        index.emplace(cell_key(kept[id].i, kept[id].j), static_cast<int>(id));
    }

    static constexpr int square_offsets[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    static constexpr int triadic_offsets[6][2] = {{1, 0},  {-1, 0}, {0, 1},
                                                  {0, -1}, {1, -1}, {-1, 1}};
    const auto* offsets = kind == DomainKind::square ? square_offsets : triadic_offsets;
    const int degree = kind == DomainKind::square ? 4 : 6;

    std::vector<std::vector<int>> adjacency(kept.size());
    for (std::size_t id = 0; id < kept.size(); ++id) {
        for (int k = 0; k < degree; ++k) {
            const auto it = index.find(cell_key(kept[id].i + offsets[k][0], kept[id].j + offsets[k][1]));
            if (it != index.end()) adjacency[id].push_back(it->second);
        }
        std::sort(adjacency[id].begin(), adjacency[id].end());
    }

    // Keep only the largest connected component.
    std::vector<int> component(kept.size(), -1);
    int n_components = 0;
    for (std::size_t seed = 0; seed < kept.size(); ++seed) {
        if (component[seed] >= 0) continue;
        const int label = n_components++;
        std::deque<int> queue{static_cast<int>(seed)};
        component[seed] = label;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int v : adjacency[static_cast<std::size_t>(u)]) {
                if (component[static_cast<std::size_t>(v)] < 0) {
                    component[static_cast<std::size_t>(v)] = label;
                    queue.push_back(v);
                }
            }
        }
    }
    std::vector<std::size_t> component_size(static_cast<std::size_t>(n_components), 0);
    for (int label : component) ++component_size[static_cast<std::size_t>(label)];
    const int best_label = static_cast<int>(
        std::max_element(component_size.begin(), component_size.end()) - component_size.begin());

    std::vector<int> remap(kept.size(), -1);
    Mesh mesh;
    mesh.kind = kind;
    mesh.level = poly.fractal_level();
    mesh.refine = refine;
    mesh.spacing = h;
    for (std::size_t id = 0; id < kept.size(); ++id) {
        if (component[id] != best_label) continue;
        remap[id] = mesh.size();
        mesh.positions.push_back(kept[id].p);
    }
    mesh.neighbors.resize(mesh.positions.size());
    for (std::size_t id = 0; id < kept.size(); ++id) {
        if (remap[id] < 0) continue;
        auto& out = mesh.neighbors[static_cast<std::size_t>(remap[id])];
        for (int v : adjacency[id]) out.push_back(remap[static_cast<std::size_t>(v)]);
        std::sort(out.begin(), out.end());
    }
    return mesh;
}

double euclidean_distance(const Mesh& mesh, int i, int j) {
    const Point& a = mesh.position(i);
    const Point& b = mesh.position(j);
    return std::hypot(b.x - a.x, b.y - a.y);
}

} // namespace snowwalk
