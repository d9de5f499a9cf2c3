#include "snowwalk/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace snowwalk {

std::string to_string(RegionKind region) {
    switch (region) {
        case RegionKind::grotto: return "grotto";
        case RegionKind::canyon: return "canyon";
        case RegionKind::prairie: return "prairie";
    }
    return "prairie";
}

const NodeMeasures& MeasureTable::at(int id) const {
    if (id < 0 || id >= static_cast<int>(nodes.size())) {
        throw DataError("unknown node id " + std::to_string(id));
    }
    return nodes[static_cast<std::size_t>(id)];
}

std::vector<double> MeasureTable::d_rat_min_values() const {
    std::vector<double> out;
    out.reserve(nodes.size());
    for (const auto& nm : nodes) out.push_back(nm.d_rat_min);
    return out;
}

std::vector<double> MeasureTable::entropy_values() const {
    std::vector<double> out;
    out.reserve(nodes.size());
    for (const auto& nm : nodes) out.push_back(nm.entropy);
    return out;
}

DirectionalDistances directional_distances(const BoundaryPolygon& poly, const Mesh& mesh, int id) {
    const Point p = mesh.position(id);
    DirectionalDistances dd;
    dd.dh_plus = poly.ray_distance({p, AxisDirection::right});
    dd.dh_minus = poly.ray_distance({p, AxisDirection::left});
    dd.dv_plus = poly.ray_distance({p, AxisDirection::up});
    dd.dv_minus = poly.ray_distance({p, AxisDirection::down});
    return dd;
}

double neighbor_value_entropy(std::span<const double> values, double class_gap) {
    if (values.size() <= 1) return 0.0;
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double total = static_cast<double>(sorted.size());
    double entropy = 0.0;
    std::size_t class_start = 0;
    for (std::size_t i = 1; i <= sorted.size(); ++i) {
        if (i == sorted.size() || sorted[i] - sorted[i - 1] > class_gap) {
            const double p = static_cast<double>(i - class_start) / total;
            entropy -= p * std::log(p);
            class_start = i;
        }
    }
    return std::max(entropy, 0.0);
}

std::vector<double> position_entropy(const Mesh& mesh, const MeasureTable& table,
                                     const MeasureConfig& config) {
    if (static_cast<int>(table.nodes.size()) != mesh.size()) {
        throw PreconditionError("measure table does not match mesh");
    }
    const double class_gap = config.entropy_class_rtol * table.max_d_rat_min;
    std::vector<double> entropy(table.nodes.size(), 0.0);
    std::vector<double> scratch;
    for (int id = 0; id < mesh.size(); ++id) {
        const auto& nb = mesh.neighbors_of(id);
        scratch.clear();
        for (int j : nb) scratch.push_back(table.nodes[static_cast<std::size_t>(j)].d_rat_min);
        entropy[static_cast<std::size_t>(id)] = neighbor_value_entropy(scratch, class_gap);
    }
    return entropy;
}

MeasureTable compute_measures(const BoundaryPolygon& poly, const Mesh& mesh,
                              const MeasureConfig& config) {
    MeasureTable table;
    table.nodes.resize(static_cast<std::size_t>(mesh.size()));
    for (int id = 0; id < mesh.size(); ++id) {
        NodeMeasures& nm = table.nodes[static_cast<std::size_t>(id)];
        nm.dd = directional_distances(poly, mesh, id);
        nm.dh = nm.dd.dh_plus + nm.dd.dh_minus;
        nm.dv = nm.dd.dv_plus + nm.dd.dv_minus;
        nm.d_min = std::min(std::min(nm.dd.dh_plus, nm.dd.dh_minus),
                            std::min(nm.dd.dv_plus, nm.dd.dv_minus));
        nm.d_rat = std::min(nm.dh / nm.dv, nm.dv / nm.dh);
        nm.d_rat_min = nm.d_rat * nm.d_min;
        table.max_d_rat_min = std::max(table.max_d_rat_min, nm.d_rat_min);
    }
    for (auto& nm : table.nodes) nm.d_rel = nm.d_rat_min / table.max_d_rat_min;

    const std::vector<double> entropy = position_entropy(mesh, table, config);
    for (int id = 0; id < mesh.size(); ++id) {
        table.nodes[static_cast<std::size_t>(id)].entropy = entropy[static_cast<std::size_t>(id)];
        table.max_entropy = std::max(table.max_entropy, entropy[static_cast<std::size_t>(id)]);
    }
    // A mesh where every node has identical neighborhoods (tiny grids) has
    // zero maximum entropy; the relative field is defined as 0 there.
    for (auto& nm : table.nodes) {
        nm.s_rel = table.max_entropy > 0.0 ? nm.entropy / table.max_entropy : 0.0;
    }
    return table;
}

RegionKind classify_region(const NodeMeasures& nm, const MeasureConfig& config) {
    if (nm.d_rat < config.theta_canyon) return RegionKind::canyon;
    if (nm.d_min < config.theta_grotto) return RegionKind::grotto;
    return RegionKind::prairie;
}

SummaryStats summary_stats(std::vector<double> values) {
    if (values.empty()) throw PreconditionError("summary_stats needs a non-empty sequence");
    std::sort(values.begin(), values.end());
    SummaryStats s;
    s.min = values.front();
    s.max = values.back();
    const std::size_t n = values.size();
    s.median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    double var = 0.0;
    for (double v : values) var += (v - s.mean) * (v - s.mean);
    s.std_dev = std::sqrt(var / static_cast<double>(n));
    s.min_over_max = s.max != 0.0 ? s.min / s.max : 0.0;
    s.median_over_max = s.max != 0.0 ? s.median / s.max : 0.0;
    s.mean_over_max = s.max != 0.0 ? s.mean / s.max : 0.0;
    return s;
}

std::vector<double> combined_field(const MeasureTable& table) {
    std::vector<double> out;
    out.reserve(table.nodes.size());
    for (const auto& nm : table.nodes) out.push_back(nm.d_rel + nm.s_rel);
    return out;
}

} // namespace snowwalk
