#pragma once

#include <span>
#include <string>
#include <vector>

#include "snowwalk/lattice.hpp"

namespace snowwalk {

/// The four axis distances from a node to the boundary.
struct DirectionalDistances {
    double dh_plus = 0.0;  // +x
    double dh_minus = 0.0; // -x
    double dv_plus = 0.0;  // +y
    double dv_minus = 0.0; // -y
};

struct NodeMeasures {
    DirectionalDistances dd;
    double dh = 0.0;        // dh_plus + dh_minus
    double dv = 0.0;        // dv_plus + dv_minus
    double d_min = 0.0;     // min of the four directional distances
    double d_rat = 0.0;     // min(dh/dv, dv/dh), in (0, 1]
    double d_rat_min = 0.0; // d_rat * d_min
    double d_rel = 0.0;     // d_rat_min / max over the mesh
    double entropy = 0.0;   // position entropy S
    double s_rel = 0.0;     // entropy / max over the mesh
};

enum class RegionKind { grotto, canyon, prairie };

std::string to_string(RegionKind region);

struct MeasureConfig {
    double theta_canyon = 0.25; // d_rat below this: canyon
    double theta_grotto = 0.1;  // otherwise d_min below this: grotto
    // Two neighbor d_rat_min values share an equality class when their gap
    // is at most this fraction of the domain maximum.
    double entropy_class_rtol = 1e-9;
};

/// Per-node measures for one mesh, plus the domain maxima used for the
/// relative fields. Written once, then read-only.
struct MeasureTable {
    std::vector<NodeMeasures> nodes;
    double max_d_rat_min = 0.0;
    double max_entropy = 0.0;

    const NodeMeasures& at(int id) const;
    std::vector<double> d_rat_min_values() const;
    std::vector<double> entropy_values() const;
};

/// Axis-ray distances from one node to the boundary.
DirectionalDistances directional_distances(const BoundaryPolygon& poly, const Mesh& mesh, int id);

/// Populate every node's distances, ratio quantities, relative values and
/// position entropy.
MeasureTable compute_measures(const BoundaryPolygon& poly, const Mesh& mesh,
                              const MeasureConfig& config = {});

/// Position entropy per node: neighbors' d_rat_min values are grouped into
/// equality classes, and S = -sum P ln P over the class distribution.
/// Nodes with at most one neighbor report 0.
std::vector<double> position_entropy(const Mesh& mesh, const MeasureTable& table,
                                     const MeasureConfig& config = {});

/// Entropy of one neighbor-value multiset; `class_gap` is the absolute gap
/// below which two sorted values fall into the same class.
double neighbor_value_entropy(std::span<const double> values, double class_gap);

RegionKind classify_region(const NodeMeasures& nm, const MeasureConfig& config = {});

struct SummaryStats {
    double max = 0.0;
    double min = 0.0;
    double min_over_max = 0.0;
    double median = 0.0;
    double mean = 0.0;
    double std_dev = 0.0; // population standard deviation
    double median_over_max = 0.0;
    double mean_over_max = 0.0;
};

/// Summary statistics of a non-empty value sequence. The median of an even
/// count is the mean of the two central order statistics.
SummaryStats summary_stats(std::vector<double> values);

/// Per-node d_rel + s_rel, in [0, 2].
std::vector<double> combined_field(const MeasureTable& table);

} // namespace snowwalk
