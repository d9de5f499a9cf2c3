#pragma once

#include <span>
#include <vector>

#include "snowwalk/diffusion.hpp"

namespace snowwalk {

/// Participation ratio 1 / sum(eta_i^4). Throws PreconditionError for an
/// identically zero density.
double participation_ratio(std::span<const double> eta);

/// Discretized participation volume (sum |psi|^2 vol)^2 / (sum |psi|^4 vol).
double participation_volume(std::span<const double> psi, double cell_volume);

/// Nodes with eta_i strictly above (3/4) max eta. Never empty for a valid
/// density.
std::vector<int> high_amplitude_set(std::span<const double> eta);

/// Max Euclidean distance from `start` among nodes whose density exceeds
/// `support_threshold`. A walk's DIAM(t) is the running maximum of this.
double support_radius(const Mesh& mesh, std::span<const double> eta, int start,
                      double support_threshold = 1e-12);

/// Diameter (max pairwise distance) of a node set; 0 for fewer than 2 nodes.
double set_diameter(const Mesh& mesh, std::span<const int> node_ids);

struct HaMetrics {
    double d_ha_rel = 0.0;    // mean d_rat_min over HA nodes / domain max
    double s_ha_rel = 0.0;    // mean entropy over HA nodes / domain max
    double diam_ha_rel = 0.0; // HA set diameter / DIAM(t); 0 when DIAM(t) = 0
    int ha_count = 0;
};

HaMetrics ha_metrics(std::span<const double> eta, const MeasureTable& table, const Mesh& mesh,
                     double diam_t);

struct WalkMetrics {
    long t = 0;
    double pr = 0.0;
    double diam = 0.0;
    double d_ha_rel = 0.0;
    double s_ha_rel = 0.0;
    double diam_ha_rel = 0.0;
    int ha_count = 0;
};

/// Relative measures of a walk's starting node.
struct StartReport {
    int node = -1;
    double d_rel_start = 0.0;
    double s_rel_start = 0.0;
};

StartReport start_report(const MeasureTable& table, int node);

enum class StartSelector { low_d_low_s, high_d_high_s, high_d_low_s, low_d_high_s };

std::string to_string(StartSelector selector);
StartSelector start_selector_from_string(const std::string& name);

/// Lowest node id whose (d_rel, s_rel) falls in the selector's quadrant:
/// "low" means strictly below the threshold, "high" strictly above. Throws
/// SelectionError when no node qualifies.
int select_start(const MeasureTable& table, StartSelector selector, double threshold_d = 0.5,
                 double threshold_s = 0.5);

/// Per-step metrics recorder for a walk; feed it every density in time order
/// (it maintains the running DIAM maximum).
class MetricsRecorder {
public:
    MetricsRecorder(const Mesh& mesh, const MeasureTable& table, int start,
                    double support_threshold = 1e-12);

    void observe(long t, std::span<const double> eta);
    const std::vector<WalkMetrics>& rows() const { return rows_; }
    WalkMetrics compute_only(long t, std::span<const double> eta) const;

private:
    const Mesh& mesh_;
    const MeasureTable& table_;
    int start_;
    double support_threshold_;
    double running_diam_ = 0.0;
    std::vector<WalkMetrics> rows_;
};

} // namespace snowwalk
