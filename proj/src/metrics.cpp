#include "snowwalk/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace snowwalk {

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew monotone chain; returns hull vertices counter-clockwise.
std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<Point> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

double squared_distance(const Point& a, const Point& b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    return dx * dx + dy * dy;
}

// Rotating calipers on the hull.
double hull_diameter(const std::vector<Point>& hull) {
    const std::size_t m = hull.size();
    if (m < 2) return 0.0;
    if (m == 2) return std::sqrt(squared_distance(hull[0], hull[1]));
    double best = 0.0;
    std::size_t j = 1;
    for (std::size_t i = 0; i < m; ++i) {
        const Point& a = hull[i];
        const Point& b = hull[(i + 1) % m];
        while (true) {
            const std::size_t jn = (j + 1) % m;
            const double edge_x = b.x - a.x;
            const double edge_y = b.y - a.y;
            const double adv = edge_x * (hull[jn].y - hull[j].y) - edge_y * (hull[jn].x - hull[j].x);
            if (adv > 0) {
                j = jn;
            } else {
                break;
            }
        }
        best = std::max(best, squared_distance(a, hull[j]));
        best = std::max(best, squared_distance(b, hull[j]));
    }
    return std::sqrt(best);
}

} // namespace

double participation_ratio(std::span<const double> eta) {
    double fourth = 0.0;
    for (double v : eta) fourth += v * v * v * v;
    if (fourth <= 0.0) throw PreconditionError("participation ratio of an all-zero density");
    return 1.0 / fourth;
}

double participation_volume(std::span<const double> psi, double cell_volume) {
    if (cell_volume <= 0.0) throw PreconditionError("cell volume must be positive");
    double second = 0.0;
    double fourth = 0.0;
    for (double v : psi) {
        const double sq = v * v;
        second += sq * cell_volume;
        fourth += sq * sq * cell_volume;
    }
    if (fourth <= 0.0) throw PreconditionError("participation volume of an all-zero vector");
    return second * second / fourth;
}

std::vector<int> high_amplitude_set(std::span<const double> eta) {
    double max_eta = 0.0;
    for (double v : eta) max_eta = std::max(max_eta, std::abs(v));
    if (max_eta <= 0.0) throw PreconditionError("high-amplitude set of an all-zero density");
    const double threshold = 0.75 * max_eta;
    std::vector<int> out;
    for (std::size_t i = 0; i < eta.size(); ++i) {
        if (std::abs(eta[i]) > threshold) out.push_back(static_cast<int>(i));
    }
    return out;
}

double support_radius(const Mesh& mesh, std::span<const double> eta, int start,
                      double support_threshold) {
    const Point origin = mesh.position(start);
    double best = 0.0;
    for (std::size_t i = 0; i < eta.size(); ++i) {
        if (eta[i] > support_threshold) {
            const Point& p = mesh.positions[i];
            best = std::max(best, squared_distance(origin, p));
        }
    }
    return std::sqrt(best);
}

double set_diameter(const Mesh& mesh, std::span<const int> node_ids) {
    if (node_ids.size() < 2) return 0.0;
    std::vector<Point> pts;
    pts.reserve(node_ids.size());
    for (int id : node_ids) pts.push_back(mesh.position(id));
    return hull_diameter(convex_hull(std::move(pts)));
}

HaMetrics ha_metrics(std::span<const double> eta, const MeasureTable& table, const Mesh& mesh,
                     double diam_t) {
    const std::vector<int> ha = high_amplitude_set(eta);
    HaMetrics m;
    m.ha_count = static_cast<int>(ha.size());
    double sum_d = 0.0;
    double sum_s = 0.0;
    for (int id : ha) {
        sum_d += table.at(id).d_rat_min;
        sum_s += table.at(id).entropy;
    }
    const double count = static_cast<double>(ha.size());
    m.d_ha_rel = sum_d / count / table.max_d_rat_min;
    m.s_ha_rel = table.max_entropy > 0.0 ? sum_s / count / table.max_entropy : 0.0;
    const double diam_ha = set_diameter(mesh, ha);
    m.diam_ha_rel = diam_t > 0.0 ? diam_ha / diam_t : 0.0;
    return m;
}

StartReport start_report(const MeasureTable& table, int node) {
    const NodeMeasures& nm = table.at(node);
    StartReport report;
    report.node = node;
    report.d_rel_start = nm.d_rel;
    report.s_rel_start = nm.s_rel;
    return report;
}

std::string to_string(StartSelector selector) {
    switch (selector) {
        case StartSelector::low_d_low_s: return "low_d_low_s";
        case StartSelector::high_d_high_s: return "high_d_high_s";
        case StartSelector::high_d_low_s: return "high_d_low_s";
        case StartSelector::low_d_high_s: return "low_d_high_s";
    }
    return "low_d_low_s";
}

StartSelector start_selector_from_string(const std::string& name) {
    if (name == "low_d_low_s") return StartSelector::low_d_low_s;
    if (name == "high_d_high_s") return StartSelector::high_d_high_s;
    if (name == "high_d_low_s") return StartSelector::high_d_low_s;
    if (name == "low_d_high_s") return StartSelector::low_d_high_s;
    throw DataError("unknown start selector: '" + name + "'");
}

int select_start(const MeasureTable& table, StartSelector selector, double threshold_d,
                 double threshold_s) {
    const bool want_high_d =
        selector == StartSelector::high_d_high_s || selector == StartSelector::high_d_low_s;
    const bool want_high_s =
        selector == StartSelector::high_d_high_s || selector == StartSelector::low_d_high_s;
    for (std::size_t id = 0; id < table.nodes.size(); ++id) {
        const NodeMeasures& nm = table.nodes[id];
        const bool d_ok = want_high_d ? nm.d_rel > threshold_d : nm.d_rel < threshold_d;
        const bool s_ok = want_high_s ? nm.s_rel > threshold_s : nm.s_rel < threshold_s;
        if (d_ok && s_ok) return static_cast<int>(id);
    }
    throw SelectionError("no node satisfies selector " + to_string(selector) + " at thresholds d=" +
                         std::to_string(threshold_d) + ", s=" + std::to_string(threshold_s));
}

MetricsRecorder::MetricsRecorder(const Mesh& mesh, const MeasureTable& table, int start,
                                 double support_threshold)
    : mesh_(mesh), table_(table), start_(start), support_threshold_(support_threshold) {
    mesh.position(start); // validate
}

WalkMetrics MetricsRecorder::compute_only(long t, std::span<const double> eta) const {
    WalkMetrics row;
    row.t = t;
    row.pr = participation_ratio(eta);
    const double radius = support_radius(mesh_, eta, start_, support_threshold_);
    row.diam = std::max(running_diam_, radius);
    const HaMetrics ha = ha_metrics(eta, table_, mesh_, row.diam);
    row.d_ha_rel = ha.d_ha_rel;
    row.s_ha_rel = ha.s_ha_rel;
    row.diam_ha_rel = ha.diam_ha_rel;
    row.ha_count = ha.ha_count;
    return row;
}

void MetricsRecorder::observe(long t, std::span<const double> eta) {
    WalkMetrics row = compute_only(t, eta);
    running_diam_ = row.diam;
    rows_.push_back(row);
}

} // namespace snowwalk
