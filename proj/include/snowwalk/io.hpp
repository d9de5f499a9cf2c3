#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "snowwalk/measures.hpp"
#include "snowwalk/metrics.hpp"

namespace snowwalk {

/// Fixed-width numeric formatting used in every CSV: 17 significant digits,
/// enough for lossless double round-trips.
std::string format_number(double value);

/// One run of the walk engine, serialized alongside every output directory.
struct RunConfig {
    DomainKind domain = DomainKind::square;
    int level = 0;
    int refine = 0;
    std::string start = "select:low_d_low_s"; // "id:<n>", "select:<name>", or "pi"
    long max_steps = 100000;
    double tolerance = 1e-12;
    std::uint64_t seed = 0;
    int snapshot_stride = 0;
    double theta_canyon = 0.25;
    double theta_grotto = 0.1;
    double select_threshold_d = 0.5;
    double select_threshold_s = 0.5;
};

std::string to_json_string(const RunConfig& config);
RunConfig run_config_from_json_string(const std::string& text);

// Polygon <-> JSON
std::string to_json_string(const BoundaryPolygon& poly);
BoundaryPolygon polygon_from_json_string(const std::string& text);

// Mesh <-> JSON
std::string to_json_string(const Mesh& mesh);
Mesh mesh_from_json_string(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

Mesh load_mesh(const std::filesystem::path& path);
void save_mesh(const Mesh& mesh, const std::filesystem::path& path);

/// Per-node measures CSV (one row per node, fixed column order).
std::string measures_csv(const Mesh& mesh, const MeasureTable& table, const MeasureConfig& config);

/// Eight-row summary over d_rat_min and entropy.
std::string summary_csv(const SummaryStats& d_rat_min, const SummaryStats& entropy);

/// Walk metrics time series with a '#'-prefixed header block.
std::string metrics_csv(const std::vector<WalkMetrics>& rows,
                        const std::vector<std::pair<std::string, std::string>>& header);

/// Asymptotic metric values; for 2-cycles, `value` is the mean of the two
/// cycle values given in cycle_a / cycle_b.
struct AsymptoticRow {
    std::string metric;
    double value = 0.0;
    double cycle_a = 0.0;
    double cycle_b = 0.0;
};

std::string asymptotics_csv(const std::vector<AsymptoticRow>& rows);

std::string spectrum_csv(const SpectralSummary& summary);

std::string density_csv(std::span<const double> eta);
std::vector<double> density_from_csv(const std::string& text);

} // namespace snowwalk
