#include "snowwalk/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace snowwalk {

namespace {

using nlohmann::json;

[[noreturn]] void rethrow_with_position(const json::parse_error& err, const std::string& text,
                                        const std::string& what) {
    // nlohmann reports a byte offset; convert it to line/column.
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t limit = std::min(text.size(), err.byte > 0 ? err.byte - 1 : 0);
    for (std::size_t i = 0; i < limit; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    throw ParseError(what + " at line " + std::to_string(line) + ", column " +
                     std::to_string(column) + ": " + err.what());
}

json parse_checked(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& err) {
        rethrow_with_position(err, text, what);
    }
}

} // namespace

std::string format_number(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string to_json_string(const RunConfig& config) {
    json j;
    j["domain"] = to_string(config.domain);
    j["level"] = config.level;
    j["refine"] = config.refine;
    j["start"] = config.start;
    j["max_steps"] = config.max_steps;
    j["tolerance"] = config.tolerance;
    j["seed"] = config.seed;
    j["snapshot_stride"] = config.snapshot_stride;
    j["theta_canyon"] = config.theta_canyon;
    j["theta_grotto"] = config.theta_grotto;
    j["select_threshold_d"] = config.select_threshold_d;
    j["select_threshold_s"] = config.select_threshold_s;
    return j.dump(2) + "\n";
}

RunConfig run_config_from_json_string(const std::string& text) {
    const json j = parse_checked(text, "run config");
    try {
        RunConfig config;
        config.domain = domain_kind_from_string(j.at("domain").get<std::string>());
        config.level = j.at("level").get<int>();
        config.refine = j.at("refine").get<int>();
        if (j.contains("start")) config.start = j.at("start").get<std::string>();
        if (j.contains("max_steps")) config.max_steps = j.at("max_steps").get<long>();
        if (j.contains("tolerance")) config.tolerance = j.at("tolerance").get<double>();
        if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("snapshot_stride")) config.snapshot_stride = j.at("snapshot_stride").get<int>();
        if (j.contains("theta_canyon")) config.theta_canyon = j.at("theta_canyon").get<double>();
        if (j.contains("theta_grotto")) config.theta_grotto = j.at("theta_grotto").get<double>();
        if (j.contains("select_threshold_d")) {
            config.select_threshold_d = j.at("select_threshold_d").get<double>();
        }
        if (j.contains("select_threshold_s")) {
            config.select_threshold_s = j.at("select_threshold_s").get<double>();
        }
        if (config.level < 0 || config.refine < 0) throw DataError("levels must be non-negative");
        if (config.max_steps < 0) throw DataError("max_steps must be non-negative");
        if (config.tolerance <= 0.0) throw DataError("tolerance must be positive");
        return config;
    } catch (const json::exception& err) {
        throw ParseError(std::string("run config: ") + err.what());
    }
}

std::string to_json_string(const BoundaryPolygon& poly) {
    json j;
    j["domain_kind"] = to_string(poly.kind());
    j["fractal_level"] = poly.fractal_level();
    json verts = json::array();
    for (const Point& v : poly.vertices()) verts.push_back({v.x, v.y});
    j["vertices"] = std::move(verts);
    return j.dump() + "\n";
}

BoundaryPolygon polygon_from_json_string(const std::string& text) {
    const json j = parse_checked(text, "boundary polygon");
    try {
        const DomainKind kind = domain_kind_from_string(j.at("domain_kind").get<std::string>());
        const int level = j.at("fractal_level").get<int>();
        std::vector<Point> vertices;
        for (const auto& v : j.at("vertices")) {
            vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
        }
        return BoundaryPolygon(kind, level, std::move(vertices));
    } catch (const json::exception& err) {
        throw ParseError(std::string("boundary polygon: ") + err.what());
    }
}

std::string to_json_string(const Mesh& mesh) {
    json j;
    j["domain_kind"] = to_string(mesh.kind);
    j["L"] = mesh.level;
    j["R"] = mesh.refine;
    j["spacing"] = mesh.spacing;
    json nodes = json::array();
    for (int id = 0; id < mesh.size(); ++id) {
        const Point& p = mesh.positions[static_cast<std::size_t>(id)];
        nodes.push_back({{"id", id}, {"x", p.x}, {"y", p.y}});
    }
    j["nodes"] = std::move(nodes);
    j["adjacency"] = mesh.neighbors;
    return j.dump() + "\n";
}

Mesh mesh_from_json_string(const std::string& text) {
    const json j = parse_checked(text, "mesh");
    try {
        Mesh mesh;
        mesh.kind = domain_kind_from_string(j.at("domain_kind").get<std::string>());
        mesh.level = j.at("L").get<int>();
        mesh.refine = j.at("R").get<int>();
        mesh.spacing = j.at("spacing").get<double>();
        const auto& nodes = j.at("nodes");
        mesh.positions.resize(nodes.size());
        for (const auto& node : nodes) {
            const int id = node.at("id").get<int>();
            if (id < 0 || id >= static_cast<int>(nodes.size())) {
                throw DataError("mesh node id " + std::to_string(id) + " out of range");
            }
            mesh.positions[static_cast<std::size_t>(id)] = {node.at("x").get<double>(),
                                                            node.at("y").get<double>()};
        }
        mesh.neighbors = j.at("adjacency").get<std::vector<std::vector<int>>>();
        if (mesh.neighbors.size() != mesh.positions.size()) {
            throw DataError("mesh adjacency length does not match node count");
        }
        for (std::size_t i = 0; i < mesh.neighbors.size(); ++i) {
            for (int v : mesh.neighbors[i]) {
                if (v < 0 || v >= mesh.size()) {
                    throw DataError("mesh adjacency references unknown node " + std::to_string(v));
                }
            }
        }
        return mesh;
    } catch (const json::exception& err) {
        throw ParseError(std::string("mesh: ") + err.what());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path.string());
    out << content;
}

Mesh load_mesh(const std::filesystem::path& path) {
    return mesh_from_json_string(read_text_file(path));
}

void save_mesh(const Mesh& mesh, const std::filesystem::path& path) {
    write_text_file(path, to_json_string(mesh));
}

std::string measures_csv(const Mesh& mesh, const MeasureTable& table, const MeasureConfig& config) {
    std::ostringstream out;
    out << "node_id,x,y,dh_plus,dh_minus,dv_plus,dv_minus,d_min,d_rat,d_rat_min,d_rel,entropy,"
           "s_rel,region\n";
    for (int id = 0; id < mesh.size(); ++id) {
        const Point& p = mesh.positions[static_cast<std::size_t>(id)];
        const NodeMeasures& nm = table.at(id);
        out << id << ',' << format_number(p.x) << ',' << format_number(p.y) << ','
            << format_number(nm.dd.dh_plus) << ',' << format_number(nm.dd.dh_minus) << ','
            << format_number(nm.dd.dv_plus) << ',' << format_number(nm.dd.dv_minus) << ','
            << format_number(nm.d_min) << ',' << format_number(nm.d_rat) << ','
            << format_number(nm.d_rat_min) << ',' << format_number(nm.d_rel) << ','
            << format_number(nm.entropy) << ',' << format_number(nm.s_rel) << ','
            << to_string(classify_region(nm, config)) << '\n';
    }
    return out.str();
}

std::string summary_csv(const SummaryStats& d_rat_min, const SummaryStats& entropy) {
    std::ostringstream out;
    out << "statistic,d_rat_min,entropy\n";
    const auto row = [&](const char* name, double a, double b) {
        out << name << ',' << format_number(a) << ',' << format_number(b) << '\n';
    };
    // std is the population standard deviation.
    row("maximum", d_rat_min.max, entropy.max);
    row("minimum", d_rat_min.min, entropy.min);
    row("minimum_over_maximum", d_rat_min.min_over_max, entropy.min_over_max);
    row("median", d_rat_min.median, entropy.median);
    row("mean", d_rat_min.mean, entropy.mean);
    row("standard_deviation", d_rat_min.std_dev, entropy.std_dev);
    row("median_over_maximum", d_rat_min.median_over_max, entropy.median_over_max);
    row("mean_over_maximum", d_rat_min.mean_over_max, entropy.mean_over_max);
    return out.str();
}

std::string metrics_csv(const std::vector<WalkMetrics>& rows,
                        const std::vector<std::pair<std::string, std::string>>& header) {
    std::ostringstream out;
    for (const auto& [key, value] : header) out << "# " << key << "=" << value << '\n';
    out << "t,pr,diam,d_ha_rel,s_ha_rel,diam_ha_rel,ha_count\n";
    for (const WalkMetrics& row : rows) {
        out << row.t << ',' << format_number(row.pr) << ',' << format_number(row.diam) << ','
            << format_number(row.d_ha_rel) << ',' << format_number(row.s_ha_rel) << ','
            << format_number(row.diam_ha_rel) << ',' << row.ha_count << '\n';
    }
    return out.str();
}

std::string asymptotics_csv(const std::vector<AsymptoticRow>& rows) {
    std::ostringstream out;
    out << "metric,value,cycle_a,cycle_b\n";
    for (const AsymptoticRow& row : rows) {
        out << row.metric << ',' << format_number(row.value) << ',' << format_number(row.cycle_a)
            << ',' << format_number(row.cycle_b) << '\n';
    }
    return out.str();
}

std::string spectrum_csv(const SpectralSummary& summary) {
    std::ostringstream out;
    out << "# contains_minus_one=" << (summary.has_minus_one ? "true" : "false") << '\n';
    out << "# spectral_gap=" << format_number(summary.spectral_gap) << '\n';
    out << "rank,eigenvalue\n";
    for (std::size_t i = 0; i < summary.eigenvalues.size(); ++i) {
        out << (i + 1) << ',' << format_number(summary.eigenvalues[i]) << '\n';
    }
    return out.str();
}

std::string density_csv(std::span<const double> eta) {
    std::ostringstream out;
    out << "node_id,eta\n";
    for (std::size_t i = 0; i < eta.size(); ++i) {
        out << i << ',' << format_number(eta[i]) << '\n';
    }
    return out.str();
}

std::vector<double> density_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<double> eta;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            continue; // header
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError("density CSV row without comma: " + line);
        eta.push_back(std::stod(line.substr(comma + 1)));
    }
    return eta;
}

} // namespace snowwalk
