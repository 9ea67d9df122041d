#include "railnet/report.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace railnet {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw DataError(DataError::Code::Config, msg); }

std::vector<std::string> string_list(const json& v, const std::string& what) {
  if (!v.is_array()) config_error(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) config_error(what + " must be an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DataError(DataError::Code::Io, "cannot open \"" + p.string() + "\"");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class OutputDir {
 public:
  explicit OutputDir(ReportManifest& manifest) : manifest_(manifest) {
    std::error_code ec;
    fs::create_directories(manifest_.output_dir, ec);
    if (ec) throw DataError(DataError::Code::Io, "cannot create output directory \"" + manifest_.output_dir.string() + "\"");
  }

  void write(const std::string& name, const std::string& content) {
    std::ofstream out(manifest_.output_dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError(DataError::Code::Io, "cannot write \"" + (manifest_.output_dir / name).string() + "\"");
    out << content;
    if (!out) throw DataError(DataError::Code::Io, "write failed for \"" + name + "\"");
    manifest_.files.push_back(name);
  }

 private:
  ReportManifest& manifest_;
};

bool wants(const ReportConfig& c, std::string_view analysis) {
  return std::find(c.analyses.begin(), c.analyses.end(), analysis) != c.analyses.end();
}

}  // namespace

ReportConfig parse_report_config(std::string_view doc, const fs::path& base_dir) {
  json root;
  try {
    root = json::parse(doc.begin(), doc.end());
  } catch (const json::parse_error& e) {
    config_error(std::string("config syntax error: ") + e.what());
  }
  if (!root.is_object()) config_error("config must be a JSON object");
  static const std::set<std::string> keys{"network", "lenient",        "weights",   "threads", "output_dir",
                                          "analyses", "redundancy",    "redistribution", "scenarios", "busiest"};
  for (const auto& [key, _] : root.items())
    if (!keys.count(key)) config_error("unknown config key \"" + key + "\"");

  ReportConfig c;
  if (!root.contains("network") || !root["network"].is_string()) config_error("config needs a \"network\" path");
  c.network = base_dir / root["network"].get<std::string>();
  if (!root.contains("output_dir") || !root["output_dir"].is_string()) config_error("config needs an \"output_dir\"");
  c.output_dir = base_dir / root["output_dir"].get<std::string>();
  c.lenient = root.value("lenient", false);
  if (root.contains("threads")) {
    if (!root["threads"].is_number_unsigned()) config_error("\"threads\" must be a non-negative integer");
    c.threads = root["threads"].get<unsigned>();
  }
  if (root.contains("weights")) {
    const auto& w = root["weights"];
    std::vector<std::string> names = w.is_string() ? std::vector<std::string>{w.get<std::string>()} : string_list(w, "\"weights\"");
    c.weights.clear();
    for (const auto& name : names) {
      if (name == "both") {
        c.weights = {WeightKind::Distance, WeightKind::Time};
        break;
      }
      try {
        c.weights.push_back(parse_weight_kind(name));
      } catch (const DataError& e) {
        config_error(e.what());
      }
    }
    if (c.weights.empty()) config_error("\"weights\" must not be empty");
  }

  if (!root.contains("analyses")) config_error("config needs an \"analyses\" list");
  c.analyses = string_list(root["analyses"], "\"analyses\"");
  if (c.analyses.empty()) config_error("\"analyses\" must not be empty");
  for (const auto& a : c.analyses) {
    const auto& known = known_analyses();
    if (std::find(known.begin(), known.end(), a) == known.end()) config_error("unknown analysis \"" + a + "\"");
  }

  if (root.contains("redundancy")) {
    const auto& r = root["redundancy"];
    if (!r.is_object()) config_error("\"redundancy\" must be an object");
    if (r.contains("targets")) c.redundancy_targets = string_list(r["targets"], "\"redundancy.targets\"");
    c.redundancy_unrestricted = r.value("unrestricted", false);
    c.redundancy_per_v = r.value("per_v", false);
  }
  if (root.contains("redistribution")) {
    const auto& r = root["redistribution"];
    if (!r.is_object()) config_error("\"redistribution\" must be an object");
    if (r.contains("disrupted")) c.disrupted = string_list(r["disrupted"], "\"redistribution.disrupted\"");
    if (r.contains("watched")) c.watched = string_list(r["watched"], "\"redistribution.watched\"");
  }
  if (root.contains("scenarios")) {
    if (!root["scenarios"].is_array()) config_error("\"scenarios\" must be an array");
    for (const auto& s : root["scenarios"]) {
      std::vector<ScenarioSpec> parsed =
          s.is_string() ? load_scenarios((base_dir / s.get<std::string>()).string(), {c.lenient})
                        : parse_scenarios(s.dump(), {c.lenient});
      c.scenarios.insert(c.scenarios.end(), parsed.begin(), parsed.end());
    }
  }
  if (root.contains("busiest")) {
    if (!root["busiest"].is_string()) config_error("\"busiest\" must be a section id or \"auto\"");
    const auto b = root["busiest"].get<std::string>();
    if (b != "auto") c.busiest = b;
  }

  if (wants(c, "redundancy") && c.redundancy_targets.empty())
    config_error("analysis \"redundancy\" needs redundancy.targets");
  if (wants(c, "redistribution") && (c.disrupted.empty() || c.watched.empty()))
    config_error("analysis \"redistribution\" needs redistribution.disrupted and redistribution.watched");
  if (wants(c, "compare") && c.scenarios.empty()) config_error("analysis \"compare\" needs scenarios");
  return c;
}

ReportConfig load_report_config(const fs::path& path) {
  return parse_report_config(read_file(path), path.parent_path());
}

ReportManifest run_report(const ReportConfig& config) {
  ReportManifest manifest;
  manifest.output_dir = config.output_dir;
  OutputDir dir(manifest);
  const ParallelOptions parallel{config.threads};

  try {
    const RawNetwork network = load_network(config.network.string(), {config.lenient});
    const std::string network_id = network_fingerprint(network);
    const ValidationReport validation = validate(network);

    std::ostringstream summary;
    summary << "network " << config.network.filename().string() << " (" << network_id << ")\n";
    summary << format_validation(validation);

    for (WeightKind w : config.weights) {
      const std::string suffix = config.weights.size() > 1 ? "_" + std::string(to_string(w)) : "";
      const ExpandedGraph graph = expand(network, w);
      const ResilienceEngine engine(graph, parallel);
      const PathMatrix& baseline = engine.baseline();
      const SectionUsage flows = section_flows(baseline);

      summary << "\n[" << to_string(w) << "]\n";
      summary << "port nodes: " << graph.node_count() << ", arcs: " << graph.active_arc_count() << "\n";
      summary << "pairs: " << format_grouped(static_cast<std::int64_t>(baseline.pair_count()));
      if (const auto unreachable = unreachable_pairs(baseline); unreachable > 0)
        summary << " (" << unreachable << " unreachable)\n";
      else
        summary << "\ntotal network cost: " << format_fixed(total_cost(baseline), 3) << " " << unit(w) << "\n";
      if (!flows.section_ids.empty()) {
        const auto busiest = busiest_section(flows);
        summary << "busiest section: " << busiest << " ("
                << format_fixed(flows.share_percent(*flows.find(busiest)), 2) << "% of paths)\n";
      }

      if (wants(config, "flows")) dir.write("flows" + suffix + ".csv", flows_csv(flows));
      if (wants(config, "nri")) dir.write("nri" + suffix + ".csv", nri_csv(engine.nri_all()));
      if (wants(config, "redundancy")) {
        RedundancyOptions opts;
        opts.unrestricted = config.redundancy_unrestricted;
        const auto results = engine.redundancy_sweep(config.redundancy_targets, opts);
        dir.write("redundancy" + suffix + ".json", redundancy_json(results, config.redundancy_per_v));
        summary << format_redundancy(results, false, false);
      }
      if (wants(config, "redistribution")) {
        std::vector<RedistributionTable> tables;
        for (const auto& d : config.disrupted)
          tables.push_back(redistribution(graph, baseline, d, config.watched, parallel));
        const std::string text = format_redistribution_table(tables);
        dir.write("redistribution" + suffix + ".txt", text);
        summary << text;
      }
      if (wants(config, "geojson")) {
        if (auto geo = flows_geojson(network, flows)) dir.write("flows" + suffix + ".geojson", *geo);
        else manifest.warnings.push_back("GeoJSON skipped: not every station has \"coord\"");
      }
      if (wants(config, "dot")) dir.write("graph" + suffix + ".dot", to_dot(graph));
    }

    if (wants(config, "compare")) {
      CompareOptions opts;
      opts.weights = config.weights;
      opts.busiest = config.busiest;
      opts.parallel = parallel;
      const auto report = compare_scenarios(network, config.scenarios, opts);
      std::string text;
      for (WeightKind w : config.weights) {
        if (!text.empty()) text += "\n";
        text += format_comparison_table(report, w);
      }
      dir.write("compare.txt", text);
      dir.write("compare.json", scenario_report_json(report));
      summary << "\n" << text;
    }

    for (const auto& w : manifest.warnings) summary << "warning: " << w << "\n";
    summary << "\nfiles:";
    for (const auto& f : manifest.files) summary << " " << f;
    summary << " summary.txt\n";
    dir.write("summary.txt", summary.str());
  } catch (const std::exception& e) {
    json partial{{"complete", false}, {"error", e.what()}, {"files", manifest.files}};
    std::ofstream(manifest.output_dir / "manifest.json", std::ios::binary | std::ios::trunc) << partial.dump(2) << "\n";
    throw;
  }
  return manifest;
}

}  // namespace railnet
