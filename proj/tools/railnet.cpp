// railnet: command-line front end for the analysis library.
//
// Exit codes: 0 ok, 1 usage, 2 data error, 3 analysis error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "railnet/report.hpp"

using namespace railnet;
using nlohmann::json;

namespace {

struct Globals {
  std::string weight = "distance";
  unsigned threads = 0;
  bool json = false;
  bool lenient = false;

  std::vector<WeightKind> weights() const {
    if (weight == "both") return {WeightKind::Distance, WeightKind::Time};
    return {parse_weight_kind(weight)};
  }
  ParallelOptions parallel() const { return {threads}; }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(DataError::Code::Io, "cannot write \"" + path + "\"");
  out << text;
  if (!out) throw DataError(DataError::Code::Io, "failed writing \"" + path + "\"");
}

// Output path for one weight kind; with several kinds the name gets a suffix.
std::string per_weight(const std::string& path, WeightKind w, std::size_t kinds) {
  if (kinds < 2) return path;
  const auto dot = path.find_last_of('.');
  const std::string suffix = "_" + std::string(to_string(w));
  return dot == std::string::npos || dot < path.find_last_of('/') + 1 ? path + suffix
                                                                       : path.substr(0, dot) + suffix + path.substr(dot);
}

// JSON per weight kind: a single document, or an object keyed by kind.
void emit_json(const std::vector<std::pair<WeightKind, std::string>>& docs) {
  if (docs.size() == 1) {
    std::cout << docs.front().second;
    if (!docs.front().second.ends_with('\n')) std::cout << '\n';
    return;
  }
  json all = json::object();
  for (const auto& [w, text] : docs) all[std::string(to_string(w))] = json::parse(text);
  std::cout << all.dump(2) << '\n';
}

std::vector<std::string> split_ids(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::size_t start = 0;
    while (start <= item.size()) {
      const auto comma = item.find(',', start);
      const auto piece = item.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!piece.empty()) out.push_back(piece);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Railway network vulnerability analysis"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--weight", g.weight, "Edge weights: time, distance or both")
      ->check(CLI::IsMember({"time", "distance", "both"}))
      ->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_flag("--lenient", g.lenient, "Ignore unknown keys in input documents");
  for (auto* opt : app.get_options()) opt->configurable(false);
  app.fallthrough();

  std::string network;
  auto load = [&] { return load_network(network, {.lenient = g.lenient}); };

  auto* validate_cmd = app.add_subcommand("validate", "Check a network and print its statistics");
  validate_cmd->add_option("network", network, "Network JSON")->required();
  std::string contract_out, dot_out;
  validate_cmd->add_option("--contract", contract_out, "Write the joint-contracted network here");
  validate_cmd->add_option("--dot", dot_out, "Write the expanded port graph (Graphviz) here");

  auto* route_cmd = app.add_subcommand("route", "Cheapest path between two stations");
  route_cmd->add_option("network", network, "Network JSON")->required();
  std::string from, to;
  route_cmd->add_option("--from", from)->required();
  route_cmd->add_option("--to", to)->required();

  auto* flows_cmd = app.add_subcommand("flows", "Number of all-pairs paths through each section");
  flows_cmd->add_option("network", network, "Network JSON")->required();
  std::string flows_csv_out, geojson_out;
  std::vector<std::string> disrupt, watch;
  flows_cmd->add_option("--csv", flows_csv_out, "Write section counts as CSV");
  flows_cmd->add_option("--geojson", geojson_out, "Write counts as GeoJSON (needs station coordinates)");
  flows_cmd->add_option("--disrupt", disrupt, "Sections to disrupt one at a time (comma separated)");
  auto* watch_opt = flows_cmd->add_option("--watch", watch, "Sections whose path counts are tabulated");
  flows_cmd->get_option("--disrupt")->needs(watch_opt);

  auto* nri_cmd = app.add_subcommand("nri", "Network Robustness Index");
  nri_cmd->add_option("network", network, "Network JSON")->required();
  std::string nri_section, nri_pair;
  std::string nri_csv_out;
  auto* section_opt = nri_cmd->add_option("--section", nri_section, "Section to remove (default: every section)");
  nri_cmd->add_option("--pair", nri_pair, "Second section removed together with --section")->needs(section_opt);
  nri_cmd->add_option("--csv", nri_csv_out, "Write results as CSV");

  auto* red_cmd = app.add_subcommand("redundancy", "Redundancy index of backup sections");
  red_cmd->add_option("network", network, "Network JSON")->required();
  std::vector<std::string> targets;
  bool unrestricted = false, per_v = false, verbose = false;
  std::string red_csv_out;
  red_cmd->add_option("--targets", targets, "Sections to evaluate (comma separated)")->required();
  red_cmd->add_flag("--unrestricted", unrestricted, "Sum over all pairs, not only those avoiding the target");
  red_cmd->add_flag("--per-v", per_v, "Show the contribution of every failed section");
  red_cmd->add_flag("--verbose", verbose, "Also show the figures of the other summation mode");
  red_cmd->add_option("--csv", red_csv_out, "Write results as CSV");

  auto* cmp_cmd = app.add_subcommand("compare", "Compare scenarios against the base network");
  cmp_cmd->add_option("network", network, "Network JSON")->required();
  std::vector<std::string> scenario_files;
  std::string busiest = "auto";
  cmp_cmd->add_option("--scenario", scenario_files, "Scenario JSON (repeatable)")->required();
  cmp_cmd->add_option("--busiest", busiest, "Section whose flow share is tracked")->capture_default_str();

  auto* report_cmd = app.add_subcommand("report", "Run a batch report from a config file");
  std::string config_path;
  report_cmd->add_option("config", config_path, "Report config JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    const auto weights = g.weights();

    if (*validate_cmd) {
      const auto n = load();
      const auto v = validate(n);
      if (g.json) {
        json doc{{"network", network_fingerprint(n)},
                 {"stations", v.station_count},
                 {"sections", v.section_count},
                 {"eligible", v.eligible_count},
                 {"wyes", v.wye_count},
                 {"auxiliary", v.auxiliary_count},
                 {"components", v.component_count},
                 {"contractible_joints", v.contractible_joints}};
        json hist = json::object();
        for (const auto& [deg, count] : v.degree_histogram) hist[std::to_string(deg)] = count;
        doc["degree_histogram"] = hist;
        std::cout << doc.dump(2) << '\n';
      } else {
        std::cout << format_validation(v);
      }
      if (!contract_out.empty()) write_file(contract_out, render_network(contract_joint_nodes(n)));
      if (!dot_out.empty())
        for (WeightKind w : weights) write_file(per_weight(dot_out, w, weights.size()), to_dot(expand(n, w)));
      return 0;
    }

    if (*route_cmd) {
      const auto n = load();
      std::vector<std::pair<WeightKind, std::string>> docs;
      for (WeightKind w : weights) {
        const auto p = shortest_path(expand(n, w), from, to);
        if (g.json) docs.emplace_back(w, path_json(p, from, to, w));
        else std::cout << format_path(p, from, to, w);
      }
      if (g.json) emit_json(docs);
      return 0;
    }

    if (*flows_cmd) {
      const auto n = load();
      const auto disrupted = split_ids(disrupt);
      const auto watched = split_ids(watch);
      std::vector<std::pair<WeightKind, std::string>> docs;
      std::vector<RedistributionTable> tables;
      for (WeightKind w : weights) {
        const auto graph = expand(n, w);
        const auto m = all_pairs(graph, g.parallel());
        const auto u = section_flows(m);
        if (!flows_csv_out.empty()) write_file(per_weight(flows_csv_out, w, weights.size()), flows_csv(u));
        if (!geojson_out.empty()) {
          if (auto geo = flows_geojson(n, u)) write_file(per_weight(geojson_out, w, weights.size()), *geo);
          else std::cerr << "warning: GeoJSON skipped: not every station has \"coord\"\n";
        }
        for (const auto& d : disrupted) tables.push_back(redistribution(graph, m, d, watched, g.parallel()));
        if (g.json) {
          json doc{{"weight", to_string(w)}, {"pairs", u.pair_count}, {"sections", json::array()}};
          for (std::size_t k = 0; k < u.section_ids.size(); ++k)
            doc["sections"].push_back(
                {{"section", u.section_ids[k]}, {"count", u.counts[k]}, {"share_percent", u.share_percent(k)}});
          docs.emplace_back(w, doc.dump(2));
        } else {
          std::cout << format_flows(u);
        }
      }
      if (g.json) emit_json(docs);
      else if (!tables.empty()) std::cout << '\n' << format_redistribution_table(tables);
      return 0;
    }

    if (*nri_cmd) {
      const auto n = load();
      std::vector<std::pair<WeightKind, std::string>> docs;
      for (WeightKind w : weights) {
        const ResilienceEngine e(expand(n, w), g.parallel());
        const auto& id = e.graph().network_id();
        if (!nri_pair.empty()) {
          const auto r = e.nri_pair(nri_section, nri_pair);
          if (g.json) {
            docs.emplace_back(w, pair_nri_json(r, id));
          } else {
            std::cout << "q(" << r.u << ", " << r.v << "), " << to_string(w) << " weights: "
                      << (r.q.is_finite() ? format_fixed(r.q.value(), 3) : std::string("INFINITE")) << '\n';
          }
          continue;
        }
        const auto results = nri_section.empty() ? e.nri_all() : std::vector<NriResult>{e.nri(nri_section)};
        if (!nri_csv_out.empty()) write_file(per_weight(nri_csv_out, w, weights.size()), nri_csv(results));
        if (g.json) docs.emplace_back(w, nri_json(results, id));
        else std::cout << format_nri(results, id);
      }
      if (g.json) emit_json(docs);
      return 0;
    }

    if (*red_cmd) {
      const auto n = load();
      const auto ids = split_ids(targets);
      std::vector<std::pair<WeightKind, std::string>> docs;
      for (WeightKind w : weights) {
        const ResilienceEngine e(expand(n, w), g.parallel());
        const auto results = e.redundancy_sweep(ids, {.unrestricted = unrestricted});
        if (!red_csv_out.empty()) write_file(per_weight(red_csv_out, w, weights.size()), redundancy_csv(results));
        if (g.json) docs.emplace_back(w, redundancy_json(results, per_v));
        else std::cout << format_redundancy(results, per_v, verbose);
      }
      if (g.json) emit_json(docs);
      return 0;
    }

    if (*cmp_cmd) {
      const auto n = load();
      std::vector<ScenarioSpec> specs;
      for (const auto& f : scenario_files) {
        auto more = load_scenarios(f, {.lenient = g.lenient});
        specs.insert(specs.end(), more.begin(), more.end());
      }
      CompareOptions opts;
      opts.weights = weights;
      if (busiest != "auto") opts.busiest = busiest;
      opts.parallel = g.parallel();
      const auto report = compare_scenarios(n, specs, opts);
      if (g.json) {
        std::cout << scenario_report_json(report);
      } else {
        for (std::size_t k = 0; k < weights.size(); ++k) std::cout << (k ? "\n" : "") << format_comparison_table(report, weights[k]);
      }
      for (const auto& s : report.scenarios)
        if (!s.ok) std::cerr << "scenario \"" << s.name << "\" failed: " << s.error << '\n';
      return 0;
    }

    if (*report_cmd) {
      auto config = load_report_config(config_path);
      if (g.threads != 0) config.threads = g.threads;
      const auto manifest = run_report(config);
      for (const auto& w : manifest.warnings) std::cerr << "warning: " << w << '\n';
      if (g.json) {
        std::cout << json{{"output_dir", manifest.output_dir.string()}, {"files", manifest.files}}.dump(2) << '\n';
      } else {
        for (const auto& f : manifest.files) std::cout << (manifest.output_dir / f).string() << '\n';
      }
      return 0;
    }
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const AnalysisError& e) {
    std::cerr << "analysis error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
