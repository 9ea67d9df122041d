#include "railnet/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace railnet {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ScenarioSpec parse_one(const json& v, const ParseOptions& options) {
  if (!v.is_object()) throw DataError(DataError::Code::InvalidValue, "scenario must be a JSON object");
  if (!options.lenient) {
    for (const auto& [key, _] : v.items()) {
      if (key != "name" && key != "add_stations" && key != "add_sections" && key != "remove_sections")
        throw DataError(DataError::Code::UnknownKey, "unknown key \"" + key + "\" in scenario");
    }
  }
  ScenarioSpec s;
  if (auto it = v.find("name"); it != v.end() && it->is_string()) s.name = it->get<std::string>();
  if (s.name.empty()) throw DataError(DataError::Code::InvalidValue, "scenario needs a non-empty \"name\"");

  // station and section objects share the network document schema
  json doc = {{"stations", v.value("add_stations", json::array())}, {"sections", json::array()}};
  auto stations_only = parse_network(doc.dump(), options);
  s.add_stations = std::move(stations_only.stations);

  if (auto it = v.find("add_sections"); it != v.end()) {
    // endpoints may reference base stations, so validate sections later
    json stub = json::array();
    std::set<std::string> referenced;
    for (const auto& sec : *it) {
      for (const char* end : {"a", "b"}) {
        if (sec.contains(end) && (*sec.find(end)).contains("station") && (*sec.find(end))["station"].is_string())
          referenced.insert((*sec.find(end))["station"].get<std::string>());
      }
    }
    for (const auto& id : referenced) stub.push_back({{"id", id}});
    json sec_doc = {{"stations", stub}, {"sections", *it}};
    s.add_sections = parse_network(sec_doc.dump(), options).sections;
  }
  if (auto it = v.find("remove_sections"); it != v.end()) {
    if (!it->is_array()) throw DataError(DataError::Code::InvalidValue, "remove_sections must be an array of ids");
    for (const auto& id : *it) {
      if (!id.is_string()) throw DataError(DataError::Code::InvalidValue, "remove_sections must be an array of ids");
      s.remove_sections.push_back(id.get<std::string>());
    }
  }
  return s;
}

void require_unique_names(const std::vector<ScenarioSpec>& specs) {
  std::set<std::string> names;
  for (const auto& s : specs)
    if (!names.insert(s.name).second)
      throw DataError(DataError::Code::DuplicateId, "duplicate scenario name \"" + s.name + "\"");
}

BusiestSectionChange busiest_change(const std::string& section, const SectionUsage& before,
                                    const SectionUsage& after) {
  BusiestSectionChange b;
  b.section = section;
  if (auto k = before.find(section)) {
    b.count_before = before.counts[*k];
    b.share_before = before.share_percent(*k);
  }
  if (auto k = after.find(section)) {
    b.count_after = after.counts[*k];
    b.share_after = after.share_percent(*k);
  }
  b.pp_delta = b.share_before - b.share_after;
  b.relative_delta = b.share_before > 0.0 ? 100.0 * b.pp_delta / b.share_before : 0.0;
  return b;
}

// Supergraph monotonicity: with only additions no base pair may get more expensive.
void check_monotone(const PathMatrix& base, const PathMatrix& alt, const std::string& scenario) {
  std::map<std::string, std::size_t> alt_index;
  for (std::size_t i = 0; i < alt.size(); ++i) alt_index.emplace(alt.origins()[i], i);
  std::vector<std::size_t> map(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) map[i] = alt_index.at(base.origins()[i]);
  base.for_each_pair([&](std::size_t i, std::size_t j) {
    if (alt.cost(map[i], map[j]).raw() > base.cost(i, j).raw())
      throw AnalysisError(AnalysisError::Code::Invariant,
                          "scenario \"" + scenario + "\" increases the cost between \"" + base.origins()[i] +
                              "\" and \"" + base.origins()[j] + "\" although it only adds sections");
  });
}

struct State {
  ExpandedGraph graph;
  PathMatrix matrix;
  SectionUsage flows;
  double total = 0.0;
};

State evaluate(const RawNetwork& n, WeightKind w, const ParallelOptions& parallel) {
  State s;
  s.graph = expand(n, w);
  s.matrix = all_pairs(s.graph, parallel);
  s.flows = section_flows(s.matrix);
  s.total = total_cost(s.matrix);
  return s;
}

void run_extras(const State& state, const ComparisonExtras& extras, const ParallelOptions& parallel,
                WeightOutcome& out) {
  auto present = [&](const std::string& id) {
    if (state.graph.section_index(id)) return true;
    if (std::find(out.skipped_sections.begin(), out.skipped_sections.end(), id) == out.skipped_sections.end())
      out.skipped_sections.push_back(id);
    return false;
  };
  std::vector<std::string> watched;
  for (const auto& id : extras.watched)
    if (present(id)) watched.push_back(id);
  if (!watched.empty()) {
    for (const auto& d : extras.disrupted)
      if (present(d)) out.redistribution.push_back(redistribution(state.graph, state.matrix, d, watched, parallel));
  }
  std::vector<std::string> targets;
  for (const auto& id : extras.redundancy_targets)
    if (present(id)) targets.push_back(id);
  if (!targets.empty())
    out.redundancy = ResilienceEngine(state.graph, parallel).redundancy_sweep(targets, extras.redundancy);
}

}  // namespace

std::vector<ScenarioSpec> parse_scenarios(std::string_view doc, const ParseOptions& options) {
  json root;
  try {
    root = json::parse(doc.begin(), doc.end());
  } catch (const json::parse_error& e) {
    throw DataError(DataError::Code::Syntax, std::string("scenario syntax error: ") + e.what());
  }
  std::vector<ScenarioSpec> out;
  if (root.is_array()) {
    for (const auto& v : root) out.push_back(parse_one(v, options));
  } else if (root.is_object() && root.contains("scenarios")) {
    for (const auto& v : root["scenarios"]) out.push_back(parse_one(v, options));
  } else {
    out.push_back(parse_one(root, options));
  }
  require_unique_names(out);
  return out;
}

std::vector<ScenarioSpec> load_scenarios(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(DataError::Code::Io, "cannot open scenario file \"" + path + "\"");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenarios(buf.str(), options);
}

std::string render_scenario(const ScenarioSpec& s) {
  RawNetwork stations{s.add_stations, {}};
  RawNetwork sections{{}, s.add_sections};
  auto st = ordered_json::parse(render_network(stations));
  auto sc = ordered_json::parse(render_network(sections));
  ordered_json j;
  j["name"] = s.name;
  j["add_stations"] = st["stations"];
  j["add_sections"] = sc["sections"];
  j["remove_sections"] = s.remove_sections;
  return j.dump(2) + "\n";
}

RawNetwork apply_scenario(const RawNetwork& n, const ScenarioSpec& s) {
  RawNetwork out = n;
  for (const auto& id : s.remove_sections) {
    auto it = std::find_if(out.sections.begin(), out.sections.end(), [&](const SectionSpec& x) { return x.id == id; });
    if (it == out.sections.end())
      throw DataError(DataError::Code::DanglingReference,
                      "scenario \"" + s.name + "\" removes unknown section \"" + id + "\"");
    out.sections.erase(it);
  }
  out.stations.insert(out.stations.end(), s.add_stations.begin(), s.add_stations.end());
  out.sections.insert(out.sections.end(), s.add_sections.begin(), s.add_sections.end());
  try {
    check_network(out);
  } catch (const DataError& e) {
    throw DataError(e.code(), "scenario \"" + s.name + "\": " + e.what());
  }
  return out;
}

std::string busiest_section(const SectionUsage& flows) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < flows.counts.size(); ++k)
    if (flows.counts[k] > flows.counts[best]) best = k;  // ids are sorted, so ties keep the smaller id
  return flows.section_ids.empty() ? std::string() : flows.section_ids[best];
}

ScenarioReport compare_scenarios(const RawNetwork& base, const std::vector<ScenarioSpec>& scenarios,
                                 const CompareOptions& options) {
  require_unique_names(scenarios);
  ScenarioReport report;
  report.network = network_fingerprint(base);
  report.weights = options.weights;
  report.baseline.name = "baseline";
  report.scenarios.resize(scenarios.size());
  for (std::size_t k = 0; k < scenarios.size(); ++k) report.scenarios[k].name = scenarios[k].name;

  std::vector<std::optional<RawNetwork>> variants(scenarios.size());
  for (std::size_t k = 0; k < scenarios.size(); ++k) {
    try {
      variants[k] = apply_scenario(base, scenarios[k]);
    } catch (const DataError& e) {
      report.scenarios[k].ok = false;
      report.scenarios[k].error = e.what();
    }
  }

  for (WeightKind w : options.weights) {
    const State before = evaluate(base, w, options.parallel);
    const std::string busiest = options.busiest.value_or(busiest_section(before.flows));
    if (options.busiest && !before.graph.section_index(busiest))
      throw AnalysisError(AnalysisError::Code::UnknownSection, "unknown busiest section \"" + busiest + "\"");

    WeightOutcome self;
    self.weight_kind = w;
    self.total = before.total;
    self.busiest = busiest_change(busiest, before.flows, before.flows);
    self.flow_deltas = flow_delta(before.flows, before.flows);
    self.flows = before.flows;
    run_extras(before, options.extras, options.parallel, self);
    report.baseline.by_weight.push_back(std::move(self));

    for (std::size_t k = 0; k < scenarios.size(); ++k) {
      auto& outcome = report.scenarios[k];
      if (!outcome.ok) continue;
      try {
        const State after = evaluate(*variants[k], w, options.parallel);
        if (scenarios[k].additions_only()) check_monotone(before.matrix, after.matrix, scenarios[k].name);
        WeightOutcome o;
        o.weight_kind = w;
        o.total = after.total;
        o.decrease_percent = before.total > 0.0 ? 100.0 * (before.total - after.total) / before.total : 0.0;
        o.busiest = busiest_change(busiest, before.flows, after.flows);
        o.flow_deltas = flow_delta(before.flows, after.flows);
        o.flows = after.flows;
        run_extras(after, options.extras, options.parallel, o);
        outcome.by_weight.push_back(std::move(o));
      } catch (const AnalysisError& e) {
        if (e.code() == AnalysisError::Code::Invariant) throw;
        outcome.ok = false;
        outcome.error = e.what();
        outcome.by_weight.clear();
      }
    }
  }
  return report;
}

}  // namespace railnet
