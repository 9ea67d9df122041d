#include <cstdio>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "railnet/report.hpp"

namespace railnet {

using nlohmann::ordered_json;

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

ordered_json extended_json(Extended e) { return e.is_finite() ? ordered_json(e.value()) : ordered_json(nullptr); }

ordered_json redundancy_entry(const RedundancyResult& r, bool per_v) {
  ordered_json j;
  j["section"] = r.section;
  j["network"] = r.network;
  j["weight"] = std::string(to_string(r.weight_kind));
  j["restricted"] = r.restricted;
  j["r_u_prime"] = r.r_reciprocal_normalized;
  j["r_reciprocal_sum"] = r.r_reciprocal_sum;
  j["c_prime"] = r.baseline_reciprocal;
  j["r_plain"] = extended_json(r.r_plain);
  j["finite"] = r.r_plain.is_finite();
  j["alternate"] = {{"restricted", !r.restricted},
                    {"r_u_prime", r.alternate.normalized},
                    {"r_reciprocal_sum", r.alternate.reciprocal_sum},
                    {"r_plain", extended_json(r.alternate.plain)},
                    {"finite", r.alternate.plain.is_finite()}};
  if (per_v) {
    j["per_v"] = ordered_json::array();
    for (const auto& t : r.per_v)
      j["per_v"].push_back(
          {{"v", t.v}, {"reciprocal", t.reciprocal}, {"plain", extended_json(t.plain)}, {"finite", t.plain.is_finite()}});
  }
  return j;
}

ordered_json busiest_json(const BusiestSectionChange& b) {
  return {{"section", b.section},           {"count_before", b.count_before}, {"count_after", b.count_after},
          {"share_before", b.share_before}, {"share_after", b.share_after},   {"pp_delta", b.pp_delta},
          {"relative_delta", b.relative_delta}};
}

ordered_json redistribution_json(const RedistributionTable& t) {
  ordered_json j;
  j["disrupted"] = t.disrupted;
  j["rows"] = ordered_json::array();
  for (const auto& row : t.rows) {
    j["rows"].push_back({{"section", row.section},
                         {"baseline_count", row.baseline_count},
                         {"delta_count", row.delta_count},
                         {"delta_percent", row.delta_percent ? ordered_json(*row.delta_percent) : ordered_json(nullptr)}});
  }
  return j;
}

ordered_json outcome_json(const ScenarioOutcome& o) {
  ordered_json j;
  j["name"] = o.name;
  j["ok"] = o.ok;
  if (!o.ok) j["error"] = o.error;
  j["by_weight"] = ordered_json::array();
  for (const auto& w : o.by_weight) {
    ordered_json e;
    e["weight"] = std::string(to_string(w.weight_kind));
    e["total"] = w.total;
    e["decrease_percent"] = w.decrease_percent;
    e["busiest"] = busiest_json(w.busiest);
    e["flow_deltas"] = ordered_json::array();
    for (const auto& d : w.flow_deltas) {
      if (d.delta_count == 0 && !d.added && !d.removed) continue;
      e["flow_deltas"].push_back({{"section", d.section},
                                  {"base_count", d.base_count},
                                  {"alt_count", d.alt_count},
                                  {"delta_count", d.delta_count},
                                  {"delta_share", d.delta_share}});
    }
    if (!w.redistribution.empty()) {
      e["redistribution"] = ordered_json::array();
      for (const auto& t : w.redistribution) e["redistribution"].push_back(redistribution_json(t));
    }
    if (!w.redundancy.empty()) {
      e["redundancy"] = ordered_json::array();
      for (const auto& r : w.redundancy) e["redundancy"].push_back(redundancy_entry(r, false));
    }
    if (!w.skipped_sections.empty()) e["skipped_sections"] = w.skipped_sections;
    j["by_weight"].push_back(std::move(e));
  }
  return j;
}

}  // namespace

std::string flows_csv(const SectionUsage& u) {
  std::ostringstream out;
  out << "section_id,count,share_percent\n";
  for (std::size_t k = 0; k < u.section_ids.size(); ++k)
    out << u.section_ids[k] << "," << u.counts[k] << "," << fixed6(u.share_percent(k)) << "\n";
  return out.str();
}

std::string flow_delta_csv(const std::vector<FlowDeltaEntry>& deltas) {
  std::ostringstream out;
  out << "section_id,base_count,alt_count,delta_count,base_share,alt_share,delta_share\n";
  for (const auto& d : deltas)
    out << d.section << "," << d.base_count << "," << d.alt_count << "," << d.delta_count << "," << fixed6(d.base_share)
        << "," << fixed6(d.alt_share) << "," << fixed6(d.delta_share) << "\n";
  return out.str();
}

std::string nri_csv(const std::vector<NriResult>& results) {
  std::ostringstream out;
  out << "section,q,finite\n";
  for (const auto& r : results)
    out << r.section << "," << (r.q.is_finite() ? fixed6(r.q.value()) : std::string("inf")) << ","
        << (r.q.is_finite() ? "true" : "false") << "\n";
  return out.str();
}

std::string nri_json(const std::vector<NriResult>& results, const std::string& network) {
  ordered_json j;
  j["network"] = network;
  j["results"] = ordered_json::array();
  for (const auto& r : results)
    j["results"].push_back({{"section", r.section},
                            {"weight", std::string(to_string(r.weight_kind))},
                            {"q", extended_json(r.q)},
                            {"finite", r.q.is_finite()}});
  return j.dump(2) + "\n";
}

std::string pair_nri_json(const PairNriResult& r, const std::string& network) {
  ordered_json j{{"network", network},
                 {"section", r.u},
                 {"pair", r.v},
                 {"weight", std::string(to_string(r.weight_kind))},
                 {"q", extended_json(r.q)},
                 {"finite", r.q.is_finite()}};
  return j.dump(2) + "\n";
}

std::string redundancy_json(const std::vector<RedundancyResult>& results, bool per_v) {
  ordered_json j;
  j["results"] = ordered_json::array();
  for (const auto& r : results) j["results"].push_back(redundancy_entry(r, per_v));
  return j.dump(2) + "\n";
}

std::string redundancy_csv(const std::vector<RedundancyResult>& results) {
  std::ostringstream out;
  out << "section,r_u_prime,r_reciprocal_sum,r_plain,finite\n";
  char buf[64];
  for (const auto& r : results) {
    std::snprintf(buf, sizeof buf, "%.9f,%.9f", r.r_reciprocal_normalized, r.r_reciprocal_sum);
    out << r.section << "," << buf << "," << (r.r_plain.is_finite() ? fixed6(r.r_plain.value()) : std::string("inf"))
        << "," << (r.r_plain.is_finite() ? "true" : "false") << "\n";
  }
  return out.str();
}

std::string path_json(const PathResult& p, const std::string& from, const std::string& to, WeightKind w) {
  ordered_json j{{"from", from},
                 {"to", to},
                 {"weight", std::string(to_string(w))},
                 {"reachable", p.reachable()},
                 {"cost", extended_json(p.cost)},
                 {"sections", p.sections},
                 {"reversals", p.reversals}};
  return j.dump(2) + "\n";
}

std::string scenario_report_json(const ScenarioReport& r) {
  ordered_json j;
  j["network"] = r.network;
  j["weights"] = ordered_json::array();
  for (auto w : r.weights) j["weights"].push_back(std::string(to_string(w)));
  j["baseline"] = outcome_json(r.baseline);
  j["scenarios"] = ordered_json::array();
  for (const auto& s : r.scenarios) j["scenarios"].push_back(outcome_json(s));
  return j.dump(2) + "\n";
}

std::optional<std::string> flows_geojson(const RawNetwork& n, const SectionUsage& u,
                                         const std::vector<FlowDeltaEntry>* deltas) {
  std::map<std::string, std::array<double, 2>> coords;
  for (const auto& st : n.stations)
    if (st.coord) coords.emplace(st.id, *st.coord);

  std::map<std::string, const FlowDeltaEntry*> delta_of;
  if (deltas != nullptr)
    for (const auto& d : *deltas) delta_of.emplace(d.section, &d);

  ordered_json fc;
  fc["type"] = "FeatureCollection";
  fc["features"] = ordered_json::array();
  for (std::size_t k = 0; k < u.section_ids.size(); ++k) {
    const SectionSpec* sec = n.find_section(u.section_ids[k]);
    if (sec == nullptr) continue;
    auto ca = coords.find(sec->a.station);
    auto cb = coords.find(sec->b.station);
    if (ca == coords.end() || cb == coords.end()) return std::nullopt;
    const FlowDeltaEntry* d = delta_of.count(sec->id) ? delta_of[sec->id] : nullptr;
    ordered_json f;
    f["type"] = "Feature";
    f["geometry"] = {{"type", "LineString"},
                     {"coordinates", {{ca->second[0], ca->second[1]}, {cb->second[0], cb->second[1]}}}};
    f["properties"] = {{"section", sec->id},
                       {"count", u.counts[k]},
                       {"share_percent", u.share_percent(k)},
                       {"delta_count", d ? d->delta_count : 0},
                       {"delta_share", d ? d->delta_share : 0.0}};
    fc["features"].push_back(std::move(f));
  }
  return fc.dump(2) + "\n";
}

}  // namespace railnet
