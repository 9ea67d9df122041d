#include "railnet/flow.hpp"

#include <algorithm>
#include <map>

namespace railnet {

std::optional<std::size_t> SectionUsage::find(const std::string& id) const {
  auto it = std::lower_bound(section_ids.begin(), section_ids.end(), id);
  if (it == section_ids.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - section_ids.begin());
}

std::uint64_t SectionUsage::count_of(const std::string& id) const {
  auto k = find(id);
  return k ? counts[*k] : 0;
}

SectionUsage section_flows(const PathMatrix& m) {
  SectionUsage u;
  u.weight_kind = m.weight_kind();
  u.pair_count = m.pair_count();
  u.section_ids = m.section_ids();
  u.counts.assign(u.section_ids.size(), 0);
  m.for_each_pair([&](std::size_t i, std::size_t j) {
    for (auto s : m.usage(i, j)) ++u.counts[s];
  });
  return u;
}

std::vector<FlowDeltaEntry> flow_delta(const SectionUsage& base, const SectionUsage& alt) {
  std::map<std::string, FlowDeltaEntry> merged;
  for (std::size_t k = 0; k < base.section_ids.size(); ++k) {
    auto& e = merged[base.section_ids[k]];
    e.section = base.section_ids[k];
    e.base_count = base.counts[k];
    e.base_share = base.share_percent(k);
    e.removed = true;
  }
  for (std::size_t k = 0; k < alt.section_ids.size(); ++k) {
    auto [it, inserted] = merged.try_emplace(alt.section_ids[k]);
    auto& e = it->second;
    e.section = alt.section_ids[k];
    e.alt_count = alt.counts[k];
    e.alt_share = alt.share_percent(k);
    e.added = inserted;
    e.removed = false;
  }
  std::vector<FlowDeltaEntry> out;
  out.reserve(merged.size());
  for (auto& [_, e] : merged) {
    e.delta_count = static_cast<std::int64_t>(e.alt_count) - static_cast<std::int64_t>(e.base_count);
    e.delta_share = e.alt_share - e.base_share;
    out.push_back(std::move(e));
  }
  return out;
}

RedistributionTable redistribution(const ExpandedGraph& g, const PathMatrix& baseline, const std::string& disrupted,
                                   const std::vector<std::string>& watched, const ParallelOptions& options) {
  if (watched.empty()) throw AnalysisError(AnalysisError::Code::InvalidArgument, "no watched sections given");
  const auto dead = resolve_section(g, disrupted);
  resolve_sections(g, watched);

  const std::uint32_t removed[] = {dead};
  const auto after = all_pairs_after_removal(remove_section_indices(g, removed), baseline, removed, options);
  const auto before_flow = section_flows(baseline);
  const auto after_flow = section_flows(after);

  RedistributionTable table;
  table.disrupted = disrupted;
  table.weight_kind = g.weight_kind();
  for (const auto& id : watched) {
    RedistributionRow row;
    row.section = id;
    row.baseline_count = before_flow.count_of(id);
    row.delta_count = static_cast<std::int64_t>(after_flow.count_of(id)) - static_cast<std::int64_t>(row.baseline_count);
    if (row.baseline_count > 0)
      row.delta_percent = 100.0 * static_cast<double>(row.delta_count) / static_cast<double>(row.baseline_count);
    table.rows.push_back(std::move(row));
  }
  return table;
}

RedistributionTable redistribution(const ExpandedGraph& g, const std::string& disrupted,
                                   const std::vector<std::string>& watched, const ParallelOptions& options) {
  resolve_section(g, disrupted);
  resolve_sections(g, watched);
  return redistribution(g, all_pairs(g, options), disrupted, watched, options);
}

}  // namespace railnet
