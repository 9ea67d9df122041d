#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "railnet/routing.hpp"

namespace railnet {

/// Artificial flow: how many pair shortest paths cross each section.
struct SectionUsage {
  WeightKind weight_kind = WeightKind::Distance;
  std::size_t pair_count = 0;
  std::vector<std::string> section_ids;  // sorted
  std::vector<std::uint64_t> counts;

  double share_percent(std::size_t k) const {
    return pair_count == 0 ? 0.0 : 100.0 * static_cast<double>(counts[k]) / static_cast<double>(pair_count);
  }
  std::optional<std::size_t> find(const std::string& id) const;
  std::uint64_t count_of(const std::string& id) const;
};

SectionUsage section_flows(const PathMatrix& m);

struct FlowDeltaEntry {
  std::string section;
  std::uint64_t base_count = 0;
  std::uint64_t alt_count = 0;
  std::int64_t delta_count = 0;
  double base_share = 0.0;
  double alt_share = 0.0;
  double delta_share = 0.0;  // percentage points
  bool added = false;        // present only in alt
  bool removed = false;      // present only in base
};

/// Per-section change from base to alt over the union of both section sets, in id order.
std::vector<FlowDeltaEntry> flow_delta(const SectionUsage& base, const SectionUsage& alt);

struct RedistributionRow {
  std::string section;
  std::uint64_t baseline_count = 0;
  std::int64_t delta_count = 0;
  /// Relative to the section's own baseline count; empty when that is 0.
  std::optional<double> delta_percent;
};

struct RedistributionTable {
  std::string disrupted;
  WeightKind weight_kind = WeightKind::Distance;
  std::vector<RedistributionRow> rows;  // in watched order
};

/// Change of path counts on the watched sections when `disrupted` is removed.
RedistributionTable redistribution(const ExpandedGraph& g, const std::string& disrupted,
                                   const std::vector<std::string>& watched, const ParallelOptions& options = {});

/// Same, reusing an already computed baseline matrix of g.
RedistributionTable redistribution(const ExpandedGraph& g, const PathMatrix& baseline, const std::string& disrupted,
                                   const std::vector<std::string>& watched, const ParallelOptions& options = {});

}  // namespace railnet
