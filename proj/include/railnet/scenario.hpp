#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "railnet/flow.hpp"
#include "railnet/network.hpp"
#include "railnet/resilience.hpp"

namespace railnet {

/// A network variant: new stations and sections (e.g. a proposed line) plus
/// sections taken out of service.
struct ScenarioSpec {
  std::string name;
  std::vector<StationSpec> add_stations;
  std::vector<SectionSpec> add_sections;
  std::vector<std::string> remove_sections;

  bool additions_only() const { return remove_sections.empty(); }
};

/// Parses one scenario object, or {"scenarios": [...]}, or a bare array.
std::vector<ScenarioSpec> parse_scenarios(std::string_view doc, const ParseOptions& options = {});
std::vector<ScenarioSpec> load_scenarios(const std::string& path, const ParseOptions& options = {});
std::string render_scenario(const ScenarioSpec& s);

/// Applies s to n. Joint contraction is not re-run. Throws DataError on
/// duplicate ids or dangling references.
RawNetwork apply_scenario(const RawNetwork& n, const ScenarioSpec& s);

struct BusiestSectionChange {
  std::string section;
  std::uint64_t count_before = 0;
  std::uint64_t count_after = 0;
  double share_before = 0.0;  // percent of the baseline pair universe
  double share_after = 0.0;   // percent of the scenario pair universe
  double pp_delta = 0.0;      // share_before - share_after, percentage points
  double relative_delta = 0.0;  // pp_delta / share_before, percent
};

/// Optional per-network-state analyses attached to a comparison.
struct ComparisonExtras {
  std::vector<std::string> disrupted;  // redistribution rows
  std::vector<std::string> watched;    // redistribution columns
  std::vector<std::string> redundancy_targets;
  RedundancyOptions redundancy;
};

struct WeightOutcome {
  WeightKind weight_kind = WeightKind::Distance;
  double total = 0.0;
  double decrease_percent = 0.0;  // relative to the baseline total
  BusiestSectionChange busiest;
  std::vector<FlowDeltaEntry> flow_deltas;
  SectionUsage flows;
  std::vector<RedistributionTable> redistribution;
  std::vector<RedundancyResult> redundancy;
  /// Requested sections absent from this network state.
  std::vector<std::string> skipped_sections;
};

struct ScenarioOutcome {
  std::string name;
  bool ok = true;
  std::string error;  // set when !ok, e.g. disconnected eligible stations
  std::vector<WeightOutcome> by_weight;
};

struct ScenarioReport {
  std::string network;
  std::vector<WeightKind> weights;
  ScenarioOutcome baseline;  // compared against itself: all deltas zero
  std::vector<ScenarioOutcome> scenarios;
};

struct CompareOptions {
  std::vector<WeightKind> weights{WeightKind::Distance, WeightKind::Time};
  /// Section whose share is tracked; empty selects the baseline argmax of
  /// the flow count (ties by section id), per weight kind.
  std::optional<std::string> busiest;
  ComparisonExtras extras;
  ParallelOptions parallel;
};

/// Compares every scenario with the base network. Scenarios that fail
/// (invalid, disconnected) are flagged and the rest are still reported.
/// Throws AnalysisError if the base network is disconnected.
ScenarioReport compare_scenarios(const RawNetwork& base, const std::vector<ScenarioSpec>& scenarios,
                                 const CompareOptions& options = {});

/// Baseline argmax of the flow count, ties broken by the smaller section id.
std::string busiest_section(const SectionUsage& flows);

}  // namespace railnet
