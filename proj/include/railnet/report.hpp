#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "railnet/flow.hpp"
#include "railnet/resilience.hpp"
#include "railnet/scenario.hpp"

namespace railnet {

// Text formatting. Output is locale-independent and byte-stable.

/// 10047606 -> "10,047,606"; with `plus`, positive values get a leading '+'.
std::string format_grouped(std::int64_t value, bool plus = false);
/// Fixed decimals with thousands separators: (1378.0, 1) -> "1,378.0".
std::string format_fixed(double value, int decimals, bool plus = false);
/// Table cell of a redistribution block: "-15,603 (-100.0%)", "+2 (n/a)".
std::string format_count_change(std::int64_t delta, std::optional<double> percent);

// Machine-readable exports.

std::string flows_csv(const SectionUsage& u);
std::string flow_delta_csv(const std::vector<FlowDeltaEntry>& deltas);
std::string nri_csv(const std::vector<NriResult>& results);
std::string nri_json(const std::vector<NriResult>& results, const std::string& network);
std::string pair_nri_json(const PairNriResult& r, const std::string& network);
std::string redundancy_json(const std::vector<RedundancyResult>& results, bool per_v);
std::string redundancy_csv(const std::vector<RedundancyResult>& results);
std::string path_json(const PathResult& p, const std::string& from, const std::string& to, WeightKind w);
std::string scenario_report_json(const ScenarioReport& r);

/// GeoJSON FeatureCollection with one LineString per section. Empty when
/// any station lacks coordinates.
std::optional<std::string> flows_geojson(const RawNetwork& n, const SectionUsage& u,
                                         const std::vector<FlowDeltaEntry>* deltas = nullptr);

// Human-readable blocks.

/// Per-scenario percent decreases for one weight kind (2 decimals).
std::string format_comparison_table(const ScenarioReport& r, WeightKind w);
/// Disrupted sections as rows, watched sections as columns.
std::string format_redistribution_table(const std::vector<RedistributionTable>& tables);
std::string format_flows(const SectionUsage& u);
std::string format_nri(const std::vector<NriResult>& results, const std::string& network);
std::string format_redundancy(const std::vector<RedundancyResult>& results, bool per_v, bool verbose);
std::string format_path(const PathResult& p, const std::string& from, const std::string& to, WeightKind w);

// Batch reports.

struct ReportConfig {
  std::filesystem::path network;
  bool lenient = false;
  std::vector<WeightKind> weights{WeightKind::Distance};
  unsigned threads = 0;
  std::filesystem::path output_dir;
  std::vector<std::string> analyses;
  std::vector<std::string> redundancy_targets;
  bool redundancy_unrestricted = false;
  bool redundancy_per_v = false;
  std::vector<std::string> disrupted;
  std::vector<std::string> watched;
  std::vector<ScenarioSpec> scenarios;
  std::optional<std::string> busiest;
};

inline const std::vector<std::string>& known_analyses() {
  static const std::vector<std::string> names{"flows", "nri", "redundancy", "redistribution", "compare", "geojson", "dot"};
  return names;
}

/// Parses a report configuration. Relative paths resolve against base_dir.
/// Throws DataError(Config) on unknown analyses or missing inputs.
ReportConfig parse_report_config(std::string_view doc, const std::filesystem::path& base_dir);
ReportConfig load_report_config(const std::filesystem::path& path);

struct ReportManifest {
  std::filesystem::path output_dir;
  std::vector<std::string> files;  // relative to output_dir, in write order
  std::vector<std::string> warnings;
};

/// Runs every requested analysis and writes its outputs plus summary.txt.
/// On failure a manifest.json listing the files written so far is left in
/// the output directory and the error is rethrown.
ReportManifest run_report(const ReportConfig& config);

}  // namespace railnet
