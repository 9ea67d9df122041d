#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "railnet/types.hpp"

namespace railnet {

inline constexpr double kDefaultReversalPenaltyMin = 15.0;

struct StationSpec {
  std::string id;
  std::string name;
  StationKind kind = StationKind::Station;
  double reversal_penalty_min = kDefaultReversalPenaltyMin;
  /// Never removed by joint contraction.
  bool keep = false;
  /// [lon, lat]; export metadata only.
  std::optional<std::array<double, 2>> coord;

  /// Wyes and auxiliary nodes are neither origins nor destinations.
  bool eligible() const { return kind == StationKind::Station; }

  friend bool operator==(const StationSpec&, const StationSpec&) = default;
};

struct Attachment {
  std::string station;
  Side side = Side::L;

  friend bool operator==(const Attachment&, const Attachment&) = default;
};

struct SectionSpec {
  std::string id;
  Attachment a;
  Attachment b;
  double length_km = 0.0;
  double speed_kmh = 0.0;

  friend bool operator==(const SectionSpec&, const SectionSpec&) = default;
};

struct RawNetwork {
  std::vector<StationSpec> stations;
  std::vector<SectionSpec> sections;

  const StationSpec* find_station(std::string_view id) const;
  const SectionSpec* find_section(std::string_view id) const;

  friend bool operator==(const RawNetwork&, const RawNetwork&) = default;
};

double travel_time_minutes(const SectionSpec& s);

struct ParseOptions {
  /// Ignore unknown keys instead of rejecting them.
  bool lenient = false;
};

/// Parses a JSON network document. Throws DataError.
RawNetwork parse_network(std::string_view doc, const ParseOptions& options = {});
RawNetwork load_network(const std::string& path, const ParseOptions& options = {});
/// Canonical JSON text; parse_network(render_network(n)) == n.
std::string render_network(const RawNetwork& n);

/// Checks the structural invariants (unique ids, endpoints, positive
/// weights, no self-loops). Throws DataError on the first violation.
void check_network(const RawNetwork& n);

/// 64-bit FNV-1a of the canonical rendering, as 16 hex digits. Identifies
/// the graph that graph-relative metrics belong to.
std::string network_fingerprint(const RawNetwork& n);

/// Replaces pass-through joints by a single merged section until no
/// joint qualifies. See is_contractible_joint() for the exact rule.
RawNetwork contract_joint_nodes(const RawNetwork& n);

/// Ids of the stations contract_joint_nodes() would remove in its first pass.
std::vector<std::string> contractible_joints(const RawNetwork& n);

struct ValidationReport {
  std::size_t station_count = 0;
  std::size_t section_count = 0;
  std::size_t eligible_count = 0;
  std::size_t wye_count = 0;
  std::size_t auxiliary_count = 0;
  std::size_t component_count = 0;
  /// degree -> number of stations with that many incident sections
  std::map<std::size_t, std::size_t> degree_histogram;
  std::vector<std::string> contractible_joints;
};

ValidationReport validate(const RawNetwork& n);
std::string format_validation(const ValidationReport& r);

}  // namespace railnet
