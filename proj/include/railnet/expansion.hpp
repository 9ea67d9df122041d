#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "railnet/network.hpp"

namespace railnet {

enum class PortRole { Arrival, Departure };

/// One of the four nodes that stand for a station side and travel direction.
struct PortNode {
  std::uint32_t station = 0;  // index into ExpandedGraph::station_ids()
  Side side = Side::L;
  PortRole role = PortRole::Arrival;
  std::uint32_t index = 0;
};

enum class ArcKind {
  Section,      // departure port -> arrival port of the adjacent station
  Reversal,     // same-side arrival -> departure (locomotive reversal)
  PassThrough,  // cross-side arrival -> departure
};

inline constexpr std::int32_t kInternalArc = -1;

struct Arc {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  double weight = 0.0;
  std::int32_t section = kInternalArc;  // section index, or kInternalArc
  ArcKind kind = ArcKind::Section;
};

/// Directed port graph of a railway network under one weighting.
///
/// Each station or wye becomes four port nodes. Node index of
/// (station s, side, role) is 4*s + 2*[side == R] + [role == Departure].
/// Sections are indexed in lexicographic id order, which is also the order
/// used to break ties between equal-cost paths.
///
/// The topology is immutable and shared between copies; a copy only owns
/// its mask of removed sections, so deleting sections is cheap.
class ExpandedGraph {
 public:
  struct Topology;

  ExpandedGraph() = default;

  WeightKind weight_kind() const;
  /// Fingerprint of the network the graph was expanded from.
  const std::string& network_id() const;
  std::size_t station_count() const;
  std::size_t node_count() const { return 4 * station_count(); }
  std::size_t section_count() const;

  const std::string& station_id(std::uint32_t station) const;
  StationKind station_kind(std::uint32_t station) const;
  std::optional<std::uint32_t> station_index(std::string_view id) const;
  /// Eligible stations (not wye, not auxiliary) in document order.
  std::span<const std::uint32_t> eligible_stations() const;

  const std::string& section_id(std::uint32_t section) const;
  std::optional<std::uint32_t> section_index(std::string_view id) const;
  /// The two directed arcs of a section (a->b first).
  std::array<std::uint32_t, 2> section_arcs(std::uint32_t section) const;

  /// All arcs, including those of removed sections.
  std::span<const Arc> arcs() const;
  std::span<const std::uint32_t> out_arcs(std::uint32_t node) const;
  std::span<const std::uint32_t> in_arcs(std::uint32_t node) const;
  PortNode port(std::uint32_t node) const;

  bool is_removed(std::uint32_t section) const { return !removed_.empty() && removed_[section] != 0; }
  bool arc_active(const Arc& a) const { return a.section == kInternalArc || !is_removed(static_cast<std::uint32_t>(a.section)); }
  std::vector<std::uint32_t> removed_sections() const;
  /// Arcs not belonging to a removed section.
  std::size_t active_arc_count() const;

  static constexpr std::uint32_t node_of(std::uint32_t station, Side side, PortRole role) {
    return 4 * station + (side == Side::R ? 2u : 0u) + (role == PortRole::Departure ? 1u : 0u);
  }

  friend ExpandedGraph expand(const RawNetwork& n, WeightKind w);
  friend ExpandedGraph remove_section_indices(const ExpandedGraph& g, std::span<const std::uint32_t> dead);

 private:
  std::shared_ptr<const Topology> topo_;
  std::vector<std::uint8_t> removed_;
};

ExpandedGraph expand(const RawNetwork& n, WeightKind w);

/// Copy of g with both arcs of every listed section disabled; internal arcs
/// and surviving weights are untouched. Throws AnalysisError on unknown ids.
ExpandedGraph remove_sections(const ExpandedGraph& g, std::span<const std::string> dead);
ExpandedGraph remove_section_indices(const ExpandedGraph& g, std::span<const std::uint32_t> dead);

/// Resolves section ids to indices; throws AnalysisError naming the first unknown id.
std::vector<std::uint32_t> resolve_sections(const ExpandedGraph& g, std::span<const std::string> ids);
std::uint32_t resolve_section(const ExpandedGraph& g, std::string_view id);

/// Graphviz rendering of the active arcs.
std::string to_dot(const ExpandedGraph& g);

}  // namespace railnet
