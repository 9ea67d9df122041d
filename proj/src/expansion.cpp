#include "railnet/expansion.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace railnet {

struct ExpandedGraph::Topology {
  WeightKind weight_kind = WeightKind::Distance;
  std::string network_id;
  std::vector<std::string> station_ids;
  std::vector<StationKind> station_kinds;
  std::map<std::string, std::uint32_t, std::less<>> station_lookup;
  std::vector<std::uint32_t> eligible;
  std::vector<std::string> section_ids;  // sorted
  std::map<std::string, std::uint32_t, std::less<>> section_lookup;
  std::vector<std::array<std::uint32_t, 2>> section_arcs;
  std::vector<Arc> arcs;
  // CSR adjacency over arc indices
  std::vector<std::uint32_t> out_offsets, out_list;
  std::vector<std::uint32_t> in_offsets, in_list;
};

namespace {

void build_csr(std::size_t node_count, const std::vector<Arc>& arcs, bool outgoing, std::vector<std::uint32_t>& offsets,
               std::vector<std::uint32_t>& list) {
  offsets.assign(node_count + 1, 0);
  for (const auto& a : arcs) ++offsets[(outgoing ? a.from : a.to) + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  list.resize(arcs.size());
  std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
  for (std::uint32_t i = 0; i < arcs.size(); ++i) list[cursor[outgoing ? arcs[i].from : arcs[i].to]++] = i;
}

}  // namespace

WeightKind ExpandedGraph::weight_kind() const { return topo_->weight_kind; }
const std::string& ExpandedGraph::network_id() const { return topo_->network_id; }
std::size_t ExpandedGraph::station_count() const { return topo_ ? topo_->station_ids.size() : 0; }
std::size_t ExpandedGraph::section_count() const { return topo_ ? topo_->section_ids.size() : 0; }
const std::string& ExpandedGraph::station_id(std::uint32_t station) const { return topo_->station_ids.at(station); }
StationKind ExpandedGraph::station_kind(std::uint32_t station) const { return topo_->station_kinds.at(station); }

std::optional<std::uint32_t> ExpandedGraph::station_index(std::string_view id) const {
  auto it = topo_->station_lookup.find(id);
  if (it == topo_->station_lookup.end()) return std::nullopt;
  return it->second;
}

std::span<const std::uint32_t> ExpandedGraph::eligible_stations() const { return topo_->eligible; }
const std::string& ExpandedGraph::section_id(std::uint32_t section) const { return topo_->section_ids.at(section); }

std::optional<std::uint32_t> ExpandedGraph::section_index(std::string_view id) const {
  auto it = topo_->section_lookup.find(id);
  if (it == topo_->section_lookup.end()) return std::nullopt;
  return it->second;
}

std::array<std::uint32_t, 2> ExpandedGraph::section_arcs(std::uint32_t section) const {
  return topo_->section_arcs.at(section);
}

std::span<const Arc> ExpandedGraph::arcs() const { return topo_->arcs; }

std::span<const std::uint32_t> ExpandedGraph::out_arcs(std::uint32_t node) const {
  const auto& t = *topo_;
  return {t.out_list.data() + t.out_offsets[node], t.out_offsets[node + 1] - t.out_offsets[node]};
}

std::span<const std::uint32_t> ExpandedGraph::in_arcs(std::uint32_t node) const {
  const auto& t = *topo_;
  return {t.in_list.data() + t.in_offsets[node], t.in_offsets[node + 1] - t.in_offsets[node]};
}

PortNode ExpandedGraph::port(std::uint32_t node) const {
  PortNode p;
  p.index = node;
  p.station = node / 4;
  p.side = (node & 2u) ? Side::R : Side::L;
  p.role = (node & 1u) ? PortRole::Departure : PortRole::Arrival;
  return p;
}

std::vector<std::uint32_t> ExpandedGraph::removed_sections() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < removed_.size(); ++i)
    if (removed_[i]) out.push_back(i);
  return out;
}

std::size_t ExpandedGraph::active_arc_count() const {
  return topo_->arcs.size() - 2 * removed_sections().size();
}

ExpandedGraph expand(const RawNetwork& n, WeightKind w) {
  check_network(n);
  auto topo = std::make_shared<ExpandedGraph::Topology>();
  topo->weight_kind = w;
  topo->network_id = network_fingerprint(n);

  for (std::uint32_t i = 0; i < n.stations.size(); ++i) {
    const auto& st = n.stations[i];
    topo->station_ids.push_back(st.id);
    topo->station_kinds.push_back(st.kind);
    topo->station_lookup.emplace(st.id, i);
    if (st.eligible()) topo->eligible.push_back(i);
  }

  std::vector<const SectionSpec*> sorted;
  for (const auto& s : n.sections) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(), [](const SectionSpec* x, const SectionSpec* y) { return x->id < y->id; });

  auto& arcs = topo->arcs;
  for (std::uint32_t k = 0; k < sorted.size(); ++k) {
    const SectionSpec& s = *sorted[k];
    topo->section_ids.push_back(s.id);
    topo->section_lookup.emplace(s.id, k);
    const double weight = w == WeightKind::Distance ? s.length_km : travel_time_minutes(s);
    const std::uint32_t ia = topo->station_lookup.at(s.a.station);
    const std::uint32_t ib = topo->station_lookup.at(s.b.station);
    const auto first = static_cast<std::uint32_t>(arcs.size());
    arcs.push_back({ExpandedGraph::node_of(ia, s.a.side, PortRole::Departure),
                    ExpandedGraph::node_of(ib, s.b.side, PortRole::Arrival), weight, static_cast<std::int32_t>(k),
                    ArcKind::Section});
    arcs.push_back({ExpandedGraph::node_of(ib, s.b.side, PortRole::Departure),
                    ExpandedGraph::node_of(ia, s.a.side, PortRole::Arrival), weight, static_cast<std::int32_t>(k),
                    ArcKind::Section});
    topo->section_arcs.push_back({first, first + 1});
  }

  for (std::uint32_t i = 0; i < n.stations.size(); ++i) {
    const auto& st = n.stations[i];
    for (Side side : {Side::L, Side::R}) {
      const auto arrival = ExpandedGraph::node_of(i, side, PortRole::Arrival);
      if (st.kind != StationKind::Wye) {
        const double penalty = w == WeightKind::Time ? st.reversal_penalty_min : 0.0;
        arcs.push_back({arrival, ExpandedGraph::node_of(i, side, PortRole::Departure), penalty, kInternalArc,
                        ArcKind::Reversal});
      }
      arcs.push_back({arrival, ExpandedGraph::node_of(i, opposite(side), PortRole::Departure), 0.0, kInternalArc,
                      ArcKind::PassThrough});
    }
  }

  const std::size_t nodes = 4 * n.stations.size();
  build_csr(nodes, arcs, true, topo->out_offsets, topo->out_list);
  build_csr(nodes, arcs, false, topo->in_offsets, topo->in_list);

  ExpandedGraph g;
  g.topo_ = std::move(topo);
  return g;
}

std::uint32_t resolve_section(const ExpandedGraph& g, std::string_view id) {
  auto idx = g.section_index(id);
  if (!idx) throw AnalysisError(AnalysisError::Code::UnknownSection, "unknown section \"" + std::string(id) + "\"");
  return *idx;
}

std::vector<std::uint32_t> resolve_sections(const ExpandedGraph& g, std::span<const std::string> ids) {
  std::vector<std::uint32_t> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(resolve_section(g, id));
  return out;
}

ExpandedGraph remove_section_indices(const ExpandedGraph& g, std::span<const std::uint32_t> dead) {
  ExpandedGraph out = g;
  if (dead.empty()) return out;
  if (out.removed_.empty()) out.removed_.assign(g.section_count(), 0);
  for (auto s : dead) {
    if (s >= g.section_count())
      throw AnalysisError(AnalysisError::Code::UnknownSection, "section index out of range");
    out.removed_[s] = 1;
  }
  return out;
}

ExpandedGraph remove_sections(const ExpandedGraph& g, std::span<const std::string> dead) {
  const auto idx = resolve_sections(g, dead);
  return remove_section_indices(g, idx);
}

std::string to_dot(const ExpandedGraph& g) {
  std::ostringstream out;
  out << "digraph expanded {\n  rankdir=LR;\n";
  for (std::uint32_t v = 0; v < g.node_count(); ++v) {
    const auto p = g.port(v);
    out << "  n" << v << " [label=\"" << g.station_id(p.station) << "/" << to_string(p.side) << "/"
        << (p.role == PortRole::Arrival ? "arr" : "dep") << "\"];\n";
  }
  for (const auto& a : g.arcs()) {
    if (!g.arc_active(a)) continue;
    out << "  n" << a.from << " -> n" << a.to << " [label=\"" << a.weight;
    if (a.section != kInternalArc) out << " " << g.section_id(static_cast<std::uint32_t>(a.section));
    else out << (a.kind == ArcKind::Reversal ? " reversal" : " pass");
    out << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace railnet
