#include <algorithm>
#include <set>

#include "railnet/network.hpp"

namespace railnet {

namespace {

struct Incidence {
  std::size_t section;
  bool at_a;  // the joint is the section's a-end
};

const Attachment& far_end(const SectionSpec& s, bool joint_at_a) { return joint_at_a ? s.b : s.a; }
const Attachment& near_end(const SectionSpec& s, bool joint_at_a) { return joint_at_a ? s.a : s.b; }

// A joint J may be replaced by one through-section only if that changes no
// shortest path: it must be a plain pass-through (two sections on opposite
// sides, two distinct neighbours) and turning back at J must never beat
// reversing at the neighbour itself.
bool is_contractible(const RawNetwork& n, std::size_t station_idx, std::vector<Incidence>* incidences) {
  const StationSpec& joint = n.stations[station_idx];
  if (joint.kind != StationKind::Station || joint.keep) return false;

  std::vector<Incidence> inc;
  for (std::size_t i = 0; i < n.sections.size(); ++i) {
    const auto& s = n.sections[i];
    if (s.a.station == joint.id) inc.push_back({i, true});
    if (s.b.station == joint.id) inc.push_back({i, false});
    if (inc.size() > 2) return false;
  }
  if (inc.size() != 2) return false;

  const auto& s0 = n.sections[inc[0].section];
  const auto& s1 = n.sections[inc[1].section];
  if (near_end(s0, inc[0].at_a).side == near_end(s1, inc[1].at_a).side) return false;
  if (far_end(s0, inc[0].at_a).station == far_end(s1, inc[1].at_a).station) return false;

  for (const auto& in : inc) {
    const auto& sec = n.sections[in.section];
    const StationSpec* neighbour = n.find_station(far_end(sec, in.at_a).station);
    if (neighbour == nullptr || neighbour->kind == StationKind::Wye) return false;
    if (2.0 * travel_time_minutes(sec) + joint.reversal_penalty_min < neighbour->reversal_penalty_min) return false;
  }
  if (incidences != nullptr) *incidences = std::move(inc);
  return true;
}

std::string unique_section_id(const RawNetwork& n, std::string base) {
  if (n.find_section(base) == nullptr) return base;
  for (int k = 2;; ++k) {
    std::string candidate = base + "#" + std::to_string(k);
    if (n.find_section(candidate) == nullptr) return candidate;
  }
}

}  // namespace

std::vector<std::string> contractible_joints(const RawNetwork& n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n.stations.size(); ++i)
    if (is_contractible(n, i, nullptr)) out.push_back(n.stations[i].id);
  return out;
}

RawNetwork contract_joint_nodes(const RawNetwork& input) {
  RawNetwork n = input;
  for (;;) {
    std::vector<Incidence> inc;
    std::size_t joint = n.stations.size();
    for (std::size_t i = 0; i < n.stations.size(); ++i) {
      if (is_contractible(n, i, &inc)) {
        joint = i;
        break;
      }
    }
    if (joint == n.stations.size()) return n;

    // merged section runs from the far end of the lexicographically smaller
    // section id to the far end of the other one
    if (n.sections[inc[1].section].id < n.sections[inc[0].section].id) std::swap(inc[0], inc[1]);
    const SectionSpec first = n.sections[inc[0].section];
    const SectionSpec second = n.sections[inc[1].section];

    const double length = first.length_km + second.length_km;
    const double minutes = travel_time_minutes(first) + travel_time_minutes(second);

    SectionSpec merged;
    merged.a = far_end(first, inc[0].at_a);
    merged.b = far_end(second, inc[1].at_a);
    merged.length_km = length;
    merged.speed_kmh = length * 60.0 / minutes;

    const std::size_t keep_pos = std::min(inc[0].section, inc[1].section);
    const std::size_t drop_pos = std::max(inc[0].section, inc[1].section);
    n.sections.erase(n.sections.begin() + static_cast<std::ptrdiff_t>(drop_pos));
    n.sections.erase(n.sections.begin() + static_cast<std::ptrdiff_t>(keep_pos));
    merged.id = unique_section_id(n, first.id + "+" + second.id);
    n.sections.insert(n.sections.begin() + static_cast<std::ptrdiff_t>(keep_pos), std::move(merged));
    n.stations.erase(n.stations.begin() + static_cast<std::ptrdiff_t>(joint));
  }
}

}  // namespace railnet
