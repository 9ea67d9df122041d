#include "railnet/routing.hpp"

#include <algorithm>
#include <limits>

namespace railnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

// Reverse Dijkstra towards one destination station plus, for every settled
// node, the arc that starts its lexicographically smallest cheapest walk.
//
// Nodes are settled in (distance, departure-before-arrival) order. Zero-weight
// arcs only run arrival -> departure inside a station, so every tight
// successor of a node is settled before the node itself and the choice can be
// made at pop time.
class RootSearch {
 public:
  explicit RootSearch(const ExpandedGraph& g)
      : g_(g), arcs_(g.arcs()), dist_(g.node_count(), kInf), next_(g.node_count(), kNone), settled_(g.node_count(), 0) {}

  void run(std::uint32_t root_station) {
    for (auto v : touched_) {
      dist_[v] = kInf;
      next_[v] = kNone;
      settled_[v] = 0;
    }
    touched_.clear();
    heap_.clear();

    for (Side side : {Side::L, Side::R}) {
      const auto v = ExpandedGraph::node_of(root_station, side, PortRole::Arrival);
      dist_[v] = 0.0;
      touched_.push_back(v);
      push(0.0, v);
    }

    while (!heap_.empty()) {
      std::pop_heap(heap_.begin(), heap_.end(), HeapOrder{});
      const Entry top = heap_.back();
      heap_.pop_back();
      const std::uint32_t v = top.node;
      if (settled_[v] || top.dist > dist_[v]) continue;
      settled_[v] = 1;
      if (v / 4 != root_station || (v & 1u) != 0) choose_next(v);  // root arrival ports end every walk

      for (auto ai : g_.in_arcs(v)) {
        const Arc& a = arcs_[ai];
        if (!g_.arc_active(a) || settled_[a.from]) continue;
        const double nd = a.weight + dist_[v];
        if (nd < dist_[a.from]) {
          if (dist_[a.from] == kInf) touched_.push_back(a.from);
          dist_[a.from] = nd;
          push(nd, a.from);
        }
      }
    }
  }

  double dist(std::uint32_t v) const { return dist_[v]; }

  /// Best departure port of `station`, or kNone if it cannot reach the root.
  std::uint32_t best_start(std::uint32_t station) const {
    const auto left = ExpandedGraph::node_of(station, Side::L, PortRole::Departure);
    const auto right = ExpandedGraph::node_of(station, Side::R, PortRole::Departure);
    if (dist_[left] == kInf && dist_[right] == kInf) return kNone;
    if (dist_[left] != dist_[right]) return dist_[left] < dist_[right] ? left : right;
    return sequence_less({-1, right}, {-1, left}) ? right : left;
  }

  /// Walks the chosen arcs from `start`, calling visit(arc) for each.
  template <class Visit>
  void walk(std::uint32_t start, Visit&& visit) const {
    for (std::uint32_t v = start; next_[v] != kNone;) {
      const Arc& a = arcs_[next_[v]];
      visit(a);
      v = a.to;
    }
  }

 private:
  struct Entry {
    double dist;
    std::uint32_t key;  // node index with departures ordered before arrivals at equal distance
    std::uint32_t node;
  };
  struct HeapOrder {
    bool operator()(const Entry& x, const Entry& y) const {
      if (x.dist != y.dist) return x.dist > y.dist;
      return x.key > y.key;
    }
  };

  void push(double d, std::uint32_t v) {
    const std::uint32_t departure_first = (v & 1u) ? 0u : 1u;
    heap_.push_back({d, (departure_first << 31) | v, v});
    std::push_heap(heap_.begin(), heap_.end(), HeapOrder{});
  }

  // Section sequence cursor: an optional leading section, then the chosen
  // chain from `node`.
  struct Cursor {
    std::int32_t pending;
    std::uint32_t node;
  };

  std::int32_t advance(Cursor& c) const {
    if (c.pending >= 0) {
      const auto s = c.pending;
      c.pending = -1;
      return s;
    }
    while (next_[c.node] != kNone) {
      const Arc& a = arcs_[next_[c.node]];
      c.node = a.to;
      if (a.section != kInternalArc) return a.section;
    }
    return -1;
  }

  // End of sequence (-1) sorts before any section, so a proper prefix is smaller.
  bool sequence_less(Cursor x, Cursor y) const {
    for (;;) {
      const auto sx = advance(x);
      const auto sy = advance(y);
      if (sx != sy) return sx < sy;
      if (sx < 0) return false;
    }
  }

  void choose_next(std::uint32_t v) {
    std::uint32_t best = kNone;
    for (auto ai : g_.out_arcs(v)) {
      const Arc& a = arcs_[ai];
      if (!g_.arc_active(a) || !settled_[a.to] || a.weight + dist_[a.to] != dist_[v]) continue;
      if (best == kNone) {
        best = ai;
        continue;
      }
      const Arc& b = arcs_[best];
      if (sequence_less({a.section, a.to}, {b.section, b.to})) best = ai;
    }
    next_[v] = best;
  }

  const ExpandedGraph& g_;
  std::span<const Arc> arcs_;
  std::vector<double> dist_;
  std::vector<std::uint32_t> next_;
  std::vector<std::uint8_t> settled_;
  std::vector<std::uint32_t> touched_;
  std::vector<Entry> heap_;
};

std::uint32_t require_eligible(const ExpandedGraph& g, std::string_view id) {
  auto idx = g.station_index(id);
  if (!idx) throw AnalysisError(AnalysisError::Code::UnknownStation, "unknown station \"" + std::string(id) + "\"");
  if (g.station_kind(*idx) != StationKind::Station)
    throw AnalysisError(AnalysisError::Code::InvalidArgument,
                        "station \"" + std::string(id) + "\" is a " + std::string(to_string(g.station_kind(*idx))) +
                            " and cannot be an origin or destination");
  return *idx;
}

// Fills costs of column j and the paths of pairs (i, j), i < j.
std::shared_ptr<const detail::RootBlock> search_root(RootSearch& search, const ExpandedGraph& g, std::size_t j,
                                                     Eigen::MatrixXd& costs) {
  const auto eligible = g.eligible_stations();
  search.run(eligible[j]);
  auto block = std::make_shared<detail::RootBlock>();
  block->offsets.reserve(j + 1);
  block->offsets.push_back(0);
  std::vector<std::uint32_t> on_path;
  for (std::size_t i = 0; i < j; ++i) {
    const auto start = search.best_start(eligible[i]);
    if (start == kNone) {
      costs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = kInf;
    } else {
      costs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = search.dist(start);
      on_path.clear();
      search.walk(start, [&](const Arc& a) {
        if (a.section != kInternalArc) on_path.push_back(static_cast<std::uint32_t>(a.section));
      });
      std::sort(on_path.begin(), on_path.end());
      on_path.erase(std::unique(on_path.begin(), on_path.end()), on_path.end());
      block->sections.insert(block->sections.end(), on_path.begin(), on_path.end());
    }
    block->offsets.push_back(static_cast<std::uint32_t>(block->sections.size()));
  }
  return block;
}

void mirror_column(Eigen::MatrixXd& costs, std::size_t j) {
  for (std::size_t i = 0; i < j; ++i)
    costs(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
        costs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

// Roots are processed by a fixed set of workers, each owning one search
// workspace; every root writes only its own column and block.
template <class Roots>
void search_roots(const ExpandedGraph& g, const Roots& roots, Eigen::MatrixXd& costs,
                  std::vector<std::shared_ptr<const detail::RootBlock>>& blocks, const ParallelOptions& options) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(options.resolved(), roots.size()));
  parallel_for(workers, static_cast<unsigned>(workers), [&](std::size_t w) {
    RootSearch search(g);
    for (std::size_t k = w; k < roots.size(); k += workers) {
      const std::size_t j = roots[k];
      blocks[j] = search_root(search, g, j, costs);
    }
  });
  for (auto j : roots) mirror_column(costs, j);
}

}  // namespace

PathResult shortest_path(const ExpandedGraph& g, std::string_view from, std::string_view to) {
  const auto a = require_eligible(g, from);
  const auto b = require_eligible(g, to);
  if (a == b) throw AnalysisError(AnalysisError::Code::InvalidArgument, "origin and destination are the same station");

  RootSearch search(g);
  search.run(b);
  PathResult result;
  const auto start = search.best_start(a);
  if (start == kNone) return result;
  result.cost = search.dist(start);
  search.walk(start, [&](const Arc& arc) {
    if (arc.section != kInternalArc) result.sections.push_back(g.section_id(static_cast<std::uint32_t>(arc.section)));
    if (arc.kind == ArcKind::Reversal) ++result.reversals;
  });
  return result;
}

std::span<const std::uint32_t> PathMatrix::usage(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (i == j) return {};
  const auto& block = *roots_[j];
  return {block.sections.data() + block.offsets[i], block.offsets[i + 1] - block.offsets[i]};
}

std::vector<std::string> PathMatrix::usage_ids(std::size_t i, std::size_t j) const {
  std::vector<std::string> out;
  for (auto s : usage(i, j)) out.push_back(section_ids_[s]);
  return out;
}

PathMatrix all_pairs(const ExpandedGraph& g, const ParallelOptions& options) {
  PathMatrix m;
  m.weight_kind_ = g.weight_kind();
  for (auto s : g.eligible_stations()) m.origins_.push_back(g.station_id(s));
  for (std::uint32_t s = 0; s < g.section_count(); ++s) m.section_ids_.push_back(g.section_id(s));
  const auto n = static_cast<Eigen::Index>(m.origins_.size());
  m.costs_ = Eigen::MatrixXd::Zero(n, n);
  m.roots_.assign(m.origins_.size(), nullptr);
  if (n == 0) return m;
  m.roots_[0] = std::make_shared<detail::RootBlock>(detail::RootBlock{{0}, {}});

  std::vector<std::size_t> roots;
  for (std::size_t j = 1; j < m.origins_.size(); ++j) roots.push_back(j);
  search_roots(g, roots, m.costs_, m.roots_, options);
  return m;
}

PathMatrix all_pairs_after_removal(const ExpandedGraph& reduced, const PathMatrix& base,
                                   std::span<const std::uint32_t> newly_removed, const ParallelOptions& options) {
  PathMatrix m = base;
  if (newly_removed.empty() || m.size() < 2) return m;

  std::vector<std::uint8_t> dead(base.section_count(), 0);
  for (auto s : newly_removed) dead.at(s) = 1;

  std::vector<std::size_t> roots;
  for (std::size_t j = 1; j < m.size(); ++j) {
    const auto& sections = m.roots_[j]->sections;
    if (std::any_of(sections.begin(), sections.end(), [&](std::uint32_t s) { return dead[s] != 0; })) roots.push_back(j);
  }
  search_roots(reduced, roots, m.costs_, m.roots_, options);
  return m;
}

double total_cost(const PathMatrix& m) {
  double sum = 0.0;
  m.for_each_pair([&](std::size_t i, std::size_t j) {
    const double c = m.costs()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    if (c == kInf)
      throw AnalysisError(AnalysisError::Code::DisconnectedNetwork,
                          "stations \"" + m.origins()[i] + "\" and \"" + m.origins()[j] + "\" are not connected");
    sum += c;
  });
  return sum;
}

double reciprocal_total(const PathMatrix& m) {
  double sum = 0.0;
  m.for_each_pair([&](std::size_t i, std::size_t j) {
    const double c = m.costs()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    if (c == 0.0)
      throw AnalysisError(AnalysisError::Code::ZeroCostPair,
                          "stations \"" + m.origins()[i] + "\" and \"" + m.origins()[j] + "\" have zero cost");
    if (c != kInf) sum += 1.0 / c;
  });
  return sum;
}

std::size_t unreachable_pairs(const PathMatrix& m) {
  std::size_t count = 0;
  m.for_each_pair([&](std::size_t i, std::size_t j) {
    if (m.costs()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) == kInf) ++count;
  });
  return count;
}

}  // namespace railnet
