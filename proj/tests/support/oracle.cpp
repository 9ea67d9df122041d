#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace railnet::oracle {

namespace {

// Port layout: role-major, unlike the production graph.
// node = role * 2N + side * N + station, role 0 = arrival, 1 = departure.
struct Layout {
  int n;
  int arr(int s, int side) const { return side * n + s; }
  int dep(int s, int side) const { return 2 * n + side * n + s; }
};

int side_of(Side s) { return s == Side::L ? 0 : 1; }

}  // namespace

PortGraph::PortGraph(const RawNetwork& n, WeightKind w, const std::set<std::string>& removed) : net_(&n) {
  const int ns = static_cast<int>(n.stations.size());
  const Layout lay{ns};
  adj_.assign(4 * ns, {});
  for (int s = 0; s < ns; ++s) {
    const auto& st = n.stations[s];
    for (int side = 0; side < 2; ++side) {
      adj_[lay.arr(s, side)].push_back({lay.dep(s, 1 - side), 0.0, "", false});
      if (st.kind != StationKind::Wye)
        adj_[lay.arr(s, side)].push_back(
            {lay.dep(s, side), w == WeightKind::Time ? st.reversal_penalty_min : 0.0, "", true});
    }
  }
  for (const auto& sec : n.sections) {
    if (removed.count(sec.id)) continue;
    const int a = station(sec.a.station);
    const int b = station(sec.b.station);
    const double weight = w == WeightKind::Distance ? sec.length_km : sec.length_km / sec.speed_kmh * 60.0;
    adj_[lay.dep(a, side_of(sec.a.side))].push_back({lay.arr(b, side_of(sec.b.side)), weight, sec.id, false});
    adj_[lay.dep(b, side_of(sec.b.side))].push_back({lay.arr(a, side_of(sec.a.side)), weight, sec.id, false});
  }
}

int PortGraph::station(const std::string& id) const {
  for (std::size_t i = 0; i < net_->stations.size(); ++i)
    if (net_->stations[i].id == id) return static_cast<int>(i);
  throw std::invalid_argument("oracle: unknown station " + id);
}

std::size_t PortGraph::edge_count() const {
  std::size_t c = 0;
  for (const auto& e : adj_) c += e.size();
  return c;
}

std::vector<std::string> PortGraph::eligible() const {
  std::vector<std::string> out;
  for (const auto& st : net_->stations)
    if (st.kind == StationKind::Station) out.push_back(st.id);
  return out;
}

void PortGraph::compute_floyd() const {
  if (!fw_.empty()) return;
  const std::size_t m = adj_.size();
  fw_.assign(m, std::vector<double>(m, kUnreachable));
  for (std::size_t u = 0; u < m; ++u) {
    fw_[u][u] = 0.0;
    for (const auto& e : adj_[u]) fw_[u][e.to] = std::min(fw_[u][e.to], e.weight);
  }
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i) {
      if (fw_[i][k] == kUnreachable) continue;
      for (std::size_t j = 0; j < m; ++j) fw_[i][j] = std::min(fw_[i][j], fw_[i][k] + fw_[k][j]);
    }
}

double PortGraph::floyd(const std::string& from, const std::string& to) const {
  compute_floyd();
  const Layout lay{static_cast<int>(net_->stations.size())};
  const int a = station(from);
  const int b = station(to);
  double best = kUnreachable;
  for (int sa = 0; sa < 2; ++sa)
    for (int sb = 0; sb < 2; ++sb) best = std::min(best, fw_[lay.dep(a, sa)][lay.arr(b, sb)]);
  return best;
}

bool PortGraph::reachable_port(const std::string& from_station, const std::string& to_station) const {
  return floyd(from_station, to_station) != kUnreachable;
}

Walk PortGraph::enumerate(const std::string& from, const std::string& to) const {
  compute_floyd();
  const Layout lay{static_cast<int>(net_->stations.size())};
  const int a = station(from);
  const int b = station(to);
  const int targets[2] = {lay.arr(b, 0), lay.arr(b, 1)};

  // admissible bound on the remaining cost from each node
  std::vector<double> h(adj_.size());
  for (std::size_t u = 0; u < adj_.size(); ++u) h[u] = std::min(fw_[u][targets[0]], fw_[u][targets[1]]);

  Walk best;
  std::vector<std::string> seq;
  std::vector<char> on_path(adj_.size(), 0);
  int reversals = 0;

  // true when every extension of seq is lexicographically larger than best
  auto lex_dominated = [&] {
    const auto& b2 = best.sections;
    for (std::size_t k = 0; k < seq.size() && k < b2.size(); ++k) {
      if (seq[k] != b2[k]) return seq[k] > b2[k];
    }
    return seq.size() > b2.size();
  };

  std::function<void(int, double)> dfs = [&](int u, double cost) {
    if (h[u] == kUnreachable || cost + h[u] > best.cost) return;
    if (best.cost != kUnreachable && cost >= best.cost && lex_dominated()) return;
    if (u == targets[0] || u == targets[1]) {
      if (cost < best.cost || (cost == best.cost && seq < best.sections)) {
        best.cost = cost;
        best.sections = seq;
        best.reversals = reversals;
      }
    }
    for (const auto& e : adj_[u]) {
      if (on_path[e.to]) continue;
      on_path[e.to] = 1;
      if (!e.section.empty()) seq.push_back(e.section);
      if (e.reversal) ++reversals;
      dfs(e.to, cost + e.weight);
      if (e.reversal) --reversals;
      if (!e.section.empty()) seq.pop_back();
      on_path[e.to] = 0;
    }
  };

  for (int side = 0; side < 2; ++side) {
    const int start = lay.dep(a, side);
    on_path[start] = 1;
    dfs(start, 0.0);
    on_path[start] = 0;
  }
  return best;
}

PairTable all_pairs(const RawNetwork& n, WeightKind w, const std::set<std::string>& removed) {
  const PortGraph g(n, w, removed);
  PairTable t;
  t.stations = g.eligible();
  for (std::size_t j = 1; j < t.stations.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      t.pairs.emplace_back(i, j);
      t.walks.push_back(g.enumerate(t.stations[i], t.stations[j]));
    }
  return t;
}

double total(const PairTable& t) {
  double sum = 0.0;
  for (const auto& w : t.walks) sum += w.cost;
  return sum;
}

double reciprocal_total(const PairTable& t) {
  double sum = 0.0;
  for (const auto& w : t.walks)
    if (w.cost != kUnreachable) sum += 1.0 / w.cost;
  return sum;
}

double nri(const RawNetwork& n, WeightKind w, const std::set<std::string>& removed) {
  const double after = total(all_pairs(n, w, removed));
  if (after == kUnreachable) return kUnreachable;
  return after - total(all_pairs(n, w));
}

Redundancy redundancy(const RawNetwork& n, WeightKind w, const std::string& u, bool restricted) {
  const PairTable base = all_pairs(n, w);
  std::vector<char> counted(base.walks.size(), 1);
  if (restricted)
    for (std::size_t p = 0; p < base.walks.size(); ++p) {
      const auto& s = base.walks[p].sections;
      counted[p] = std::find(s.begin(), s.end(), u) == s.end();
    }

  std::vector<std::string> others;
  for (const auto& sec : n.sections)
    if (sec.id != u) others.push_back(sec.id);
  std::sort(others.begin(), others.end());

  Redundancy r;
  for (const auto& v : others) {
    const PairTable tv = all_pairs(n, w, {v});
    const PairTable tuv = all_pairs(n, w, {u, v});
    for (std::size_t p = 0; p < base.walks.size(); ++p) {
      if (!counted[p]) continue;
      const double cv = tv.walks[p].cost;
      const double cuv = tuv.walks[p].cost;
      r.plain += cuv == kUnreachable ? kUnreachable : cuv - cv;
      r.reciprocal_sum += (cv == kUnreachable ? 0.0 : 1.0 / cv) - (cuv == kUnreachable ? 0.0 : 1.0 / cuv);
    }
  }
  r.normalized = r.reciprocal_sum / reciprocal_total(base);
  return r;
}

}  // namespace railnet::oracle
