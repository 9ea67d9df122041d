#include "railnet/resilience.hpp"

#include <algorithm>
#include <limits>

namespace railnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Extended total_or_infinite(const PathMatrix& m) {
  if (unreachable_pairs(m) > 0) return Extended::infinite();
  return total_cost(m);
}

double reciprocal_of(double c) { return c == kInf ? 0.0 : 1.0 / c; }

// Sums for one (u, v) combination over either the restricted or all pairs.
struct TermSums {
  bool plain_infinite = false;
  double plain = 0.0;
  double reciprocal = 0.0;

  Extended plain_value() const { return plain_infinite ? Extended::infinite() : Extended(plain); }
};

struct TermPair {
  TermSums restricted;
  TermSums all;
};

TermPair compare_variants(const PathMatrix& without_v, const PathMatrix& without_uv,
                          const std::vector<std::uint8_t>& avoids_u) {
  TermPair out;
  const auto& cv = without_v.costs();
  const auto& cuv = without_uv.costs();
  std::size_t p = 0;
  without_v.for_each_pair([&](std::size_t i, std::size_t j) {
    const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
    const double a = cv(ii, jj);
    const double b = cuv(ii, jj);
    const double recip = reciprocal_of(a) - reciprocal_of(b);
    for (TermSums* sums : {&out.all, avoids_u[p] ? &out.restricted : nullptr}) {
      if (sums == nullptr) continue;
      if (b == kInf) sums->plain_infinite = true;
      else sums->plain += b - a;
      sums->reciprocal += recip;
    }
    ++p;
  });
  return out;
}

std::vector<std::uint8_t> pairs_avoiding(const PathMatrix& m, std::uint32_t u) {
  std::vector<std::uint8_t> avoids(m.pair_count(), 0);
  std::size_t p = 0;
  m.for_each_pair([&](std::size_t i, std::size_t j) {
    const auto used = m.usage(i, j);
    avoids[p++] = std::binary_search(used.begin(), used.end(), u) ? 0 : 1;
  });
  return avoids;
}

RedundancyFigures figures(const std::vector<TermSums>& terms, double baseline_reciprocal) {
  RedundancyFigures f;
  bool infinite = false;
  double plain = 0.0;
  for (const auto& t : terms) {
    if (t.plain_infinite) infinite = true;
    else plain += t.plain;
    f.reciprocal_sum += t.reciprocal;
  }
  f.plain = infinite ? Extended::infinite() : Extended(plain);
  f.normalized = baseline_reciprocal > 0.0 ? f.reciprocal_sum / baseline_reciprocal : 0.0;
  return f;
}

}  // namespace

ResilienceEngine::ResilienceEngine(ExpandedGraph g, ParallelOptions options)
    : graph_(std::move(g)), options_(options), baseline_(all_pairs(graph_, options_)) {}

double ResilienceEngine::baseline_total() const { return total_cost(baseline_); }

std::uint32_t ResilienceEngine::require_active(const std::string& id) const {
  const auto idx = resolve_section(graph_, id);
  if (graph_.is_removed(idx))
    throw AnalysisError(AnalysisError::Code::InvalidArgument, "section \"" + id + "\" is already removed");
  return idx;
}

std::vector<std::uint32_t> ResilienceEngine::active_sections() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s < graph_.section_count(); ++s)
    if (!graph_.is_removed(s)) out.push_back(s);
  return out;
}

PathMatrix ResilienceEngine::without(std::span<const std::uint32_t> removed, const PathMatrix& from,
                                     std::span<const std::uint32_t> newly, unsigned threads) const {
  return all_pairs_after_removal(remove_section_indices(graph_, removed), from, newly, ParallelOptions{threads});
}

NriResult ResilienceEngine::nri(const std::string& u) const {
  const auto idx = require_active(u);
  const double base = baseline_total();
  const std::uint32_t removed[] = {idx};
  const auto total = total_or_infinite(without(removed, baseline_, removed, options_.resolved()));
  return {u, graph_.weight_kind(), total.is_finite() ? Extended(total.value() - base) : Extended::infinite()};
}

PairNriResult ResilienceEngine::nri_pair(const std::string& u, const std::string& v) const {
  const auto iu = require_active(u);
  const auto iv = require_active(v);
  if (iu == iv) throw AnalysisError(AnalysisError::Code::InvalidArgument, "pair NRI needs two different sections");
  const double base = baseline_total();
  const std::uint32_t removed[] = {iu, iv};
  const auto total = total_or_infinite(without(removed, baseline_, removed, options_.resolved()));
  return {u, v, graph_.weight_kind(), total.is_finite() ? Extended(total.value() - base) : Extended::infinite()};
}

std::vector<NriResult> ResilienceEngine::nri_all() const {
  const double base = baseline_total();
  const auto sections = active_sections();
  std::vector<NriResult> out(sections.size());
  parallel_for(sections.size(), options_.resolved(), [&](std::size_t k) {
    const std::uint32_t removed[] = {sections[k]};
    const auto total = total_or_infinite(without(removed, baseline_, removed, 1));
    out[k] = {graph_.section_id(sections[k]), graph_.weight_kind(),
              total.is_finite() ? Extended(total.value() - base) : Extended::infinite()};
  });
  return out;
}

RedundancyResult ResilienceEngine::redundancy(const std::string& u, const RedundancyOptions& opts) const {
  return redundancy_sweep({u}, opts).front();
}

std::vector<RedundancyResult> ResilienceEngine::redundancy_sweep(const std::vector<std::string>& targets,
                                                                 const RedundancyOptions& opts) const {
  if (targets.empty()) throw AnalysisError(AnalysisError::Code::InvalidArgument, "no redundancy targets given");
  std::vector<std::uint32_t> target_idx;
  for (const auto& t : targets) target_idx.push_back(require_active(t));

  std::vector<std::vector<std::uint8_t>> avoids;
  for (auto u : target_idx) avoids.push_back(pairs_avoiding(baseline_, u));

  const auto sections = active_sections();
  // terms[t][k]: target t, failed section sections[k]
  std::vector<std::vector<TermPair>> terms(target_idx.size(), std::vector<TermPair>(sections.size()));

  parallel_for(sections.size(), options_.resolved(), [&](std::size_t k) {
    const std::uint32_t v = sections[k];
    const std::uint32_t only_v[] = {v};
    const PathMatrix without_v = without(only_v, baseline_, only_v, 1);
    for (std::size_t t = 0; t < target_idx.size(); ++t) {
      const std::uint32_t u = target_idx[t];
      if (u == v) continue;
      const std::uint32_t both[] = {u, v};
      const std::uint32_t only_u[] = {u};
      terms[t][k] = compare_variants(without_v, without(both, without_v, only_u, 1), avoids[t]);
    }
  });

  const double baseline_reciprocal = reciprocal_total(baseline_);
  std::vector<RedundancyResult> out;
  for (std::size_t t = 0; t < target_idx.size(); ++t) {
    RedundancyResult r;
    r.section = targets[t];
    r.weight_kind = graph_.weight_kind();
    r.network = graph_.network_id();
    r.restricted = !opts.unrestricted;
    r.baseline_reciprocal = baseline_reciprocal;

    std::vector<TermSums> selected, other;
    for (std::size_t k = 0; k < sections.size(); ++k) {
      if (sections[k] == target_idx[t]) continue;
      const auto& pair = terms[t][k];
      const TermSums& chosen = r.restricted ? pair.restricted : pair.all;
      selected.push_back(chosen);
      other.push_back(r.restricted ? pair.all : pair.restricted);
      r.per_v.push_back({graph_.section_id(sections[k]), chosen.plain_value(), chosen.reciprocal});
    }
    const auto main = figures(selected, baseline_reciprocal);
    r.r_plain = main.plain;
    r.r_reciprocal_sum = main.reciprocal_sum;
    r.r_reciprocal_normalized = main.normalized;
    r.alternate = figures(other, baseline_reciprocal);
    out.push_back(std::move(r));
  }
  return out;
}

NriResult nri(const ExpandedGraph& g, const std::string& u, const ParallelOptions& options) {
  resolve_section(g, u);
  return ResilienceEngine(g, options).nri(u);
}

PairNriResult nri_pair(const ExpandedGraph& g, const std::string& u, const std::string& v,
                       const ParallelOptions& options) {
  resolve_section(g, u);
  resolve_section(g, v);
  return ResilienceEngine(g, options).nri_pair(u, v);
}

RedundancyResult redundancy_plain(const ExpandedGraph& g, const std::string& u, const RedundancyOptions& opts,
                                  const ParallelOptions& options) {
  resolve_section(g, u);
  return ResilienceEngine(g, options).redundancy(u, opts);
}

RedundancyResult redundancy_reciprocal(const ExpandedGraph& g, const std::string& u, const RedundancyOptions& opts,
                                       const ParallelOptions& options) {
  return redundancy_plain(g, u, opts, options);
}

std::vector<RedundancyResult> redundancy_sweep(const ExpandedGraph& g, const std::vector<std::string>& targets,
                                               const RedundancyOptions& opts, const ParallelOptions& options) {
  for (const auto& t : targets) resolve_section(g, t);
  return ResilienceEngine(g, options).redundancy_sweep(targets, opts);
}

}  // namespace railnet
