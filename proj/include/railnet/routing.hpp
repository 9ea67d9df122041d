#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "railnet/expansion.hpp"
#include "railnet/parallel.hpp"

namespace railnet {

struct PathResult {
  Extended cost = Extended::infinite();
  /// Traversed section ids in travel order; a section crossed twice appears twice.
  std::vector<std::string> sections;
  /// Same-side arrival->departure arcs used.
  std::size_t reversals = 0;

  bool reachable() const { return cost.is_finite(); }
};

/// Cheapest walk from either departure port of `from` to either arrival port
/// of `to`. Among equal-cost walks the one whose section-id sequence is
/// lexicographically smallest wins. Both stations must be eligible.
PathResult shortest_path(const ExpandedGraph& g, std::string_view from, std::string_view to);

namespace detail {
/// Paths of all pairs (i, j), i < j, that share destination root j.
struct RootBlock {
  std::vector<std::uint32_t> offsets;   // size j + 1
  std::vector<std::uint32_t> sections;  // per pair: sorted, unique section indices
};
}  // namespace detail

/// Shortest-path costs and section membership over all unordered pairs of
/// eligible stations.
///
/// Pair <i, j> (i < j, indices into origins()) has linear index
/// j*(j-1)/2 + i; sums over pairs run in that order. The path recorded for
/// the pair is shortest_path(origins()[i], origins()[j]).
class PathMatrix {
 public:
  PathMatrix() = default;

  WeightKind weight_kind() const { return weight_kind_; }
  std::size_t size() const { return origins_.size(); }
  std::size_t pair_count() const { return size() * (size() - (size() > 0 ? 1 : 0)) / 2; }
  const std::vector<std::string>& origins() const { return origins_; }
  const std::vector<std::string>& section_ids() const { return section_ids_; }
  std::size_t section_count() const { return section_ids_.size(); }

  /// Symmetric, zero diagonal, +inf for unreachable pairs.
  const Eigen::MatrixXd& costs() const { return costs_; }
  Extended cost(std::size_t i, std::size_t j) const { return Extended::from_raw(costs_(i, j)); }
  /// Section indices on the pair's path (sorted, unique); empty when unreachable.
  std::span<const std::uint32_t> usage(std::size_t i, std::size_t j) const;
  std::vector<std::string> usage_ids(std::size_t i, std::size_t j) const;

  static constexpr std::size_t pair_index(std::size_t i, std::size_t j) {
    return i < j ? j * (j - 1) / 2 + i : i * (i - 1) / 2 + j;
  }

  /// Calls fn(i, j) for every pair i < j in linear pair order.
  template <class Fn>
  void for_each_pair(Fn&& fn) const {
    for (std::size_t j = 1; j < size(); ++j)
      for (std::size_t i = 0; i < j; ++i) fn(i, j);
  }

  friend PathMatrix all_pairs(const ExpandedGraph& g, const ParallelOptions& options);
  friend PathMatrix all_pairs_after_removal(const ExpandedGraph& reduced, const PathMatrix& base,
                                            std::span<const std::uint32_t> newly_removed,
                                            const ParallelOptions& options);

 private:
  WeightKind weight_kind_ = WeightKind::Distance;
  std::vector<std::string> origins_;
  std::vector<std::string> section_ids_;
  Eigen::MatrixXd costs_;
  std::vector<std::shared_ptr<const detail::RootBlock>> roots_;
};

PathMatrix all_pairs(const ExpandedGraph& g, const ParallelOptions& options = {});

/// Same result as all_pairs(reduced), derived from the matrix of the graph
/// before `newly_removed` were deleted. Only destination roots whose recorded
/// paths cross a removed section are searched again.
PathMatrix all_pairs_after_removal(const ExpandedGraph& reduced, const PathMatrix& base,
                                   std::span<const std::uint32_t> newly_removed, const ParallelOptions& options = {});

/// Sum of all pair costs. Throws AnalysisError(DisconnectedNetwork) if any pair is unreachable.
double total_cost(const PathMatrix& m);

/// Sum of reciprocal pair costs, unreachable pairs contributing 0.
/// Throws AnalysisError(ZeroCostPair) on a zero finite cost.
double reciprocal_total(const PathMatrix& m);

/// Number of unreachable pairs.
std::size_t unreachable_pairs(const PathMatrix& m);

}  // namespace railnet
