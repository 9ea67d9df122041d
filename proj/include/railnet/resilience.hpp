#pragma once

#include <string>
#include <vector>

#include "railnet/routing.hpp"

namespace railnet {

/// Network Robustness Index of one section: total cost without it minus the
/// baseline total. Infinite when the deletion disconnects an eligible pair.
struct NriResult {
  std::string section;
  WeightKind weight_kind = WeightKind::Distance;
  Extended q;
};

struct PairNriResult {
  std::string u;
  std::string v;
  WeightKind weight_kind = WeightKind::Distance;
  Extended q;
};

/// Redundancy that section u provides when section v fails.
struct RedundancyTerm {
  std::string v;
  Extended plain;           // sum of (cost without u and v) - (cost without v)
  double reciprocal = 0.0;  // sum of 1/(cost without v) - 1/(cost without u and v)
};

struct RedundancyFigures {
  Extended plain;
  double reciprocal_sum = 0.0;
  double normalized = 0.0;  // reciprocal_sum / baseline reciprocal total
};

/// Redundancy index of section u, plain and in reciprocal space.
///
/// Only pairs whose baseline path avoids u are summed unless the result was
/// computed unrestricted; `alternate` holds the figures of the other mode.
/// Values are meaningful only relative to other sections of the same graph,
/// identified by `network`.
struct RedundancyResult {
  std::string section;
  WeightKind weight_kind = WeightKind::Distance;
  std::string network;
  bool restricted = true;
  double baseline_reciprocal = 0.0;
  Extended r_plain;
  double r_reciprocal_sum = 0.0;
  double r_reciprocal_normalized = 0.0;
  RedundancyFigures alternate;
  std::vector<RedundancyTerm> per_v;  // in section id order, u excluded
};

struct RedundancyOptions {
  bool unrestricted = false;
};

/// Shares one baseline matrix (and its deletion variants) between queries
/// on the same graph. Deletion variants are derived incrementally from the
/// baseline; results do not depend on the thread count.
class ResilienceEngine {
 public:
  explicit ResilienceEngine(ExpandedGraph g, ParallelOptions options = {});

  const ExpandedGraph& graph() const { return graph_; }
  const PathMatrix& baseline() const { return baseline_; }
  /// Throws AnalysisError(DisconnectedNetwork) when the baseline is disconnected.
  double baseline_total() const;

  NriResult nri(const std::string& u) const;
  PairNriResult nri_pair(const std::string& u, const std::string& v) const;
  /// NRI of every active section, in section id order.
  std::vector<NriResult> nri_all() const;

  RedundancyResult redundancy(const std::string& u, const RedundancyOptions& opts = {}) const;
  /// One result per target, in target order. Each single-deletion variant
  /// is computed once and reused for all targets.
  std::vector<RedundancyResult> redundancy_sweep(const std::vector<std::string>& targets,
                                                 const RedundancyOptions& opts = {}) const;

 private:
  /// Matrix of the graph without `removed`, derived from `from`, the matrix
  /// of the graph that still had the sections in `newly`.
  PathMatrix without(std::span<const std::uint32_t> removed, const PathMatrix& from,
                     std::span<const std::uint32_t> newly, unsigned threads) const;
  std::uint32_t require_active(const std::string& id) const;
  std::vector<std::uint32_t> active_sections() const;

  ExpandedGraph graph_;
  ParallelOptions options_;
  PathMatrix baseline_;
};

NriResult nri(const ExpandedGraph& g, const std::string& u, const ParallelOptions& options = {});
PairNriResult nri_pair(const ExpandedGraph& g, const std::string& u, const std::string& v,
                       const ParallelOptions& options = {});
RedundancyResult redundancy_plain(const ExpandedGraph& g, const std::string& u, const RedundancyOptions& opts = {},
                                  const ParallelOptions& options = {});
RedundancyResult redundancy_reciprocal(const ExpandedGraph& g, const std::string& u,
                                       const RedundancyOptions& opts = {}, const ParallelOptions& options = {});
std::vector<RedundancyResult> redundancy_sweep(const ExpandedGraph& g, const std::vector<std::string>& targets,
                                               const RedundancyOptions& opts = {},
                                               const ParallelOptions& options = {});

}  // namespace railnet
