#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracle.hpp"
#include "railnet/routing.hpp"

using namespace railnet;
using railnet::testing::fixture;

namespace {

std::vector<std::string> ids(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

void expect_matches_oracle(const RawNetwork& n, WeightKind w, const std::set<std::string>& removed = {}) {
  ExpandedGraph g = expand(n, w);
  if (!removed.empty()) {
    std::vector<std::string> dead(removed.begin(), removed.end());
    g = remove_sections(g, dead);
  }
  const PathMatrix m = all_pairs(g, {1});
  const oracle::PairTable t = oracle::all_pairs(n, w, removed);
  ASSERT_EQ(m.size(), t.stations.size());
  ASSERT_EQ(m.origins(), t.stations);
  for (std::size_t p = 0; p < t.pairs.size(); ++p) {
    const auto [i, j] = t.pairs[p];
    EXPECT_EQ(m.cost(i, j).raw(), t.walks[p].cost) << render_network(n) << " pair " << i << "," << j;
    std::vector<std::string> expected = t.walks[p].sections;
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    EXPECT_EQ(m.usage_ids(i, j), expected) << render_network(n) << " pair " << i << "," << j;
  }
}

}  // namespace

TEST(ShortestPath, TriangleTimeAToC) {
  const auto g = expand(fixture("triangle.json"), WeightKind::Time);
  const auto p = shortest_path(g, "A", "C");
  EXPECT_EQ(p.cost.value(), 30.0);
  EXPECT_EQ(p.sections, ids({"s1", "s2"}));
  EXPECT_EQ(p.reversals, 0u);
}

TEST(ShortestPath, SpurNeedsOneReversal) {
  const auto n = fixture("spur.json");
  const auto time = shortest_path(expand(n, WeightKind::Time), "X", "Z");
  EXPECT_EQ(time.cost.value(), 35.0);
  EXPECT_EQ(time.sections, ids({"s4", "s5"}));
  EXPECT_EQ(time.reversals, 1u);

  const auto dist = shortest_path(expand(n, WeightKind::Distance), "X", "Z");
  EXPECT_EQ(dist.cost.value(), 20.0);
  EXPECT_EQ(dist.reversals, 1u);
}

TEST(ShortestPath, SpurThroughWyeIsUnreachable) {
  auto n = fixture("spur.json");
  n.stations[1].kind = StationKind::Wye;
  const auto p = shortest_path(expand(n, WeightKind::Time), "X", "Z");
  EXPECT_FALSE(p.reachable());
  EXPECT_TRUE(p.sections.empty());
}

TEST(ShortestPath, RejectsBadEndpoints) {
  const auto g = expand(fixture("triangle.json"), WeightKind::Time);
  EXPECT_THROW(shortest_path(g, "A", "A"), AnalysisError);
  EXPECT_THROW(shortest_path(g, "A", "Q"), AnalysisError);
  try {
    shortest_path(g, "Q", "A");
  } catch (const AnalysisError& e) {
    EXPECT_EQ(e.code(), AnalysisError::Code::UnknownStation);
  }
}

TEST(ShortestPath, SectionCrossedTwiceIsListedTwice) {
  // reaching Z from X needs a turn at the far end of a dead-end siding
  RawNetwork n;
  n.stations = {{.id = "X"}, {.id = "Y", .kind = StationKind::Wye}, {.id = "W"}, {.id = "Z"}};
  n.sections = {{"a", {"X", Side::R}, {"Y", Side::L}, 10, 60},
                {"b", {"Y", Side::R}, {"W", Side::L}, 5, 60},
                {"c", {"Y", Side::L}, {"Z", Side::R}, 10, 60}};
  const auto p = shortest_path(expand(n, WeightKind::Time), "X", "Z");
  EXPECT_EQ(p.cost.value(), 10 + 5 + 15 + 5 + 10);
  EXPECT_EQ(p.sections, ids({"a", "b", "b", "c"}));
  EXPECT_EQ(p.reversals, 1u);
}

TEST(AllPairs, TriangleTime) {
  const auto m = all_pairs(expand(fixture("triangle.json"), WeightKind::Time));
  EXPECT_EQ(m.pair_count(), 3u);
  EXPECT_EQ(m.cost(0, 1).value(), 10.0);
  EXPECT_EQ(m.cost(0, 2).value(), 30.0);
  EXPECT_EQ(m.cost(1, 2).value(), 20.0);
  EXPECT_EQ(m.cost(2, 0).value(), 30.0);
  EXPECT_EQ(total_cost(m), 60.0);
  EXPECT_NEAR(reciprocal_total(m), 1.0 / 10 + 1.0 / 30 + 1.0 / 20, 1e-15);
}

TEST(AllPairs, TriangleWithoutS1) {
  const auto g = remove_sections(expand(fixture("triangle.json"), WeightKind::Distance), ids({"s1"}));
  const auto m = all_pairs(g);
  EXPECT_EQ(m.cost(0, 1).value(), 60.0);
  EXPECT_EQ(m.cost(0, 2).value(), 40.0);
  EXPECT_EQ(m.cost(1, 2).value(), 20.0);
  EXPECT_EQ(total_cost(m), 120.0);
}

TEST(AllPairs, TriangleWithoutS1AndS3) {
  const auto g = remove_sections(expand(fixture("triangle.json"), WeightKind::Distance), ids({"s1", "s3"}));
  const auto m = all_pairs(g);
  EXPECT_EQ(unreachable_pairs(m), 2u);
  EXPECT_TRUE(m.usage(0, 1).empty());
  EXPECT_DOUBLE_EQ(reciprocal_total(m), 0.05);
  try {
    total_cost(m);
    FAIL() << "expected DisconnectedNetwork";
  } catch (const AnalysisError& e) {
    EXPECT_EQ(e.code(), AnalysisError::Code::DisconnectedNetwork);
  }
}

TEST(AllPairs, SingleEligibleStation) {
  RawNetwork n;
  n.stations = {{.id = "A"}, {.id = "W", .kind = StationKind::Wye}};
  n.sections = {{"x", {"A", Side::L}, {"W", Side::R}, 3, 60}};
  const auto m = all_pairs(expand(n, WeightKind::Time));
  EXPECT_EQ(m.pair_count(), 0u);
  EXPECT_EQ(total_cost(m), 0.0);
  EXPECT_EQ(reciprocal_total(m), 0.0);
}

TEST(AllPairs, MatchesShortestPathPerPair) {
  gen::Rng rng(11);
  for (int round = 0; round < 30; ++round) {
    const auto n = gen::random_network(rng);
    const auto g = expand(n, WeightKind::Time);
    const auto m = all_pairs(g);
    m.for_each_pair([&](std::size_t i, std::size_t j) {
      const auto p = shortest_path(g, m.origins()[i], m.origins()[j]);
      EXPECT_EQ(p.cost.raw(), m.cost(i, j).raw());
      std::vector<std::string> u = p.sections;
      std::sort(u.begin(), u.end());
      u.erase(std::unique(u.begin(), u.end()), u.end());
      EXPECT_EQ(u, m.usage_ids(i, j));
    });
  }
}

TEST(AllPairsProperty, MatchesExhaustiveEnumeration) {
  gen::Rng rng(2024);
  for (int round = 0; round < 60; ++round) {
    const auto n = gen::random_network(rng);
    expect_matches_oracle(n, WeightKind::Time);
    expect_matches_oracle(n, WeightKind::Distance);
    if (HasFailure()) return;
  }
}

TEST(AllPairsProperty, FloydWarshallAgrees) {
  gen::Rng rng(5);
  for (int round = 0; round < 40; ++round) {
    const auto n = gen::random_network(rng);
    const oracle::PortGraph og(n, WeightKind::Time);
    const auto m = all_pairs(expand(n, WeightKind::Time));
    m.for_each_pair([&](std::size_t i, std::size_t j) {
      EXPECT_EQ(m.cost(i, j).raw(), og.floyd(m.origins()[i], m.origins()[j]));
    });
  }
}

TEST(AllPairsProperty, CostsAreSymmetric) {
  gen::Rng rng(8);
  for (int round = 0; round < 40; ++round) {
    const auto g = expand(gen::random_network(rng), WeightKind::Time);
    const auto origins = all_pairs(g).origins();
    for (std::size_t i = 0; i < origins.size(); ++i)
      for (std::size_t j = i + 1; j < origins.size(); ++j)
        EXPECT_EQ(shortest_path(g, origins[i], origins[j]).cost.raw(), shortest_path(g, origins[j], origins[i]).cost.raw());
  }
}

TEST(AllPairsProperty, DeletionNeverDecreasesCost) {
  gen::Rng rng(9);
  for (int round = 0; round < 40; ++round) {
    const auto n = gen::random_network(rng);
    if (n.sections.empty()) continue;
    const auto g = expand(n, WeightKind::Distance);
    const auto base = all_pairs(g);
    const std::string dead = n.sections[gen::uniform(rng, 0, static_cast<int>(n.sections.size()) - 1)].id;
    const auto after = all_pairs(remove_sections(g, std::vector<std::string>{dead}));
    base.for_each_pair([&](std::size_t i, std::size_t j) { EXPECT_GE(after.cost(i, j).raw(), base.cost(i, j).raw()); });
  }
}

TEST(AllPairsProperty, UsedSectionsAreNecessary) {
  // without a used section the pair gets dearer, or an equal-cost walk that
  // lost the tie-break takes over
  gen::Rng rng(10);
  for (int round = 0; round < 25; ++round) {
    const auto n = gen::random_network(rng);
    const auto g = expand(n, WeightKind::Time);
    const auto m = all_pairs(g);
    m.for_each_pair([&](std::size_t i, std::size_t j) {
      const auto chosen = shortest_path(g, m.origins()[i], m.origins()[j]);
      for (const auto& s : m.usage_ids(i, j)) {
        const auto p = shortest_path(remove_sections(g, std::vector<std::string>{s}), m.origins()[i], m.origins()[j]);
        if (p.cost.raw() == chosen.cost.raw()) EXPECT_GT(p.sections, chosen.sections) << s;
        else EXPECT_GT(p.cost.raw(), chosen.cost.raw()) << s;
      }
    });
  }
}

TEST(AllPairsProperty, UniqueShortestPathSectionsAreBridgesForThePair) {
  // with these lengths no two walks cost the same on the seeds used, so every
  // used section is strictly necessary
  gen::Rng rng(15);
  for (int round = 0; round < 25; ++round) {
    auto n = gen::random_network(rng);
    for (std::size_t k = 0; k < n.sections.size(); ++k) n.sections[k].length_km = 100 + 37 * k + k * k;
    const auto g = expand(n, WeightKind::Distance);
    const auto m = all_pairs(g);
    m.for_each_pair([&](std::size_t i, std::size_t j) {
      for (const auto& s : m.usage_ids(i, j)) {
        const auto p = shortest_path(remove_sections(g, std::vector<std::string>{s}), m.origins()[i], m.origins()[j]);
        EXPECT_GT(p.cost.raw(), m.cost(i, j).raw()) << s;
      }
    });
  }
}

TEST(AllPairsProperty, ComposedWalkIsNeverCheaper) {
  // a walk A -> B, reverse at B if needed, B -> C is an upper bound on A -> C
  gen::Rng rng(12);
  for (int round = 0; round < 30; ++round) {
    auto n = gen::random_network(rng);
    const auto g = expand(n, WeightKind::Time);
    const auto m = all_pairs(g);
    for (std::size_t a = 0; a < m.size(); ++a)
      for (std::size_t b = 0; b < m.size(); ++b)
        for (std::size_t c = 0; c < m.size(); ++c) {
          if (a == b || b == c || a == c) continue;
          const double penalty = n.find_station(m.origins()[b])->reversal_penalty_min;
          EXPECT_LE(m.cost(a, c).raw(), m.cost(a, b).raw() + penalty + m.cost(b, c).raw());
        }
  }
}

TEST(AllPairsProperty, IncrementalEqualsFullRecomputation) {
  gen::Rng rng(13);
  for (int round = 0; round < 60; ++round) {
    const auto n = gen::random_network(rng);
    if (n.sections.size() < 2) continue;
    const auto g = expand(n, WeightKind::Time);
    const auto base = all_pairs(g);
    std::vector<std::uint32_t> dead{static_cast<std::uint32_t>(gen::uniform(rng, 0, static_cast<int>(n.sections.size()) - 1))};
    const auto reduced = remove_section_indices(g, dead);
    const auto full = all_pairs(reduced);
    const auto inc = all_pairs_after_removal(reduced, base, dead);
    full.for_each_pair([&](std::size_t i, std::size_t j) {
      EXPECT_EQ(full.cost(i, j).raw(), inc.cost(i, j).raw());
      EXPECT_EQ(full.usage_ids(i, j), inc.usage_ids(i, j));
    });
  }
}

TEST(AllPairsProperty, ThreadCountDoesNotChangeResult) {
  gen::Rng rng(14);
  const auto g = expand(gen::large_network(rng, 60, 4, 2, 80), WeightKind::Time);
  const auto one = all_pairs(g, {1});
  const auto many = all_pairs(g, {7});
  EXPECT_TRUE(one.costs() == many.costs());
  one.for_each_pair([&](std::size_t i, std::size_t j) { EXPECT_EQ(one.usage_ids(i, j), many.usage_ids(i, j)); });
}
