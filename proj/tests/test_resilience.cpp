#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracle.hpp"
#include "railnet/resilience.hpp"

using namespace railnet;
using railnet::testing::fixture;

namespace {

void expect_rel(double actual, double expected, const std::string& what = {}) {
  if (std::isinf(expected)) {
    EXPECT_TRUE(std::isinf(actual)) << what;
    return;
  }
  EXPECT_NEAR(actual, expected, 1e-9 * std::max(1.0, std::fabs(expected))) << what;
}

gen::NetworkShape small_shape() {
  gen::NetworkShape s;
  s.max_stations = 8;
  s.max_sections = 12;
  return s;
}

// true when every pair of eligible stations can reach each other
bool eligible_connected(const RawNetwork& n, WeightKind w, const std::set<std::string>& removed) {
  const oracle::PortGraph g(n, w, removed);
  const auto st = g.eligible();
  for (std::size_t i = 0; i < st.size(); ++i)
    for (std::size_t j = i + 1; j < st.size(); ++j)
      if (!g.reachable_port(st[i], st[j])) return false;
  return true;
}

}  // namespace

TEST(Nri, TriangleDistance) {
  const ResilienceEngine e(expand(fixture("triangle.json"), WeightKind::Distance));
  EXPECT_EQ(e.baseline_total(), 60.0);
  EXPECT_EQ(e.nri("s1").q.value(), 60.0);
  EXPECT_EQ(e.nri("s3").q.value(), 0.0);
  EXPECT_FALSE(e.nri_pair("s1", "s3").q.is_finite());
  EXPECT_FALSE(e.nri_pair("s3", "s1").q.is_finite());
}

TEST(Nri, PairWithZeroFlowSection) {
  const ResilienceEngine e(expand(fixture("triangle.json"), WeightKind::Distance));
  // s3 is the only detour, so losing it together with anything else cuts a pair
  for (const char* x : {"s1", "s2"}) EXPECT_FALSE(e.nri_pair("s3", x).q.is_finite());
}

TEST(Nri, SpurBridgeIsInfinite) {
  const ResilienceEngine e(expand(fixture("spur.json"), WeightKind::Time));
  EXPECT_FALSE(e.nri("s4").q.is_finite());
  EXPECT_FALSE(nri(expand(fixture("spur.json"), WeightKind::Time), "s5").q.is_finite());
}

TEST(Nri, Errors) {
  const ResilienceEngine e(expand(fixture("triangle.json"), WeightKind::Distance));
  try {
    e.nri_pair("s1", "s1");
    FAIL();
  } catch (const AnalysisError& err) {
    EXPECT_EQ(err.code(), AnalysisError::Code::InvalidArgument);
  }
  try {
    e.nri("s7");
    FAIL();
  } catch (const AnalysisError& err) {
    EXPECT_EQ(err.code(), AnalysisError::Code::UnknownSection);
  }
  EXPECT_THROW(e.redundancy("nope"), AnalysisError);
}

TEST(Nri, UnusedPairOnCycleIsZero) {
  // two parallel spare sections next to a cycle carry no flow and no detour
  auto n = fixture("cycle4.json");
  n.sections.push_back({"xa", {"P", Side::R}, {"Q", Side::L}, 50, 60});
  n.sections.push_back({"xb", {"R", Side::R}, {"S", Side::L}, 50, 60});
  const ResilienceEngine e(expand(n, WeightKind::Distance));
  EXPECT_EQ(e.nri_pair("xa", "xb").q.value(), 0.0);
}

TEST(Nri, AllSectionsInIdOrder) {
  const ResilienceEngine e(expand(fixture("triangle.json"), WeightKind::Distance));
  const auto all = e.nri_all();
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[0].section, "s1");
  EXPECT_EQ(all[0].q.value(), 60.0);
  EXPECT_EQ(all[2].q.value(), 0.0);
  // s2 gone: AB 10, AC 40, BC 50
  EXPECT_EQ(all[1].q.value(), 40.0);
}

TEST(Redundancy, TriangleDistanceS3) {
  const auto n = fixture("triangle.json");
  const ResilienceEngine e(expand(n, WeightKind::Distance));
  const auto r = e.redundancy("s3");
  ASSERT_EQ(r.per_v.size(), 2u);
  EXPECT_EQ(r.per_v[0].v, "s1");
  EXPECT_NEAR(r.per_v[0].reciprocal, 1.0 / 60 + 1.0 / 40, 1e-15);
  EXPECT_NEAR(r.per_v[0].reciprocal, 0.0416667, 5e-8);
  EXPECT_NEAR(r.per_v[1].reciprocal, 0.045, 1e-15);
  EXPECT_NEAR(r.r_reciprocal_sum, 0.0866667, 5e-8);
  EXPECT_NEAR(r.baseline_reciprocal, 0.1833333, 5e-8);
  EXPECT_NEAR(r.r_reciprocal_normalized, 0.4727, 5e-5);
  EXPECT_FALSE(r.per_v[0].plain.is_finite());
  EXPECT_FALSE(r.r_plain.is_finite());
  EXPECT_TRUE(r.restricted);
  EXPECT_EQ(r.network, network_fingerprint(n));

  const auto o = oracle::redundancy(n, WeightKind::Distance, "s3", true);
  EXPECT_NEAR(r.r_reciprocal_normalized, o.normalized, 1e-12);
  EXPECT_NEAR(o.normalized, (1.0 / 60 + 1.0 / 40 + 0.045) / (1.0 / 10 + 1.0 / 30 + 1.0 / 20), 1e-15);
}

TEST(Redundancy, BackupNobodyCanUseIsZero) {
  // on a tree no section can stand in for another
  const ResilienceEngine es(expand(fixture("spur.json"), WeightKind::Time));
  EXPECT_EQ(es.redundancy("s4").r_reciprocal_normalized, 0.0);
  EXPECT_EQ(es.redundancy("s5").r_reciprocal_sum, 0.0);
  // on the triangle s1 carries B-C once s2 is gone
  const ResilienceEngine e(expand(fixture("triangle.json"), WeightKind::Distance));
  EXPECT_GT(e.redundancy("s1").r_reciprocal_sum, 0.0);
}

TEST(Redundancy, FourCycle) {
  const auto n = fixture("cycle4.json");
  const ResilienceEngine e(expand(n, WeightKind::Distance));
  const auto r = e.redundancy("PQ");
  const RedundancyTerm* rs = nullptr;
  for (const auto& t : r.per_v)
    if (t.v == "RS") rs = &t;
  ASSERT_NE(rs, nullptr);
  // pairs avoiding PQ at baseline are PS, QR and RS; without PQ and RS the
  // pair R-S is cut, so the plain term is unbounded
  EXPECT_FALSE(rs->plain.is_finite());
  EXPECT_NEAR(rs->reciprocal, 1.0 / 30, 1e-15);

  const oracle::PairTable without_v = oracle::all_pairs(n, WeightKind::Distance, {"RS"});
  const oracle::PairTable without_uv = oracle::all_pairs(n, WeightKind::Distance, {"PQ", "RS"});
  EXPECT_EQ(without_v.walks.back().cost, 30.0);
  EXPECT_EQ(without_uv.walks.back().cost, oracle::kUnreachable);
  const auto o = oracle::redundancy(n, WeightKind::Distance, "PQ", true);
  EXPECT_TRUE(std::isinf(o.plain));
  expect_rel(r.r_reciprocal_sum, o.reciprocal_sum);
}

TEST(Redundancy, PlainAndReciprocalEntryPointsAgree) {
  const auto g = expand(fixture("cycle4.json"), WeightKind::Time);
  const auto a = redundancy_plain(g, "QR");
  const auto b = redundancy_reciprocal(g, "QR");
  EXPECT_EQ(a.r_plain, b.r_plain);
  EXPECT_EQ(a.r_reciprocal_normalized, b.r_reciprocal_normalized);
}

TEST(Redundancy, UnrestrictedReportsBothModes) {
  const auto n = fixture("cycle4.json");
  const ResilienceEngine e(expand(n, WeightKind::Time));
  const auto restricted = e.redundancy("QR");
  const auto all = e.redundancy("QR", {.unrestricted = true});
  EXPECT_FALSE(all.restricted);
  EXPECT_EQ(all.alternate.normalized, restricted.r_reciprocal_normalized);
  EXPECT_EQ(restricted.alternate.normalized, all.r_reciprocal_normalized);
  EXPECT_GE(all.r_reciprocal_sum, restricted.r_reciprocal_sum);
  expect_rel(all.r_reciprocal_sum, oracle::redundancy(n, WeightKind::Time, "QR", false).reciprocal_sum);
}

TEST(RedundancySweep, MatchesSingleCalls) {
  const ResilienceEngine e(expand(fixture("triangle.json"), WeightKind::Distance));
  const auto sweep = e.redundancy_sweep({"s1", "s2", "s3"});
  ASSERT_EQ(sweep.size(), 3u);
  for (const auto& r : sweep) {
    const auto single = e.redundancy(r.section);
    EXPECT_EQ(r.r_reciprocal_normalized, single.r_reciprocal_normalized);
    EXPECT_EQ(r.r_plain, single.r_plain);
    for (const auto& t : r.per_v) EXPECT_NE(t.v, r.section);
  }
  const auto only = e.redundancy_sweep({"s3"});
  EXPECT_NEAR(only.at(0).r_reciprocal_normalized, 0.4727, 5e-5);
  EXPECT_THROW(e.redundancy_sweep({"s1", "zz"}), AnalysisError);
}

TEST(RedundancySweep, IndependentOfThreadsAndTargetOrder) {
  gen::Rng rng(41);
  const auto g = expand(gen::large_network(rng, 40, 3, 1, 55), WeightKind::Time);
  std::vector<std::string> targets;
  for (std::uint32_t s = 0; s < 4; ++s) targets.push_back(g.section_id(s * 7));
  const auto one = ResilienceEngine(g, {1}).redundancy_sweep(targets);
  auto reversed = targets;
  std::reverse(reversed.begin(), reversed.end());
  const auto many = ResilienceEngine(g, {6}).redundancy_sweep(reversed);
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const auto& a = one[k];
    const auto& b = many[targets.size() - 1 - k];
    EXPECT_EQ(a.section, b.section);
    EXPECT_EQ(a.r_reciprocal_normalized, b.r_reciprocal_normalized);
    EXPECT_EQ(a.r_reciprocal_sum, b.r_reciprocal_sum);
    EXPECT_EQ(a.r_plain, b.r_plain);
  }
}

TEST(ResilienceProperty, NriMatchesOracle) {
  gen::Rng rng(42);
  for (int round = 0; round < 60; ++round) {
    const auto n = gen::random_network(rng, small_shape());
    for (WeightKind w : {WeightKind::Distance, WeightKind::Time}) {
      const ResilienceEngine e(expand(n, w));
      if (unreachable_pairs(e.baseline()) > 0) {
        if (!n.sections.empty()) EXPECT_THROW(e.nri(n.sections[0].id), AnalysisError);
        continue;
      }
      for (const auto& s : n.sections) expect_rel(e.nri(s.id).q.raw(), oracle::nri(n, w, {s.id}), s.id);
      if (n.sections.size() >= 2) {
        const auto& u = n.sections[0].id;
        const auto& v = n.sections[1].id;
        expect_rel(e.nri_pair(u, v).q.raw(), oracle::nri(n, w, {u, v}));
        EXPECT_EQ(e.nri_pair(u, v).q, e.nri_pair(v, u).q);
      }
    }
  }
}

TEST(ResilienceProperty, InfiniteIffDisconnecting) {
  gen::Rng rng(43);
  for (int round = 0; round < 60; ++round) {
    const auto n = gen::random_network(rng, small_shape());
    if (!eligible_connected(n, WeightKind::Time, {})) continue;
    const ResilienceEngine e(expand(n, WeightKind::Time));
    for (const auto& s : n.sections)
      EXPECT_EQ(!e.nri(s.id).q.is_finite(), !eligible_connected(n, WeightKind::Time, {s.id}));
  }
}

TEST(ResilienceProperty, NriOrdering) {
  gen::Rng rng(44);
  for (int round = 0; round < 40; ++round) {
    gen::NetworkShape shape = small_shape();
    shape.connected = true;
    const auto n = gen::random_network(rng, shape);
    const ResilienceEngine e(expand(n, WeightKind::Distance));
    const auto singles = e.nri_all();
    for (const auto& r : singles)
      if (r.q.is_finite()) EXPECT_GE(r.q.value(), 0.0);
    for (std::size_t a = 0; a < singles.size(); ++a)
      for (std::size_t b = a + 1; b < singles.size(); ++b) {
        const auto q = e.nri_pair(singles[a].section, singles[b].section).q;
        if (!q.is_finite()) continue;
        EXPECT_TRUE(singles[a].q.is_finite() && singles[b].q.is_finite());
        EXPECT_GE(q.value(), std::max(singles[a].q.value(), singles[b].q.value()));
      }
  }
}

TEST(ResilienceProperty, RedundancyMatchesOracle) {
  gen::Rng rng(45);
  for (int round = 0; round < 40; ++round) {
    gen::NetworkShape shape = small_shape();
    shape.max_stations = 7;
    shape.max_sections = 9;
    const auto n = gen::random_network(rng, shape);
    if (n.sections.empty()) continue;
    const auto g = expand(n, WeightKind::Time);
    if (unreachable_pairs(all_pairs(g)) == all_pairs(g).pair_count()) continue;
    const ResilienceEngine e(g);
    for (const auto& s : n.sections)
      for (bool restricted : {true, false}) {
        const auto r = e.redundancy(s.id, {.unrestricted = !restricted});
        const auto o = oracle::redundancy(n, WeightKind::Time, s.id, restricted);
        expect_rel(r.r_reciprocal_sum, o.reciprocal_sum, s.id);
        expect_rel(r.r_reciprocal_normalized, o.normalized, s.id);
        expect_rel(r.r_plain.raw(), o.plain, s.id);
      }
    if (HasFailure()) return;
  }
}

TEST(ResilienceProperty, RedundancyTermsNonNegativeAndSummed) {
  gen::Rng rng(46);
  for (int round = 0; round < 40; ++round) {
    const auto n = gen::random_network(rng, small_shape());
    const auto g = expand(n, WeightKind::Distance);
    if (reciprocal_total(all_pairs(g)) == 0.0) continue;
    const ResilienceEngine e(g);
    std::vector<std::string> targets;
    for (const auto& s : n.sections) targets.push_back(s.id);
    for (const auto& r : e.redundancy_sweep(targets)) {
      EXPECT_TRUE(std::isfinite(r.r_reciprocal_normalized));
      EXPECT_GE(r.r_reciprocal_normalized, 0.0);
      double sum = 0.0;
      bool finite = true;
      double plain = 0.0;
      for (const auto& t : r.per_v) {
        EXPECT_GE(t.reciprocal, 0.0);
        sum += t.reciprocal;
        if (!t.plain.is_finite()) finite = false;
        else {
          EXPECT_GE(t.plain.value(), 0.0);
          plain += t.plain.value();
        }
      }
      expect_rel(r.r_reciprocal_sum, sum);
      EXPECT_EQ(r.r_plain.is_finite(), finite);
      if (finite) expect_rel(r.r_plain.value(), plain);
    }
  }
}

TEST(ResilienceProperty, NormalizedRedundancyIsScaleFree) {
  gen::Rng rng(47);
  for (int round = 0; round < 20; ++round) {
    gen::NetworkShape shape = small_shape();
    shape.connected = true;
    auto n = gen::random_network(rng, shape);
    auto scaled = n;
    for (auto& s : scaled.sections) s.length_km *= 3.0;
    const ResilienceEngine a(expand(n, WeightKind::Distance));
    const ResilienceEngine b(expand(scaled, WeightKind::Distance));
    for (const auto& s : n.sections)
      expect_rel(b.redundancy(s.id).r_reciprocal_normalized, a.redundancy(s.id).r_reciprocal_normalized);
  }
}

TEST(ResilienceProperty, FiniteOnBridgedGraphs) {
  // a cycle with a pendant spur: connected, with a bridge
  gen::Rng rng(48);
  for (int round = 0; round < 30; ++round) {
    auto n = fixture("cycle4.json");
    const int spur = gen::uniform(rng, 1, 3);
    std::string prev = "P";
    for (int k = 0; k < spur; ++k) {
      const std::string id = "T" + std::to_string(k);
      n.stations.push_back({.id = id, .reversal_penalty_min = 15.0 * gen::uniform(rng, 0, 1)});
      n.sections.push_back(gen::random_section(rng, "b" + std::to_string(k), prev, id));
      prev = id;
    }
    const ResilienceEngine e(expand(n, WeightKind::Time));
    ASSERT_NO_THROW(e.baseline_total());
    EXPECT_FALSE(e.nri("b0").q.is_finite());
    for (const auto& s : n.sections) {
      const auto r = e.redundancy(s.id);
      EXPECT_TRUE(std::isfinite(r.r_reciprocal_normalized)) << s.id;
      EXPECT_GE(r.r_reciprocal_normalized, 0.0);
    }
  }
}
