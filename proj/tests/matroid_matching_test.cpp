// Copyright 2026 The GPP Mechanisms Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "gpp/audit/fixtures.hpp"
#include "gpp/audit/generators.hpp"
#include "gpp/audit/registry.hpp"
#include "gpp/audit/truthfulness.hpp"
#include "gpp/matching/mechanisms.hpp"
#include "gpp/matroid/greedy.hpp"
#include "oracles.hpp"

namespace gpp {
namespace {

ItemSpec plain(std::string id, Rational v) {
  return {std::move(id), std::move(v), std::nullopt, "", "", "", ""};
}

GppInstance uniform(std::vector<Rational> values, std::size_t rank, Demand demand) {
  InstanceSpec s;
  s.kind = Kind::kMatroid;
  s.demand = demand;
  s.matroid.type = MatroidSpec::Type::kUniform;
  s.matroid.rank = rank;
  for (std::size_t j = 0; j < values.size(); ++j) {
    s.items.push_back(plain("a" + std::to_string(j + 1), values[j]));
    s.agents.push_back({s.items.back().id});
  }
  return validate_instance(s);
}

// Vertex-disjoint edges, all held by one agent.
GppInstance disjoint_edges(const std::vector<Rational>& values) {
  InstanceSpec s;
  s.kind = Kind::kMatching;
  s.demand = Demand::kMul;
  s.agents.emplace_back();
  for (std::size_t e = 0; e < values.size(); ++e) {
    std::string n = std::to_string(e + 1);
    s.items.push_back({"e" + n, values[e], std::nullopt, "t" + n, "u" + n, "", ""});
    s.agents[0].push_back(s.items.back().id);
  }
  return validate_instance(s);
}

Rational R(const char* s) { return parse_rational(s); }

// ---- matroid ----

TEST(MatroidGreedy, UniformRankTwo) {
  GppInstance inst = uniform({3, 2, 1}, 2, Demand::kMul);
  Outcome o = matroid::greedy_mul(inst, truthful_bids(inst));
  EXPECT_EQ(o.total, 5);
  EXPECT_EQ(o.items(), (std::vector<ItemIndex>{0, 1}));
}

TEST(MatroidGreedy, EmptyBidsGiveEmptyOutcome) {
  GppInstance inst = uniform({3, 2, 1}, 2, Demand::kMul);
  BidProfile none{std::vector<std::vector<ItemIndex>>(3)};
  EXPECT_EQ(matroid::greedy_mul(inst, none).total, 0);
}

TEST(MatroidGreedy, EqualValuesBreakTiesById) {
  GppInstance inst = uniform({2, 2, 2}, 1, Demand::kMul);
  EXPECT_EQ(matroid::greedy_mul(inst, truthful_bids(inst)).items(), (std::vector<ItemIndex>{0}));
}

TEST(MatroidGreedy, ScanIsValueMonotone) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GppInstance inst = audit::generate("matroid-partition-mul", seed);
    auto run = matroid::greedy_run(inst, truthful_bids(inst));
    for (std::size_t i = 1; i < run.picked.size(); ++i) {
      EXPECT_GE(inst.items[run.picked[i - 1]].value, inst.items[run.picked[i]].value);
    }
  }
}

TEST(MatroidGreedy, MultiUnitIsOptimalAgainstBruteForce) {
  for (const char* gen : {"matroid-partition-mul", "matroid-uniform-mul"}) {
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
      GppInstance inst = audit::generate(gen, seed, {.max_items = 10});
      EXPECT_EQ(matroid::greedy_mul(inst, truthful_bids(inst)).total, oracle::best_value(inst))
          << gen << " seed " << seed;
    }
  }
}

TEST(MatroidGreedy, UnitDemandIsHalfApproximate) {
  for (const char* gen : {"matroid-partition-unit", "matroid-uniform-unit"}) {
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
      GppInstance inst = audit::generate(gen, seed, {.max_items = 10});
      Outcome o = matroid::greedy_unit(inst, truthful_bids(inst));
      EXPECT_TRUE(oracle::feasible(inst, o.items()));
      EXPECT_LE(oracle::best_value(inst), 2 * o.total) << gen << " seed " << seed;
    }
  }
}

TEST(MatroidGreedy, UnitLowerBoundFixture) {
  GppInstance inst = validate_instance(audit::lowerbound_matroid_spec(Rational(1, 10)));
  Outcome o = matroid::greedy_unit(inst, truthful_bids(inst));
  EXPECT_EQ(o.total, R("21/10"));
  EXPECT_EQ(oracle::best_value(inst), R("21/10"));
  // one item per agent even though both of agent 0's items fit the matroid
  EXPECT_EQ(o.selected[0].size(), 1u);
  EXPECT_EQ(o.selected[1].size(), 1u);
}

TEST(MatroidGreedy, MechanismsRejectOtherKinds) {
  GppInstance inst = uniform({1}, 1, Demand::kUnit);
  EXPECT_THROW(matroid::greedy_mul(inst, truthful_bids(inst)), UsageError);
  GppInstance m = disjoint_edges({1});
  EXPECT_THROW(matroid::greedy_mul(m, truthful_bids(m)), UsageError);
}

TEST(MatroidGreedy, TruthfulOnRandomInstances) {
  for (const char* name : {"matroid-greedy-mul", "matroid-greedy-unit"}) {
    const auto& mech = audit::find_mechanism(name);
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      GppInstance inst =
          audit::generate(audit::default_generator(mech.kind, mech.demand), seed);
      auto r = audit::audit_truthfulness(mech, inst, audit::AuditMode::kUniversal);
      EXPECT_TRUE(r.truthful) << name << " seed " << seed;
    }
  }
}

// ---- matching ----

TEST(Matching, LowerBoundGreedyTakesTheDiagonal) {
  GppInstance inst = validate_instance(audit::lowerbound_matching_spec(Rational(1, 10)));
  Outcome o = matching::greedy_unit(inst, truthful_bids(inst));
  EXPECT_EQ(o.items(), oracle::items_of(inst, {"t1u1", "t2u2"}));
  EXPECT_EQ(o.total, R("21/10"));
}

TEST(Matching, UnitGreedyIsThirdApproximate) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    GppInstance inst = audit::generate("matching-unit", seed, {.max_items = 10});
    Outcome o = matching::greedy_unit(inst, truthful_bids(inst));
    EXPECT_TRUE(oracle::feasible(inst, o.items()));
    EXPECT_LE(oracle::best_value(inst), 3 * o.total) << "seed " << seed;
  }
}

TEST(Matching, MaxWeightAgreesWithBruteForce) {
  for (const char* gen : {"matching-unit", "matching-mul"}) {
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
      GppInstance inst = audit::generate(gen, seed, {.max_items = 10});
      Outcome o = matching::max_weight_mechanism(inst, truthful_bids(inst));
      EXPECT_TRUE(oracle::feasible(inst, o.items()));
      EXPECT_EQ(o.total, oracle::best_value(inst)) << gen << " seed " << seed;
    }
  }
}

TEST(MatchingGroups, LevelsAndIntervals) {
  EXPECT_EQ(matching::group_levels(1), 0);
  EXPECT_EQ(matching::group_levels(2), 1);
  EXPECT_EQ(matching::group_levels(8), 3);
  EXPECT_EQ(matching::group_levels(9), 4);

  GppInstance inst = disjoint_edges({8, 4, 3, 2, 1, R("0.9"), R("0.5"), R("0.25")});
  auto part = matching::partition_groups(inst, truthful_bids(inst));
  EXPECT_FALSE(part.degenerate);
  EXPECT_EQ(part.exponent, 3);
  EXPECT_EQ(part.levels, 3);
  ASSERT_EQ(part.group_count, 4u);
  EXPECT_EQ(part.bounds(0), std::make_pair(Rational(4), Rational(8)));
  EXPECT_EQ(part.bounds(3), std::make_pair(Rational(1, 2), Rational(1)));
  EXPECT_EQ(part.discard_threshold(), Rational(1, 2));
  EXPECT_EQ(part.groups[0], oracle::items_of(inst, {"e1"}));
  EXPECT_EQ(part.groups[1], oracle::items_of(inst, {"e2", "e3"}));
  EXPECT_EQ(part.groups[2], oracle::items_of(inst, {"e4"}));
  EXPECT_EQ(part.groups[3], oracle::items_of(inst, {"e5", "e6"}));
  EXPECT_EQ(part.discarded, oracle::items_of(inst, {"e7", "e8"}));
  EXPECT_EQ(*part.priority_agent, 0u);
}

TEST(MatchingGroups, ExponentForNonPowerOfTwoMaximum) {
  GppInstance inst = disjoint_edges({5, 1, 1, 1, 1, 1, 1, 1});
  auto part = matching::partition_groups(inst, truthful_bids(inst));
  EXPECT_EQ(part.exponent, 3);  // 4 < 5 <= 8
  // value-1 edges land in (1/2, 1], the last kept group
  EXPECT_EQ(part.groups[3].size(), 7u);
  EXPECT_TRUE(part.discarded.empty());
}

TEST(MatchingGroups, FractionalMaximum) {
  GppInstance inst = disjoint_edges({R("3/8"), R("1/8")});
  auto part = matching::partition_groups(inst, truthful_bids(inst));
  EXPECT_EQ(part.exponent, -1);  // 1/4 < 3/8 <= 1/2
  EXPECT_EQ(part.group_count, 2u);
  EXPECT_EQ(part.groups[0].size(), 1u);
  EXPECT_TRUE(part.groups[1].empty());  // (1/8, 1/4] is open below
  EXPECT_EQ(part.discarded.size(), 1u);
}

TEST(MatchingGroups, DiscardedValueIsBelowTheMaximum) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    GppInstance inst = audit::generate("matching-mul", seed);
    auto part = matching::partition_groups(inst, truthful_bids(inst));
    Rational lost = 0;
    for (ItemIndex j : part.discarded) lost += inst.items[j].value;
    if (part.degenerate) {
      EXPECT_EQ(lost, 0);
    } else {
      EXPECT_LT(lost, part.v_max) << "seed " << seed;
      for (std::size_t g = 0; g < part.group_count; ++g) {
        auto [lo, hi] = part.bounds(g);
        for (ItemIndex j : part.groups[g]) {
          EXPECT_GT(inst.items[j].value, lo);
          EXPECT_LE(inst.items[j].value, hi);
        }
      }
    }
  }
}

TEST(MatchingAlg, ExpectationIsMeanOverGroups) {
  GppInstance inst = disjoint_edges({8, 4, 3, 2, 1, R("0.9"), R("0.5"), R("0.25")});
  auto branches = enumerate_branches([&](RandomSource& src) {
    return matching::matching_alg(inst, truthful_bids(inst), src).total;
  });
  ASSERT_EQ(branches.size(), 4u);
  Rational e = 0;
  for (const auto& b : branches) {
    EXPECT_EQ(b.probability, Rational(1, 4));
    e += b.probability * b.result;
  }
  // groups {8}, {4,3}, {2}, {1,9/10}: each taken whole (edges are disjoint)
  EXPECT_EQ(e, (8 + 7 + 2 + R("1.9")) / 4);
}

TEST(MatchingAlg, SingleEdge) {
  GppInstance inst = disjoint_edges({3});
  auto branches = enumerate_branches([&](RandomSource& src) {
    return matching::matching_alg(inst, truthful_bids(inst), src).total;
  });
  ASSERT_EQ(branches.size(), 1u);
  EXPECT_EQ(branches[0].result, 3);
}

TEST(MatchingAlg, PriorityAgentGoesFirst) {
  // Both agents want u1 with edges in the same group; agent 1 holds v_max.
  InstanceSpec s;
  s.kind = Kind::kMatching;
  s.demand = Demand::kMul;
  s.items = {{"a", Rational(3), std::nullopt, "t1", "u1", "", ""},
             {"b", Rational(4), std::nullopt, "t2", "u1", "", ""}};
  s.agents = {{"a"}, {"b"}};
  GppInstance inst = validate_instance(s);
  TapeTranscript top;
  top.draws.push_back(Draw{"group", Draw::Type::kChoice, Rational(0), 2, 0});
  FixedSource src(top);
  Outcome o = matching::matching_alg(inst, truthful_bids(inst), src);
  EXPECT_EQ(o.utilities[1], 4);
  EXPECT_EQ(o.utilities[0], 0);
}

TEST(MatchingAlg, TruthfulInExpectationOnRandomInstances) {
  const auto& mech = audit::find_mechanism("matching-alg");
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GppInstance inst = audit::generate("matching-mul", seed, {.max_items = 8});
    EXPECT_TRUE(audit::audit_truthfulness(mech, inst, audit::AuditMode::kExpectation).truthful)
        << "seed " << seed;
  }
}

TEST(MatchingBaselines, FigureWitnesses) {
  GppInstance a = validate_instance(audit::fig_a_spec());
  auto ra = audit::audit_truthfulness(audit::find_mechanism("max-weight-matching"), a,
                                      audit::AuditMode::kUniversal);
  ASSERT_TRUE(ra.witness);
  EXPECT_EQ(ra.witness->misreport, oracle::items_of(a, {"t2u1"}));
  EXPECT_EQ(ra.witness->truthful_utility, 10);
  EXPECT_EQ(ra.witness->misreport_utility, 20);

  GppInstance b = validate_instance(audit::fig_b_spec());
  EXPECT_EQ(matching::greedy_mul(b, truthful_bids(b)).utilities[0], 10);
  BidProfile hide = truthful_bids(b);
  hide.reports[0] = oracle::items_of(b, {"t3u4", "t4u3"});
  EXPECT_EQ(matching::greedy_mul(b, hide).utilities[0], 12);
}

}  // namespace
}  // namespace gpp
