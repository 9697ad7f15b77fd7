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
#include "gpp/gap/mechanisms.hpp"
#include "gpp/stable/algorithms.hpp"
#include "oracles.hpp"

namespace gpp {
namespace {

using stable::GapAssignment;

struct P {
  const char* job;
  const char* machine;
  Rational v, c;
};

GppInstance gap_instance(std::vector<std::pair<const char*, Rational>> machines,
                         std::vector<P> pairs) {
  InstanceSpec s;
  s.kind = Kind::kGap;
  s.demand = Demand::kUnit;
  for (auto& [id, cap] : machines) s.machines.push_back({id, cap});
  for (const P& p : pairs) {
    s.items.push_back({std::string(p.job) + p.machine, p.v, p.c, "", "", p.job, p.machine});
  }
  return validate_instance(s);
}

GppInstance c2() { return validate_instance(audit::c2_gap_spec()); }

TapeTranscript sample_tape(std::initializer_list<int> in_t) {
  TapeTranscript t;
  std::size_t a = 0;
  for (int v : in_t) {
    t.draws.push_back(Draw{gap::sample_key(a++), Draw::Type::kBit, Rational(1, 2), 2,
                           static_cast<std::size_t>(v)});
  }
  return t;
}

std::vector<std::string> ids(const GppInstance& inst, const std::vector<ItemIndex>& items) {
  std::vector<std::string> out;
  for (ItemIndex j : items) out.push_back(inst.items[j].id);
  return out;
}

TEST(Market, AgentsAreJobs) {
  GppInstance inst = c2();
  EXPECT_EQ(inst.agent_labels, (std::vector<std::string>{"1", "2", "3", "4"}));
  EXPECT_EQ(inst.machines.size(), 3u);
  EXPECT_EQ(ids(inst, inst.agents[2]), (std::vector<std::string>{"3x", "3z"}));
}

TEST(Market, PreferenceLists) {
  GppInstance inst = c2();
  auto prefs = stable::build_preferences(inst, truthful_bids(inst));
  EXPECT_EQ(ids(inst, prefs.machine[0]), (std::vector<std::string>{"3x", "4x", "1x", "2x"}));
  EXPECT_EQ(ids(inst, prefs.job[2]), (std::vector<std::string>{"3z", "3x"}));

  // equal values: the smaller capacity first
  GppInstance tie = gap_instance({{"m1", 5}, {"m2", 5}},
                                 {{"j", "m1", 5, 2}, {"j", "m2", 5, 1}});
  auto tp = stable::build_preferences(tie, truthful_bids(tie));
  EXPECT_EQ(ids(tie, tp.job[0]), (std::vector<std::string>{"jm2", "jm1"}));
}

TEST(Market, CompareSubsets) {
  GppInstance inst = gap_instance(
      {{"m", 2}}, {{"a", "m", 10, 1}, {"b", "m", 5, 1}, {"c", "m", 5, 1}, {"d", "m", 9, 3}});
  auto on = [&](std::initializer_list<const char*> xs) { return oracle::items_of(inst, xs); };
  using SP = stable::SubsetPreference;
  EXPECT_EQ(stable::compare_subsets(inst, 0, on({"am"}), on({"bm", "cm"})), SP::kFirst);
  EXPECT_EQ(stable::compare_subsets(inst, 0, on({"bm", "cm"}), on({"am"})), SP::kSecond);
  EXPECT_EQ(stable::compare_subsets(inst, 0, on({"bm"}), on({"cm"})), SP::kEquivalent);
  EXPECT_EQ(stable::compare_subsets(inst, 0, on({"am", "bm"}), on({"am", "bm"})), SP::kEquivalent);
  EXPECT_EQ(stable::compare_subsets(inst, 0, on({"dm"}), on({"bm"})), SP::kSecond);  // d overflows
  EXPECT_EQ(stable::compare_subsets(inst, 0, on({"am", "bm"}), on({"am"})), SP::kFirst);
}

TEST(SmGreedy, WorkedExample) {
  GppInstance inst = c2();
  GapAssignment a = stable::sm_greedy(inst, truthful_bids(inst));
  EXPECT_EQ(ids(inst, a.pairs()), (std::vector<std::string>{"1y", "3z", "4x"}));
  EXPECT_FALSE(a.pair_of(1));
  EXPECT_EQ(a.total_value(), Rational(51, 2));
  EXPECT_EQ(a.to_outcome().total, Rational(51, 2));
}

TEST(SmGreedy, QuotaLimitsJobsPerMachine) {
  GppInstance inst = gap_instance(
      {{"m", 10}}, {{"a", "m", 4, 1}, {"b", "m", 3, 1}, {"c", "m", 2, 1}, {"d", "m", 1, 1}});
  EXPECT_EQ(stable::sm_greedy(inst, truthful_bids(inst)).total_value(), 10);
  EXPECT_EQ(stable::sm_greedy(inst, truthful_bids(inst), std::size_t{2}).total_value(), 7);
}

TEST(SmDa, WorkedExample) {
  GppInstance inst = c2();
  stable::DaStats stats;
  GapAssignment a = stable::sm_da_alg(inst, truthful_bids(inst), std::nullopt, nullptr, &stats);
  EXPECT_EQ(ids(inst, a.pairs()), (std::vector<std::string>{"1y", "2z", "3x"}));
  EXPECT_FALSE(a.pair_of(3));
  EXPECT_LE(stats.proposals, inst.num_items());
  EXPECT_FALSE(stable::find_blocking_pair(inst, truthful_bids(inst), a));
}

TEST(SmDa, JobFourGainsByHidingX) {
  GppInstance inst = c2();
  BidProfile lie = truthful_bids(inst);
  lie.reports[3] = oracle::items_of(inst, {"4y"});
  GapAssignment a = stable::sm_da_alg(inst, lie);
  EXPECT_EQ(a.job_value(3), Rational(1, 10));
  EXPECT_EQ(*a.machine_of_job(3), 1u);
  EXPECT_TRUE(oracle::feasible(inst, a.pairs()));
}

TEST(SmDa, EmptyBids) {
  GppInstance inst = c2();
  BidProfile none{std::vector<std::vector<ItemIndex>>(4)};
  EXPECT_EQ(stable::sm_da_alg(inst, none).total_value(), 0);
  EXPECT_EQ(stable::sm_greedy(inst, none).total_value(), 0);
}

TEST(SmDa, ProposalOrderDoesNotMatterOnSmallPairs) {
  // Order independence is claimed for small pairs under virtual capacities.
  stable::ProposalChooser last = [](const std::vector<ItemIndex>& c) { return c.size() - 1; };
  stable::ProposalChooser first = [](const std::vector<ItemIndex>&) { return std::size_t{0}; };
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    GppInstance inst = audit::generate("gap-small", seed);
    const BidProfile small = gap::detail::small_pairs(inst, truthful_bids(inst), 3);
    auto vc = stable::scaled_caps(inst, Rational(2, 3));
    GapAssignment base = stable::sm_da_alg(inst, small, vc);
    EXPECT_TRUE(stable::sm_da_alg(inst, small, vc, last) == base) << "seed " << seed;
    EXPECT_TRUE(stable::sm_da_alg(inst, small, vc, first) == base) << "seed " << seed;
  }
}

TEST(SmDa, OutputIsStableOnRandomMarkets) {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    GppInstance inst = audit::generate("gap", seed);
    const BidProfile truth = truthful_bids(inst);
    GapAssignment a = stable::sm_da_alg(inst, truth);
    EXPECT_TRUE(oracle::feasible(inst, a.pairs()));
    EXPECT_FALSE(stable::find_blocking_pair(inst, truth, a)) << "seed " << seed;
    auto vc = stable::scaled_caps(inst, Rational(2, 3));
    GapAssignment v = stable::sm_da_alg(inst, truth, vc);
    EXPECT_FALSE(stable::find_blocking_pair(inst, truth, v, vc)) << "seed " << seed;
  }
}

TEST(BlockingPair, HandFixture) {
  GppInstance inst = gap_instance({{"m", 1}}, {{"a", "m", 1, 1}, {"b", "m", 2, 1}});
  const BidProfile truth = truthful_bids(inst);
  GapAssignment wrong(inst);
  wrong.assign(*inst.find_item("am"));
  auto bp = stable::find_blocking_pair(inst, truth, wrong);
  ASSERT_TRUE(bp);
  EXPECT_EQ(bp->job, 1u);
  EXPECT_EQ(bp->machine, 0u);
  EXPECT_EQ(bp->better_set, oracle::items_of(inst, {"bm"}));

  GapAssignment right(inst);
  right.assign(*inst.find_item("bm"));
  EXPECT_FALSE(stable::find_blocking_pair(inst, truth, right));
  EXPECT_TRUE(stable::find_blocking_pair(inst, truth, GapAssignment(inst)));
}

TEST(Assignment, BookkeepingAndErrors) {
  GppInstance inst = c2();
  GapAssignment a(inst);
  a.assign(*inst.find_item("3z"));
  a.assign(*inst.find_item("2z"));
  EXPECT_EQ(a.machine_load(2), 101);
  EXPECT_EQ(a.machine_value(2), Rational(41, 2));
  EXPECT_EQ(*a.machine_of_job(2), 2u);
  EXPECT_THROW(a.assign(*inst.find_item("3x")), InstanceError);
  a.unassign(2);
  EXPECT_EQ(a.total_value(), Rational(1, 2));
  EXPECT_FALSE(a.machine_of_job(2));
}

// ---- gap mechanisms ----

// One machine, C = 4; every pair is small for lambda = 3.
GppInstance four_small() {
  return gap_instance({{"m", 4}}, {{"1", "m", 4, 1}, {"2", "m", 3, 1}, {"3", "m", 2, 1},
                                   {"4", "m", 1, 1}});
}

TEST(GapMech, FiltersBySize) {
  GppInstance inst = four_small();
  const BidProfile truth = truthful_bids(inst);
  EXPECT_EQ(gap::gap_mech_1(inst, truth, 3).total_value(), 0);
  GapAssignment top = gap::gap_mech_2(inst, truth, 3);
  EXPECT_EQ(top.total_value(), 9);  // lambda jobs at most
  EXPECT_FALSE(top.pair_of(3));

  GppInstance large = gap_instance({{"m", 4}}, {{"1", "m", 5, 2}, {"2", "m", 7, 2}});
  EXPECT_EQ(gap::gap_mech_2(large, truthful_bids(large), 3).total_value(), 0);
  GapAssignment one = gap::gap_mech_1(large, truthful_bids(large), 3);
  EXPECT_EQ(one.total_value(), 7);  // both fit, but one job per machine
  EXPECT_THROW(gap::gap_mech_1(large, truthful_bids(large), 1), UsageError);
}

TEST(GapMech, BoundaryPairIsBothSmallAndLarge) {
  GppInstance inst = gap_instance({{"m", 3}}, {{"1", "m", 2, 1}});  // c * lambda == C
  EXPECT_EQ(gap::gap_mech_1(inst, truthful_bids(inst), 3).total_value(), 2);
  EXPECT_EQ(gap::gap_mech_2(inst, truthful_bids(inst), 3).total_value(), 2);
}

TEST(GapMech1, RatioOnLargeMarkets) {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    GppInstance inst = audit::generate("gap-large", seed);
    Rational v = gap::gap_mech_1(inst, truthful_bids(inst), 3).total_value();
    EXPECT_LE(oracle::best_value(inst), 2 * 3 * v) << "seed " << seed;
  }
}

TEST(GapMech3, SampleEveryoneOrNoone) {
  GppInstance inst = four_small();
  gap::Gap3Config cfg;
  FixedSource all(sample_tape({1, 1, 1, 1}));
  auto t_all = gap::gap_mech_3_trace(inst, truthful_bids(inst), cfg, all);
  EXPECT_EQ(t_all.assignment.total_value(), 0);
  EXPECT_EQ(t_all.sample_assignment,
            gap::reference_astar(inst, truthful_bids(inst), cfg.lambda));

  FixedSource none(sample_tape({0, 0, 0, 0}));
  auto t_none = gap::gap_mech_3_trace(inst, truthful_bids(inst), cfg, none);
  EXPECT_EQ(t_none.thresholds, (std::vector<Rational>{0}));
  EXPECT_EQ(t_none.assignment.total_value(), 10);
}

TEST(GapMech3, ThresholdHandTrace) {
  // C = 6, lambda = 3 (small: c <= 2), mu = 1/6. T = {1}: A^T puts job 1 on
  // m, so t = (1/6) * 12 / 6 = 1/3. Job 3 has density 1/4 and is refused.
  GppInstance inst = gap_instance({{"m", 6}}, {{"1", "m", 12, 1},
                                               {"2", "m", 3, 2},
                                               {"3", "m", Rational(1, 2), 2},
                                               {"4", "m", 2, 1}});
  gap::Gap3Config cfg;
  FixedSource src(sample_tape({1, 0, 0, 0}));
  auto t = gap::gap_mech_3_trace(inst, truthful_bids(inst), cfg, src);
  EXPECT_EQ(t.in_sample, (std::vector<char>{1, 0, 0, 0}));
  EXPECT_EQ(t.sample_assignment.total_value(), 12);
  EXPECT_EQ(t.thresholds, (std::vector<Rational>{Rational(1, 3)}));
  EXPECT_EQ(ids(inst, t.assignment.pairs()), (std::vector<std::string>{"2m", "4m"}));
}

TEST(GapMech3, ReportsOnlyUseSmallPairs) {
  GppInstance inst = gap_instance({{"m", 3}, {"n", 9}},
                                  {{"1", "m", 100, 2}, {"1", "n", 1, 1}});
  gap::Gap3Config cfg;
  FixedSource src(sample_tape({0}));
  EXPECT_EQ(ids(inst, gap::gap_mech_3(inst, truthful_bids(inst), cfg, src).pairs()),
            (std::vector<std::string>{"1n"}));
}

TEST(GapMain, ExpectationIsMeanOfThree) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GppInstance inst = audit::generate("gap", seed, {.max_agents = 4});
    const BidProfile truth = truthful_bids(inst);
    gap::Gap3Config cfg;
    auto mean = [&](auto run) {
      Rational e = 0;
      for (const auto& b : enumerate_branches(run)) e += b.probability * b.result;
      return e;
    };
    Rational m3 = mean(
        [&](RandomSource& s) { return gap::gap_mech_3(inst, truth, cfg, s).total_value(); });
    Rational all = mean(
        [&](RandomSource& s) { return gap::gap_main(inst, truth, cfg, s).total_value(); });
    Rational m1 = gap::gap_mech_1(inst, truth, 3).total_value();
    Rational m2 = gap::gap_mech_2(inst, truth, 3).total_value();
    EXPECT_EQ(all, (m1 + m2 + m3) / 3) << "seed " << seed;
  }
}

TEST(GapSpecialMix, CoinBetweenGreedyAndDa) {
  GppInstance inst = c2();
  auto branches = enumerate_branches([&](RandomSource& s) {
    return gap::gap_special_mix(inst, truthful_bids(inst), s).total_value();
  });
  ASSERT_EQ(branches.size(), 2u);
  EXPECT_EQ(branches[0].result, Rational(51, 2));  // greedy
  EXPECT_EQ(branches[1].result, 11);  // 1y + 2z + 3x
}

TEST(Gap3Config, Validation) {
  EXPECT_NO_THROW(gap::Gap3Config{}.validate());
  EXPECT_THROW((gap::Gap3Config{2, Rational(1, 6)}.validate()), UsageError);
  EXPECT_THROW((gap::Gap3Config{3, Rational(0)}.validate()), UsageError);
  EXPECT_THROW((gap::Gap3Config{3, Rational(2, 9)}.validate()), UsageError);  // exactly 1/3
  EXPECT_NO_THROW((gap::Gap3Config{4, Rational(1, 5)}.validate()));
}

TEST(TruncateTopValues, KeepsLambdaBest) {
  GppInstance inst = gap_instance({{"m", 100}}, {{"1", "m", 1, 1}, {"2", "m", 5, 1},
                                                 {"3", "m", 3, 1}, {"4", "m", 4, 1},
                                                 {"5", "m", 2, 1}});
  GapAssignment a(inst);
  for (ItemIndex p = 0; p < inst.num_items(); ++p) a.assign(p);
  GapAssignment top = gap::truncate_top_values(inst, a, 3);
  EXPECT_EQ(ids(inst, top.pairs()), (std::vector<std::string>{"2m", "3m", "4m"}));
}

TEST(GapMech2, HalfOfTruncatedReference) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    GppInstance inst = audit::generate("gap-small", seed);
    const BidProfile truth = truthful_bids(inst);
    GapAssignment ref = gap::truncate_top_values(
        inst, gap::reference_astar(inst, truth, 3), 3);
    EXPECT_GE(2 * gap::gap_mech_2(inst, truth, 3).total_value(), ref.total_value())
        << "seed " << seed;
  }
}

TEST(GapMechanisms, TruthfulOnSmallMarkets) {
  for (const char* name : {"sm-greedy", "gap-special-mix", "gap-mech-1", "gap-mech-2",
                           "gap-mech-3", "gap-main"}) {
    const auto& mech = audit::find_mechanism(name);
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
      GppInstance inst = audit::generate("gap", seed, {.max_agents = 4});
      EXPECT_TRUE(audit::audit_truthfulness(mech, inst, audit::AuditMode::kUniversal).truthful)
          << name << " seed " << seed;
    }
  }
}

}  // namespace
}  // namespace gpp
