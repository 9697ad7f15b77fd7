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

#include <set>

#include "gpp/core/outcome.hpp"
#include "gpp/core/random_tape.hpp"
#include "gpp/io/json.hpp"
#include "oracles.hpp"

namespace gpp {
namespace {

Rational R(const char* s) { return parse_rational(s); }

const char* kMatroid = R"({
  "format": 1, "kind": "matroid", "demand": "unit",
  "items": [{"id": "a10", "value": "1"}, {"id": "a2", "value": "3/2"},
            {"id": "a1", "value": 2}],
  "agents": [["a2", "a10"], ["a1"]],
  "constraint": {"type": "uniform", "rank": 2}
})";

TEST(Rational, ParsesIntegersFractionsAndDecimals) {
  EXPECT_EQ(R("3"), Rational(3));
  EXPECT_EQ(R("-3"), Rational(-3));
  EXPECT_EQ(R("2/4"), Rational(1, 2));
  EXPECT_EQ(R("2.5"), Rational(5, 2));
  EXPECT_EQ(R("0.125"), Rational(1, 8));
  EXPECT_EQ(R(".5"), Rational(1, 2));
  EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
  EXPECT_EQ(to_string(Rational(4)), "4");
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "abc", "1/0", "1/-2", "1.2.3", "-", ".", "1e3", "1 /2"}) {
    EXPECT_THROW(R(bad), InstanceError) << bad;
  }
}

TEST(Instance, CanonicalOrderIsNatural) {
  GppInstance inst = io::parse_instance(kMatroid);
  ASSERT_EQ(inst.num_items(), 3u);
  EXPECT_EQ(inst.items[0].id, "a1");
  EXPECT_EQ(inst.items[1].id, "a2");
  EXPECT_EQ(inst.items[2].id, "a10");
  // agents keep declaration order; their items are sorted indices
  EXPECT_EQ(inst.agents[0], (std::vector<ItemIndex>{1, 2}));
  EXPECT_EQ(inst.agents[1], (std::vector<ItemIndex>{0}));
  EXPECT_EQ(inst.agent_labels, (std::vector<std::string>{"0", "1"}));
  EXPECT_EQ(*inst.items[2].owner, 0u);
}

void expect_rejected(const std::string& text, const std::string& fragment) {
  try {
    io::parse_instance(text);
    ADD_FAILURE() << "accepted: " << text;
  } catch (const InstanceError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos)
        << "message was: " << e.what();
  }
}

TEST(Instance, ValidationErrors) {
  expect_rejected(R"({"format":1,"kind":"knapsack","demand":"mul",
    "items":[{"id":"k1","value":"1","capacity":"1"}],
    "agents":[["k1"],["k1"]],"constraint":{"capacity":"2"}})", "disjoint");
  expect_rejected(R"({"format":1,"kind":"knapsack","demand":"mul",
    "items":[{"id":"k1","value":"-1","capacity":"1"}],
    "agents":[["k1"]],"constraint":{"capacity":"2"}})", "negative");
  expect_rejected(R"({"format":1,"kind":"knapsack","demand":"mul",
    "items":[{"id":"k1","value":"1"}],
    "agents":[["k1"]],"constraint":{"capacity":"2"}})", "capacity");
  expect_rejected(R"({"format":1,"kind":"matroid","demand":"mul",
    "items":[{"id":"a","value":"1"},{"id":"a","value":"2"}],
    "agents":[["a"]],"constraint":{"type":"uniform","rank":1}})", "a");
  expect_rejected(R"({"format":1,"kind":"matroid","demand":"mul",
    "items":[{"id":"a","value":"1"},{"id":"b","value":"2"}],
    "agents":[["a","b"]],"constraint":{"type":"explicit","independent":[[],["a","b"]]}})",
                  "");
  expect_rejected(R"({"format":2,"kind":"matroid","demand":"mul","items":[],"agents":[],
    "constraint":{"type":"uniform","rank":1}})", "format");
  expect_rejected("{ not json", "");
}

TEST(Instance, ExplicitFamilyMustBeDownwardClosed) {
  EXPECT_THROW(io::parse_instance(R"({"format":1,"kind":"matroid","demand":"mul",
    "items":[{"id":"a","value":"1"},{"id":"b","value":"2"}],
    "agents":[["a","b"]],
    "constraint":{"type":"explicit","independent":[[],["a","b"]]}})"),
               InstanceError);
  GppInstance ok = io::parse_instance(R"({"format":1,"kind":"matroid","demand":"mul",
    "items":[{"id":"a","value":"1"},{"id":"b","value":"2"}],
    "agents":[["a","b"]],
    "constraint":{"type":"explicit","independent":[[],["a"],["b"]]}})");
  EXPECT_TRUE(is_feasible(ok, std::vector<std::string>{"a"}));
  EXPECT_FALSE(is_feasible(ok, std::vector<std::string>{"a", "b"}));
}

TEST(Instance, GapAgentsAreJobs) {
  const char* base = R"({"format":1,"kind":"gap","demand":"unit",
    "items":[{"id":"1x","value":"1","capacity":"1","job":"1","machine":"x"},
             {"id":"2x","value":"1","capacity":"1","job":"2","machine":"x"}],
    %AGENTS%
    "constraint":{"machines":[{"id":"x","capacity":"1"}]}})";
  auto with = [&](const std::string& agents) {
    std::string t = base;
    t.replace(t.find("%AGENTS%"), 8, agents);
    return t;
  };
  GppInstance derived = io::parse_instance(with(""));
  EXPECT_EQ(derived.agent_labels, (std::vector<std::string>{"1", "2"}));
  GppInstance listed = io::parse_instance(with(R"("agents":[["1x"],["2x"]],)"));
  EXPECT_EQ(listed.agents, derived.agents);
  expect_rejected(with(R"("agents":[["1x","2x"]],)"), "two different jobs");
}

TEST(Feasibility, EmptySetIsAlwaysFeasible) {
  for (const char* path : {"c2.json", "figA.json", "knapsack-small.json",
                           "lowerbound-matroid.json"}) {
    GppInstance inst = io::load_instance(std::string(GPP_SAMPLES) + "/" + path);
    EXPECT_TRUE(is_feasible(inst, std::vector<ItemIndex>{})) << path;
  }
}

TEST(Feasibility, HandExamples) {
  GppInstance ks = io::parse_instance(R"({"format":1,"kind":"knapsack","demand":"mul",
    "items":[{"id":"k1","value":"1","capacity":"3"},{"id":"k2","value":"1","capacity":"3"}],
    "agents":[["k1","k2"]],"constraint":{"capacity":"5"}})");
  EXPECT_FALSE(is_feasible(ks, std::vector<std::string>{"k1", "k2"}));
  EXPECT_TRUE(is_feasible(ks, std::vector<std::string>{"k2"}));

  GppInstance m = io::load_instance(std::string(GPP_SAMPLES) + "/lowerbound-matching.json");
  EXPECT_FALSE(is_feasible(m, std::vector<std::string>{"t1u1", "t2u1"}));  // share u1
  EXPECT_TRUE(is_feasible(m, std::vector<std::string>{"t1u1", "t2u2"}));
  // unit demand: t1u1 and t2u2 belong to different agents, t1u1+t1u2 do not fit anyway
  GppInstance u = io::parse_instance(kMatroid);
  EXPECT_FALSE(is_feasible(u, std::vector<std::string>{"a2", "a10"}));  // one agent
  EXPECT_TRUE(is_feasible(u, std::vector<std::string>{"a1", "a10"}));
  EXPECT_THROW(is_feasible(u, std::vector<std::string>{"nope"}), InstanceError);
}

TEST(Feasibility, AgreesWithDefinitionOracleOnSamples) {
  for (const char* path : {"c2.json", "figA.json", "figB.json", "knapsack-small.json",
                           "lowerbound-matching.json", "lowerbound-matroid.json"}) {
    GppInstance inst = io::load_instance(std::string(GPP_SAMPLES) + "/" + path);
    const std::size_t n = inst.num_items();
    ASSERT_LE(n, 16u);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<ItemIndex> sel;
      for (std::size_t j = 0; j < n; ++j) {
        if (mask >> j & 1) sel.push_back(j);
      }
      EXPECT_EQ(is_feasible(inst, sel), oracle::feasible(inst, sel)) << path << " " << mask;
    }
  }
}

TEST(Outcome, EvaluateSumsValuesPerAgent) {
  GppInstance m = io::load_instance(std::string(GPP_SAMPLES) + "/lowerbound-matching.json");
  Outcome o = make_outcome(m, oracle::items_of(m, {"t1u1", "t2u2"}));
  EXPECT_EQ(o.total, Rational(21, 10));
  EXPECT_EQ(o.utilities[0], Rational(11, 10));
  EXPECT_EQ(o.utilities[1], Rational(1));
  EXPECT_EQ(empty_outcome(m).total, 0);
  EXPECT_THROW(make_outcome(m, oracle::items_of(m, {"t1u1", "t2u1"})), InstanceError);

  Outcome wrong = o;
  std::swap(wrong.selected[0], wrong.selected[1]);
  EXPECT_THROW(evaluate(m, wrong), InstanceError);
}

TEST(Outcome, BidsMustBeSubsetsOfTrueItems) {
  GppInstance m = io::load_instance(std::string(GPP_SAMPLES) + "/lowerbound-matching.json");
  BidProfile b = truthful_bids(m);
  EXPECT_NO_THROW(check_bids(m, b));
  b.reports[0].push_back(m.agents[1][0]);
  EXPECT_THROW(check_bids(m, b), InstanceError);
  BidProfile unsorted = truthful_bids(m);
  std::reverse(unsorted.reports[0].begin(), unsorted.reports[0].end());
  EXPECT_THROW(check_bids(m, unsorted), InstanceError);

  BidProfile shy = truthful_bids(m);
  shy.reports[0] = {m.agents[0][1]};
  Outcome o = make_outcome(m, oracle::items_of(m, {"t1u1"}));
  EXPECT_THROW(check_outcome(m, shy, o), InstanceError);
}

TEST(RandomTape, EnumerationCoversEveryBranchOnce) {
  auto run = [](RandomSource& src) {
    int x = src.bit("a", Rational(1, 3)) ? 10 : 0;
    if (x) x += static_cast<int>(src.choice("b", 3));
    return x;
  };
  auto branches = enumerate_branches(run);
  ASSERT_EQ(branches.size(), 4u);
  Rational total = 0;
  std::multiset<int> results;
  for (const auto& b : branches) {
    total += b.probability;
    results.insert(b.result);
  }
  EXPECT_EQ(total, 1);
  EXPECT_EQ(results, (std::multiset<int>{0, 10, 11, 12}));
  // lexicographic in draw values
  EXPECT_EQ(branches[0].result, 0);
  EXPECT_EQ(branches[0].probability, Rational(2, 3));
  EXPECT_EQ(branches[3].result, 12);
  EXPECT_EQ(branches[3].probability, Rational(1, 9));
}

TEST(RandomTape, DeterministicBitsAddNoBranches) {
  auto branches = enumerate_branches([](RandomSource& src) {
    return src.bit("sure", Rational(1)) && !src.bit("never", Rational(0));
  });
  ASSERT_EQ(branches.size(), 1u);
  EXPECT_TRUE(branches[0].result);
  EXPECT_EQ(branches[0].probability, 1);
}

TEST(RandomTape, GateOnBranchCount) {
  auto run = [](RandomSource& src) {
    int v = 0;
    for (int i = 0; i < 6; ++i) v += src.bit("b" + std::to_string(i), Rational(1, 2));
    return v;
  };
  EXPECT_EQ(enumerate_branches(run).size(), 64u);
  EXPECT_THROW(enumerate_branches(run, 10), GateExceeded);
}

TEST(RandomTape, FixedSourceReplaysByKey) {
  auto run = [](RandomSource& src) {
    return src.choice("x", 5) * 10 + (src.bit("y", Rational(1, 2)) ? 1 : 0);
  };
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SeededSource s(seed);
    std::size_t first = run(s);
    SeededSource again(seed);
    EXPECT_EQ(run(again), first);
    FixedSource replay(s.transcript());
    EXPECT_EQ(run(replay), first);
    EXPECT_EQ(replay.transcript().draws.size(), 2u);
  }
  TapeTranscript partial;
  partial.draws.push_back(Draw{"x", Draw::Type::kChoice, Rational(0), 5, 2});
  FixedSource missing(partial);
  EXPECT_THROW(run(missing), MissingDraw);

  TapeTranscript wrong_arity;
  wrong_arity.draws.push_back(Draw{"x", Draw::Type::kChoice, Rational(0), 4, 2});
  FixedSource bad(wrong_arity);
  EXPECT_THROW(bad.choice("x", 5), MissingDraw);
}

TEST(RandomTape, SeededBitFrequencyIsRoughlyP) {
  SeededSource s(7);
  int ones = 0;
  for (int i = 0; i < 3000; ++i) ones += s.bit("k" + std::to_string(i), Rational(1, 3));
  EXPECT_GT(ones, 850);
  EXPECT_LT(ones, 1150);
}

TEST(RandomTape, TranscriptProbability) {
  TapeTranscript t;
  t.draws.push_back(Draw{"a", Draw::Type::kBit, Rational(1, 3), 2, 1});
  t.draws.push_back(Draw{"b", Draw::Type::kBit, Rational(1, 3), 2, 0});
  t.draws.push_back(Draw{"c", Draw::Type::kChoice, Rational(0), 4, 3});
  EXPECT_EQ(t.probability(), Rational(1, 3) * Rational(2, 3) * Rational(1, 4));
}

TEST(Json, InstanceRoundTrip) {
  for (const char* path : {"c2.json", "figA.json", "figB.json", "knapsack-small.json",
                           "lowerbound-matching.json", "lowerbound-matroid.json"}) {
    const std::string text = io::read_file(std::string(GPP_SAMPLES) + "/" + path);
    InstanceSpec spec = io::spec_from_json(io::Json::parse(text));
    EXPECT_EQ(io::dump(io::spec_to_json(spec)), text) << path;
  }
}

TEST(Json, TapeRoundTrip) {
  SeededSource s(3);
  s.bit("mix", Rational(1, 2));
  s.choice("group", 4);
  s.bit("alpha", Rational(2, 7));
  TapeTranscript back = io::tape_from_json(io::tape_to_json(s.transcript()));
  ASSERT_EQ(back.draws.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back.draws[i].key, s.transcript().draws[i].key);
    EXPECT_EQ(back.draws[i].type, s.transcript().draws[i].type);
    EXPECT_EQ(back.draws[i].p, s.transcript().draws[i].p);
    EXPECT_EQ(back.draws[i].arity, s.transcript().draws[i].arity);
    EXPECT_EQ(back.draws[i].value, s.transcript().draws[i].value);
  }
  EXPECT_THROW(io::tape_from_json(io::Json::parse(R"([{"key": 3}])")), InstanceError);
}

}  // namespace
}  // namespace gpp
