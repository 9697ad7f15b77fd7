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

#ifndef GPP_AUDIT_FIXTURES_HPP_
#define GPP_AUDIT_FIXTURES_HPP_

#include <functional>
#include <string>
#include <vector>

#include "gpp/audit/exact_opt.hpp"
#include "gpp/audit/truthfulness.hpp"

namespace gpp::audit {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Fixture {
  std::string name;
  std::string description;
  InstanceSpec spec;
  std::function<std::vector<CheckResult>(const GppInstance&)> regressions;

  GppInstance instance() const { return validate_instance(spec); }
  std::vector<CheckResult> check() const { return regressions(instance()); }
};

namespace detail {

inline CheckResult expect_equal(std::string name, const Rational& got, const Rational& want) {
  return {std::move(name), got == want, "got " + to_string(got) + ", expected " + to_string(want)};
}

inline std::vector<ItemIndex> ids_to_items(const GppInstance& inst,
                                           const std::vector<std::string>& ids) {
  std::vector<ItemIndex> out;
  for (const auto& id : ids) out.push_back(*inst.find_item(id));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> items_to_ids(const GppInstance& inst,
                                             const std::vector<ItemIndex>& items) {
  std::vector<std::string> out;
  for (ItemIndex j : items) out.push_back(inst.items[j].id);
  return out;
}

// Runs a deterministic registry mechanism on truthful bids.
inline Outcome run_truthful(const std::string& mechanism, const GppInstance& inst) {
  FixedSource none(TapeTranscript{});
  return find_mechanism(mechanism)(inst, truthful_bids(inst), {}, none);
}

inline CheckResult expect_truthful(const std::string& mechanism, const GppInstance& inst) {
  const Mechanism& m = find_mechanism(mechanism);
  AuditReport r = audit_truthfulness(m, inst, m.default_mode());
  return {mechanism + " audit truthful", r.truthful,
          std::to_string(r.deviations_checked) + " deviations checked"};
}

inline CheckResult expect_witness(const std::string& mechanism, const GppInstance& inst,
                                  AgentIndex agent, const std::vector<std::string>& misreport,
                                  const Rational& before, const Rational& after) {
  const Mechanism& m = find_mechanism(mechanism);
  AuditReport r = audit_truthfulness(m, inst, m.default_mode());
  CheckResult c{mechanism + " manipulable, agent " + inst.agent_labels[agent] + " " +
                    to_string(before) + " -> " + to_string(after),
                false, ""};
  if (r.truthful || !r.witness) {
    c.detail = "audit found no profitable deviation";
    return c;
  }
  const Witness& w = *r.witness;
  std::string got;
  for (const auto& id : items_to_ids(inst, w.misreport)) got += (got.empty() ? "" : ",") + id;
  c.detail = "witness agent " + inst.agent_labels[w.agent] + " reports {" + got + "}: " +
             to_string(w.truthful_utility) + " -> " + to_string(w.misreport_utility);
  c.passed = w.agent == agent && w.misreport == ids_to_items(inst, misreport) &&
             w.truthful_utility == before && w.misreport_utility == after &&
             verify_witness(m, inst, r);
  return c;
}

}  // namespace detail

// Two agents, edges (t1,u1)=(t2,u1)=1+eps and (t1,u2)=(t2,u2)=1; agent 1
// holds the t1 edges, agent 2 the t2 edges.
inline InstanceSpec lowerbound_matching_spec(const Rational& eps) {
  InstanceSpec s;
  s.kind = Kind::kMatching;
  s.demand = Demand::kUnit;
  s.items = {{"t1u1", 1 + eps, std::nullopt, "t1", "u1", "", ""},
             {"t1u2", Rational(1), std::nullopt, "t1", "u2", "", ""},
             {"t2u1", 1 + eps, std::nullopt, "t2", "u1", "", ""},
             {"t2u2", Rational(1), std::nullopt, "t2", "u2", "", ""}};
  s.agents = {{"t1u1", "t1u2"}, {"t2u1", "t2u2"}};
  return s;
}

// Partition matroid {a1,a2} | {a3,a4}, quota 1 each.
inline InstanceSpec lowerbound_matroid_spec(const Rational& eps) {
  InstanceSpec s;
  s.kind = Kind::kMatroid;
  s.demand = Demand::kUnit;
  s.items = {{"a1", 1 + eps, std::nullopt, "", "", "", ""},
             {"a2", 1 + eps, std::nullopt, "", "", "", ""},
             {"a3", Rational(1), std::nullopt, "", "", "", ""},
             {"a4", Rational(1), std::nullopt, "", "", "", ""}};
  s.matroid.type = MatroidSpec::Type::kPartition;
  s.matroid.classes = {{{"a1", "a2"}, 1}, {{"a3", "a4"}, 1}};
  s.agents = {{"a1", "a3"}, {"a2", "a4"}};
  return s;
}

// Agent i holds (t1,u1)=10 and (t2,u1)=20; another agent holds (t2,u2)=15.
inline InstanceSpec fig_a_spec() {
  InstanceSpec s;
  s.kind = Kind::kMatching;
  s.demand = Demand::kMul;
  s.items = {{"t1u1", Rational(10), std::nullopt, "t1", "u1", "", ""},
             {"t2u1", Rational(20), std::nullopt, "t2", "u1", "", ""},
             {"t2u2", Rational(15), std::nullopt, "t2", "u2", "", ""}};
  s.agents = {{"t1u1", "t2u1"}, {"t2u2"}};
  return s;
}

// Agent i holds (t1,u1), (t3,u4), (t4,u3); every other edge has its own agent.
inline InstanceSpec fig_b_spec() {
  InstanceSpec s;
  s.kind = Kind::kMatching;
  s.demand = Demand::kMul;
  s.items = {{"t1u1", Rational(10), std::nullopt, "t1", "u1", "", ""},
             {"t1u2", Rational(9), std::nullopt, "t1", "u2", "", ""},
             {"t2u1", Rational(8), std::nullopt, "t2", "u1", "", ""},
             {"t2u3", Rational(7), std::nullopt, "t2", "u3", "", ""},
             {"t3u2", Rational(13, 2), std::nullopt, "t3", "u2", "", ""},
             {"t3u4", Rational(6), std::nullopt, "t3", "u4", "", ""},
             {"t4u3", Rational(6), std::nullopt, "t4", "u3", "", ""}};
  s.agents = {{"t1u1", "t3u4", "t4u3"}, {"t1u2"}, {"t2u1"}, {"t2u3"}, {"t3u2"}};
  return s;
}

// Four jobs, machines x, y (capacity 1) and z (capacity 100).
inline InstanceSpec c2_gap_spec() {
  InstanceSpec s;
  s.kind = Kind::kGap;
  s.demand = Demand::kUnit;
  s.machines = {{"x", Rational(1)}, {"y", Rational(1)}, {"z", Rational(100)}};
  auto pair = [&](std::string job, std::string machine, Rational v, Rational c) {
    s.items.push_back({job + machine, std::move(v), std::move(c), "", "", job, machine});
  };
  pair("1", "x", Rational(1), Rational(1, 2));
  pair("1", "y", Rational(1, 2), Rational(1));
  pair("2", "x", Rational(1), Rational(1, 2));
  pair("2", "z", Rational(1, 2), Rational(1));
  pair("3", "x", Rational(10), Rational(1));
  pair("3", "z", Rational(20), Rational(100));
  pair("4", "x", Rational(5), Rational(1));
  pair("4", "y", Rational(1, 10), Rational(1));
  return s;
}

inline std::vector<Fixture> builtin_fixtures(const Rational& eps = Rational(1, 10)) {
  using detail::expect_equal;
  std::vector<Fixture> out;

  out.push_back({"lowerbound-matching", "unit-demand matching where greedy meets the optimum 2+eps",
                 lowerbound_matching_spec(eps), [eps](const GppInstance& inst) {
                   std::vector<CheckResult> r;
                   r.push_back(expect_equal("exact optimum", exact_opt(inst).value, 2 + eps));
                   auto diag = detail::ids_to_items(inst, {"t1u1", "t2u2"});
                   r.push_back(expect_equal("value of {(t1,u1),(t2,u2)}",
                                            make_outcome(inst, diag).total, 2 + eps));
                   r.push_back(expect_equal("matching-greedy-unit total",
                                            detail::run_truthful("matching-greedy-unit", inst).total,
                                            2 + eps));
                   r.push_back(detail::expect_truthful("matching-greedy-unit", inst));
                   return r;
                 }});

  out.push_back({"lowerbound-matroid", "unit-demand partition matroid with values 1+eps,1+eps,1,1",
                 lowerbound_matroid_spec(eps), [eps](const GppInstance& inst) {
                   std::vector<CheckResult> r;
                   r.push_back(expect_equal("exact optimum", exact_opt(inst).value, 2 + eps));
                   r.push_back(expect_equal("matroid-greedy-unit total",
                                            detail::run_truthful("matroid-greedy-unit", inst).total,
                                            2 + eps));
                   r.push_back(detail::expect_truthful("matroid-greedy-unit", inst));
                   return r;
                 }});

  out.push_back({"figA-maxmatching", "maximum-weight matching rewards hiding an edge (10 -> 20)",
                 fig_a_spec(), [](const GppInstance& inst) {
                   std::vector<CheckResult> r;
                   r.push_back(expect_equal("truthful utility of agent i",
                                            detail::run_truthful("max-weight-matching", inst).utilities[0],
                                            Rational(10)));
                   r.push_back(detail::expect_witness("max-weight-matching", inst, 0, {"t2u1"},
                                                      Rational(10), Rational(20)));
                   return r;
                 }});

  out.push_back({"figB-greedy", "greedy on multi-unit matching rewards hiding an edge (10 -> 12)",
                 fig_b_spec(), [](const GppInstance& inst) {
                   std::vector<CheckResult> r;
                   r.push_back(expect_equal("truthful utility of agent i",
                                            detail::run_truthful("matching-greedy-mul", inst).utilities[0],
                                            Rational(10)));
                   BidProfile hide = truthful_bids(inst);
                   hide.reports[0] = detail::ids_to_items(inst, {"t3u4", "t4u3"});
                   r.push_back(expect_equal("utility of agent i hiding (t1,u1)",
                                            matching::greedy_mul(inst, hide).utilities[0],
                                            Rational(12)));
                   r.push_back(detail::expect_witness("matching-greedy-mul", inst, 0,
                                                      {"t3u4", "t4u3"}, Rational(10), Rational(12)));
                   return r;
                 }});

  out.push_back({"c2-gap", "deferred acceptance rewards job 4 for reporting only y (0 -> 1/10)",
                 c2_gap_spec(), [](const GppInstance& inst) {
                   std::vector<CheckResult> r;
                   Outcome da = detail::run_truthful("sm-da", inst);
                   std::vector<ItemIndex> want = detail::ids_to_items(inst, {"1y", "2z", "3x"});
                   r.push_back({"sm-da assigns 1->y, 2->z, 3->x, 4->none", da.items() == want,
                                "total " + to_string(da.total)});
                   r.push_back(detail::expect_witness("sm-da", inst, 3, {"4y"}, Rational(0),
                                                      Rational(1, 10)));
                   r.push_back(detail::expect_truthful("sm-greedy", inst));
                   auto bp = stable::find_blocking_pair(inst, truthful_bids(inst),
                                                        stable::sm_da_alg(inst, truthful_bids(inst)));
                   r.push_back({"sm-da output has no blocking pair", !bp.has_value(), ""});
                   return r;
                 }});
  return out;
}

inline const Fixture& find_fixture(const std::vector<Fixture>& fixtures, std::string_view name) {
  for (const Fixture& f : fixtures) {
    if (f.name == name) return f;
  }
  throw UsageError("unknown fixture \"" + std::string(name) + "\"");
}

}  // namespace gpp::audit

#endif  // GPP_AUDIT_FIXTURES_HPP_
