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

#ifndef GPP_AUDIT_REGISTRY_HPP_
#define GPP_AUDIT_REGISTRY_HPP_

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gpp/gap/mechanisms.hpp"
#include "gpp/knapsack/mechanisms.hpp"
#include "gpp/matching/mechanisms.hpp"
#include "gpp/matroid/greedy.hpp"
#include "gpp/stable/algorithms.hpp"

namespace gpp::audit {

// How a mechanism uses randomness, which also fixes its default audit mode.
enum class Randomness {
  kDeterministic,
  kUniversal,    // distribution over deterministic truthful mechanisms
  kExpectation,  // truthful in expectation only
};

enum class AuditMode { kUniversal, kExpectation };

inline std::string_view audit_mode_name(AuditMode m) {
  return m == AuditMode::kUniversal ? "universal" : "expectation";
}

inline AuditMode parse_audit_mode(std::string_view s) {
  if (s == "universal") return AuditMode::kUniversal;
  if (s == "expectation") return AuditMode::kExpectation;
  throw UsageError("unknown audit mode \"" + std::string(s) + "\"");
}

struct MechanismParams {
  int ks_lambda = knapsack::kDefaultLambda;
  gap::Gap3Config gap;
};

using MechanismFn = std::function<Outcome(const GppInstance&, const BidProfile&,
                                          const MechanismParams&, RandomSource&)>;

struct Mechanism {
  std::string name;
  Kind kind;
  std::optional<Demand> demand;  // nullopt: either
  Randomness randomness;
  bool truthful;  // false for the manipulable baselines
  std::string summary;
  MechanismFn run;

  AuditMode default_mode() const {
    return randomness == Randomness::kExpectation ? AuditMode::kExpectation
                                                  : AuditMode::kUniversal;
  }

  bool accepts(const GppInstance& inst) const {
    return inst.kind == kind && (!demand || inst.demand == *demand);
  }

  Outcome operator()(const GppInstance& inst, const BidProfile& bids,
                     const MechanismParams& params, RandomSource& tape) const {
    if (!accepts(inst)) {
      throw UsageError("mechanism " + name + " does not accept a " +
                       std::string(kind_name(inst.kind)) + "-" +
                       std::string(demand_name(inst.demand)) + " instance");
    }
    Outcome out = run(inst, bids, params, tape);
    check_outcome(inst, bids, out);
    return out;
  }
};

namespace detail {

template <class F>
MechanismFn deterministic(F f) {
  return [f](const GppInstance& inst, const BidProfile& bids, const MechanismParams& p,
             RandomSource&) { return f(inst, bids, p); };
}

inline Outcome as_outcome(const stable::GapAssignment& a) { return a.to_outcome(); }

}  // namespace detail

inline const std::vector<Mechanism>& registry() {
  using R = Randomness;
  using P = MechanismParams;
  static const std::vector<Mechanism> mechanisms = [] {
    std::vector<Mechanism> m;
    m.push_back({"matroid-greedy-mul", Kind::kMatroid, Demand::kMul, R::kDeterministic, true,
                 "greedy by value; optimal and truthful",
                 detail::deterministic([](auto& i, auto& b, const P&) {
                   return matroid::greedy_mul(i, b);
                 })});
    m.push_back({"matroid-greedy-unit", Kind::kMatroid, Demand::kUnit, R::kDeterministic, true,
                 "greedy by value, one item per agent; 2-approximation",
                 detail::deterministic([](auto& i, auto& b, const P&) {
                   return matroid::greedy_unit(i, b);
                 })});
    m.push_back({"matching-greedy-unit", Kind::kMatching, Demand::kUnit, R::kDeterministic,
                 true, "greedy by value, one edge per agent; 3-approximation",
                 detail::deterministic([](auto& i, auto& b, const P&) {
                   return matching::greedy_unit(i, b);
                 })});
    m.push_back({"matching-greedy-mul", Kind::kMatching, Demand::kMul, R::kDeterministic, false,
                 "baseline: greedy by value (not truthful)",
                 detail::deterministic([](auto& i, auto& b, const P&) {
                   return matching::greedy_mul(i, b);
                 })});
    m.push_back({"max-weight-matching", Kind::kMatching, std::nullopt, R::kDeterministic, false,
                 "baseline: exact maximum-weight matching (not truthful)",
                 detail::deterministic([](auto& i, auto& b, const P&) {
                   return matching::max_weight_mechanism(i, b);
                 })});
    m.push_back({"matching-alg", Kind::kMatching, Demand::kMul, R::kExpectation, true,
                 "random value group, per-agent maximum matching; O(log m)",
                 [](auto& i, auto& b, const P&, RandomSource& t) {
                   return matching::matching_alg(i, b, t);
                 }});
    m.push_back({"ks-unit-sample", Kind::kKnapsack, Demand::kUnit, R::kUniversal, true,
                 "random sample sets a value-density threshold",
                 [](auto& i, auto& b, const P& p, RandomSource& t) {
                   return knapsack::ks_unit_sample(i, b, p.ks_lambda, t);
                 }});
    m.push_back({"ks-unit", Kind::kKnapsack, Demand::kUnit, R::kUniversal, true,
                 "fair mix of best single item and ks-unit-sample",
                 [](auto& i, auto& b, const P& p, RandomSource& t) {
                   return knapsack::ks_unit_mechanism(i, b, p.ks_lambda, t);
                 }});
    m.push_back({"ks-mul-large-agent", Kind::kKnapsack, Demand::kMul, R::kExpectation, true,
                 "serves the agent with the largest fractional half-knapsack value",
                 [](auto& i, auto& b, const P&, RandomSource& t) {
                   return knapsack::ks_mul_large_agent(i, b, t);
                 }});
    m.push_back({"ks-mul-sample", Kind::kKnapsack, Demand::kMul, R::kExpectation, true,
                 "sampling threshold mechanism with reserved budget",
                 [](auto& i, auto& b, const P& p, RandomSource& t) {
                   return knapsack::ks_mul_sample(i, b, p.ks_lambda, t);
                 }});
    m.push_back({"ks-mul", Kind::kKnapsack, Demand::kMul, R::kExpectation, true,
                 "uniform mix of best item, large agent and sampling",
                 [](auto& i, auto& b, const P& p, RandomSource& t) {
                   return knapsack::ks_mul_mechanism(i, b, p.ks_lambda, t);
                 }});
    m.push_back({"sm-greedy", Kind::kGap, Demand::kUnit, R::kDeterministic, true,
                 "greedy stable matching by value",
                 detail::deterministic([](auto& i, auto& b, const P&) {
                   return detail::as_outcome(stable::sm_greedy(i, b));
                 })});
    m.push_back({"sm-da", Kind::kGap, Demand::kUnit, R::kDeterministic, false,
                 "deferred acceptance with knapsack machines (not truthful)",
                 detail::deterministic([](auto& i, auto& b, const P&) {
                   return detail::as_outcome(stable::sm_da_alg(i, b));
                 })});
    m.push_back({"gap-special-mix", Kind::kGap, Demand::kUnit, R::kUniversal, true,
                 "fair mix of sm-greedy and deferred acceptance; 4-approx on invariant markets",
                 [](auto& i, auto& b, const P&, RandomSource& t) {
                   return detail::as_outcome(gap::gap_special_mix(i, b, t));
                 }});
    m.push_back({"gap-mech-1", Kind::kGap, Demand::kUnit, R::kDeterministic, true,
                 "large pairs, one job per machine",
                 detail::deterministic([](auto& i, auto& b, const P& p) {
                   return detail::as_outcome(gap::gap_mech_1(i, b, p.gap.lambda));
                 })});
    m.push_back({"gap-mech-2", Kind::kGap, Demand::kUnit, R::kDeterministic, true,
                 "small pairs, at most lambda jobs per machine",
                 detail::deterministic([](auto& i, auto& b, const P& p) {
                   return detail::as_outcome(gap::gap_mech_2(i, b, p.gap.lambda));
                 })});
    m.push_back({"gap-mech-3", Kind::kGap, Demand::kUnit, R::kUniversal, true,
                 "sampling with virtual capacities and per-machine thresholds",
                 [](auto& i, auto& b, const P& p, RandomSource& t) {
                   return detail::as_outcome(gap::gap_mech_3(i, b, p.gap, t));
                 }});
    m.push_back({"gap-main", Kind::kGap, Demand::kUnit, R::kUniversal, true,
                 "uniform mix of gap-mech-1/2/3; constant approximation",
                 [](auto& i, auto& b, const P& p, RandomSource& t) {
                   return detail::as_outcome(gap::gap_main(i, b, p.gap, t));
                 }});
    return m;
  }();
  return mechanisms;
}

inline const Mechanism& find_mechanism(std::string_view name) {
  for (const Mechanism& m : registry()) {
    if (m.name == name) return m;
  }
  throw UsageError("unknown mechanism \"" + std::string(name) + "\"");
}

}  // namespace gpp::audit

#endif  // GPP_AUDIT_REGISTRY_HPP_
