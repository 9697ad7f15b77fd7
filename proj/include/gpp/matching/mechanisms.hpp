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

#ifndef GPP_MATCHING_MECHANISMS_HPP_
#define GPP_MATCHING_MECHANISMS_HPP_

#include <optional>
#include <vector>

#include "gpp/core/outcome.hpp"
#include "gpp/core/random_tape.hpp"
#include "gpp/matching/max_weight.hpp"
#include "gpp/matroid/greedy.hpp"

namespace gpp::matching {

namespace detail {

inline void require_matching(const GppInstance& inst, std::optional<Demand> demand) {
  if (inst.kind != Kind::kMatching || (demand && inst.demand != *demand)) {
    throw UsageError(demand ? std::string("mechanism needs a matching-") +
                                  std::string(demand_name(*demand)) + " instance"
                            : std::string("mechanism needs a matching instance"));
  }
}

// 2^e as an exact rational, e of either sign.
inline Rational pow2(int e) {
  BigInt p = BigInt(1) << (e < 0 ? -e : e);
  return e < 0 ? Rational(BigInt(1), p) : Rational(p);
}

// The integer e with 2^(e-1) < x <= 2^e, for x > 0.
inline int ceil_log2(const Rational& x) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::msb;
  using boost::multiprecision::numerator;
  int e = static_cast<int>(msb(numerator(x))) - static_cast<int>(msb(denominator(x)));
  while (pow2(e) < x) ++e;
  while (pow2(e - 1) >= x) --e;
  return e;
}

}  // namespace detail

// Greedy by value, one edge per agent: truthful 3-approximation.
inline Outcome greedy_unit(const GppInstance& inst, const BidProfile& bids) {
  detail::require_matching(inst, Demand::kUnit);
  return matroid::greedy(inst, bids);
}

// The same greedy run on multi-unit demand. Not truthful; kept as the
// baseline the counterexample fixtures exercise.
inline Outcome greedy_mul(const GppInstance& inst, const BidProfile& bids) {
  detail::require_matching(inst, Demand::kMul);
  return matroid::greedy(inst, bids);
}

// Maximum-weight matching over the reports (one edge per agent under unit
// demand). Optimal but not truthful; baseline for the counterexamples.
inline Outcome max_weight_mechanism(const GppInstance& inst, const BidProfile& bids) {
  detail::require_matching(inst, std::nullopt);
  check_bids(inst, bids);
  std::vector<char> blocked(inst.vertices.size(), 0);
  auto chosen = max_weight_matching(inst, reported_items(bids), blocked,
                                    inst.demand == Demand::kUnit);
  return make_outcome(inst, chosen);
}

// Value classes used by the randomized multi-unit mechanism. Group j holds
// the edges with value in (2^(E-j-1), 2^(E-j)], j = 0..levels, where
// 2^(E-1) < v_max <= 2^E and levels = ceil(log2 m) for the instance's m
// items. Edges at or below 2^(E-levels-1) are discarded.
struct GroupPartition {
  bool degenerate = true;   // no reported edge with positive value
  Rational v_max = 0;
  int exponent = 0;         // E
  int levels = 0;           // ceil(log2 m)
  std::size_t group_count = 1;
  std::vector<std::vector<ItemIndex>> groups;  // index 0 is the top class
  std::vector<ItemIndex> discarded;
  std::optional<AgentIndex> priority_agent;

  // Interval (lower, upper] of group j.
  std::pair<Rational, Rational> bounds(std::size_t j) const {
    return {detail::pow2(exponent - static_cast<int>(j) - 1),
            detail::pow2(exponent - static_cast<int>(j))};
  }
  Rational discard_threshold() const { return detail::pow2(exponent - levels - 1); }
};

inline int group_levels(std::size_t m) {
  int levels = 0;
  while ((std::size_t{1} << levels) < m) ++levels;
  return levels;
}

inline GroupPartition partition_groups(const GppInstance& inst, const BidProfile& bids) {
  detail::require_matching(inst, std::nullopt);
  check_bids(inst, bids);
  GroupPartition part;
  part.levels = group_levels(inst.num_items());
  part.group_count = static_cast<std::size_t>(part.levels) + 1;
  part.groups.assign(part.group_count, {});

  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    for (ItemIndex j : bids.reports[a]) {
      if (inst.items[j].value > part.v_max) {
        part.v_max = inst.items[j].value;
        part.priority_agent = a;
      }
    }
  }
  if (part.v_max == 0) {
    part.priority_agent.reset();
    part.discarded = reported_items(bids);
    return part;
  }
  part.degenerate = false;
  part.exponent = detail::ceil_log2(part.v_max);
  for (ItemIndex j : reported_items(bids)) {
    const Rational& x = inst.items[j].value;
    if (x == 0) {
      part.discarded.push_back(j);
      continue;
    }
    int slot = part.exponent - detail::ceil_log2(x);
    if (slot > part.levels) {
      part.discarded.push_back(j);
    } else {
      part.groups[static_cast<std::size_t>(slot)].push_back(j);
    }
  }
  return part;
}

// Randomized mechanism for multi-unit matching: pick one value group
// uniformly, then let the agents, priority agent first and the rest in
// canonical order, each take a maximum-weight matching of their own edges in
// that group over still-free vertices. Truthful in expectation.
inline Outcome matching_alg(const GppInstance& inst, const BidProfile& bids,
                            RandomSource& tape) {
  detail::require_matching(inst, Demand::kMul);
  GroupPartition part = partition_groups(inst, bids);
  std::size_t pick = tape.choice("group", part.group_count);
  if (part.degenerate) return empty_outcome(inst);

  std::vector<char> in_group(inst.num_items(), 0);
  for (ItemIndex j : part.groups[pick]) in_group[j] = 1;

  std::vector<AgentIndex> order{*part.priority_agent};
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    if (a != *part.priority_agent) order.push_back(a);
  }
  std::vector<char> matched(inst.vertices.size(), 0);
  std::vector<ItemIndex> chosen;
  for (AgentIndex a : order) {
    std::vector<ItemIndex> own;
    for (ItemIndex j : bids.reports[a]) {
      if (in_group[j]) own.push_back(j);
    }
    if (own.empty()) continue;
    for (ItemIndex j : max_weight_matching(inst, own, matched)) {
      matched[inst.items[j].u] = matched[inst.items[j].v] = 1;
      chosen.push_back(j);
    }
  }
  return make_outcome(inst, chosen);
}

}  // namespace gpp::matching

#endif  // GPP_MATCHING_MECHANISMS_HPP_
