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

#ifndef GPP_KNAPSACK_MECHANISMS_HPP_
#define GPP_KNAPSACK_MECHANISMS_HPP_

#include <string>
#include <vector>

#include "gpp/core/outcome.hpp"
#include "gpp/core/random_tape.hpp"
#include "gpp/knapsack/fractional.hpp"

namespace gpp::knapsack {

// Capacity-filter parameter of the sampling mechanisms. Large enough for
// the constant-ratio argument to go through.
inline constexpr int kDefaultLambda = 144;

namespace detail {

inline void require_knapsack(const GppInstance& inst, Demand demand) {
  if (inst.kind != Kind::kKnapsack || inst.demand != demand) {
    throw UsageError(std::string("mechanism needs a knapsack-") +
                     std::string(demand_name(demand)) + " instance");
  }
}

inline void require_lambda(int lambda) {
  if (lambda < 2) throw UsageError("knapsack lambda must be an integer >= 2");
}

inline std::string sample_key(AgentIndex a) { return "sample/" + std::to_string(a); }

// One fair bit per agent, canonical order; true means "sampled into T".
inline std::vector<char> draw_sample(const GppInstance& inst, RandomSource& tape) {
  std::vector<char> in_t(inst.num_agents(), 0);
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    in_t[a] = tape.bit(sample_key(a), Rational(1, 2)) ? 1 : 0;
  }
  return in_t;
}

inline Rational total_value(const GppInstance& inst, const std::vector<ItemIndex>& s) {
  Rational v = 0;
  for (ItemIndex j : s) v += inst.items[j].value;
  return v;
}

// v/c >= V/(2C), cross-multiplied.
inline bool passes_threshold(const GppInstance& inst, ItemIndex j, const Rational& sample_value) {
  const Rational& C = inst.knapsack_capacity;
  return inst.items[j].value * 2 * C >= sample_value * inst.capacity(j);
}

}  // namespace detail

// The highest-value reported item that fits the knapsack on its own.
inline Outcome max_single_item(const GppInstance& inst, const BidProfile& bids) {
  check_bids(inst, bids);
  std::vector<ItemIndex> fitting;
  for (ItemIndex j : reported_items(bids)) {
    if (inst.capacity(j) <= inst.knapsack_capacity) fitting.push_back(j);
  }
  if (fitting.empty()) return empty_outcome(inst);
  std::vector<ItemIndex> best{value_order(inst, fitting).front()};
  return make_outcome(inst, best);
}

// Random-sampling mechanism for unit demand. Agents sampled into T only set
// the price level V (ratio greedy on their small items); the others are then
// served in canonical order with their best small item whose density clears
// V/(2C) and which still fits.
inline Outcome ks_unit_sample(const GppInstance& inst, const BidProfile& bids, int lambda,
                              RandomSource& tape) {
  detail::require_knapsack(inst, Demand::kUnit);
  detail::require_lambda(lambda);
  check_bids(inst, bids);
  const Rational& C = inst.knapsack_capacity;
  const Rational small_cap = C / lambda;
  std::vector<char> in_t = detail::draw_sample(inst, tape);

  auto small = [&](ItemIndex j) { return inst.capacity(j) <= small_cap; };
  std::vector<ItemIndex> t_items;
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    if (!in_t[a]) continue;
    for (ItemIndex j : bids.reports[a]) {
      if (small(j)) t_items.push_back(j);
    }
  }
  const Rational sample_value = detail::total_value(inst, ratio_greedy(inst, t_items, C));

  std::vector<ItemIndex> chosen;
  Rational used = 0;
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    if (in_t[a]) continue;
    std::vector<ItemIndex> candidates;
    for (ItemIndex j : bids.reports[a]) {
      if (small(j) && detail::passes_threshold(inst, j, sample_value) &&
          used + inst.capacity(j) <= C) {
        candidates.push_back(j);
      }
    }
    if (candidates.empty()) continue;
    ItemIndex best = value_order(inst, candidates).front();
    used += inst.capacity(best);
    chosen.push_back(best);
  }
  return make_outcome(inst, chosen);
}

// Universally truthful constant-ratio mechanism for unit demand: a fair coin
// chooses between the best single item and ks_unit_sample.
inline Outcome ks_unit_mechanism(const GppInstance& inst, const BidProfile& bids,
                                 int lambda, RandomSource& tape) {
  detail::require_knapsack(inst, Demand::kUnit);
  if (!tape.bit("mix", Rational(1, 2))) return max_single_item(inst, bids);
  return ks_unit_sample(inst, bids, lambda, tape);
}

// Serves the single agent with the best fractional solution within C/2
// (items above C/2 ignored): its whole items always, its fractional item
// with probability equal to the share. Truthful in expectation.
inline Outcome ks_mul_large_agent(const GppInstance& inst, const BidProfile& bids,
                                  RandomSource& tape) {
  detail::require_knapsack(inst, Demand::kMul);
  check_bids(inst, bids);
  const Rational half = inst.knapsack_capacity / 2;
  std::optional<FractionalSolution> best;
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    std::vector<ItemIndex> items;
    for (ItemIndex j : bids.reports[a]) {
      if (inst.capacity(j) <= half) items.push_back(j);
    }
    FractionalSolution f = fractional_opt(inst, items, half);
    if (!best || f.value > best->value) best = std::move(f);
  }
  if (!best) return empty_outcome(inst);
  std::vector<ItemIndex> chosen = best->full;
  if (best->fractional && tape.bit("alpha", best->fractional->share)) {
    chosen.push_back(best->fractional->item);
  }
  return make_outcome(inst, chosen);
}

// Random-sampling mechanism for multi-unit demand. Like ks_unit_sample, but
// each remaining agent receives its fractional optimum within the reserved
// budget C - C/lambda; a fractional item is rounded up with probability equal
// to its share and ends the scan.
inline Outcome ks_mul_sample(const GppInstance& inst, const BidProfile& bids, int lambda,
                             RandomSource& tape) {
  detail::require_knapsack(inst, Demand::kMul);
  detail::require_lambda(lambda);
  check_bids(inst, bids);
  const Rational& C = inst.knapsack_capacity;
  const Rational small_cap = C / lambda;
  std::vector<char> in_t = detail::draw_sample(inst, tape);

  auto small = [&](ItemIndex j) { return inst.capacity(j) <= small_cap; };
  std::vector<ItemIndex> t_items;
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    if (!in_t[a]) continue;
    for (ItemIndex j : bids.reports[a]) {
      if (small(j)) t_items.push_back(j);
    }
  }
  const Rational sample_value = detail::total_value(inst, ratio_greedy(inst, t_items, C));
  const Rational reserved = C - small_cap;

  std::vector<ItemIndex> chosen;
  Rational used = 0;
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    if (in_t[a]) continue;
    std::vector<ItemIndex> items;
    for (ItemIndex j : bids.reports[a]) {
      if (small(j) && detail::passes_threshold(inst, j, sample_value)) items.push_back(j);
    }
    FractionalSolution f = fractional_opt(inst, items, reserved - used);
    for (ItemIndex j : f.full) {
      chosen.push_back(j);
      used += inst.capacity(j);
    }
    if (f.fractional) {
      if (tape.bit("alpha", f.fractional->share)) {
        chosen.push_back(f.fractional->item);
        used += inst.capacity(f.fractional->item);
      }
      break;
    }
  }
  return make_outcome(inst, chosen);
}

// Truthful-in-expectation constant-ratio mechanism for multi-unit demand:
// uniform over best single item, ks_mul_large_agent and ks_mul_sample.
inline Outcome ks_mul_mechanism(const GppInstance& inst, const BidProfile& bids, int lambda,
                                RandomSource& tape) {
  detail::require_knapsack(inst, Demand::kMul);
  switch (tape.choice("mix", 3)) {
    case 0: return max_single_item(inst, bids);
    case 1: return ks_mul_large_agent(inst, bids, tape);
    default: return ks_mul_sample(inst, bids, lambda, tape);
  }
}

}  // namespace gpp::knapsack

#endif  // GPP_KNAPSACK_MECHANISMS_HPP_
