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

#ifndef GPP_AUDIT_EXACT_OPT_HPP_
#define GPP_AUDIT_EXACT_OPT_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <optional>
#include <vector>

#include "gpp/core/outcome.hpp"

namespace gpp::audit {

struct OptGates {
  std::size_t max_enumeration_items = 20;
  std::size_t max_knapsack_capacity = 10'000;  // after integer scaling
  double max_gap_assignments = 1e6;            // (machines + 1) ^ jobs
};

struct OptResult {
  Rational value = 0;
  std::vector<ItemIndex> witness;  // sorted
};

namespace detail {

// Branch and bound over feasible selections, items tried in value order.
inline OptResult enumerate_opt(const GppInstance& inst, std::vector<ItemIndex> items) {
  items = value_order(inst, std::move(items));
  std::vector<Rational> suffix(items.size() + 1, Rational(0));
  for (std::size_t i = items.size(); i-- > 0;) {
    suffix[i] = suffix[i + 1] + inst.items[items[i]].value;
  }
  OptResult best;
  best.value = -1;
  std::vector<ItemIndex> current;
  Rational value = 0;
  auto search = [&](auto&& self, std::size_t i, const Packing& packing) -> void {
    if (value + suffix[i] <= best.value) return;
    if (i == items.size()) {
      best.value = value;
      best.witness = current;
      return;
    }
    if (packing.can_add(items[i])) {
      Packing next = packing;
      next.add(items[i]);
      current.push_back(items[i]);
      value += inst.items[items[i]].value;
      self(self, i + 1, next);
      value -= inst.items[items[i]].value;
      current.pop_back();
    }
    self(self, i + 1, packing);
  };
  search(search, 0, Packing(inst));
  std::sort(best.witness.begin(), best.witness.end());
  return best;
}

// Knapsack by dynamic programming over integer-scaled capacities. Under unit
// demand each agent contributes at most one item (grouped knapsack).
inline std::optional<OptResult> knapsack_dp(const GppInstance& inst,
                                            const std::vector<ItemIndex>& items,
                                            std::size_t max_capacity) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  BigInt scale = denominator(inst.knapsack_capacity);
  for (ItemIndex j : items) scale = boost::multiprecision::lcm(scale, denominator(inst.capacity(j)));
  Rational scaled_cap = inst.knapsack_capacity * scale;
  if (numerator(scaled_cap) > BigInt(max_capacity)) return std::nullopt;
  const std::size_t cap = numerator(scaled_cap).convert_to<std::size_t>();

  // Groups: one per agent under unit demand, else one per item.
  std::vector<std::vector<ItemIndex>> groups;
  if (inst.demand == Demand::kUnit) {
    std::vector<std::vector<ItemIndex>> by_agent(inst.num_agents());
    for (ItemIndex j : items) by_agent[*inst.items[j].owner].push_back(j);
    for (auto& g : by_agent) {
      if (!g.empty()) groups.push_back(std::move(g));
    }
  } else {
    for (ItemIndex j : items) groups.push_back({j});
  }

  std::vector<std::size_t> weight(inst.num_items(), 0);
  for (ItemIndex j : items) {
    Rational w = inst.capacity(j) * scale;
    weight[j] = numerator(w) > BigInt(cap) ? cap + 1 : numerator(w).convert_to<std::size_t>();
  }
  // best[g][c]: optimum over the first g groups within capacity c.
  std::vector<std::vector<Rational>> best(groups.size() + 1,
                                          std::vector<Rational>(cap + 1, Rational(0)));
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t c = 0; c <= cap; ++c) {
      best[g + 1][c] = best[g][c];
      for (ItemIndex j : groups[g]) {
        if (weight[j] <= c) {
          Rational cand = best[g][c - weight[j]] + inst.items[j].value;
          if (cand > best[g + 1][c]) best[g + 1][c] = cand;
        }
      }
    }
  }
  OptResult out;
  out.value = best[groups.size()][cap];
  std::size_t c = cap;
  for (std::size_t g = groups.size(); g-- > 0;) {
    if (best[g + 1][c] == best[g][c]) continue;
    for (ItemIndex j : groups[g]) {
      if (weight[j] <= c && best[g][c - weight[j]] + inst.items[j].value == best[g + 1][c]) {
        out.witness.push_back(j);
        c -= weight[j];
        break;
      }
    }
  }
  std::sort(out.witness.begin(), out.witness.end());
  return out;
}

}  // namespace detail

// Exact optimum over the given items (default: every item some agent
// holds), respecting the constraint and the demand mode. Refuses with
// GateExceeded rather than approximating.
inline OptResult exact_opt(const GppInstance& inst,
                           std::optional<std::vector<ItemIndex>> universe = std::nullopt,
                           const OptGates& gates = {}) {
  std::vector<ItemIndex> items;
  if (universe) {
    items = *universe;
  } else {
    for (ItemIndex j = 0; j < inst.num_items(); ++j) {
      if (inst.items[j].owner) items.push_back(j);
    }
  }
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());

  OptResult result;
  bool solved = false;
  if (inst.kind == Kind::kKnapsack) {
    if (auto dp = detail::knapsack_dp(inst, items, gates.max_knapsack_capacity)) {
      result = std::move(*dp);
      solved = true;
    }
  }
  if (!solved) {
    if (inst.kind == Kind::kGap) {
      std::vector<char> job_seen(inst.num_agents(), 0);
      double jobs = 0;
      for (ItemIndex j : items) {
        if (!job_seen[*inst.items[j].owner]) {
          job_seen[*inst.items[j].owner] = 1;
          ++jobs;
        }
      }
      double space = std::pow(static_cast<double>(inst.machines.size() + 1), jobs);
      if (space > gates.max_gap_assignments) {
        throw GateExceeded("gap optimum needs (machines+1)^jobs <= " +
                           std::to_string(static_cast<long long>(gates.max_gap_assignments)));
      }
    } else if (items.size() > gates.max_enumeration_items) {
      throw GateExceeded("exact optimum limited to " +
                         std::to_string(gates.max_enumeration_items) + " items");
    }
    result = detail::enumerate_opt(inst, items);
  }

  // Soundness: the witness is feasible and achieves the value.
  Rational check = 0;
  for (ItemIndex j : result.witness) check += inst.items[j].value;
  if (check != result.value || !is_feasible(inst, result.witness)) {
    throw std::logic_error("exact_opt produced an inconsistent witness");
  }
  return result;
}

}  // namespace gpp::audit

#endif  // GPP_AUDIT_EXACT_OPT_HPP_
