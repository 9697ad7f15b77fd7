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

#ifndef GPP_KNAPSACK_FRACTIONAL_HPP_
#define GPP_KNAPSACK_FRACTIONAL_HPP_

#include <algorithm>
#include <optional>
#include <vector>

#include "gpp/core/outcome.hpp"

namespace gpp::knapsack {

// Bang-per-buck order: v/c descending, then smaller capacity, then index.
inline bool ratio_before(const GppInstance& inst, ItemIndex a, ItemIndex b) {
  const Item& x = inst.items[a];
  const Item& y = inst.items[b];
  // v_a/c_a > v_b/c_b  <=>  v_a*c_b > v_b*c_a (capacities positive)
  Rational lhs = x.value * *y.capacity;
  Rational rhs = y.value * *x.capacity;
  if (lhs != rhs) return lhs > rhs;
  if (*x.capacity != *y.capacity) return *x.capacity < *y.capacity;
  return a < b;
}

inline std::vector<ItemIndex> ratio_order(const GppInstance& inst,
                                          std::vector<ItemIndex> items) {
  std::sort(items.begin(), items.end(), [&](ItemIndex a, ItemIndex b) {
    return ratio_before(inst, a, b);
  });
  return items;
}

struct FractionalItem {
  ItemIndex item;
  Rational share;  // in (0, 1)
};

struct FractionalSolution {
  std::vector<ItemIndex> full;  // sorted
  std::optional<FractionalItem> fractional;
  Rational value = 0;
  Rational capacity_used = 0;
};

// Optimal fractional knapsack over `items` within `budget`: take items in
// ratio order while they fit, then the first one that does not at the share
// that fills the budget exactly. At most one item is fractional.
inline FractionalSolution fractional_opt(const GppInstance& inst,
                                         std::vector<ItemIndex> items,
                                         const Rational& budget) {
  FractionalSolution sol;
  if (budget <= 0) return sol;
  for (ItemIndex j : ratio_order(inst, std::move(items))) {
    const Rational& c = inst.capacity(j);
    if (sol.capacity_used + c <= budget) {
      sol.full.push_back(j);
      sol.capacity_used += c;
      sol.value += inst.items[j].value;
      continue;
    }
    Rational share = (budget - sol.capacity_used) / c;
    if (share > 0) {
      sol.value += share * inst.items[j].value;
      sol.capacity_used = budget;
      sol.fractional = FractionalItem{j, share};
    }
    break;
  }
  std::sort(sol.full.begin(), sol.full.end());
  return sol;
}

// Integral ratio greedy: scan in ratio order and keep every item that still
// fits (one per agent under unit demand). Returns the chosen items.
inline std::vector<ItemIndex> ratio_greedy(const GppInstance& inst,
                                           std::vector<ItemIndex> items,
                                           const Rational& budget) {
  std::vector<char> agent_won(inst.num_agents(), 0);
  std::vector<ItemIndex> chosen;
  Rational used = 0;
  for (ItemIndex j : ratio_order(inst, std::move(items))) {
    const Item& item = inst.items[j];
    if (inst.demand == Demand::kUnit && item.owner && agent_won[*item.owner]) continue;
    if (used + *item.capacity > budget) continue;
    used += *item.capacity;
    if (item.owner) agent_won[*item.owner] = 1;
    chosen.push_back(j);
  }
  return chosen;
}

}  // namespace gpp::knapsack

#endif  // GPP_KNAPSACK_FRACTIONAL_HPP_
