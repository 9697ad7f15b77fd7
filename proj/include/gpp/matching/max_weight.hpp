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

#ifndef GPP_MATCHING_MAX_WEIGHT_HPP_
#define GPP_MATCHING_MAX_WEIGHT_HPP_

#include <algorithm>
#include <vector>

#include "gpp/core/outcome.hpp"

namespace gpp::matching {

// Largest edge set handed to the exact matcher.
inline constexpr std::size_t kMaxExactEdges = 20;

// Exact maximum-weight matching over `edges` that avoids every vertex with
// blocked[v] set, by branch and bound. Among optimal matchings the search
// keeps the first one found when lower-index edges are tried for inclusion
// first, so the result is deterministic. With one_per_agent, at most one edge
// per owning agent is used (unit demand).
inline std::vector<ItemIndex> max_weight_matching(const GppInstance& inst,
                                                  std::vector<ItemIndex> edges,
                                                  const std::vector<char>& blocked,
                                                  bool one_per_agent = false) {
  edges.erase(std::remove_if(edges.begin(), edges.end(),
                             [&](ItemIndex e) {
                               return blocked[inst.items[e].u] || blocked[inst.items[e].v];
                             }),
              edges.end());
  std::sort(edges.begin(), edges.end());
  if (edges.size() > kMaxExactEdges) {
    throw GateExceeded("exact matching limited to " + std::to_string(kMaxExactEdges) +
                       " edges");
  }
  std::vector<Rational> suffix(edges.size() + 1, Rational(0));
  for (std::size_t i = edges.size(); i-- > 0;) {
    suffix[i] = suffix[i + 1] + inst.items[edges[i]].value;
  }

  std::vector<char> used = blocked;
  std::vector<char> agent_used(inst.num_agents(), 0);
  std::vector<ItemIndex> current, best;
  Rational current_value = 0, best_value = -1;

  auto search = [&](auto&& self, std::size_t i) -> void {
    if (current_value + suffix[i] <= best_value) return;
    if (i == edges.size()) {
      best_value = current_value;
      best = current;
      return;
    }
    const Item& e = inst.items[edges[i]];
    bool agent_free = !one_per_agent || !e.owner || !agent_used[*e.owner];
    if (!used[e.u] && !used[e.v] && agent_free) {
      used[e.u] = used[e.v] = 1;
      if (one_per_agent && e.owner) agent_used[*e.owner] = 1;
      current.push_back(edges[i]);
      current_value += e.value;
      self(self, i + 1);
      current_value -= e.value;
      current.pop_back();
      if (one_per_agent && e.owner) agent_used[*e.owner] = 0;
      used[e.u] = used[e.v] = 0;
    }
    self(self, i + 1);
  };
  search(search, 0);
  return best;
}

}  // namespace gpp::matching

#endif  // GPP_MATCHING_MAX_WEIGHT_HPP_
