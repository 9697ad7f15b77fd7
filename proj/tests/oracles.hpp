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

// Independent brute-force oracles for the test suites. Nothing here reuses
// the library's search code; feasibility is re-derived from the definitions.

#ifndef GPP_TESTS_ORACLES_HPP_
#define GPP_TESTS_ORACLES_HPP_

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpp/core/outcome.hpp"

namespace gpp::oracle {

inline bool feasible(const GppInstance& inst, const std::vector<ItemIndex>& sel) {
  std::map<AgentIndex, int> won;
  for (ItemIndex j : sel) {
    if (!inst.items[j].owner) return false;
    if (inst.demand == Demand::kUnit && ++won[*inst.items[j].owner] > 1) return false;
  }
  switch (inst.kind) {
    case Kind::kMatroid: {
      if (auto* p = std::get_if<PartitionMatroid>(&inst.matroid)) {
        std::vector<std::size_t> used(p->quotas.size(), 0);
        for (ItemIndex j : sel) {
          if (++used[p->class_of[j]] > p->quotas[p->class_of[j]]) return false;
        }
        return true;
      }
      if (auto* u = std::get_if<UniformMatroid>(&inst.matroid)) return sel.size() <= u->rank;
      const auto& e = std::get<ExplicitMatroid>(inst.matroid);
      std::uint32_t mask = 0;
      for (ItemIndex j : sel) mask |= std::uint32_t{1} << j;
      return e.independent.count(mask) > 0;
    }
    case Kind::kMatching: {
      std::set<std::size_t> seen;
      for (ItemIndex j : sel) {
        if (!seen.insert(inst.items[j].u).second || !seen.insert(inst.items[j].v).second) return false;
      }
      return true;
    }
    case Kind::kKnapsack: {
      Rational load = 0;
      for (ItemIndex j : sel) load += *inst.items[j].capacity;
      return load <= inst.knapsack_capacity;
    }
    case Kind::kGap: {
      std::set<AgentIndex> jobs;
      std::vector<Rational> load(inst.machines.size(), Rational(0));
      for (ItemIndex j : sel) {
        if (!jobs.insert(*inst.items[j].owner).second) return false;
        load[inst.items[j].machine] += *inst.items[j].capacity;
      }
      for (std::size_t k = 0; k < load.size(); ++k) {
        if (load[k] > inst.machines[k].capacity) return false;
      }
      return true;
    }
  }
  return false;
}

// Best value over every subset of the given items (default: all held items).
inline Rational best_value(const GppInstance& inst, std::vector<ItemIndex> items = {}) {
  if (items.empty()) {
    for (ItemIndex j = 0; j < inst.num_items(); ++j) {
      if (inst.items[j].owner) items.push_back(j);
    }
  }
  Rational best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << items.size()); ++mask) {
    std::vector<ItemIndex> sel;
    Rational v = 0;
    for (std::size_t b = 0; b < items.size(); ++b) {
      if (mask >> b & 1) {
        sel.push_back(items[b]);
        v += inst.items[items[b]].value;
      }
    }
    if (v > best && feasible(inst, sel)) best = v;
  }
  return best;
}

// Fractional knapsack optimum: some optimal LP vertex takes a set fully and
// at most one more item partially, so try them all.
inline Rational lp_value(const std::vector<std::pair<Rational, Rational>>& items,  // (v, c)
                         const Rational& budget) {
  Rational best = 0;
  const std::size_t n = items.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Rational v = 0, c = 0;
    for (std::size_t b = 0; b < n; ++b) {
      if (mask >> b & 1) {
        v += items[b].first;
        c += items[b].second;
      }
    }
    if (c > budget) continue;
    if (v > best) best = v;
    for (std::size_t b = 0; b < n; ++b) {
      if (mask >> b & 1) continue;
      Rational share = (budget - c) / items[b].second;
      if (share > 1) share = 1;
      Rational w = v + share * items[b].first;
      if (w > best) best = w;
    }
  }
  return best;
}

// P(a/3 < subset sum < 2a/3) by walking all 2^n subsets.
inline Rational middle_third_probability(const std::vector<Rational>& values) {
  Rational a = 0;
  for (const auto& v : values) a += v;
  std::uint64_t hits = 0;
  const std::uint64_t total = std::uint64_t{1} << values.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Rational b = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (mask >> i & 1) b += values[i];
    }
    if (3 * b > a && 3 * b < 2 * a) ++hits;
  }
  return Rational(static_cast<long long>(hits), static_cast<long long>(total));
}

inline std::vector<ItemIndex> items_of(const GppInstance& inst, std::initializer_list<const char*> ids) {
  std::vector<ItemIndex> out;
  for (const char* id : ids) {
    auto j = inst.find_item(id);
    if (!j) throw std::invalid_argument(std::string("no item ") + id);
    out.push_back(*j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gpp::oracle

#endif  // GPP_TESTS_ORACLES_HPP_
