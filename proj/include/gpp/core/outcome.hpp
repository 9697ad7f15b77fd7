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

#ifndef GPP_CORE_OUTCOME_HPP_
#define GPP_CORE_OUTCOME_HPP_

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gpp/core/errors.hpp"
#include "gpp/core/instance.hpp"
#include "gpp/core/rational.hpp"

namespace gpp {

// Per agent, the reported subset of its true items (sorted item indices).
struct BidProfile {
  std::vector<std::vector<ItemIndex>> reports;

  bool operator==(const BidProfile&) const = default;
};

inline BidProfile truthful_bids(const GppInstance& inst) {
  return BidProfile{inst.agents};
}

inline void check_bids(const GppInstance& inst, const BidProfile& bids) {
  if (bids.reports.size() != inst.num_agents()) {
    throw InstanceError("bid profile has " + std::to_string(bids.reports.size()) +
                        " reports for " + std::to_string(inst.num_agents()) +
                        " agents");
  }
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    const auto& r = bids.reports[a];
    if (!std::is_sorted(r.begin(), r.end()) ||
        std::adjacent_find(r.begin(), r.end()) != r.end()) {
      throw InstanceError("agent " + std::to_string(a) +
                          " report is not a sorted set of item indices");
    }
    for (ItemIndex j : r) {
      if (j >= inst.num_items() || inst.items[j].owner != a) {
        throw InstanceError("agent " + std::to_string(a) +
                            " reports an item it does not hold");
      }
    }
  }
}

// All reported items, in canonical index order.
inline std::vector<ItemIndex> reported_items(const BidProfile& bids) {
  std::vector<ItemIndex> out;
  for (const auto& r : bids.reports) out.insert(out.end(), r.begin(), r.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Greedy scan order shared by every value-ordered mechanism: value
// descending, then smaller capacity (when both items carry one), then index.
inline bool value_before(const GppInstance& inst, ItemIndex a, ItemIndex b) {
  const Item& x = inst.items[a];
  const Item& y = inst.items[b];
  if (x.value != y.value) return x.value > y.value;
  if (x.capacity && y.capacity && *x.capacity != *y.capacity) {
    return *x.capacity < *y.capacity;
  }
  return a < b;
}

inline std::vector<ItemIndex> value_order(const GppInstance& inst,
                                          std::vector<ItemIndex> items) {
  std::sort(items.begin(), items.end(), [&](ItemIndex a, ItemIndex b) {
    return value_before(inst, a, b);
  });
  return items;
}

// Incremental feasibility for the instance's constraint plus the unit-demand
// rule. Every constraint family here is downward closed, so a set is
// feasible iff it can be built one item at a time through can_add().
class Packing {
 public:
  explicit Packing(const GppInstance& inst)
      : inst_(&inst),
        agent_won_(inst.num_agents(), 0),
        taken_(inst.num_items(), 0) {
    switch (inst.kind) {
      case Kind::kMatroid:
        if (auto* pm = std::get_if<PartitionMatroid>(&inst.matroid)) {
          class_count_.assign(pm->quotas.size(), 0);
        }
        break;
      case Kind::kMatching:
        vertex_used_.assign(inst.vertices.size(), 0);
        break;
      case Kind::kKnapsack:
        break;
      case Kind::kGap:
        machine_load_.assign(inst.machines.size(), Rational(0));
        break;
    }
  }

  bool can_add(ItemIndex j) const {
    const Item& item = inst_->items[j];
    if (taken_[j]) return false;
    if (inst_->demand == Demand::kUnit && item.owner && agent_won_[*item.owner]) {
      return false;
    }
    switch (inst_->kind) {
      case Kind::kMatroid:
        return std::visit(
            [&](const auto& m) -> bool {
              using M = std::decay_t<decltype(m)>;
              if constexpr (std::is_same_v<M, PartitionMatroid>) {
                std::size_t c = m.class_of[j];
                return class_count_[c] < m.quotas[c];
              } else if constexpr (std::is_same_v<M, UniformMatroid>) {
                return size_ < m.rank;
              } else {
                return m.independent.count(mask_ | (std::uint32_t{1} << j)) > 0;
              }
            },
            inst_->matroid);
      case Kind::kMatching:
        return !vertex_used_[item.u] && !vertex_used_[item.v];
      case Kind::kKnapsack:
        return used_ + *item.capacity <= inst_->knapsack_capacity;
      case Kind::kGap: {
        // One pair per job: the owning agent is the job.
        if (item.owner && agent_won_[*item.owner]) return false;
        return machine_load_[item.machine] + *item.capacity <=
               inst_->machines[item.machine].capacity;
      }
    }
    return false;
  }

  void add(ItemIndex j) {
    const Item& item = inst_->items[j];
    taken_[j] = 1;
    ++size_;
    if (item.owner) agent_won_[*item.owner] = 1;
    switch (inst_->kind) {
      case Kind::kMatroid:
        if (auto* pm = std::get_if<PartitionMatroid>(&inst_->matroid)) {
          ++class_count_[pm->class_of[j]];
        }
        if (j < 32) mask_ |= std::uint32_t{1} << j;
        break;
      case Kind::kMatching:
        vertex_used_[item.u] = 1;
        vertex_used_[item.v] = 1;
        break;
      case Kind::kKnapsack:
        used_ += *item.capacity;
        break;
      case Kind::kGap:
        machine_load_[item.machine] += *item.capacity;
        break;
    }
  }

  bool try_add(ItemIndex j) {
    if (!can_add(j)) return false;
    add(j);
    return true;
  }

  const Rational& capacity_used() const { return used_; }
  const Rational& machine_load(MachineIndex k) const { return machine_load_[k]; }
  bool agent_has_won(AgentIndex a) const { return agent_won_[a] != 0; }

 private:
  const GppInstance* inst_;
  std::vector<char> agent_won_;
  std::vector<char> taken_;
  std::size_t size_ = 0;
  std::vector<std::size_t> class_count_;
  std::uint32_t mask_ = 0;
  std::vector<char> vertex_used_;
  Rational used_ = 0;
  std::vector<Rational> machine_load_;
};

inline bool is_feasible(const GppInstance& inst, std::span<const ItemIndex> selection) {
  for (ItemIndex j : selection) {
    if (j >= inst.num_items()) {
      throw InstanceError("unknown item index " + std::to_string(j));
    }
  }
  Packing p(inst);
  for (ItemIndex j : selection) {
    if (!p.try_add(j)) return false;
  }
  return true;
}

inline bool is_feasible(const GppInstance& inst,
                        const std::vector<std::string>& selection_ids) {
  std::vector<ItemIndex> sel;
  for (const std::string& id : selection_ids) {
    auto j = inst.find_item(id);
    if (!j) throw InstanceError("unknown item id \"" + id + "\"");
    sel.push_back(*j);
  }
  return is_feasible(inst, sel);
}

struct Outcome {
  std::vector<std::vector<ItemIndex>> selected;  // per agent, sorted
  Rational total = 0;
  std::vector<Rational> utilities;

  bool operator==(const Outcome&) const = default;

  std::vector<ItemIndex> items() const {
    std::vector<ItemIndex> out;
    for (const auto& s : selected) out.insert(out.end(), s.begin(), s.end());
    std::sort(out.begin(), out.end());
    return out;
  }
};

struct Valuation {
  Rational total = 0;
  std::vector<Rational> utilities;
};

// Exact welfare and per-agent utility of a selection.
inline Valuation evaluate(const GppInstance& inst, const Outcome& outcome) {
  if (outcome.selected.size() != inst.num_agents()) {
    throw InstanceError("outcome does not list every agent");
  }
  std::vector<ItemIndex> all;
  Valuation val;
  val.utilities.assign(inst.num_agents(), Rational(0));
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    for (ItemIndex j : outcome.selected[a]) {
      if (j >= inst.num_items() || inst.items[j].owner != a) {
        throw InstanceError("outcome gives agent " + std::to_string(a) +
                            " an item it does not hold");
      }
      val.utilities[a] += inst.items[j].value;
      all.push_back(j);
    }
    val.total += val.utilities[a];
  }
  if (!is_feasible(inst, all)) throw InstanceError("outcome is infeasible");
  return val;
}

// Builds an Outcome from a set of selected items (each must have an owner).
inline Outcome make_outcome(const GppInstance& inst, std::span<const ItemIndex> chosen) {
  Outcome out;
  out.selected.assign(inst.num_agents(), {});
  for (ItemIndex j : chosen) {
    if (!inst.items[j].owner) {
      throw InstanceError("selected item \"" + inst.items[j].id + "\" has no owner");
    }
    out.selected[*inst.items[j].owner].push_back(j);
  }
  for (auto& s : out.selected) std::sort(s.begin(), s.end());
  Valuation val = evaluate(inst, out);
  out.total = std::move(val.total);
  out.utilities = std::move(val.utilities);
  return out;
}

inline Outcome empty_outcome(const GppInstance& inst) {
  return make_outcome(inst, std::span<const ItemIndex>{});
}

// Mechanism post-condition: feasible and S_i within B_i for every agent.
inline void check_outcome(const GppInstance& inst, const BidProfile& bids,
                          const Outcome& outcome) {
  (void)evaluate(inst, outcome);
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    for (ItemIndex j : outcome.selected[a]) {
      if (!std::binary_search(bids.reports[a].begin(), bids.reports[a].end(), j)) {
        throw InstanceError("outcome selects an unreported item of agent " +
                            std::to_string(a));
      }
    }
  }
}

}  // namespace gpp

#endif  // GPP_CORE_OUTCOME_HPP_
