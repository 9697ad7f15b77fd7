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

#ifndef GPP_STABLE_MARKET_HPP_
#define GPP_STABLE_MARKET_HPP_

#include <algorithm>
#include <optional>
#include <vector>

#include "gpp/core/outcome.hpp"

namespace gpp::stable {

// A gap instance read as a two-sided market: agents are jobs, items are
// (job, machine) pairs with public value and capacity.

inline void require_gap(const GppInstance& inst) {
  if (inst.kind != Kind::kGap) throw UsageError("mechanism needs a gap instance");
}

inline AgentIndex job_of(const GppInstance& inst, ItemIndex p) { return *inst.items[p].owner; }
inline MachineIndex machine_of(const GppInstance& inst, ItemIndex p) {
  return inst.items[p].machine;
}

// Job side: value descending, then smaller capacity, then machine order.
inline bool job_prefers(const GppInstance& inst, ItemIndex a, ItemIndex b) {
  const Item& x = inst.items[a];
  const Item& y = inst.items[b];
  if (x.value != y.value) return x.value > y.value;
  if (*x.capacity != *y.capacity) return *x.capacity < *y.capacity;
  return x.machine < y.machine;
}

// v_a/c_a compared with v_b/c_b; negative, zero or positive.
inline int compare_ratio(const GppInstance& inst, ItemIndex a, ItemIndex b) {
  Rational lhs = inst.items[a].value * inst.capacity(b);
  Rational rhs = inst.items[b].value * inst.capacity(a);
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

// Machine side: ratio descending, then smaller capacity, then job order.
inline bool machine_prefers(const GppInstance& inst, ItemIndex a, ItemIndex b) {
  if (int r = compare_ratio(inst, a, b); r != 0) return r > 0;
  if (inst.capacity(a) != inst.capacity(b)) return inst.capacity(a) < inst.capacity(b);
  return job_of(inst, a) < job_of(inst, b);
}

struct PreferenceLists {
  std::vector<std::vector<ItemIndex>> job;      // L_i as pairs, best first
  std::vector<std::vector<ItemIndex>> machine;  // L_k as pairs, best first
};

inline PreferenceLists build_preferences(const GppInstance& inst, const BidProfile& bids) {
  require_gap(inst);
  check_bids(inst, bids);
  PreferenceLists prefs;
  prefs.job.assign(inst.num_agents(), {});
  prefs.machine.assign(inst.machines.size(), {});
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    for (ItemIndex p : bids.reports[a]) {
      prefs.job[a].push_back(p);
      prefs.machine[machine_of(inst, p)].push_back(p);
    }
    std::sort(prefs.job[a].begin(), prefs.job[a].end(),
              [&](ItemIndex x, ItemIndex y) { return job_prefers(inst, x, y); });
  }
  for (auto& list : prefs.machine) {
    std::sort(list.begin(), list.end(),
              [&](ItemIndex x, ItemIndex y) { return machine_prefers(inst, x, y); });
  }
  return prefs;
}

// Job -> machine assignment, stored as the chosen pair per job.
class GapAssignment {
 public:
  GapAssignment() = default;
  explicit GapAssignment(const GppInstance& inst)
      : inst_(&inst),
        job_pair_(inst.num_agents()),
        machine_pairs_(inst.machines.size()),
        machine_value_(inst.machines.size(), Rational(0)),
        machine_load_(inst.machines.size(), Rational(0)) {}

  void assign(ItemIndex p) {
    AgentIndex a = job_of(*inst_, p);
    MachineIndex k = machine_of(*inst_, p);
    if (job_pair_[a]) throw InstanceError("job assigned twice");
    job_pair_[a] = p;
    auto& list = machine_pairs_[k];
    list.insert(std::upper_bound(list.begin(), list.end(), p,
                                 [&](ItemIndex x, ItemIndex y) {
                                   return machine_prefers(*inst_, x, y);
                                 }),
                p);
    machine_value_[k] += inst_->items[p].value;
    machine_load_[k] += inst_->capacity(p);
    total_ += inst_->items[p].value;
  }

  void unassign(AgentIndex a) {
    if (!job_pair_[a]) return;
    ItemIndex p = *job_pair_[a];
    MachineIndex k = machine_of(*inst_, p);
    auto& list = machine_pairs_[k];
    list.erase(std::find(list.begin(), list.end(), p));
    machine_value_[k] -= inst_->items[p].value;
    machine_load_[k] -= inst_->capacity(p);
    total_ -= inst_->items[p].value;
    job_pair_[a].reset();
  }

  const std::optional<ItemIndex>& pair_of(AgentIndex a) const { return job_pair_[a]; }
  std::optional<MachineIndex> machine_of_job(AgentIndex a) const {
    if (!job_pair_[a]) return std::nullopt;
    return machine_of(*inst_, *job_pair_[a]);
  }
  // Jobs on machine k as pairs, in L_k order.
  const std::vector<ItemIndex>& on_machine(MachineIndex k) const { return machine_pairs_[k]; }
  const Rational& machine_value(MachineIndex k) const { return machine_value_[k]; }
  const Rational& machine_load(MachineIndex k) const { return machine_load_[k]; }
  Rational job_value(AgentIndex a) const {
    return job_pair_[a] ? inst_->items[*job_pair_[a]].value : Rational(0);
  }
  const Rational& total_value() const { return total_; }
  std::size_t num_jobs() const { return job_pair_.size(); }

  std::vector<ItemIndex> pairs() const {
    std::vector<ItemIndex> out;
    for (const auto& p : job_pair_) {
      if (p) out.push_back(*p);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  Outcome to_outcome() const { return make_outcome(*inst_, pairs()); }

  bool operator==(const GapAssignment& o) const { return job_pair_ == o.job_pair_; }

 private:
  const GppInstance* inst_ = nullptr;
  std::vector<std::optional<ItemIndex>> job_pair_;
  std::vector<std::vector<ItemIndex>> machine_pairs_;
  std::vector<Rational> machine_value_;
  std::vector<Rational> machine_load_;
  Rational total_ = 0;
};

// Per-machine budgets C'_k for the virtual-capacity variant.
using VirtualCaps = std::optional<std::vector<Rational>>;

inline std::vector<Rational> scaled_caps(const GppInstance& inst, const Rational& factor) {
  std::vector<Rational> caps;
  for (const Machine& m : inst.machines) caps.push_back(m.capacity * factor);
  return caps;
}

// Whether a job set (pairs on machine k, in L_k order) fits machine k: total
// within C_k and, under virtual caps, everything but the least preferred job
// within C'_k.
inline bool fits_machine(const GppInstance& inst, MachineIndex k,
                         const std::vector<ItemIndex>& ordered, const VirtualCaps& vcaps) {
  Rational load = 0;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    if (vcaps && i + 1 == ordered.size() && load > (*vcaps)[k]) return false;
    load += inst.capacity(ordered[i]);
  }
  return load <= inst.machines[k].capacity;
}

// Greedy rebuild in L_k order: keep each candidate whose addition keeps the
// set feasible for k. Under virtual caps the set before the candidate must
// already be within C'_k, since the candidate becomes the least preferred.
inline std::vector<ItemIndex> greedy_rebuild(const GppInstance& inst, MachineIndex k,
                                             std::vector<ItemIndex> candidates,
                                             const VirtualCaps& vcaps) {
  std::sort(candidates.begin(), candidates.end(),
            [&](ItemIndex x, ItemIndex y) { return machine_prefers(inst, x, y); });
  std::vector<ItemIndex> kept;
  Rational load = 0;
  for (ItemIndex p : candidates) {
    if (vcaps && load > (*vcaps)[k]) continue;
    if (load + inst.capacity(p) > inst.machines[k].capacity) continue;
    load += inst.capacity(p);
    kept.push_back(p);
  }
  return kept;
}

}  // namespace gpp::stable

#endif  // GPP_STABLE_MARKET_HPP_
