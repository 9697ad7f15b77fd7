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

#ifndef GPP_STABLE_ALGORITHMS_HPP_
#define GPP_STABLE_ALGORITHMS_HPP_

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "gpp/stable/market.hpp"

namespace gpp::stable {

// Deferred acceptance where proposals arrive in value order and a machine
// accepts while it has room (and, if given, fewer than `quota` jobs).
// Assignments are never revoked, so it is truthful for every job.
inline GapAssignment sm_greedy(const GppInstance& inst, const BidProfile& bids,
                               std::optional<std::size_t> quota = std::nullopt) {
  require_gap(inst);
  check_bids(inst, bids);
  std::vector<ItemIndex> pairs = reported_items(bids);
  std::sort(pairs.begin(), pairs.end(), [&](ItemIndex x, ItemIndex y) {
    if (inst.items[x].value != inst.items[y].value) {
      return inst.items[x].value > inst.items[y].value;
    }
    if (inst.capacity(x) != inst.capacity(y)) return inst.capacity(x) < inst.capacity(y);
    if (job_of(inst, x) != job_of(inst, y)) return job_of(inst, x) < job_of(inst, y);
    return machine_of(inst, x) < machine_of(inst, y);
  });
  GapAssignment out(inst);
  for (ItemIndex p : pairs) {
    AgentIndex a = job_of(inst, p);
    MachineIndex k = machine_of(inst, p);
    if (out.pair_of(a)) continue;
    if (quota && out.on_machine(k).size() >= *quota) continue;
    if (out.machine_load(k) + inst.capacity(p) > inst.machines[k].capacity) continue;
    out.assign(p);
  }
  return out;
}

// Picks which pending proposal goes next. Receives the candidate pairs (each
// an unassigned job's best unproposed machine, jobs in canonical order) and
// returns an index into them.
using ProposalChooser = std::function<std::size_t(const std::vector<ItemIndex>&)>;

struct DaStats {
  std::size_t proposals = 0;
};

// Knapsack-constrained deferred acceptance. The default chooser takes the
// candidate with the largest v/c (ties: smaller capacity, job order, machine
// order); a machine receiving a proposal rebuilds its job set greedily in its
// own preference order over current jobs plus the proposer, and the jobs it
// drops re-enter the pool with their proposal history kept.
inline GapAssignment sm_da_alg(const GppInstance& inst, const BidProfile& bids,
                               const VirtualCaps& vcaps = std::nullopt,
                               const ProposalChooser& chooser = nullptr,
                               DaStats* stats = nullptr) {
  PreferenceLists prefs = build_preferences(inst, bids);
  if (vcaps && vcaps->size() != inst.machines.size()) {
    throw UsageError("virtual capacities must list every machine");
  }
  std::vector<std::size_t> next(inst.num_agents(), 0);
  GapAssignment out(inst);
  DaStats local;

  while (true) {
    std::vector<ItemIndex> candidates;
    for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
      if (!out.pair_of(a) && next[a] < prefs.job[a].size()) {
        candidates.push_back(prefs.job[a][next[a]]);
      }
    }
    if (candidates.empty()) break;

    std::size_t pick = 0;
    if (chooser) {
      pick = chooser(candidates);
    } else {
      for (std::size_t c = 1; c < candidates.size(); ++c) {
        ItemIndex x = candidates[c], y = candidates[pick];
        int r = compare_ratio(inst, x, y);
        if (r > 0 || (r == 0 && inst.capacity(x) < inst.capacity(y))) pick = c;
        // Remaining ties keep the earlier job; jobs are distinct here.
      }
    }
    const ItemIndex p = candidates.at(pick);
    const AgentIndex a = job_of(inst, p);
    const MachineIndex k = machine_of(inst, p);
    ++next[a];
    ++local.proposals;

    std::vector<ItemIndex> pool = out.on_machine(k);
    pool.push_back(p);
    std::vector<ItemIndex> kept = greedy_rebuild(inst, k, pool, vcaps);
    if (std::find(kept.begin(), kept.end(), p) == kept.end()) continue;
    for (ItemIndex q : out.on_machine(k)) {
      if (std::find(kept.begin(), kept.end(), q) == kept.end()) {
        out.unassign(job_of(inst, q));
      }
    }
    out.assign(p);
  }
  if (stats) *stats = local;
  return out;
}

enum class SubsetPreference { kFirst, kSecond, kEquivalent };

// Machine k's preference between two job sets (pairs on k). Infeasible sets
// rank below feasible ones. Otherwise common jobs are removed, then jobs of
// equal v/c are cancelled pairwise across the two sets, and the set holding
// the best remaining ratio wins.
inline SubsetPreference compare_subsets(const GppInstance& inst, MachineIndex k,
                                        std::vector<ItemIndex> s,
                                        std::vector<ItemIndex> t,
                                        const VirtualCaps& vcaps = std::nullopt) {
  auto by_pref = [&](ItemIndex x, ItemIndex y) { return machine_prefers(inst, x, y); };
  std::sort(s.begin(), s.end(), by_pref);
  std::sort(t.begin(), t.end(), by_pref);
  const bool s_ok = fits_machine(inst, k, s, vcaps);
  const bool t_ok = fits_machine(inst, k, t, vcaps);
  if (s_ok != t_ok) return s_ok ? SubsetPreference::kFirst : SubsetPreference::kSecond;
  if (!s_ok) return SubsetPreference::kEquivalent;

  std::vector<ItemIndex> only_s, only_t;
  std::vector<ItemIndex> ss = s, tt = t;
  std::sort(ss.begin(), ss.end());
  std::sort(tt.begin(), tt.end());
  std::set_difference(ss.begin(), ss.end(), tt.begin(), tt.end(), std::back_inserter(only_s));
  std::set_difference(tt.begin(), tt.end(), ss.begin(), ss.end(), std::back_inserter(only_t));

  // Ratio multiset difference: +1 per job of s, -1 per job of t.
  std::map<Rational, long> balance;
  auto ratio = [&](ItemIndex p) { return Rational(inst.items[p].value / inst.capacity(p)); };
  for (ItemIndex p : only_s) ++balance[ratio(p)];
  for (ItemIndex p : only_t) --balance[ratio(p)];
  for (auto it = balance.rbegin(); it != balance.rend(); ++it) {
    if (it->second > 0) return SubsetPreference::kFirst;
    if (it->second < 0) return SubsetPreference::kSecond;
  }
  return SubsetPreference::kEquivalent;
}

struct BlockingPair {
  AgentIndex job;
  MachineIndex machine;
  ItemIndex pair;
  std::vector<ItemIndex> better_set;  // k's rebuilt set, containing the job
};

// Looks for a job and machine that would both rather be together: the job
// ranks k above its current machine, and k's greedy rebuild over its current
// jobs plus this one is strictly preferred to what k holds. Pairs are scanned
// in canonical order and the first witness is returned.
inline std::optional<BlockingPair> find_blocking_pair(const GppInstance& inst,
                                                      const BidProfile& bids,
                                                      const GapAssignment& assignment,
                                                      const VirtualCaps& vcaps = std::nullopt) {
  require_gap(inst);
  check_bids(inst, bids);
  for (ItemIndex p : reported_items(bids)) {
    AgentIndex a = job_of(inst, p);
    MachineIndex k = machine_of(inst, p);
    const auto& current = assignment.pair_of(a);
    if (current && (*current == p || !job_prefers(inst, p, *current))) continue;
    std::vector<ItemIndex> pool = assignment.on_machine(k);
    pool.push_back(p);
    std::vector<ItemIndex> rebuilt = greedy_rebuild(inst, k, pool, vcaps);
    if (std::find(rebuilt.begin(), rebuilt.end(), p) == rebuilt.end()) continue;
    if (compare_subsets(inst, k, rebuilt, assignment.on_machine(k), vcaps) ==
        SubsetPreference::kFirst) {
      return BlockingPair{a, k, p, rebuilt};
    }
  }
  return std::nullopt;
}

}  // namespace gpp::stable

#endif  // GPP_STABLE_ALGORITHMS_HPP_
