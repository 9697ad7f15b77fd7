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

#ifndef GPP_GAP_MECHANISMS_HPP_
#define GPP_GAP_MECHANISMS_HPP_

#include <string>
#include <vector>

#include "gpp/core/random_tape.hpp"
#include "gpp/stable/algorithms.hpp"

namespace gpp::gap {

using stable::GapAssignment;

struct Gap3Config {
  int lambda = 3;
  Rational mu = Rational(1, 6);

  // lambda > 2 and mu * lambda / (lambda - 1) < 1/3, which keeps every
  // constant in the approximation argument positive.
  void validate() const {
    if (lambda <= 2) throw UsageError("gap lambda must be an integer > 2");
    if (mu <= 0) throw UsageError("gap mu must be positive");
    if (mu * lambda / (lambda - 1) >= Rational(1, 3)) {
      throw UsageError("gap parameters need mu * lambda / (lambda - 1) < 1/3");
    }
  }
};

namespace detail {

// Keeps the reported pairs accepted by `keep`.
template <class Pred>
BidProfile filter_bids(const BidProfile& bids, Pred keep) {
  BidProfile out;
  for (const auto& r : bids.reports) {
    std::vector<ItemIndex> kept;
    for (ItemIndex p : r) {
      if (keep(p)) kept.push_back(p);
    }
    out.reports.push_back(std::move(kept));
  }
  return out;
}

// c_ik * lambda compared with C_k.
inline int compare_size(const GppInstance& inst, ItemIndex p, int lambda) {
  Rational lhs = inst.capacity(p) * lambda;
  const Rational& rhs = inst.machines[inst.items[p].machine].capacity;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

inline BidProfile small_pairs(const GppInstance& inst, const BidProfile& bids, int lambda) {
  return filter_bids(bids, [&](ItemIndex p) { return compare_size(inst, p, lambda) <= 0; });
}

inline BidProfile large_pairs(const GppInstance& inst, const BidProfile& bids, int lambda) {
  return filter_bids(bids, [&](ItemIndex p) { return compare_size(inst, p, lambda) >= 0; });
}

inline void require_lambda(int lambda) {
  if (lambda < 2) throw UsageError("gap lambda must be an integer >= 2");
}

}  // namespace detail

// Fair coin between sm_greedy and sm_da_alg. Universally truthful with ratio
// 4 when values or capacities are invariant along jobs or machines.
inline GapAssignment gap_special_mix(const GppInstance& inst, const BidProfile& bids,
                                     RandomSource& tape) {
  stable::require_gap(inst);
  if (!tape.bit("mix", Rational(1, 2))) return stable::sm_greedy(inst, bids);
  return stable::sm_da_alg(inst, bids);
}

// Large pairs only (c_ik >= C_k / lambda), one job per machine, greedy by value.
inline GapAssignment gap_mech_1(const GppInstance& inst, const BidProfile& bids, int lambda) {
  stable::require_gap(inst);
  detail::require_lambda(lambda);
  check_bids(inst, bids);
  return stable::sm_greedy(inst, detail::large_pairs(inst, bids, lambda), std::size_t{1});
}

// Small pairs only (c_ik <= C_k / lambda), at most lambda jobs per machine.
inline GapAssignment gap_mech_2(const GppInstance& inst, const BidProfile& bids, int lambda) {
  stable::require_gap(inst);
  detail::require_lambda(lambda);
  check_bids(inst, bids);
  return stable::sm_greedy(inst, detail::small_pairs(inst, bids, lambda),
                           static_cast<std::size_t>(lambda));
}

struct Gap3Trace {
  std::vector<char> in_sample;      // per job: true if in T
  GapAssignment sample_assignment;  // A^T
  std::vector<Rational> thresholds; // t_k
  GapAssignment assignment;         // final A, R-jobs only
};

inline std::string sample_key(AgentIndex a) { return "sample/" + std::to_string(a); }

// Sampling mechanism on small pairs. A fair coin per job picks the test group
// T; deferred acceptance with virtual capacity (lambda-1)/lambda * C_k on T
// yields per-machine density thresholds t_k = mu * v(A^T_k) / C_k. The other
// jobs are then placed one at a time, in canonical order, on their best
// machine that still has room and whose threshold they clear.
inline Gap3Trace gap_mech_3_trace(const GppInstance& inst, const BidProfile& bids,
                                  const Gap3Config& cfg, RandomSource& tape) {
  stable::require_gap(inst);
  cfg.validate();
  check_bids(inst, bids);
  const BidProfile small = detail::small_pairs(inst, bids, cfg.lambda);

  Gap3Trace trace;
  trace.in_sample.assign(inst.num_agents(), 0);
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    trace.in_sample[a] = tape.bit(sample_key(a), Rational(1, 2)) ? 1 : 0;
  }
  BidProfile sample_bids = small;
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    if (!trace.in_sample[a]) sample_bids.reports[a].clear();
  }
  const stable::VirtualCaps vcaps =
      stable::scaled_caps(inst, Rational(cfg.lambda - 1, cfg.lambda));
  trace.sample_assignment = stable::sm_da_alg(inst, sample_bids, vcaps);

  for (MachineIndex k = 0; k < inst.machines.size(); ++k) {
    const Rational& cap = inst.machines[k].capacity;
    trace.thresholds.push_back(
        cap > 0 ? Rational(cfg.mu * trace.sample_assignment.machine_value(k) / cap)
                : Rational(0));
  }

  trace.assignment = GapAssignment(inst);
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    if (trace.in_sample[a]) continue;
    std::optional<ItemIndex> best;
    for (ItemIndex p : small.reports[a]) {
      MachineIndex k = stable::machine_of(inst, p);
      if (trace.assignment.machine_load(k) + inst.capacity(p) > inst.machines[k].capacity) {
        continue;
      }
      if (inst.items[p].value < trace.thresholds[k] * inst.capacity(p)) continue;
      if (!best || stable::job_prefers(inst, p, *best)) best = p;
    }
    if (best) trace.assignment.assign(*best);
  }
  return trace;
}

inline GapAssignment gap_mech_3(const GppInstance& inst, const BidProfile& bids,
                                const Gap3Config& cfg, RandomSource& tape) {
  return gap_mech_3_trace(inst, bids, cfg, tape).assignment;
}

// Universally truthful constant-ratio mechanism: uniform over the three
// mechanisms above.
inline GapAssignment gap_main(const GppInstance& inst, const BidProfile& bids,
                              const Gap3Config& cfg, RandomSource& tape) {
  stable::require_gap(inst);
  cfg.validate();
  switch (tape.choice("mix", 3)) {
    case 0: return gap_mech_1(inst, bids, cfg.lambda);
    case 1: return gap_mech_2(inst, bids, cfg.lambda);
    default: return gap_mech_3(inst, bids, cfg, tape);
  }
}

// Analysis-only reference assignment A*: deferred acceptance with virtual
// capacities over every job's small pairs.
inline GapAssignment reference_astar(const GppInstance& inst, const BidProfile& bids,
                                     int lambda) {
  stable::require_gap(inst);
  if (lambda <= 2) throw UsageError("gap lambda must be an integer > 2");
  check_bids(inst, bids);
  return stable::sm_da_alg(inst, detail::small_pairs(inst, bids, lambda),
                           stable::scaled_caps(inst, Rational(lambda - 1, lambda)));
}

// A* keeping only each machine's lambda highest-value jobs.
inline GapAssignment truncate_top_values(const GppInstance& inst, const GapAssignment& a,
                                         int lambda) {
  GapAssignment out(inst);
  for (MachineIndex k = 0; k < inst.machines.size(); ++k) {
    std::vector<ItemIndex> jobs = a.on_machine(k);
    std::stable_sort(jobs.begin(), jobs.end(), [&](ItemIndex x, ItemIndex y) {
      return inst.items[x].value > inst.items[y].value;
    });
    for (std::size_t i = 0; i < jobs.size() && i < static_cast<std::size_t>(lambda); ++i) {
      out.assign(jobs[i]);
    }
  }
  return out;
}

}  // namespace gpp::gap

#endif  // GPP_GAP_MECHANISMS_HPP_
