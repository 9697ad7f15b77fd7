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

#ifndef GPP_AUDIT_TRUTHFULNESS_HPP_
#define GPP_AUDIT_TRUTHFULNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpp/audit/registry.hpp"

namespace gpp::audit {

struct AuditGates {
  std::size_t max_items_per_agent = 10;
  std::size_t max_branches = 1'000'000;
};

struct Witness {
  AgentIndex agent = 0;
  std::vector<ItemIndex> misreport;    // proper subset of the agent's items
  std::optional<TapeTranscript> tape;  // universal mode: the shared realization
  Rational truthful_utility = 0;       // expected utility in expectation mode
  Rational misreport_utility = 0;
};

struct BranchRecord {
  TapeTranscript tape;
  Rational probability;
  Outcome outcome;
};

struct AuditReport {
  std::string mechanism;
  std::string instance_id;
  AuditMode mode = AuditMode::kUniversal;
  bool truthful = true;
  std::optional<Witness> witness;
  std::uint64_t deviations_checked = 0;
  std::vector<BranchRecord> branches;       // truthful-report realizations
  std::vector<Rational> expected_utilities;  // truthful, exact
  Rational expected_total = 0;
};

// Number of (agent, proper subset, truthful branch) triples a clean audit
// has to visit.
inline std::uint64_t deviation_space(const GppInstance& inst, std::size_t branches) {
  std::uint64_t per_branch = 0;
  for (const auto& items : inst.agents) per_branch += (std::uint64_t{1} << items.size()) - 1;
  return per_branch * branches;
}

namespace detail {

inline std::vector<ItemIndex> subset_of(const std::vector<ItemIndex>& items, std::uint64_t mask) {
  std::vector<ItemIndex> out;
  for (std::size_t b = 0; b < items.size(); ++b) {
    if (mask >> b & 1) out.push_back(items[b]);
  }
  return out;
}

inline std::vector<Branch<Outcome>> all_branches(const Mechanism& mech, const GppInstance& inst,
                                                 const BidProfile& bids,
                                                 const MechanismParams& params,
                                                 std::size_t max_branches) {
  return enumerate_branches(
      [&](RandomSource& src) { return mech(inst, bids, params, src); }, max_branches);
}

inline Rational expected_utility(const std::vector<Branch<Outcome>>& branches, AgentIndex a) {
  Rational u = 0;
  for (const auto& b : branches) u += b.probability * b.result.utilities[a];
  return u;
}

// Replays a misreport against a recorded truthful realization. Draws are
// looked up by key, so the pairing follows agent identity, not position.
inline Outcome replay(const Mechanism& mech, const GppInstance& inst, const BidProfile& bids,
                      const MechanismParams& params, const TapeTranscript& tape) {
  FixedSource src(tape);
  try {
    return mech(inst, bids, params, src);
  } catch (const MissingDraw& e) {
    throw UsageError("mechanism " + mech.name +
                     " draws differently under a misreport; audit it in expectation mode (" +
                     e.what() + ")");
  }
}

}  // namespace detail

// Exhaustive subset-misreport audit: every agent, every proper subset of its
// items, others truthful. Stops at the first profitable deviation.
inline AuditReport audit_truthfulness(const Mechanism& mech, const GppInstance& inst,
                                      AuditMode mode, const MechanismParams& params = {},
                                      const AuditGates& gates = {},
                                      std::string instance_id = "") {
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    if (inst.agents[a].size() > gates.max_items_per_agent) {
      throw GateExceeded("agent " + inst.agent_labels[a] + " holds " +
                         std::to_string(inst.agents[a].size()) + " items; audit limit is " +
                         std::to_string(gates.max_items_per_agent));
    }
  }
  AuditReport report;
  report.mechanism = mech.name;
  report.instance_id = std::move(instance_id);
  report.mode = mode;

  const BidProfile truth = truthful_bids(inst);
  auto truth_branches = detail::all_branches(mech, inst, truth, params, gates.max_branches);
  report.expected_utilities.assign(inst.num_agents(), Rational(0));
  for (const auto& b : truth_branches) {
    report.expected_total += b.probability * b.result.total;
    for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
      report.expected_utilities[a] += b.probability * b.result.utilities[a];
    }
  }
  const std::uint64_t nb = truth_branches.size();
  if (mode == AuditMode::kExpectation && deviation_space(inst, 1) * nb > gates.max_branches * 64) {
    throw GateExceeded("expectation audit would enumerate too many branches");
  }

  auto lie_profile = [&](AgentIndex a, std::uint64_t mask) {
    BidProfile lie = truth;
    lie.reports[a] = detail::subset_of(inst.agents[a], mask);
    return lie;
  };

  if (mode == AuditMode::kUniversal) {
    for (const auto& branch : truth_branches) {
      for (AgentIndex a = 0; a < inst.num_agents() && report.truthful; ++a) {
        const std::uint64_t full = (std::uint64_t{1} << inst.agents[a].size()) - 1;
        for (std::uint64_t mask = 0; mask < full; ++mask) {
          BidProfile lie = lie_profile(a, mask);
          Outcome out = detail::replay(mech, inst, lie, params, branch.tape);
          ++report.deviations_checked;
          if (out.utilities[a] > branch.result.utilities[a]) {
            report.truthful = false;
            report.witness = Witness{a, lie.reports[a], branch.tape,
                                     branch.result.utilities[a], out.utilities[a]};
            break;
          }
        }
      }
      if (!report.truthful) break;
    }
  } else {
    for (AgentIndex a = 0; a < inst.num_agents() && report.truthful; ++a) {
      const std::uint64_t full = (std::uint64_t{1} << inst.agents[a].size()) - 1;
      for (std::uint64_t mask = 0; mask < full; ++mask) {
        BidProfile lie = lie_profile(a, mask);
        auto lie_branches = detail::all_branches(mech, inst, lie, params, gates.max_branches);
        Rational u = detail::expected_utility(lie_branches, a);
        report.deviations_checked += nb;
        if (u > report.expected_utilities[a]) {
          report.truthful = false;
          report.witness = Witness{a, lie.reports[a], std::nullopt,
                                   report.expected_utilities[a], u};
          break;
        }
      }
    }
  }

  report.branches.reserve(truth_branches.size());
  for (auto& b : truth_branches) {
    report.branches.push_back({std::move(b.tape), std::move(b.probability), std::move(b.result)});
  }
  return report;
}

// Re-runs the mechanism on a witness and confirms the recorded utility gap.
inline bool verify_witness(const Mechanism& mech, const GppInstance& inst,
                           const AuditReport& report, const MechanismParams& params = {},
                           const AuditGates& gates = {}) {
  if (!report.witness) return false;
  const Witness& w = *report.witness;
  BidProfile truth = truthful_bids(inst);
  BidProfile lie = truth;
  lie.reports[w.agent] = w.misreport;
  Rational before, after;
  if (w.tape) {
    before = detail::replay(mech, inst, truth, params, *w.tape).utilities[w.agent];
    after = detail::replay(mech, inst, lie, params, *w.tape).utilities[w.agent];
  } else {
    before = detail::expected_utility(
        detail::all_branches(mech, inst, truth, params, gates.max_branches), w.agent);
    after = detail::expected_utility(
        detail::all_branches(mech, inst, lie, params, gates.max_branches), w.agent);
  }
  return before == w.truthful_utility && after == w.misreport_utility && after > before;
}

}  // namespace gpp::audit

#endif  // GPP_AUDIT_TRUTHFULNESS_HPP_
