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

#ifndef GPP_MATROID_GREEDY_HPP_
#define GPP_MATROID_GREEDY_HPP_

#include <vector>

#include "gpp/core/outcome.hpp"

namespace gpp::matroid {

namespace detail {

inline void require_matroid(const GppInstance& inst, Demand demand) {
  if (inst.kind != Kind::kMatroid || inst.demand != demand) {
    throw UsageError(std::string("mechanism needs a matroid-") +
                     std::string(demand_name(demand)) + " instance");
  }
}

}  // namespace detail

// Scans reported items by decreasing value and keeps an item whenever the
// selection stays independent. Under unit demand Packing also refuses a
// second item from the same agent, which makes this the greedy algorithm on
// the intersection of the matroid with the agent partition matroid.
struct GreedyRun {
  Outcome outcome;
  std::vector<ItemIndex> picked;  // in the order the scan accepted them
};

inline GreedyRun greedy_run(const GppInstance& inst, const BidProfile& bids) {
  check_bids(inst, bids);
  Packing packing(inst);
  GreedyRun run;
  for (ItemIndex j : value_order(inst, reported_items(bids))) {
    if (packing.try_add(j)) run.picked.push_back(j);
  }
  run.outcome = make_outcome(inst, run.picked);
  return run;
}

inline Outcome greedy(const GppInstance& inst, const BidProfile& bids) {
  return greedy_run(inst, bids).outcome;
}

// Optimal and truthful for multi-unit demand.
inline Outcome greedy_mul(const GppInstance& inst, const BidProfile& bids) {
  detail::require_matroid(inst, Demand::kMul);
  return greedy(inst, bids);
}

// Truthful 2-approximation for unit demand.
inline Outcome greedy_unit(const GppInstance& inst, const BidProfile& bids) {
  detail::require_matroid(inst, Demand::kUnit);
  return greedy(inst, bids);
}

}  // namespace gpp::matroid

#endif  // GPP_MATROID_GREEDY_HPP_
