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

#ifndef GPP_AUDIT_GENERATORS_HPP_
#define GPP_AUDIT_GENERATORS_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "gpp/core/instance.hpp"

namespace gpp::audit {

struct GeneratorOptions {
  std::size_t max_items = 8;           // items, edges or (job, machine) pairs
  std::size_t max_agents = 6;
  std::size_t max_items_per_agent = 8;
  std::size_t max_machines = 3;
  int lambda = 3;                      // gap-small / gap-large split
};

namespace detail {

// Deterministic across standard libraries (no <random> distributions).
class Dice {
 public:
  explicit Dice(std::uint64_t seed) : rng_(seed) {}
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(int percent) { return between(1, 100) <= percent; }
  // Mostly integers, sometimes halves, to exercise rational arithmetic.
  Rational value(std::int64_t lo, std::int64_t hi) {
    std::int64_t v = between(lo, hi);
    return chance(20) ? Rational(2 * v + 1, 2) : Rational(v);
  }
  template <class T>
  void shuffle(std::vector<T>& xs) {
    for (std::size_t i = xs.size(); i > 1; --i) {
      std::swap(xs[i - 1], xs[static_cast<std::size_t>(between(0, static_cast<std::int64_t>(i) - 1))]);
    }
  }

 private:
  std::mt19937_64 rng_;
};

// Deals item ids to agents (capped per agent); a few items stay unheld.
inline std::vector<std::vector<std::string>> deal(Dice& dice, const std::vector<std::string>& ids,
                                                  const GeneratorOptions& opt) {
  const auto cap = static_cast<std::int64_t>(std::max<std::size_t>(1, opt.max_agents));
  std::size_t n_agents = static_cast<std::size_t>(dice.between(std::min<std::int64_t>(2, cap), cap));
  std::vector<std::vector<std::string>> agents(n_agents);
  for (const std::string& id : ids) {
    if (dice.chance(5)) continue;
    std::size_t a = static_cast<std::size_t>(dice.between(0, static_cast<std::int64_t>(n_agents) - 1));
    for (std::size_t tries = 0; tries < n_agents && agents[a].size() >= opt.max_items_per_agent; ++tries) {
      a = (a + 1) % n_agents;
    }
    if (agents[a].size() < opt.max_items_per_agent) agents[a].push_back(id);
  }
  std::erase_if(agents, [](const auto& g) { return g.empty(); });
  return agents;
}

inline std::size_t item_count(Dice& dice, const GeneratorOptions& opt) {
  const auto hi = static_cast<std::int64_t>(opt.max_items);
  // Mostly near the size limit; occasionally tiny, empty included.
  return static_cast<std::size_t>(dice.chance(10) ? dice.between(0, hi) : dice.between(hi / 2, hi));
}

inline InstanceSpec matroid_spec(Dice& dice, const GeneratorOptions& opt, Demand demand,
                                 bool partition) {
  InstanceSpec s;
  s.kind = Kind::kMatroid;
  s.demand = demand;
  const std::size_t n = item_count(dice, opt);
  std::vector<std::string> ids;
  for (std::size_t j = 0; j < n; ++j) {
    ids.push_back("a" + std::to_string(j + 1));
    s.items.push_back({ids.back(), dice.value(0, 12), std::nullopt, "", "", "", ""});
  }
  if (partition) {
    s.matroid.type = MatroidSpec::Type::kPartition;
    std::size_t classes = static_cast<std::size_t>(dice.between(1, 3));
    std::vector<PartitionClassSpec> cls(classes);
    for (auto& c : cls) c.quota = static_cast<std::size_t>(dice.between(1, 2));
    for (const std::string& id : ids) {
      cls[static_cast<std::size_t>(dice.between(0, static_cast<std::int64_t>(classes) - 1))]
          .items.push_back(id);
    }
    std::erase_if(cls, [](const auto& c) { return c.items.empty(); });
    s.matroid.classes = std::move(cls);
  } else {
    s.matroid.type = MatroidSpec::Type::kUniform;
    s.matroid.rank = static_cast<std::size_t>(dice.between(0, static_cast<std::int64_t>(n)));
  }
  s.agents = deal(dice, ids, opt);
  return s;
}

inline InstanceSpec matching_spec(Dice& dice, const GeneratorOptions& opt, Demand demand) {
  InstanceSpec s;
  s.kind = Kind::kMatching;
  s.demand = demand;
  const std::int64_t left = dice.between(1, 4), right = dice.between(1, 4);
  std::vector<std::pair<std::int64_t, std::int64_t>> slots;
  for (std::int64_t t = 1; t <= left; ++t) {
    for (std::int64_t u = 1; u <= right; ++u) slots.emplace_back(t, u);
  }
  dice.shuffle(slots);
  slots.resize(std::min(slots.size(), item_count(dice, opt)));
  std::vector<std::string> ids;
  for (std::size_t e = 0; e < slots.size(); ++e) {
    ids.push_back("e" + std::to_string(e + 1));
    // Values over several powers of two so the value groups differ.
    Rational v = dice.chance(50) ? Rational(std::int64_t{1} << dice.between(0, 5))
                                 : dice.value(1, 32);
    s.items.push_back({ids.back(), v, std::nullopt, "t" + std::to_string(slots[e].first),
                       "u" + std::to_string(slots[e].second), "", ""});
  }
  s.agents = deal(dice, ids, opt);
  return s;
}

inline InstanceSpec knapsack_spec(Dice& dice, const GeneratorOptions& opt, Demand demand) {
  InstanceSpec s;
  s.kind = Kind::kKnapsack;
  s.demand = demand;
  s.knapsack_capacity = Rational(dice.between(4, 20));
  const std::size_t n = item_count(dice, opt);
  std::vector<std::string> ids;
  for (std::size_t j = 0; j < n; ++j) {
    ids.push_back("k" + std::to_string(j + 1));
    s.items.push_back({ids.back(), Rational(dice.between(0, 20)), Rational(dice.between(1, 12)),
                       "", "", "", ""});
  }
  s.agents = deal(dice, ids, opt);
  return s;
}

enum class GapFamily {
  kGeneral,
  kJobValueInvariant,       // v_ik = v_i
  kJobCapacityInvariant,    // c_ik = c_i
  kMachineValueInvariant,   // v_ik = v_k
  kMachineCapacityInvariant,// c_ik = c_k
  kSmall,                   // c_ik <= C_k / lambda
  kLarge,                   // c_ik >= C_k / lambda
};

inline InstanceSpec gap_spec(Dice& dice, const GeneratorOptions& opt, GapFamily family) {
  InstanceSpec s;
  s.kind = Kind::kGap;
  s.demand = Demand::kUnit;
  const std::int64_t lambda = opt.lambda;
  const std::size_t machines = static_cast<std::size_t>(
      dice.between(1, static_cast<std::int64_t>(std::max<std::size_t>(1, opt.max_machines))));
  std::vector<Rational> machine_value, machine_size;
  for (std::size_t k = 0; k < machines; ++k) {
    std::int64_t cap = family == GapFamily::kSmall ? lambda * dice.between(1, 5)
                                                   : dice.between(2, 12);
    s.machines.push_back({"m" + std::to_string(k + 1), Rational(cap)});
    machine_value.push_back(dice.value(1, 10));
    machine_size.push_back(Rational(dice.between(1, 6)));
  }
  const std::size_t budget = item_count(dice, opt);
  const std::size_t max_jobs = std::min<std::size_t>(opt.max_agents, std::max<std::size_t>(budget, 1));
  std::size_t pairs = 0;
  for (std::size_t i = 1; i <= max_jobs && pairs < budget; ++i) {
    const std::string job = "j" + std::to_string(i);
    const Rational job_value = dice.value(1, 10);
    const Rational job_size = Rational(dice.between(1, 6));
    std::vector<std::size_t> ks(machines);
    for (std::size_t k = 0; k < machines; ++k) ks[k] = k;
    dice.shuffle(ks);
    std::size_t want = static_cast<std::size_t>(dice.between(1, static_cast<std::int64_t>(machines)));
    want = std::min({want, budget - pairs, opt.max_items_per_agent});
    for (std::size_t n = 0; n < want; ++n) {
      const std::size_t k = ks[n];
      const Rational& cap = s.machines[k].capacity;
      Rational v = dice.value(1, 10), c = Rational(dice.between(1, 6));
      switch (family) {
        case GapFamily::kJobValueInvariant: v = job_value; break;
        case GapFamily::kJobCapacityInvariant: c = job_size; break;
        case GapFamily::kMachineValueInvariant: v = machine_value[k]; break;
        case GapFamily::kMachineCapacityInvariant: c = machine_size[k]; break;
        case GapFamily::kSmall: {
          std::int64_t hi = static_cast<std::int64_t>(cap.convert_to<double>()) / lambda;
          c = Rational(dice.between(1, std::max<std::int64_t>(hi, 1)));
          break;
        }
        case GapFamily::kLarge: {
          std::int64_t top = static_cast<std::int64_t>(cap.convert_to<double>());
          std::int64_t lo = (top + lambda - 1) / lambda;
          c = Rational(dice.between(lo, top));
          break;
        }
        case GapFamily::kGeneral: break;
      }
      s.items.push_back({job + "." + s.machines[k].id, v, c, "", "", job, s.machines[k].id});
      ++pairs;
    }
  }
  return s;
}

}  // namespace detail

inline const std::vector<std::string>& generator_names() {
  static const std::vector<std::string> names = {
      "matroid-partition-mul", "matroid-partition-unit", "matroid-uniform-mul",
      "matroid-uniform-unit", "matching-unit", "matching-mul", "knapsack-unit",
      "knapsack-mul", "gap", "gap-job-value-invariant", "gap-job-capacity-invariant",
      "gap-machine-value-invariant", "gap-machine-capacity-invariant", "gap-small",
      "gap-large"};
  return names;
}

// Random instance spec from a named family; identical for identical
// (name, seed, options).
inline InstanceSpec generate_spec(std::string_view name, std::uint64_t seed,
                                  const GeneratorOptions& opt = {}) {
  detail::Dice dice(seed);
  using detail::GapFamily;
  if (name == "matroid-partition-mul") return detail::matroid_spec(dice, opt, Demand::kMul, true);
  if (name == "matroid-partition-unit") return detail::matroid_spec(dice, opt, Demand::kUnit, true);
  if (name == "matroid-uniform-mul") return detail::matroid_spec(dice, opt, Demand::kMul, false);
  if (name == "matroid-uniform-unit") return detail::matroid_spec(dice, opt, Demand::kUnit, false);
  if (name == "matching-unit") return detail::matching_spec(dice, opt, Demand::kUnit);
  if (name == "matching-mul") return detail::matching_spec(dice, opt, Demand::kMul);
  if (name == "knapsack-unit") return detail::knapsack_spec(dice, opt, Demand::kUnit);
  if (name == "knapsack-mul") return detail::knapsack_spec(dice, opt, Demand::kMul);
  if (name == "gap") return detail::gap_spec(dice, opt, GapFamily::kGeneral);
  if (name == "gap-job-value-invariant") return detail::gap_spec(dice, opt, GapFamily::kJobValueInvariant);
  if (name == "gap-job-capacity-invariant") return detail::gap_spec(dice, opt, GapFamily::kJobCapacityInvariant);
  if (name == "gap-machine-value-invariant") return detail::gap_spec(dice, opt, GapFamily::kMachineValueInvariant);
  if (name == "gap-machine-capacity-invariant") return detail::gap_spec(dice, opt, GapFamily::kMachineCapacityInvariant);
  if (name == "gap-small") return detail::gap_spec(dice, opt, GapFamily::kSmall);
  if (name == "gap-large") return detail::gap_spec(dice, opt, GapFamily::kLarge);
  throw UsageError("unknown generator \"" + std::string(name) + "\"");
}

inline GppInstance generate(std::string_view name, std::uint64_t seed,
                            const GeneratorOptions& opt = {}) {
  return validate_instance(generate_spec(name, seed, opt));
}

// Generator matching a mechanism's instance family.
inline std::string default_generator(Kind kind, std::optional<Demand> demand) {
  const std::string d = demand == Demand::kUnit ? "unit" : "mul";
  switch (kind) {
    case Kind::kMatroid: return "matroid-partition-" + d;
    case Kind::kMatching: return "matching-" + d;
    case Kind::kKnapsack: return "knapsack-" + d;
    case Kind::kGap: return "gap";
  }
  return "gap";
}

}  // namespace gpp::audit

#endif  // GPP_AUDIT_GENERATORS_HPP_
