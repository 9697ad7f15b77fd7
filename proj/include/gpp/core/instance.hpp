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

#ifndef GPP_CORE_INSTANCE_HPP_
#define GPP_CORE_INSTANCE_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "gpp/core/errors.hpp"
#include "gpp/core/rational.hpp"

namespace gpp {

using ItemIndex = std::size_t;
using AgentIndex = std::size_t;
using MachineIndex = std::size_t;

enum class Kind { kMatroid, kMatching, kKnapsack, kGap };
enum class Demand { kUnit, kMul };

inline std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::kMatroid: return "matroid";
    case Kind::kMatching: return "matching";
    case Kind::kKnapsack: return "knapsack";
    case Kind::kGap: return "gap";
  }
  return "?";
}

inline std::string_view demand_name(Demand d) {
  return d == Demand::kUnit ? "unit" : "mul";
}

// ---------------------------------------------------------------------------
// Instance description as written by a user or a generator. Ids are free-form
// strings; validate_instance() turns this into a canonical GppInstance.
// ---------------------------------------------------------------------------

struct ItemSpec {
  std::string id;
  Rational value;
  std::optional<Rational> capacity;
  std::string u, v;            // matching endpoints
  std::string job, machine;    // gap pair
};

struct PartitionClassSpec {
  std::vector<std::string> items;
  std::size_t quota = 1;
};

struct MatroidSpec {
  enum class Type { kPartition, kUniform, kExplicit } type = Type::kUniform;
  std::vector<PartitionClassSpec> classes;
  std::size_t rank = 0;
  std::vector<std::vector<std::string>> independent;
};

struct MachineSpec {
  std::string id;
  Rational capacity;
};

struct InstanceSpec {
  Kind kind = Kind::kMatroid;
  Demand demand = Demand::kMul;
  std::vector<ItemSpec> items;
  std::vector<std::vector<std::string>> agents;
  MatroidSpec matroid;
  Rational knapsack_capacity = 0;
  std::vector<MachineSpec> machines;
};

// ---------------------------------------------------------------------------
// Canonical instance.
// ---------------------------------------------------------------------------

struct Item {
  std::string id;
  Rational value;
  std::optional<Rational> capacity;
  std::size_t u = 0, v = 0;          // matching: vertex indices
  MachineIndex machine = 0;          // gap: machine index
  std::optional<AgentIndex> owner;   // agent holding the item, if any
};

struct PartitionMatroid {
  std::vector<std::size_t> class_of;  // per item
  std::vector<std::size_t> quotas;    // per class
};
struct UniformMatroid {
  std::size_t rank = 0;
};
struct ExplicitMatroid {
  std::unordered_set<std::uint32_t> independent;  // bitmasks over items
};
using MatroidConstraint =
    std::variant<PartitionMatroid, UniformMatroid, ExplicitMatroid>;

struct Machine {
  std::string id;
  Rational capacity;
};

struct GppInstance {
  Kind kind = Kind::kMatroid;
  Demand demand = Demand::kMul;
  std::vector<Item> items;                    // sorted by id (natural order)
  std::vector<std::vector<ItemIndex>> agents; // declaration order, sorted items
  std::vector<std::string> agent_labels;      // job id for gap, else "0", "1"..
  MatroidConstraint matroid;
  Rational knapsack_capacity = 0;
  std::vector<Machine> machines;
  std::vector<std::string> vertices;          // matching vertex names

  std::size_t num_items() const { return items.size(); }
  std::size_t num_agents() const { return agents.size(); }

  const Rational& capacity(ItemIndex j) const { return *items[j].capacity; }

  std::optional<ItemIndex> find_item(std::string_view id) const {
    for (std::size_t j = 0; j < items.size(); ++j) {
      if (items[j].id == id) return j;
    }
    return std::nullopt;
  }
};

// "a2" < "a10": digit runs compare numerically.
inline bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  while (i < a.size() && j < b.size()) {
    if (is_digit(a[i]) && is_digit(b[j])) {
      std::size_t si = i, sj = j;
      while (si < a.size() && a[si] == '0') ++si;
      while (sj < b.size() && b[sj] == '0') ++sj;
      std::size_t ei = si, ej = sj;
      while (ei < a.size() && is_digit(a[ei])) ++ei;
      while (ej < b.size() && is_digit(b[ej])) ++ej;
      if (ei - si != ej - sj) return ei - si < ej - sj;
      if (auto c = a.substr(si, ei - si).compare(b.substr(sj, ej - sj)); c) {
        return c < 0;
      }
      if (ei - i != ej - j) return ei - i < ej - j;  // fewer leading zeros
      i = ei;
      j = ej;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

inline GppInstance validate_instance(const InstanceSpec& spec) {
  GppInstance inst;
  inst.kind = spec.kind;
  inst.demand = spec.demand;

  // Items, canonical order by id.
  std::vector<std::size_t> order(spec.items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return natural_less(spec.items[a].id, spec.items[b].id);
  });
  std::map<std::string, ItemIndex, std::less<>> index_of;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const ItemSpec& s = spec.items[order[pos]];
    if (s.id.empty()) throw InstanceError("item with empty id");
    if (!index_of.emplace(s.id, pos).second) {
      throw InstanceError("duplicate item id \"" + s.id + "\"");
    }
    if (s.value < 0) {
      throw InstanceError("item \"" + s.id + "\" has negative value");
    }
    if (s.capacity && *s.capacity <= 0) {
      throw InstanceError("item \"" + s.id + "\" has non-positive capacity");
    }
    Item item;
    item.id = s.id;
    item.value = s.value;
    item.capacity = s.capacity;
    inst.items.push_back(std::move(item));
  }
  auto lookup = [&](const std::string& id) -> ItemIndex {
    auto it = index_of.find(id);
    if (it == index_of.end()) throw InstanceError("unknown item id \"" + id + "\"");
    return it->second;
  };

  // Agents.
  std::vector<std::vector<std::string>> agent_ids = spec.agents;
  if (agent_ids.empty() && spec.kind == Kind::kGap) {
    // Agent = job, in order of first appearance.
    std::vector<std::string> jobs;
    std::map<std::string, std::size_t> slot;
    for (const ItemSpec& s : spec.items) {
      auto [it, fresh] = slot.emplace(s.job, jobs.size());
      if (fresh) {
        jobs.push_back(s.job);
        agent_ids.emplace_back();
      }
      agent_ids[it->second].push_back(s.id);
    }
  }
  for (AgentIndex a = 0; a < agent_ids.size(); ++a) {
    std::vector<ItemIndex> held;
    for (const std::string& id : agent_ids[a]) {
      ItemIndex j = lookup(id);
      if (inst.items[j].owner) {
        throw InstanceError("agent item sets are not disjoint: \"" + id +
                            "\" is listed by two agents");
      }
      inst.items[j].owner = a;
      held.push_back(j);
    }
    std::sort(held.begin(), held.end());
    inst.agents.push_back(std::move(held));
    inst.agent_labels.push_back(std::to_string(a));
  }

  const bool needs_capacity =
      spec.kind == Kind::kKnapsack || spec.kind == Kind::kGap;
  if (needs_capacity) {
    for (const Item& item : inst.items) {
      if (!item.capacity) {
        throw InstanceError("item \"" + item.id + "\" is missing a capacity");
      }
    }
  }

  switch (spec.kind) {
    case Kind::kMatroid: {
      const std::size_t m = inst.items.size();
      switch (spec.matroid.type) {
        case MatroidSpec::Type::kUniform:
          inst.matroid = UniformMatroid{spec.matroid.rank};
          break;
        case MatroidSpec::Type::kPartition: {
          PartitionMatroid pm;
          pm.class_of.assign(m, static_cast<std::size_t>(-1));
          for (std::size_t c = 0; c < spec.matroid.classes.size(); ++c) {
            for (const std::string& id : spec.matroid.classes[c].items) {
              ItemIndex j = lookup(id);
              if (pm.class_of[j] != static_cast<std::size_t>(-1)) {
                throw InstanceError("partition classes overlap on \"" + id + "\"");
              }
              pm.class_of[j] = c;
            }
            pm.quotas.push_back(spec.matroid.classes[c].quota);
          }
          for (ItemIndex j = 0; j < m; ++j) {
            if (pm.class_of[j] == static_cast<std::size_t>(-1)) {
              throw InstanceError("partition classes do not cover \"" +
                                  inst.items[j].id + "\"");
            }
          }
          inst.matroid = std::move(pm);
          break;
        }
        case MatroidSpec::Type::kExplicit: {
          if (m > 20) {
            throw InstanceError("explicit matroid family needs at most 20 items");
          }
          ExplicitMatroid em;
          for (const auto& set : spec.matroid.independent) {
            std::uint32_t mask = 0;
            for (const std::string& id : set) mask |= 1u << lookup(id);
            em.independent.insert(mask);
          }
          if (!em.independent.count(0u)) {
            throw InstanceError("explicit independent family must contain the empty set");
          }
          for (std::uint32_t mask : em.independent) {
            for (std::uint32_t bit = 1; bit && bit <= mask; bit <<= 1) {
              if ((mask & bit) && !em.independent.count(mask & ~bit)) {
                throw InstanceError("explicit independent family is not downward closed");
              }
            }
          }
          inst.matroid = std::move(em);
          break;
        }
      }
      break;
    }
    case Kind::kMatching: {
      std::map<std::string, std::size_t> vertex;
      auto vid = [&](const std::string& name) {
        auto [it, fresh] = vertex.emplace(name, inst.vertices.size());
        if (fresh) inst.vertices.push_back(name);
        return it->second;
      };
      for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const ItemSpec& s = spec.items[order[pos]];
        if (s.u.empty() || s.v.empty()) {
          throw InstanceError("matching edge \"" + s.id + "\" needs endpoints u and v");
        }
        if (s.u == s.v) {
          throw InstanceError("matching edge \"" + s.id + "\" has equal endpoints");
        }
        inst.items[pos].u = vid(s.u);
        inst.items[pos].v = vid(s.v);
      }
      break;
    }
    case Kind::kKnapsack:
      if (spec.knapsack_capacity < 0) {
        throw InstanceError("knapsack capacity must be non-negative");
      }
      inst.knapsack_capacity = spec.knapsack_capacity;
      break;
    case Kind::kGap: {
      if (spec.demand != Demand::kUnit) {
        throw InstanceError("gap instances have unit demand");
      }
      std::map<std::string, MachineIndex> machine_of;
      for (const MachineSpec& ms : spec.machines) {
        if (ms.capacity < 0) {
          throw InstanceError("machine \"" + ms.id + "\" has negative capacity");
        }
        if (!machine_of.emplace(ms.id, inst.machines.size()).second) {
          throw InstanceError("duplicate machine id \"" + ms.id + "\"");
        }
        inst.machines.push_back({ms.id, ms.capacity});
      }
      std::set<std::pair<std::string, MachineIndex>> seen;
      for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const ItemSpec& s = spec.items[order[pos]];
        auto it = machine_of.find(s.machine);
        if (it == machine_of.end()) {
          throw InstanceError("pair \"" + s.id + "\" names unknown machine \"" +
                              s.machine + "\"");
        }
        if (s.job.empty()) throw InstanceError("pair \"" + s.id + "\" has no job");
        if (!seen.emplace(s.job, it->second).second) {
          throw InstanceError("duplicate pair for job \"" + s.job +
                              "\" and machine \"" + s.machine + "\"");
        }
        inst.items[pos].machine = it->second;
      }
      for (AgentIndex a = 0; a < inst.agents.size(); ++a) {
        std::string job;
        for (ItemIndex j : inst.agents[a]) {
          const std::string& pj = spec.items[order[j]].job;
          if (job.empty()) job = pj;
          if (pj != job) {
            throw InstanceError("gap agent holds pairs of two different jobs (\"" +
                                job + "\", \"" + pj + "\")");
          }
        }
        if (!job.empty()) inst.agent_labels[a] = job;
      }
      // One agent per job.
      std::set<std::string> jobs;
      for (AgentIndex a = 0; a < inst.agents.size(); ++a) {
        if (inst.agents[a].empty()) continue;
        if (!jobs.insert(inst.agent_labels[a]).second) {
          throw InstanceError("job \"" + inst.agent_labels[a] +
                              "\" is split across agents");
        }
      }
      break;
    }
  }
  return inst;
}

}  // namespace gpp

#endif  // GPP_CORE_INSTANCE_HPP_
