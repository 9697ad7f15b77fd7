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

#ifndef GPP_IO_JSON_HPP_
#define GPP_IO_JSON_HPP_

#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "gpp/audit/exact_opt.hpp"
#include "gpp/audit/truthfulness.hpp"
#include "gpp/core/instance.hpp"
#include "gpp/core/random_tape.hpp"

namespace gpp::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

namespace detail {

inline Rational rational_field(const Json& j, const char* what) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw InstanceError(std::string(what) + " must be a rational string such as \"1/10\"");
}

inline std::string string_field(const Json& obj, const char* key, bool required = true) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    if (required) throw InstanceError(std::string("missing field \"") + key + "\"");
    return "";
  }
  if (!it->is_string()) throw InstanceError(std::string("field \"") + key + "\" must be a string");
  return it->get<std::string>();
}

inline std::vector<std::string> id_list(const Json& j, const char* what) {
  if (!j.is_array()) throw InstanceError(std::string(what) + " must be an array of ids");
  std::vector<std::string> out;
  for (const Json& x : j) {
    if (!x.is_string()) throw InstanceError(std::string(what) + " must hold string ids");
    out.push_back(x.get<std::string>());
  }
  return out;
}

inline Kind parse_kind(const std::string& s) {
  if (s == "matroid") return Kind::kMatroid;
  if (s == "matching") return Kind::kMatching;
  if (s == "knapsack") return Kind::kKnapsack;
  if (s == "gap") return Kind::kGap;
  throw InstanceError("unknown kind \"" + s + "\"");
}

inline Demand parse_demand(const std::string& s) {
  if (s == "unit") return Demand::kUnit;
  if (s == "mul") return Demand::kMul;
  throw InstanceError("unknown demand \"" + s + "\"");
}

inline Json machines_json(const std::vector<MachineSpec>& ms) {
  Json out = Json::array();
  for (const MachineSpec& m : ms) out.push_back({{"id", m.id}, {"capacity", to_string(m.capacity)}});
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Instances.
// ---------------------------------------------------------------------------

inline InstanceSpec spec_from_json(const Json& doc) {
  if (!doc.is_object()) throw InstanceError("instance document must be a JSON object");
  if (auto f = doc.find("format"); f != doc.end() && *f != kFormatVersion) {
    throw InstanceError("unsupported instance format " + f->dump());
  }
  InstanceSpec spec;
  spec.kind = detail::parse_kind(detail::string_field(doc, "kind"));
  const std::string demand = detail::string_field(doc, "demand", false);
  spec.demand = demand.empty() ? (spec.kind == Kind::kGap ? Demand::kUnit : Demand::kMul)
                               : detail::parse_demand(demand);

  const Json items = doc.value("items", Json::array());
  if (!items.is_array()) throw InstanceError("\"items\" must be an array");
  for (const Json& it : items) {
    if (!it.is_object()) throw InstanceError("each item must be an object");
    ItemSpec s;
    s.id = detail::string_field(it, "id");
    if (!it.contains("value")) throw InstanceError("item \"" + s.id + "\" has no value");
    s.value = detail::rational_field(it["value"], "value");
    if (it.contains("capacity") && !it["capacity"].is_null()) {
      s.capacity = detail::rational_field(it["capacity"], "capacity");
    }
    s.u = detail::string_field(it, "u", false);
    s.v = detail::string_field(it, "v", false);
    s.job = detail::string_field(it, "job", false);
    s.machine = detail::string_field(it, "machine", false);
    spec.items.push_back(std::move(s));
  }

  if (auto a = doc.find("agents"); a != doc.end()) {
    if (!a->is_array()) throw InstanceError("\"agents\" must be an array of id arrays");
    for (const Json& g : *a) spec.agents.push_back(detail::id_list(g, "agent"));
  }

  const Json constraint = doc.value("constraint", Json::object());
  if (!constraint.is_object()) throw InstanceError("\"constraint\" must be an object");
  switch (spec.kind) {
    case Kind::kMatroid: {
      const std::string type = detail::string_field(constraint, "type");
      if (type == "partition") {
        spec.matroid.type = MatroidSpec::Type::kPartition;
        for (const Json& c : constraint.value("classes", Json::array())) {
          PartitionClassSpec cls;
          cls.items = detail::id_list(c.value("items", Json::array()), "class");
          cls.quota = c.value("quota", std::size_t{1});
          spec.matroid.classes.push_back(std::move(cls));
        }
      } else if (type == "uniform") {
        spec.matroid.type = MatroidSpec::Type::kUniform;
        if (!constraint.contains("rank") || !constraint["rank"].is_number_unsigned()) {
          throw InstanceError("uniform matroid needs a non-negative integer \"rank\"");
        }
        spec.matroid.rank = constraint["rank"].get<std::size_t>();
      } else if (type == "explicit") {
        spec.matroid.type = MatroidSpec::Type::kExplicit;
        for (const Json& s : constraint.value("independent", Json::array())) {
          spec.matroid.independent.push_back(detail::id_list(s, "independent set"));
        }
      } else {
        throw InstanceError("unknown matroid type \"" + type + "\"");
      }
      break;
    }
    case Kind::kKnapsack:
      if (!constraint.contains("capacity")) throw InstanceError("knapsack needs constraint.capacity");
      spec.knapsack_capacity = detail::rational_field(constraint["capacity"], "capacity");
      break;
    case Kind::kGap: {
      Json machines = constraint.value("machines", doc.value("machines", Json::array()));
      for (const Json& m : machines) {
        spec.machines.push_back({detail::string_field(m, "id"),
                                 detail::rational_field(m.value("capacity", Json()), "capacity")});
      }
      break;
    }
    case Kind::kMatching: break;
  }
  return spec;
}

inline Json spec_to_json(const InstanceSpec& spec) {
  Json doc;
  doc["format"] = kFormatVersion;
  doc["kind"] = std::string(kind_name(spec.kind));
  doc["demand"] = std::string(demand_name(spec.demand));
  Json items = Json::array();
  for (const ItemSpec& s : spec.items) {
    Json it{{"id", s.id}, {"value", to_string(s.value)}};
    if (s.capacity) it["capacity"] = to_string(*s.capacity);
    if (!s.u.empty()) it["u"] = s.u;
    if (!s.v.empty()) it["v"] = s.v;
    if (!s.job.empty()) it["job"] = s.job;
    if (!s.machine.empty()) it["machine"] = s.machine;
    items.push_back(std::move(it));
  }
  doc["items"] = std::move(items);
  if (!spec.agents.empty() || spec.kind != Kind::kGap) doc["agents"] = spec.agents;
  Json c = Json::object();
  switch (spec.kind) {
    case Kind::kMatroid:
      switch (spec.matroid.type) {
        case MatroidSpec::Type::kPartition: {
          c["type"] = "partition";
          Json classes = Json::array();
          for (const auto& cls : spec.matroid.classes) {
            classes.push_back({{"items", cls.items}, {"quota", cls.quota}});
          }
          c["classes"] = std::move(classes);
          break;
        }
        case MatroidSpec::Type::kUniform:
          c["type"] = "uniform";
          c["rank"] = spec.matroid.rank;
          break;
        case MatroidSpec::Type::kExplicit:
          c["type"] = "explicit";
          c["independent"] = spec.matroid.independent;
          break;
      }
      break;
    case Kind::kKnapsack: c["capacity"] = to_string(spec.knapsack_capacity); break;
    case Kind::kGap: c["machines"] = detail::machines_json(spec.machines); break;
    case Kind::kMatching: break;
  }
  doc["constraint"] = std::move(c);
  return doc;
}

inline GppInstance parse_instance(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InstanceError(std::string("malformed JSON: ") + e.what());
  }
  try {
    return validate_instance(spec_from_json(doc));
  } catch (const nlohmann::json::exception& e) {
    throw InstanceError(std::string("malformed instance: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceError("cannot read \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline GppInstance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

// ---------------------------------------------------------------------------
// Tapes.
// ---------------------------------------------------------------------------

inline Json tape_to_json(const TapeTranscript& tape) {
  Json out = Json::array();
  for (const Draw& d : tape.draws) {
    Json j{{"key", d.key}};
    if (d.type == Draw::Type::kBit) {
      j["type"] = "bit";
      j["p"] = to_string(d.p);
    } else {
      j["type"] = "choice";
      j["arity"] = d.arity;
    }
    j["value"] = d.value;
    out.push_back(std::move(j));
  }
  return out;
}

inline TapeTranscript tape_from_json(const Json& j) {
  // Accept either a bare draw list or a run document carrying "tape".
  const Json& draws = j.is_object() && j.contains("tape") ? j["tape"] : j;
  if (!draws.is_array()) throw InstanceError("tape must be an array of draws");
  TapeTranscript tape;
  try {
    for (const Json& x : draws) {
      Draw d;
      d.key = x.at("key").get<std::string>();
      const std::string type = x.at("type").get<std::string>();
      if (type == "bit") {
        d.type = Draw::Type::kBit;
        d.p = detail::rational_field(x.at("p"), "p");
      } else if (type == "choice") {
        d.type = Draw::Type::kChoice;
        d.arity = x.at("arity").get<std::size_t>();
      } else {
        throw InstanceError("unknown draw type \"" + type + "\"");
      }
      d.value = x.at("value").get<std::size_t>();
      tape.draws.push_back(std::move(d));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InstanceError(std::string("malformed tape: ") + e.what());
  }
  return tape;
}

inline TapeTranscript load_tape(const std::string& path) {
  try {
    return tape_from_json(Json::parse(read_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw InstanceError(std::string("malformed tape JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Outcomes and reports.
// ---------------------------------------------------------------------------

inline Json ids_json(const GppInstance& inst, const std::vector<ItemIndex>& items) {
  Json out = Json::array();
  for (ItemIndex j : items) out.push_back(inst.items[j].id);
  return out;
}

inline Json outcome_json(const GppInstance& inst, const Outcome& outcome) {
  Json j;
  j["total"] = to_string(outcome.total);
  Json agents = Json::array();
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    agents.push_back({{"agent", inst.agent_labels[a]},
                      {"selected", ids_json(inst, outcome.selected[a])},
                      {"utility", to_string(outcome.utilities[a])}});
  }
  j["agents"] = std::move(agents);
  if (inst.kind == Kind::kGap) {
    // job -> machine id, or null when unassigned
    Json assignment = Json::object();
    for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
      const auto& s = outcome.selected[a];
      assignment[inst.agent_labels[a]] =
          s.empty() ? Json(nullptr) : Json(inst.machines[inst.items[s.front()].machine].id);
    }
    j["assignment"] = std::move(assignment);
  }
  return j;
}

inline Json run_json(const GppInstance& inst, const std::string& mechanism, const Outcome& outcome,
                     const TapeTranscript& tape) {
  Json j;
  j["mechanism"] = mechanism;
  j["kind"] = std::string(kind_name(inst.kind));
  j["demand"] = std::string(demand_name(inst.demand));
  j.update(outcome_json(inst, outcome));
  j["tape"] = tape_to_json(tape);
  return j;
}

inline Json opt_json(const GppInstance& inst, const audit::OptResult& opt) {
  return {{"value", to_string(opt.value)}, {"witness", ids_json(inst, opt.witness)}};
}

inline Json audit_json(const GppInstance& inst, const audit::AuditReport& r) {
  Json j;
  j["mechanism"] = r.mechanism;
  j["instance"] = r.instance_id;
  j["mode"] = std::string(audit::audit_mode_name(r.mode));
  j["verdict"] = r.truthful ? "truthful" : "manipulable";
  if (r.witness) {
    const audit::Witness& w = *r.witness;
    Json wj{{"agent", inst.agent_labels[w.agent]},
            {"misreport", ids_json(inst, w.misreport)},
            {"utility_truthful", to_string(w.truthful_utility)},
            {"utility_misreport", to_string(w.misreport_utility)}};
    wj["tape"] = w.tape ? tape_to_json(*w.tape) : Json(nullptr);
    j["witness"] = std::move(wj);
  } else {
    j["witness"] = nullptr;
  }
  j["deviations_checked"] = r.deviations_checked;
  j["deviation_space"] = audit::deviation_space(inst, r.branches.size());
  Json expected = Json::array();
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    expected.push_back({{"agent", inst.agent_labels[a]},
                        {"utility", to_string(r.expected_utilities[a])}});
  }
  j["expected_total"] = to_string(r.expected_total);
  j["expected_utilities"] = std::move(expected);
  Json branches = Json::array();
  for (const auto& b : r.branches) {
    Json bj{{"probability", to_string(b.probability)}, {"tape", tape_to_json(b.tape)}};
    bj.update(outcome_json(inst, b.outcome));
    branches.push_back(std::move(bj));
  }
  j["branches"] = std::move(branches);
  return j;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace gpp::io

#endif  // GPP_IO_JSON_HPP_
