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

#ifndef GPP_AUDIT_SUITES_HPP_
#define GPP_AUDIT_SUITES_HPP_

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "gpp/audit/bench.hpp"
#include "gpp/audit/exact_opt.hpp"
#include "gpp/audit/fixtures.hpp"
#include "gpp/audit/generators.hpp"
#include "gpp/audit/sampling_lemma.hpp"
#include "gpp/audit/truthfulness.hpp"
#include "gpp/io/json.hpp"

namespace gpp::audit {

struct SuiteOptions {
  std::uint64_t seed = 1;
  double scale = 1.0;  // multiplies every case count (acceptance runs use 1)
};

struct SuiteResult {
  SuiteResult() = default;
  SuiteResult(std::string suite_id, std::string suite_title)
      : id(std::move(suite_id)), title(std::move(suite_title)) {}

  std::string id;
  std::string title;
  bool passed = true;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> notes;  // measurements and the first failures
};

struct Suite {
  std::string id;
  std::string title;
  std::function<SuiteResult(const SuiteOptions&)> run;
};

namespace detail {

inline std::size_t scaled(std::size_t n, const SuiteOptions& opt) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(static_cast<double>(n) * opt.scale)));
}

inline void record(SuiteResult& r, bool ok, const std::string& what) {
  ++r.cases;
  if (ok) return;
  ++r.failures;
  r.passed = false;
  if (r.failures <= 5) r.notes.push_back("FAIL " + what);
}

inline std::string instance_tag(const std::string& generator, std::uint64_t seed) {
  return generator + "-" + std::to_string(seed);
}

inline GeneratorOptions sizes(std::size_t items, std::size_t agents, std::size_t per_agent,
                              std::size_t machines = 3, int lambda = 3) {
  GeneratorOptions g;
  g.max_items = items;
  g.max_agents = agents;
  g.max_items_per_agent = per_agent;
  g.max_machines = machines;
  g.lambda = lambda;
  return g;
}

// Worst optimum/value of a mechanism over generated instances, against a bound.
inline void ratio_case(SuiteResult& r, const std::string& mechanism,
                       const std::vector<std::string>& generators, const Rational& bound,
                       std::size_t count, const GeneratorOptions& g, std::uint64_t seed,
                       const MechanismParams& params = {}) {
  const Mechanism& mech = find_mechanism(mechanism);
  std::optional<Rational> worst = Rational(1);
  for (std::size_t t = 0; t < count; ++t) {
    const std::string& gen = generators[t % generators.size()];
    GppInstance inst = generate(gen, seed + t, g);
    Rational opt = exact_opt(inst).value;
    Rational value = expected_welfare(mech, inst, params).value;
    auto ratio = approximation_ratio(opt, value);
    if (worst && (!ratio || *ratio > *worst)) worst = ratio;
    record(r, ratio && *ratio <= bound,
           mechanism + " on " + instance_tag(gen, seed + t) + ": optimum " + to_string(opt) +
               ", value " + to_string(value));
  }
  std::string label = generators.size() == 1 ? generators.front() : "mixed families";
  r.notes.push_back(mechanism + " on " + label + ": worst ratio " +
                    (worst ? to_string(*worst) : std::string("unbounded")) + " (bound " +
                    to_string(bound) + ", " + std::to_string(count) + " instances)");
}

inline void audit_case(SuiteResult& r, const std::string& mechanism,
                       const std::vector<std::string>& generators, AuditMode mode,
                       std::size_t count, const GeneratorOptions& g, std::uint64_t seed) {
  const Mechanism& mech = find_mechanism(mechanism);
  std::uint64_t deviations = 0;
  for (std::size_t t = 0; t < count; ++t) {
    const std::string& gen = generators[t % generators.size()];
    GppInstance inst = generate(gen, seed + t, g);
    AuditReport rep = audit_truthfulness(mech, inst, mode);
    deviations += rep.deviations_checked;
    bool complete = rep.deviations_checked == deviation_space(inst, rep.branches.size());
    std::string why = mechanism + " on " + instance_tag(gen, seed + t);
    if (rep.witness) {
      why += ": agent " + inst.agent_labels[rep.witness->agent] + " gains " +
             to_string(rep.witness->truthful_utility) + " -> " +
             to_string(rep.witness->misreport_utility);
    } else if (!complete) {
      why += ": deviation count does not match the closed form";
    }
    record(r, rep.truthful && complete, why);
  }
  r.notes.push_back(mechanism + ": " + std::to_string(count) + " instances, " +
                    std::to_string(deviations) + " deviations checked");
}

inline void fixture_case(SuiteResult& r, const std::string& fixture) {
  auto fixtures = builtin_fixtures();
  for (const CheckResult& c : find_fixture(fixtures, fixture).check()) {
    record(r, c.passed, fixture + ": " + c.name + " (" + c.detail + ")");
    if (c.passed) r.notes.push_back(fixture + ": " + c.name);
  }
}

inline Rational sum_values(const GppInstance& inst, const std::vector<ItemIndex>& items) {
  Rational v = 0;
  for (ItemIndex j : items) v += inst.items[j].value;
  return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Acceptance suites.
// ---------------------------------------------------------------------------

inline SuiteResult suite_matroid_optimality(const SuiteOptions& opt) {
  SuiteResult r{"1", "matroid-greedy-mul equals the exact optimum"};
  const auto g = detail::sizes(12, 6, 12);
  const std::size_t n = detail::scaled(500, opt);
  for (std::size_t t = 0; t < n; ++t) {
    const std::string gen = t % 2 ? "matroid-uniform-mul" : "matroid-partition-mul";
    const std::uint64_t seed = opt.seed * 1'000'003 + 100'000 + t;
    GppInstance inst = generate(gen, seed, g);
    Rational greedy = matroid::greedy_mul(inst, truthful_bids(inst)).total;
    Rational best = exact_opt(inst).value;
    detail::record(r, greedy == best, detail::instance_tag(gen, seed) + ": greedy " +
                                          to_string(greedy) + " vs optimum " + to_string(best));
  }
  r.notes.push_back(std::to_string(n) + " instances, up to 12 items");
  return r;
}

inline SuiteResult suite_ratio_bounds(const SuiteOptions& opt) {
  SuiteResult r{"2", "approximation ratio bounds"};
  const std::size_t n = detail::scaled(500, opt);
  const std::uint64_t base = opt.seed * 1'000'003 + 200'000;
  detail::ratio_case(r, "matroid-greedy-unit", {"matroid-partition-unit", "matroid-uniform-unit"},
                     Rational(2), n, detail::sizes(12, 6, 12), base);
  detail::ratio_case(r, "matching-greedy-unit", {"matching-unit"}, Rational(3), n,
                     detail::sizes(12, 6, 12), base + 10'000);
  std::uint64_t s = base + 20'000;
  for (const char* family : {"gap-job-value-invariant", "gap-job-capacity-invariant",
                             "gap-machine-value-invariant", "gap-machine-capacity-invariant"}) {
    detail::ratio_case(r, "gap-special-mix", {family}, Rational(4), n, detail::sizes(8, 6, 3),
                       s);
    s += 10'000;
  }
  MechanismParams p;
  detail::ratio_case(r, "gap-mech-1", {"gap-large"}, Rational(2 * p.gap.lambda), n,
                     detail::sizes(8, 6, 3, 3, p.gap.lambda), s, p);
  return r;
}

inline SuiteResult suite_universal_audits(const SuiteOptions& opt) {
  SuiteResult r{"3", "universal-mode truthfulness audits"};
  const std::size_t n = detail::scaled(200, opt);
  const auto g = detail::sizes(8, 6, 8);
  const std::vector<std::string> gap_families = {"gap", "gap-small", "gap-large"};
  struct Row {
    const char* mechanism;
    std::vector<std::string> generators;
  };
  const std::vector<Row> rows = {
      {"matroid-greedy-mul", {"matroid-partition-mul", "matroid-uniform-mul"}},
      {"matroid-greedy-unit", {"matroid-partition-unit", "matroid-uniform-unit"}},
      {"matching-greedy-unit", {"matching-unit"}},
      {"sm-greedy", gap_families},
      {"gap-mech-1", gap_families},
      {"gap-mech-2", gap_families},
      {"ks-unit-sample", {"knapsack-unit"}},
      {"ks-unit", {"knapsack-unit"}},
      {"gap-mech-3", gap_families},
      {"gap-main", gap_families},
  };
  std::uint64_t seed = opt.seed * 1'000'003 + 300'000;
  for (const Row& row : rows) {
    detail::audit_case(r, row.mechanism, row.generators, AuditMode::kUniversal, n, g, seed);
    seed += 10'000;
  }
  return r;
}

inline SuiteResult suite_expectation_audits(const SuiteOptions& opt) {
  SuiteResult r{"4", "expectation-mode truthfulness audits"};
  const std::size_t n = detail::scaled(100, opt);
  const auto g = detail::sizes(18, 6, 3);
  std::uint64_t seed = opt.seed * 1'000'003 + 400'000;
  for (const char* m : {"matching-alg", "ks-mul-large-agent", "ks-mul-sample", "ks-mul"}) {
    const Mechanism& mech = find_mechanism(m);
    detail::audit_case(r, m, {default_generator(mech.kind, mech.demand)}, AuditMode::kExpectation,
                       n, g, seed);
    seed += 10'000;
  }
  return r;
}

inline SuiteResult suite_counterexamples(const SuiteOptions&) {
  SuiteResult r{"5", "counterexample regressions"};
  for (const char* f : {"c2-gap", "figB-greedy", "figA-maxmatching"}) detail::fixture_case(r, f);
  return r;
}

inline SuiteResult suite_stability(const SuiteOptions& opt) {
  SuiteResult r{"6", "stability under virtual capacities; bounded improvement of A^T over A*"};
  const gap::Gap3Config cfg;
  const int lambda = cfg.lambda;
  const auto g = detail::sizes(8, 6, 3, 3, lambda);
  const std::uint64_t base = opt.seed * 1'000'003 + 600'000;
  const std::size_t n_stable = detail::scaled(500, opt);
  for (std::size_t t = 0; t < n_stable; ++t) {
    GppInstance inst = generate("gap-small", base + t, g);
    BidProfile small = gap::detail::small_pairs(inst, truthful_bids(inst), lambda);
    auto vcaps = stable::scaled_caps(inst, Rational(lambda - 1, lambda));
    auto a = stable::sm_da_alg(inst, small, vcaps);
    auto bp = stable::find_blocking_pair(inst, small, a, vcaps);
    detail::record(r, !bp, "blocking pair on " + detail::instance_tag("gap-small", base + t) +
                               (bp ? " (job " + inst.agent_labels[bp->job] + ", machine " +
                                         inst.machines[bp->machine].id + ")"
                                   : ""));
  }
  r.notes.push_back(std::to_string(n_stable) + " small-pair markets stable (lambda = " +
                    std::to_string(lambda) + ")");

  const std::size_t n_improve = detail::scaled(200, opt);
  std::size_t tapes = 0;
  for (std::size_t t = 0; t < n_improve; ++t) {
    const std::uint64_t seed = base + 100'000 + t;
    GppInstance inst = generate(t % 2 ? "gap" : "gap-small", seed, g);
    const BidProfile truth = truthful_bids(inst);
    const auto astar = gap::reference_astar(inst, truth, lambda);
    auto branches = enumerate_branches(
        [&](RandomSource& src) { return gap::gap_mech_3_trace(inst, truth, cfg, src); });
    bool ok = true;
    std::string why;
    for (const auto& b : branches) {
      ++tapes;
      const auto& at = b.result.sample_assignment;
      for (AgentIndex i = 0; i < inst.num_agents(); ++i) {
        if (b.result.in_sample[i] && at.job_value(i) < astar.job_value(i)) {
          ok = false;
          why = "part 1, job " + inst.agent_labels[i];
        }
      }
      for (MachineIndex k = 0; k < inst.machines.size(); ++k) {
        if (at.machine_value(k) * (lambda - 1) > astar.machine_value(k) * lambda) {
          ok = false;
          why = "part 2, machine " + inst.machines[k].id;
        }
      }
    }
    detail::record(r, ok, "bounded improvement fails on " + detail::instance_tag("gap", seed) +
                              ": " + why);
  }
  r.notes.push_back(std::to_string(n_improve) + " markets, " + std::to_string(tapes) +
                    " shared tapes compared against A*");
  return r;
}

inline SuiteResult suite_threshold_lemma(const SuiteOptions& opt) {
  SuiteResult r{"7", "threshold lemma: high-density optimum items carry half the value"};
  const std::size_t n = detail::scaled(1000, opt);
  const auto g = detail::sizes(12, 6, 12);
  const std::uint64_t base = opt.seed * 1'000'003 + 700'000;
  for (std::size_t t = 0; t < n; ++t) {
    const std::string gen = t % 2 ? "knapsack-unit" : "knapsack-mul";
    GppInstance inst = generate(gen, base + t, g);
    OptResult best = exact_opt(inst);
    const Rational& C = inst.knapsack_capacity;
    Rational dense = 0;
    for (ItemIndex j : best.witness) {
      // v_j / c_j >= v(OPT) / (2C)
      if (inst.items[j].value * 2 * C >= best.value * inst.capacity(j)) dense += inst.items[j].value;
    }
    detail::record(r, 2 * dense >= best.value,
                   detail::instance_tag(gen, base + t) + ": dense part " + to_string(dense) +
                       " of optimum " + to_string(best.value));
  }
  r.notes.push_back(std::to_string(n) + " knapsack instances against the exact optimum");
  return r;
}

inline SuiteResult suite_sampling_lemma(const SuiteOptions& opt) {
  SuiteResult r{"8", "sampling lemma: P(a/3 < b < 2a/3) >= 3/4"};
  const Rational delta1(1, 36);
  const std::size_t n = detail::scaled(200, opt);
  detail::Dice dice(opt.seed * 1'000'003 + 800'000);
  Rational worst = 1;
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<Rational> values;
    const auto len = dice.between(37, 60);
    for (std::int64_t k = 0; k < len; ++k) {
      values.push_back(dice.chance(10) ? Rational(0) : dice.value(1, 9));
    }
    // Enforce the precondition a_1 < a / 36 by padding with ones if needed.
    auto top = [&] { return *std::max_element(values.begin(), values.end()); };
    auto total = [&] {
      Rational a = 0;
      for (const auto& v : values) a += v;
      return a;
    };
    while (!(top() < delta1 * total())) values.push_back(Rational(1));
    SamplingLemmaResult res = check_sampling_lemma(values, delta1);
    if (res.probability < worst) worst = res.probability;
    detail::record(r, res.verdict == LemmaVerdict::kPass,
                   "input " + std::to_string(t) + ": probability " + to_string(res.probability));
  }
  r.notes.push_back(std::to_string(n) + " inputs; smallest probability " + to_string(worst) +
                    " ~ " + std::to_string(to_double(worst)));
  return r;
}

inline SuiteResult suite_mech2_vs_astar(const SuiteOptions& opt) {
  SuiteResult r{"9", "gap-mech-2 keeps half of the truncated reference assignment"};
  const gap::Gap3Config cfg;
  const std::size_t n = detail::scaled(200, opt);
  const auto g = detail::sizes(8, 6, 3, 3, cfg.lambda);
  const std::uint64_t base = opt.seed * 1'000'003 + 900'000;
  for (std::size_t t = 0; t < n; ++t) {
    GppInstance inst = generate("gap-small", base + t, g);
    const BidProfile truth = truthful_bids(inst);
    Rational mech2 = gap::gap_mech_2(inst, truth, cfg.lambda).total_value();
    Rational trunc = gap::truncate_top_values(inst, gap::reference_astar(inst, truth, cfg.lambda),
                                              cfg.lambda)
                         .total_value();
    detail::record(r, 2 * mech2 >= trunc,
                   detail::instance_tag("gap-small", base + t) + ": gap-mech-2 " +
                       to_string(mech2) + ", truncated A* " + to_string(trunc));
  }
  r.notes.push_back(std::to_string(n) + " small-pair markets");
  return r;
}

inline SuiteResult suite_fixture_values(const SuiteOptions&) {
  SuiteResult r{"10", "lower-bound matching fixture values"};
  const Rational eps(1, 10);
  GppInstance inst = validate_instance(lowerbound_matching_spec(eps));
  Rational best = exact_opt(inst).value;
  detail::record(r, best == Rational(21, 10), "exact optimum " + to_string(best));
  std::vector<ItemIndex> diag = {*inst.find_item("t1u1"), *inst.find_item("t2u2")};
  std::sort(diag.begin(), diag.end());
  Rational value = make_outcome(inst, diag).total;
  detail::record(r, value == Rational(21, 10), "value of {(t1,u1),(t2,u2)} " + to_string(value));
  r.notes.push_back("optimum " + to_string(best) + ", diagonal " + to_string(value));
  return r;
}

inline SuiteResult suite_replay_determinism(const SuiteOptions& opt) {
  SuiteResult r{"11", "replay from emitted tape is byte-identical"};
  const std::size_t n = detail::scaled(20, opt);
  const std::uint64_t base = opt.seed * 1'000'003 + 1'100'000;
  const auto g = detail::sizes(10, 6, 5);
  for (const Mechanism& mech : registry()) {
    const std::string gen = default_generator(mech.kind, mech.demand);
    for (std::size_t t = 0; t < n; ++t) {
      GppInstance inst = generate(gen, base + t, g);
      const BidProfile truth = truthful_bids(inst);
      auto emit = [&](RandomSource& src) {
        Outcome out = mech(inst, truth, {}, src);
        return io::dump(io::run_json(inst, mech.name, out, src.transcript()));
      };
      SeededSource first(base + t), second(base + t);
      const std::string a = emit(first);
      const std::string b = emit(second);
      FixedSource replay(io::tape_from_json(io::Json::parse(a)));
      const std::string c = emit(replay);
      detail::record(r, a == b && a == c, mech.name + " on " + detail::instance_tag(gen, base + t));
    }
  }
  r.notes.push_back(std::to_string(registry().size()) + " mechanisms x " + std::to_string(n) +
                    " seeded runs replayed");
  return r;
}

inline const std::vector<Suite>& acceptance_suites() {
  static const std::vector<Suite> suites = {
      {"1", "matroid optimality", suite_matroid_optimality},
      {"2", "ratio bounds", suite_ratio_bounds},
      {"3", "universal truthfulness audits", suite_universal_audits},
      {"4", "expectation truthfulness audits", suite_expectation_audits},
      {"5", "counterexample regressions", suite_counterexamples},
      {"6", "stability and bounded improvement", suite_stability},
      {"7", "threshold lemma", suite_threshold_lemma},
      {"8", "sampling lemma", suite_sampling_lemma},
      {"9", "gap-mech-2 vs truncated A*", suite_mech2_vs_astar},
      {"10", "fixture values", suite_fixture_values},
      {"11", "replay determinism", suite_replay_determinism},
  };
  return suites;
}

// ---------------------------------------------------------------------------
// Further properties checked by paper-check.
// ---------------------------------------------------------------------------

inline SuiteResult suite_fixture_regressions(const SuiteOptions&) {
  SuiteResult r{"fixtures", "every built-in fixture regression"};
  for (const Fixture& f : builtin_fixtures()) detail::fixture_case(r, f.name);
  return r;
}

inline SuiteResult suite_astar_approx(const SuiteOptions& opt) {
  SuiteResult r{"astar", "(2 + 1/(lambda-1)) v(A*) >= optimum over small pairs"};
  const gap::Gap3Config cfg;
  const std::size_t n = detail::scaled(200, opt);
  const auto g = detail::sizes(8, 6, 3, 3, cfg.lambda);
  const std::uint64_t base = opt.seed * 1'000'003 + 1'200'000;
  const Rational factor = 2 + Rational(1, cfg.lambda - 1);
  for (std::size_t t = 0; t < n; ++t) {
    const std::string gen = t % 2 ? "gap" : "gap-small";
    GppInstance inst = generate(gen, base + t, g);
    const BidProfile truth = truthful_bids(inst);
    Rational astar = gap::reference_astar(inst, truth, cfg.lambda).total_value();
    Rational best = exact_opt(inst, reported_items(gap::detail::small_pairs(inst, truth, cfg.lambda)))
                        .value;
    detail::record(r, factor * astar >= best,
                   detail::instance_tag(gen, base + t) + ": A* " + to_string(astar) +
                       ", small optimum " + to_string(best));
  }
  r.notes.push_back(std::to_string(n) + " markets");
  return r;
}

inline SuiteResult suite_proposal_order(const SuiteOptions& opt) {
  SuiteResult r{"order", "deferred acceptance ignores proposal order (small pairs, virtual caps)"};
  const gap::Gap3Config cfg;
  const std::size_t n = detail::scaled(200, opt);
  const auto g = detail::sizes(8, 6, 3, 3, cfg.lambda);
  const std::uint64_t base = opt.seed * 1'000'003 + 1'300'000;
  detail::Dice dice(base);
  for (std::size_t t = 0; t < n; ++t) {
    GppInstance inst = generate("gap-small", base + t, g);
    BidProfile small = gap::detail::small_pairs(inst, truthful_bids(inst), cfg.lambda);
    auto vcaps = stable::scaled_caps(inst, Rational(cfg.lambda - 1, cfg.lambda));
    auto canonical = stable::sm_da_alg(inst, small, vcaps);
    bool same = true;
    for (int rep = 0; rep < 3; ++rep) {
      stable::ProposalChooser chooser = [&](const std::vector<ItemIndex>& free) {
        return static_cast<std::size_t>(dice.between(0, static_cast<std::int64_t>(free.size()) - 1));
      };
      same = same && stable::sm_da_alg(inst, small, vcaps, chooser) == canonical;
    }
    detail::record(r, same, detail::instance_tag("gap-small", base + t));
  }
  r.notes.push_back(std::to_string(n) + " markets x 3 random proposal orders");
  return r;
}

inline SuiteResult suite_mech3_discipline(const SuiteOptions& opt) {
  SuiteResult r{"mech3", "gap-mech-3 thresholds, capacities and sample exclusion on every tape"};
  const gap::Gap3Config cfg;
  const std::size_t n = detail::scaled(200, opt);
  const auto g = detail::sizes(8, 6, 3, 3, cfg.lambda);
  const std::uint64_t base = opt.seed * 1'000'003 + 1'400'000;
  for (std::size_t t = 0; t < n; ++t) {
    GppInstance inst = generate(t % 2 ? "gap" : "gap-small", base + t, g);
    const BidProfile truth = truthful_bids(inst);
    auto branches = enumerate_branches(
        [&](RandomSource& src) { return gap::gap_mech_3_trace(inst, truth, cfg, src); });
    bool ok = true;
    for (const auto& b : branches) {
      const auto& tr = b.result;
      for (MachineIndex k = 0; k < inst.machines.size(); ++k) {
        const Rational& cap = inst.machines[k].capacity;
        ok = ok && tr.thresholds[k] == cfg.mu * tr.sample_assignment.machine_value(k) / cap;
        ok = ok && tr.assignment.machine_load(k) <= cap;
        for (ItemIndex p : tr.assignment.on_machine(k)) {
          ok = ok && !tr.in_sample[*inst.items[p].owner];
          ok = ok && inst.items[p].value >= tr.thresholds[k] * inst.capacity(p);
          ok = ok && inst.capacity(p) * cfg.lambda <= cap;
        }
      }
    }
    detail::record(r, ok, detail::instance_tag("gap", base + t));
  }
  r.notes.push_back(std::to_string(n) + " markets, every sample tape");
  return r;
}

inline SuiteResult suite_gap_main_ratio(const SuiteOptions& opt) {
  SuiteResult r{"gap-main", "gap-main expected value against the exact optimum"};
  const std::size_t n = detail::scaled(100, opt);
  const auto g = detail::sizes(8, 6, 4, 4);
  const Mechanism& mech = find_mechanism("gap-main");
  const std::uint64_t base = opt.seed * 1'000'003 + 1'500'000;
  std::optional<Rational> worst = Rational(1);
  for (std::size_t t = 0; t < n; ++t) {
    GppInstance inst = generate("gap", base + t, g);
    auto ratio = approximation_ratio(exact_opt(inst).value, expected_welfare(mech, inst).value);
    if (worst && (!ratio || *ratio > *worst)) worst = ratio;
    detail::record(r, ratio.has_value(), detail::instance_tag("gap", base + t) + ": zero value");
  }
  r.notes.push_back("worst ratio " + (worst ? to_string(*worst) : std::string("unbounded")) +
                    " over " + std::to_string(n) + " markets (the proven constant is loose)");
  return r;
}

inline SuiteResult suite_sampling_examples(const SuiteOptions&) {
  SuiteResult r{"lemma-examples", "sampling lemma reference values"};
  // Binomial(40, 1/2) mass on 14..26, computed independently.
  BigInt hits = 0, c = 1;
  for (int k = 0; k <= 40; ++k) {
    if (k >= 14 && k <= 26) hits += c;
    c = c * (40 - k) / (k + 1);
  }
  auto res = check_sampling_lemma(std::vector<Rational>(40, Rational(1)), Rational(1, 36));
  detail::record(r, res.probability == Rational(hits, BigInt(1) << 40) &&
                        res.verdict == LemmaVerdict::kPass,
                 "40 equal values: " + to_string(res.probability));
  auto half = check_sampling_lemma({Rational(2), Rational(1), Rational(1)}, Rational(1, 36));
  detail::record(r, half.verdict == LemmaVerdict::kInapplicable, "a1 = a/2 must be inapplicable");
  auto zeros = check_sampling_lemma({Rational(0), Rational(0)}, Rational(1, 36));
  detail::record(r, zeros.verdict == LemmaVerdict::kInapplicable, "all zeros must be inapplicable");
  return r;
}

inline SuiteResult suite_registry_coverage(const SuiteOptions& opt) {
  SuiteResult r{"registry", "every registered mechanism runs and returns checked outcomes"};
  const std::size_t n = detail::scaled(20, opt);
  const std::uint64_t base = opt.seed * 1'000'003 + 1'600'000;
  for (const Mechanism& mech : registry()) {
    const std::string gen = default_generator(mech.kind, mech.demand);
    for (std::size_t t = 0; t < n; ++t) {
      GppInstance inst = generate(gen, base + t);
      bool ok = true;
      try {
        (void)expected_welfare(mech, inst);  // outcome checks run inside
      } catch (const std::exception& e) {
        ok = false;
        r.notes.push_back(mech.name + ": " + e.what());
      }
      detail::record(r, ok, mech.name + " on " + detail::instance_tag(gen, base + t));
    }
  }
  return r;
}

inline const std::vector<Suite>& property_suites() {
  static const std::vector<Suite> suites = {
      {"fixtures", "fixture regressions", suite_fixture_regressions},
      {"astar", "reference assignment approximation", suite_astar_approx},
      {"order", "proposal-order independence", suite_proposal_order},
      {"mech3", "gap-mech-3 threshold discipline", suite_mech3_discipline},
      {"gap-main", "gap-main ratio", suite_gap_main_ratio},
      {"lemma-examples", "sampling lemma examples", suite_sampling_examples},
      {"registry", "registry coverage", suite_registry_coverage},
  };
  return suites;
}

}  // namespace gpp::audit

#endif  // GPP_AUDIT_SUITES_HPP_
