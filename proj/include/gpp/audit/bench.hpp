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

#ifndef GPP_AUDIT_BENCH_HPP_
#define GPP_AUDIT_BENCH_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gpp/audit/exact_opt.hpp"
#include "gpp/audit/generators.hpp"
#include "gpp/audit/registry.hpp"

namespace gpp::audit {

struct Expectation {
  Rational value = 0;
  std::size_t branches = 0;
};

// Exact expected welfare of a mechanism on truthful reports.
inline Expectation expected_welfare(const Mechanism& mech, const GppInstance& inst,
                                    const MechanismParams& params = {},
                                    std::size_t max_branches = 1'000'000) {
  const BidProfile truth = truthful_bids(inst);
  auto branches = enumerate_branches(
      [&](RandomSource& src) { return mech(inst, truth, params, src).total; }, max_branches);
  Expectation e;
  e.branches = branches.size();
  for (const auto& b : branches) e.value += b.probability * b.result;
  return e;
}

// optimum / value; nullopt means unbounded (value 0, optimum positive).
inline std::optional<Rational> approximation_ratio(const Rational& optimum, const Rational& value) {
  if (value > 0) return Rational(optimum / value);
  if (optimum == 0) return Rational(1);
  return std::nullopt;
}

struct BenchRecord {
  std::string instance_id;
  std::string mechanism;
  std::uint64_t seed = 0;
  bool skipped = false;
  std::string skip_reason;
  Rational expected_value = 0;
  Rational optimum = 0;
  std::optional<Rational> ratio;
  std::size_t branches = 0;
  double wall_ms = 0;  // not part of the CSV; varies between runs
};

struct BenchSummary {
  std::size_t measured = 0;
  std::size_t skipped = 0;
  bool unbounded = false;  // some instance had value 0 and a positive optimum
  std::optional<Rational> worst_ratio;
  double mean_ratio = 0;  // over bounded ratios
};

struct BenchConfig {
  std::string generator;  // empty: the mechanism's default family
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  GeneratorOptions sizes;
  OptGates opt_gates;
  std::size_t max_branches = 1'000'000;
};

inline std::vector<BenchRecord> bench(const Mechanism& mech, const BenchConfig& cfg,
                                      const MechanismParams& params = {}) {
  const std::string generator =
      cfg.generator.empty() ? default_generator(mech.kind, mech.demand) : cfg.generator;
  std::vector<BenchRecord> out;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    BenchRecord r;
    r.mechanism = mech.name;
    r.seed = cfg.seed + t;
    r.instance_id = generator + "-" + std::to_string(r.seed);
    const auto start = std::chrono::steady_clock::now();
    GppInstance inst = generate(generator, r.seed, cfg.sizes);
    if (!mech.accepts(inst)) {
      throw UsageError("generator " + generator + " does not produce instances for " + mech.name);
    }
    try {
      r.optimum = exact_opt(inst, std::nullopt, cfg.opt_gates).value;
      Expectation e = expected_welfare(mech, inst, params, cfg.max_branches);
      r.expected_value = e.value;
      r.branches = e.branches;
      r.ratio = approximation_ratio(r.optimum, r.expected_value);
    } catch (const GateExceeded& e) {
      r.skipped = true;
      r.skip_reason = e.what();
    }
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
    out.push_back(std::move(r));
  }
  return out;
}

inline BenchSummary summarize(const std::vector<BenchRecord>& records) {
  BenchSummary s;
  double sum = 0;
  std::size_t bounded = 0;
  for (const BenchRecord& r : records) {
    if (r.skipped) {
      ++s.skipped;
      continue;
    }
    ++s.measured;
    if (!r.ratio) {
      s.unbounded = true;
      continue;
    }
    if (!s.worst_ratio || *r.ratio > *s.worst_ratio) s.worst_ratio = r.ratio;
    sum += to_double(*r.ratio);
    ++bounded;
  }
  if (bounded) s.mean_ratio = sum / static_cast<double>(bounded);
  return s;
}

inline void write_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
  os << "instance_id,mechanism,expected_value,optimum,ratio,branches,skipped,seed\n";
  for (const BenchRecord& r : records) {
    os << r.instance_id << ',' << r.mechanism << ',';
    if (r.skipped) {
      os << ",,," << r.branches << ",1," << r.seed << '\n';
      continue;
    }
    os << to_string(r.expected_value) << ',' << to_string(r.optimum) << ','
       << (r.ratio ? to_string(*r.ratio) : std::string("inf")) << ',' << r.branches << ",0,"
       << r.seed << '\n';
  }
}

}  // namespace gpp::audit

#endif  // GPP_AUDIT_BENCH_HPP_
