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

// Command-line front end: run / audit / opt / bench / paper-check.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "gpp/audit/bench.hpp"
#include "gpp/audit/exact_opt.hpp"
#include "gpp/audit/registry.hpp"
#include "gpp/audit/suites.hpp"
#include "gpp/audit/truthfulness.hpp"
#include "gpp/io/json.hpp"

namespace {

using namespace gpp;

enum ExitCode { kOk = 0, kUsage = 2, kInstance = 3, kGate = 4, kRegression = 5 };

struct Options {
  std::string instance;
  std::string mechanism;
  std::uint64_t seed = 1;
  std::string tape;
  std::optional<int> lambda;
  std::string mu;
  std::size_t trials = 100;
  std::string generator;
  std::string out;
  std::optional<std::size_t> max_items;
  std::string mode;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw UsageError("cannot write \"" + opt.out + "\"");
  f << text;
}

audit::MechanismParams params_for(const audit::Mechanism& mech, const Options& opt) {
  audit::MechanismParams p;
  if (opt.lambda) {
    p.ks_lambda = *opt.lambda;
    p.gap.lambda = *opt.lambda;
  }
  if (!opt.mu.empty()) {
    try {
      p.gap.mu = parse_rational(opt.mu);
    } catch (const InstanceError& e) {
      throw UsageError(std::string("--mu: ") + e.what());
    }
  }
  if (mech.kind == Kind::kGap) p.gap.validate();
  if (mech.kind == Kind::kKnapsack && p.ks_lambda < 2) {
    throw UsageError("knapsack lambda must be an integer >= 2");
  }
  return p;
}

std::string instance_id(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

int cmd_run(const Options& opt) {
  const audit::Mechanism& mech = audit::find_mechanism(opt.mechanism);
  const auto params = params_for(mech, opt);
  GppInstance inst = io::load_instance(opt.instance);
  const BidProfile truth = truthful_bids(inst);
  Outcome out;
  TapeTranscript tape;
  if (!opt.tape.empty()) {
    FixedSource src(io::load_tape(opt.tape));
    try {
      out = mech(inst, truth, params, src);
    } catch (const MissingDraw& e) {
      throw UsageError(std::string("tape does not fit this run: ") + e.what());
    }
    tape = src.transcript();
  } else {
    SeededSource src(opt.seed);
    out = mech(inst, truth, params, src);
    tape = src.transcript();
  }
  emit(opt, io::dump(io::run_json(inst, mech.name, out, tape)));
  return kOk;
}

int cmd_audit(const Options& opt) {
  const audit::Mechanism& mech = audit::find_mechanism(opt.mechanism);
  const auto params = params_for(mech, opt);
  GppInstance inst = io::load_instance(opt.instance);
  audit::AuditGates gates;
  if (opt.max_items) gates.max_items_per_agent = *opt.max_items;
  const audit::AuditMode mode =
      opt.mode.empty() ? mech.default_mode() : audit::parse_audit_mode(opt.mode);
  audit::AuditReport report =
      audit::audit_truthfulness(mech, inst, mode, params, gates, instance_id(opt.instance));
  if (report.witness && !audit::verify_witness(mech, inst, report, params, gates)) {
    std::cerr << "witness failed re-verification\n";
    return kRegression;
  }
  emit(opt, io::dump(io::audit_json(inst, report)));
  return kOk;
}

int cmd_opt(const Options& opt) {
  GppInstance inst = io::load_instance(opt.instance);
  audit::OptGates gates;
  if (opt.max_items) gates.max_enumeration_items = *opt.max_items;
  emit(opt, io::dump(io::opt_json(inst, audit::exact_opt(inst, std::nullopt, gates))));
  return kOk;
}

int cmd_bench(const Options& opt) {
  const audit::Mechanism& mech = audit::find_mechanism(opt.mechanism);
  const auto params = params_for(mech, opt);
  audit::BenchConfig cfg;
  cfg.generator = opt.generator;
  cfg.trials = opt.trials;
  cfg.seed = opt.seed;
  if (opt.max_items) cfg.sizes.max_items = *opt.max_items;
  if (opt.lambda) cfg.sizes.lambda = *opt.lambda;
  auto records = audit::bench(mech, cfg, params);
  std::ostringstream csv;
  audit::write_csv(csv, records);
  emit(opt, csv.str());
  auto s = audit::summarize(records);
  std::cerr << mech.name << ": " << s.measured << " measured, " << s.skipped << " skipped, worst ratio "
            << (s.unbounded ? std::string("unbounded")
                            : s.worst_ratio ? to_string(*s.worst_ratio) : std::string("-"))
            << ", mean ratio " << s.mean_ratio << "\n";
  return kOk;
}

int cmd_paper_check(const Options& opt) {
  audit::SuiteOptions so;
  so.seed = opt.seed;
  std::ostringstream log;
  bool all = true;
  auto run = [&](const std::vector<audit::Suite>& suites, const char* group) {
    for (const audit::Suite& s : suites) {
      audit::SuiteResult r = s.run(so);
      all = all && r.passed;
      log << (r.passed ? "PASS" : "FAIL") << "  [" << group << " " << r.id << "] " << r.title
          << "  (" << r.cases << " cases, " << r.failures << " failures)\n";
      for (const auto& n : r.notes) log << "      " << n << "\n";
    }
  };
  run(audit::acceptance_suites(), "criterion");
  run(audit::property_suites(), "property");
  log << (all ? "paper-check: all suites passed\n" : "paper-check: FAILURES\n");
  emit(opt, log.str());
  return all ? kOk : kRegression;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truthful packing mechanisms without money: run, audit, optimum, bench"};
  app.require_subcommand(1);
  std::string names;
  for (const auto& m : audit::registry()) names += "  " + m.name + "  - " + m.summary + "\n";
  app.footer("Mechanisms:\n" + names);

  Options opt;
  auto add_mechanism = [&](CLI::App* c) {
    c->add_option("--mechanism", opt.mechanism, "mechanism name")->required();
  };
  auto add_params = [&](CLI::App* c) {
    c->add_option("--lambda", opt.lambda, "lambda (knapsack >= 2; gap > 2)");
    c->add_option("--mu", opt.mu, "gap mu as a rational, e.g. 1/6");
  };
  auto add_out = [&](CLI::App* c) { c->add_option("--out", opt.out, "output file (default stdout)"); };

  auto* run = app.add_subcommand("run", "run a mechanism on truthful reports");
  run->add_option("--instance", opt.instance, "instance JSON")->required();
  add_mechanism(run);
  auto* seed = run->add_option("--seed", opt.seed, "seed for random draws");
  run->add_option("--tape", opt.tape, "replay draws from a tape or run JSON")->excludes(seed);
  add_params(run);
  add_out(run);

  auto* aud = app.add_subcommand("audit", "exhaustive subset-misreport truthfulness audit");
  aud->add_option("--instance", opt.instance, "instance JSON")->required();
  add_mechanism(aud);
  aud->add_option("--mode", opt.mode, "universal or expectation (default per mechanism)")
      ->check(CLI::IsMember({"universal", "expectation"}));
  aud->add_option("--max-items", opt.max_items, "per-agent item limit (default 10)");
  add_params(aud);
  add_out(aud);

  auto* op = app.add_subcommand("opt", "exact optimum");
  op->add_option("--instance", opt.instance, "instance JSON")->required();
  op->add_option("--max-items", opt.max_items, "enumeration item limit (default 20)");
  add_out(op);

  auto* ben = app.add_subcommand("bench", "exact expected value against the optimum on generated instances");
  add_mechanism(ben);
  ben->add_option("--generator", opt.generator, "instance family (default per mechanism)");
  ben->add_option("--trials", opt.trials, "number of instances");
  ben->add_option("--seed", opt.seed, "first generator seed");
  ben->add_option("--max-items", opt.max_items, "generated instance size limit (default 8)");
  add_params(ben);
  add_out(ben);

  auto* pc = app.add_subcommand("paper-check", "fixture regressions and every property suite");
  pc->add_option("--seed", opt.seed, "suite seed");
  add_out(pc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(opt);
    if (*aud) return cmd_audit(opt);
    if (*op) return cmd_opt(opt);
    if (*ben) return cmd_bench(opt);
    if (*pc) return cmd_paper_check(opt);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InstanceError& e) {
    std::cerr << "instance error: " << e.what() << "\n";
    return kInstance;
  } catch (const GateExceeded& e) {
    std::cerr << "size gate exceeded: " << e.what() << "\n";
    return kGate;
  }
  return kUsage;
}
