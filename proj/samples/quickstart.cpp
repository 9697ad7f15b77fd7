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

// Loads an instance, runs a mechanism, audits it and compares with the
// exact optimum.
//
//   gpp_quickstart samples/c2.json sm-da

#include <iostream>

#include "gpp/audit/exact_opt.hpp"
#include "gpp/audit/registry.hpp"
#include "gpp/audit/truthfulness.hpp"
#include "gpp/io/json.hpp"

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: " << argv[0] << " <instance.json> <mechanism>\n";
    return 2;
  }
  using namespace gpp;
  try {
    GppInstance inst = io::load_instance(argv[1]);
    const audit::Mechanism& mech = audit::find_mechanism(argv[2]);

    SeededSource tape(2024);
    Outcome out = mech(inst, truthful_bids(inst), {}, tape);
    std::cout << io::dump(io::run_json(inst, mech.name, out, tape.transcript()));

    audit::AuditReport report = audit::audit_truthfulness(mech, inst, mech.default_mode());
    std::cout << "optimum:  " << to_string(audit::exact_opt(inst).value) << "\n"
              << "expected: " << to_string(report.expected_total) << "\n"
              << "audit:    " << (report.truthful ? "truthful" : "manipulable") << " after "
              << report.deviations_checked << " deviations\n";
    if (report.witness) {
      std::cout << "witness:  agent " << inst.agent_labels[report.witness->agent] << " "
                << to_string(report.witness->truthful_utility) << " -> "
                << to_string(report.witness->misreport_utility) << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
