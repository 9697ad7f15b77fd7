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

// Acceptance run: one PASS/FAIL line per criterion, exact comparisons
// throughout. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <iostream>

#include "gpp/audit/suites.hpp"

int main() {
  using namespace gpp::audit;
  SuiteOptions opt;  // full sizes
  bool all = true;
  for (const Suite& s : acceptance_suites()) {
    const auto start = std::chrono::steady_clock::now();
    SuiteResult r = s.run(opt);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && r.passed;
    std::cout << "criterion " << r.id << ": " << (r.passed ? "PASS" : "FAIL") << "  " << r.title
              << "  [" << r.cases << " cases, " << r.failures << " failures, " << secs << " s]\n";
    for (const auto& n : r.notes) std::cout << "    " << n << "\n";
  }
  std::cout << (all ? "all acceptance criteria passed" : "ACCEPTANCE FAILURES") << std::endl;
  return all ? 0 : 1;
}
