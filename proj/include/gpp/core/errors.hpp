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

#ifndef GPP_CORE_ERRORS_HPP_
#define GPP_CORE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace gpp {

// Malformed or inconsistent instance, bid profile, outcome or tape.
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact oracle or auditor was asked to go beyond its enumeration budget.
// Never answered approximately.
class GateExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A fixed tape was asked for a draw it does not hold.
class MissingDraw : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad mechanism name or parameter combination.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gpp

#endif  // GPP_CORE_ERRORS_HPP_
