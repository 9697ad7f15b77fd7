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

#ifndef GPP_CORE_RATIONAL_HPP_
#define GPP_CORE_RATIONAL_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "gpp/core/errors.hpp"

namespace gpp {

// Arbitrary-precision rational, always stored in lowest terms with a positive
// denominator. Every value, capacity, threshold and probability in the
// library is a Rational; no mechanism path touches floating point.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw InstanceError("rational with zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

// Accepts "7", "-3", "1/10", "2.5", "-0.125". Anything else is malformed.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw InstanceError("malformed rational \"" + std::string(text) + "\"");
  };
  auto parse_int = [&](std::string_view s, bool allow_sign) -> BigInt {
    if (s.empty()) fail();
    std::size_t pos = 0;
    bool negative = false;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) {
      negative = s[0] == '-';
      pos = 1;
    }
    if (pos == s.size()) fail();
    BigInt out = 0;
    for (; pos < s.size(); ++pos) {
      if (s[pos] < '0' || s[pos] > '9') fail();
      out = out * 10 + (s[pos] - '0');
    }
    return negative ? BigInt(-out) : out;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_int(text.substr(0, slash), true);
    BigInt den = parse_int(text.substr(slash + 1), false);
    if (den == 0) fail();
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) {
      whole.remove_prefix(1);
    }
    if (whole.empty() && frac.empty()) fail();
    BigInt int_part = whole.empty() ? BigInt(0) : parse_int(whole, false);
    BigInt frac_part = frac.empty() ? BigInt(0) : parse_int(frac, false);
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational r(int_part * scale + frac_part, scale);
    return negative ? Rational(-r) : r;
  }
  return Rational(parse_int(text, true));
}

// Canonical text form: "n" for integers, "n/d" otherwise.
inline std::string to_string(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Floating view, for human-facing summaries only.
inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace gpp

#endif  // GPP_CORE_RATIONAL_HPP_
