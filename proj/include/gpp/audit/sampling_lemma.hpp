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

#ifndef GPP_AUDIT_SAMPLING_LEMMA_HPP_
#define GPP_AUDIT_SAMPLING_LEMMA_HPP_

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

#include "gpp/core/errors.hpp"
#include "gpp/core/rational.hpp"

namespace gpp::audit {

enum class LemmaVerdict { kPass, kFail, kInapplicable };

struct SamplingLemmaResult {
  Rational probability = 0;  // P(a/3 < b < 2a/3); zero when inapplicable
  LemmaVerdict verdict = LemmaVerdict::kInapplicable;
};

inline constexpr std::size_t kMaxDistinctSums = 1'000'000;

// Each value joins the random subset independently with probability 1/2;
// b is the subset's sum and a the total. Computes P(a/3 < b < 2a/3) exactly
// from the subset-sum distribution (counts over 2^l subsets).
inline SamplingLemmaResult check_sampling_lemma(std::vector<Rational> values,
                                                const Rational& delta1) {
  Rational a = 0;
  for (const Rational& v : values) {
    if (v < 0) throw InstanceError("sampling lemma needs non-negative values");
    a += v;
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  SamplingLemmaResult result;
  if (values.empty() || !(values.front() < delta1 * a)) return result;  // inapplicable

  // Scale to integers so sums index a dense table when it is small enough.
  BigInt scale = 1;
  for (const Rational& v : values) scale = boost::multiprecision::lcm(scale, denominator(v));
  const BigInt total = numerator(Rational(a * scale));
  BigInt hits = 0;
  if (total <= BigInt(kMaxDistinctSums)) {
    const auto n = total.convert_to<std::size_t>();
    std::vector<BigInt> counts(n + 1, BigInt(0));
    counts[0] = 1;
    std::size_t reach = 0;
    for (const Rational& v : values) {
      const auto w = numerator(Rational(v * scale)).template convert_to<std::size_t>();
      for (std::size_t s = reach + 1; s-- > 0;) {
        if (counts[s] != 0) counts[s + w] += counts[s];
      }
      reach += w;
    }
    // a/3 < s/scale < 2a/3  <=>  total < 3s < 2 total
    for (std::size_t s = 0; s <= n; ++s) {
      if (3 * BigInt(s) > total && 3 * BigInt(s) < 2 * total) hits += counts[s];
    }
  } else {
    std::map<Rational, BigInt> counts{{Rational(0), BigInt(1)}};
    for (const Rational& v : values) {
      std::map<Rational, BigInt> next = counts;
      for (const auto& [sum, n] : counts) next[sum + v] += n;
      counts = std::move(next);
      if (counts.size() > kMaxDistinctSums) {
        throw GateExceeded("subset-sum distribution has too many distinct sums");
      }
    }
    const Rational lo = a / 3, hi = 2 * a / 3;
    for (const auto& [sum, n] : counts) {
      if (sum > lo && sum < hi) hits += n;
    }
  }
  result.probability = Rational(hits, BigInt(1) << values.size());
  result.verdict = result.probability >= Rational(3, 4) ? LemmaVerdict::kPass : LemmaVerdict::kFail;
  return result;
}

}  // namespace gpp::audit

#endif  // GPP_AUDIT_SAMPLING_LEMMA_HPP_
