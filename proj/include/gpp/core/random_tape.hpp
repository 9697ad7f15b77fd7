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

#ifndef GPP_CORE_RANDOM_TAPE_HPP_
#define GPP_CORE_RANDOM_TAPE_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gpp/core/errors.hpp"
#include "gpp/core/rational.hpp"

namespace gpp {

// One random draw requested by a mechanism. Draws are keyed by what they
// decide ("sample/3" is agent 3's sampling bit, "mix" the top-level branch),
// so two runs on different bids can share the draws that matter to both.
struct Draw {
  enum class Type { kBit, kChoice };

  std::string key;
  Type type = Type::kBit;
  Rational p = 0;         // bit: probability of value 1
  std::size_t arity = 2;  // choice: number of outcomes
  std::size_t value = 0;

  bool operator==(const Draw&) const = default;

  Rational probability() const {
    if (type == Type::kBit) return value ? p : Rational(1 - p);
    return Rational(1, static_cast<long long>(arity));
  }
};

struct TapeTranscript {
  std::vector<Draw> draws;

  bool operator==(const TapeTranscript&) const = default;

  Rational probability() const {
    Rational out = 1;
    for (const Draw& d : draws) out *= d.probability();
    return out;
  }

  const Draw* find(const std::string& key) const {
    for (const Draw& d : draws) {
      if (d.key == key) return &d;
    }
    return nullptr;
  }
};

// Source of a mechanism's random choices. Every draw is recorded so that a
// run can be replayed from its transcript.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  // 1 with probability p.
  bool bit(std::string key, const Rational& p) {
    if (p < 0 || p > 1) throw UsageError("bit probability outside [0,1]");
    Draw d{std::move(key), Draw::Type::kBit, p, 2, 0};
    d.value = resolve(d);
    if (d.value > 1 || (d.value == 1 && p == 0) || (d.value == 0 && p == 1)) {
      throw MissingDraw("impossible value for bit \"" + d.key + "\"");
    }
    transcript_.draws.push_back(d);
    return d.value == 1;
  }

  // Uniform in [0, arity).
  std::size_t choice(std::string key, std::size_t arity) {
    if (arity == 0) throw UsageError("choice over zero outcomes");
    Draw d{std::move(key), Draw::Type::kChoice, Rational(0), arity, 0};
    d.value = resolve(d);
    if (d.value >= arity) {
      throw MissingDraw("choice \"" + d.key + "\" out of range");
    }
    transcript_.draws.push_back(d);
    return d.value;
  }

  const TapeTranscript& transcript() const { return transcript_; }

 protected:
  virtual std::size_t resolve(const Draw& request) = 0;

 private:
  TapeTranscript transcript_;
};

namespace detail {

inline BigInt uniform_below(std::mt19937_64& rng, const BigInt& bound) {
  // Rejection sampling over whole 64-bit limbs.
  std::size_t bits = boost::multiprecision::msb(bound) + 1;
  std::size_t limbs = (bits + 63) / 64;
  BigInt span = BigInt(1) << (limbs * 64);
  BigInt limit = span - span % bound;
  while (true) {
    BigInt x = 0;
    for (std::size_t i = 0; i < limbs; ++i) x = (x << 64) | BigInt(rng());
    if (x < limit) return x % bound;
  }
}

}  // namespace detail

// Pseudo-random draws from a 64-bit Mersenne Twister. Bits with rational
// probability n/d are decided exactly by a uniform integer below d.
class SeededSource : public RandomSource {
 public:
  explicit SeededSource(std::uint64_t seed) : rng_(seed) {}

 protected:
  std::size_t resolve(const Draw& d) override {
    if (d.type == Draw::Type::kBit) {
      using boost::multiprecision::denominator;
      using boost::multiprecision::numerator;
      if (d.p == 0) return 0;
      if (d.p == 1) return 1;
      return detail::uniform_below(rng_, denominator(d.p)) < numerator(d.p) ? 1 : 0;
    }
    return static_cast<std::size_t>(
        detail::uniform_below(rng_, BigInt(d.arity)).convert_to<std::uint64_t>());
  }

 private:
  std::mt19937_64 rng_;
};

// Replays draws by key. A request for a key that the tape does not hold, or
// whose kind or parameter differs, raises MissingDraw.
class FixedSource : public RandomSource {
 public:
  explicit FixedSource(const TapeTranscript& tape) {
    for (const Draw& d : tape.draws) by_key_[d.key] = d;
  }

 protected:
  std::size_t resolve(const Draw& d) override {
    auto it = by_key_.find(d.key);
    if (it == by_key_.end()) throw MissingDraw("tape has no draw \"" + d.key + "\"");
    const Draw& have = it->second;
    if (have.type != d.type || (d.type == Draw::Type::kBit && have.p != d.p) ||
        (d.type == Draw::Type::kChoice && have.arity != d.arity)) {
      throw MissingDraw("tape draw \"" + d.key + "\" has different parameters");
    }
    return have.value;
  }

 private:
  std::map<std::string, Draw> by_key_;
};

// Forces the first draws to given values and takes the lowest
// positive-probability value afterwards, remembering how many values each
// position could have taken. Used by enumerate_branches().
class PrefixSource : public RandomSource {
 public:
  explicit PrefixSource(std::vector<std::size_t> prefix) : prefix_(std::move(prefix)) {}

  const std::vector<std::vector<std::size_t>>& alternatives() const {
    return alternatives_;
  }

 protected:
  std::size_t resolve(const Draw& d) override {
    std::vector<std::size_t> options;
    if (d.type == Draw::Type::kBit) {
      if (d.p < 1) options.push_back(0);
      if (d.p > 0) options.push_back(1);
    } else {
      for (std::size_t v = 0; v < d.arity; ++v) options.push_back(v);
    }
    std::size_t pos = alternatives_.size();
    alternatives_.push_back(options);
    if (pos < prefix_.size()) return prefix_[pos];
    return options.front();
  }

 private:
  std::vector<std::size_t> prefix_;
  std::vector<std::vector<std::size_t>> alternatives_;
};

template <class R>
struct Branch {
  TapeTranscript tape;
  Rational probability;
  R result;
};

// Runs `run(RandomSource&)` once per realization of its random draws and
// returns every branch with its exact probability, in lexicographic order of
// draw values. Probabilities sum to one.
template <class F>
auto enumerate_branches(F&& run, std::size_t max_branches = 1'000'000) {
  using R = std::decay_t<decltype(run(std::declval<RandomSource&>()))>;
  std::vector<std::pair<std::vector<std::size_t>, Branch<R>>> found;
  std::vector<std::vector<std::size_t>> pending{{}};
  while (!pending.empty()) {
    std::vector<std::size_t> prefix = std::move(pending.back());
    pending.pop_back();
    PrefixSource src(prefix);
    R result = run(src);
    const auto& alts = src.alternatives();
    std::vector<std::size_t> values;
    for (const Draw& d : src.transcript().draws) values.push_back(d.value);
    for (std::size_t pos = prefix.size(); pos < alts.size(); ++pos) {
      for (std::size_t v : alts[pos]) {
        if (v == values[pos]) continue;
        std::vector<std::size_t> next(values.begin(), values.begin() + pos);
        next.push_back(v);
        pending.push_back(std::move(next));
      }
    }
    Branch<R> b{src.transcript(), src.transcript().probability(), std::move(result)};
    found.emplace_back(std::move(values), std::move(b));
    if (found.size() > max_branches) {
      throw GateExceeded("more than " + std::to_string(max_branches) +
                         " random branches");
    }
  }
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Branch<R>> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

}  // namespace gpp

#endif  // GPP_CORE_RANDOM_TAPE_HPP_
