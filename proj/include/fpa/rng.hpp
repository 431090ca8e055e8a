// Copyright 2026 The fpa-regret Authors.
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

#ifndef FPA_RNG_HPP_
#define FPA_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace fpa {

// SplitMix64 finalizer, used to derive well-separated stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic 64-bit generator. Uniform draws are built from the raw
// engine output so that streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

  // Independent child stream identified by `tag`; does not advance *this.
  Rng split(std::uint64_t tag) const {
    return Rng(mix64(seed_ ^ mix64(tag + 0x632be59bd9b4e019ULL)));
  }

  // Stream for a tuple of identifiers, e.g. (seed, horizon, replicate).
  static Rng for_stream(std::initializer_list<std::uint64_t> ids) {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (std::uint64_t id : ids) h = mix64(h ^ mix64(id));
    return Rng(h);
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejects the low end of the range so the modulo is unbiased.
    const std::uint64_t limit = (~n + 1) % n;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= limit) return x % n;
    }
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace fpa

#endif  // FPA_RNG_HPP_
