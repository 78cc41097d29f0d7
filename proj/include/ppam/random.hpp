// Copyright 2026 The PPAM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PPAM_RANDOM_HPP_
#define PPAM_RANDOM_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

// Deterministic sampling primitives. std::mt19937_64 is bit-exact across
// implementations, but the std <random> distributions are not; every draw
// below is hand-rolled so that identical seeds give identical outputs on
// every platform. Outputs that are promised byte-identical (generation,
// anonymization, attack simulation) must only consume randomness through
// these helpers.

namespace ppam {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives two independent child seeds from a master seed. Used by the
// hybrid scheme so that one --seed drives both stages reproducibly.
inline std::pair<std::uint64_t, std::uint64_t> split_seed(std::uint64_t seed) {
  std::uint64_t s = seed;
  std::uint64_t first = splitmix64(s);
  std::uint64_t second = splitmix64(s);
  return {first, second};
}

// Unbiased draw from [0, bound) by rejection. bound = 0 is a contract
// violation.
inline std::uint64_t uniform_u64(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_u64: bound must be positive");
  // Rejection threshold: values below `limit` would wrap unevenly.
  const std::uint64_t limit = (0 - bound) % bound;
  for (;;) {
    std::uint64_t x = rng();
    if (x >= limit) return x % bound;
  }
}

// Inclusive uniform integer draw from [lo, hi].
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(uniform_u64(rng, span));
}

// Uniform real in [0, 1) with 53 random bits.
inline double unit_real(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng& rng, double p) { return unit_real(rng) < p; }

// Floyd's subset sampling: k distinct values from [0, n), sorted.
// Consumes exactly k bounded draws.
inline std::vector<std::uint32_t> sample_without_replacement(Rng& rng,
                                                             std::uint32_t k,
                                                             std::uint32_t n) {
  if (k > n) throw std::invalid_argument("sample_without_replacement: k > n");
  std::vector<std::uint32_t> chosen;
  chosen.reserve(k);
  for (std::uint32_t t = n - k; t < n; ++t) {
    auto r = static_cast<std::uint32_t>(uniform_u64(rng, t + 1));
    if (std::find(chosen.begin(), chosen.end(), r) != chosen.end()) {
      chosen.push_back(t);
    } else {
      chosen.push_back(r);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

// Draws one index from a fixed discrete distribution by inverse transform
// over the cumulative weight table.
class WeightedSampler {
 public:
  explicit WeightedSampler(const std::vector<double>& weights) {
    cumulative_.reserve(weights.size());
    double acc = 0.0;
    for (double w : weights) {
      if (w < 0.0) throw std::invalid_argument("WeightedSampler: negative weight");
      acc += w;
      cumulative_.push_back(acc);
    }
    if (cumulative_.empty() || acc <= 0.0) {
      throw std::invalid_argument("WeightedSampler: no positive weight");
    }
    total_ = acc;
  }

  std::uint32_t draw(Rng& rng) const {
    double u = unit_real(rng) * total_;
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<std::uint32_t>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
  double total_ = 0.0;
};

}  // namespace ppam

#endif  // PPAM_RANDOM_HPP_
