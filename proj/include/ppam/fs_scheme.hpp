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

#ifndef PPAM_FS_SCHEME_HPP_
#define PPAM_FS_SCHEME_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ppam/apriori.hpp"
#include "ppam/market_basket.hpp"
#include "ppam/math.hpp"
#include "ppam/random.hpp"

// Fake-transaction scheme: the published database interleaves each real
// transaction with a block of fakes. Block sizes are uniform integers on
// [1, 2w-1] (mean w), fake lengths are uniform integers on [1, 2l-1]
// (mean l), and fake items are drawn uniformly without replacement from the
// item universe. The server never learns which rows are real; mining
// removes the fakes' known expected contribution analytically.

namespace ppam {

struct FsParams {
  std::uint32_t w = 1;  // mean fakes per real transaction, integer >= 1
  std::uint32_t l = 1;  // mean fake transaction length, integer >= 1
};

// Published database plus what the data owner retains about it.
struct FsDb {
  TransactionDb db_prime;
  std::optional<ProvenanceSidecar> provenance;  // only when requested
  FsParams params;
  std::size_t real_count = 0;
};

// Mean fake length defaults to the real database's rounded average length,
// so fakes are not distinguishable by size.
inline FsParams fs_params_for(const TransactionDb& db, std::uint32_t w) {
  DbStats stats = compute_stats(db);
  auto l = static_cast<std::uint32_t>(std::llround(stats.avg_len));
  return FsParams{w, l < 1 ? 1 : l};
}

// Probability that one fake transaction of length `transaction_len` contains
// a fixed k-itemset: C(len, k) / C(n, k), exactly.
inline Rational fake_support_prob(std::uint32_t n_items, std::uint32_t transaction_len,
                                  std::uint32_t k) {
  if (n_items == 0) throw std::invalid_argument("fake_support_prob: empty universe");
  if (transaction_len > n_items) {
    throw std::invalid_argument("fake_support_prob: length exceeds universe");
  }
  if (k > n_items) return Rational::zero();
  return binomial_ratio(transaction_len, n_items, k);
}

namespace detail {

// Mean over the fake length law of the k-itemset containment probability:
// (1 / (2l-1)) * sum_{Y=k}^{2l-1} C(Y, k) / C(n, k). Computed with double
// factor products; exact enough for thresholds and corrections.
inline double mean_fake_support_rate(std::uint32_t n_items, std::uint32_t l,
                                     std::uint32_t k) {
  if (n_items == 0) throw std::invalid_argument("mean_fake_support_rate: empty universe");
  if (l < 1) throw std::invalid_argument("mean_fake_support_rate: l must be >= 1");
  const std::uint32_t max_len = 2 * l - 1;
  if (max_len > n_items) {
    throw std::invalid_argument("mean_fake_support_rate: 2l-1 exceeds universe");
  }
  if (k == 0) return 1.0;
  if (k > max_len) return 0.0;
  double sum = 0.0;
  for (std::uint32_t y = k; y <= max_len; ++y) {
    double term = 1.0;
    for (std::uint32_t i = 0; i < k; ++i) {
      term *= static_cast<double>(y - i) / static_cast<double>(n_items - i);
    }
    sum += term;
  }
  return sum / static_cast<double>(max_len);
}

}  // namespace detail

// Expected number of fakes in the published database that contain a fixed
// k-itemset; wN fakes in expectation, each containing it with the mean rate.
inline double expected_fake_support(std::uint32_t n_items, std::uint32_t l, double w,
                                    std::uint64_t n_transactions, std::uint32_t k) {
  if (w < 0.0) throw std::invalid_argument("expected_fake_support: w must be nonnegative");
  return w * static_cast<double>(n_transactions) *
         detail::mean_fake_support_rate(n_items, l, k);
}

// Mining threshold to use on the published database so that itemsets with
// real-data support >= s_min survive: the real signal is diluted by 1 + w
// and shifted by the fakes' expected contribution.
inline double corrected_min_support(double s_min, std::uint32_t n_items, std::uint32_t l,
                                    double w, std::uint32_t k) {
  if (s_min < 0.0 || s_min > 1.0) {
    throw std::invalid_argument("corrected_min_support: s_min outside [0, 1]");
  }
  if (w < 0.0) throw std::invalid_argument("corrected_min_support: w must be nonnegative");
  return (s_min + w * detail::mean_fake_support_rate(n_items, l, k)) / (1.0 + w);
}

// Inverse of the threshold map: support on the published database scaled
// back to the real-data scale.
inline double debias_support(double observed_support, std::uint32_t n_items,
                             std::uint32_t l, double w, std::uint32_t k) {
  return observed_support * (1.0 + w) -
         w * detail::mean_fake_support_rate(n_items, l, k);
}

// Builds the published database. Randomness order per real transaction i:
// the block size w_i first, then for each fake its length and then its
// items; this order is part of the reproducibility contract. The block for
// transaction i follows it immediately, so E[|T'|] = (1 + w) N.
inline FsDb fs_anonymize(const TransactionDb& db, const FsParams& params,
                         std::uint64_t seed, bool emit_provenance = false) {
  if (db.empty()) throw std::domain_error("fs_anonymize: empty database");
  if (params.w < 1) throw std::invalid_argument("fs_anonymize: w must be >= 1");
  if (params.l < 1) throw std::invalid_argument("fs_anonymize: l must be >= 1");
  if (2ull * params.l - 1 > db.n_items()) {
    throw std::invalid_argument(
        "fs_anonymize: longest fake (2l-1 items) exceeds the item universe");
  }
  Rng rng(seed);
  std::vector<Transaction> rows;
  std::vector<ProvenanceEntry> origins;
  rows.reserve(db.size() * (1 + params.w));
  for (std::size_t i = 0; i < db.size(); ++i) {
    rows.push_back(db[i]);
    if (emit_provenance) origins.push_back({RowOrigin::kReal, std::nullopt});
    const auto block = uniform_int(rng, 1, 2 * static_cast<std::int64_t>(params.w) - 1);
    for (std::int64_t f = 0; f < block; ++f) {
      const auto len = static_cast<std::uint32_t>(
          uniform_int(rng, 1, 2 * static_cast<std::int64_t>(params.l) - 1));
      rows.emplace_back(sample_without_replacement(rng, len, db.n_items()));
      if (emit_provenance) origins.push_back({RowOrigin::kFake, std::nullopt});
    }
  }
  FsDb out;
  out.db_prime = TransactionDb(db.n_items(), std::move(rows));
  if (emit_provenance) out.provenance = ProvenanceSidecar(std::move(origins));
  out.params = params;
  out.real_count = db.size();
  return out;
}

// Mines the published database at the corrected per-level thresholds and
// reports supports scaled back to the real-data scale. With w = 0 (a
// degenerate FsDb holding no fakes) this reduces to plain mining.
inline std::vector<EstimatedItemset> fs_mine(const FsDb& fsdb, double s_min,
                                             std::optional<std::size_t> max_k = std::nullopt) {
  const std::uint32_t n = fsdb.db_prime.n_items();
  const double w = static_cast<double>(fsdb.params.w);
  const std::uint32_t l = fsdb.params.l;
  LevelThresholds thresholds([=](std::size_t k) {
    return corrected_min_support(s_min, n, l, w, static_cast<std::uint32_t>(k));
  });
  std::vector<FrequentItemset> raw = mine_frequent(fsdb.db_prime, thresholds, max_k);
  std::vector<EstimatedItemset> out;
  out.reserve(raw.size());
  for (const FrequentItemset& f : raw) {
    const double debiased = debias_support(f.support(), n, l, w,
                                           static_cast<std::uint32_t>(f.items.size()));
    out.push_back({f.items, debiased});
  }
  return out;
}

}  // namespace ppam

#endif  // PPAM_FS_SCHEME_HPP_
