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

#ifndef PPAM_PS_SCHEME_HPP_
#define PPAM_PS_SCHEME_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ppam/apriori.hpp"
#include "ppam/market_basket.hpp"
#include "ppam/random.hpp"

// Bit-distortion scheme: the database is viewed as an N x n bit matrix and
// every bit is kept with probability p, flipped with probability 1 - p,
// independently. Supports are recovered by inverting the known per-bit
// transition law; privacy comes from the adversary's limited ability to
// reconstruct individual bits.

namespace ppam {

struct PsParams {
  double p = 0.9;  // per-bit keep probability
  double a = 0.5;  // adversary's weight on reconstructing 1-bits vs 0-bits
};

struct PsDistortResult {
  TransactionDb db;
  std::optional<ProvenanceSidecar> provenance;  // pre-distortion rows, on request
};

// Flips each bit of the dense matrix view with probability 1 - p. Bit order
// is row-major (transaction 0 item 0, item 1, ..., transaction 1 item 0,
// ...); the order is part of the reproducibility contract.
inline PsDistortResult ps_distort(const TransactionDb& db, double p, std::uint64_t seed,
                                  bool emit_provenance = false) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("ps_distort: p outside [0, 1]");
  Rng rng(seed);
  std::vector<Transaction> rows;
  rows.reserve(db.size());
  std::vector<ProvenanceEntry> origins;
  for (const Transaction& t : db.transactions()) {
    std::vector<ItemId> distorted;
    auto next = t.items().begin();
    for (ItemId id = 0; id < db.n_items(); ++id) {
      bool present = next != t.items().end() && *next == id;
      if (present) ++next;
      const bool keep = bernoulli(rng, p);
      if (present == keep) distorted.push_back(id);  // kept 1 or flipped 0
    }
    rows.emplace_back(std::move(distorted));
    if (emit_provenance) origins.push_back({RowOrigin::kReal, t.items()});
  }
  PsDistortResult out;
  out.db = TransactionDb(db.n_items(), std::move(rows));
  if (emit_provenance) out.provenance = ProvenanceSidecar(std::move(origins));
  return out;
}

// Posterior-weighted reconstruction probabilities for a single bit column
// with ones-density s0: first the chance of correctly recovering a 1 from
// the distorted value, then the same for a 0. Each is an average over the
// observed value of P(correct guess | observation).
inline std::pair<double, double> reconstruction_probs(double s0, double p) {
  if (s0 <= 0.0 || s0 >= 1.0) {
    throw std::domain_error("reconstruction_probs: s0 must lie strictly in (0, 1)");
  }
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("reconstruction_probs: p outside [0, 1]");
  const double q = 1.0 - p;
  const double see1 = s0 * p + (1.0 - s0) * q;        // P(observe 1)
  const double see0 = s0 * q + (1.0 - s0) * p;        // P(observe 0)
  const double r1 = s0 * p * p / see1 + s0 * q * q / see0;
  const double r0 = (1.0 - s0) * p * p / see0 + (1.0 - s0) * q * q / see1;
  return {r1, r0};
}

struct PsPrivacy {
  double r1 = 0.0;   // P(reconstruct a 1-bit)
  double r0 = 0.0;   // P(reconstruct a 0-bit)
  double p_r = 0.0;  // a * r1 + (1 - a) * r0
  double p_p = 0.0;  // 1 - p_r
};

inline PsPrivacy ps_privacy(double s0, double p, double a) {
  if (a < 0.0 || a > 1.0) throw std::invalid_argument("ps_privacy: a outside [0, 1]");
  auto [r1, r0] = reconstruction_probs(s0, p);
  PsPrivacy out;
  out.r1 = r1;
  out.r0 = r0;
  out.p_r = a * r1 + (1.0 - a) * r0;
  out.p_p = 1.0 - out.p_r;
  return out;
}

// 2^k x 2^k row-major matrix M with M[obs][orig] = P(observed pattern |
// original pattern) for k independent bits; bit b of a pattern index refers
// to the b-th item of the (ascending) itemset.
inline std::vector<double> mask_transition_matrix(double p, std::uint32_t k) {
  if (k == 0 || k > 16) throw std::invalid_argument("mask_transition_matrix: k outside 1..16");
  const std::size_t dim = std::size_t{1} << k;
  std::vector<double> m(dim * dim);
  for (std::size_t obs = 0; obs < dim; ++obs) {
    for (std::size_t orig = 0; orig < dim; ++orig) {
      const auto agree = static_cast<std::uint32_t>(
          k - std::popcount(static_cast<std::uint64_t>(obs ^ orig)));
      m[obs * dim + orig] =
          std::pow(p, agree) * std::pow(1.0 - p, k - agree);
    }
  }
  return m;
}

// Closed-form inverse: the transition matrix is the k-fold Kronecker power
// of [[p, 1-p], [1-p, p]], whose inverse is 1/(2p-1) * [[p, -(1-p)],
// [-(1-p), p]]; the Kronecker power of the inverse inverts the power.
inline std::vector<double> mask_transition_inverse(double p, std::uint32_t k) {
  if (k == 0 || k > 16) throw std::invalid_argument("mask_transition_inverse: k outside 1..16");
  const double det = 2.0 * p - 1.0;
  if (det == 0.0) throw std::domain_error("mask_transition_inverse: singular at p = 0.5");
  const std::size_t dim = std::size_t{1} << k;
  std::vector<double> m(dim * dim);
  const double scale = 1.0 / det;
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      const auto disagree = static_cast<std::uint32_t>(
          std::popcount(static_cast<std::uint64_t>(a ^ b)));
      double v = 1.0;
      for (std::uint32_t i = 0; i < k; ++i) v *= scale;
      v *= std::pow(p, k - disagree) * std::pow(-(1.0 - p), disagree);
      m[a * dim + b] = v;
    }
  }
  return m;
}

struct SupportEstimate {
  Itemset items;
  double support = 0.0;  // raw estimate; may fall outside [0, 1]

  double clamped() const { return support < 0.0 ? 0.0 : (support > 1.0 ? 1.0 : support); }
};

namespace detail {

// Estimated count of rows whose original pattern was all-ones, from the
// observed pattern histogram and the inverse transition row.
inline double estimate_all_ones(const std::vector<std::uint64_t>& pattern_counts,
                                const std::vector<double>& inverse, std::size_t dim) {
  double est = 0.0;
  const std::size_t all_ones = dim - 1;
  for (std::size_t pat = 0; pat < dim; ++pat) {
    est += inverse[all_ones * dim + pat] * static_cast<double>(pattern_counts[pat]);
  }
  return est;
}

}  // namespace detail

// Estimates original supports of the given itemsets from a distorted
// database. Requires a transition far enough from singular (|2p - 1| >=
// epsilon) and itemsets no larger than k_max (the inversion touches 2^k
// observed patterns per itemset).
inline std::vector<SupportEstimate> ps_estimate_supports(
    const TransactionDb& distorted, double p, const std::vector<Itemset>& itemsets,
    std::uint32_t k_max = 4, double epsilon = 1e-3) {
  if (distorted.empty()) throw std::domain_error("ps_estimate_supports: empty database");
  if (std::abs(2.0 * p - 1.0) < epsilon) {
    throw std::domain_error("ps_estimate_supports: transition ill-conditioned near p = 0.5");
  }
  for (const Itemset& s : itemsets) {
    if (s.empty() || s.size() > k_max) {
      throw std::invalid_argument("ps_estimate_supports: itemset size outside 1..k_max");
    }
  }
  ItemBitmaps bitmaps(distorted);
  const double n = static_cast<double>(distorted.size());
  // One inverse per itemset size.
  std::vector<std::vector<double>> inverses(k_max + 1);
  std::vector<SupportEstimate> out;
  out.reserve(itemsets.size());
  for (const Itemset& s : itemsets) {
    const auto k = static_cast<std::uint32_t>(s.size());
    if (inverses[k].empty()) inverses[k] = mask_transition_inverse(p, k);
    const std::size_t dim = std::size_t{1} << k;
    const double est =
        detail::estimate_all_ones(bitmaps.pattern_counts(s), inverses[k], dim);
    out.push_back({s, est / n});
  }
  return out;
}

// Levelwise mining over a distorted database: candidates are generated
// apriori-style, but support comes from the transition inversion. `slack`
// widens the survivor bar below s_min to compensate estimator noise near the
// threshold; reported itemsets still need an estimate >= s_min.
inline std::vector<EstimatedItemset> ps_mine(const TransactionDb& distorted, double p,
                                             double s_min, std::size_t max_k,
                                             double slack = 0.0,
                                             double epsilon = 1e-3) {
  if (distorted.empty()) throw std::domain_error("ps_mine: empty database");
  if (max_k == 0 || max_k > 16) throw std::invalid_argument("ps_mine: max_k outside 1..16");
  if (slack < 0.0) throw std::invalid_argument("ps_mine: slack must be nonnegative");
  if (std::abs(2.0 * p - 1.0) < epsilon) {
    throw std::domain_error("ps_mine: transition ill-conditioned near p = 0.5");
  }
  ItemBitmaps bitmaps(distorted);
  const double n_rows = static_cast<double>(distorted.size());
  std::vector<EstimatedItemset> result;
  std::vector<Itemset> candidates;
  candidates.reserve(distorted.n_items());
  for (ItemId id = 0; id < distorted.n_items(); ++id) candidates.push_back({id});
  for (std::size_t k = 1; k <= max_k && !candidates.empty(); ++k) {
    const std::vector<double> inverse =
        mask_transition_inverse(p, static_cast<std::uint32_t>(k));
    const std::size_t dim = std::size_t{1} << k;
    std::vector<Itemset> survivors;
    for (Itemset& candidate : candidates) {
      const double est =
          detail::estimate_all_ones(bitmaps.pattern_counts(candidate), inverse, dim) /
          n_rows;
      if (est >= s_min) result.push_back({candidate, est});
      if (est >= s_min - slack) survivors.push_back(std::move(candidate));
    }
    if (k == max_k) break;
    candidates = detail::join_candidates(survivors);
  }
  std::sort(result.begin(), result.end(),
            [](const EstimatedItemset& a, const EstimatedItemset& b) {
              return itemset_less(a.items, b.items);
            });
  return result;
}

}  // namespace ppam

#endif  // PPAM_PS_SCHEME_HPP_
