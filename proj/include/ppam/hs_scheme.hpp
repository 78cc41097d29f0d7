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

#ifndef PPAM_HS_SCHEME_HPP_
#define PPAM_HS_SCHEME_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ppam/apriori.hpp"
#include "ppam/fs_scheme.hpp"
#include "ppam/market_basket.hpp"
#include "ppam/ps_scheme.hpp"
#include "ppam/random.hpp"

// Hybrid scheme: insert fake transactions first, then bit-distort the
// combined database. An adversary must both pick the real rows out of the
// pool and undo the distortion, so the reconstruction probability divides
// by 1 + w on top of the distortion's. The composition reaches a target
// privacy level with far fewer fakes than insertion alone.

namespace ppam {

struct HsParams {
  FsParams fs;
  PsParams ps;
};

struct HsDb {
  TransactionDb db;                             // distorted fakes-added database
  std::optional<ProvenanceSidecar> provenance;  // origin + pre-distortion rows
  HsParams params;
  std::size_t real_count = 0;
};

// Stage seeds derive from the master seed via split_seed, so one seed
// reproduces the whole pipeline.
inline HsDb hs_anonymize(const TransactionDb& db, const HsParams& params,
                         std::uint64_t seed, bool emit_provenance = false) {
  auto [fs_seed, ps_seed] = split_seed(seed);
  FsDb staged = fs_anonymize(db, params.fs, fs_seed, emit_provenance);
  PsDistortResult distorted = ps_distort(staged.db_prime, params.ps.p, ps_seed, false);
  HsDb out;
  out.db = std::move(distorted.db);
  if (emit_provenance) {
    // Merge: row origin from the insertion stage, original items = the
    // pre-distortion row (real rows keep their true contents).
    std::vector<ProvenanceEntry> entries;
    entries.reserve(staged.db_prime.size());
    for (std::size_t i = 0; i < staged.db_prime.size(); ++i) {
      ProvenanceEntry e;
      e.origin = (*staged.provenance)[i].origin;
      e.original_items = staged.db_prime[i].items();
      entries.push_back(std::move(e));
    }
    out.provenance = ProvenanceSidecar(std::move(entries));
  }
  out.params = params;
  out.real_count = db.size();
  return out;
}

// Reconstruction and privacy of the composition: the distortion-stage
// reconstruction probability, divided by 1 + w. Returns (p_r, p_p).
inline std::pair<double, double> hs_privacy(double w, double s0, double p, double a) {
  if (w < 0.0) throw std::invalid_argument("hs_privacy: w must be nonnegative");
  const PsPrivacy ps = ps_privacy(s0, p, a);
  const double p_r = ps.p_r / (1.0 + w);
  return {p_r, 1.0 - p_r};
}

// Smallest integer w such that 1 - p_r_ps / (1 + w) >= target_privacy.
// This is the fake budget the hybrid needs for a given target when the
// distortion stage alone reconstructs with probability p_r_ps.
inline std::uint64_t hs_equivalent_w(double target_privacy, double p_r_ps) {
  if (target_privacy < 0.0 || target_privacy >= 1.0) {
    throw std::invalid_argument("hs_equivalent_w: target must lie in [0, 1)");
  }
  if (p_r_ps < 0.0 || p_r_ps > 1.0) {
    throw std::invalid_argument("hs_equivalent_w: p_r_ps outside [0, 1]");
  }
  // Closed-form start, then settle boundary rounding by the exact predicate.
  double start = p_r_ps / (1.0 - target_privacy) - 1.0;
  std::uint64_t w = start <= 0.0 ? 0 : static_cast<std::uint64_t>(std::ceil(start - 1e-9));
  auto satisfied = [&](std::uint64_t candidate) {
    return 1.0 - p_r_ps / (1.0 + static_cast<double>(candidate)) >= target_privacy;
  };
  while (!satisfied(w)) ++w;
  while (w > 0 && satisfied(w - 1)) --w;
  return w;
}

// Fake budget plain insertion needs for the same target: reconstruction
// 1 / (1 + w), i.e. the hybrid requirement with p_r_ps = 1.
inline std::uint64_t fs_required_w(double target_privacy) {
  return hs_equivalent_w(target_privacy, 1.0);
}

// Two-stage mining: invert the distortion to estimate supports on the
// fakes-added database, then scale out the fakes' contribution. Thresholds
// and reported supports are on the real-data scale.
inline std::vector<EstimatedItemset> hs_mine(const TransactionDb& db_hs,
                                             const HsParams& params, double s_min,
                                             std::size_t max_k, double slack = 0.0,
                                             double epsilon = 1e-3) {
  if (db_hs.empty()) throw std::domain_error("hs_mine: empty database");
  if (max_k == 0 || max_k > 16) throw std::invalid_argument("hs_mine: max_k outside 1..16");
  if (std::abs(2.0 * params.ps.p - 1.0) < epsilon) {
    throw std::domain_error("hs_mine: transition ill-conditioned near p = 0.5");
  }
  const std::uint32_t n = db_hs.n_items();
  const double w = static_cast<double>(params.fs.w);
  const std::uint32_t l = params.fs.l;
  const double p = params.ps.p;
  ItemBitmaps bitmaps(db_hs);
  const double n_rows = static_cast<double>(db_hs.size());
  std::vector<EstimatedItemset> result;
  std::vector<Itemset> candidates;
  candidates.reserve(n);
  for (ItemId id = 0; id < n; ++id) candidates.push_back({id});
  for (std::size_t k = 1; k <= max_k && !candidates.empty(); ++k) {
    const std::vector<double> inverse =
        mask_transition_inverse(p, static_cast<std::uint32_t>(k));
    const std::size_t dim = std::size_t{1} << k;
    std::vector<Itemset> survivors;
    for (Itemset& candidate : candidates) {
      const double staged_support =
          detail::estimate_all_ones(bitmaps.pattern_counts(candidate), inverse, dim) /
          n_rows;
      const double est =
          debias_support(staged_support, n, l, w, static_cast<std::uint32_t>(k));
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

#endif  // PPAM_HS_SCHEME_HPP_
