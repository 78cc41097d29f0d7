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

#ifndef PPAM_ATTACK_SIM_HPP_
#define PPAM_ATTACK_SIM_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ppam/fs_scheme.hpp"
#include "ppam/market_basket.hpp"
#include "ppam/privacy_analysis.hpp"
#include "ppam/random.hpp"

// Adversary simulations against the fake-transaction scheme. The random
// reconstruction model validates the average-case privacy formula; the
// guided filter measures how much of the fake budget an informed adversary
// can strip before the formula's gamma discount applies.

namespace ppam {

struct AttackOutcome {
  double gamma_achieved = 0.0;  // removed fakes / total fakes
  double real_loss = 0.0;       // removed reals / total reals
  double residual_privacy = 0.0;
  std::vector<double> per_step_success;  // random reconstruction only
};

// Sequential reconstruction: the adversary draws rows from the published
// pool; a drawn fake is recognized (an oracle the model grants) and put
// back, a drawn real is confirmed and removed. For each step i (i reals
// already confirmed) the returned vector holds the empirical frequency of
// the step's *first* draw being real, which the average-case privacy
// formula predicts as (N - i) / (F + N - i).
inline std::vector<double> random_reconstruction(const FsDb& fsdb, std::size_t trials,
                                                 std::uint64_t seed) {
  if (!fsdb.provenance.has_value()) {
    throw std::invalid_argument("random_reconstruction: provenance sidecar required");
  }
  if (trials == 0) throw std::invalid_argument("random_reconstruction: need trials >= 1");
  const std::uint64_t reals = fsdb.provenance->real_count();
  const std::uint64_t fakes = fsdb.provenance->fake_count();
  if (reals == 0) throw std::invalid_argument("random_reconstruction: no real rows");
  Rng rng(seed);
  std::vector<std::uint64_t> first_draw_successes(reals, 0);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    for (std::uint64_t i = 0; i < reals; ++i) {
      const std::uint64_t remaining = reals - i;
      bool first = true;
      for (;;) {
        // Draw from fakes + remaining reals; which individual row comes up
        // does not matter, only its origin.
        const std::uint64_t pick = uniform_u64(rng, fakes + remaining);
        const bool hit_real = pick < remaining;
        if (first && hit_real) ++first_draw_successes[i];
        first = false;
        if (hit_real) break;
      }
    }
  }
  std::vector<double> frequencies(reals);
  for (std::uint64_t i = 0; i < reals; ++i) {
    frequencies[i] =
        static_cast<double>(first_draw_successes[i]) / static_cast<double>(trials);
  }
  return frequencies;
}

struct GuidedFilterResult {
  TransactionDb filtered;
  // Measured only when ground truth (a provenance sidecar) is supplied.
  std::optional<AttackOutcome> outcome;
};

// Score-and-drop attack: each row is scored by the mean log-likelihood
// ratio of its items under the adversary's per-item prior versus the fake
// model (every item equally likely, rate fake_item_prob = l / n). Rows
// scoring below `threshold` are discarded as presumed fakes; empty rows
// score 0. Deterministic.
inline GuidedFilterResult guided_filter(const TransactionDb& db_prime,
                                        std::span<const double> side_info,
                                        double threshold, double fake_item_prob,
                                        const ProvenanceSidecar* truth = nullptr) {
  if (side_info.size() != db_prime.n_items()) {
    throw std::invalid_argument("guided_filter: side_info must cover every item");
  }
  if (fake_item_prob <= 0.0 || fake_item_prob > 1.0) {
    throw std::invalid_argument("guided_filter: fake_item_prob outside (0, 1]");
  }
  if (truth != nullptr && truth->size() != db_prime.size()) {
    throw std::invalid_argument("guided_filter: provenance length mismatch");
  }
  constexpr double kFloor = 1e-12;  // items the prior has never seen
  std::vector<Transaction> kept;
  std::uint64_t removed_fakes = 0, removed_reals = 0;
  std::uint64_t total_fakes = 0, total_reals = 0;
  for (std::size_t i = 0; i < db_prime.size(); ++i) {
    const Transaction& t = db_prime[i];
    double score = 0.0;
    if (!t.empty()) {
      for (ItemId id : t.items()) {
        const double prior = side_info[id] > kFloor ? side_info[id] : kFloor;
        score += std::log(prior / fake_item_prob);
      }
      score /= static_cast<double>(t.size());
    }
    const bool keep = score >= threshold;
    if (keep) kept.push_back(t);
    if (truth != nullptr) {
      const bool is_fake = (*truth)[i].origin == RowOrigin::kFake;
      (is_fake ? total_fakes : total_reals) += 1;
      if (!keep) (is_fake ? removed_fakes : removed_reals) += 1;
    }
  }
  GuidedFilterResult result;
  result.filtered = TransactionDb(db_prime.n_items(), std::move(kept));
  if (truth != nullptr) {
    AttackOutcome outcome;
    outcome.gamma_achieved =
        total_fakes == 0 ? 0.0
                         : static_cast<double>(removed_fakes) / static_cast<double>(total_fakes);
    outcome.real_loss =
        total_reals == 0 ? 0.0
                         : static_cast<double>(removed_reals) / static_cast<double>(total_reals);
    result.outcome = std::move(outcome);
  }
  return result;
}

// Privacy left after a filtering attack: the average-case formula with the
// fake budget cut to the surviving fraction.
inline double residual_privacy(const FsParams& params,
                               std::optional<std::uint64_t> n_transactions,
                               const AttackOutcome& outcome) {
  return fs_average_filtered(static_cast<double>(params.w), n_transactions,
                             outcome.gamma_achieved);
}

}  // namespace ppam

#endif  // PPAM_ATTACK_SIM_HPP_
