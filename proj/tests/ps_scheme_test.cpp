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

#include "ppam/ps_scheme.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace ppam {
namespace {

std::size_t hamming_distance(const Transaction& a, const Transaction& b) {
  std::vector<ItemId> diff;
  std::set_symmetric_difference(a.items().begin(), a.items().end(), b.items().begin(),
                                b.items().end(), std::back_inserter(diff));
  return diff.size();
}

TEST(PsDistort, KeepProbabilityOneIsIdentity) {
  TransactionDb db = testutil::grocery_db();
  PsDistortResult out = ps_distort(db, 1.0, 42, true);
  EXPECT_EQ(out.db, db);
  ASSERT_TRUE(out.provenance.has_value());
  for (std::size_t i = 0; i < db.size(); ++i) {
    EXPECT_EQ((*out.provenance)[i].origin, RowOrigin::kReal);
    ASSERT_TRUE((*out.provenance)[i].original_items.has_value());
    EXPECT_EQ(*(*out.provenance)[i].original_items, db[i].items());
  }
}

TEST(PsDistort, KeepProbabilityZeroComplementsEveryBit) {
  TransactionDb db = testutil::grocery_db();
  PsDistortResult out = ps_distort(db, 0.0, 42);
  ASSERT_EQ(out.db.size(), db.size());
  for (std::size_t i = 0; i < db.size(); ++i) {
    std::vector<ItemId> complement;
    for (ItemId id = 0; id < db.n_items(); ++id) {
      if (!db[i].contains(id)) complement.push_back(id);
    }
    EXPECT_EQ(out.db[i].items(), complement) << "row " << i;
  }
}

TEST(PsDistort, FlipFractionWithinThreeSigma) {
  const std::uint32_t n = 50;
  const std::size_t rows = 400;
  TransactionDb db = gen_synthetic(n, rows, 6.0, ItemWeighting::uniform(), 7);
  const double p = 0.85;
  PsDistortResult out = ps_distort(db, p, 1234);
  std::size_t flips = 0;
  for (std::size_t i = 0; i < rows; ++i) flips += hamming_distance(db[i], out.db[i]);
  const double bits = static_cast<double>(n) * static_cast<double>(rows);
  const double expected = bits * (1.0 - p);
  const double sigma = std::sqrt(bits * p * (1.0 - p));
  EXPECT_NEAR(static_cast<double>(flips), expected, 3.0 * sigma);
}

TEST(PsDistort, SameSeedSameBytes) {
  TransactionDb db = gen_synthetic(20, 100, 4.0, ItemWeighting::zipf(1.0), 9);
  std::ostringstream sa, sb, sc;
  save_db(sa, ps_distort(db, 0.9, 5).db);
  save_db(sb, ps_distort(db, 0.9, 5).db);
  save_db(sc, ps_distort(db, 0.9, 6).db);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_NE(sa.str(), sc.str());
}

TEST(PsDistort, RejectsOutOfRangeKeepProbability) {
  TransactionDb db = testutil::grocery_db();
  EXPECT_THROW(ps_distort(db, -0.1, 1), std::invalid_argument);
  EXPECT_THROW(ps_distort(db, 1.1, 1), std::invalid_argument);
}

// Independent oracle: literal two-point Bayes computation of
// sum_y P(Y=y | X=x) P(X=x | Y=y) for both bit values.
std::pair<double, double> bayes_reconstruction(double s0, double p) {
  const double prior[2] = {1.0 - s0, s0};
  double like[2][2];  // like[y][x] = P(Y=y | X=x)
  like[1][1] = p;
  like[0][1] = 1.0 - p;
  like[0][0] = p;
  like[1][0] = 1.0 - p;
  double obs[2];  // P(Y=y)
  for (int y = 0; y < 2; ++y) obs[y] = like[y][0] * prior[0] + like[y][1] * prior[1];
  double r[2];
  for (int x = 0; x < 2; ++x) {
    r[x] = 0.0;
    for (int y = 0; y < 2; ++y) {
      const double posterior = like[y][x] * prior[x] / obs[y];
      r[x] += like[y][x] * posterior;
    }
  }
  return {r[1], r[0]};
}

TEST(ReconstructionProbs, MatchesBayesOracle) {
  Rng rng(31337);
  for (int i = 0; i < 300; ++i) {
    const double s0 = 0.01 + 0.98 * unit_real(rng);
    const double p = unit_real(rng);
    auto [r1, r0] = reconstruction_probs(s0, p);
    auto [o1, o0] = bayes_reconstruction(s0, p);
    EXPECT_NEAR(r1, o1, 1e-12) << "s0=" << s0 << " p=" << p;
    EXPECT_NEAR(r0, o0, 1e-12) << "s0=" << s0 << " p=" << p;
  }
}

TEST(ReconstructionProbs, KnownPoints) {
  // p = 0.5 destroys all information: the best guess is the prior.
  for (double s0 : {0.05, 0.11, 0.3, 0.5, 0.77}) {
    auto [r1, r0] = reconstruction_probs(s0, 0.5);
    EXPECT_NEAR(r1, s0, 1e-12);
    EXPECT_NEAR(r0, 1.0 - s0, 1e-12);
  }
  // p = 1 reveals every bit.
  auto [r1, r0] = reconstruction_probs(0.3, 1.0);
  EXPECT_DOUBLE_EQ(r1, 1.0);
  EXPECT_DOUBLE_EQ(r0, 1.0);
  EXPECT_THROW(reconstruction_probs(0.0, 0.9), std::domain_error);
  EXPECT_THROW(reconstruction_probs(1.0, 0.9), std::domain_error);
  EXPECT_THROW(reconstruction_probs(0.3, 1.5), std::invalid_argument);
}

TEST(PsPrivacyQuant, UninformativeChannelHalvesReconstruction) {
  // At p = 0.5 with equal weights, reconstruction is 0.5 whatever the density.
  for (double s0 : {0.05, 0.3, 0.5, 0.9}) {
    PsPrivacy priv = ps_privacy(s0, 0.5, 0.5);
    EXPECT_NEAR(priv.p_r, 0.5, 1e-12);
    EXPECT_NEAR(priv.p_p, 0.5, 1e-12);
  }
  PsPrivacy exposed = ps_privacy(0.2, 1.0, 0.7);
  EXPECT_DOUBLE_EQ(exposed.p_r, 1.0);
  EXPECT_DOUBLE_EQ(exposed.p_p, 0.0);
  EXPECT_THROW(ps_privacy(0.3, 0.9, -0.1), std::invalid_argument);
}

TEST(PsPrivacyQuant, OperatingRangeCapsPrivacyAtEightyNinePercent) {
  // Sweep of the documented operating range: densities in [0.11, 0.89],
  // keep probabilities in [0.5, 1]. Privacy never exceeds 0.89, and the
  // published cap is attained at the sparsest density with p = 0.5.
  double best = 0.0;
  for (int s = 11; s <= 89; ++s) {
    for (int pi = 0; pi <= 10; ++pi) {
      for (int ai = 0; ai <= 10; ++ai) {
        const double p_p =
            ps_privacy(s / 100.0, 0.5 + 0.05 * pi, ai / 10.0).p_p;
        if (p_p > best) best = p_p;
      }
    }
  }
  EXPECT_NEAR(best, 0.89, 1e-9);
  EXPECT_NEAR(ps_privacy(0.11, 0.5, 1.0).p_p, 0.89, 1e-9);
}

TEST(PsPrivacyQuant, PrivacyPeaksAtUninformativeChannel) {
  // P_p is symmetric in p about 0.5 and maximal there.
  for (double s0 : {0.11, 0.3}) {
    for (double a : {0.5, 1.0}) {
      const double peak = ps_privacy(s0, 0.5, a).p_p;
      for (int pi = 1; pi <= 9; ++pi) {
        const double p = 0.05 * pi + 0.5;
        EXPECT_LT(ps_privacy(s0, p, a).p_p, peak) << "s0=" << s0 << " p=" << p;
        EXPECT_NEAR(ps_privacy(s0, 1.0 - p, a).p_p, ps_privacy(s0, p, a).p_p, 1e-12);
      }
    }
  }
}

TEST(MaskTransition, ColumnsAreDistributions) {
  for (double p : {0.6, 0.73, 0.9}) {
    for (std::uint32_t k = 1; k <= 4; ++k) {
      const std::size_t dim = std::size_t{1} << k;
      std::vector<double> m = mask_transition_matrix(p, k);
      for (std::size_t orig = 0; orig < dim; ++orig) {
        double sum = 0.0;
        for (std::size_t obs = 0; obs < dim; ++obs) sum += m[obs * dim + orig];
        EXPECT_NEAR(sum, 1.0, 1e-12);
      }
    }
  }
  EXPECT_THROW(mask_transition_matrix(0.9, 0), std::invalid_argument);
  EXPECT_THROW(mask_transition_matrix(0.9, 17), std::invalid_argument);
}

TEST(MaskTransition, InverseTimesForwardIsIdentity) {
  for (double p : {0.6, 0.9, 0.97}) {
    for (std::uint32_t k = 1; k <= 4; ++k) {
      const std::size_t dim = std::size_t{1} << k;
      std::vector<double> m = mask_transition_matrix(p, k);
      std::vector<double> inv = mask_transition_inverse(p, k);
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
          double dot = 0.0;
          for (std::size_t t = 0; t < dim; ++t) dot += inv[i * dim + t] * m[t * dim + j];
          EXPECT_NEAR(dot, i == j ? 1.0 : 0.0, 1e-12)
              << "p=" << p << " k=" << k << " (" << i << "," << j << ")";
        }
      }
    }
  }
  EXPECT_THROW(mask_transition_inverse(0.5, 2), std::domain_error);
}

TEST(PsEstimate, NoiselessChannelRecoversExactSupports) {
  TransactionDb db = testutil::grocery_db();
  PsDistortResult out = ps_distort(db, 1.0, 3);
  std::vector<Itemset> queries = {{0}, {3}, {0, 3}, {1, 3}, {1, 3, 4}, {2, 4}};
  auto estimates = ps_estimate_supports(out.db, 1.0, queries);
  ASSERT_EQ(estimates.size(), queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    EXPECT_EQ(estimates[i].items, queries[i]);
    EXPECT_NEAR(estimates[i].support, support(db, queries[i]).value(), 1e-12);
  }
}

TEST(PsEstimate, MeanEstimateUnbiasedAcrossSeeds) {
  TransactionDb db = gen_synthetic(12, 2000, 4.0, ItemWeighting::zipf(1.0), 15);
  const Itemset target = {0, 1};
  const double truth = support(db, target).value();
  const int runs = 200;
  std::vector<double> estimates;
  estimates.reserve(runs);
  for (int run = 0; run < runs; ++run) {
    PsDistortResult out = ps_distort(db, 0.8, 40000 + run);
    estimates.push_back(ps_estimate_supports(out.db, 0.8, {target})[0].support);
  }
  double mean = 0.0;
  for (double e : estimates) mean += e;
  mean /= runs;
  double var = 0.0;
  for (double e : estimates) var += (e - mean) * (e - mean);
  var /= runs - 1;
  const double se = std::sqrt(var / runs);
  EXPECT_NEAR(mean, truth, 3.5 * se);
}

TEST(PsEstimate, RawEstimatesMayLeaveUnitIntervalButClampDoesNot) {
  // A rare itemset at strong distortion often de-biases below zero.
  TransactionDb db = gen_synthetic(16, 50, 2.0, ItemWeighting::uniform(), 21);
  bool saw_outside = false;
  for (int run = 0; run < 40 && !saw_outside; ++run) {
    PsDistortResult out = ps_distort(db, 0.6, 700 + run);
    auto est = ps_estimate_supports(out.db, 0.6, {{0, 1, 2, 3}});
    if (est[0].support < 0.0 || est[0].support > 1.0) saw_outside = true;
    EXPECT_GE(est[0].clamped(), 0.0);
    EXPECT_LE(est[0].clamped(), 1.0);
  }
  EXPECT_TRUE(saw_outside);
}

TEST(PsEstimate, RejectsIllConditionedAndOversizedQueries) {
  TransactionDb db = testutil::grocery_db();
  EXPECT_THROW(ps_estimate_supports(db, 0.5, {{0}}), std::domain_error);
  EXPECT_THROW(ps_estimate_supports(db, 0.5004, {{0}}), std::domain_error);
  EXPECT_THROW(ps_estimate_supports(db, 0.9, {{0, 1, 2, 3, 4}}), std::invalid_argument);
  EXPECT_THROW(ps_estimate_supports(db, 0.9, {{}}), std::invalid_argument);
  EXPECT_THROW(ps_estimate_supports(TransactionDb(3, {}), 0.9, {{0}}), std::domain_error);
}

TEST(PsMine, NoiselessChannelMatchesPlainMining) {
  TransactionDb db = testutil::grocery_db();
  auto estimated = ps_mine(db, 1.0, 3.0 / 8.0, 4);
  auto plain = mine_frequent(db, LevelThresholds::constant(3.0 / 8.0), 4);
  ASSERT_EQ(estimated.size(), plain.size());
  for (std::size_t i = 0; i < estimated.size(); ++i) {
    EXPECT_EQ(estimated[i].items, plain[i].items);
    EXPECT_NEAR(estimated[i].support, plain[i].support(), 1e-12);
  }
}

TEST(PsMine, RecoversPlantedItemsetThroughDistortion) {
  Rng rng(1618);
  std::vector<Transaction> rows;
  const std::size_t n_rows = 5000;
  for (std::size_t i = 0; i < n_rows; ++i) {
    std::vector<ItemId> items = sample_without_replacement(rng, 3, 30);
    if (i % 10 < 3) {
      items.push_back(2);
      items.push_back(5);
    }
    rows.emplace_back(std::move(items));
  }
  TransactionDb db(30, std::move(rows));
  const double truth = support(db, {2, 5}).value();
  PsDistortResult out = ps_distort(db, 0.9, 8888);
  auto estimated = ps_mine(out.db, 0.9, 0.2, 2, 0.02);
  bool found = false;
  for (const EstimatedItemset& e : estimated) {
    if (e.items == Itemset{2, 5}) {
      found = true;
      EXPECT_NEAR(e.support, truth, 0.05);
    }
  }
  EXPECT_TRUE(found);
}

TEST(PsMine, ValidatesParameters) {
  TransactionDb db = testutil::grocery_db();
  EXPECT_THROW(ps_mine(db, 0.9, 0.3, 0), std::invalid_argument);
  EXPECT_THROW(ps_mine(db, 0.9, 0.3, 2, -0.1), std::invalid_argument);
  EXPECT_THROW(ps_mine(db, 0.5, 0.3, 2), std::domain_error);
}

}  // namespace
}  // namespace ppam
