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

#ifndef PPAM_PRIVACY_ANALYSIS_HPP_
#define PPAM_PRIVACY_ANALYSIS_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ppam/math.hpp"

// Privacy calculators for the fake-transaction scheme. "Privacy" is one
// minus the adversary's reconstruction probability; w is the expected number
// of fakes per real transaction (real-valued here; generation requires an
// integer).
//
// Worst case assumes an adversary who must pick the real transaction out of
// each group of 1 + w candidates independently. The average case models
// sequential reconstruction of all N real transactions, where each confirmed
// real shrinks the candidate pool: step i succeeds with probability
// (N - i) / (wN + N - i), and the reconstruction probability is the mean
// over steps. Filtering that removes a fraction gamma of the fakes leaves
// the same formulas with w scaled to (1 - gamma) w.

namespace ppam {

inline double fs_worst(double w) {
  if (w < 0.0) throw std::invalid_argument("fs_worst: w must be nonnegative");
  return w / (1.0 + w);
}

// First-attempt success probability at reconstruction step i (i reals
// already confirmed and removed; the wN fakes never leave the pool).
inline double fs_step_probability(double w, std::uint64_t n_transactions, std::uint64_t i) {
  if (i >= n_transactions) {
    throw std::invalid_argument("fs_step_probability: step index out of range");
  }
  const double n = static_cast<double>(n_transactions);
  const double remaining = n - static_cast<double>(i);
  return remaining / (w * n + remaining);
}

// Average-case privacy 1 - (1/N) * sum_i (N-i)/(wN + N-i). Without a
// transaction count the N -> infinity limit w * ln((1+w)/w) is returned
// (continuous-pool form; 0 at w = 0). Finite N must be at least 3.
inline double fs_average(double w, std::optional<std::uint64_t> n_transactions) {
  if (w < 0.0) throw std::invalid_argument("fs_average: w must be nonnegative");
  if (!n_transactions.has_value()) {
    if (w == 0.0) return 0.0;
    return w * std::log1p(1.0 / w);
  }
  const std::uint64_t n = *n_transactions;
  if (n < 3) throw std::domain_error("fs_average: need at least 3 transactions");
  KahanSum sum;
  for (std::uint64_t i = 0; i < n; ++i) {
    sum.add(fs_step_probability(w, n, i));
  }
  return 1.0 - sum.value() / static_cast<double>(n);
}

// Average-case privacy after an attack removed the fraction `gamma` of the
// fakes: the surviving fake budget is (1 - gamma) w.
inline double fs_average_filtered(double w, std::optional<std::uint64_t> n_transactions,
                                  double gamma) {
  if (gamma < 0.0 || gamma > 1.0) {
    throw std::invalid_argument("fs_average_filtered: gamma outside [0, 1]");
  }
  return fs_average((1.0 - gamma) * w, n_transactions);
}

// Privacy grid: result[g][w] = fs_average_filtered(ws[w], n, gammas[g]).
inline std::vector<std::vector<double>> privacy_table(
    const std::vector<double>& ws, const std::vector<double>& gammas,
    std::optional<std::uint64_t> n_transactions) {
  std::vector<std::vector<double>> grid;
  grid.reserve(gammas.size());
  for (double gamma : gammas) {
    std::vector<double> row;
    row.reserve(ws.size());
    for (double w : ws) row.push_back(fs_average_filtered(w, n_transactions, gamma));
    grid.push_back(std::move(row));
  }
  return grid;
}

struct PrivacyReport {
  double w = 0.0;
  std::optional<std::uint64_t> n_transactions;
  double worst_case = 0.0;
  double average_case = 0.0;
  // (gamma, privacy after removing that fraction of fakes)
  std::vector<std::pair<double, double>> filtered;
};

inline PrivacyReport privacy_report(double w, std::optional<std::uint64_t> n_transactions,
                                    const std::vector<double>& gammas) {
  PrivacyReport report;
  report.w = w;
  report.n_transactions = n_transactions;
  report.worst_case = fs_worst(w);
  report.average_case = fs_average(w, n_transactions);
  for (double gamma : gammas) {
    report.filtered.emplace_back(gamma, fs_average_filtered(w, n_transactions, gamma));
  }
  return report;
}

// Reference grid for the canned `table1` pipeline: average-case privacy in
// the large-N limit, rows gamma = 0.0 .. 0.7 by 0.1, columns w = 1 .. 10,
// four decimals. The pipeline recomputes every cell and fails when any
// deviates by more than 2e-3 from this snapshot.
inline const std::array<std::array<double, 10>, 8>& filtered_privacy_reference() {
  static const std::array<std::array<double, 10>, 8> kGrid = {{
      {0.6929, 0.8108, 0.8629, 0.8925, 0.9115, 0.9248, 0.9347, 0.9422, 0.9482, 0.9531},
      {0.6722, 0.7951, 0.8506, 0.8823, 0.9029, 0.9174, 0.9281, 0.9363, 0.9429, 0.9482},
      {0.6485, 0.7766, 0.8358, 0.8701, 0.8925, 0.9083, 0.9200, 0.9291, 0.9363, 0.9422},
      {0.6208, 0.7544, 0.8177, 0.8549, 0.8795, 0.8969, 0.9099, 0.9200, 0.9281, 0.9347},
      {0.5882, 0.7271, 0.7951, 0.8358, 0.8629, 0.8823, 0.8969, 0.9083, 0.9174, 0.9248},
      {0.5490, 0.6929, 0.7660, 0.8108, 0.8410, 0.8629, 0.8795, 0.8925, 0.9029, 0.9115},
      {0.5007, 0.6485, 0.7271, 0.7766, 0.8108, 0.8358, 0.8549, 0.8701, 0.8823, 0.8925},
      {0.4395, 0.5882, 0.6722, 0.7271, 0.7660, 0.7951, 0.8177, 0.8358, 0.8506, 0.8629},
  }};
  return kGrid;
}

}  // namespace ppam

#endif  // PPAM_PRIVACY_ANALYSIS_HPP_
