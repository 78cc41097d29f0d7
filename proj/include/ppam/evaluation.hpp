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

#ifndef PPAM_EVALUATION_HPP_
#define PPAM_EVALUATION_HPP_

#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "ppam/apriori.hpp"
#include "ppam/market_basket.hpp"

// Mining-quality and cost metrics for anonymized databases, relative to
// plain mining on the original data.

namespace ppam {

struct ErrorReport {
  double sigma_plus = 0.0;   // % of truth size mined but not true
  double sigma_minus = 0.0;  // % of truth size true but not mined
  double support_mae = 0.0;  // mean |estimated - true| over the overlap
};

inline std::vector<EstimatedItemset> to_estimated(const std::vector<FrequentItemset>& v) {
  std::vector<EstimatedItemset> out;
  out.reserve(v.size());
  for (const FrequentItemset& f : v) out.push_back({f.items, f.support()});
  return out;
}

// Identity errors are set-based (supports ignored); the support error is
// averaged over itemsets present on both sides.
inline ErrorReport sigma_errors(const std::vector<FrequentItemset>& truth,
                                const std::vector<EstimatedItemset>& mined) {
  if (truth.empty()) throw std::domain_error("sigma_errors: empty truth set");
  std::map<Itemset, double> true_support;
  for (const FrequentItemset& f : truth) true_support.emplace(f.items, f.support());
  std::uint64_t spurious = 0, matched = 0;
  double abs_err = 0.0;
  for (const EstimatedItemset& m : mined) {
    auto it = true_support.find(m.items);
    if (it == true_support.end()) {
      ++spurious;
    } else {
      ++matched;
      abs_err += std::abs(m.support - it->second);
    }
  }
  const auto truth_size = static_cast<double>(truth.size());
  ErrorReport report;
  report.sigma_plus = 100.0 * static_cast<double>(spurious) / truth_size;
  report.sigma_minus =
      100.0 * static_cast<double>(truth.size() - matched) / truth_size;
  report.support_mae = matched == 0 ? 0.0 : abs_err / static_cast<double>(matched);
  return report;
}

inline ErrorReport sigma_errors(const std::vector<FrequentItemset>& truth,
                                const std::vector<FrequentItemset>& mined) {
  return sigma_errors(truth, to_estimated(mined));
}

struct MiningTimings {
  std::chrono::duration<double> original{0.0};
  std::chrono::duration<double> anonymized{0.0};
};

struct OverheadReport {
  double memory_ratio = 0.0;       // serialized bytes, anonymized / original
  double transaction_ratio = 0.0;  // row counts, anonymized / original
  double mining_time_ratio = 0.0;  // wall time, anonymized / original
};

inline OverheadReport overhead_report(const TransactionDb& original,
                                      const TransactionDb& anonymized,
                                      const MiningTimings& timings) {
  if (original.empty()) throw std::domain_error("overhead_report: empty original");
  auto serialized_bytes = [](const TransactionDb& db) {
    std::ostringstream out;
    save_db(out, db);
    return static_cast<double>(out.str().size());
  };
  OverheadReport report;
  report.memory_ratio = serialized_bytes(anonymized) / serialized_bytes(original);
  report.transaction_ratio =
      static_cast<double>(anonymized.size()) / static_cast<double>(original.size());
  report.mining_time_ratio = timings.original.count() <= 0.0
                                 ? 0.0
                                 : timings.anonymized.count() / timings.original.count();
  return report;
}

}  // namespace ppam

#endif  // PPAM_EVALUATION_HPP_
