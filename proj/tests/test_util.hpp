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

#ifndef PPAM_TESTS_TEST_UTIL_HPP_
#define PPAM_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "ppam/apriori.hpp"
#include "ppam/market_basket.hpp"

namespace ppam::testutil {

// Five-item grocery database used across the tests: items
// 0=milk, 1=coke, 2=pen, 3=bread, 4=juice; eight transactions. At minimum
// support 3/8 the frequent itemsets are {0} 5/8, {1} 5/8, {3} 6/8, {4} 4/8,
// {0,3} 4/8, {1,3} 4/8, {1,4} 3/8 (worked out by hand from the rows below).
inline TransactionDb grocery_db() {
  std::vector<Transaction> rows;
  rows.emplace_back(std::vector<ItemId>{0, 1, 3});
  rows.emplace_back(std::vector<ItemId>{0, 2, 4});
  rows.emplace_back(std::vector<ItemId>{0, 3});
  rows.emplace_back(std::vector<ItemId>{1, 4});
  rows.emplace_back(std::vector<ItemId>{0, 2, 3});
  rows.emplace_back(std::vector<ItemId>{0, 1, 3, 4});
  rows.emplace_back(std::vector<ItemId>{1, 3, 4});
  rows.emplace_back(std::vector<ItemId>{1, 3});
  return TransactionDb(5, std::move(rows));
}

// Reference miner: enumerates every itemset over the universe and counts by
// scanning. Only viable for small universes; exists to cross-check the
// levelwise miner, so it shares no code with it.
inline std::vector<FrequentItemset> brute_force_mine(const TransactionDb& db,
                                                     const LevelThresholds& thresholds,
                                                     std::size_t max_k) {
  const std::uint32_t n = db.n_items();
  std::vector<std::uint32_t> row_masks;
  row_masks.reserve(db.size());
  for (const Transaction& t : db.transactions()) {
    std::uint32_t mask = 0;
    for (ItemId id : t.items()) mask |= 1u << id;
    row_masks.push_back(mask);
  }
  std::vector<FrequentItemset> result;
  for (std::uint32_t subset = 1; subset < (1u << n); ++subset) {
    const auto k = static_cast<std::size_t>(std::popcount(subset));
    if (k > max_k) continue;
    std::uint64_t count = 0;
    for (std::uint32_t mask : row_masks) {
      if ((mask & subset) == subset) ++count;
    }
    const double threshold = thresholds.at(k);
    // Same qualification rule as the miner: count / N >= threshold.
    const double scaled = threshold * static_cast<double>(db.size());
    if (static_cast<double>(count) + 1e-9 >= scaled) {
      Itemset items;
      for (std::uint32_t b = 0; b < n; ++b) {
        if ((subset >> b) & 1) items.push_back(b);
      }
      result.push_back({items, count, db.size()});
    }
  }
  std::sort(result.begin(), result.end(),
            [](const FrequentItemset& a, const FrequentItemset& b) {
              return itemset_less(a.items, b.items);
            });
  return result;
}

}  // namespace ppam::testutil

#endif  // PPAM_TESTS_TEST_UTIL_HPP_
