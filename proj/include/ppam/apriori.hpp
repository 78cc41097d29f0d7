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

#ifndef PPAM_APRIORI_HPP_
#define PPAM_APRIORI_HPP_

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ppam/market_basket.hpp"
#include "ppam/math.hpp"

// Levelwise frequent-itemset mining with exact integer support counting.
// Candidates are counted against per-item transaction bitmaps (one bit per
// transaction), so a k-candidate costs k bitwise ANDs plus popcounts over
// N/64 words.

namespace ppam {

using Itemset = std::vector<ItemId>;  // strictly ascending ids

// Canonical constructor for hand-written itemsets in tests and tools.
inline Itemset make_itemset(std::vector<ItemId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

struct FrequentItemset {
  Itemset items;
  std::uint64_t count = 0;  // transactions containing `items`
  std::uint64_t total = 0;  // transactions in the mined database

  double support() const { return static_cast<double>(count) / static_cast<double>(total); }
  Rational support_rational() const {
    return Rational(static_cast<std::int64_t>(count), static_cast<std::int64_t>(total));
  }
};

// Mining output whose support went through a statistical correction
// (de-biasing or distortion inversion); no longer an exact count.
struct EstimatedItemset {
  Itemset items;
  double support = 0.0;
};

// Orders itemsets by length, then lexicographically. All mining output is
// sorted this way.
inline bool itemset_less(const Itemset& a, const Itemset& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Minimum support threshold per itemset size. Thresholds need not be
// monotone in k; the miner compensates (see mine_frequent).
class LevelThresholds {
 public:
  explicit LevelThresholds(std::function<double(std::size_t)> threshold_for_level)
      : f_(std::move(threshold_for_level)) {}

  static LevelThresholds constant(double s) {
    return LevelThresholds([s](std::size_t) { return s; });
  }

  double at(std::size_t k) const { return f_(k); }

 private:
  std::function<double(std::size_t)> f_;
};

namespace detail {

// Smallest count c with c/total >= threshold. The epsilon absorbs decimal
// thresholds that are not exactly representable (0.2 * 10 must require 2,
// not 3).
inline std::uint64_t min_count_for(double threshold, std::uint64_t total) {
  if (threshold <= 0.0) return 0;
  double scaled = threshold * static_cast<double>(total);
  double c = std::ceil(scaled - 1e-9);
  if (c < 0.0) return 0;
  return static_cast<std::uint64_t>(c);
}

}  // namespace detail

// Per-item transaction bitmaps. Bit t of word t/64 is set when transaction
// t contains the item.
class ItemBitmaps {
 public:
  explicit ItemBitmaps(const TransactionDb& db)
      : n_items_(db.n_items()),
        n_rows_(db.size()),
        words_per_item_((db.size() + 63) / 64),
        bits_(static_cast<std::size_t>(db.n_items()) * words_per_item_, 0) {
    for (std::size_t t = 0; t < db.size(); ++t) {
      for (ItemId id : db[t].items()) {
        bits_[static_cast<std::size_t>(id) * words_per_item_ + t / 64] |=
            std::uint64_t{1} << (t % 64);
      }
    }
  }

  std::size_t rows() const { return n_rows_; }
  std::uint32_t n_items() const { return n_items_; }

  std::uint64_t count_containing(const Itemset& items) const {
    if (items.empty()) return n_rows_;
    for (ItemId id : items) check_item(id);
    std::uint64_t count = 0;
    for (std::size_t w = 0; w < words_per_item_; ++w) {
      std::uint64_t acc = word(items[0], w);
      for (std::size_t j = 1; j < items.size() && acc != 0; ++j) {
        acc &= word(items[j], w);
      }
      count += std::popcount(acc);
    }
    return count;
  }

  // Joint presence histogram over the given items: entry `pat` counts the
  // transactions where exactly the items whose bit is set in `pat` occur
  // (bit b of pat corresponds to items[b]). Sums to rows().
  std::vector<std::uint64_t> pattern_counts(const Itemset& items) const {
    const std::size_t k = items.size();
    if (k == 0 || k > 16) throw std::invalid_argument("pattern_counts: need 1..16 items");
    for (ItemId id : items) check_item(id);
    std::vector<std::uint64_t> counts(std::size_t{1} << k, 0);
    const std::uint64_t tail_mask =
        n_rows_ % 64 == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << (n_rows_ % 64)) - 1;
    for (std::size_t w = 0; w < words_per_item_; ++w) {
      const std::uint64_t valid = w + 1 == words_per_item_ ? tail_mask : ~std::uint64_t{0};
      for (std::size_t pat = 0; pat < counts.size(); ++pat) {
        std::uint64_t acc = valid;
        for (std::size_t b = 0; b < k && acc != 0; ++b) {
          std::uint64_t bits = word(items[b], w);
          acc &= (pat >> b) & 1 ? bits : ~bits;
        }
        counts[pat] += std::popcount(acc);
      }
    }
    return counts;
  }

 private:
  void check_item(ItemId id) const {
    if (id >= n_items_) throw std::out_of_range("ItemBitmaps: item id out of range");
  }
  std::uint64_t word(ItemId id, std::size_t w) const {
    return bits_[static_cast<std::size_t>(id) * words_per_item_ + w];
  }

  std::uint32_t n_items_;
  std::size_t n_rows_;
  std::size_t words_per_item_;
  std::vector<std::uint64_t> bits_;
};

// Exact support of an itemset: containing transactions over N. The empty
// itemset has support 1.
inline Rational support(const TransactionDb& db, const Itemset& items) {
  if (db.empty()) throw std::domain_error("support: empty database");
  std::uint64_t count = 0;
  for (const Transaction& t : db.transactions()) {
    if (t.contains_all(items)) ++count;
  }
  return Rational(static_cast<std::int64_t>(count), static_cast<std::int64_t>(db.size()));
}

namespace detail {

// Joins ascending-sorted k-1 survivors that share their first k-2 items,
// then prunes candidates with a non-surviving k-1 subset. Standard
// apriori-gen; `survivors` must be sorted by itemset_less.
inline std::vector<Itemset> join_candidates(const std::vector<Itemset>& survivors) {
  std::vector<Itemset> candidates;
  if (survivors.empty()) return candidates;
  const std::size_t k1 = survivors[0].size();
  std::set<Itemset> survivor_set(survivors.begin(), survivors.end());
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    for (std::size_t j = i + 1; j < survivors.size(); ++j) {
      const Itemset& a = survivors[i];
      const Itemset& b = survivors[j];
      if (!std::equal(a.begin(), a.end() - 1, b.begin(), b.end() - 1)) break;
      Itemset candidate = a;
      candidate.push_back(b.back());
      bool all_subsets_survive = true;
      if (k1 >= 2) {
        Itemset subset(candidate.size() - 1);
        for (std::size_t drop = 0; drop + 2 < candidate.size() && all_subsets_survive;
             ++drop) {
          // Dropping either of the last two items reproduces a or b.
          std::size_t pos = 0;
          for (std::size_t m = 0; m < candidate.size(); ++m) {
            if (m != drop) subset[pos++] = candidate[m];
          }
          all_subsets_survive = survivor_set.count(subset) > 0;
        }
      }
      if (all_subsets_survive) candidates.push_back(std::move(candidate));
    }
  }
  return candidates;
}

}  // namespace detail

// Frequent-itemset mining with a (possibly non-monotone) per-level
// threshold. Itemsets of size k are reported when their support is at least
// thresholds.at(k).
//
// Because a level's threshold may undercut earlier levels', candidate
// generation keeps every itemset whose support reaches the *minimum*
// threshold over the remaining levels (a non-decreasing floor, restoring
// anti-monotonicity); the reported set is filtered by the exact per-level
// value. Output is sorted by (size, lexicographic).
inline std::vector<FrequentItemset> mine_frequent(
    const TransactionDb& db, const LevelThresholds& thresholds,
    std::optional<std::size_t> max_k = std::nullopt) {
  if (db.empty()) throw std::domain_error("mine_frequent: empty database");
  std::size_t longest = 0;
  for (const Transaction& t : db.transactions()) longest = std::max(longest, t.size());
  const std::size_t levels = std::min(max_k.value_or(longest), longest);
  std::vector<FrequentItemset> result;
  if (levels == 0) return result;

  // floor[k] = min threshold over levels k..levels.
  std::vector<double> floor_threshold(levels + 1, std::numeric_limits<double>::infinity());
  for (std::size_t k = levels; k >= 1; --k) {
    floor_threshold[k] = std::min(thresholds.at(k),
                                  k == levels ? std::numeric_limits<double>::infinity()
                                              : floor_threshold[k + 1]);
  }

  ItemBitmaps bitmaps(db);
  const std::uint64_t total = db.size();

  std::vector<Itemset> candidates;
  candidates.reserve(db.n_items());
  for (ItemId id = 0; id < db.n_items(); ++id) candidates.push_back({id});

  for (std::size_t k = 1; k <= levels && !candidates.empty(); ++k) {
    const std::uint64_t keep_bar = detail::min_count_for(floor_threshold[k], total);
    const std::uint64_t emit_bar = detail::min_count_for(thresholds.at(k), total);
    std::vector<Itemset> survivors;
    for (Itemset& candidate : candidates) {
      const std::uint64_t count = bitmaps.count_containing(candidate);
      if (count >= emit_bar && emit_bar <= total) {
        result.push_back({candidate, count, total});
      }
      if (count >= keep_bar) survivors.push_back(std::move(candidate));
    }
    if (k == levels) break;
    candidates = detail::join_candidates(survivors);
  }
  std::sort(result.begin(), result.end(),
            [](const FrequentItemset& a, const FrequentItemset& b) {
              return itemset_less(a.items, b.items);
            });
  return result;
}

struct AssociationRule {
  Itemset antecedent;
  Itemset consequent;
  Rational support;     // support of antecedent + consequent
  Rational confidence;  // support(union) / support(antecedent)
};

// Derives X => Y rules from every frequent itemset of size >= 2, splitting
// into all nonempty antecedent/consequent pairs. Antecedent supports missing
// from `frequent` (possible under non-monotone thresholds) are counted from
// the database directly.
inline std::vector<AssociationRule> derive_rules(
    const std::vector<FrequentItemset>& frequent, double min_confidence,
    const TransactionDb& db) {
  std::map<Itemset, Rational> known;
  for (const FrequentItemset& f : frequent) known.emplace(f.items, f.support_rational());
  auto support_of = [&](const Itemset& items) {
    auto it = known.find(items);
    if (it != known.end()) return it->second;
    Rational s = support(db, items);
    known.emplace(items, s);
    return s;
  };

  std::vector<AssociationRule> rules;
  for (const FrequentItemset& f : frequent) {
    const std::size_t k = f.items.size();
    if (k < 2 || k > 20) continue;
    const Rational joint = f.support_rational();
    for (std::uint32_t mask = 1; mask + 1 < (1u << k); ++mask) {
      Itemset antecedent, consequent;
      for (std::size_t b = 0; b < k; ++b) {
        ((mask >> b) & 1 ? antecedent : consequent).push_back(f.items[b]);
      }
      const Rational base = support_of(antecedent);
      if (base.num() == 0) continue;
      const Rational confidence = joint / base;
      // Compare against the double threshold without leaving exact land:
      // confidence >= min_confidence  <=>  num >= min_confidence * den.
      if (static_cast<double>(confidence.num()) >=
          min_confidence * static_cast<double>(confidence.den()) - 1e-12) {
        rules.push_back({std::move(antecedent), std::move(consequent), joint, confidence});
      }
    }
  }
  std::sort(rules.begin(), rules.end(), [](const AssociationRule& a, const AssociationRule& b) {
    if (a.antecedent != b.antecedent) return itemset_less(a.antecedent, b.antecedent);
    return itemset_less(a.consequent, b.consequent);
  });
  return rules;
}

}  // namespace ppam

#endif  // PPAM_APRIORI_HPP_
