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

#ifndef PPAM_MARKET_BASKET_HPP_
#define PPAM_MARKET_BASKET_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ppam/random.hpp"

// Transaction database model and its text serialization.
//
// File format, one transaction per line:
//   # n=<item count>          (optional, first line only)
//   <id> <id> <id>
//   <id>
//                             (empty line = empty transaction)
// Items are space-separated decimal ids. Writers always emit the header and
// a trailing newline per line, so save followed by load is the identity.

namespace ppam {

using ItemId = std::uint32_t;

// Raised on malformed input; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// An itemset: strictly ascending item ids. Transactions and mined patterns
// share this representation.
class Transaction {
 public:
  Transaction() = default;

  // Sorts and deduplicates. `duplicates_removed`, when given, receives the
  // number of dropped repeats.
  explicit Transaction(std::vector<ItemId> items,
                       std::size_t* duplicates_removed = nullptr) {
    std::sort(items.begin(), items.end());
    auto last = std::unique(items.begin(), items.end());
    if (duplicates_removed != nullptr) {
      *duplicates_removed += static_cast<std::size_t>(items.end() - last);
    }
    items.erase(last, items.end());
    items_ = std::move(items);
  }

  const std::vector<ItemId>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  bool contains(ItemId id) const {
    return std::binary_search(items_.begin(), items_.end(), id);
  }

  // True when every id of `other` (ascending) occurs in this transaction.
  bool contains_all(const std::vector<ItemId>& other) const {
    return std::includes(items_.begin(), items_.end(), other.begin(), other.end());
  }

  friend bool operator==(const Transaction& a, const Transaction& b) {
    return a.items_ == b.items_;
  }
  friend bool operator!=(const Transaction& a, const Transaction& b) {
    return !(a == b);
  }

 private:
  std::vector<ItemId> items_;
};

// Immutable collection of transactions over the item universe [0, n_items).
class TransactionDb {
 public:
  TransactionDb() = default;

  TransactionDb(std::uint32_t n_items, std::vector<Transaction> transactions)
      : n_items_(n_items), transactions_(std::move(transactions)) {
    for (const Transaction& t : transactions_) {
      if (!t.empty() && t.items().back() >= n_items_) {
        throw std::out_of_range("TransactionDb: item id " +
                                std::to_string(t.items().back()) +
                                " outside universe of size " +
                                std::to_string(n_items_));
      }
    }
  }

  std::uint32_t n_items() const { return n_items_; }
  std::size_t size() const { return transactions_.size(); }
  bool empty() const { return transactions_.empty(); }
  const Transaction& operator[](std::size_t i) const { return transactions_[i]; }
  const std::vector<Transaction>& transactions() const { return transactions_; }

  friend bool operator==(const TransactionDb& a, const TransactionDb& b) {
    return a.n_items_ == b.n_items_ && a.transactions_ == b.transactions_;
  }

 private:
  std::uint32_t n_items_ = 0;
  std::vector<Transaction> transactions_;
};

struct DbStats {
  std::uint32_t n_items = 0;
  std::size_t transaction_count = 0;
  std::uint64_t total_item_occurrences = 0;
  double avg_len = 0.0;
  double density = 0.0;  // total occurrences / (transactions * items)
};

inline DbStats compute_stats(const TransactionDb& db) {
  if (db.empty()) throw std::domain_error("compute_stats: empty database");
  DbStats s;
  s.n_items = db.n_items();
  s.transaction_count = db.size();
  for (const Transaction& t : db.transactions()) s.total_item_occurrences += t.size();
  s.avg_len = static_cast<double>(s.total_item_occurrences) /
              static_cast<double>(s.transaction_count);
  s.density = s.n_items == 0
                  ? 0.0
                  : static_cast<double>(s.total_item_occurrences) /
                        (static_cast<double>(s.transaction_count) * s.n_items);
  return s;
}

struct LoadReport {
  std::size_t duplicate_items_removed = 0;
};

namespace detail {

inline ItemId parse_item(std::string_view token, std::size_t line_no) {
  ItemId value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line_no, "bad item token '" + std::string(token) + "'");
  }
  return value;
}

// Splits on runs of spaces/tabs; strips a trailing '\r'.
inline std::vector<std::string_view> tokenize(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

}  // namespace detail

// Reads a transaction database. The universe size is, in priority order:
// the explicit `n_hint`, the `# n=` header, or 1 + the largest id seen.
// Repeated ids within a line are dropped and counted in `report`.
inline TransactionDb load_db(std::istream& in,
                             std::optional<std::uint32_t> n_hint = std::nullopt,
                             LoadReport* report = nullptr) {
  std::vector<Transaction> transactions;
  std::optional<std::uint32_t> header_n;
  LoadReport local;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (first && view.rfind("# n=", 0) == 0) {
      first = false;
      std::string_view rest = view.substr(4);
      std::uint32_t n = 0;
      auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
      if (ec != std::errc() || ptr != rest.data() + rest.size()) {
        throw ParseError(line_no, "bad header '" + std::string(view) + "'");
      }
      header_n = n;
      continue;
    }
    first = false;
    std::vector<ItemId> items;
    for (std::string_view token : detail::tokenize(view)) {
      items.push_back(detail::parse_item(token, line_no));
    }
    transactions.emplace_back(std::move(items), &local.duplicate_items_removed);
  }
  std::uint32_t n_items;
  if (n_hint.has_value()) {
    n_items = *n_hint;
  } else if (header_n.has_value()) {
    n_items = *header_n;
  } else {
    ItemId max_seen = 0;
    bool any = false;
    for (const Transaction& t : transactions) {
      if (!t.empty()) {
        max_seen = std::max(max_seen, t.items().back());
        any = true;
      }
    }
    n_items = any ? max_seen + 1 : 0;
  }
  if (report != nullptr) *report = local;
  // The range check lives in the TransactionDb constructor; translate to a
  // parse failure so callers see one error type for bad files.
  for (std::size_t i = 0; i < transactions.size(); ++i) {
    if (!transactions[i].empty() && transactions[i].items().back() >= n_items) {
      throw ParseError(i + (header_n.has_value() ? 2 : 1),
                       "item id " + std::to_string(transactions[i].items().back()) +
                           " out of range for n=" + std::to_string(n_items));
    }
  }
  return TransactionDb(n_items, std::move(transactions));
}

inline void save_db(std::ostream& out, const TransactionDb& db) {
  out << "# n=" << db.n_items() << "\n";
  for (const Transaction& t : db.transactions()) {
    bool leading = true;
    for (ItemId id : t.items()) {
      if (!leading) out << ' ';
      out << id;
      leading = false;
    }
    out << '\n';
  }
}

// --- Provenance sidecar -----------------------------------------------------
//
// A sidecar labels each row of an anonymized database as real or fake and,
// when the row was bit-distorted, carries the pre-distortion item list:
//   R
//   F
//   R|3 17 20
// Sidecars are written only on request; they exist for evaluation and for
// attack simulations that need ground truth.

enum class RowOrigin : std::uint8_t { kReal, kFake };

struct ProvenanceEntry {
  RowOrigin origin = RowOrigin::kReal;
  std::optional<std::vector<ItemId>> original_items;

  friend bool operator==(const ProvenanceEntry& a, const ProvenanceEntry& b) {
    return a.origin == b.origin && a.original_items == b.original_items;
  }
};

class ProvenanceSidecar {
 public:
  ProvenanceSidecar() = default;
  explicit ProvenanceSidecar(std::vector<ProvenanceEntry> entries)
      : entries_(std::move(entries)) {}

  std::size_t size() const { return entries_.size(); }
  const ProvenanceEntry& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<ProvenanceEntry>& entries() const { return entries_; }

  std::size_t real_count() const {
    std::size_t c = 0;
    for (const auto& e : entries_) c += e.origin == RowOrigin::kReal ? 1 : 0;
    return c;
  }
  std::size_t fake_count() const { return entries_.size() - real_count(); }

  friend bool operator==(const ProvenanceSidecar& a, const ProvenanceSidecar& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<ProvenanceEntry> entries_;
};

inline void save_provenance(std::ostream& out, const ProvenanceSidecar& sidecar) {
  for (const ProvenanceEntry& e : sidecar.entries()) {
    out << (e.origin == RowOrigin::kReal ? 'R' : 'F');
    if (e.original_items.has_value()) {
      out << '|';
      bool leading = true;
      for (ItemId id : *e.original_items) {
        if (!leading) out << ' ';
        out << id;
        leading = false;
      }
    }
    out << '\n';
  }
}

inline ProvenanceSidecar load_provenance(std::istream& in) {
  std::vector<ProvenanceEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (view.empty()) throw ParseError(line_no, "empty provenance row");
    ProvenanceEntry entry;
    if (view[0] == 'R') {
      entry.origin = RowOrigin::kReal;
    } else if (view[0] == 'F') {
      entry.origin = RowOrigin::kFake;
    } else {
      throw ParseError(line_no, "provenance row must start with R or F");
    }
    if (view.size() > 1) {
      if (view[1] != '|') throw ParseError(line_no, "expected '|' after origin tag");
      std::vector<ItemId> items;
      for (std::string_view token : detail::tokenize(view.substr(2))) {
        items.push_back(detail::parse_item(token, line_no));
      }
      std::size_t dupes = 0;
      Transaction canonical(std::move(items), &dupes);
      if (dupes > 0) throw ParseError(line_no, "duplicate items in provenance row");
      entry.original_items = canonical.items();
    }
    entries.push_back(std::move(entry));
  }
  return ProvenanceSidecar(std::move(entries));
}

// --- Synthetic generation ---------------------------------------------------

struct ItemWeighting {
  static ItemWeighting uniform() { return ItemWeighting{false, 0.0}; }
  static ItemWeighting zipf(double exponent) {
    if (exponent <= 0.0) throw std::invalid_argument("zipf exponent must be positive");
    return ItemWeighting{true, exponent};
  }

  bool is_zipf = false;
  double exponent = 0.0;
};

// Generates `transaction_count` transactions over [0, n_items). Lengths are
// uniform integers on [1, round(2*avg_len) - 1], so the mean length equals
// avg_len whenever 2*avg_len is integral. Items are drawn without
// replacement, uniformly or by Zipf rank weight (weight of id r is
// 1/(r+1)^exponent).
inline TransactionDb gen_synthetic(std::uint32_t n_items,
                                   std::size_t transaction_count,
                                   double avg_len, const ItemWeighting& weighting,
                                   std::uint64_t seed) {
  if (n_items == 0) throw std::invalid_argument("gen_synthetic: n_items must be positive");
  if (transaction_count == 0) {
    throw std::invalid_argument("gen_synthetic: transaction_count must be positive");
  }
  if (avg_len < 1.0 || avg_len > static_cast<double>(n_items)) {
    throw std::invalid_argument("gen_synthetic: avg_len outside [1, n_items]");
  }
  const auto max_len = static_cast<std::int64_t>(std::llround(2.0 * avg_len)) - 1;
  if (max_len > static_cast<std::int64_t>(n_items)) {
    throw std::invalid_argument(
        "gen_synthetic: avg_len too large; longest transaction would exceed "
        "the item universe (need avg_len <= (n_items + 1) / 2)");
  }
  Rng rng(seed);
  std::optional<WeightedSampler> sampler;
  if (weighting.is_zipf) {
    std::vector<double> weights(n_items);
    for (std::uint32_t i = 0; i < n_items; ++i) {
      weights[i] = 1.0 / std::pow(static_cast<double>(i) + 1.0, weighting.exponent);
    }
    sampler.emplace(weights);
  }
  std::vector<Transaction> rows;
  rows.reserve(transaction_count);
  for (std::size_t t = 0; t < transaction_count; ++t) {
    const auto len = static_cast<std::uint32_t>(uniform_int(rng, 1, max_len));
    std::vector<ItemId> items;
    if (sampler.has_value()) {
      // Rejection on repeats keeps the draw order deterministic; lengths are
      // far below n_items in practice, so repeats are rare.
      items.reserve(len);
      while (items.size() < len) {
        ItemId id = sampler->draw(rng);
        if (std::find(items.begin(), items.end(), id) == items.end()) {
          items.push_back(id);
        }
      }
      std::sort(items.begin(), items.end());
    } else {
      items = sample_without_replacement(rng, len, n_items);
    }
    rows.emplace_back(std::move(items));
  }
  return TransactionDb(n_items, std::move(rows));
}

}  // namespace ppam

#endif  // PPAM_MARKET_BASKET_HPP_
