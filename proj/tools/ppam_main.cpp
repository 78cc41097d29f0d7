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

// Command-line front end. Every run is deterministic given its flags: all
// randomness flows from --seed, no wall-clock or locale state leaks into the
// output. Exit codes: 0 success, 2 configuration error, 3 data error,
// 4 tolerance failure in a canned reproduction pipeline.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "ppam/ppam.hpp"

namespace {

// Data-shaped failures (unreadable files, malformed content): exit code 3.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A canned pipeline produced values outside its pinned tolerance: exit 4.
struct ToleranceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v, int precision) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(precision) << v;
  return out.str();
}

std::string items_to_string(const ppam::Itemset& items) {
  std::ostringstream out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out << ' ';
    out << items[i];
  }
  return out.str();
}

// Writes to `<path>.tmp` and renames into place on commit, so a failed run
// never leaves a partial output behind.
class OutputFile {
 public:
  explicit OutputFile(std::string path)
      : path_(std::move(path)), tmp_(path_ + ".tmp"), out_(tmp_, std::ios::binary) {
    if (!out_) throw DataError("cannot open output file " + tmp_);
  }

  OutputFile(const OutputFile&) = delete;
  OutputFile& operator=(const OutputFile&) = delete;

  ~OutputFile() {
    if (!committed_) {
      out_.close();
      std::remove(tmp_.c_str());
    }
  }

  std::ostream& stream() { return out_; }

  void commit() {
    out_.flush();
    if (!out_) throw DataError("write failed for " + tmp_);
    out_.close();
    if (std::rename(tmp_.c_str(), path_.c_str()) != 0) {
      throw DataError("cannot move " + tmp_ + " into place");
    }
    committed_ = true;
  }

 private:
  std::string path_;
  std::string tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

ppam::TransactionDb load_db_file(const std::string& path,
                                 ppam::LoadReport* report = nullptr,
                                 std::optional<std::uint32_t> n_hint = std::nullopt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open input file " + path);
  return ppam::load_db(in, n_hint, report);
}

ppam::ProvenanceSidecar load_provenance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open provenance file " + path);
  return ppam::load_provenance(in);
}

void warn_density(const ppam::TransactionDb& db) {
  if (db.empty()) return;
  const ppam::DbStats stats = ppam::compute_stats(db);
  if (stats.density > 0.25) {
    std::cerr << "warning: output density " << fmt(stats.density, 3)
              << " exceeds 0.25; the item-list format stores distorted data inefficiently\n";
  }
}

// ---------------------------------------------------------------------------
// stats

struct StatsConfig {
  std::string in;
  std::optional<std::uint32_t> n_items;  // universe hint for headerless files
  std::string format = "text";
};

int run_stats(const StatsConfig& cfg) {
  ppam::LoadReport report;
  ppam::TransactionDb db = load_db_file(cfg.in, &report, cfg.n_items);
  if (report.duplicate_items_removed > 0) {
    std::cerr << "warning: removed " << report.duplicate_items_removed
              << " duplicate items\n";
  }
  const ppam::DbStats stats = ppam::compute_stats(db);
  if (cfg.format == "csv") {
    std::cout << "n_items,transactions,total_items,avg_len,density\n"
              << stats.n_items << ',' << stats.transaction_count << ','
              << stats.total_item_occurrences << ',' << fmt(stats.avg_len, 6) << ','
              << fmt(stats.density, 6) << '\n';
  } else {
    std::cout << "n_items=" << stats.n_items << '\n'
              << "transactions=" << stats.transaction_count << '\n'
              << "total_items=" << stats.total_item_occurrences << '\n'
              << "avg_len=" << fmt(stats.avg_len, 6) << '\n'
              << "density=" << fmt(stats.density, 6) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// synth

struct SynthConfig {
  std::uint32_t n_items = 0;
  std::size_t transactions = 0;
  double avg_len = 1.0;
  std::string weighting = "uniform";
  double zipf_exponent = 1.0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_synth(const SynthConfig& cfg) {
  const ppam::ItemWeighting weighting = cfg.weighting == "zipf"
                                            ? ppam::ItemWeighting::zipf(cfg.zipf_exponent)
                                            : ppam::ItemWeighting::uniform();
  ppam::TransactionDb db =
      ppam::gen_synthetic(cfg.n_items, cfg.transactions, cfg.avg_len, weighting, cfg.seed);
  OutputFile out(cfg.out);
  ppam::save_db(out.stream(), db);
  out.commit();
  std::cout << "transactions=" << db.size() << '\n'
            << "n_items=" << db.n_items() << '\n'
            << "avg_len=" << fmt(ppam::compute_stats(db).avg_len, 6) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// anonymize

struct AnonymizeConfig {
  std::string scheme;
  std::string in;
  std::string out;
  std::string provenance;  // optional sidecar path
  std::uint32_t w = 0;
  std::uint32_t l = 0;  // 0: derive from the input's average length
  double p = 0.9;
  double a = 0.5;
  std::uint64_t seed = 0;
};

int run_anonymize(const AnonymizeConfig& cfg) {
  ppam::TransactionDb db = load_db_file(cfg.in);
  const bool want_provenance = !cfg.provenance.empty();

  ppam::TransactionDb published;
  std::optional<ppam::ProvenanceSidecar> sidecar;
  if (cfg.scheme == "fs") {
    ppam::FsParams params =
        cfg.l > 0 ? ppam::FsParams{cfg.w, cfg.l} : ppam::fs_params_for(db, cfg.w);
    ppam::FsDb result = ppam::fs_anonymize(db, params, cfg.seed, want_provenance);
    published = std::move(result.db_prime);
    sidecar = std::move(result.provenance);
    std::cout << "scheme=fs\nw=" << params.w << "\nl=" << params.l << '\n';
  } else if (cfg.scheme == "ps") {
    ppam::PsDistortResult result = ppam::ps_distort(db, cfg.p, cfg.seed, want_provenance);
    published = std::move(result.db);
    sidecar = std::move(result.provenance);
    std::cout << "scheme=ps\np=" << fmt(cfg.p, 6) << '\n';
  } else if (cfg.scheme == "hs") {
    ppam::FsParams fs_params =
        cfg.l > 0 ? ppam::FsParams{cfg.w, cfg.l} : ppam::fs_params_for(db, cfg.w);
    ppam::HsParams params{fs_params, ppam::PsParams{cfg.p, cfg.a}};
    ppam::HsDb result = ppam::hs_anonymize(db, params, cfg.seed, want_provenance);
    published = std::move(result.db);
    sidecar = std::move(result.provenance);
    std::cout << "scheme=hs\nw=" << params.fs.w << "\nl=" << params.fs.l
              << "\np=" << fmt(cfg.p, 6) << '\n';
  } else {
    throw std::invalid_argument("unknown scheme " + cfg.scheme);
  }

  OutputFile out(cfg.out);
  ppam::save_db(out.stream(), published);
  std::optional<OutputFile> prov_out;
  if (want_provenance) {
    prov_out.emplace(cfg.provenance);
    ppam::save_provenance(prov_out->stream(), *sidecar);
  }
  out.commit();
  if (prov_out) prov_out->commit();
  if (cfg.scheme != "fs") warn_density(published);
  std::cout << "rows_in=" << db.size() << '\n' << "rows_out=" << published.size() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// mine

struct MineConfig {
  std::string in;
  std::string out;  // empty: stdout
  std::string scheme = "plain";
  double s_min = 0.0;
  std::size_t max_k = 0;  // 0: unlimited (plain/fs only)
  double slack = 0.0;
  std::uint32_t w = 0;
  std::uint32_t l = 0;
  double p = 0.9;
  double min_conf = -1.0;  // < 0: no rule derivation
};

void emit_frequent(std::ostream& out, const std::vector<ppam::FrequentItemset>& v) {
  for (const ppam::FrequentItemset& f : v) {
    out << f.count << '/' << f.total << ' ' << items_to_string(f.items) << '\n';
  }
}

void emit_estimated(std::ostream& out, const std::vector<ppam::EstimatedItemset>& v) {
  for (const ppam::EstimatedItemset& e : v) {
    out << items_to_string(e.items) << " est=" << fmt(e.support, 6) << '\n';
  }
}

void emit_rules(std::ostream& out, const std::vector<ppam::AssociationRule>& rules) {
  for (const ppam::AssociationRule& r : rules) {
    out << items_to_string(r.antecedent) << " -> " << items_to_string(r.consequent)
        << "  supp=" << fmt(r.support.value(), 6) << " conf=" << fmt(r.confidence.value(), 6)
        << '\n';
  }
}

int run_mine(const MineConfig& cfg) {
  ppam::TransactionDb db = load_db_file(cfg.in);
  const std::optional<std::size_t> max_k =
      cfg.max_k == 0 ? std::nullopt : std::optional<std::size_t>(cfg.max_k);
  const std::size_t estimator_max_k = cfg.max_k == 0 ? 4 : cfg.max_k;

  std::ostringstream body;
  if (cfg.scheme == "plain") {
    auto frequent = ppam::mine_frequent(db, ppam::LevelThresholds::constant(cfg.s_min), max_k);
    emit_frequent(body, frequent);
    if (cfg.min_conf >= 0.0) {
      body << '\n';
      emit_rules(body, ppam::derive_rules(frequent, cfg.min_conf, db));
    }
  } else if (cfg.scheme == "fs") {
    if (cfg.w == 0 || cfg.l == 0) {
      throw std::invalid_argument("mine --scheme fs requires --w and --l of the published data");
    }
    ppam::FsDb fsdb;
    fsdb.db_prime = std::move(db);
    fsdb.params = ppam::FsParams{cfg.w, cfg.l};
    emit_estimated(body, ppam::fs_mine(fsdb, cfg.s_min, max_k));
  } else if (cfg.scheme == "ps") {
    emit_estimated(body, ppam::ps_mine(db, cfg.p, cfg.s_min, estimator_max_k, cfg.slack));
  } else if (cfg.scheme == "hs") {
    if (cfg.w == 0 || cfg.l == 0) {
      throw std::invalid_argument("mine --scheme hs requires --w and --l of the published data");
    }
    ppam::HsParams params{ppam::FsParams{cfg.w, cfg.l}, ppam::PsParams{cfg.p, 0.5}};
    emit_estimated(body,
                   ppam::hs_mine(db, params, cfg.s_min, estimator_max_k, cfg.slack));
  } else {
    throw std::invalid_argument("unknown scheme " + cfg.scheme);
  }

  if (cfg.out.empty()) {
    std::cout << body.str();
  } else {
    OutputFile out(cfg.out);
    out.stream() << body.str();
    out.commit();
  }
  return 0;
}

// ---------------------------------------------------------------------------
// privacy / table1

struct PrivacyConfig {
  double w = 0.0;
  std::optional<std::uint64_t> n;
  std::vector<double> gammas;
  bool table1 = false;
  bool limit = false;
  std::string format = "text";
};

// Emits the canned privacy grid (gamma 0.0..0.7 by 0.1, w 1..10) as aligned
// text and CSV; in limit mode every cell is checked against the stored
// reference within 2e-3.
int run_table1(std::optional<std::uint64_t> n) {
  std::vector<double> ws, gammas;
  for (int w = 1; w <= 10; ++w) ws.push_back(static_cast<double>(w));
  for (int g = 0; g <= 7; ++g) gammas.push_back(g / 10.0);
  const auto grid = ppam::privacy_table(ws, gammas, n);

  std::cout << std::setw(9) << std::left << "gamma" << std::right;
  for (double w : ws) std::cout << std::setw(8) << ("w=" + fmt(w, 0));
  std::cout << '\n';
  for (std::size_t g = 0; g < gammas.size(); ++g) {
    std::cout << std::setw(9) << std::left << fmt(gammas[g], 1) << std::right;
    for (double cell : grid[g]) std::cout << std::setw(8) << fmt(cell, 4);
    std::cout << '\n';
  }
  std::cout << '\n' << "gamma";
  for (double w : ws) std::cout << ',' << fmt(w, 0);
  std::cout << '\n';
  for (std::size_t g = 0; g < gammas.size(); ++g) {
    std::cout << fmt(gammas[g], 1);
    for (double cell : grid[g]) std::cout << ',' << fmt(cell, 4);
    std::cout << '\n';
  }

  if (!n.has_value()) {
    const auto& reference = ppam::filtered_privacy_reference();
    for (std::size_t g = 0; g < gammas.size(); ++g) {
      for (std::size_t w = 0; w < ws.size(); ++w) {
        const double diff = std::abs(grid[g][w] - reference[g][w]);
        if (diff > 2e-3) {
          throw ToleranceError("privacy grid cell gamma=" + fmt(gammas[g], 1) +
                               " w=" + fmt(ws[w], 0) + " deviates by " + fmt(diff, 6));
        }
      }
    }
    std::cout << "\ngrid_check=pass tolerance=0.002\n";
  }
  return 0;
}

int run_privacy(const PrivacyConfig& cfg) {
  if (cfg.table1) {
    return run_table1(cfg.limit ? std::optional<std::uint64_t>() : cfg.n);
  }
  if (cfg.w <= 0.0) throw std::invalid_argument("privacy requires --w > 0");
  const std::optional<std::uint64_t> n =
      cfg.limit ? std::optional<std::uint64_t>() : cfg.n;
  const std::string n_str = n.has_value() ? std::to_string(*n) : "limit";
  const double worst = ppam::fs_worst(cfg.w);
  const double average = ppam::fs_average(cfg.w, n);
  if (cfg.format == "csv") {
    std::cout << "w,n,gamma,privacy\n";
    std::cout << fmt(cfg.w, 6) << ',' << n_str << ",worst," << fmt(worst, 6) << '\n';
    std::cout << fmt(cfg.w, 6) << ',' << n_str << ",0.0," << fmt(average, 6) << '\n';
    for (double gamma : cfg.gammas) {
      std::cout << fmt(cfg.w, 6) << ',' << n_str << ',' << fmt(gamma, 6) << ','
                << fmt(ppam::fs_average_filtered(cfg.w, n, gamma), 6) << '\n';
    }
  } else {
    std::cout << "w=" << fmt(cfg.w, 6) << '\n'
              << "n=" << n_str << '\n'
              << "worst_case=" << fmt(worst, 6) << '\n'
              << "average_case=" << fmt(average, 6) << '\n';
    for (double gamma : cfg.gammas) {
      std::cout << "gamma=" << fmt(gamma, 6)
                << " privacy=" << fmt(ppam::fs_average_filtered(cfg.w, n, gamma), 6) << '\n';
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// attack

struct AttackConfig {
  std::string mode;
  std::string in;
  std::string provenance;
  std::string prior;  // guided: real database the item prior is measured on
  std::string out;    // guided: filtered database
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  double threshold = 0.0;
  double fake_item_prob = 0.0;  // 0: derive l/n from the prior database
};

int run_attack_random(const AttackConfig& cfg) {
  if (cfg.provenance.empty()) {
    throw std::invalid_argument("attack --mode random requires --provenance");
  }
  ppam::FsDb fsdb;
  fsdb.db_prime = load_db_file(cfg.in);
  fsdb.provenance = load_provenance_file(cfg.provenance);
  if (fsdb.provenance->size() != fsdb.db_prime.size()) {
    throw DataError("provenance length does not match the database");
  }
  fsdb.real_count = fsdb.provenance->real_count();
  const double reals = static_cast<double>(fsdb.provenance->real_count());
  const double fakes = static_cast<double>(fsdb.provenance->fake_count());
  const std::vector<double> freq = ppam::random_reconstruction(fsdb, cfg.trials, cfg.seed);

  double mean = 0.0, predicted_mean = 0.0;
  for (std::size_t i = 0; i < freq.size(); ++i) {
    mean += freq[i];
    predicted_mean += (reals - static_cast<double>(i)) /
                      (fakes + reals - static_cast<double>(i));
  }
  mean /= static_cast<double>(freq.size());
  predicted_mean /= static_cast<double>(freq.size());
  std::cout << "mode=random\n"
            << "reals=" << fsdb.provenance->real_count() << '\n'
            << "fakes=" << fsdb.provenance->fake_count() << '\n'
            << "trials=" << cfg.trials << '\n'
            << "mean_success=" << fmt(mean, 6) << '\n'
            << "predicted_mean=" << fmt(predicted_mean, 6) << '\n'
            << "step,frequency,predicted\n";
  for (std::size_t i = 0; i < freq.size(); ++i) {
    const double predicted = (reals - static_cast<double>(i)) /
                             (fakes + reals - static_cast<double>(i));
    std::cout << i << ',' << fmt(freq[i], 6) << ',' << fmt(predicted, 6) << '\n';
  }
  return 0;
}

int run_attack_guided(const AttackConfig& cfg) {
  if (cfg.prior.empty()) {
    throw std::invalid_argument("attack --mode guided requires --prior (a real database)");
  }
  ppam::TransactionDb published = load_db_file(cfg.in);
  ppam::TransactionDb prior_db = load_db_file(cfg.prior);
  if (prior_db.n_items() != published.n_items()) {
    throw DataError("prior database item universe does not match the published one");
  }
  std::vector<double> side_info(prior_db.n_items(), 0.0);
  for (const ppam::Transaction& t : prior_db.transactions()) {
    for (ppam::ItemId id : t.items()) side_info[id] += 1.0;
  }
  for (double& v : side_info) v /= static_cast<double>(prior_db.size());
  double fake_item_prob = cfg.fake_item_prob;
  if (fake_item_prob <= 0.0) {
    fake_item_prob = ppam::compute_stats(prior_db).avg_len /
                     static_cast<double>(prior_db.n_items());
  }

  std::optional<ppam::ProvenanceSidecar> truth;
  if (!cfg.provenance.empty()) {
    truth = load_provenance_file(cfg.provenance);
    if (truth->size() != published.size()) {
      throw DataError("provenance length does not match the database");
    }
  }
  ppam::GuidedFilterResult result =
      ppam::guided_filter(published, side_info, cfg.threshold, fake_item_prob,
                          truth.has_value() ? &*truth : nullptr);
  std::cout << "mode=guided\n"
            << "threshold=" << fmt(cfg.threshold, 6) << '\n'
            << "fake_item_prob=" << fmt(fake_item_prob, 6) << '\n'
            << "rows_in=" << published.size() << '\n'
            << "rows_kept=" << result.filtered.size() << '\n';
  if (result.outcome.has_value()) {
    const std::uint64_t reals = truth->real_count();
    const std::uint64_t fakes = truth->fake_count();
    const double w = reals == 0 ? 0.0
                                : static_cast<double>(fakes) / static_cast<double>(reals);
    // Fractional effective budget, so skip the FsParams wrapper.
    const double residual = ppam::fs_average_filtered(
        w,
        reals < 3 ? std::optional<std::uint64_t>() : std::optional<std::uint64_t>(reals),
        result.outcome->gamma_achieved);
    std::cout << "gamma_achieved=" << fmt(result.outcome->gamma_achieved, 6) << '\n'
              << "real_loss=" << fmt(result.outcome->real_loss, 6) << '\n'
              << "residual_privacy=" << fmt(residual, 6) << '\n';
  }
  if (!cfg.out.empty()) {
    OutputFile out(cfg.out);
    ppam::save_db(out.stream(), result.filtered);
    out.commit();
  }
  return 0;
}

int run_attack(const AttackConfig& cfg) {
  if (cfg.mode == "random") return run_attack_random(cfg);
  if (cfg.mode == "guided") return run_attack_guided(cfg);
  throw std::invalid_argument("unknown attack mode " + cfg.mode);
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateConfig {
  std::string in;
  std::string scheme;
  std::uint32_t w = 0;
  std::uint32_t l = 0;
  double p = 0.9;
  double a = 0.5;
  std::vector<double> s_min_list;
  std::size_t max_k = 3;
  double slack = 0.0;
  std::uint64_t seed = 0;
  bool timings = false;
};

struct SchemeRun {
  ppam::TransactionDb published;
  double privacy = 0.0;
  std::function<std::vector<ppam::EstimatedItemset>(double)> mine;
};

// Staged-matrix ones-density: what the distortion stage actually sees.
double staged_density(const ppam::ProvenanceSidecar& sidecar, std::uint32_t n_items) {
  std::uint64_t ones = 0;
  for (const ppam::ProvenanceEntry& e : sidecar.entries()) {
    ones += e.original_items.has_value() ? e.original_items->size() : 0;
  }
  return static_cast<double>(ones) /
         (static_cast<double>(sidecar.size()) * static_cast<double>(n_items));
}

SchemeRun prepare_scheme(const EvaluateConfig& cfg, const ppam::TransactionDb& db) {
  SchemeRun run;
  if (cfg.scheme == "fs") {
    ppam::FsParams params =
        cfg.l > 0 ? ppam::FsParams{cfg.w, cfg.l} : ppam::fs_params_for(db, cfg.w);
    auto fsdb = std::make_shared<ppam::FsDb>(ppam::fs_anonymize(db, params, cfg.seed));
    run.published = fsdb->db_prime;
    run.privacy = ppam::fs_worst(static_cast<double>(params.w));
    run.mine = [fsdb](double s_min) { return ppam::fs_mine(*fsdb, s_min); };
  } else if (cfg.scheme == "ps") {
    auto distorted =
        std::make_shared<ppam::TransactionDb>(ppam::ps_distort(db, cfg.p, cfg.seed).db);
    run.published = *distorted;
    run.privacy = ppam::ps_privacy(ppam::compute_stats(db).density, cfg.p, cfg.a).p_p;
    const double p = cfg.p;
    const std::size_t max_k = cfg.max_k;
    const double slack = cfg.slack;
    run.mine = [distorted, p, max_k, slack](double s_min) {
      return ppam::ps_mine(*distorted, p, s_min, max_k, slack);
    };
  } else if (cfg.scheme == "hs") {
    ppam::FsParams fs_params =
        cfg.l > 0 ? ppam::FsParams{cfg.w, cfg.l} : ppam::fs_params_for(db, cfg.w);
    ppam::HsParams params{fs_params, ppam::PsParams{cfg.p, cfg.a}};
    auto hsdb = std::make_shared<ppam::HsDb>(ppam::hs_anonymize(db, params, cfg.seed, true));
    run.published = hsdb->db;
    run.privacy =
        ppam::hs_privacy(static_cast<double>(fs_params.w),
                         staged_density(*hsdb->provenance, db.n_items()), cfg.p, cfg.a)
            .second;
    const std::size_t max_k = cfg.max_k;
    const double slack = cfg.slack;
    run.mine = [hsdb, params, max_k, slack](double s_min) {
      return ppam::hs_mine(hsdb->db, params, s_min, max_k, slack);
    };
  } else {
    throw std::invalid_argument("unknown scheme " + cfg.scheme);
  }
  return run;
}

int run_evaluate(const EvaluateConfig& cfg) {
  if (cfg.s_min_list.empty()) {
    throw std::invalid_argument("evaluate requires --s-min-list");
  }
  ppam::TransactionDb db = load_db_file(cfg.in);
  SchemeRun run = prepare_scheme(cfg, db);

  const std::optional<std::size_t> truth_max_k =
      cfg.max_k == 0 ? std::nullopt : std::optional<std::size_t>(cfg.max_k);
  ppam::MiningTimings mining_timings;
  std::vector<ppam::ErrorReport> reports;
  std::cout << "scheme=" << cfg.scheme << '\n'
            << "w=" << cfg.w << '\n'
            << "privacy=" << fmt(run.privacy, 6) << '\n';
  for (std::size_t i = 0; i < cfg.s_min_list.size(); ++i) {
    const double s_min = cfg.s_min_list[i];
    const auto t0 = std::chrono::steady_clock::now();
    const auto truth =
        ppam::mine_frequent(db, ppam::LevelThresholds::constant(s_min), truth_max_k);
    const auto t1 = std::chrono::steady_clock::now();
    const auto mined = run.mine(s_min);
    const auto t2 = std::chrono::steady_clock::now();
    if (i == 0) {
      mining_timings.original = t1 - t0;
      mining_timings.anonymized = t2 - t1;
    }
    const ppam::ErrorReport report = ppam::sigma_errors(truth, mined);
    reports.push_back(report);
    std::cout << "s_min=" << fmt(s_min, 6) << " sigma_plus=" << fmt(report.sigma_plus, 3)
              << " sigma_minus=" << fmt(report.sigma_minus, 3)
              << " support_mae=" << fmt(report.support_mae, 6) << '\n';
  }
  const ppam::OverheadReport overhead = ppam::overhead_report(db, run.published, mining_timings);
  std::cout << "memory_ratio=" << fmt(overhead.memory_ratio, 6) << '\n'
            << "transaction_ratio=" << fmt(overhead.transaction_ratio, 6) << '\n';
  if (cfg.timings) {
    std::cout << "mining_time_ratio=" << fmt(overhead.mining_time_ratio, 6) << '\n';
  }

  std::cout << "\nscheme,w,privacy";
  for (double s_min : cfg.s_min_list) {
    std::cout << ",sp_" << fmt(s_min, 4) << ",sm_" << fmt(s_min, 4);
  }
  std::cout << '\n' << cfg.scheme << ',' << cfg.w << ',' << fmt(run.privacy, 6);
  for (const ppam::ErrorReport& report : reports) {
    std::cout << ',' << fmt(report.sigma_plus, 3) << ',' << fmt(report.sigma_minus, 3);
  }
  std::cout << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// table3

struct Table3Config {
  std::string corpus;  // empty: synthetic default
  std::uint32_t n_items = 497;
  std::size_t transactions = 10000;
  double avg_len = 2.0;
  std::uint64_t seed = 20101221;  // pinned: canned pipelines are fixed configs
  double p_mine = 0.9;
  double a = 0.5;
  std::vector<std::uint32_t> w_list = {2, 4};
  std::vector<double> s_min_list = {0.005, 0.0025, 0.001};
  std::size_t max_k = 3;
  double slack = 0.0;
};

struct Table3Row {
  std::string scheme;
  std::uint32_t w = 0;
  double privacy = 0.0;
  std::vector<std::pair<double, double>> sigmas;  // (sigma+, sigma-) per s_min
};

// Error comparison in the shape of the published table: HS and FS rows per
// fake budget. The privacy column follows the published convention: an
// uninformative distortion stage (p = 0.5, a = 0.5, reconstruction 1/2)
// for HS, the worst case for FS. Support estimation cannot run at p = 0.5
// (singular transition), so mining uses --p-mine (default 0.9); the sigma
// columns are honest measurements at that setting.
int run_table3(const Table3Config& cfg) {
  ppam::TransactionDb db;
  if (!cfg.corpus.empty()) {
    db = load_db_file(cfg.corpus);
  } else {
    db = ppam::gen_synthetic(cfg.n_items, cfg.transactions, cfg.avg_len,
                             ppam::ItemWeighting::zipf(1.0), cfg.seed);
  }
  const ppam::DbStats stats = ppam::compute_stats(db);
  std::cout << "# source=" << (cfg.corpus.empty() ? "synthetic" : cfg.corpus) << '\n'
            << "# transactions=" << stats.transaction_count << " n_items=" << stats.n_items
            << " avg_len=" << fmt(stats.avg_len, 3) << '\n'
            << "# seed=" << cfg.seed << " p_mine=" << fmt(cfg.p_mine, 2)
            << " a=" << fmt(cfg.a, 2) << " max_k=" << cfg.max_k << '\n';

  // Truth per s_min, shared across schemes.
  std::vector<std::vector<ppam::FrequentItemset>> truths;
  for (double s_min : cfg.s_min_list) {
    truths.push_back(
        ppam::mine_frequent(db, ppam::LevelThresholds::constant(s_min), cfg.max_k));
  }

  std::vector<Table3Row> rows;
  for (std::uint32_t w : cfg.w_list) {
    const ppam::FsParams fs_params = ppam::fs_params_for(db, w);
    {
      Table3Row row{"hs", w, 0.0, {}};
      // Published convention: distortion-stage reconstruction 1/2.
      row.privacy = 1.0 - 0.5 / (1.0 + static_cast<double>(w));
      ppam::HsParams params{fs_params, ppam::PsParams{cfg.p_mine, cfg.a}};
      ppam::HsDb hsdb = ppam::hs_anonymize(db, params, cfg.seed + w, false);
      for (std::size_t i = 0; i < cfg.s_min_list.size(); ++i) {
        const auto mined =
            ppam::hs_mine(hsdb.db, params, cfg.s_min_list[i], cfg.max_k, cfg.slack);
        const ppam::ErrorReport report = ppam::sigma_errors(truths[i], mined);
        row.sigmas.emplace_back(report.sigma_plus, report.sigma_minus);
      }
      rows.push_back(std::move(row));
    }
    {
      Table3Row row{"fs", w, 0.0, {}};
      row.privacy = ppam::fs_worst(static_cast<double>(w));
      ppam::FsDb fsdb = ppam::fs_anonymize(db, fs_params, cfg.seed + 100 + w, false);
      for (std::size_t i = 0; i < cfg.s_min_list.size(); ++i) {
        const auto mined = ppam::fs_mine(fsdb, cfg.s_min_list[i], cfg.max_k);
        const ppam::ErrorReport report = ppam::sigma_errors(truths[i], mined);
        row.sigmas.emplace_back(report.sigma_plus, report.sigma_minus);
      }
      rows.push_back(std::move(row));
    }
  }

  std::cout << std::left << std::setw(8) << "scheme" << std::setw(4) << "w" << std::setw(9)
            << "privacy";
  for (double s_min : cfg.s_min_list) {
    std::cout << std::setw(24) << ("s_min=" + fmt(s_min, 4));
  }
  std::cout << '\n' << std::right;
  for (const Table3Row& row : rows) {
    std::cout << std::left << std::setw(8) << row.scheme << std::setw(4) << row.w
              << std::setw(9) << fmt(row.privacy, 3) << std::right;
    for (const auto& [sp, sm] : row.sigmas) {
      std::cout << std::setw(11) << fmt(sp, 3) << std::setw(13) << fmt(sm, 3);
    }
    std::cout << '\n';
  }
  std::cout << "\nscheme,w,privacy";
  for (double s_min : cfg.s_min_list) {
    std::cout << ",sp_" << fmt(s_min, 4) << ",sm_" << fmt(s_min, 4);
  }
  std::cout << '\n';
  for (const Table3Row& row : rows) {
    std::cout << row.scheme << ',' << row.w << ',' << fmt(row.privacy, 3);
    for (const auto& [sp, sm] : row.sigmas) {
      std::cout << ',' << fmt(sp, 3) << ',' << fmt(sm, 3);
    }
    std::cout << '\n';
  }

  // The four published privacy cells pin the convention down; check the
  // ones this run covers.
  const std::vector<std::pair<std::pair<std::string, std::uint32_t>, double>> anchors = {
      {{"hs", 2}, 0.833}, {{"fs", 2}, 0.667}, {{"hs", 4}, 0.900}, {{"fs", 4}, 0.800}};
  bool checked = false;
  for (const Table3Row& row : rows) {
    for (const auto& [key, expected] : anchors) {
      if (key.first == row.scheme && key.second == row.w) {
        checked = true;
        if (std::abs(row.privacy - expected) > 1e-3) {
          throw ToleranceError("privacy column " + row.scheme + " w=" +
                               std::to_string(row.w) + " is " + fmt(row.privacy, 4) +
                               ", expected " + fmt(expected, 3));
        }
      }
    }
  }
  if (checked) std::cout << "\nprivacy_check=pass tolerance=0.001\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomization-based privacy schemes for association-rule mining"};
  app.require_subcommand(1);
  int exit_code = 0;

  StatsConfig stats_cfg;
  CLI::App* stats = app.add_subcommand("stats", "Describe a transaction database");
  stats->add_option("--in", stats_cfg.in, "transaction file")->required();
  stats->add_option("--n-items", stats_cfg.n_items,
                    "item universe size hint for headerless files");
  stats->add_option("--format", stats_cfg.format, "text|csv")
      ->check(CLI::IsMember({"text", "csv"}));
  stats->callback([&] { exit_code = run_stats(stats_cfg); });

  SynthConfig synth_cfg;
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic database");
  synth->add_option("--n", synth_cfg.n_items, "item universe size")->required();
  synth->add_option("--transactions", synth_cfg.transactions, "transaction count")
      ->required();
  synth->add_option("--avg-len", synth_cfg.avg_len, "mean transaction length")->required();
  synth->add_option("--weighting", synth_cfg.weighting, "uniform|zipf")
      ->check(CLI::IsMember({"uniform", "zipf"}));
  synth->add_option("--zipf-exponent", synth_cfg.zipf_exponent, "zipf exponent");
  synth->add_option("--seed", synth_cfg.seed, "RNG seed")->required();
  synth->add_option("--out", synth_cfg.out, "output path")->required();
  synth->callback([&] { exit_code = run_synth(synth_cfg); });

  AnonymizeConfig anon_cfg;
  CLI::App* anonymize = app.add_subcommand("anonymize", "Publish an anonymized database");
  anonymize->add_option("--scheme", anon_cfg.scheme, "fs|ps|hs")
      ->required()
      ->check(CLI::IsMember({"fs", "ps", "hs"}));
  anonymize->add_option("--in", anon_cfg.in, "real transaction file")->required();
  anonymize->add_option("--out", anon_cfg.out, "published database path")->required();
  anonymize->add_option("--provenance", anon_cfg.provenance,
                        "sidecar path (test/evaluation only; defeats the scheme)");
  anonymize->add_option("--w", anon_cfg.w, "mean fakes per real transaction (fs, hs)");
  anonymize->add_option("--l", anon_cfg.l, "mean fake length (default: average length)");
  anonymize->add_option("--p", anon_cfg.p, "per-bit keep probability (ps, hs)");
  anonymize->add_option("--a", anon_cfg.a, "reconstruction weight on 1-bits (ps, hs)");
  anonymize->add_option("--seed", anon_cfg.seed, "RNG seed")->required();
  anonymize->callback([&] { exit_code = run_anonymize(anon_cfg); });

  MineConfig mine_cfg;
  CLI::App* mine = app.add_subcommand("mine", "Mine frequent itemsets");
  mine->add_option("--in", mine_cfg.in, "transaction file")->required();
  mine->add_option("--out", mine_cfg.out, "output path (default: stdout)");
  mine->add_option("--scheme", mine_cfg.scheme,
                   "plain|fs|ps|hs: how the input was anonymized")
      ->check(CLI::IsMember({"plain", "fs", "ps", "hs"}));
  mine->add_option("--s-min", mine_cfg.s_min, "minimum support on the real-data scale")
      ->required();
  mine->add_option("--max-k", mine_cfg.max_k, "itemset size cap (0: unlimited; ps/hs use 4)");
  mine->add_option("--slack", mine_cfg.slack, "survivor slack below s_min (ps, hs)");
  mine->add_option("--w", mine_cfg.w, "fake budget of the published data (fs, hs)");
  mine->add_option("--l", mine_cfg.l, "mean fake length of the published data (fs, hs)");
  mine->add_option("--p", mine_cfg.p, "keep probability of the published data (ps, hs)");
  mine->add_option("--min-conf", mine_cfg.min_conf,
                   "also derive association rules at this confidence (plain only)");
  mine->callback([&] { exit_code = run_mine(mine_cfg); });

  PrivacyConfig privacy_cfg;
  CLI::App* privacy = app.add_subcommand("privacy", "Quantify fake-insertion privacy");
  privacy->add_option("--w", privacy_cfg.w, "mean fakes per real transaction");
  privacy->add_option("--n", privacy_cfg.n, "transaction count (omit with --limit)");
  privacy->add_option("--gammas", privacy_cfg.gammas,
                      "comma-separated filtered fractions to evaluate")
      ->delimiter(',');
  privacy->add_flag("--table1", privacy_cfg.table1, "emit the canned privacy grid");
  privacy->add_flag("--limit", privacy_cfg.limit, "large-N limit instead of finite N");
  privacy->add_option("--format", privacy_cfg.format, "text|csv")
      ->check(CLI::IsMember({"text", "csv"}));
  privacy->callback([&] { exit_code = run_privacy(privacy_cfg); });

  AttackConfig attack_cfg;
  CLI::App* attack = app.add_subcommand("attack", "Simulate an adversary");
  attack->add_option("--mode", attack_cfg.mode, "random|guided")
      ->required()
      ->check(CLI::IsMember({"random", "guided"}));
  attack->add_option("--in", attack_cfg.in, "published database")->required();
  attack->add_option("--provenance", attack_cfg.provenance, "ground-truth sidecar");
  attack->add_option("--prior", attack_cfg.prior, "real database for the item prior (guided)");
  attack->add_option("--out", attack_cfg.out, "filtered database path (guided)");
  attack->add_option("--trials", attack_cfg.trials, "reconstruction trials (random)");
  attack->add_option("--seed", attack_cfg.seed, "RNG seed (random mode)");
  attack->add_option("--threshold", attack_cfg.threshold, "keep rows scoring >= threshold");
  attack->add_option("--fake-item-prob", attack_cfg.fake_item_prob,
                     "fake model item rate (default: avg_len/n of the prior)");
  attack->callback([&] {
    if (attack_cfg.mode == "random" && attack->count("--seed") == 0) {
      throw CLI::RequiredError("--seed (attack --mode random)");
    }
    exit_code = run_attack(attack_cfg);
  });

  EvaluateConfig eval_cfg;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Measure mining error and overhead");
  evaluate->add_option("--in", eval_cfg.in, "real transaction file")->required();
  evaluate->add_option("--scheme", eval_cfg.scheme, "fs|ps|hs")
      ->required()
      ->check(CLI::IsMember({"fs", "ps", "hs"}));
  evaluate->add_option("--w", eval_cfg.w, "mean fakes per real transaction (fs, hs)");
  evaluate->add_option("--l", eval_cfg.l, "mean fake length (default: average length)");
  evaluate->add_option("--p", eval_cfg.p, "per-bit keep probability (ps, hs)");
  evaluate->add_option("--a", eval_cfg.a, "reconstruction weight on 1-bits");
  evaluate->add_option("--s-min-list", eval_cfg.s_min_list, "comma-separated thresholds")
      ->required()
      ->delimiter(',');
  evaluate->add_option("--max-k", eval_cfg.max_k, "itemset size cap");
  evaluate->add_option("--slack", eval_cfg.slack, "survivor slack below s_min (ps, hs)");
  evaluate->add_option("--seed", eval_cfg.seed, "RNG seed")->required();
  evaluate->add_flag("--timings", eval_cfg.timings,
                     "also print mining_time_ratio (not byte-deterministic)");
  evaluate->callback([&] { exit_code = run_evaluate(eval_cfg); });

  CLI::App* table1 = app.add_subcommand("table1", "Canned privacy-grid reproduction");
  table1->callback([&] { exit_code = run_table1(std::nullopt); });

  Table3Config table3_cfg;
  CLI::App* table3 = app.add_subcommand("table3", "Canned error-comparison reproduction");
  table3->add_option("--corpus", table3_cfg.corpus, "real corpus path (default: synthetic)");
  table3->add_option("--n", table3_cfg.n_items, "synthetic item universe size");
  table3->add_option("--transactions", table3_cfg.transactions, "synthetic transaction count");
  table3->add_option("--avg-len", table3_cfg.avg_len, "synthetic mean transaction length");
  table3->add_option("--seed", table3_cfg.seed, "RNG seed (pinned default)");
  table3->add_option("--p-mine", table3_cfg.p_mine,
                     "keep probability for the HS mining stage");
  table3->add_option("--a", table3_cfg.a, "reconstruction weight on 1-bits");
  table3->add_option("--w-list", table3_cfg.w_list, "comma-separated fake budgets")
      ->delimiter(',');
  table3->add_option("--s-min-list", table3_cfg.s_min_list, "comma-separated thresholds")
      ->delimiter(',');
  table3->add_option("--max-k", table3_cfg.max_k, "itemset size cap");
  table3->add_option("--slack", table3_cfg.slack, "survivor slack below s_min");
  table3->callback([&] { exit_code = run_table3(table3_cfg); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "error: config: " << e.what() << '\n';
    return 2;
  } catch (const ToleranceError& e) {
    std::cerr << "error: tolerance: " << e.what() << '\n';
    return 4;
  } catch (const DataError& e) {
    std::cerr << "error: data: " << e.what() << '\n';
    return 3;
  } catch (const ppam::ParseError& e) {
    std::cerr << "error: data: " << e.what() << '\n';  // what() carries the line number
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: config: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: config: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: data: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: data: " << e.what() << '\n';
    return 3;
  }
  return exit_code;
}
