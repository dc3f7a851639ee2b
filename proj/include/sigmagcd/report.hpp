#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sigmagcd/champions.hpp"
#include "sigmagcd/density.hpp"
#include "sigmagcd/lemma_report.hpp"

namespace sigmagcd::report {

struct Cell {
  enum class Kind { kText, kInteger, kReal, kBool };
  std::string text;
  Kind kind = Kind::kText;

  static Cell str(std::string s) { return {std::move(s), Kind::kText}; }
  static Cell integer(u64 v) { return {std::to_string(v), Kind::kInteger}; }
  static Cell integer(const BigInt& v) { return {v.str(), Kind::kInteger}; }
  static Cell boolean(bool v) { return {v ? "true" : "false", Kind::kBool}; }
  static Cell real(double v, const char* fmt = "%.12g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return {buf, Kind::kReal};
  }
};

/// A report: '#'-prefixed metadata, a fixed column header, data rows.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_csv(std::ostream& os, const Table& t) {
  for (const auto& [k, v] : t.meta) os << "# " << k << ": " << v << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_quote(t.columns[i]);
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_quote(row[i].text);
    os << "\n";
  }
}

/// {"meta": {...}, "rows": [{column: value}, ...]}. Integers beyond 64 bits stay strings.
inline void write_json(std::ostream& os, const Table& t) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["meta"] = ordered_json::object();
  for (const auto& [k, v] : t.meta) doc["meta"][k] = v;
  doc["rows"] = ordered_json::array();
  for (const auto& row : t.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      ordered_json v;
      switch (c.kind) {
        case Cell::Kind::kText: v = c.text; break;
        case Cell::Kind::kBool: v = (c.text == "true"); break;
        case Cell::Kind::kInteger: {
          BigInt big(c.text);
          if (auto small = try_u64(big)) {
            v = *small;
          } else {
            v = c.text;
          }
          break;
        }
        case Cell::Kind::kReal: v = ordered_json::parse(c.text); break;
      }
      obj[t.columns[i]] = std::move(v);
    }
    doc["rows"].push_back(std::move(obj));
  }
  os << doc.dump(2) << "\n";
}

inline std::vector<std::string> experiment_columns() {
  std::vector<std::string> cols = {"population",  "x",        "rule",    "threshold_spec",
                                   "exceed_count", "population_size", "fraction"};
  for (std::size_t j = 0; j + 1 < density::GcdHistogram::kBuckets; ++j) cols.push_back("bucket_" + std::to_string(j));
  cols.push_back("bucket_overflow");
  return cols;
}

inline Table experiment_table(const density::ExperimentReport& r) {
  Table t;
  t.meta.emplace_back("below_cutoff_count", std::to_string(r.below_cutoff_count));
  std::string hist;
  for (std::size_t j = 0; j < density::GcdHistogram::kBuckets; ++j) {
    if (r.below_cutoff_histogram.counts[j]) {
      hist += (hist.empty() ? "" : " ") + std::to_string(j) + ":" + std::to_string(r.below_cutoff_histogram.counts[j]);
    }
  }
  t.meta.emplace_back("below_cutoff_histogram", hist.empty() ? "-" : hist);
  t.columns = experiment_columns();
  std::vector<Cell> row = {Cell::str(r.population),        Cell::integer(r.x),
                           Cell::str(r.rule_name),         Cell::str(r.threshold_spec),
                           Cell::integer(r.exceed_count),  Cell::integer(r.population_size),
                           Cell::real(r.fraction)};
  for (u64 c : r.histogram.counts) row.push_back(Cell::integer(c));
  t.rows.push_back(std::move(row));
  return t;
}

inline Table lemma_table(const std::vector<lemma::LemmaReport>& reports) {
  Table t;
  t.columns = {"lemma_id", "x", "k", "Y", "E", "a", "q", "Q", "q_list", "raw_value", "normalized_value", "notes"};
  for (const auto& r : reports) {
    std::vector<Cell> row(t.columns.size(), Cell::str(""));
    row[0] = Cell::str(r.lemma_id);
    for (const auto& [name, value] : r.parameters) {
      for (std::size_t i = 1; i < 9; ++i) {
        if (t.columns[i] == name) row[i] = Cell::str(value);
      }
    }
    row[9] = Cell::str(r.raw_value);
    row[10] = Cell::real(r.normalized_value);
    row[11] = Cell::str(r.notes);
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline std::vector<Cell> champion_row(const champions::ConstructionRecord& r) {
  return {Cell::integer(r.p),
          Cell::integer(r.m),
          Cell::integer(r.N),
          Cell::integer(r.certified_divisor),
          Cell::integer(r.exact_gcd),
          Cell::real(r.alpha, "%.6f"),
          Cell::boolean(r.valid),
          Cell::str(r.skip_reason)};
}

inline std::vector<std::string> champion_columns() {
  return {"p", "m", "N", "certified_divisor", "exact_gcd", "alpha", "valid", "skip_reason"};
}

enum class ChampionView { kValid, kAll, kRunningMax };

inline Table champion_table(const champions::ChampionScan& scan, ChampionView view) {
  Table t;
  t.meta.emplace_back("primes_scanned", std::to_string(scan.records.size()));
  t.meta.emplace_back("skipped_p_divides_m", std::to_string(scan.skipped));
  t.columns = champion_columns();
  if (view == ChampionView::kRunningMax) {
    for (std::size_t i : scan.running_max) t.rows.push_back(champion_row(scan.records[i]));
    return t;
  }
  for (const auto& r : scan.records) {
    if (r.valid || view == ChampionView::kAll) t.rows.push_back(champion_row(r));
  }
  return t;
}

inline Table profile_table(const density::SmallPrimeProfile& p) {
  Table t;
  t.columns = {"x", "Q", "l", "metric", "value"};
  auto add = [&](const std::string& metric, Cell value) {
    t.rows.push_back({Cell::integer(p.x), Cell::str(lemma::format_real(p.Q)), Cell::integer(p.l), Cell::str(metric),
                      std::move(value)});
  };
  for (std::size_t w = 0; w < p.omega_counts.size(); ++w) {
    add("omega_count_" + std::to_string(w), Cell::integer(p.omega_counts[w]));
  }
  add("at_least_l", Cell::integer(p.at_least_l));
  add("fraction_at_least_l", Cell::real(p.fraction_at_least_l));
  if (p.few_small_prime_count) add("few_small_prime_count", Cell::integer(*p.few_small_prime_count));
  if (p.sigma_coprime_count) {
    std::string list;
    for (u64 q : p.sigma_coprime_primes) list += (list.empty() ? "" : " ") + std::to_string(q);
    add("sigma_coprime_primes", Cell::str(list));
    add("sigma_coprime_count", Cell::integer(*p.sigma_coprime_count));
  }
  return t;
}

}  // namespace sigmagcd::report
