#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigmagcd/lemma_lab.hpp"
#include "sigmagcd/multiplicative.hpp"
#include "sigmagcd/parallel.hpp"
#include "sigmagcd/spf_table.hpp"

namespace sigmagcd::density {

/// Smallest n whose depth-2 log is positive; scans start here.
inline constexpr u64 kScanCutoff = 16;

/// Counts of g by power-of-two bucket: bucket j holds 2^j <= g < 2^(j+1),
/// the last bucket holds g >= 2^64.
struct GcdHistogram {
  static constexpr std::size_t kBuckets = 65;
  std::array<u64, kBuckets> counts{};

  void add(u64 g) { ++counts[static_cast<std::size_t>(std::bit_width(g) - 1)]; }
  void add_overflow() { ++counts[kBuckets - 1]; }

  void merge(const GcdHistogram& other) {
    for (std::size_t i = 0; i < kBuckets; ++i) counts[i] += other.counts[i];
  }

  u64 total() const {
    u64 t = 0;
    for (u64 c : counts) t += c;
    return t;
  }
};

/// Exponent applied to log log n (upper scans) or log log log n (lower scan).
struct ThresholdExponent {
  enum class Kind { kConstant, kLogLogLog };
  Kind kind = Kind::kConstant;
  double value = 0;

  static ThresholdExponent constant(double v) { return {Kind::kConstant, v}; }
  static ThresholdExponent log_log_log() { return {Kind::kLogLogLog, 0}; }

  double at(double n) const { return kind == Kind::kConstant ? value : lemma::iterated_log(n, 3); }

  std::string describe() const {
    if (kind == Kind::kLogLogLog) return "(log log log n)";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
  }
};

struct ExperimentReport {
  u64 x = 0;
  std::string population;  // "all_integers" or "shifted_primes(a=...)"
  std::string rule_name;
  std::string threshold_spec;
  u64 exceed_count = 0;
  u64 population_size = 0;
  double fraction = 0;
  GcdHistogram histogram;  // over the population only
  u64 below_cutoff_count = 0;  // n < kScanCutoff, excluded from the population
  GcdHistogram below_cutoff_histogram;

  void merge(const ExperimentReport& part) {
    exceed_count += part.exceed_count;
    population_size += part.population_size;
    histogram.merge(part.histogram);
    below_cutoff_count += part.below_cutoff_count;
    below_cutoff_histogram.merge(part.below_cutoff_histogram);
  }

  void finish() {
    fraction = population_size ? static_cast<double>(exceed_count) / static_cast<double>(population_size) : 0.0;
  }
};

namespace detail {

template <class Visit>
ExperimentReport scan_blocks(u64 lo, u64 hi, unsigned threads, Visit visit) {
  auto parts = map_blocks(lo, hi + 1, lemma::kScanBlock, threads, [&](u64 b, u64 e) {
    ExperimentReport part;
    for (u64 i = b; i < e; ++i) visit(i, part);
    return part;
  });
  ExperimentReport total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

inline void record(ExperimentReport& part, const GcdSample& s, bool counted) {
  if (s.n < kScanCutoff) {
    ++part.below_cutoff_count;
    part.below_cutoff_histogram.add(s.g);
    return;
  }
  ++part.population_size;
  part.histogram.add(s.g);
  if (counted) ++part.exceed_count;
}

inline bool exceeds_upper(const GcdSample& s, const ThresholdExponent& f) {
  if (s.n < kScanCutoff) return false;
  const double n = static_cast<double>(s.n);
  return static_cast<double>(s.g) > std::pow(lemma::iterated_log(n, 2), f.at(n));
}

}  // namespace detail

/// Counts n in [16, x] with gcd(n, rule(n)) > (log log n)^f.
inline ExperimentReport gcd_threshold_scan(u64 x, ThresholdExponent f, const MultiplicativeRule& rule,
                                           const SpfTable& table, unsigned threads = 0) {
  if (x < kScanCutoff) throw std::invalid_argument("gcd_threshold_scan requires x >= 16");
  table.require_covers(x);
  auto report = detail::scan_blocks(1, x, threads, [&](u64 n, ExperimentReport& part) {
    const auto s = gcd_sample(n, table, rule);
    detail::record(part, s, detail::exceeds_upper(s, f));
  });
  report.x = x;
  report.population = "all_integers";
  report.rule_name = rule.name();
  report.threshold_spec = "g > (log log n)^" + f.describe();
  report.finish();
  return report;
}

/// Counts n in [16, x] with gcd(n, rule(n)) >= (log log log n)^c; the
/// threshold stays <= 1 (trivially met) until n >= 3814280.
inline ExperimentReport gcd_lower_scan(u64 x, double c, const SpfTable& table, unsigned threads = 0,
                                       const MultiplicativeRule& rule = MultiplicativeRule::sigma()) {
  if (x < kScanCutoff) throw std::invalid_argument("gcd_lower_scan requires x >= 16");
  if (!(c >= 0)) throw std::invalid_argument("exponent c must be >= 0");
  table.require_covers(x);
  auto report = detail::scan_blocks(1, x, threads, [&](u64 n, ExperimentReport& part) {
    const auto s = gcd_sample(n, table, rule);
    bool ok = false;
    if (n >= kScanCutoff) {
      const double x3 = lemma::iterated_log(static_cast<double>(n), 3);
      ok = static_cast<double>(s.g) >= std::pow(x3, c);
    }
    detail::record(part, s, ok);
  });
  report.x = x;
  report.population = "all_integers";
  report.rule_name = rule.name();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", c);
  report.threshold_spec = std::string("g >= (log log log n)^") + buf;
  report.finish();
  return report;
}

/// Same statistic as gcd_threshold_scan over {p + a : p <= x prime}.
inline ExperimentReport shifted_prime_scan(u64 x, u64 a, ThresholdExponent f, const MultiplicativeRule& rule,
                                           const SpfTable& table, unsigned threads = 0) {
  if (a < 1) throw std::invalid_argument("shifted_prime_scan requires a >= 1");
  if (x < 2) throw std::invalid_argument("shifted_prime_scan requires x >= 2");
  table.require_covers(x + a);
  const auto ps = table.primes_up_to(x);
  auto report = detail::scan_blocks(0, ps.size() - 1, threads, [&](u64 i, ExperimentReport& part) {
    const auto s = gcd_sample(ps[i] + a, table, rule);
    detail::record(part, s, detail::exceeds_upper(s, f));
  });
  report.x = x;
  report.population = "shifted_primes(a=" + std::to_string(a) + ")";
  report.rule_name = rule.name();
  report.threshold_spec = "g > (log log n)^" + f.describe();
  report.finish();
  return report;
}

struct SmallPrimeProfile {
  u64 x = 0;
  double Q = 0;
  unsigned l = 0;
  std::vector<u64> omega_counts;  // index w: #{n <= x : w distinct primes < Q divide gcd(n, sigma(n))}
  u64 at_least_l = 0;
  double fraction_at_least_l = 0;
  std::optional<u64> few_small_prime_count;   // N(x, l-1, Q)
  std::vector<u64> sigma_coprime_primes;      // the q_i used for M
  std::optional<u64> sigma_coprime_count;     // M(x+1, q_1..q_l)
};

/// Distribution of the number of distinct primes q < Q dividing gcd(n, sigma(n)), n <= x.
inline SmallPrimeProfile small_prime_divisor_profile(u64 x, double Q, unsigned l, const SpfTable& table,
                                                     unsigned threads = 0) {
  if (!(Q >= 2)) throw std::invalid_argument("Q must be >= 2");
  if (x < 1) throw std::invalid_argument("profile requires x >= 1");
  table.require_covers(std::max<u64>(x, 2));

  std::vector<u64> small;
  for (std::uint32_t p : table.primes()) {
    if (static_cast<double>(p) >= Q) break;
    small.push_back(p);
  }

  const auto& rule = MultiplicativeRule::sigma();
  auto parts = map_blocks(1, x + 1, lemma::kScanBlock, threads, [&](u64 b, u64 e) {
    std::vector<u64> counts(small.size() + 1, 0);
    for (u64 n = b; n < e; ++n) {
      const auto s = gcd_sample(n, table, rule);
      unsigned w = 0;
      for (u64 q : small) w += (s.g % q == 0);
      ++counts[w];
    }
    return counts;
  });

  SmallPrimeProfile out;
  out.x = x;
  out.Q = Q;
  out.l = l;
  out.omega_counts.assign(small.size() + 1, 0);
  for (const auto& part : parts) {
    for (std::size_t w = 0; w < part.size(); ++w) out.omega_counts[w] += part[w];
  }
  for (std::size_t w = l; w < out.omega_counts.size(); ++w) out.at_least_l += out.omega_counts[w];
  out.fraction_at_least_l = static_cast<double>(out.at_least_l) / static_cast<double>(x);

  if (l >= 1) {
    out.few_small_prime_count = lemma::count_few_small_prime_divisors(x, l - 1, Q, table, threads);
    const std::size_t take = std::min<std::size_t>(l, small.size());
    out.sigma_coprime_primes.assign(small.begin(), small.begin() + static_cast<std::ptrdiff_t>(take));
    if (!out.sigma_coprime_primes.empty()) {
      out.sigma_coprime_count = lemma::count_sigma_coprime(x + 1, out.sigma_coprime_primes, table, threads);
    }
  }
  return out;
}

}  // namespace sigmagcd::density
