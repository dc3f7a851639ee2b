#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigmagcd/errors.hpp"
#include "sigmagcd/factored_integer.hpp"
#include "sigmagcd/multiplicative.hpp"
#include "sigmagcd/parallel.hpp"
#include "sigmagcd/spf_table.hpp"

namespace sigmagcd::champions {

/// Largest divisor of n coprime to k: every prime of n that divides k is removed entirely.
inline FactoredInteger coprime_part(const FactoredInteger& n, u64 k) {
  if (k < 1) throw std::invalid_argument("coprime_part requires k >= 1");
  std::vector<PrimePower> kept;
  for (const auto& f : n.factors()) {
    if (k % f.prime != 0) kept.push_back(f);
  }
  return FactoredInteger::from_trusted(std::move(kept));
}

/// N = p (p+1) m with m the largest divisor of sigma(p+1) coprime to p+1.
/// (p+1) m divides both N and sigma(N) whenever p, p+1 and m are pairwise coprime.
struct ConstructionRecord {
  u64 p = 0;
  BigInt m;
  BigInt N;
  FactoredInteger N_factors;
  BigInt sigma_N;
  BigInt certified_divisor;  // (p+1) m
  BigInt exact_gcd;          // gcd(N, sigma(N))
  double alpha = 0;          // log exact_gcd / log N
  bool valid = false;
  std::string skip_reason;   // why the record is invalid, or a note on a valid degenerate case
};

inline ConstructionRecord construct_from_prime(u64 p, const SpfTable* table = nullptr) {
  if (!is_prime_u64(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  const FactoredInteger p_f = FactoredInteger::from_trusted({{p, 1}});
  const FactoredInteger p1_f =
      (table && p + 1 <= table->limit()) ? factorize(p + 1, *table) : factorize_trial(BigInt(p) + 1);

  const BigInt sigma_p1 = sigma(p1_f);
  const FactoredInteger m_f = coprime_part(factorize_trial(sigma_p1), p + 1);

  ConstructionRecord r;
  r.p = p;
  r.m = m_f.value();
  r.N_factors = merge_factorizations(merge_factorizations(p_f, p1_f), m_f);
  r.N = r.N_factors.value();
  r.sigma_N = sigma(r.N_factors);
  r.certified_divisor = (BigInt(p) + 1) * r.m;
  r.exact_gcd = boost::multiprecision::gcd(r.N, r.sigma_N);
  r.alpha = gcd_exponent(r.exact_gcd, r.N);

  if (r.m % p == 0) {
    r.valid = false;
    r.skip_reason = "p divides m: p, p+1, m are not pairwise coprime";
    return r;
  }
  r.valid = true;
  if (r.m == 1) r.skip_reason = "note: m = 1 (every prime of sigma(p+1) divides p+1)";
  if (r.N % r.certified_divisor != 0 || r.sigma_N % r.certified_divisor != 0) {
    throw InvariantViolation("(p+1)m does not divide N and sigma(N) for p = " + std::to_string(p));
  }
  return r;
}

struct ChampionScan {
  std::vector<ConstructionRecord> records;  // every prime p <= p_limit, ascending
  std::vector<std::size_t> running_max;     // indices of valid records that set a new alpha maximum
  u64 skipped = 0;

  std::vector<const ConstructionRecord*> valid_records() const {
    std::vector<const ConstructionRecord*> out;
    for (const auto& r : records) {
      if (r.valid) out.push_back(&r);
    }
    return out;
  }
};

/// Builds the construction for each prime p <= p_limit. Per-prime work runs
/// in parallel; the running maximum is taken afterwards in p order.
inline ChampionScan champion_scan(u64 p_limit, const SpfTable& table, unsigned threads = 0) {
  if (p_limit < 3) throw std::invalid_argument("champion_scan requires p_limit >= 3");
  table.require_covers(p_limit + 1);
  const auto ps = table.primes_up_to(p_limit);
  auto parts = map_blocks(0, ps.size(), 256, threads, [&](u64 lo, u64 hi) {
    std::vector<ConstructionRecord> out;
    out.reserve(hi - lo);
    for (u64 i = lo; i < hi; ++i) out.push_back(construct_from_prime(ps[i], &table));
    return out;
  });

  ChampionScan scan;
  scan.records.reserve(ps.size());
  for (auto& part : parts) {
    for (auto& r : part) scan.records.push_back(std::move(r));
  }
  double best = -1;
  for (std::size_t i = 0; i < scan.records.size(); ++i) {
    const auto& r = scan.records[i];
    if (!r.valid) {
      ++scan.skipped;
      continue;
    }
    if (r.alpha > best) {
      best = r.alpha;
      scan.running_max.push_back(i);
    }
  }
  return scan;
}

/// Re-derives every claim in the record from scratch by trial division
/// (m's definition, N, sigma(N), the divisibility of (p+1)m, the exact gcd).
inline bool verify_record(const ConstructionRecord& r) {
  if (!r.valid || !is_prime_u64(r.p)) return false;
  const BigInt p = r.p;
  const BigInt p1 = p + 1;

  const BigInt sigma_p1 = sigma(factorize_trial(p1));
  if (r.m < 1 || sigma_p1 % r.m != 0) return false;
  if (boost::multiprecision::gcd(r.m, p1) != 1) return false;
  BigInt rest = sigma_p1 / r.m;
  for (BigInt g = boost::multiprecision::gcd(rest, p1); g > 1; g = boost::multiprecision::gcd(rest, p1)) {
    rest /= g;
  }
  if (rest != 1) return false;  // m is not the largest coprime divisor

  const BigInt N = p * p1 * r.m;
  if (N != r.N) return false;
  const BigInt sigma_N = sigma(factorize_trial(N));
  if (sigma_N != r.sigma_N) return false;
  const BigInt certified = p1 * r.m;
  if (certified != r.certified_divisor) return false;
  if (N % certified != 0 || sigma_N % certified != 0) return false;
  const BigInt g = boost::multiprecision::gcd(N, sigma_N);
  if (g != r.exact_gcd || certified > g || g > N) return false;
  return std::abs(gcd_exponent(g, N) - r.alpha) <= 1e-12;
}

}  // namespace sigmagcd::champions
