#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sigmagcd/bigint.hpp"
#include "sigmagcd/errors.hpp"
#include "sigmagcd/multiplicative.hpp"
#include "sigmagcd/parallel.hpp"
#include "sigmagcd/spf_table.hpp"

// Finite-x evaluators for the sums and exceptional-set counts behind the
// gcd(n, sigma(n)) density bounds. Everything here is an exact count or an
// exact rational; doubles only appear in normalized ratios.

namespace sigmagcd::lemma {

inline constexpr u64 kScanBlock = u64{1} << 16;

/// x_depth: log applied `depth` times (natural logs). Each log needs a
/// positive argument, so e.g. depth 3 at x = 10 is defined (negative) and
/// depth 4 is a domain error.
inline double iterated_log(double x, int depth) {
  if (depth < 0) throw std::invalid_argument("iterated_log depth must be >= 0");
  double v = x;
  for (int i = 1; i <= depth; ++i) {
    if (!(v > 0)) {
      throw std::domain_error("iterated_log: x_" + std::to_string(i - 1) + " = " + std::to_string(v) +
                              " is not positive; x too small for depth " + std::to_string(depth));
    }
    v = std::log(v);
  }
  return v;
}

/// Smooth/rough parameters Y_x = E_x for the exceptional-set sums.
///
/// The proofs take Y_x = E_x = x_4, but x_4 <= 0 for x < e^(e^e) ~ 3.8e6
/// and it never reaches 2 at any computable x, so the desk preset uses the
/// deepest iterate that is usable here, max(2, x_2).
struct SmoothParameters {
  double Y = 2;
  double E = 2;
};

inline SmoothParameters desk_smooth_parameters(double x) {
  const double x2 = iterated_log(x, 2);
  const double v = std::max(2.0, x2);
  return {v, v};
}

/// Q = x_2 / x_3.
inline double proof_Q(double x) { return iterated_log(x, 2) / iterated_log(x, 3); }

/// l = c * x_4 / x_5; only meaningful once this is >= 1, which needs enormous x.
inline double proof_l(double x, double c) {
  const double l = c * iterated_log(x, 4) / iterated_log(x, 5);
  if (!(l > 0)) throw std::domain_error("c*x_4/x_5 is not positive at x = " + std::to_string(x));
  return l;
}

namespace detail {

// Sum of 1/p over a prime list by binary splitting. Denominators are
// distinct primes, so num/den needs no reduction at any level.
inline std::pair<BigInt, BigInt> reciprocal_sum(std::span<const std::uint32_t> ps) {
  if (ps.size() == 1) return {BigInt(1), BigInt(ps[0])};
  const auto mid = ps.size() / 2;
  auto [n1, d1] = reciprocal_sum(ps.first(mid));
  auto [n2, d2] = reciprocal_sum(ps.subspan(mid));
  return {n1 * d2 + n2 * d1, d1 * d2};
}

inline u64 floor_threshold(double Y) {
  if (!(Y >= 2)) throw std::invalid_argument("Y must be >= 2");
  return static_cast<u64>(std::floor(Y));
}

// Number of divisors of the prime-power product in [lo, hi].
inline u64 count_divisors_in(std::span<const PrimePower> fs, long double lo, u64 hi, u64 acc = 1) {
  if (fs.empty()) return (static_cast<long double>(acc) >= lo && acc <= hi) ? 1 : 0;
  u64 total = 0;
  u64 d = acc;
  for (unsigned e = 0; e <= fs[0].exponent; ++e) {
    if (d > hi) break;
    total += count_divisors_in(fs.subspan(1), lo, hi, d);
    d *= fs[0].prime;
  }
  return total;
}

inline u64 residue_of_negative(std::int64_t a, u64 k) {
  const std::int64_t sk = static_cast<std::int64_t>(k);
  return static_cast<u64>(((-a % sk) + sk) % sk);
}

// Sums fn(prime) over primes <= x, in parallel blocks.
template <class Fn>
u64 sum_over_primes(std::span<const std::uint32_t> ps, unsigned threads, Fn fn) {
  auto parts = map_blocks(0, ps.size(), 1 << 14, threads, [&](u64 lo, u64 hi) {
    u64 s = 0;
    for (u64 i = lo; i < hi; ++i) s += fn(static_cast<u64>(ps[i]));
    return s;
  });
  return std::accumulate(parts.begin(), parts.end(), u64{0});
}

// Sums fn(n) over n in [lo, hi], in parallel blocks.
template <class Fn>
u64 sum_over_range(u64 lo, u64 hi, unsigned threads, Fn fn) {
  if (hi < lo) return 0;
  auto parts = map_blocks(lo, hi + 1, kScanBlock, threads, [&](u64 b, u64 e) {
    u64 s = 0;
    for (u64 n = b; n < e; ++n) s += fn(n);
    return s;
  });
  return std::accumulate(parts.begin(), parts.end(), u64{0});
}

}  // namespace detail

/// s(x, k): exact sum of 1/p over primes p <= x with p = -1 (mod k).
inline Rational s_sum(u64 x, u64 k, const SpfTable& table) {
  if (k < 2) throw std::invalid_argument("s_sum requires k >= 2");
  if (x < 2) throw std::invalid_argument("s_sum requires x >= 2");
  table.require_covers(x);
  std::vector<std::uint32_t> chosen;
  for (std::uint32_t p : table.primes_up_to(x)) {
    if (p % k == k - 1) chosen.push_back(p);
  }
  if (chosen.empty()) return Rational(0);
  auto [num, den] = detail::reciprocal_sum(chosen);
  return Rational(num, den);
}

/// s(x, k) * phi(k) / x_2, the empirical implied constant of s(x, k) << x_2/phi(k).
inline double lemma23_ratio(u64 x, u64 k, const SpfTable& table) {
  if (x < 16) throw std::invalid_argument("lemma23_ratio requires x >= 16");
  const Rational s = s_sum(x, k, table);
  const double phi_k = phi(BigInt(k)).convert_to<double>();
  return to_double(s) * phi_k / iterated_log(static_cast<double>(x), 2);
}

/// #{n <= x : Y-smooth part of n >= Y^E}.
inline u64 exceptional_s1_count(u64 x, double Y, double E, const SpfTable& table, unsigned threads = 0) {
  const u64 y = detail::floor_threshold(Y);
  if (!(E > 0)) throw std::invalid_argument("E must be > 0");
  table.require_covers(std::max<u64>(x, 2));
  const long double bound = std::pow(static_cast<long double>(Y), static_cast<long double>(E));
  return detail::sum_over_range(1, x, threads, [&](u64 n) -> u64 {
    u64 smooth = 1;
    for (const auto& f : table.factor_compact(n)) {
      if (f.prime > y) break;
      for (unsigned e = 0; e < f.exponent; ++e) smooth *= f.prime;
    }
    return static_cast<long double>(smooth) >= bound;
  });
}

/// #{n <= x : Y-rough part of n is not squarefree}.
inline u64 exceptional_s2_count(u64 x, double Y, const SpfTable& table, unsigned threads = 0) {
  const u64 y = detail::floor_threshold(Y);
  table.require_covers(std::max<u64>(x, 2));
  return detail::sum_over_range(1, x, threads, [&](u64 n) -> u64 {
    for (const auto& f : table.factor_compact(n)) {
      if (f.prime > y && f.exponent >= 2) return 1;
    }
    return 0;
  });
}

inline constexpr u64 kLemma24Guard = 10'000'000;

/// Sum over Y-smooth y in [Y^E, x] of pi(x, y, -a).
///
/// Evaluated prime by prime: each prime r <= x contributes the number of
/// Y-smooth divisors of r + a in [Y^E, x].
inline u64 lemma24_sum(u64 x, double Y, double E, std::int64_t a, const SpfTable& table, unsigned threads = 0) {
  const u64 y = detail::floor_threshold(Y);
  if (!(E > 0)) throw std::invalid_argument("E must be > 0");
  if (a < 0) throw std::invalid_argument("offset a must be >= 0");
  if (x > kLemma24Guard) {
    throw ResourceLimitError("lemma24_sum is limited to x <= " + std::to_string(kLemma24Guard));
  }
  const long double lo = std::pow(static_cast<long double>(Y), static_cast<long double>(E));
  if (lo > static_cast<long double>(x)) return 0;
  table.require_covers(x + static_cast<u64>(a));
  return detail::sum_over_primes(table.primes_up_to(x), threads, [&](u64 r) -> u64 {
    const u64 shifted = r + static_cast<u64>(a);
    const auto fs = table.factor_compact(shifted);
    CompactFactors smooth;
    for (const auto& f : fs) {
      if (f.prime <= y) smooth.push(f.prime, f.exponent);
    }
    return detail::count_divisors_in(smooth.view(), lo, x);
  });
}

/// Sum over primes q >= Y of pi(x, q^2, -a).
inline u64 lemma25_sum(u64 x, double Y, std::int64_t a, const SpfTable& table, unsigned threads = 0) {
  if (!(Y >= 2)) throw std::invalid_argument("Y must be >= 2");
  if (a < 0) throw std::invalid_argument("offset a must be >= 0");
  if (a == 0) return 0;  // a prime is never 0 mod q^2
  table.require_covers(x + static_cast<u64>(a));
  return detail::sum_over_primes(table.primes_up_to(x), threads, [&](u64 r) -> u64 {
    u64 hits = 0;
    for (const auto& f : table.factor_compact(r + static_cast<u64>(a))) {
      if (f.exponent >= 2 && static_cast<double>(f.prime) >= Y) ++hits;
    }
    return hits;
  });
}

struct TSum {
  u64 numerator = 0;    // sum of pi(x, p, -a) over primes p <= x, p = -1 (mod q)
  u64 denominator = 0;  // pi(x + a)
  Rational value() const { return denominator ? Rational(numerator, denominator) : Rational(0); }
};

/// t(x, q, a) as an exact ratio.
inline TSum t_sum(u64 x, u64 q, std::int64_t a, const SpfTable& table, unsigned threads = 0) {
  if (q < 2) throw std::invalid_argument("t_sum requires q >= 2");
  if (x < 2) throw std::invalid_argument("t_sum requires x >= 2");
  if (a < 0) throw std::invalid_argument("offset a must be >= 0");
  const u64 top = x + static_cast<u64>(a);
  table.require_covers(top);
  TSum out;
  out.denominator = table.prime_count(top);
  out.numerator = detail::sum_over_primes(table.primes_up_to(x), threads, [&](u64 r) -> u64 {
    u64 hits = 0;
    for (const auto& f : table.factor_compact(r + static_cast<u64>(a))) {
      if (f.prime <= x && f.prime % q == q - 1) ++hits;
    }
    return hits;
  });
  return out;
}

/// N(x, k, Q): #{n <= x divisible by at most k distinct primes <= Q}.
inline u64 count_few_small_prime_divisors(u64 x, unsigned k, double Q, const SpfTable& table,
                                          unsigned threads = 0) {
  if (!(Q >= 2)) throw std::invalid_argument("Q must be >= 2");
  table.require_covers(std::max<u64>(x, 2));
  return detail::sum_over_range(1, x, threads, [&](u64 n) -> u64 {
    unsigned small = 0;
    for (const auto& f : table.factor_compact(n)) {
      if (static_cast<double>(f.prime) > Q) break;
      ++small;
    }
    return small <= k;
  });
}

/// M(y, q_1..q_l): #{1 <= n < y : sigma(n) divisible by none of the q_i}.
inline u64 count_sigma_coprime(u64 y, std::span<const u64> qs, const SpfTable& table, unsigned threads = 0) {
  if (qs.empty()) throw std::invalid_argument("count_sigma_coprime needs at least one prime");
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (!is_prime_u64(qs[i])) throw std::invalid_argument(std::to_string(qs[i]) + " is not prime");
    for (std::size_t j = 0; j < i; ++j) {
      if (qs[i] == qs[j]) throw std::invalid_argument("primes must be distinct");
    }
  }
  if (y <= 1) return 0;
  table.require_covers(std::max<u64>(y - 1, 2));
  const auto& rule = MultiplicativeRule::sigma();
  return detail::sum_over_range(1, y - 1, threads, [&](u64 n) -> u64 {
    const u64 s = eval_multiplicative_u64(rule, table.factor_compact(n).view());
    for (u64 q : qs) {
      if (s % q == 0) return 0;
    }
    return 1;
  });
}

}  // namespace sigmagcd::lemma
