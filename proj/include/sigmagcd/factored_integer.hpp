#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigmagcd/bigint.hpp"
#include "sigmagcd/primality.hpp"

namespace sigmagcd {

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Sentinel for the smallest prime factor of 1, standing in for +infinity.
inline constexpr u64 kNoPrimeFactor = std::numeric_limits<u64>::max();

/// An exact positive integer together with its prime factorization.
///
/// Factors are kept with strictly ascending primes and positive exponents;
/// the value is always the product of the listed prime powers, so 1 is the
/// empty factorization. Instances are immutable once built.
class FactoredInteger {
 public:
  FactoredInteger() : value_(1) {}

  /// Builds from a factor list, validating order, exponents and primality.
  static FactoredInteger from_factors(std::vector<PrimePower> factors) {
    u64 previous = 0;
    for (const auto& f : factors) {
      if (f.exponent == 0) throw std::invalid_argument("factor exponent must be >= 1");
      if (f.prime <= previous) throw std::invalid_argument("factor primes must be strictly ascending");
      if (!is_prime_u64(f.prime)) {
        throw std::invalid_argument("factor " + std::to_string(f.prime) + " is not prime");
      }
      previous = f.prime;
    }
    return from_trusted(std::move(factors));
  }

  static FactoredInteger from_factors(std::initializer_list<PrimePower> factors) {
    return from_factors(std::vector<PrimePower>(factors));
  }

  /// Skips the primality re-check; callers guarantee the factor list is canonical.
  static FactoredInteger from_trusted(std::vector<PrimePower> factors) {
    FactoredInteger out;
    out.factors_ = std::move(factors);
    BigInt value = 1;
    for (const auto& f : out.factors_) {
      BigInt pe;
      mpz_ui_pow_ui(pe.backend().data(), f.prime, f.exponent);
      value *= pe;
    }
    out.value_ = std::move(value);
    return out;
  }

  const BigInt& value() const { return value_; }
  std::span<const PrimePower> factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }

  friend bool operator==(const FactoredInteger& a, const FactoredInteger& b) {
    return a.factors_ == b.factors_;
  }

  friend std::ostream& operator<<(std::ostream& os, const FactoredInteger& n) {
    os << n.value_ << " = ";
    if (n.factors_.empty()) return os << "1";
    bool first = true;
    for (const auto& f : n.factors_) {
      if (!first) os << " * ";
      os << f.prime;
      if (f.exponent > 1) os << "^" << f.exponent;
      first = false;
    }
    return os;
  }

 private:
  BigInt value_;
  std::vector<PrimePower> factors_;
};

/// Factorization of a.value * b.value; exponents of shared primes add.
inline FactoredInteger merge_factorizations(const FactoredInteger& a, const FactoredInteger& b) {
  auto fa = a.factors();
  auto fb = b.factors();
  std::vector<PrimePower> out;
  out.reserve(fa.size() + fb.size());
  std::size_t i = 0, j = 0;
  while (i < fa.size() || j < fb.size()) {
    if (j == fb.size() || (i < fa.size() && fa[i].prime < fb[j].prime)) {
      out.push_back(fa[i++]);
    } else if (i == fa.size() || fb[j].prime < fa[i].prime) {
      out.push_back(fb[j++]);
    } else {
      out.push_back({fa[i].prime, fa[i].exponent + fb[j].exponent});
      ++i;
      ++j;
    }
  }
  return FactoredInteger::from_trusted(std::move(out));
}

namespace detail {

inline void trial_divide_u64(u64 n, u64 start, std::vector<PrimePower>& out) {
  if (start <= 2) {
    unsigned e = 0;
    while (n % 2 == 0) {
      n /= 2;
      ++e;
    }
    if (e) out.push_back({2, e});
    start = 3;
  }
  for (u64 d = start | 1; static_cast<u128>(d) * d <= n; d += 2) {
    if (n % d != 0) continue;
    unsigned e = 0;
    do {
      n /= d;
      ++e;
    } while (n % d == 0);
    out.push_back({d, e});
  }
  if (n > 1) out.push_back({n, 1});
}

}  // namespace detail

/// Factorization by trial division over ascending candidates up to the
/// square root of the remaining cofactor. Independent of any sieve table.
///
/// Intended for inputs whose second-largest prime factor is small; a large
/// final cofactor must fit in 64 bits.
inline FactoredInteger factorize_trial(const BigInt& n) {
  if (n < 1) throw std::invalid_argument("factorize_trial requires n >= 1");
  std::vector<PrimePower> out;
  if (auto small = try_u64(n)) {
    detail::trial_divide_u64(*small, 2, out);
    return FactoredInteger::from_trusted(std::move(out));
  }

  BigInt rest = n;
  u64 d = 2;
  while (!fits_u64(rest)) {
    if (BigInt(d) * d > rest) break;
    if (mpz_divisible_ui_p(rest.backend().data(), d)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(rest.backend().data(), d)) {
        mpz_divexact_ui(rest.backend().data(), rest.backend().data(), d);
        ++e;
      }
      out.push_back({d, e});
    }
    d = (d == 2) ? 3 : d + 2;
  }
  if (fits_u64(rest)) {
    detail::trial_divide_u64(to_u64(rest), d, out);
  } else if (rest > 1) {
    throw std::domain_error("factorize_trial: prime cofactor exceeds 64 bits");
  }
  return FactoredInteger::from_trusted(std::move(out));
}

inline FactoredInteger factorize_trial(u64 n) { return factorize_trial(BigInt(n)); }

/// Split n = n1 * n2 with every prime of n1 at most `threshold` and every prime of n2 above it.
struct SmoothSplit {
  FactoredInteger n;
  u64 threshold = 0;
  FactoredInteger n1;
  FactoredInteger n2;
};

inline SmoothSplit smooth_decompose(const FactoredInteger& n, u64 threshold) {
  if (threshold < 2) throw std::invalid_argument("smooth_decompose requires Y >= 2");
  std::vector<PrimePower> smooth, rough;
  for (const auto& f : n.factors()) {
    (f.prime <= threshold ? smooth : rough).push_back(f);
  }
  return SmoothSplit{n, threshold, FactoredInteger::from_trusted(std::move(smooth)),
                     FactoredInteger::from_trusted(std::move(rough))};
}

/// P(n); P(1) = 1.
inline u64 largest_prime_factor(const FactoredInteger& n) {
  return n.is_one() ? 1 : n.factors().back().prime;
}

/// p(n); p(1) = kNoPrimeFactor.
inline u64 smallest_prime_factor(const FactoredInteger& n) {
  return n.is_one() ? kNoPrimeFactor : n.factors().front().prime;
}

inline bool is_squarefree(const FactoredInteger& n) {
  return std::all_of(n.factors().begin(), n.factors().end(),
                     [](const PrimePower& f) { return f.exponent == 1; });
}

}  // namespace sigmagcd
