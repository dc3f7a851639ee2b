#pragma once

// Brute-force reference implementations. Deliberately naive and independent
// of the sieve table, the factorization types and the multiplicative engine.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::pair<u64, unsigned>> factor(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline u64 prime_count(u64 x) {
  u64 c = 0;
  for (u64 n = 2; n <= x; ++n) c += is_prime(n);
  return c;
}

inline u64 divisor_sum(u64 n) {
  u64 s = 0;
  for (u64 d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      s += d;
      if (d * d != n) s += n / d;
    }
  }
  return s;
}

inline u64 unitary_divisor_sum(u64 n) {
  u64 s = 0;
  for (u64 d = 1; d <= n; ++d) {
    if (n % d == 0 && std::gcd(d, n / d) == 1) s += d;
  }
  return s;
}

inline u64 totient(u64 n) {
  u64 c = 0;
  for (u64 k = 1; k <= n; ++k) c += (std::gcd(k, n) == 1);
  return c;
}

inline u64 primes_in_ap(u64 x, u64 k, u64 residue) {
  u64 c = 0;
  for (u64 r = 2; r <= x; ++r) c += (is_prime(r) && r % k == residue % k);
  return c;
}

inline u64 largest_prime_factor(u64 n) {
  u64 best = 1;
  for (u64 d = 2; d <= n; ++d) {
    if (n % d == 0 && is_prime(d)) best = d;
  }
  return best;
}

// Y-smooth part of n by repeated division by every d <= Y.
inline u64 smooth_part(u64 n, u64 Y) {
  u64 part = 1;
  for (u64 d = 2; d <= Y && d <= n; ++d) {
    if (!is_prime(d)) continue;
    while (n % d == 0) {
      n /= d;
      part *= d;
    }
  }
  return part;
}

inline u64 s1_count(u64 x, u64 Y, double E) {
  const double bound = std::pow(static_cast<double>(Y), E);
  u64 c = 0;
  for (u64 n = 1; n <= x; ++n) c += static_cast<double>(smooth_part(n, Y)) >= bound;
  return c;
}

inline u64 s2_count(u64 x, u64 Y) {
  u64 c = 0;
  for (u64 n = 1; n <= x; ++n) {
    bool hit = false;
    for (u64 q = Y + 1; q * q <= n; ++q) {
      if (is_prime(q) && n % (q * q) == 0) hit = true;
    }
    c += hit;
  }
  return c;
}

inline u64 few_small_prime_divisors(u64 x, unsigned k, u64 Q) {
  u64 c = 0;
  for (u64 n = 1; n <= x; ++n) {
    unsigned w = 0;
    for (u64 p = 2; p <= Q; ++p) w += (is_prime(p) && n % p == 0);
    c += (w <= k);
  }
  return c;
}

inline u64 sigma_coprime(u64 y, const std::vector<u64>& qs) {
  u64 c = 0;
  for (u64 n = 1; n < y; ++n) {
    const u64 s = divisor_sum(n);
    bool clear = true;
    for (u64 q : qs) clear = clear && (s % q != 0);
    c += clear;
  }
  return c;
}

// Ascending enumeration of Y-smooth y in [lo, hi], from the primes <= Y.
inline std::vector<u64> smooth_numbers(u64 Y, double lo, u64 hi) {
  std::vector<u64> ps;
  for (u64 p = 2; p <= Y; ++p) {
    if (is_prime(p)) ps.push_back(p);
  }
  std::vector<u64> out;
  std::vector<u64> frontier = {1};
  std::vector<u64> all = {1};
  for (u64 p : ps) {
    std::vector<u64> next;
    for (u64 v : all) {
      for (u64 w = v * p; w <= hi; w *= p) next.push_back(w);
    }
    all.insert(all.end(), next.begin(), next.end());
  }
  for (u64 v : all) {
    if (static_cast<double>(v) >= lo && v <= hi) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline u64 residue_neg(u64 a, u64 k) { return (k - a % k) % k; }

inline u64 lemma24(u64 x, u64 Y, double E, u64 a) {
  u64 total = 0;
  for (u64 y : smooth_numbers(Y, std::pow(static_cast<double>(Y), E), x)) total += primes_in_ap(x, y, residue_neg(a, y));
  return total;
}

inline u64 lemma25(u64 x, double Y, u64 a, u64 q_cap) {
  u64 total = 0;
  for (u64 q = 2; q <= q_cap; ++q) {
    if (!is_prime(q) || static_cast<double>(q) < Y) continue;
    total += primes_in_ap(x, q * q, residue_neg(a, q * q));
  }
  return total;
}

inline u64 t_numerator(u64 x, u64 q, u64 a) {
  u64 total = 0;
  for (u64 p = 2; p <= x; ++p) {
    if (is_prime(p) && p % q == q - 1) total += primes_in_ap(x, p, residue_neg(a, p));
  }
  return total;
}

}  // namespace oracle
