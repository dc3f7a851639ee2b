#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigmagcd/bigint.hpp"
#include "sigmagcd/errors.hpp"
#include "sigmagcd/factored_integer.hpp"
#include "sigmagcd/parallel.hpp"

namespace sigmagcd {

struct SieveConfig {
  std::uint64_t memory_budget_bytes = std::uint64_t{2} << 30;
  std::uint64_t segment_size = std::uint64_t{1} << 20;
  unsigned threads = 0;  // 0 = machine parallelism
};

/// Allocation-free factorization of a 64-bit integer (at most 15 distinct primes).
struct CompactFactors {
  std::array<PrimePower, 15> items{};
  unsigned size = 0;

  void push(u64 p, unsigned e) { items[size++] = {p, e}; }
  std::span<const PrimePower> view() const { return {items.data(), size}; }
  auto begin() const { return items.begin(); }
  auto end() const { return items.begin() + size; }
};

/// Smallest-prime-factor table over [2, limit].
///
/// Even n have spf 2. For odd n the table stores a 16-bit index into the
/// prime list (0 marks a prime), which works because the smallest factor of
/// any composite n <= limit is at most sqrt(limit).
class SpfTable {
 public:
  u64 limit() const { return limit_; }
  std::span<const std::uint32_t> primes() const { return primes_; }

  u64 spf(u64 n) const {
    check_range(n, 2);
    return spf_unchecked(n);
  }

  bool is_prime(u64 n) const {
    check_range(n, 0);
    return n >= 2 && spf_unchecked(n) == n;
  }

  /// pi(x) for 0 <= x <= limit.
  u64 prime_count(u64 x) const {
    if (x > limit_) throw ResourceLimitError(coverage_message(x));
    return static_cast<u64>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
  }

  /// Primes <= x, as a view into the table.
  std::span<const std::uint32_t> primes_up_to(u64 x) const {
    return primes().first(prime_count(std::min(x, limit_)));
  }

  CompactFactors factor_compact(u64 n) const {
    check_range(n, 1);
    CompactFactors out;
    if (n == 1) return out;
    unsigned e = static_cast<unsigned>(std::countr_zero(n));
    if (e) {
      out.push(2, e);
      n >>= e;
    }
    while (n > 1) {
      const std::uint16_t idx = odd_spf_[n >> 1];
      const u64 p = idx ? primes_[idx] : n;
      e = 0;
      do {
        n /= p;
        ++e;
      } while (n % p == 0);
      out.push(p, e);
    }
    return out;
  }

  void require_covers(u64 x) const {
    if (x > limit_) throw ResourceLimitError(coverage_message(x));
  }

  /// Upper estimate of the bytes a table over [2, limit] occupies.
  static u64 estimated_bytes(u64 limit) {
    const double x = static_cast<double>(limit);
    const double pi_upper = limit < 17 ? x : 1.25506 * x / std::log(x);
    return (limit / 2 + 1) * sizeof(std::uint16_t) +
           static_cast<u64>(pi_upper + 1) * sizeof(std::uint32_t);
  }

 private:
  friend SpfTable build_spf_table(u64 limit, const SieveConfig& config);

  u64 spf_unchecked(u64 n) const {
    if ((n & 1) == 0) return 2;
    const std::uint16_t idx = odd_spf_[n >> 1];
    return idx ? primes_[idx] : n;
  }

  void check_range(u64 n, u64 lo) const {
    if (n < lo || n > limit_) {
      throw std::invalid_argument("n = " + std::to_string(n) + " outside table range [" +
                                  std::to_string(lo) + ", " + std::to_string(limit_) + "]");
    }
  }

  std::string coverage_message(u64 x) const {
    return "prime table covers [2, " + std::to_string(limit_) + "] but " + std::to_string(x) +
           " is required";
  }

  u64 limit_ = 0;
  std::vector<std::uint16_t> odd_spf_;  // index n/2 for odd n
  std::vector<std::uint32_t> primes_;
};

/// Segmented smallest-prime-factor sieve. Segments are sieved independently
/// (in parallel when config.threads allows) and assembled in order.
inline SpfTable build_spf_table(u64 limit, const SieveConfig& config = {}) {
  if (limit < 2) throw std::invalid_argument("build_spf_table requires limit >= 2");
  if (limit > std::numeric_limits<std::uint32_t>::max()) {
    throw ResourceLimitError("sieve limit " + std::to_string(limit) + " exceeds the 32-bit table range");
  }
  const u64 need = SpfTable::estimated_bytes(limit);
  if (need > config.memory_budget_bytes) {
    throw ResourceLimitError("sieve limit " + std::to_string(limit) + " needs ~" + std::to_string(need) +
                             " bytes, over the table budget of " +
                             std::to_string(config.memory_budget_bytes) + " bytes");
  }

  // Base primes up to sqrt(limit) by a plain sieve.
  u64 root = static_cast<u64>(std::sqrt(static_cast<double>(limit)));
  while (root * root > limit) --root;
  while ((root + 1) * (root + 1) <= limit) ++root;
  std::vector<char> composite(root + 1, 0);
  std::vector<std::uint32_t> base{2};
  for (u64 i = 3; i <= root; i += 2) {
    if (composite[i]) continue;
    base.push_back(static_cast<std::uint32_t>(i));
    for (u64 j = i * i; j <= root; j += 2 * i) composite[j] = 1;
  }
  if (base.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw ResourceLimitError("sieve limit too large for 16-bit factor indices");
  }

  SpfTable table;
  table.limit_ = limit;
  const u64 slots = limit / 2 + 1;  // odd n = 2i+1 for i in [0, slots)
  table.odd_spf_.assign(slots, 0);
  std::uint16_t* cells = table.odd_spf_.data();

  auto segment_primes = map_blocks(0, slots, config.segment_size, config.threads, [&](u64 lo, u64 hi) {
    const u64 n_lo = 2 * lo + 1;
    const u64 n_hi = std::min<u64>(2 * (hi - 1) + 1, limit);
    for (std::size_t j = 1; j < base.size(); ++j) {
      const u64 p = base[j];
      if (p * p > n_hi) break;
      u64 m = std::max(p * p, (n_lo + p - 1) / p * p);
      if ((m & 1) == 0) m += p;
      for (; m <= n_hi; m += 2 * p) {
        std::uint16_t& c = cells[m >> 1];
        if (c == 0) c = static_cast<std::uint16_t>(j);
      }
    }
    std::vector<std::uint32_t> found;
    for (u64 i = std::max<u64>(lo, 1); i < hi; ++i) {
      const u64 n = 2 * i + 1;
      if (n > limit) break;
      if (cells[i] == 0) found.push_back(static_cast<std::uint32_t>(n));
    }
    return found;
  });

  std::size_t total = 1;
  for (const auto& s : segment_primes) total += s.size();
  table.primes_.reserve(total);
  table.primes_.push_back(2);
  for (const auto& s : segment_primes) table.primes_.insert(table.primes_.end(), s.begin(), s.end());
  return table;
}

/// Unique prime factorization of n in [1, table.limit].
inline FactoredInteger factorize(u64 n, const SpfTable& table) {
  const auto compact = table.factor_compact(n);
  return FactoredInteger::from_trusted({compact.begin(), compact.end()});
}

/// Number of primes r <= x with r = a (mod k).
inline u64 primes_in_ap_count(u64 x, u64 k, std::int64_t a, const SpfTable& table) {
  if (k == 0) throw std::invalid_argument("primes_in_ap_count requires k >= 1");
  table.require_covers(x);
  const auto ps = table.primes_up_to(x);
  if (k == 1) return ps.size();
  const std::int64_t sk = static_cast<std::int64_t>(k);
  const u64 residue = static_cast<u64>(((a % sk) + sk) % sk);
  u64 count = 0;
  for (std::uint32_t r : ps) count += (r % k == residue);
  return count;
}

}  // namespace sigmagcd
