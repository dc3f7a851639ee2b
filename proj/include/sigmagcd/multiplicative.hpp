#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include "sigmagcd/bigint.hpp"
#include "sigmagcd/errors.hpp"
#include "sigmagcd/factored_integer.hpp"
#include "sigmagcd/spf_table.hpp"

namespace sigmagcd {

/// A multiplicative function given by its values on prime powers.
///
/// Only prime-power values are supplied, so the function is multiplicative
/// across distinct primes by construction. Built-in rules also carry a
/// 64-bit evaluator used by the range scans; custom rules fall back to the
/// exact evaluator there.
class MultiplicativeRule {
 public:
  using ExactFn = std::function<BigInt(u64 prime, unsigned exponent)>;
  using FastFn = std::function<std::optional<u64>(u64 prime, unsigned exponent)>;

  MultiplicativeRule(std::string name, ExactFn exact, FastFn fast = {})
      : name_(std::move(name)), exact_(std::move(exact)), fast_(std::move(fast)) {
    if (!exact_) throw std::invalid_argument("rule '" + name_ + "' needs a prime-power function");
  }

  const std::string& name() const { return name_; }

  BigInt prime_power_value(u64 prime, unsigned exponent) const { return exact_(prime, exponent); }

  /// Prime-power value if it fits in 64 bits.
  std::optional<u64> prime_power_value_u64(u64 prime, unsigned exponent) const {
    if (fast_) return fast_(prime, exponent);
    return try_u64(exact_(prime, exponent));
  }

  static const MultiplicativeRule& sigma();
  static const MultiplicativeRule& sigma_star();
  static const MultiplicativeRule& phi();

  /// Looks up a built-in rule by CLI name ("sigma", "sigma-star"/"sigma_star", "phi").
  static const MultiplicativeRule& builtin(const std::string& name) {
    if (name == "sigma") return sigma();
    if (name == "sigma-star" || name == "sigma_star") return sigma_star();
    if (name == "phi") return phi();
    throw std::invalid_argument("unknown rule '" + name + "' (expected sigma, sigma-star or phi)");
  }

 private:
  std::string name_;
  ExactFn exact_;
  FastFn fast_;
};

namespace detail {

inline BigInt big_pow(u64 p, unsigned e) {
  BigInt r;
  mpz_ui_pow_ui(r.backend().data(), p, e);
  return r;
}

inline std::optional<u128> checked_pow(u64 p, unsigned e) {
  u128 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > (~u128{0}) / p) return std::nullopt;
    r *= p;
  }
  return r;
}

inline std::optional<u64> narrow(std::optional<u128> v) {
  if (!v || *v > std::numeric_limits<u64>::max()) return std::nullopt;
  return static_cast<u64>(*v);
}

}  // namespace detail

inline const MultiplicativeRule& MultiplicativeRule::sigma() {
  static const MultiplicativeRule rule(
      "sigma",
      [](u64 p, unsigned e) { return (detail::big_pow(p, e + 1) - 1) / (p - 1); },
      [](u64 p, unsigned e) -> std::optional<u64> {
        // 1 + p + ... + p^e
        u128 term = 1, sum = 1;
        for (unsigned i = 0; i < e; ++i) {
          if (term > std::numeric_limits<u64>::max() / p) return std::nullopt;
          term *= p;
          sum += term;
        }
        return detail::narrow(sum);
      });
  return rule;
}

inline const MultiplicativeRule& MultiplicativeRule::sigma_star() {
  static const MultiplicativeRule rule(
      "sigma_star", [](u64 p, unsigned e) { return detail::big_pow(p, e) + 1; },
      [](u64 p, unsigned e) -> std::optional<u64> {
        auto pe = detail::checked_pow(p, e);
        if (!pe) return std::nullopt;
        return detail::narrow(*pe + 1);
      });
  return rule;
}

inline const MultiplicativeRule& MultiplicativeRule::phi() {
  static const MultiplicativeRule rule(
      "phi", [](u64 p, unsigned e) { return detail::big_pow(p, e - 1) * (p - 1); },
      [](u64 p, unsigned e) -> std::optional<u64> {
        auto pe = detail::checked_pow(p, e - 1);
        if (!pe) return std::nullopt;
        return detail::narrow(*pe * (p - 1));
      });
  return rule;
}

/// Product of the rule's prime-power values over n's factorization.
inline BigInt eval_multiplicative(const MultiplicativeRule& rule, const FactoredInteger& n) {
  BigInt out = 1;
  for (const auto& f : n.factors()) out *= rule.prime_power_value(f.prime, f.exponent);
  return out;
}

/// 64-bit evaluation for range scans; throws std::overflow_error when the value does not fit.
inline u64 eval_multiplicative_u64(const MultiplicativeRule& rule, std::span<const PrimePower> factors) {
  u128 out = 1;
  for (const auto& f : factors) {
    auto v = rule.prime_power_value_u64(f.prime, f.exponent);
    if (!v) throw std::overflow_error(rule.name() + " prime-power value exceeds 64 bits");
    out *= *v;
    if (out > std::numeric_limits<u64>::max()) {
      throw std::overflow_error(rule.name() + " value exceeds 64 bits");
    }
  }
  return static_cast<u64>(out);
}

inline BigInt sigma(const FactoredInteger& n) { return eval_multiplicative(MultiplicativeRule::sigma(), n); }
inline BigInt sigma_star(const FactoredInteger& n) {
  return eval_multiplicative(MultiplicativeRule::sigma_star(), n);
}
inline BigInt phi(const FactoredInteger& n) { return eval_multiplicative(MultiplicativeRule::phi(), n); }

inline BigInt sigma(const BigInt& n) { return sigma(factorize_trial(n)); }
inline BigInt sigma_star(const BigInt& n) { return sigma_star(factorize_trial(n)); }
inline BigInt phi(const BigInt& n) { return phi(factorize_trial(n)); }

inline u64 sigma(u64 n, const SpfTable& table) {
  return eval_multiplicative_u64(MultiplicativeRule::sigma(), table.factor_compact(n).view());
}
inline u64 sigma_star(u64 n, const SpfTable& table) {
  return eval_multiplicative_u64(MultiplicativeRule::sigma_star(), table.factor_compact(n).view());
}
inline u64 phi(u64 n, const SpfTable& table) {
  return eval_multiplicative_u64(MultiplicativeRule::phi(), table.factor_compact(n).view());
}

/// n, its rule value, their gcd, and alpha = log g / log n (absent for n = 1).
struct GcdRecord {
  BigInt n;
  BigInt sigma_n;
  BigInt g;
  std::optional<double> alpha;
};

inline double gcd_exponent(const BigInt& g, const BigInt& n) { return log_of(g) / log_of(n); }

/// gcd is taken on the integer values, never on factorizations.
inline GcdRecord make_gcd_record(BigInt n, BigInt value) {
  GcdRecord r;
  r.g = boost::multiprecision::gcd(n, value);
  r.n = std::move(n);
  r.sigma_n = std::move(value);
  if (r.n >= 2) r.alpha = gcd_exponent(r.g, r.n);
  return r;
}

inline GcdRecord gcd_n_sigma(const FactoredInteger& n, const MultiplicativeRule& rule = MultiplicativeRule::sigma()) {
  return make_gcd_record(n.value(), eval_multiplicative(rule, n));
}

inline GcdRecord gcd_n_sigma(const BigInt& n, const MultiplicativeRule& rule = MultiplicativeRule::sigma()) {
  if (n < 1) throw std::invalid_argument("gcd_n_sigma requires n >= 1");
  return gcd_n_sigma(factorize_trial(n), rule);
}

/// Scan-path sample: everything in 64 bits.
struct GcdSample {
  u64 n = 0;
  u64 value = 0;
  u64 g = 0;
};

inline GcdSample gcd_sample(u64 n, const SpfTable& table, const MultiplicativeRule& rule) {
  const u64 v = eval_multiplicative_u64(rule, table.factor_compact(n).view());
  const u64 g = std::gcd(n, v);
  if (g == 0 || n % g != 0 || v % g != 0) {
    throw InvariantViolation("gcd(" + std::to_string(n) + ", " + std::to_string(v) + ") check failed");
  }
  return {n, v, g};
}

struct Perfection {
  enum class Kind { kNone, kPerfect, kMultiperfect };
  Kind kind = Kind::kNone;
  BigInt multiplier;  // sigma(n)/n when n | sigma(n), otherwise 0
};

/// Perfect when sigma(n) = 2n; multiperfect with multiplier k when sigma(n) = kn, k != 2.
inline Perfection classify_perfection(const BigInt& n) {
  if (n < 1) throw std::invalid_argument("classify_perfection requires n >= 1");
  const BigInt s = sigma(n);
  Perfection out;
  if (s % n != 0) return out;
  out.multiplier = s / n;
  out.kind = out.multiplier == 2 ? Perfection::Kind::kPerfect : Perfection::Kind::kMultiperfect;
  return out;
}

inline std::string describe(const Perfection& p) {
  switch (p.kind) {
    case Perfection::Kind::kPerfect: return "perfect k=2";
    case Perfection::Kind::kMultiperfect: return "multiperfect k=" + p.multiplier.str();
    case Perfection::Kind::kNone: break;
  }
  return "none";
}

}  // namespace sigmagcd
