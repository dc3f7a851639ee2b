#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

namespace sigmagcd {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline bool fits_u64(const BigInt& v) {
  return v >= 0 && mpz_sizeinbase(v.backend().data(), 2) <= 64;
}

inline u64 to_u64(const BigInt& v) {
  return v.convert_to<u64>();
}

inline std::optional<u64> try_u64(const BigInt& v) {
  if (!fits_u64(v)) return std::nullopt;
  return to_u64(v);
}

inline BigInt from_u128(u128 v) {
  BigInt r = static_cast<u64>(v >> 64);
  r <<= 64;
  r += static_cast<u64>(v);
  return r;
}

// Natural log of a positive integer of any size.
inline double log_of(const BigInt& v) {
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, v.backend().data());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

inline double to_double(const Rational& q) {
  return mpq_get_d(q.backend().data());
}

inline std::string to_string(const BigInt& v) { return v.str(); }

// "num/den", or just "num" for integers.
inline std::string to_string(const Rational& q) {
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace sigmagcd
