#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sigmagcd/lemma_lab.hpp"

namespace sigmagcd::lemma {

inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// One evaluated lemma quantity. `parameters` echoes the exact inputs used,
/// including preset-resolved Y and E.
struct LemmaReport {
  std::string lemma_id;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string raw_value;  // exact integer, or "num/den" for rationals
  double normalized_value = 0;
  std::string notes;
};

/// Inputs for evaluate_lemma. Unset Y/E fall back to desk_smooth_parameters(x),
/// unset a to 1. For id "m", x is the exclusive bound y.
struct LemmaQuery {
  std::string id;  // s | l23 | l24 | l25 | t | nq | m | s1 | s2
  u64 x = 0;
  std::optional<u64> k;
  std::optional<double> Y;
  std::optional<double> E;
  std::optional<std::int64_t> a;
  std::optional<u64> q;
  std::optional<double> Q;
  std::vector<u64> qs;
};

inline const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids = {"s", "l23", "l24", "l25", "t", "nq", "m", "s1", "s2"};
  return ids;
}

/// Largest integer the table must cover to evaluate the query.
inline u64 required_table_limit(const LemmaQuery& q) {
  const u64 a = q.a ? static_cast<u64>(std::max<std::int64_t>(*q.a, 0)) : 1;
  if (q.id == "l24" || q.id == "l25" || q.id == "t") return std::max<u64>(q.x + a, 2);
  return std::max<u64>(q.x, 2);
}

namespace detail {

template <class T>
const T& need(const std::optional<T>& v, const char* name, const std::string& id) {
  if (!v) throw std::invalid_argument("lemma " + id + " requires --" + name);
  return *v;
}

}  // namespace detail

inline LemmaReport evaluate_lemma(const LemmaQuery& q, const SpfTable& table, unsigned threads = 0) {
  LemmaReport r;
  r.lemma_id = q.id;
  const double xd = static_cast<double>(q.x);
  auto echo = [&](const char* name, const std::string& v) { r.parameters.emplace_back(name, v); };
  auto smooth = [&]() {
    SmoothParameters sp = q.x >= 16 ? desk_smooth_parameters(xd) : SmoothParameters{};
    if (q.Y) sp.Y = *q.Y;
    if (q.E) sp.E = *q.E;
    return sp;
  };
  const std::int64_t a = q.a.value_or(1);
  echo("x", std::to_string(q.x));

  if (q.id == "s" || q.id == "l23") {
    const u64 k = detail::need(q.k, "k", q.id);
    echo("k", std::to_string(k));
    const Rational s = s_sum(q.x, k, table);
    r.raw_value = to_string(s);
    if (q.id == "s") {
      r.normalized_value = to_double(s);
      r.notes = "normalized = s(x,k) as a real";
    } else {
      r.normalized_value = lemma23_ratio(q.x, k, table);
      r.notes = "normalized = s(x,k)*phi(k)/x_2";
    }
  } else if (q.id == "l24") {
    const auto sp = smooth();
    echo("Y", format_real(sp.Y));
    echo("E", format_real(sp.E));
    echo("a", std::to_string(a));
    const u64 v = lemma24_sum(q.x, sp.Y, sp.E, a, table, threads);
    r.raw_value = std::to_string(v);
    r.normalized_value = static_cast<double>(v) / static_cast<double>(table.prime_count(q.x));
    r.notes = "normalized = sum/pi(x)";
  } else if (q.id == "l25") {
    const auto sp = smooth();
    echo("Y", format_real(sp.Y));
    echo("a", std::to_string(a));
    const u64 v = lemma25_sum(q.x, sp.Y, a, table, threads);
    r.raw_value = std::to_string(v);
    r.normalized_value = static_cast<double>(v) / static_cast<double>(table.prime_count(q.x));
    r.notes = "normalized = sum/pi(x)";
  } else if (q.id == "t") {
    const u64 mod = detail::need(q.q, "q", q.id);
    echo("a", std::to_string(a));
    echo("q", std::to_string(mod));
    const TSum t = t_sum(q.x, mod, a, table, threads);
    r.raw_value = std::to_string(t.numerator) + "/" + std::to_string(t.denominator);
    r.normalized_value = to_double(t.value()) * static_cast<double>(mod) / iterated_log(xd, 2);
    r.notes = "raw = sum pi(x,p,-a) / pi(x+a) unreduced; normalized = t*q/x_2";
  } else if (q.id == "nq") {
    const u64 k = detail::need(q.k, "k", q.id);
    const double Q = detail::need(q.Q, "Q", q.id);
    echo("k", std::to_string(k));
    echo("Q", format_real(Q));
    const u64 v = count_few_small_prime_divisors(q.x, static_cast<unsigned>(k), Q, table, threads);
    r.raw_value = std::to_string(v);
    r.normalized_value = q.x ? static_cast<double>(v) / xd : 0.0;
    r.notes = "normalized = N(x,k,Q)/x";
  } else if (q.id == "m") {
    std::string list;
    for (u64 p : q.qs) list += (list.empty() ? "" : " ") + std::to_string(p);
    echo("q_list", list);
    const u64 v = count_sigma_coprime(q.x, q.qs, table, threads);
    r.raw_value = std::to_string(v);
    r.normalized_value = q.x ? static_cast<double>(v) / xd : 0.0;
    r.notes = "x is the exclusive bound y; normalized = M/y";
  } else if (q.id == "s1") {
    const auto sp = smooth();
    echo("Y", format_real(sp.Y));
    echo("E", format_real(sp.E));
    const u64 v = exceptional_s1_count(q.x, sp.Y, sp.E, table, threads);
    r.raw_value = std::to_string(v);
    r.normalized_value = q.x ? static_cast<double>(v) / xd : 0.0;
    r.notes = "normalized = #S1/x";
  } else if (q.id == "s2") {
    const auto sp = smooth();
    echo("Y", format_real(sp.Y));
    const u64 v = exceptional_s2_count(q.x, sp.Y, table, threads);
    r.raw_value = std::to_string(v);
    r.normalized_value = q.x ? static_cast<double>(v) / xd : 0.0;
    r.notes = "normalized = #S2/x";
  } else {
    throw std::invalid_argument("unknown lemma id '" + q.id + "'");
  }
  return r;
}

}  // namespace sigmagcd::lemma
