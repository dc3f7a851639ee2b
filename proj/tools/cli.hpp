#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sigmagcd/sigmagcd.hpp"

namespace sigmagcd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitInvariant = 4;

inline constexpr const char* kBudgetEnv = "SIGMAGCD_TABLE_BUDGET";

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string subcommand;
  std::map<std::string, std::string> parameters;
  std::optional<std::string> output_path;
  std::string output_format = "csv";  // csv | json | text
  u64 table_budget = SieveConfig{}.memory_budget_bytes;
  unsigned threads = 0;
};

inline u64 default_table_budget() {
  if (const char* env = std::getenv(kBudgetEnv); env && *env) {
    try {
      std::size_t used = 0;
      const u64 v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string(kBudgetEnv) + " must be a byte count");
  }
  return SieveConfig{}.memory_budget_bytes;
}

namespace detail {

class Params {
 public:
  explicit Params(const RunConfig& c) : c_(c) {}

  bool has(const std::string& k) const { return c_.parameters.count(k) != 0; }

  std::string str(const std::string& k) const {
    auto it = c_.parameters.find(k);
    if (it == c_.parameters.end()) throw UsageError(c_.subcommand + ": missing --" + k);
    return it->second;
  }

  u64 u(const std::string& k, u64 min = 0) const {
    const std::string s = str(k);
    u64 v = 0;
    try {
      std::size_t used = 0;
      if (!s.empty() && s[0] == '-') throw std::invalid_argument("negative");
      v = std::stoull(s, &used);
      if (used != s.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError("--" + k + " expects a nonnegative integer, got '" + s + "'");
    }
    if (v < min) throw UsageError("--" + k + " must be >= " + std::to_string(min));
    return v;
  }

  double real(const std::string& k) const {
    const std::string s = str(k);
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw UsageError("--" + k + " expects a number, got '" + s + "'");
    }
  }

  BigInt big(const std::string& k) const {
    const std::string s = str(k);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("--" + k + " expects a positive integer, got '" + s + "'");
    }
    BigInt v(s);
    if (v < 1) throw UsageError("--" + k + " must be >= 1");
    return v;
  }

 private:
  const RunConfig& c_;
};

inline SpfTable make_table(const RunConfig& c, u64 limit) {
  SieveConfig sc;
  sc.memory_budget_bytes = c.table_budget;
  sc.threads = c.threads;
  return build_spf_table(std::max<u64>(limit, 2), sc);
}

inline density::ThresholdExponent exponent_from(const Params& p) {
  if (p.has("f-preset")) {
    if (p.str("f-preset") != "logloglog") throw UsageError("--f-preset accepts only 'logloglog'");
    return density::ThresholdExponent::log_log_log();
  }
  const double f = p.has("f") ? p.real("f") : 6.0;
  if (!(f >= 0)) throw UsageError("--f must be >= 0");
  return density::ThresholdExponent::constant(f);
}

inline std::vector<u64> parse_list(const std::string& s) {
  std::vector<u64> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError("--qs expects comma-separated primes, got '" + s + "'");
    }
  }
  return out;
}

inline report::Table pointwise_table(const std::string& n, const std::string& value) {
  report::Table t;
  t.columns = {"n", "value"};
  t.rows.push_back({report::Cell::integer(BigInt(n)), report::Cell::str(value)});
  return t;
}

inline void emit(const RunConfig& c, report::Table table, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> meta = {{"tool", std::string("sigmagcd ") + kVersion},
                                                           {"subcommand", c.subcommand}};
  for (const auto& [k, v] : c.parameters) meta.emplace_back("param " + k, v);
  meta.insert(meta.end(), table.meta.begin(), table.meta.end());
  table.meta = std::move(meta);

  std::ofstream file;
  std::ostream* os = &out;
  if (c.output_path) {
    file.open(*c.output_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file " + *c.output_path);
    os = &file;
  }
  if (c.output_format == "json") {
    report::write_json(*os, table);
  } else {
    report::write_csv(*os, table);
  }
}

inline void emit_text(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.output_path) {
    std::ofstream file(*c.output_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file " + *c.output_path);
    file << text << "\n";
  } else {
    out << text << "\n";
  }
}

inline int dispatch(const RunConfig& c, std::ostream& out) {
  const Params p(c);
  const std::string& cmd = c.subcommand;

  if (cmd == "sigma" || cmd == "sigma-star" || cmd == "phi" || cmd == "classify") {
    const BigInt n = p.big("n");
    std::string value;
    if (cmd == "classify") {
      value = describe(classify_perfection(n));
    } else {
      const auto f = factorize_trial(n);
      value = (cmd == "sigma" ? sigma(f) : cmd == "phi" ? phi(f) : sigma_star(f)).str();
    }
    if (c.output_format == "text") {
      emit_text(c, value, out);
    } else {
      emit(c, pointwise_table(n.str(), value), out);
    }
    return kExitOk;
  }

  if (c.output_format == "text") throw UsageError(cmd + " writes csv or json only");

  if (cmd == "gcd-scan") {
    const u64 x = p.u("x", density::kScanCutoff);
    const auto f = exponent_from(p);
    const auto& rule = MultiplicativeRule::builtin(p.has("rule") ? p.str("rule") : "sigma");
    const auto table = make_table(c, x);
    emit(c, report::experiment_table(density::gcd_threshold_scan(x, f, rule, table, c.threads)), out);
  } else if (cmd == "gcd-lower-scan") {
    const u64 x = p.u("x", density::kScanCutoff);
    const double cc = p.has("c") ? p.real("c") : 1.0;
    if (!(cc >= 0)) throw UsageError("--c must be >= 0");
    const auto& rule = MultiplicativeRule::builtin(p.has("rule") ? p.str("rule") : "sigma");
    const auto table = make_table(c, x);
    emit(c, report::experiment_table(density::gcd_lower_scan(x, cc, table, c.threads, rule)), out);
  } else if (cmd == "shifted-scan") {
    const u64 x = p.u("x", 2);
    const u64 a = p.has("a") ? p.u("a", 1) : 1;
    const auto f = exponent_from(p);
    const auto& rule = MultiplicativeRule::builtin(p.has("rule") ? p.str("rule") : "sigma");
    const auto table = make_table(c, x + a);
    emit(c, report::experiment_table(density::shifted_prime_scan(x, a, f, rule, table, c.threads)), out);
  } else if (cmd == "lemma") {
    lemma::LemmaQuery q;
    q.id = p.str("id");
    bool known = false;
    for (const auto& id : lemma::lemma_ids()) known = known || id == q.id;
    if (!known) throw UsageError("--id must be one of s|l23|l24|l25|t|nq|m|s1|s2");
    q.x = p.u("x");
    if (p.has("k")) q.k = p.u("k");
    if (p.has("Y")) q.Y = p.real("Y");
    if (p.has("E")) q.E = p.real("E");
    if (p.has("a")) q.a = static_cast<std::int64_t>(p.u("a"));
    if (p.has("q")) q.q = p.u("q");
    if (p.has("Q")) q.Q = p.real("Q");
    if (p.has("qs")) q.qs = parse_list(p.str("qs"));
    if ((q.id == "s1" || q.id == "s2" || q.id == "l24" || q.id == "l25") && !q.Y && q.x < 16) {
      throw UsageError("--Y is required when x < 16 (no desk preset)");
    }
    const auto table = make_table(c, lemma::required_table_limit(q));
    emit(c, report::lemma_table({lemma::evaluate_lemma(q, table, c.threads)}), out);
  } else if (cmd == "profile") {
    const u64 x = p.u("x", 1);
    const double Q = p.has("Q") ? p.real("Q") : lemma::proof_Q(static_cast<double>(std::max<u64>(x, 16)));
    const unsigned l = static_cast<unsigned>(p.has("l") ? p.u("l") : 1);
    if (!(Q >= 2)) throw UsageError("--Q must be >= 2");
    const auto table = make_table(c, x);
    emit(c, report::profile_table(density::small_prime_divisor_profile(x, Q, l, table, c.threads)), out);
  } else if (cmd == "champions") {
    const u64 limit = p.u("p-limit", 3);
    const std::string view = p.has("view") ? p.str("view") : "valid";
    report::ChampionView v = report::ChampionView::kValid;
    if (view == "all") {
      v = report::ChampionView::kAll;
    } else if (view == "running-max") {
      v = report::ChampionView::kRunningMax;
    } else if (view != "valid") {
      throw UsageError("--view must be valid, all or running-max");
    }
    const auto table = make_table(c, limit + 1);
    emit(c, report::champion_table(champions::champion_scan(limit, table, c.threads), v), out);
  } else if (cmd == "construct") {
    const u64 prime = p.u("p", 2);
    if (!is_prime_u64(prime)) throw UsageError("--p must be prime");
    report::Table t;
    t.columns = report::champion_columns();
    t.rows.push_back(report::champion_row(champions::construct_from_prime(prime)));
    emit(c, std::move(t), out);
  } else {
    throw UsageError("unknown subcommand '" + cmd + "'");
  }
  return kExitOk;
}

inline std::string quote_message(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += (ch == '\n') ? ' ' : ch;
  }
  return out + "\"";
}

inline int fail(std::ostream& err, int code, const char* kind, const std::string& message) {
  err << "error kind=" << kind << " exit=" << code << " message=" << quote_message(message) << "\n";
  return code;
}

}  // namespace detail

/// Executes a validated config; never throws. Errors become one machine-readable line on `err`.
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.output_format != "csv" && config.output_format != "json" && config.output_format != "text") {
      throw UsageError("--format must be csv, json or text");
    }
    return detail::dispatch(config, out);
  } catch (const ResourceLimitError& e) {
    return detail::fail(err, kExitResource, "resource-limit", e.what());
  } catch (const InvariantViolation& e) {
    return detail::fail(err, kExitInvariant, "invariant-violation", e.what());
  } catch (const std::invalid_argument& e) {
    return detail::fail(err, kExitUsage, "usage", e.what());
  } catch (const std::domain_error& e) {
    return detail::fail(err, kExitUsage, "usage", e.what());
  } catch (const std::exception& e) {
    return detail::fail(err, kExitFailure, "failure", e.what());
  }
}

struct Subcommand {
  const char* name;
  const char* help;
  std::vector<std::pair<const char*, const char*>> options;  // name, description
};

inline const std::vector<Subcommand>& subcommands() {
  static const std::vector<Subcommand> cmds = {
      {"sigma", "Sum of divisors sigma(n); sigma(p) = p + 1 is the property the density bounds rely on.",
       {{"n", "positive integer (any size; factored by trial division)"}}},
      {"sigma-star", "Sum of unitary divisors sigma*(n), with sigma*(p^e) = p^e + 1.", {{"n", "positive integer"}}},
      {"phi", "Euler totient phi(n), the denominator in the bound s(x,k) << log log x / phi(k).",
       {{"n", "positive integer"}}},
      {"classify", "Perfect / multiperfect test: sigma(n) = 2n, or sigma(n) = kn, i.e. gcd(n, sigma(n)) = n.",
       {{"n", "positive integer"}}},
      {"gcd-scan",
       "Upper-bound density theorem for all integers: counts n in [16, x] with "
       "gcd(n, sigma(n)) > (log log n)^f.",
       {{"x", "scan bound (>= 16)"},
        {"f", "constant exponent f (default 6)"},
        {"f-preset", "'logloglog' uses f(n) = log log log n"},
        {"rule", "sigma (default), sigma-star or phi"}}},
      {"gcd-lower-scan",
       "Lower-bound theorem for almost all integers: fraction of n in [16, x] with "
       "gcd(n, sigma(n)) >= (log log log n)^c.",
       {{"x", "scan bound (>= 16)"}, {"c", "exponent c (default 1)"}, {"rule", "sigma (default) or sigma-star"}}},
      {"shifted-scan",
       "Upper-bound density theorem for shifted primes: counts p <= x with "
       "gcd(p+a, sigma(p+a)) > (log log (p+a))^f.",
       {{"x", "prime bound"},
        {"a", "shift a >= 1 (default 1)"},
        {"f", "constant exponent f (default 6)"},
        {"f-preset", "'logloglog' uses f(n) = log log log n"},
        {"rule", "sigma (default) or sigma-star"}}},
      {"lemma",
       "Finite-x evaluation of the preliminary lemmas: s (reciprocal prime sum s(x,k)), l23 (s(x,k)*phi(k)/x_2), "
       "l24 (smooth-modulus prime counts), l25 (square-modulus prime counts), t (t(x,q,a)), nq (N(x,k,Q)), "
       "m (M(y; q_1..q_l)), s1 / s2 (smooth-part and non-squarefree rough-part exceptional sets).",
       {{"id", "s|l23|l24|l25|t|nq|m|s1|s2"},
        {"x", "range bound (for m: exclusive bound y)"},
        {"k", "modulus k (s, l23) or count k (nq)"},
        {"Y", "smoothness threshold (default max(2, log log x))"},
        {"E", "exponent E (default max(2, log log x))"},
        {"a", "shift a (default 1)"},
        {"q", "modulus q (t)"},
        {"Q", "small-prime bound Q (nq)"},
        {"qs", "comma-separated distinct primes (m)"}}},
      {"profile",
       "Small-prime structure behind the lower-bound theorem: distribution of the number of distinct primes "
       "q < Q dividing gcd(n, sigma(n)), with N(x, l-1, Q) and M(x+1; first l primes < Q).",
       {{"x", "scan bound"}, {"Q", "small-prime bound (default x_2/x_3)"}, {"l", "target count l (default 1)"}}},
      {"champions",
       "Large-gcd construction N = p(p+1)m over primes p <= p-limit; (p+1)m divides gcd(N, sigma(N)), "
       "approaching exponent 2/3.",
       {{"p-limit", "prime bound (>= 3)"}, {"view", "valid (default), all, or running-max"}}},
      {"construct", "Single instance of the large-gcd construction N = p(p+1)m for one prime p.",
       {{"p", "a prime"}}},
  };
  return cmds;
}

/// Parses argv into a RunConfig and runs it.
inline int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact experiments on gcd(n, sigma(n)): multiplicative functions, density scans, lemma sums "
               "and large-gcd constructions."};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string format;
  std::string output;
  std::string budget;
  unsigned threads = 0;
  app.add_option("--format", format, "csv | json | text (text: pointwise subcommands only)");
  app.add_option("--output,-o", output, "write the report to this file instead of stdout");
  app.add_option("--threads", threads, "worker threads (default: machine parallelism)");
  app.add_option("--table-budget", budget, std::string("sieve memory budget in bytes (default: $") + kBudgetEnv +
                                               " or 2 GiB)");

  std::map<std::string, std::map<std::string, std::string>> values;
  for (const auto& sc : subcommands()) {
    auto* sub = app.add_subcommand(sc.name, sc.help);
    for (const auto& [name, desc] : sc.options) {
      sub->add_option(std::string("--") + name, values[sc.name][name], desc);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return detail::fail(err, kExitUsage, "usage", e.what());
  }

  for (auto* sub : app.get_subcommands()) {
    config.subcommand = sub->get_name();
    for (auto* opt : sub->get_options()) {
      if (opt->count() == 0 || opt->get_name() == "--help") continue;
      std::string key = opt->get_name();
      while (!key.empty() && key.front() == '-') key.erase(key.begin());
      config.parameters[key] = values[config.subcommand][key];
    }
  }

  const bool pointwise = config.subcommand == "sigma" || config.subcommand == "sigma-star" ||
                         config.subcommand == "phi" || config.subcommand == "classify";
  config.output_format = format.empty() ? (pointwise ? "text" : "csv") : format;
  if (!output.empty()) config.output_path = output;
  config.threads = threads;
  try {
    config.table_budget = budget.empty() ? default_table_budget() : std::stoull(budget);
  } catch (const std::exception&) {
    return detail::fail(err, kExitUsage, "usage", "--table-budget expects a byte count");
  }
  return run(config, out, err);
}

}  // namespace sigmagcd::cli
