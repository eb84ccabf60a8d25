#pragma once

// Batch driver behind the command-line tool: run configuration, dispatch to
// formula or oracle, (M, L) sweeps with row/column sums, the verification
// report, and JSON/CSV serialization.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sixv/checks.hpp"
#include "sixv/core.hpp"
#include "sixv/monodromy.hpp"
#include "sixv/partition.hpp"
#include "sixv/typeI.hpp"
#include "sixv/typeII.hpp"
#include "sixv/vertex.hpp"

namespace sixv {

enum class Mode { partition, typeI, typeII, verify, sweep };
enum class Method { formula, oracle, both };
enum class OutputFormat { json, csv };

inline std::string to_string(Mode m) {
  switch (m) {
    case Mode::partition: return "partition";
    case Mode::typeI: return "typeI";
    case Mode::typeII: return "typeII";
    case Mode::verify: return "verify";
    case Mode::sweep: return "sweep";
  }
  return "?";
}

inline std::string to_string(Method m) {
  switch (m) {
    case Method::formula: return "formula";
    case Method::oracle: return "oracle";
    case Method::both: return "both";
  }
  return "?";
}

inline Mode parse_mode(const std::string& s) {
  for (auto m : {Mode::partition, Mode::typeI, Mode::typeII, Mode::verify, Mode::sweep})
    if (to_string(m) == s) return m;
  throw ConfigError("unknown mode '" + s + "' (expected partition, typeI, typeII, verify or sweep)");
}

inline Method parse_method(const std::string& s) {
  for (auto m : {Method::formula, Method::oracle, Method::both})
    if (to_string(m) == s) return m;
  throw ConfigError("unknown method '" + s + "' (expected formula, oracle or both)");
}

inline OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw ConfigError("unknown output format '" + s + "' (expected json or csv)");
}

/// "re" or "re:im".
inline cplx parse_complex(const std::string& token) {
  try {
    const auto colon = token.find(':');
    std::size_t used = 0;
    if (colon == std::string::npos) {
      const double re = std::stod(token, &used);
      if (used != token.size()) throw ConfigError("");
      return {re, 0.0};
    }
    const std::string a = token.substr(0, colon), b = token.substr(colon + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw ConfigError("");
    const double im = std::stod(b, &used);
    if (used != b.size()) throw ConfigError("");
    return {re, im};
  } catch (const std::exception&) {
    throw ConfigError("cannot parse complex number '" + token + "' (use re or re:im)");
  }
}

struct RunConfig {
  int n = 0;
  ModelParams<double> params;
  Mode mode = Mode::partition;
  Method method = Method::formula;
  std::optional<int> M, L;
  OutputFormat out = OutputFormat::json;
  Settings settings;
  std::uint64_t seed = 20240601;
  int draws = 3;
  Mode sweep_kind = Mode::typeI;  // typeI or typeII
  bool timing = true;
};

/// Arithmetic parameter lists lambda_j = base + j dz, j = 1..n.
inline std::vector<cplx> arithmetic_list(cplx base, cplx step, int n) {
  std::vector<cplx> v;
  for (int j = 1; j <= n; ++j) v.push_back(base + double(j) * step);
  return v;
}

inline void validate(const RunConfig& cfg) {
  if (cfg.mode == Mode::verify) {
    if (cfg.draws < 0) throw ConfigError("draws must be >= 0");
    return;
  }
  if (cfg.n < 1) throw ConfigError("N must be >= 1 (set --n or give parameter lists)");
  if (cfg.params.size() != cfg.n || static_cast<int>(cfg.params.nus.size()) != cfg.n)
    throw ConfigError("lambda and nu lists must both have N = " + std::to_string(cfg.n) + " entries");
  if (cfg.n > cfg.settings.max_oracle_sites && cfg.method != Method::formula)
    throw ConfigError("oracle limited to N <= " + std::to_string(cfg.settings.max_oracle_sites));
  const int n = cfg.n;
  if (cfg.mode == Mode::typeI) {
    if (!cfg.M || !cfg.L) throw ConfigError("typeI needs --m and --l");
    if (*cfg.M < 1 || *cfg.L > n) throw ConfigError("typeI needs 1 <= M < L <= N");
    if (*cfg.M >= *cfg.L)
      throw ConfigError("typeI needs M < L (got M=" + std::to_string(*cfg.M) + ", L=" + std::to_string(*cfg.L) + ")");
  }
  if (cfg.mode == Mode::typeII) {
    if (!cfg.M || !cfg.L) throw ConfigError("typeII needs --m and --l");
    if (n < 2) throw ConfigError("typeII needs N >= 2");
    if (*cfg.M < 1 || *cfg.M > n - 1) throw ConfigError("typeII needs 1 <= M <= N-1");
    if (*cfg.L < 1 || *cfg.L > n) throw ConfigError("typeII needs 1 <= L <= N");
  }
  if (cfg.mode == Mode::sweep) {
    if (cfg.sweep_kind != Mode::typeI && cfg.sweep_kind != Mode::typeII)
      throw ConfigError("sweep kind must be typeI or typeII");
    if (n < 2) throw ConfigError("sweep needs N >= 2");
  }
}

struct CorrelatorResult {
  Mode mode = Mode::partition;
  int n = 0;
  ModelParams<double> params;
  std::optional<int> M, L;
  cplx value;
  Method method = Method::formula;
  std::optional<double> residual;  // present iff method == both
  double elapsed_ms = 0;
};

namespace detail {

inline bool homogeneous(const ModelParams<double>& p) {
  for (const auto& l : p.lambdas)
    if (l != p.lambdas.front()) return false;
  for (const auto& v : p.nus)
    if (v != p.nus.front()) return false;
  return true;
}

inline cplx formula_value(Mode mode, const ModelParams<double>& p, int M, int L, const Settings& st) {
  switch (mode) {
    case Mode::partition: return tsuchiya_Z(p, st);
    case Mode::typeI:
      if (p.size() >= 2 && homogeneous(p))
        return psi1_homogeneous(p.lambdas[0], p.nus[0], p.eta, p.zeta_plus, p.size(), M, L, st);
      return psi1_double_sum(p, M, L, st);
    case Mode::typeII: return psi2(p, M, L, st);
    default: throw ConfigError("no formula for mode " + to_string(mode));
  }
}

inline cplx oracle_value(Mode mode, const ModelParams<double>& p, int M, int L, const Settings& st) {
  switch (mode) {
    case Mode::partition: return contract_Z(p, st);
    case Mode::typeI: return contract_psi1(p, M, L, st) / contract_Z(p, st);
    case Mode::typeII: return contract_psi2(p, M, L, st) / contract_Z(p, st);
    default: throw ConfigError("no oracle for mode " + to_string(mode));
  }
}

inline CorrelatorResult evaluate(Mode mode, const RunConfig& cfg, int M, int L) {
  CorrelatorResult r;
  r.mode = mode;
  r.n = cfg.n;
  r.params = cfg.params;
  if (mode != Mode::partition) {
    r.M = M;
    r.L = L;
  }
  r.method = cfg.method;
  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.method == Method::oracle) {
    r.value = oracle_value(mode, cfg.params, M, L, cfg.settings);
  } else {
    r.value = formula_value(mode, cfg.params, M, L, cfg.settings);
    if (cfg.method == Method::both) r.residual = rel_err(r.value, oracle_value(mode, cfg.params, M, L, cfg.settings));
  }
  if (cfg.timing)
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace detail

/// Single evaluation for partition, typeI, typeII.
inline CorrelatorResult run(const RunConfig& cfg) {
  validate(cfg);
  if (cfg.mode == Mode::verify || cfg.mode == Mode::sweep) throw ConfigError("run() handles single evaluations only");
  return detail::evaluate(cfg.mode, cfg, cfg.M.value_or(0), cfg.L.value_or(0));
}

struct SweepTable {
  Mode kind = Mode::typeI;
  int n = 0;
  ModelParams<double> params;
  Method method = Method::formula;
  std::vector<CorrelatorResult> entries;
  std::vector<std::pair<int, cplx>> row_sums;  // over L for fixed M
  std::vector<std::pair<int, cplx>> col_sums;  // over M for fixed L
  cplx total;
  double elapsed_ms = 0;
};

/// Every valid (M, L): M < L for typeI, M in 1..N-1 and L in 1..N for typeII.
inline SweepTable sweep(const RunConfig& cfg) {
  validate(cfg);
  SweepTable t;
  t.kind = cfg.sweep_kind;
  t.n = cfg.n;
  t.params = cfg.params;
  t.method = cfg.method;
  const auto t0 = std::chrono::steady_clock::now();
  const int n = cfg.n;
  for (int M = 1; M <= n - 1; ++M) {
    cplx row(0);
    for (int L = (t.kind == Mode::typeI ? M + 1 : 1); L <= n; ++L) {
      auto r = detail::evaluate(t.kind, cfg, M, L);
      r.elapsed_ms = 0;
      row += r.value;
      t.entries.push_back(std::move(r));
    }
    t.row_sums.emplace_back(M, row);
  }
  for (int L = 1; L <= n; ++L) {
    cplx col(0);
    bool any = false;
    for (const auto& e : t.entries)
      if (*e.L == L) {
        col += e.value;
        any = true;
      }
    if (any) t.col_sums.emplace_back(L, col);
  }
  t.total = 0;
  for (const auto& [m, v] : t.row_sums) t.total += v;
  if (cfg.timing)
    t.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return t;
}

struct VerifyRow {
  std::string check;
  int draw = -1;  // -1 for fixed-parameter rows
  double worst = 0;
  double tol = 0;
  std::size_t cases = 0;
  bool passed = false;
  std::string error;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  int draws = 0;
  std::vector<VerifyRow> rows;
  bool passed() const {
    for (const auto& r : rows)
      if (!r.passed) return false;
    return true;
  }
};

/// Every formula-versus-oracle identity. Fixed-parameter rows always run;
/// each draw adds one row per randomized check.
inline VerifyReport verify_all(std::uint64_t seed, int draws, const Settings& st = {}) {
  VerifyReport rep;
  rep.seed = seed;
  rep.draws = draws;
  auto add = [&](std::string name, int draw, const std::function<CheckOutcome()>& f, double tol) {
    VerifyRow row;
    row.check = std::move(name);
    row.draw = draw;
    row.tol = tol;
    try {
      const auto o = f();
      row.worst = o.worst;
      row.cases = o.cases;
      row.passed = o.worst < tol;
    } catch (const Error& e) {
      row.passed = false;
      row.error = e.what();
    }
    rep.rows.push_back(row);
  };

  add("psi1_homogeneous_extrapolation", -1, [&] {
    CheckOutcome o;
    for (int n = 2; n <= 3; ++n)
      for (int M = 1; M < n; ++M)
        for (int L = M + 1; L <= n; ++L)
          o.add(homogeneous_extrapolation(n, M, L, 0.3, 0.7, 0.5, 0.8, 1e-2, 5, st).rel_err);
    return o;
  }, 1e-6);
  add("izergin_vs_column_contraction", -1, [&] {
    CheckOutcome o;
    ParamSampler fixed(1);
    for (int n = 1; n <= 3; ++n) o.merge(check_izergin(fixed.draw(n), st));
    return o;
  }, 1e-10);

  ParamSampler sampler(seed);
  for (int d = 0; d < draws; ++d) {
    add("yang_baxter", d, [&] { return check_yang_baxter(sampler, 1); }, 1e-12);
    std::vector<ModelParams<double>> ps;
    for (int n = 1; n <= 4; ++n) ps.push_back(sampler.draw(n));
    add("action_identities", d, [&] {
      CheckOutcome o;
      for (int n = 2; n <= 4; ++n) o.merge(check_action_identities(ps[n - 1], st));
      return o;
    }, 1e-9);
    add("tsuchiya_vs_contraction", d, [&] {
      CheckOutcome o;
      for (const auto& p : ps) o.merge(check_tsuchiya(p, st));
      return o;
    }, 1e-9);
    Psi1Outcome psi1;
    add("psi1_vs_contraction", d, [&] {
      for (int n = 2; n <= 4; ++n) {
        const auto r = check_psi1(ps[n - 1], st);
        psi1.vs_oracle.merge(r.vs_oracle);
        psi1.det_form.merge(r.det_form);
      }
      return psi1.vs_oracle;
    }, 1e-8);
    add("psi1_det_form_vs_double_sum", d, [&] { return psi1.det_form; }, 1e-10);
    add("psi2_vs_contraction", d, [&] {
      CheckOutcome o;
      for (int n = 2; n <= 4; ++n) o.merge(check_psi2(ps[n - 1], st));
      return o;
    }, 1e-8);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Serialization.
// ---------------------------------------------------------------------------

inline nlohmann::json complex_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline nlohmann::json params_json(const ModelParams<double>& p) {
  nlohmann::json lam = nlohmann::json::array(), nu = nlohmann::json::array();
  for (const auto& l : p.lambdas) lam.push_back(complex_json(l));
  for (const auto& v : p.nus) nu.push_back(complex_json(v));
  return {{"lambda", lam}, {"nu", nu}, {"eta", complex_json(p.eta)}, {"zeta_plus", complex_json(p.zeta_plus)}};
}

inline nlohmann::json to_json(const CorrelatorResult& r) {
  nlohmann::json j;
  j["mode"] = to_string(r.mode);
  j["N"] = r.n;
  j["params"] = params_json(r.params);
  j["M"] = r.M ? nlohmann::json(*r.M) : nlohmann::json(nullptr);
  j["L"] = r.L ? nlohmann::json(*r.L) : nlohmann::json(nullptr);
  j["value"] = complex_json(r.value);
  j["method"] = to_string(r.method);
  j["residual"] = r.residual ? nlohmann::json(*r.residual) : nlohmann::json(nullptr);
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

inline bool equals_one(cplx z, double tol = 1e-9) { return std::abs(z - cplx(1)) <= tol; }

inline nlohmann::json to_json(const SweepTable& t) {
  nlohmann::json j;
  j["mode"] = "sweep";
  j["kind"] = to_string(t.kind);
  j["N"] = t.n;
  j["params"] = params_json(t.params);
  j["method"] = to_string(t.method);
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : t.entries) {
    entries.push_back({{"M", *e.M},
                       {"L", *e.L},
                       {"value", complex_json(e.value)},
                       {"residual", e.residual ? nlohmann::json(*e.residual) : nlohmann::json(nullptr)}});
  }
  j["entries"] = entries;
  nlohmann::json rows = nlohmann::json::array(), cols = nlohmann::json::array();
  for (const auto& [m, v] : t.row_sums) rows.push_back({{"M", m}, {"value", complex_json(v)}});
  for (const auto& [l, v] : t.col_sums) cols.push_back({{"L", l}, {"value", complex_json(v)}});
  j["row_sums"] = rows;
  j["col_sums"] = cols;
  j["total"] = complex_json(t.total);
  j["total_equals_one"] = equals_one(t.total);
  j["elapsed_ms"] = t.elapsed_ms;
  return j;
}

inline nlohmann::json to_json(const VerifyReport& rep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"check", r.check},
                    {"draw", r.draw < 0 ? nlohmann::json(nullptr) : nlohmann::json(r.draw)},
                    {"worst", r.worst},
                    {"tol", r.tol},
                    {"cases", r.cases},
                    {"passed", r.passed}});
    if (!r.error.empty()) rows.back()["error"] = r.error;
  }
  return {{"mode", "verify"}, {"seed", rep.seed}, {"draws", rep.draws}, {"checks", rows}, {"passed", rep.passed()}};
}

inline std::string csv_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

inline std::string to_csv(const CorrelatorResult& r) {
  std::string s = "m,l,re,im,residual\n";
  s += (r.M ? std::to_string(*r.M) : "") + "," + (r.L ? std::to_string(*r.L) : "") + "," + csv_number(r.value.real()) +
       "," + csv_number(r.value.imag()) + "," + (r.residual ? csv_number(*r.residual) : "") + "\n";
  return s;
}

/// One row per (M, L); row sums carry l = *, column sums m = *, the total both.
inline std::string to_csv(const SweepTable& t) {
  std::string s = "m,l,re,im,residual\n";
  auto line = [&](const std::string& m, const std::string& l, cplx v, const std::string& res) {
    s += m + "," + l + "," + csv_number(v.real()) + "," + csv_number(v.imag()) + "," + res + "\n";
  };
  for (const auto& e : t.entries)
    line(std::to_string(*e.M), std::to_string(*e.L), e.value, e.residual ? csv_number(*e.residual) : "");
  for (const auto& [m, v] : t.row_sums) line(std::to_string(m), "*", v, "");
  for (const auto& [l, v] : t.col_sums) line("*", std::to_string(l), v, "");
  line("*", "*", t.total, "");
  return s;
}

inline std::string to_csv(const VerifyReport& rep) {
  std::string s = "check,draw,worst,tol,passed\n";
  for (const auto& r : rep.rows)
    s += r.check + "," + (r.draw < 0 ? "" : std::to_string(r.draw)) + "," + csv_number(r.worst) + "," +
         csv_number(r.tol) + "," + (r.passed ? "1" : "0") + "\n";
  return s;
}

}  // namespace sixv
