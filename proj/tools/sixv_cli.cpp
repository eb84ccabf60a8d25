// Command-line front end: partition functions, Type I/II correlators, (M, L)
// sweeps and the verification report, as JSON or CSV on stdout.
//
// Exit codes: 0 success, 2 configuration error, 3 verification failure,
// 4 numerical singularity.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sixv/driver.hpp"

namespace {

using nlohmann::json;
using sixv::cplx;

struct RawOptions {
  std::optional<int> n, m, l, threads, draws;
  std::vector<std::string> lambda, nu;
  std::optional<std::string> lambda_base, nu_base, dz, dw, eta, zeta_plus;
  std::optional<std::string> mode, method, out, kind;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  bool no_timing = false;
};

cplx json_complex(const json& j, const std::string& key) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_string()) return sixv::parse_complex(j.get<std::string>());
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw sixv::ConfigError("config key '" + key + "': expected a number, [re, im] or \"re:im\"");
}

std::vector<std::string> json_complex_list(const json& j, const std::string& key) {
  if (!j.is_array()) throw sixv::ConfigError("config key '" + key + "' must be a list");
  std::vector<std::string> out;
  for (const auto& e : j) {
    const cplx z = json_complex(e, key);
    out.push_back(sixv::csv_number(z.real()) + ":" + sixv::csv_number(z.imag()));
  }
  return out;
}

// Config-file values fill in whatever the command line left unset.
void merge_config(RawOptions& o, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sixv::ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw sixv::ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw sixv::ConfigError("config file must hold a JSON object");
  auto complex_str = [&](const char* key, std::optional<std::string>& slot) {
    if (!slot && j.contains(key)) {
      const cplx z = json_complex(j[key], key);
      slot = sixv::csv_number(z.real()) + ":" + sixv::csv_number(z.imag());
    }
  };
  auto plain_str = [&](const char* key, std::optional<std::string>& slot) {
    if (!slot && j.contains(key)) {
      if (!j[key].is_string()) throw sixv::ConfigError(std::string("config key '") + key + "' must be a string");
      slot = j[key].get<std::string>();
    }
  };
  auto integer = [&](const char* key, auto& slot) {
    if (!slot && j.contains(key)) {
      if (!j[key].is_number_integer()) throw sixv::ConfigError(std::string("config key '") + key + "' must be an integer");
      slot = j[key].get<typename std::decay_t<decltype(slot)>::value_type>();
    }
  };
  for (const auto& [key, value] : j.items()) {
    static const std::vector<std::string> known{"n",   "lambda", "nu",     "lambda-base", "nu-base", "dz",
                                                "dw",  "eta",    "zeta-plus", "mode",   "method",  "m",
                                                "l",   "out",    "seed",   "tol",         "threads", "kind",
                                                "draws", "no-timing"};
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw sixv::ConfigError("unknown config key '" + key + "'");
  }
  integer("n", o.n);
  integer("m", o.m);
  integer("l", o.l);
  integer("threads", o.threads);
  integer("draws", o.draws);
  integer("seed", o.seed);
  if (o.lambda.empty() && j.contains("lambda")) o.lambda = json_complex_list(j["lambda"], "lambda");
  if (o.nu.empty() && j.contains("nu")) o.nu = json_complex_list(j["nu"], "nu");
  complex_str("lambda-base", o.lambda_base);
  complex_str("nu-base", o.nu_base);
  complex_str("dz", o.dz);
  complex_str("dw", o.dw);
  complex_str("eta", o.eta);
  complex_str("zeta-plus", o.zeta_plus);
  plain_str("mode", o.mode);
  plain_str("method", o.method);
  plain_str("out", o.out);
  plain_str("kind", o.kind);
  if (!o.tol && j.contains("tol")) {
    if (!j["tol"].is_number()) throw sixv::ConfigError("config key 'tol' must be a number");
    o.tol = j["tol"].get<double>();
  }
  if (j.contains("no-timing")) o.no_timing = o.no_timing || j["no-timing"].get<bool>();
}

std::vector<cplx> complex_list(const std::vector<std::string>& tokens) {
  std::vector<cplx> v;
  for (const auto& t : tokens) v.push_back(sixv::parse_complex(t));
  return v;
}

std::vector<cplx> rapidities(const std::vector<std::string>& list, const std::optional<std::string>& base,
                             const std::optional<std::string>& step, const std::optional<int>& n, const char* name) {
  if (!list.empty()) {
    if (base) throw sixv::ConfigError(std::string("give either --") + name + " or --" + name + "-base, not both");
    return complex_list(list);
  }
  if (!base) return {};
  if (!n) throw sixv::ConfigError(std::string("--") + name + "-base needs --n");
  return sixv::arithmetic_list(sixv::parse_complex(*base), step ? sixv::parse_complex(*step) : cplx(0), *n);
}

sixv::RunConfig build_config(const RawOptions& o) {
  sixv::RunConfig cfg;
  if (o.mode) cfg.mode = sixv::parse_mode(*o.mode);
  if (o.method) cfg.method = sixv::parse_method(*o.method);
  if (o.out) cfg.out = sixv::parse_format(*o.out);
  if (o.kind) {
    cfg.sweep_kind = sixv::parse_mode(*o.kind);
    if (cfg.sweep_kind != sixv::Mode::typeI && cfg.sweep_kind != sixv::Mode::typeII)
      throw sixv::ConfigError("--kind must be typeI or typeII");
  }
  if (o.seed) cfg.seed = *o.seed;
  if (o.draws) cfg.draws = *o.draws;
  if (o.threads) {
    if (*o.threads < 1) throw sixv::ConfigError("--threads must be >= 1");
    cfg.settings.threads = static_cast<unsigned>(*o.threads);
  }
  if (o.tol) {
    if (*o.tol < 0) throw sixv::ConfigError("--tol must be >= 0");
    cfg.settings.genericity_tol = *o.tol;
  }
  cfg.timing = !o.no_timing;
  cfg.M = o.m;
  cfg.L = o.l;
  if (o.eta) cfg.params.eta = sixv::parse_complex(*o.eta);
  if (o.zeta_plus) cfg.params.zeta_plus = sixv::parse_complex(*o.zeta_plus);
  if (cfg.mode == sixv::Mode::verify) return cfg;

  cfg.params.lambdas = rapidities(o.lambda, o.lambda_base, o.dz, o.n, "lambda");
  cfg.params.nus = rapidities(o.nu, o.nu_base, o.dw, o.n, "nu");
  if (cfg.params.lambdas.empty() || cfg.params.nus.empty())
    throw sixv::ConfigError("need lambda and nu values (--lambda/--nu or --lambda-base/--nu-base with --n)");
  cfg.n = o.n ? *o.n : cfg.params.size();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary correlation functions of the six-vertex model with a reflecting end"};
  RawOptions o;
  std::optional<std::string> config_path;
  app.add_option("--n", o.n, "lattice size N");
  app.add_option("--lambda", o.lambda, "row rapidities, re or re:im, comma separated")->delimiter(',');
  app.add_option("--nu", o.nu, "column rapidities, re or re:im, comma separated")->delimiter(',');
  app.add_option("--lambda-base", o.lambda_base, "lambda_j = base + j dz");
  app.add_option("--dz", o.dz, "spacing of the lambdas (default 0)");
  app.add_option("--nu-base", o.nu_base, "nu_k = base + k dw");
  app.add_option("--dw", o.dw, "spacing of the nus (default 0)");
  app.add_option("--eta", o.eta, "crossing parameter (default 0.5)");
  app.add_option("--zeta-plus", o.zeta_plus, "boundary parameter (default 0.8)");
  app.add_option("--mode", o.mode, "partition | typeI | typeII | verify | sweep");
  app.add_option("--method", o.method, "formula | oracle | both");
  app.add_option("--m", o.m, "row index M");
  app.add_option("--l", o.l, "column index L");
  app.add_option("--kind", o.kind, "sweep target: typeI | typeII (default typeI)");
  app.add_option("--out", o.out, "json | csv");
  app.add_option("--config", config_path, "JSON file with the same keys as the flags");
  app.add_option("--seed", o.seed, "seed for verify draws");
  app.add_option("--draws", o.draws, "random draws in verify mode (default 3)");
  app.add_option("--tol", o.tol, "genericity tolerance on distinct sh^2 values (default 1e-8)");
  app.add_option("--threads", o.threads, "worker threads (default 1)");
  app.add_flag("--no-timing", o.no_timing, "report elapsed_ms as 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (config_path) merge_config(o, *config_path);
    const auto cfg = build_config(o);
    const bool csv = cfg.out == sixv::OutputFormat::csv;
    switch (cfg.mode) {
      case sixv::Mode::verify: {
        const auto rep = sixv::verify_all(cfg.seed, cfg.draws, cfg.settings);
        std::cout << (csv ? sixv::to_csv(rep) : sixv::to_json(rep).dump(2) + "\n");
        return rep.passed() ? 0 : 3;
      }
      case sixv::Mode::sweep: {
        const auto t = sixv::sweep(cfg);
        std::cout << (csv ? sixv::to_csv(t) : sixv::to_json(t).dump(2) + "\n");
        return 0;
      }
      default: {
        const auto r = sixv::run(cfg);
        std::cout << (csv ? sixv::to_csv(r) : sixv::to_json(r).dump(2) + "\n");
        return 0;
      }
    }
  } catch (const sixv::UsageError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const sixv::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const sixv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
