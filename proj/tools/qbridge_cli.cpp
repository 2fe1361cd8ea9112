// Copyright 2026 The qbridge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qbridge command-line tool. Talks to the library through the C interface
// only.
//
//   qbridge transform --q 0.5 --lambda 1 --h identity --grid 0:1.9:20
//   qbridge verify --q 1.5 --lambda 1 --h square
//   qbridge solve-shannon --h identity --target 2 --domain 0:inf
//   qbridge sample --q 0.5 --lambda 1 --n 100000 --seed 7
//   qbridge averages --q 0.5 --lambda 1 --q-avg 0.5 --observable 0,1

#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qbridge/qbridge.h"

namespace {

using json = nlohmann::json;

constexpr int kSchemaVersion = 1;
constexpr const char* kCsvHeader =
    "x,g,J,u,p_tsallis,p_shannon_pushforward,transport_residual";

enum Exit {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,
  kExitDomain = 3,
  kExitVerify = 4,
  kExitSolver = 5,
};

// Raised for bad user input; maps to kExitConfig.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a library call fails; carries the status.
struct LibraryError : std::runtime_error {
  LibraryError(qb_status s, const std::string& what)
      : std::runtime_error(what), status(s) {}
  qb_status status;
};

int exit_code_for(qb_status s) {
  switch (s) {
    case QB_OK: return kExitOk;
    case QB_ERR_INVALID_ARGUMENT:
    case QB_ERR_CONFIG: return kExitConfig;
    case QB_ERR_DOMAIN:
    case QB_ERR_SINGULAR_INDEX:
    case QB_ERR_EDGE_SINGULARITY:
    case QB_ERR_RANGE:
    case QB_ERR_NON_NORMALIZABLE:
    case QB_ERR_UNSUPPORTED: return kExitDomain;
    case QB_ERR_INFEASIBLE:
    case QB_ERR_QUADRATURE:
    case QB_ERR_SOLVER:
    case QB_ERR_INSTABILITY: return kExitSolver;
    case QB_ERR_INTERNAL: return kExitInternal;
  }
  return kExitInternal;
}

void check(qb_status s, const char* context) {
  if (s == QB_OK) return;
  throw LibraryError(s, std::string(context) + ": " + qb_status_string(s) +
                            ": " + qb_last_error());
}

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
};

struct RunConfig {
  std::string command;
  double q = 1.0;
  std::vector<double> lambdas{1.0};
  std::vector<std::string> kinds{"identity"};
  std::vector<double> targets;
  std::optional<GridSpec> grid;
  double c = 0.0;
  double anchor_x = 0.0;
  double anchor_u = 0.0;
  std::optional<std::pair<double, double>> domain;
  std::optional<double> rtol;
  std::optional<double> atol;
  std::uint64_t seed = 0;
  std::size_t n_samples = 100000;
  std::optional<double> q_avg;
  std::vector<double> observable{0.0, 1.0};
  std::string out;
  std::string format;
  double tol = 1e-6;
};

double parse_number(const std::string& text, const char* what) {
  const std::string t = text;
  if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
  if (t == "-inf") return -std::numeric_limits<double>::infinity();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE ||
      std::isnan(v)) {
    throw ConfigError(std::string("cannot parse ") + what + " from '" + text +
                      "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_number(p, what));
  if (out.empty()) throw ConfigError(std::string("empty ") + what);
  return out;
}

GridSpec parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) {
    throw ConfigError("grid must be min:max:count, got '" + text + "'");
  }
  GridSpec g;
  g.lo = parse_number(parts[0], "grid min");
  g.hi = parse_number(parts[1], "grid max");
  const double n = parse_number(parts[2], "grid count");
  if (n != std::floor(n) || n < 2 || n > 1e7) {
    throw ConfigError("grid count must be an integer >= 2");
  }
  g.count = static_cast<int>(n);
  if (!std::isfinite(g.lo) || !std::isfinite(g.hi) || !(g.lo < g.hi)) {
    throw ConfigError("grid requires finite min < max");
  }
  return g;
}

std::pair<double, double> parse_pair(const std::string& text,
                                     const char* what) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) {
    throw ConfigError(std::string(what) + " must be a:b, got '" + text + "'");
  }
  return {parse_number(parts[0], what), parse_number(parts[1], what)};
}

// Owns the coefficient storage referenced by qb_constraint.
struct Constraints {
  std::vector<std::vector<double>> coeffs;
  std::vector<qb_constraint> items;
};

Constraints build_constraints(const RunConfig& cfg) {
  Constraints out;
  out.coeffs.reserve(cfg.kinds.size());
  for (std::size_t i = 0; i < cfg.kinds.size(); ++i) {
    const std::string& k = cfg.kinds[i];
    qb_constraint c{};
    c.lambda = i < cfg.lambdas.size() ? cfg.lambdas[i] : 0.0;
    out.coeffs.emplace_back();
    if (k == "identity") {
      c.kind = QB_H_IDENTITY;
    } else if (k == "square") {
      c.kind = QB_H_SQUARE;
    } else if (k.rfind("poly:", 0) == 0) {
      c.kind = QB_H_POLYNOMIAL;
      out.coeffs.back() = parse_list(k.substr(5), "polynomial coefficients");
    } else {
      throw ConfigError("unknown observable '" + k +
                        "' (identity, square, poly:c0,c1,...)");
    }
    out.items.push_back(c);
  }
  for (std::size_t i = 0; i < out.items.size(); ++i) {
    out.items[i].coeffs = out.coeffs[i].data();
    out.items[i].n_coeffs = out.coeffs[i].size();
  }
  return out;
}

bool all_identity(const RunConfig& cfg) {
  for (const auto& k : cfg.kinds) {
    if (k != "identity") return false;
  }
  return true;
}

qb_interval domain_of(const RunConfig& cfg) {
  const double inf = std::numeric_limits<double>::infinity();
  if (cfg.domain) return {cfg.domain->first, cfg.domain->second};
  // Linear observables live on the half line; anything else on the line.
  return all_identity(cfg) ? qb_interval{0.0, inf} : qb_interval{-inf, inf};
}

qb_quad_spec quad_of(const RunConfig& cfg) {
  qb_quad_spec quad;
  check(qb_quad_spec_default(&quad), "quadrature defaults");
  if (cfg.rtol) quad.rel_tol = *cfg.rtol;
  if (cfg.atol) quad.abs_tol = *cfg.atol;
  return quad;
}

void validate(const RunConfig& cfg) {
  if (!std::isfinite(cfg.q)) throw ConfigError("q must be finite");
  if (cfg.kinds.empty()) throw ConfigError("at least one --h is required");
  if (cfg.command != "solve-shannon" && cfg.lambdas.size() != cfg.kinds.size()) {
    throw ConfigError("--lambda and --h lists must have equal length");
  }
  if (cfg.command == "solve-shannon" && cfg.targets.size() != cfg.kinds.size()) {
    throw ConfigError("--target and --h lists must have equal length");
  }
  if (!cfg.format.empty() && cfg.format != "csv" && cfg.format != "json") {
    throw ConfigError("--format must be csv or json");
  }
  if (cfg.domain && !(cfg.domain->first < cfg.domain->second)) {
    throw ConfigError("--domain requires lo < hi");
  }
  if (!(cfg.tol > 0.0)) throw ConfigError("--tol must be positive");
  if (cfg.rtol && !(*cfg.rtol > 0.0)) throw ConfigError("--rtol must be positive");
  if (cfg.atol && !(*cfg.atol >= 0.0)) throw ConfigError("--atol must be >= 0");
}

// Writes to a sibling temporary file and renames it over path, so readers see
// either nothing or the full artifact.
void emit(const RunConfig& cfg, const std::string& content) {
  if (cfg.out.empty() || cfg.out == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
    std::fflush(stdout);
    return;
  }
  const std::string tmp =
      cfg.out + ".tmp." + std::to_string(static_cast<long>(::getpid()));
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open '" + tmp + "' for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      std::remove(tmp.c_str());
      throw ConfigError("failed writing '" + tmp + "'");
    }
  }
  if (std::rename(tmp.c_str(), cfg.out.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw ConfigError("cannot rename output into '" + cfg.out + "'");
  }
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json interval_json(const qb_interval& iv) {
  auto end = [](double v) -> json {
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : "-inf";
  };
  return json::array({end(iv.lower), end(iv.upper)});
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

// RAII wrappers over the C handles.
class ProblemHandle {
 public:
  ProblemHandle(const RunConfig& cfg, const Constraints& cs) {
    qb_problem_config pc{};
    pc.q = cfg.q;
    pc.constraints = cs.items.data();
    pc.n_constraints = cs.items.size();
    pc.c = cfg.c;
    pc.anchor_x = cfg.anchor_x;
    pc.anchor_u = cfg.anchor_u;
    pc.window = domain_of(cfg);
    pc.quad = quad_of(cfg);
    check(qb_problem_create(&pc, &handle_), "problem setup");
  }
  ~ProblemHandle() { qb_problem_destroy(handle_); }
  ProblemHandle(const ProblemHandle&) = delete;
  ProblemHandle& operator=(const ProblemHandle&) = delete;
  qb_problem_t get() const { return handle_; }

 private:
  qb_problem_t handle_ = nullptr;
};

std::vector<double> grid_points(const RunConfig& cfg, qb_problem_t problem) {
  GridSpec g;
  if (cfg.grid) {
    g = *cfg.grid;
  } else {
    qb_interval s;
    check(qb_problem_support(problem, &s), "support");
    g.lo = std::isfinite(s.lower) ? s.lower : -5.0;
    g.hi = std::isfinite(s.upper) ? s.upper : g.lo + 10.0;
    g.count = 200;
  }
  std::vector<double> pts(static_cast<std::size_t>(g.count));
  int clipped = 0;
  check(qb_problem_grid(problem, g.lo, g.hi, g.count, pts.data(), &clipped),
        "grid");
  if (clipped && cfg.grid) {
    std::fprintf(stderr,
                 "warning: grid clipped to the Tsallis support interior "
                 "[%.17g, %.17g]\n",
                 pts.front(), pts.back());
  }
  return pts;
}

int cmd_transform(const RunConfig& cfg) {
  const Constraints cs = build_constraints(cfg);
  ProblemHandle problem(cfg, cs);
  const std::vector<double> pts = grid_points(cfg, problem.get());
  std::vector<qb_row> rows(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    check(qb_problem_eval(problem.get(), pts[i], &rows[i]), "evaluate");
    const qb_row& r = rows[i];
    for (double v : {r.g, r.J, r.u, r.p_tsallis, r.p_shannon_pushforward,
                     r.transport_residual}) {
      if (!std::isfinite(v)) {
        throw LibraryError(QB_ERR_DOMAIN,
                           "non-finite output at x=" + fmt17(r.x) +
                               "; narrow the grid");
      }
    }
  }
  if (cfg.format == "json") {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["columns"] = split(kCsvHeader, ',');
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({r.x, r.g, r.J, r.u, r.p_tsallis, r.p_shannon_pushforward,
                     r.transport_residual});
    }
    doc["rows"] = std::move(arr);
    emit(cfg, dump(doc));
    return kExitOk;
  }
  std::string text = std::string(kCsvHeader) + "\n";
  for (const auto& r : rows) {
    text += fmt17(r.x) + ',' + fmt17(r.g) + ',' + fmt17(r.J) + ',' +
            fmt17(r.u) + ',' + fmt17(r.p_tsallis) + ',' +
            fmt17(r.p_shannon_pushforward) + ',' +
            fmt17(r.transport_residual) + '\n';
  }
  emit(cfg, text);
  return kExitOk;
}

int cmd_solve_shannon(const RunConfig& cfg) {
  const Constraints cs = build_constraints(cfg);
  const qb_interval domain = domain_of(cfg);
  const qb_quad_spec quad = quad_of(cfg);
  std::vector<double> lambdas(cs.items.size());
  double mu = 0.0;
  check(qb_solve_shannon(cs.items.data(), cs.items.size(), cfg.targets.data(),
                         domain, &quad, lambdas.data(), &mu),
        "shannon solve");
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["observables"] = cfg.kinds;
  doc["targets"] = cfg.targets;
  doc["domain"] = interval_json(domain);
  doc["lambda"] = lambdas;
  doc["mu"] = mu;
  emit(cfg, dump(doc));
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  const Constraints cs = build_constraints(cfg);
  ProblemHandle problem(cfg, cs);
  const std::vector<double> pts = grid_points(cfg, problem.get());
  qb_report_t report = nullptr;
  check(qb_problem_verify(problem.get(), pts.data(), pts.size(), cfg.tol,
                          &report),
        "verify");
  json checks = json::array();
  const std::size_t n = qb_report_count(report);
  for (std::size_t i = 0; i < n; ++i) {
    const char* name = nullptr;
    const char* detail = nullptr;
    double value = 0.0;
    double tol = 0.0;
    int passed = 0;
    qb_report_check(report, i, &name, &value, &tol, &passed, &detail);
    std::fprintf(stderr, "%-24s %s  value=%.3e  tol=%.1e  %s\n", name,
                 passed ? "PASS" : "FAIL", value, tol, detail);
    checks.push_back({{"name", name},
                      {"value", value},
                      {"tolerance", tol},
                      {"passed", passed != 0},
                      {"detail", detail}});
  }
  const bool ok = qb_report_passed(report) != 0;
  qb_report_destroy(report);

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["q"] = cfg.q;
  doc["observables"] = cfg.kinds;
  doc["lambda"] = cfg.lambdas;
  doc["grid"] = {{"min", pts.front()}, {"max", pts.back()}, {"count", pts.size()}};
  doc["passed"] = ok;
  doc["checks"] = std::move(checks);
  emit(cfg, dump(doc));
  return ok ? kExitOk : kExitVerify;
}

int cmd_sample(const RunConfig& cfg) {
  const Constraints cs = build_constraints(cfg);
  ProblemHandle problem(cfg, cs);
  std::vector<double> samples(cfg.n_samples);
  double ks = 0.0;
  check(qb_problem_sample(problem.get(), samples.size(), cfg.seed,
                          samples.data(), &ks),
        "sample");
  if (cfg.format == "csv") {
    std::string text = "x\n";
    for (double s : samples) text += fmt17(s) + '\n';
    emit(cfg, text);
    std::fprintf(stderr, "ks_statistic=%.17g\n", ks);
    return kExitOk;
  }
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["q"] = cfg.q;
  doc["lambda"] = cfg.lambdas;
  doc["seed"] = cfg.seed;
  doc["n"] = samples.size();
  doc["ks_statistic"] = ks;
  doc["samples"] = samples;
  emit(cfg, dump(doc));
  return kExitOk;
}

int cmd_averages(const RunConfig& cfg) {
  const Constraints cs = build_constraints(cfg);
  ProblemHandle problem(cfg, cs);
  const double q_avg = cfg.q_avg.value_or(cfg.q);
  qb_averages avg{};
  check(qb_problem_averages(problem.get(), q_avg, cfg.observable.data(),
                            cfg.observable.size(), &avg),
        "averages");
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["q"] = cfg.q;
  doc["q_avg"] = q_avg;
  doc["observable"] = cfg.observable;
  doc["linear"] = avg.linear;
  doc["ct"] = avg.ct;
  doc["tmp"] = avg.tmp;
  doc["x_q"] = avg.x_q;
  emit(cfg, dump(doc));
  return kExitOk;
}

// Fills cfg from a JSON document. Keys mirror the long flag names.
void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError("bad config file '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config file must hold an object");
  try {
    auto num_or_text = [](const json& v, const char* what) {
      return v.is_string() ? parse_number(v.get<std::string>(), what)
                           : v.get<double>();
    };
    for (const auto& [key, v] : doc.items()) {
      if (key == "q") {
        cfg.q = v.get<double>();
      } else if (key == "lambda") {
        cfg.lambdas = v.is_array() ? v.get<std::vector<double>>()
                                   : std::vector<double>{v.get<double>()};
      } else if (key == "h") {
        cfg.kinds = v.is_array() ? v.get<std::vector<std::string>>()
                                 : std::vector<std::string>{v.get<std::string>()};
      } else if (key == "target") {
        cfg.targets = v.is_array() ? v.get<std::vector<double>>()
                                   : std::vector<double>{v.get<double>()};
      } else if (key == "grid") {
        cfg.grid = parse_grid(v.get<std::string>());
      } else if (key == "c") {
        cfg.c = v.get<double>();
      } else if (key == "anchor") {
        const auto a = parse_pair(v.get<std::string>(), "anchor");
        cfg.anchor_x = a.first;
        cfg.anchor_u = a.second;
      } else if (key == "domain") {
        if (v.is_array() && v.size() == 2) {
          cfg.domain = {num_or_text(v[0], "domain"), num_or_text(v[1], "domain")};
        } else {
          cfg.domain = parse_pair(v.get<std::string>(), "domain");
        }
      } else if (key == "rtol") {
        cfg.rtol = v.get<double>();
      } else if (key == "atol") {
        cfg.atol = v.get<double>();
      } else if (key == "seed") {
        cfg.seed = v.get<std::uint64_t>();
      } else if (key == "n") {
        cfg.n_samples = v.get<std::size_t>();
      } else if (key == "q-avg" || key == "q_avg") {
        cfg.q_avg = v.get<double>();
      } else if (key == "observable") {
        cfg.observable = v.is_array() ? v.get<std::vector<double>>()
                                      : parse_list(v.get<std::string>(),
                                                   "observable");
      } else if (key == "out") {
        cfg.out = v.get<std::string>();
      } else if (key == "format") {
        cfg.format = v.get<std::string>();
      } else if (key == "tol") {
        cfg.tol = v.get<double>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError("bad value in config file '" + path + "': " + e.what());
  }
}

int run(int argc, char** argv) {
  CLI::App app{"qbridge: Shannon and Tsallis maximum-entropy transforms"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(qb_version()));

  std::string config_path;
  double q = 1.0;
  std::vector<double> lambdas;
  std::vector<std::string> kinds;
  std::vector<double> targets;
  std::string grid, anchor, domain, observable, out, format;
  double c = 0.0, rtol = 0.0, atol = 0.0, q_avg = 0.0, tol = 0.0;
  std::uint64_t seed = 0;
  std::size_t n = 0;

  app.add_option("--config", config_path, "JSON config; flags override it");
  auto* o_q = app.add_option("--q", q, "entropic index q");
  auto* o_lambda = app.add_option("--lambda", lambdas, "multipliers")
                       ->delimiter(',');
  auto* o_h = app.add_option("--h", kinds,
                             "observables: identity, square, poly:c0,c1,...");
  auto* o_target = app.add_option("--target", targets, "moment targets K")
                       ->delimiter(',');
  auto* o_grid = app.add_option("--grid", grid, "min:max:count");
  auto* o_c = app.add_option("--c", c, "integration constant c");
  auto* o_anchor = app.add_option("--anchor", anchor, "x0:u0");
  auto* o_domain = app.add_option("--domain", domain, "lo:hi, inf allowed");
  auto* o_rtol = app.add_option("--rtol", rtol, "quadrature relative tolerance");
  auto* o_atol = app.add_option("--atol", atol, "quadrature absolute tolerance");
  auto* o_seed = app.add_option("--seed", seed, "sampling seed");
  auto* o_n = app.add_option("--n", n, "number of samples");
  auto* o_qavg = app.add_option("--q-avg", q_avg, "escort index for averages");
  auto* o_obs = app.add_option("--observable", observable,
                               "averaged polynomial coefficients c0,c1,...");
  auto* o_out = app.add_option("--out", out, "output path (default stdout)");
  auto* o_format = app.add_option("--format", format, "csv or json");
  auto* o_tol = app.add_option("--tol", tol, "transport tolerance for verify");

  for (const char* name :
       {"transform", "solve-shannon", "verify", "sample", "averages"}) {
    app.add_subcommand(name)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  RunConfig cfg;
  cfg.command = app.get_subcommands().front()->get_name();
  if (!config_path.empty()) apply_config_file(config_path, cfg);
  if (*o_q) cfg.q = q;
  if (*o_lambda) cfg.lambdas = lambdas;
  if (*o_h) cfg.kinds = kinds;
  if (*o_target) cfg.targets = targets;
  if (*o_grid) cfg.grid = parse_grid(grid);
  if (*o_c) cfg.c = c;
  if (*o_anchor) {
    const auto a = parse_pair(anchor, "anchor");
    cfg.anchor_x = a.first;
    cfg.anchor_u = a.second;
  }
  if (*o_domain) cfg.domain = parse_pair(domain, "domain");
  if (*o_rtol) cfg.rtol = rtol;
  if (*o_atol) cfg.atol = atol;
  if (*o_seed) cfg.seed = seed;
  if (*o_n) cfg.n_samples = n;
  if (*o_qavg) cfg.q_avg = q_avg;
  if (*o_obs) cfg.observable = parse_list(observable, "observable");
  if (*o_out) cfg.out = out;
  if (*o_format) cfg.format = format;
  if (*o_tol) cfg.tol = tol;
  validate(cfg);

  if (cfg.command == "transform") return cmd_transform(cfg);
  if (cfg.command == "solve-shannon") return cmd_solve_shannon(cfg);
  if (cfg.command == "verify") return cmd_verify(cfg);
  if (cfg.command == "sample") return cmd_sample(cfg);
  return cmd_averages(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "qbridge: config error: %s\n", e.what());
    return kExitConfig;
  } catch (const LibraryError& e) {
    std::fprintf(stderr, "qbridge: %s\n", e.what());
    return exit_code_for(e.status);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "qbridge: internal error: %s\n", e.what());
    return kExitInternal;
  }
}
