// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

// doa: command-line front end over the safedoa C API.
//
//   doa initial-roa --system two_machine --out two_machine.cert.json
//   doa check --cert two_machine.cert.json --depth 80 --points "1,-0.2;-1,0"
//   doa section --cert c.json --depth 80 --axes 1 2 --range -1 1 -0.5 0.5 --res 201 201 --out s.csv
//   doa simulate --system cart_pole --x0 0.1,-0.02,0,0 --steps 600 --out traj.csv
//
// Exit codes: 0 success, 1 usage error, 2 violated assumption, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "doa/doa.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAssumption = 2;
constexpr int kExitNumerical = 3;

struct SystemDeleter {
  void operator()(doa_system* p) const { doa_system_destroy(p); }
};
struct ReportDeleter {
  void operator()(doa_report* p) const { doa_report_destroy(p); }
};
struct CertificateDeleter {
  void operator()(doa_certificate* p) const { doa_certificate_destroy(p); }
};
struct TrajectoryDeleter {
  void operator()(doa_trajectory* p) const { doa_trajectory_destroy(p); }
};
using SystemHandle = std::unique_ptr<doa_system, SystemDeleter>;
using ReportHandle = std::unique_ptr<doa_report, ReportDeleter>;
using CertificateHandle = std::unique_ptr<doa_certificate, CertificateDeleter>;
using TrajectoryHandle = std::unique_ptr<doa_trajectory, TrajectoryDeleter>;

// Raised for any failure; carries the exit code.
struct CliError : std::runtime_error {
  CliError(int code_, const std::string& msg) : std::runtime_error(msg), code(code_) {}
  int code;
};

[[noreturn]] void usage_error(const std::string& msg) { throw CliError(kExitUsage, msg); }

int exit_code_for(doa_status s) {
  switch (s) {
    case DOA_ERROR_NOT_EQUILIBRIUM:
    case DOA_ERROR_SCHUR_UNSTABLE:
    case DOA_ERROR_EPSILON_TOO_LARGE:
    case DOA_ERROR_NOT_POSITIVE_DEFINITE:
    case DOA_ERROR_CAPABILITY:
      return kExitAssumption;
    case DOA_ERROR_SINGULAR:
    case DOA_ERROR_NO_UNIQUE_SOLUTION:
    case DOA_ERROR_NOT_CONVERGED:
    case DOA_ERROR_NUMERICAL:
    case DOA_ERROR_INTERNAL:
      return kExitNumerical;
    default:
      return kExitUsage;
  }
}

std::string assumption_hint(doa_status s) {
  switch (s) {
    case DOA_ERROR_NOT_EQUILIBRIUM:
      return "assumption violated: the origin must be an equilibrium, f(0) = 0";
    case DOA_ERROR_SCHUR_UNSTABLE:
      return "assumption violated: all eigenvalues of the Jacobian Df(0) must lie strictly inside "
             "the unit circle (f twice continuously differentiable with a Schur-stable "
             "linearization)";
    case DOA_ERROR_EPSILON_TOO_LARGE:
      return "assumption violated: epsilon must satisfy 0 < epsilon < lambda_min(Q)";
    case DOA_ERROR_NOT_POSITIVE_DEFINITE:
      return "assumption violated: Q must be symmetric positive definite";
    case DOA_ERROR_CAPABILITY:
      return "assumption violated: the system must provide interval bounds on its Hessian";
    default:
      return {};
  }
}

void check(doa_status s, const std::string& context) {
  if (s == DOA_OK) return;
  std::string msg = context + ": " + doa_status_string(s);
  if (const std::string detail = doa_last_error(); !detail.empty()) msg += " (" + detail + ")";
  if (const std::string hint = assumption_hint(s); !hint.empty()) msg += "\n" + hint;
  throw CliError(exit_code_for(s), msg);
}

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_number(double v) { return std::isfinite(v) ? fmt17(v) : "null"; }

std::string json_vector(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt17(v[i]);
  return s + "]";
}

std::vector<double> parse_row(const std::string& text, const std::string& where) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t\r");
    const auto last = item.find_last_not_of(" \t\r");
    if (first == std::string::npos) usage_error(where + ": empty value");
    const std::string token = item.substr(first, last - first + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      usage_error(where + ": '" + token + "' is not a number");
    }
    if (used != token.size() || !std::isfinite(v)) usage_error(where + ": '" + token + "' is not a finite number");
    out.push_back(v);
  }
  if (out.empty()) usage_error(where + ": no values");
  return out;
}

// Points come either from a CSV file (one point per row, '#' comments) or an
// inline list "x1,x2;y1,y2".
std::vector<std::vector<double>> parse_points(const std::string& spec, std::size_t dim) {
  std::vector<std::vector<double>> points;
  const auto add = [&](const std::string& row, const std::string& where) {
    std::vector<double> p = parse_row(row, where);
    if (p.size() != dim)
      usage_error(where + ": expected " + std::to_string(dim) + " values, got " + std::to_string(p.size()));
    points.push_back(std::move(p));
  };
  if (std::filesystem::is_regular_file(spec)) {
    std::ifstream in(spec);
    if (!in) usage_error("cannot open points file '" + spec + "'");
    std::string line;
    for (std::size_t row = 1; std::getline(in, line); ++row) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      add(line, "points file '" + spec + "' row " + std::to_string(row));
    }
  } else {
    std::stringstream ss(spec);
    std::string row;
    for (std::size_t idx = 1; std::getline(ss, row, ';'); ++idx) add(row, "inline point " + std::to_string(idx));
  }
  if (points.empty()) usage_error("no points given");
  return points;
}

// Settings shared by every subcommand; a --config JSON file supplies
// defaults and explicit flags override it.
struct Settings {
  std::string config;
  std::string system;
  std::vector<double> gain;
  std::optional<std::size_t> depth;
  std::optional<double> epsilon;
  std::vector<double> q;
  std::vector<double> box;
  std::string out;
  std::string cert;
  std::string points;
  std::vector<std::size_t> axes;
  std::vector<double> range;
  std::vector<std::size_t> res;
  std::vector<double> fixed;
  std::optional<std::size_t> steps;
  std::optional<double> conv_tol;
  std::optional<std::size_t> depth_scan;
  std::vector<double> x0;
  std::size_t verify_samples = 0;
};

template <class T>
void take(const nlohmann::json& cfg, const char* key, T& dst, bool explicit_flag) {
  if (explicit_flag || !cfg.contains(key)) return;
  try {
    dst = cfg.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    usage_error(std::string("config field '") + key + "': " + e.what());
  }
}

template <class T>
void take_opt(const nlohmann::json& cfg, const char* key, std::optional<T>& dst) {
  if (dst || !cfg.contains(key)) return;
  try {
    dst = cfg.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    usage_error(std::string("config field '") + key + "': " + e.what());
  }
}

void apply_config(Settings& s, const CLI::App& app) {
  if (s.config.empty()) return;
  std::ifstream in(s.config);
  if (!in) usage_error("cannot open config '" + s.config + "'");
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    usage_error("config '" + s.config + "' is not valid JSON: " + e.what());
  }
  if (!cfg.is_object()) usage_error("config must be a JSON object");
  const auto given = [&](const char* flag) {
    const CLI::Option* opt = app.get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };
  take(cfg, "system", s.system, given("--system"));
  take(cfg, "gain", s.gain, given("--gain"));
  take(cfg, "out", s.out, given("--out"));
  take(cfg, "cert", s.cert, given("--cert"));
  take(cfg, "axes", s.axes, given("--axes"));
  take(cfg, "range", s.range, given("--range"));
  take(cfg, "res", s.res, given("--res"));
  take(cfg, "fixed", s.fixed, given("--fixed"));
  take(cfg, "x0", s.x0, given("--x0"));
  take(cfg, "B", s.box, given("--box"));
  take_opt(cfg, "depth", s.depth);
  take_opt(cfg, "epsilon", s.epsilon);
  take_opt(cfg, "steps", s.steps);
  take_opt(cfg, "conv_tol", s.conv_tol);
  take_opt(cfg, "depth_scan", s.depth_scan);
  if (!given("--q") && cfg.contains("Q")) {
    try {
      s.q.clear();
      for (const auto& row : cfg.at("Q")) {
        const auto r = row.get<std::vector<double>>();
        s.q.insert(s.q.end(), r.begin(), r.end());
      }
    } catch (const nlohmann::json::exception& e) {
      usage_error(std::string("config field 'Q': ") + e.what());
    }
  }
  if (!given("--points") && cfg.contains("points")) {
    const auto& p = cfg.at("points");
    if (p.is_string()) {
      s.points = p.get<std::string>();
    } else if (p.is_array()) {
      std::string inline_spec;
      for (const auto& row : p) {
        if (!inline_spec.empty()) inline_spec += ';';
        std::string r;
        for (const auto& v : row) {
          if (!v.is_number()) usage_error("config field 'points' must hold numbers");
          r += (r.empty() ? "" : ",") + fmt17(v.get<double>());
        }
        inline_spec += r;
      }
      s.points = inline_spec;
    } else {
      usage_error("config field 'points' must be a path or an array of points");
    }
  }
}

SystemHandle open_system(const Settings& s) {
  if (s.system.empty()) usage_error("--system is required");
  doa_system* raw = nullptr;
  check(doa_system_create(s.system.c_str(), s.gain.empty() ? nullptr : s.gain.data(), s.gain.size(), &raw),
        "system '" + s.system + "'");
  return SystemHandle(raw);
}

CertificateHandle open_certificate(const Settings& s) {
  if (s.cert.empty()) usage_error("--cert is required");
  doa_certificate* raw = nullptr;
  check(doa_certificate_load(s.cert.c_str(), &raw), "certificate '" + s.cert + "'");
  CertificateHandle cert(raw);
  if (s.depth && *s.depth != doa_certificate_depth(cert.get())) {
    doa_certificate* deeper = nullptr;
    check(doa_certificate_with_depth(cert.get(), *s.depth, &deeper), "certificate depth");
    cert.reset(deeper);
  }
  return cert;
}

unsigned section_threads() {
  const char* env = std::getenv("DOA_THREADS");
  if (!env || !*env) return 0;
  try {
    const long v = std::stol(env);
    if (v < 0) usage_error("DOA_THREADS must be nonnegative");
    return static_cast<unsigned>(v);
  } catch (const std::invalid_argument&) {
    usage_error("DOA_THREADS must be an integer");
  } catch (const std::out_of_range&) {
    usage_error("DOA_THREADS is out of range");
  }
}

int cmd_initial_roa(const Settings& s) {
  SystemHandle sys = open_system(s);
  const std::size_t n = doa_system_dim(sys.get());
  if (!s.q.empty() && s.q.size() != n * n)
    usage_error("Q must have " + std::to_string(n * n) + " entries");
  if (!s.box.empty() && s.box.size() != n) usage_error("B must have " + std::to_string(n) + " radii");
  if (s.epsilon && !(*s.epsilon > 0.0)) usage_error("--epsilon must be positive");

  std::vector<double> box(n);
  if (s.box.empty()) {
    check(doa_system_default_box(sys.get(), box.data()), "default box");
  } else {
    box = s.box;
  }
  int inside = -1;
  check(doa_system_box_in_safe_set(sys.get(), box.data(), &inside), "box");
  if (inside == 0)
    throw CliError(kExitAssumption, "assumption violated: the box B must lie inside the safe set X");
  if (inside < 0) std::cerr << "warning: safe set is not a norm ball; B inside X was not checked\n";

  doa_report* raw = nullptr;
  check(doa_initial_roa(sys.get(), s.q.empty() ? nullptr : s.q.data(), box.data(), s.epsilon.value_or(0.0), &raw),
        "initial region of attraction");
  ReportHandle report(raw);

  doa_report_summary sum{};
  check(doa_report_summary_get(report.get(), &sum), "report");

  if (s.verify_samples > 0) {
    int passed = 0;
    std::vector<double> counter(n);
    check(doa_report_verify_decrease(report.get(), sys.get(), s.verify_samples, 0x5eed, &passed, counter.data()),
          "decrease check");
    if (!passed)
      throw CliError(kExitNumerical, std::string("sampled decrease check failed: ") + doa_last_error() +
                                         " at " + json_vector(counter));
  }

  doa_certificate* cert_raw = nullptr;
  check(doa_certificate_create(sys.get(), report.get(), s.depth.value_or(0), &cert_raw), "certificate");
  CertificateHandle cert(cert_raw);
  const std::string out = s.out.empty() ? s.system + ".cert.json" : s.out;
  check(doa_certificate_save(cert.get(), out.c_str()), "writing '" + out + "'");

  std::cout << "system " << s.system << "\n"
            << "c " << fmt17(sum.c) << "\n"
            << "c1 " << fmt17(sum.c1) << "\n"
            << "c2 " << fmt17(sum.c2) << "\n"
            << "lambda_min_P " << fmt17(sum.lambda_min_p) << "\n"
            << "binding " << (sum.binding == DOA_BINDING_DECREASE ? "c1 (Lyapunov decrease)" : "c2 (box containment)")
            << "\n";
  if (s.verify_samples > 0) std::cout << "decrease_check passed (" << s.verify_samples << " samples)\n";
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

int cmd_check(const Settings& s) {
  CertificateHandle cert = open_certificate(s);
  const std::size_t n = doa_certificate_dim(cert.get());
  if (s.points.empty()) usage_error("--points is required");
  const auto points = parse_points(s.points, n);

  std::ofstream file;
  if (!s.out.empty()) {
    file.open(s.out, std::ios::binary);
    if (!file) usage_error("cannot open '" + s.out + "' for writing");
  }
  std::ostream& os = s.out.empty() ? std::cout : file;

  for (const auto& p : points) {
    double value = 0.0;
    int member = 0;
    check(doa_certificate_eval(cert.get(), p.data(), &value, &member), "evaluating point");
    os << "{\"point\":" << json_vector(p) << ",\"depth\":" << doa_certificate_depth(cert.get())
       << ",\"value\":" << json_number(value) << ",\"member\":" << (member ? "true" : "false");
    if (!std::isfinite(value)) os << ",\"diverged\":true";
    if (s.depth_scan) {
      int found = 0;
      std::size_t k = 0;
      check(doa_certificate_depth_scan(cert.get(), p.data(), *s.depth_scan, &found, &k), "depth scan");
      os << ",\"certificate_depth\":" << (found ? std::to_string(k) : "null");
    }
    os << "}\n";
  }
  return kExitOk;
}

int cmd_section(const Settings& s) {
  CertificateHandle cert = open_certificate(s);
  const std::size_t n = doa_certificate_dim(cert.get());
  if (s.axes.size() != 2) usage_error("--axes takes two 1-based coordinate indices");
  if (s.range.size() != 4) usage_error("--range takes four values: lo_i hi_i lo_j hi_j");
  if (s.res.size() != 2) usage_error("--res takes two grid sizes");
  for (std::size_t a : s.axes)
    if (a < 1 || a > n) usage_error("axis " + std::to_string(a) + " out of range 1.." + std::to_string(n));
  if (s.axes[0] == s.axes[1]) usage_error("--axes must name two different coordinates");
  if (s.res[0] < 2 || s.res[1] < 2) usage_error("--res values must be at least 2");
  if (!s.fixed.empty() && s.fixed.size() != n) usage_error("--fixed must have " + std::to_string(n) + " values");
  if (s.out.empty()) usage_error("--out is required");

  const std::vector<double> fixed = s.fixed.empty() ? std::vector<double>(n, 0.0) : s.fixed;
  const doa_section_spec spec{s.axes[0] - 1, s.axes[1] - 1, fixed.data(), s.range[0], s.range[1],
                              s.range[2],    s.range[3],    s.res[0],     s.res[1],   section_threads()};
  std::size_t members = 0;
  check(doa_section_write_csv(cert.get(), &spec, s.out.c_str(), &members), "section");
  std::cout << "members " << members << " of " << s.res[0] * s.res[1] << "\n"
            << "wrote " << s.out << "\n";
  return kExitOk;
}

int cmd_simulate(const Settings& s) {
  SystemHandle sys = open_system(s);
  const std::size_t n = doa_system_dim(sys.get());
  std::vector<double> x0 = s.x0;
  if (x0.empty() && !s.points.empty()) x0 = parse_points(s.points, n).front();
  if (x0.size() != n) usage_error("--x0 must have " + std::to_string(n) + " values");

  doa_trajectory* raw = nullptr;
  check(doa_simulate(sys.get(), x0.data(), s.steps.value_or(400), &raw), "simulation");
  TrajectoryHandle traj(raw);
  if (!s.out.empty()) check(doa_trajectory_write_csv(traj.get(), sys.get(), s.out.c_str()), "writing trajectory");

  int safe = 0;
  int attracted = 0;
  long long first = -1;
  check(doa_trajectory_check(traj.get(), sys.get(), s.conv_tol.value_or(1e-3), &safe, &attracted, &first),
        "trajectory check");
  std::vector<double> last(n);
  check(doa_trajectory_state(traj.get(), doa_trajectory_length(traj.get()) - 1, last.data()), "trajectory");
  std::cout << "{\"steps\":" << doa_trajectory_length(traj.get()) - 1 << ",\"safe\":" << (safe ? "true" : "false")
            << ",\"attracted\":" << (attracted ? "true" : "false")
            << ",\"first_violation\":" << (first < 0 ? std::string("null") : std::to_string(first))
            << ",\"diverged\":" << (doa_trajectory_diverged(traj.get()) ? "true" : "false")
            << ",\"final_state\":" << json_vector(last) << "}\n";
  if (!s.out.empty()) std::cout << "wrote " << s.out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified inner estimates of safe domains of attraction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(doa_version()));

  Settings s;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", s.config, "JSON file with default settings");
    sub->add_option("--out", s.out, "output path");
  };
  auto system_opts = [&](CLI::App* sub) {
    sub->add_option("--system", s.system, "two_machine | cart_pole");
    sub->add_option("--gain", s.gain, "cart-pole feedback gain K (u = K x)")->delimiter(',');
  };
  auto cert_opts = [&](CLI::App* sub) {
    sub->add_option("--cert", s.cert, "certificate JSON written by initial-roa");
    sub->add_option("--depth", s.depth, "depth k of V_k (overrides the certificate)");
  };

  CLI::App* init = app.add_subcommand("initial-roa", "build the initial safe region and write a certificate");
  common(init);
  system_opts(init);
  init->add_option("--depth", s.depth, "depth k stored in the certificate (default 0)");
  init->add_option("--epsilon", s.epsilon, "decrease margin (default 0.01 * lambda_min(Q))");
  init->add_option("--q", s.q, "Q, row-major, comma separated (default identity)")->delimiter(',');
  init->add_option("--box", s.box, "box radius R_B, comma separated (default per system)")->delimiter(',');
  init->add_option("--verify-samples", s.verify_samples, "sampled Lyapunov decrease check");

  CLI::App* chk = app.add_subcommand("check", "evaluate v_k at points");
  common(chk);
  cert_opts(chk);
  chk->add_option("--points", s.points, "CSV file or inline list \"x1,x2;y1,y2\"");
  chk->add_option("--depth-scan", s.depth_scan, "also report the smallest k <= kmax with x in V_k");

  CLI::App* sec = app.add_subcommand("section", "evaluate V_k on a 2-D grid section");
  common(sec);
  cert_opts(sec);
  sec->add_option("--axes", s.axes, "two 1-based coordinate indices")->expected(2);
  sec->add_option("--range", s.range, "lo_i hi_i lo_j hi_j")->expected(4);
  sec->add_option("--res", s.res, "grid points along each axis")->expected(2);
  sec->add_option("--fixed", s.fixed, "values of the remaining coordinates")->delimiter(',');

  CLI::App* sim = app.add_subcommand("simulate", "simulate a trajectory and check safety");
  common(sim);
  system_opts(sim);
  sim->add_option("--x0", s.x0, "initial state, comma separated")->delimiter(',');
  sim->add_option("--points", s.points, "initial state (first point is used)");
  sim->add_option("--steps", s.steps, "number of steps (default 400)");
  sim->add_option("--conv-tol", s.conv_tol, "convergence tolerance on ||x_N|| (default 1e-3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    apply_config(s, *active);
    if (active == init) return cmd_initial_roa(s);
    if (active == chk) return cmd_check(s);
    if (active == sec) return cmd_section(s);
    return cmd_simulate(s);
  } catch (const CliError& e) {
    std::cerr << "doa: " << e.what() << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "doa: internal error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
