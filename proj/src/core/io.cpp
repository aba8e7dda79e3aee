// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <variant>

#include "core/bench.hpp"
#include "core/error.hpp"

namespace doa::io {

namespace {

using nlohmann::json;

std::string vector_json(std::span<const double> v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_double(v[i]);
  }
  return s + "]";
}

std::string matrix_json(const Matrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += ", ";
    s += vector_json(m.row(i));
  }
  return s + "]";
}

// Finite doubles only; c1 may be +inf and is written as null.
std::string number_or_null(double v) { return std::isfinite(v) ? format_double(v) : "null"; }

std::string quoted(std::string_view s) { return json(std::string(s)).dump(); }

[[noreturn]] void parse_fail(const std::string& what) {
  fail(ErrorCode::ParseError, "certificate: " + what);
}

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  return obj.at(key);
}

double number(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_number()) parse_fail(std::string("field '") + key + "' is not a number");
  return v.get<double>();
}

Vector vector_from(const json& v, const char* what) {
  if (!v.is_array()) parse_fail(std::string(what) + " is not an array");
  Vector out;
  for (const json& e : v) {
    if (!e.is_number()) parse_fail(std::string(what) + " has a non-numeric entry");
    out.push_back(e.get<double>());
  }
  return out;
}

Matrix matrix_from(const json& v, const char* what) {
  if (!v.is_array() || v.empty()) parse_fail(std::string(what) + " is not a nonempty array of rows");
  const std::size_t rows = v.size();
  std::vector<double> data;
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    Vector r = vector_from(v[i], what);
    if (i == 0) cols = r.size();
    if (r.size() != cols) parse_fail(std::string(what) + " has ragged rows");
    data.insert(data.end(), r.begin(), r.end());
  }
  return Matrix(rows, cols, std::move(data));
}

LevelFunction level_function_from(const json& v) {
  const json& type = field(v, "type");
  if (!type.is_string()) parse_fail("level function type is not a string");
  const std::string t = type.get<std::string>();
  if (t == "quadratic") return LevelFunction::quadratic(matrix_from(field(v, "P"), "P"), number(v, "c"));
  if (t == "weighted_inf_norm") return LevelFunction::weighted_inf_norm(matrix_from(field(v, "E"), "E"));
  if (t == "stacked_inf_norm") {
    const json& blocks = field(v, "blocks");
    if (!blocks.is_array()) parse_fail("blocks is not an array");
    std::vector<Matrix> ms;
    for (const json& b : blocks) ms.push_back(matrix_from(b, "block"));
    return LevelFunction::stacked_inf_norm(std::move(ms));
  }
  parse_fail("unknown level function type '" + t + "'");
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string level_function_json(const LevelFunction& fn) {
  using LF = LevelFunction;
  if (const auto* q = std::get_if<LF::Quadratic>(&fn.node()))
    return R"({"type": "quadratic", "P": )" + matrix_json(q->p) + ", \"c\": " + format_double(q->c) + "}";
  if (const auto* w = std::get_if<LF::WeightedInfNorm>(&fn.node()))
    return R"({"type": "weighted_inf_norm", "E": )" + matrix_json(w->e) + "}";
  if (const auto* s = std::get_if<LF::StackedInfNorm>(&fn.node())) {
    std::string out = R"({"type": "stacked_inf_norm", "blocks": [)";
    for (std::size_t i = 0; i < s->blocks.size(); ++i) {
      if (i) out += ", ";
      out += matrix_json(s->blocks[i]);
    }
    return out + "]}";
  }
  fail(ErrorCode::InvalidArgument,
       "composed level functions are not serialized; store (theta, v, k) instead");
}

CertificateFile make_certificate_file(const SystemModel& sys, const LevelFunction& theta,
                                      const InitialRoaReport& report, std::size_t depth) {
  return CertificateFile{std::string(kFormatVersion), sys.name, sys.parameters, theta, report, depth, true};
}

std::string certificate_json(const CertificateFile& f) {
  const InitialRoaReport& r = f.report;
  std::ostringstream os;
  os << "{\n"
     << "  \"format_version\": " << quoted(f.format_version) << ",\n"
     << "  \"system\": " << quoted(f.system) << ",\n"
     << "  \"parameters\": " << vector_json(f.parameters) << ",\n"
     << "  \"depth\": " << f.depth << ",\n"
     << "  \"certified\": " << (f.certified ? "true" : "false") << ",\n"
     << "  \"theta\": " << level_function_json(f.theta) << ",\n"
     << "  \"report\": {\n"
     << "    \"A\": " << matrix_json(r.a) << ",\n"
     << "    \"Q\": " << matrix_json(r.q) << ",\n"
     << "    \"P\": " << matrix_json(r.p) << ",\n"
     << "    \"box_radius\": " << vector_json(r.box.radius()) << ",\n"
     << "    \"eta\": " << vector_json(r.eta) << ",\n"
     << "    \"epsilon\": " << format_double(r.epsilon) << ",\n"
     << "    \"d\": " << format_double(r.d) << ",\n"
     << "    \"alpha\": " << format_double(r.alpha) << ",\n"
     << "    \"beta\": " << format_double(r.beta) << ",\n"
     << "    \"c1\": " << number_or_null(r.c1) << ",\n"
     << "    \"c2\": " << format_double(r.c2) << ",\n"
     << "    \"c\": " << format_double(r.c) << ",\n"
     << "    \"lambda_min_P\": " << format_double(r.lambda_min_p) << ",\n"
     << "    \"lambda_max_P\": " << format_double(r.lambda_max_p) << ",\n"
     << "    \"binding\": " << quoted(to_string(r.binding)) << "\n"
     << "  }\n"
     << "}\n";
  return os.str();
}

CertificateFile parse_certificate(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  const json& version = field(doc, "format_version");
  if (!version.is_string() || version.get<std::string>() != kFormatVersion)
    parse_fail("unsupported format_version (expected \"1\")");
  const json& system = field(doc, "system");
  if (!system.is_string()) parse_fail("system is not a string");
  const json& depth = field(doc, "depth");
  if (!depth.is_number_unsigned()) parse_fail("depth must be a nonnegative integer");
  const json& certified = field(doc, "certified");
  if (!certified.is_boolean()) parse_fail("certified must be a boolean");

  const json& r = field(doc, "report");
  const json& c1 = field(r, "c1");
  if (!c1.is_null() && !c1.is_number()) parse_fail("c1 must be a number or null");
  const json& binding = field(r, "binding");
  if (!binding.is_string() || (binding != "c1" && binding != "c2")) parse_fail("binding must be \"c1\" or \"c2\"");
  const Matrix p = matrix_from(field(r, "P"), "P");
  const double c = number(r, "c");

  InitialRoaReport report{
      .a = matrix_from(field(r, "A"), "A"),
      .q = matrix_from(field(r, "Q"), "Q"),
      .p = p,
      .box = HyperRect(vector_from(field(r, "box_radius"), "box_radius")),
      .eta = vector_from(field(r, "eta"), "eta"),
      .epsilon = number(r, "epsilon"),
      .d = number(r, "d"),
      .alpha = number(r, "alpha"),
      .beta = number(r, "beta"),
      .c1 = c1.is_null() ? std::numeric_limits<double>::infinity() : c1.get<double>(),
      .c2 = number(r, "c2"),
      .c = c,
      .lambda_min_p = number(r, "lambda_min_P"),
      .lambda_max_p = number(r, "lambda_max_P"),
      .binding = binding == "c1" ? BindingConstraint::Decrease : BindingConstraint::Containment,
      .v = LevelFunction::quadratic(p, c),
  };

  return CertificateFile{version.get<std::string>(),
                         system.get<std::string>(),
                         vector_from(field(doc, "parameters"), "parameters"),
                         level_function_from(field(doc, "theta")),
                         std::move(report),
                         depth.get<std::size_t>(),
                         certified.get<bool>()};
}

void save_certificate(const CertificateFile& file, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << certificate_json(file);
  if (!out) fail(ErrorCode::IoError, "failed writing '" + path + "'");
}

CertificateFile load_certificate(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_certificate(buf.str());
}

Certificate to_certificate(const CertificateFile& file) {
  bench::Benchmark b = bench::make_benchmark(file.system, file.parameters);
  if (file.theta.dim() != b.system->dim || file.report.p.rows() != b.system->dim)
    fail(ErrorCode::DimensionMismatch, "certificate dimensions do not match system '" + file.system + "'");
  return Certificate(file.theta, file.report.v, file.depth, b.system, file.certified);
}

void write_grid_csv(const Grid& grid, std::ostream& out) {
  const GridSpec& s = grid.spec;
  out << "i,j,x_i,x_j,value,member\n";
  for (std::size_t a = 0; a < s.n_i; ++a) {
    for (std::size_t b = 0; b < s.n_j; ++b) {
      const std::size_t idx = a * s.n_j + b;
      out << a << ',' << b << ',' << format_double(s.coord_i(a)) << ',' << format_double(s.coord_j(b))
          << ',' << format_double(grid.values[idx]) << ',' << (grid.members[idx] ? '1' : '0') << '\n';
    }
  }
}

void write_trajectory_csv(const Trajectory& traj, const LevelFunction& theta, std::ostream& out) {
  const std::size_t n = traj.states.empty() ? 0 : traj.states.front().size();
  out << "step";
  for (std::size_t i = 0; i < n; ++i) out << ",x" << (i + 1);
  out << ",theta\n";
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    out << k;
    for (double v : traj.states[k]) out << ',' << format_double(v);
    out << ',' << format_double(theta.eval(traj.states[k])) << '\n';
  }
}

}  // namespace doa::io
