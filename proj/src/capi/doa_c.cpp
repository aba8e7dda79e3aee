// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "doa/doa.h"

#include <algorithm>
#include <exception>
#include <fstream>
#include <limits>
#include <new>
#include <optional>
#include <span>
#include <string>

#include "core/bench.hpp"
#include "core/brs.hpp"
#include "core/error.hpp"
#include "core/initroa.hpp"
#include "core/io.hpp"

struct doa_system {
  doa::bench::Benchmark bench;
};

struct doa_report {
  doa::InitialRoaReport report;
};

struct doa_certificate {
  doa::io::CertificateFile file;
  doa::Certificate cert;
};

struct doa_trajectory {
  doa::Trajectory traj;
};

namespace {

thread_local std::string g_last_error;

doa_status status_of(doa::ErrorCode code) {
  using doa::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return DOA_ERROR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return DOA_ERROR_DIMENSION;
    case ErrorCode::NotSymmetric: return DOA_ERROR_NOT_SYMMETRIC;
    case ErrorCode::NotPositiveDefinite: return DOA_ERROR_NOT_POSITIVE_DEFINITE;
    case ErrorCode::SingularMatrix: return DOA_ERROR_SINGULAR;
    case ErrorCode::NoUniqueSolution: return DOA_ERROR_NO_UNIQUE_SOLUTION;
    case ErrorCode::SchurUnstable: return DOA_ERROR_SCHUR_UNSTABLE;
    case ErrorCode::NotConverged: return DOA_ERROR_NOT_CONVERGED;
    case ErrorCode::NumericalFailure: return DOA_ERROR_NUMERICAL;
    case ErrorCode::NotAnEquilibrium: return DOA_ERROR_NOT_EQUILIBRIUM;
    case ErrorCode::EpsilonTooLarge: return DOA_ERROR_EPSILON_TOO_LARGE;
    case ErrorCode::MissingCapability: return DOA_ERROR_CAPABILITY;
    case ErrorCode::UnknownSystem: return DOA_ERROR_UNKNOWN_SYSTEM;
    case ErrorCode::ParseError: return DOA_ERROR_PARSE;
    case ErrorCode::IoError: return DOA_ERROR_IO;
  }
  return DOA_ERROR_INTERNAL;
}

doa_status fail_with(doa_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
doa_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return DOA_OK;
  } catch (const doa::Error& e) {
    return fail_with(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail_with(DOA_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail_with(DOA_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail_with(DOA_ERROR_INTERNAL, "unknown exception");
  }
}

#define DOA_REQUIRE(cond)                                                        \
  do {                                                                           \
    if (!(cond)) return fail_with(DOA_ERROR_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

std::span<const double> view(const double* p, std::size_t n) { return {p, n}; }

void copy_out(std::span<const double> src, double* dst) {
  std::copy(src.begin(), src.end(), dst);
}

doa_report_summary summarize(const doa::InitialRoaReport& r) {
  return doa_report_summary{r.epsilon, r.d, r.alpha, r.beta, r.c1, r.c2, r.c,
                            r.lambda_min_p, r.lambda_max_p,
                            r.binding == doa::BindingConstraint::Decrease ? DOA_BINDING_DECREASE
                                                                          : DOA_BINDING_CONTAINMENT};
}

doa::GridSpec to_grid_spec(const doa_section_spec& s, std::size_t dim) {
  doa::GridSpec g;
  g.axis_i = s.axis_i;
  g.axis_j = s.axis_j;
  g.fixed = s.fixed ? doa::Vector(s.fixed, s.fixed + dim) : doa::Vector(dim, 0.0);
  g.lo_i = s.lo_i;
  g.hi_i = s.hi_i;
  g.lo_j = s.lo_j;
  g.hi_j = s.hi_j;
  g.n_i = s.n_i;
  g.n_j = s.n_j;
  return g;
}

}  // namespace

extern "C" {

const char* doa_status_string(doa_status status) {
  switch (status) {
    case DOA_OK: return "ok";
    case DOA_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case DOA_ERROR_DIMENSION: return "dimension mismatch";
    case DOA_ERROR_NOT_SYMMETRIC: return "matrix not symmetric";
    case DOA_ERROR_NOT_POSITIVE_DEFINITE: return "matrix not positive definite";
    case DOA_ERROR_SINGULAR: return "singular matrix";
    case DOA_ERROR_NO_UNIQUE_SOLUTION: return "no unique solution";
    case DOA_ERROR_SCHUR_UNSTABLE: return "Jacobian not Schur stable";
    case DOA_ERROR_NOT_CONVERGED: return "iteration did not converge";
    case DOA_ERROR_NUMERICAL: return "numerical failure";
    case DOA_ERROR_NOT_EQUILIBRIUM: return "origin is not an equilibrium";
    case DOA_ERROR_EPSILON_TOO_LARGE: return "epsilon too large";
    case DOA_ERROR_CAPABILITY: return "missing capability";
    case DOA_ERROR_UNKNOWN_SYSTEM: return "unknown system";
    case DOA_ERROR_PARSE: return "parse error";
    case DOA_ERROR_IO: return "I/O error";
    case DOA_ERROR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* doa_last_error(void) { return g_last_error.c_str(); }

const char* doa_version(void) { return "1.0.0"; }

doa_status doa_system_create(const char* name, const double* gain, size_t gain_len,
                             doa_system** out) {
  DOA_REQUIRE(name && out);
  DOA_REQUIRE(gain || gain_len == 0);
  *out = nullptr;
  return guarded([&] {
    *out = new doa_system{doa::bench::make_benchmark(name, view(gain, gain_len))};
  });
}

void doa_system_destroy(doa_system* sys) { delete sys; }

size_t doa_system_dim(const doa_system* sys) { return sys ? sys->bench.system->dim : 0; }

const char* doa_system_name(const doa_system* sys) {
  return sys ? sys->bench.system->name.c_str() : "";
}

doa_status doa_system_step(const doa_system* sys, const double* x, double* out) {
  DOA_REQUIRE(sys && x && out);
  return guarded([&] {
    const auto& f = *sys->bench.system;
    copy_out(f(view(x, f.dim)), out);
  });
}

doa_status doa_system_theta(const doa_system* sys, const double* x, double* out) {
  DOA_REQUIRE(sys && x && out);
  return guarded([&] { *out = sys->bench.theta.eval(view(x, sys->bench.system->dim)); });
}

doa_status doa_system_default_box(const doa_system* sys, double* radius) {
  DOA_REQUIRE(sys && radius);
  return guarded([&] { copy_out(sys->bench.default_box.radius(), radius); });
}

doa_status doa_system_box_in_safe_set(const doa_system* sys, const double* radius, int* verdict) {
  DOA_REQUIRE(sys && radius && verdict);
  return guarded([&] {
    const std::size_t n = sys->bench.system->dim;
    const doa::HyperRect box(doa::Vector(radius, radius + n));
    const std::optional<bool> inside = doa::box_inside_safe_set(sys->bench.theta, box);
    *verdict = inside ? (*inside ? 1 : 0) : -1;
  });
}

doa_status doa_cart_pole_lqr(const double* q, const double* r, double* gain) {
  DOA_REQUIRE(q && r && gain);
  return guarded([&] {
    const doa::Matrix k = doa::bench::cart_pole_lqr(doa::Matrix(4, 4, doa::Vector(q, q + 16)),
                                                    doa::Matrix(1, 1, doa::Vector{*r}));
    copy_out(k.entries(), gain);
  });
}

doa_status doa_initial_roa(const doa_system* sys, const double* q, const double* box,
                           double epsilon, doa_report** out) {
  DOA_REQUIRE(sys && out);
  *out = nullptr;
  return guarded([&] {
    const std::size_t n = sys->bench.system->dim;
    const doa::Matrix qm = q ? doa::Matrix(n, n, doa::Vector(q, q + n * n)) : doa::Matrix::identity(n);
    const doa::HyperRect b = box ? doa::HyperRect(doa::Vector(box, box + n)) : sys->bench.default_box;
    const std::optional<double> eps = epsilon > 0.0 ? std::optional<double>(epsilon) : std::nullopt;
    *out = new doa_report{doa::build_initial_roa(*sys->bench.system, b, qm, eps)};
  });
}

void doa_report_destroy(doa_report* report) { delete report; }

doa_status doa_report_summary_get(const doa_report* report, doa_report_summary* out) {
  DOA_REQUIRE(report && out);
  *out = summarize(report->report);
  return DOA_OK;
}

doa_status doa_report_matrix(const doa_report* report, doa_report_matrix_id which, double* out) {
  DOA_REQUIRE(report && out);
  const doa::InitialRoaReport& r = report->report;
  switch (which) {
    case DOA_MATRIX_A: copy_out(r.a.entries(), out); return DOA_OK;
    case DOA_MATRIX_Q: copy_out(r.q.entries(), out); return DOA_OK;
    case DOA_MATRIX_P: copy_out(r.p.entries(), out); return DOA_OK;
  }
  return fail_with(DOA_ERROR_INVALID_ARGUMENT, "unknown report matrix id");
}

doa_status doa_report_eta(const doa_report* report, double* out) {
  DOA_REQUIRE(report && out);
  copy_out(report->report.eta, out);
  return DOA_OK;
}

doa_status doa_report_box(const doa_report* report, double* out) {
  DOA_REQUIRE(report && out);
  copy_out(report->report.box.radius(), out);
  return DOA_OK;
}

doa_status doa_report_verify_decrease(const doa_report* report, const doa_system* sys,
                                      size_t samples, uint64_t seed, int* passed,
                                      double* counterexample) {
  DOA_REQUIRE(report && sys && passed);
  return guarded([&] {
    const doa::DecreaseCheck check =
        doa::verify_lyapunov_decrease(report->report, *sys->bench.system, samples, seed);
    *passed = check.passed ? 1 : 0;
    if (!check.passed) g_last_error = check.reason;
    if (counterexample && check.counterexample) copy_out(*check.counterexample, counterexample);
  });
}

doa_status doa_certificate_create(const doa_system* sys, const doa_report* report, size_t depth,
                                  doa_certificate** out) {
  DOA_REQUIRE(sys && report && out);
  *out = nullptr;
  return guarded([&] {
    const auto& b = sys->bench;
    if (report->report.p.rows() != b.system->dim)
      doa::fail(doa::ErrorCode::DimensionMismatch, "report does not match the system");
    doa::io::CertificateFile file =
        doa::io::make_certificate_file(*b.system, b.theta, report->report, depth);
    doa::Certificate cert(b.theta, report->report.v, depth, b.system, true);
    *out = new doa_certificate{std::move(file), std::move(cert)};
  });
}

doa_status doa_certificate_load(const char* path, doa_certificate** out) {
  DOA_REQUIRE(path && out);
  *out = nullptr;
  return guarded([&] {
    doa::io::CertificateFile file = doa::io::load_certificate(path);
    doa::Certificate cert = doa::io::to_certificate(file);
    *out = new doa_certificate{std::move(file), std::move(cert)};
  });
}

doa_status doa_certificate_save(const doa_certificate* cert, const char* path) {
  DOA_REQUIRE(cert && path);
  return guarded([&] { doa::io::save_certificate(cert->file, path); });
}

doa_status doa_certificate_with_depth(const doa_certificate* cert, size_t depth,
                                      doa_certificate** out) {
  DOA_REQUIRE(cert && out);
  *out = nullptr;
  return guarded([&] {
    doa::io::CertificateFile file = cert->file;
    file.depth = depth;
    *out = new doa_certificate{std::move(file), cert->cert.with_depth(depth)};
  });
}

void doa_certificate_destroy(doa_certificate* cert) { delete cert; }

size_t doa_certificate_dim(const doa_certificate* cert) { return cert ? cert->cert.dim() : 0; }

size_t doa_certificate_depth(const doa_certificate* cert) { return cert ? cert->cert.depth() : 0; }

const char* doa_certificate_system_name(const doa_certificate* cert) {
  return cert ? cert->file.system.c_str() : "";
}

doa_status doa_certificate_summary(const doa_certificate* cert, doa_report_summary* out) {
  DOA_REQUIRE(cert && out);
  *out = summarize(cert->file.report);
  return DOA_OK;
}

doa_status doa_certificate_eval(const doa_certificate* cert, const double* x, double* value,
                                int* member) {
  DOA_REQUIRE(cert && x);
  return guarded([&] {
    const double v = doa::eval_vk(cert->cert, view(x, cert->cert.dim()));
    if (value) *value = v;
    if (member) *member = v <= 1.0 ? 1 : 0;
  });
}

doa_status doa_certificate_depth_scan(const doa_certificate* cert, const double* x, size_t k_max,
                                      int* found, size_t* depth) {
  DOA_REQUIRE(cert && x && found);
  return guarded([&] {
    const doa::Certificate& c = cert->cert;
    const auto k = doa::certificate_depth(c.theta(), c.v0(), *c.system(), view(x, c.dim()), k_max);
    *found = k ? 1 : 0;
    if (depth) *depth = k.value_or(0);
  });
}

doa_status doa_section(const doa_certificate* cert, const doa_section_spec* spec, double* values,
                       unsigned char* members) {
  DOA_REQUIRE(cert && spec);
  return guarded([&] {
    const doa::Grid grid =
        doa::grid_section(cert->cert, to_grid_spec(*spec, cert->cert.dim()), spec->threads);
    if (values) copy_out(grid.values, values);
    if (members) std::copy(grid.members.begin(), grid.members.end(), members);
  });
}

doa_status doa_section_write_csv(const doa_certificate* cert, const doa_section_spec* spec,
                                 const char* path, size_t* member_count) {
  DOA_REQUIRE(cert && spec && path);
  return guarded([&] {
    const doa::Grid grid =
        doa::grid_section(cert->cert, to_grid_spec(*spec, cert->cert.dim()), spec->threads);
    std::ofstream out(path, std::ios::binary);
    if (!out) doa::fail(doa::ErrorCode::IoError, std::string("cannot open '") + path + "' for writing");
    doa::io::write_grid_csv(grid, out);
    if (!out) doa::fail(doa::ErrorCode::IoError, std::string("failed writing '") + path + "'");
    if (member_count) *member_count = grid.member_count();
  });
}

doa_status doa_simulate(const doa_system* sys, const double* x0, size_t steps,
                        doa_trajectory** out) {
  DOA_REQUIRE(sys && x0 && out);
  *out = nullptr;
  return guarded([&] {
    const auto& f = *sys->bench.system;
    *out = new doa_trajectory{doa::simulate(f, view(x0, f.dim), steps)};
  });
}

void doa_trajectory_destroy(doa_trajectory* traj) { delete traj; }

size_t doa_trajectory_length(const doa_trajectory* traj) {
  return traj ? traj->traj.states.size() : 0;
}

int doa_trajectory_diverged(const doa_trajectory* traj) {
  return traj && traj->traj.diverged ? 1 : 0;
}

doa_status doa_trajectory_state(const doa_trajectory* traj, size_t index, double* out) {
  DOA_REQUIRE(traj && out);
  if (index >= traj->traj.states.size())
    return fail_with(DOA_ERROR_INVALID_ARGUMENT, "trajectory index out of range");
  copy_out(traj->traj.states[index], out);
  return DOA_OK;
}

doa_status doa_trajectory_check(const doa_trajectory* traj, const doa_system* sys, double conv_tol,
                                int* safe, int* attracted, long long* first_violation) {
  DOA_REQUIRE(traj && sys);
  return guarded([&] {
    const doa::SafetyVerdict v = doa::check_safe_attraction(traj->traj, sys->bench.theta, conv_tol);
    if (safe) *safe = v.safe ? 1 : 0;
    if (attracted) *attracted = v.attracted ? 1 : 0;
    if (first_violation)
      *first_violation = v.first_violation ? static_cast<long long>(*v.first_violation) : -1;
  });
}

doa_status doa_trajectory_write_csv(const doa_trajectory* traj, const doa_system* sys,
                                    const char* path) {
  DOA_REQUIRE(traj && sys && path);
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) doa::fail(doa::ErrorCode::IoError, std::string("cannot open '") + path + "' for writing");
    doa::io::write_trajectory_csv(traj->traj, sys->bench.theta, out);
    if (!out) doa::fail(doa::ErrorCode::IoError, std::string("failed writing '") + path + "'");
  });
}

}  // extern "C"
