// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "core/bench.hpp"
#include "core/brs.hpp"
#include "core/initroa.hpp"
#include "core/linalg.hpp"

namespace {

using namespace doa;
using std::numbers::pi;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Minimum wall time over `reps` runs of `fn`, in milliseconds.
double best_ms(int reps, const std::function<void()>& fn) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < reps; ++i) {
    const auto t0 = Clock::now();
    fn();
    best = std::min(best, ms_since(t0));
  }
  return best;
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? " ok" : " FAILED");
    pass = pass && ok;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int failures = 0;

void report(int id, const char* title, Outcome o, double ms, double limit_ms) {
  o.require(ms < limit_ms, "runtime " + fmt("%.3g", ms) + " ms < " + fmt("%g", limit_ms) + " ms");
  std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
  std::fflush(stdout);
  failures += o.pass ? 0 : 1;
}

const Matrix kTwoMachineA{{1.0, 0.1}, {-0.05, 0.95}};
const Matrix kTwoMachineP{{21.9377, 10.8408}, {10.8408, 33.6321}};
const Matrix kCartPoleP{{35.6188, 56.5630, 60.0805, 59.9877},
                        {56.5630, 135.0700, 147.0047, 146.5897},
                        {60.0805, 147.0047, 174.9002, 163.9973},
                        {59.9877, 146.5897, 163.9973, 163.6202}};
constexpr double kTwoMachineC = 2.9345;
constexpr double kCartPoleC = 0.0312;

struct Case {
  std::string name;
  bench::Benchmark bench;
  InitialRoaReport report;
  Certificate cert;
  Vector safe_radius;  // box enclosing X, for sampling
  std::size_t horizon;
};

Case make_case(bench::Benchmark b, std::size_t depth, Vector safe_radius, std::size_t horizon) {
  InitialRoaReport r = build_initial_roa(*b.system, b.default_box, Matrix::identity(b.system->dim), 0.01);
  Certificate cert(b.theta, r.v, depth, b.system);
  return {b.system->name, b, std::move(r), std::move(cert), std::move(safe_radius), horizon};
}

Vector sample_box(std::mt19937_64& rng, const Vector& radius, double scale = 1.0) {
  Vector x(radius.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = std::uniform_real_distribution<double>(-scale * radius[i], scale * radius[i])(rng);
  return x;
}

std::vector<Vector> member_samples(const Case& c, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vector> out;
  while (out.size() < count) {
    Vector x = sample_box(rng, c.safe_radius);
    if (member_vk(c.cert, x)) out.push_back(std::move(x));
  }
  return out;
}

// Explicit max over the precomputed orbit.
double formula_value(const Certificate& cert, const Vector& x) {
  std::vector<Vector> orbit{x};
  for (std::size_t i = 0; i < cert.depth(); ++i) orbit.push_back((*cert.system())(orbit.back()));
  double value = cert.v0().eval(orbit.back());
  for (std::size_t i = 0; i < cert.depth(); ++i) value = std::max(value, cert.theta().eval(orbit[i]));
  return value;
}

bool recursion_member(const Certificate& cert, std::size_t k, Vector x) {
  for (std::size_t i = 0; i < k; ++i) {
    if (!(cert.theta().eval(x) <= 1.0)) return false;
    x = (*cert.system())(x);
  }
  return cert.v0().eval(x) <= 1.0;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    m = std::max(m, std::fabs(a.entries()[i] - b.entries()[i]));
  return m;
}

void criterion1() {
  Matrix p;
  const double ms = best_ms(5, [&] { p = solve_dlyap(kTwoMachineA, Matrix::identity(2)); });
  Outcome o;
  const double err = max_abs_diff(p, kTwoMachineP);
  o.require(err <= 1e-3, "max |P - P_ref| = " + fmt("%.2e", err) + " <= 1e-3");
  report(1, "two-machine P reproduction", o, ms, 1.0);
}

void criterion2() {
  Outcome o;
  const auto t0 = Clock::now();
  const bench::Benchmark b = bench::two_machine();
  const InitialRoaReport r = build_initial_roa(*b.system, b.default_box, Matrix::identity(2), 0.01);
  const DecreaseCheck check = verify_lyapunov_decrease(r, *b.system, 10000);
  const double ms = ms_since(t0);
  o.require(r.c >= 0.75 * kTwoMachineC && r.c <= 1.25 * kTwoMachineC,
            "c = " + fmt("%.6g", r.c) + " in [" + fmt("%.6g", 0.75 * kTwoMachineC) + ", " +
                fmt("%.6g", 1.25 * kTwoMachineC) + "]");
  o.require(check.passed && check.samples == 10000, "10000-sample decrease check");
  report(2, "two-machine initial level", o, ms, 1000.0);
}

void criterion3(const Case& tm) {
  Outcome o;
  bool a = false, b = true, c = true;
  const double ms = best_ms(5, [&] {
    a = member_vk(tm.cert, Vector{1.0, -0.2});
    b = member_vk(tm.cert, Vector{-0.2, 0.5});
    c = member_vk(tm.cert, Vector{-1.0, 0.0});
  });
  o.require(a, "(1,-0.2) in V_80");
  o.require(b, "(-0.2,0.5) in V_80");
  o.require(!c, "(-1,0) not in V_80");
  report(3, "two-machine verdicts at k = 80", o, ms, 10.0);
}

void criterion4() {
  Outcome o;
  const auto t0 = Clock::now();
  const bench::Benchmark b = bench::cart_pole_closed_loop();
  const InitialRoaReport r = build_initial_roa(*b.system, b.default_box, Matrix::identity(4), 0.01);
  const DecreaseCheck check = verify_lyapunov_decrease(r, *b.system, 10000);
  const double ms = ms_since(t0);
  double rel = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      rel = std::max(rel, std::fabs(r.p(i, j) - kCartPoleP(i, j)) / std::fabs(kCartPoleP(i, j)));
  o.require(rel <= 1e-2, "max relative P error = " + fmt("%.2e", rel) + " <= 1e-2");
  o.require(r.c >= 0.75 * kCartPoleC && r.c <= 1.25 * kCartPoleC,
            "c = " + fmt("%.6g", r.c) + " (c1 = " + fmt("%.6g", r.c1) + ", c2 = " + fmt("%.6g", r.c2) +
                ") in [" + fmt("%.6g", 0.75 * kCartPoleC) + ", " + fmt("%.6g", 1.25 * kCartPoleC) + "]");
  o.require(check.passed && check.samples == 10000, "10000-sample decrease check");
  report(4, "cart-pole P and initial level", o, ms, 2000.0);
}

void criterion5(const Case& cp) {
  Outcome o;
  bool a = false, b = true;
  const double ms = best_ms(5, [&] {
    a = member_vk(cp.cert, Vector{0.1, -0.02, 0.0, 0.0});
    b = member_vk(cp.cert, Vector{-0.05, -0.05, 0.0, 0.0});
  });
  o.require(a, "(0.1,-0.02,0,0) in V_60");
  o.require(!b, "(-0.05,-0.05,0,0) not in V_60");
  report(5, "cart-pole verdicts at k = 60", o, ms, 10.0);
}

void criterion6(const std::vector<const Case*>& cases) {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t mono = 0, equiv = 0, chain = 0, attraction = 0, invariance = 0;
  for (const Case* c : cases) {
    std::mt19937_64 rng(0xacce97);
    // (a)
    std::uniform_int_distribution<std::size_t> depth(0, 40);
    for (int t = 0; t < 1000; ++t) {
      const Vector x = sample_box(rng, c->safe_radius);
      const std::size_t k = depth(rng);
      if (member_vk(c->cert.with_depth(k), x) && !member_vk(c->cert.with_depth(k + 1), x)) ++mono;
    }
    // (b)
    for (int t = 0; t < 1000; ++t) {
      const Vector x = sample_box(rng, c->safe_radius, 1.5);
      const double expected = formula_value(c->cert, x), got = eval_vk(c->cert, x);
      const bool same = std::isinf(expected) ? std::isinf(got)
                                             : std::fabs(got - expected) <= 1e-12 * std::fabs(expected);
      if (!same) ++equiv;
    }
    // (c)
    std::vector<LevelFunction> oracle{c->cert.v0()};
    for (std::size_t k = 1; k <= 6; ++k)
      oracle.push_back(preimage_intersect(oracle.back(), c->cert.theta(), c->cert.system()));
    for (int t = 0; t < 500; ++t) {
      const Vector x = sample_box(rng, c->safe_radius, t % 2 == 0 ? 1.0 : 0.1);
      for (std::size_t k = 0; k <= 6; ++k) {
        const bool got = member_vk(c->cert.with_depth(k), x);
        if (got != oracle[k].member(x) || got != recursion_member(c->cert, k, x)) ++chain;
      }
    }
    // (d)
    for (const Vector& x : member_samples(*c, 1000, 0xd0a)) {
      const SafetyVerdict v =
          check_safe_attraction(simulate(*c->cert.system(), x, c->horizon), c->cert.theta(), 1e-3);
      if (!v.safe || !v.attracted) ++attraction;
    }
    // (e)
    for (const Vector& x : member_samples(*c, 500, 0xe)) {
      if (!member_vk(c->cert, (*c->cert.system())(x))) ++invariance;
    }
  }
  const double ms = ms_since(t0);
  const auto count = [](std::size_t n) { return std::to_string(n) + " violations"; };
  o.require(mono == 0, "(a) monotonicity " + count(mono));
  o.require(equiv == 0, "(b) formula equivalence " + count(equiv));
  o.require(chain == 0, "(c) chain/recursion oracles " + count(chain));
  o.require(attraction == 0, "(d) safe attraction " + count(attraction));
  o.require(invariance == 0, "(e) invariance " + count(invariance));
  report(6, "property suite", o, ms, 60000.0);
}

void criterion7(const Case& tm, const Case& cp) {
  struct Section {
    const Case* c;
    std::vector<std::size_t> depths;
    GridSpec spec;
  };
  const auto spec = [](std::size_t ai, std::size_t aj, double ri, double rj, std::size_t n) {
    GridSpec s;
    s.axis_i = ai;
    s.axis_j = aj;
    s.fixed = Vector(n, 0.0);
    s.lo_i = -ri, s.hi_i = ri, s.lo_j = -rj, s.hi_j = rj;
    s.n_i = 201, s.n_j = 201;
    return s;
  };
  const std::vector<Section> sections{
      {&tm, {0, 30, 60, 80}, spec(0, 1, 1.0, 0.5, 2)},
      {&cp, {0, 10, 30, 60}, spec(0, 1, 0.1, 0.1, 4)},
      {&cp, {0, 10, 30, 60}, spec(2, 3, pi / 4.0, 0.1, 4)},
  };
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t not_nested = 0, outside = 0, empty = 0;
  for (const Section& s : sections) {
    std::vector<unsigned char> previous;
    for (std::size_t k : s.depths) {
      const Grid g = grid_section(s.c->cert.with_depth(k), s.spec, 0);
      if (g.member_count() == 0) ++empty;
      for (std::size_t a = 0; a < s.spec.n_i; ++a) {
        for (std::size_t b = 0; b < s.spec.n_j; ++b) {
          const std::size_t idx = a * s.spec.n_j + b;
          if (!previous.empty() && previous[idx] && !g.members[idx]) ++not_nested;
          if (g.members[idx]) {
            Vector x = s.spec.fixed;
            x[s.spec.axis_i] = s.spec.coord_i(a);
            x[s.spec.axis_j] = s.spec.coord_j(b);
            if (!s.c->cert.theta().member(x)) ++outside;
          }
        }
      }
      previous = g.members;
    }
  }
  const double ms = ms_since(t0);
  o.require(not_nested == 0, "nesting " + std::to_string(not_nested) + " violations");
  o.require(outside == 0, "containment in X " + std::to_string(outside) + " violations");
  o.require(empty == 0, "nonempty regions");
  report(7, "201x201 section regeneration", o, ms, 30000.0);
}

}  // namespace

int main() {
  try {
    const Case tm = make_case(bench::two_machine(), 80, {1.0, 0.5}, 400);
    const Case cp = make_case(bench::cart_pole_closed_loop(), 60, {0.1, 0.1, pi / 4.0, 0.1}, 600);
    criterion1();
    criterion2();
    criterion3(tm);
    criterion4();
    criterion5(cp);
    criterion6({&tm, &cp});
    criterion7(tm, cp);
  } catch (const std::exception& e) {
    std::printf("[FAIL] acceptance aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%d of 7 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
