// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/brs.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "core/error.hpp"

namespace doa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDivergence = 1e12;

bool finite(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

void require_dim(const SystemModel& sys, std::span<const double> x) {
  if (x.size() != sys.dim)
    fail(ErrorCode::DimensionMismatch, "point has dimension " + std::to_string(x.size()) +
                                           ", system '" + sys.name + "' has " + std::to_string(sys.dim));
}

}  // namespace

Certificate::Certificate(LevelFunction theta, LevelFunction v0, std::size_t depth, SystemPtr sys,
                         bool certified)
    : theta_(std::move(theta)), v0_(std::move(v0)), depth_(depth), sys_(std::move(sys)),
      certified_(certified) {
  if (!sys_) fail(ErrorCode::InvalidArgument, "certificate needs a system");
  if (theta_.dim() != sys_->dim || v0_.dim() != sys_->dim)
    fail(ErrorCode::DimensionMismatch, "theta, v and the system disagree on dimension");
}

Certificate Certificate::with_depth(std::size_t depth) const {
  Certificate out = *this;
  out.depth_ = depth;
  return out;
}

double eval_vk(const Certificate& cert, std::span<const double> x) {
  const SystemModel& f = *cert.system();
  require_dim(f, x);
  if (!finite(x)) return kInf;
  Vector y(x.begin(), x.end());
  double value = -kInf;
  for (std::size_t i = 0; i < cert.depth(); ++i) {
    value = std::max(value, cert.theta().eval(y));
    y = f(y);
    if (!finite(y)) return kInf;
  }
  const double tail = cert.v0().eval(y);
  if (std::isnan(value) || std::isnan(tail)) return kInf;
  return std::max(value, tail);
}

bool member_vk(const Certificate& cert, std::span<const double> x) {
  return eval_vk(cert, x) <= 1.0;
}

std::optional<std::size_t> certificate_depth(const LevelFunction& theta, const LevelFunction& v0,
                                             const SystemModel& sys, std::span<const double> x,
                                             std::size_t k_max) {
  require_dim(sys, x);
  // x is in V_k iff theta(phi(i)) <= 1 for all i < k and v(phi(k)) <= 1.
  Vector y(x.begin(), x.end());
  for (std::size_t k = 0;; ++k) {
    if (v0.eval(y) <= 1.0) return k;
    if (k == k_max || !(theta.eval(y) <= 1.0)) return std::nullopt;
    y = sys(y);
    if (!finite(y)) return std::nullopt;
  }
}

Trajectory simulate(const SystemModel& sys, std::span<const double> x0, std::size_t steps) {
  require_dim(sys, x0);
  Trajectory traj;
  traj.states.reserve(steps + 1);
  traj.states.emplace_back(x0.begin(), x0.end());
  for (std::size_t s = 0; s < steps; ++s) {
    Vector next = sys(traj.states.back());
    const bool blown = std::any_of(next.begin(), next.end(), [](double v) {
      return !std::isfinite(v) || std::fabs(v) > kDivergence;
    });
    traj.states.push_back(std::move(next));
    if (blown) {
      traj.diverged = true;
      break;
    }
  }
  return traj;
}

SafetyVerdict check_safe_attraction(const Trajectory& traj, const LevelFunction& theta,
                                    double conv_tol) {
  if (traj.states.empty()) fail(ErrorCode::InvalidArgument, "empty trajectory");
  SafetyVerdict out;
  for (std::size_t j = 0; j < traj.states.size(); ++j) {
    if (!(theta.eval(traj.states[j]) <= 1.0 + 1e-12)) {
      out.first_violation = j;
      break;
    }
  }
  out.safe = !out.first_violation.has_value();
  out.attracted = !traj.diverged && norm2(traj.states.back()) < conv_tol;
  return out;
}

double GridSpec::coord_i(std::size_t a) const {
  return lo_i + (hi_i - lo_i) * static_cast<double>(a) / static_cast<double>(n_i - 1);
}

double GridSpec::coord_j(std::size_t b) const {
  return lo_j + (hi_j - lo_j) * static_cast<double>(b) / static_cast<double>(n_j - 1);
}

std::size_t Grid::member_count() const {
  return static_cast<std::size_t>(std::count(members.begin(), members.end(), 1));
}

Grid grid_section(const Certificate& cert, const GridSpec& spec, unsigned threads) {
  const std::size_t n = cert.dim();
  if (spec.axis_i >= n || spec.axis_j >= n)
    fail(ErrorCode::DimensionMismatch, "section axis out of range for dimension " + std::to_string(n));
  if (spec.axis_i == spec.axis_j) fail(ErrorCode::InvalidArgument, "section axes must differ");
  if (spec.n_i < 2 || spec.n_j < 2) fail(ErrorCode::InvalidArgument, "grid resolution must be at least 2");
  if (spec.fixed.size() != n)
    fail(ErrorCode::DimensionMismatch, "fixed coordinates must have length " + std::to_string(n));
  if (!(spec.lo_i <= spec.hi_i) || !(spec.lo_j <= spec.hi_j))
    fail(ErrorCode::InvalidArgument, "grid range is empty");

  const std::size_t cells = spec.n_i * spec.n_j;
  Grid grid{spec, std::vector<double>(cells), std::vector<unsigned char>(cells)};

  const auto run_cell = [&](std::size_t idx) {
    Vector x = spec.fixed;
    x[spec.axis_i] = spec.coord_i(idx / spec.n_j);
    x[spec.axis_j] = spec.coord_j(idx % spec.n_j);
    const double value = eval_vk(cert, x);
    grid.values[idx] = value;
    grid.members[idx] = value <= 1.0 ? 1 : 0;
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, cells));
  if (workers <= 1) {
    for (std::size_t idx = 0; idx < cells; ++idx) run_cell(idx);
    return grid;
  }

  // Cells are handed out in chunks; each cell writes only its own slot.
  constexpr std::size_t kChunk = 256;
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (;;) {
            const std::size_t begin = next.fetch_add(kChunk);
            if (begin >= cells) return;
            const std::size_t end = std::min(cells, begin + kChunk);
            for (std::size_t idx = begin; idx < end; ++idx) run_cell(idx);
          }
        } catch (...) {
          const std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = cells;
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
  return grid;
}

}  // namespace doa
