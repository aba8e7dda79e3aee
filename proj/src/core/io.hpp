// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

#include "core/brs.hpp"
#include "core/initroa.hpp"
#include "core/sets.hpp"

namespace doa::io {

inline constexpr std::string_view kFormatVersion = "1";

// 17 significant digits ("%.17g"); non-finite values print as inf/-inf/nan.
std::string format_double(double v);

// On-disk certificate: enough to rebuild (theta, v, k) and the system, plus
// the full initial-region report for audit.
struct CertificateFile {
  std::string format_version{kFormatVersion};
  std::string system;
  Vector parameters;  // system construction parameters (cart-pole gain)
  LevelFunction theta;
  InitialRoaReport report;
  std::size_t depth = 0;
  bool certified = true;
};

CertificateFile make_certificate_file(const SystemModel& sys, const LevelFunction& theta,
                                      const InitialRoaReport& report, std::size_t depth);

std::string level_function_json(const LevelFunction& fn);  // MaxCompose is rejected
std::string certificate_json(const CertificateFile& file);
CertificateFile parse_certificate(std::string_view text);

void save_certificate(const CertificateFile& file, const std::string& path);
CertificateFile load_certificate(const std::string& path);

// Rebuilds the system by name and assembles the implicit certificate.
Certificate to_certificate(const CertificateFile& file);

// Header "i,j,x_i,x_j,value,member"; one row per cell in row-major order; LF.
void write_grid_csv(const Grid& grid, std::ostream& out);

// Header "step,x1,...,xn,theta"; LF.
void write_trajectory_csv(const Trajectory& traj, const LevelFunction& theta, std::ostream& out);

}  // namespace doa::io
