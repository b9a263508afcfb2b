// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#include "acms2d/problem.hpp"

#include <cmath>

#include "acms2d/errors.hpp"

namespace acms {

namespace {
constexpr Complex kI{0.0, 1.0};
}

BoundarySource BoundarySource::zero() { return {}; }

BoundarySource BoundarySource::plane_wave_trace(double dx, double dy, double kappa, double a,
                                                double beta, double omega) {
  const double norm = std::hypot(dx, dy);
  if (std::abs(norm - 1.0) > 1e-14)
    throw ConfigError("plane_wave_trace: direction must be unit length");
  BoundarySource s;
  s.kind = Kind::kPlaneWaveTrace;
  s.dir_x = dx;
  s.dir_y = dy;
  s.kappa = kappa;
  s.a = a;
  s.beta = beta;
  s.omega = omega;
  return s;
}

BoundarySource BoundarySource::incoming_plane_wave(double kappa) {
  BoundarySource s;
  s.kind = Kind::kIncomingPlaneWave;
  s.kappa = kappa;
  return s;
}

BoundarySource BoundarySource::gaussian_windowed(double kappa, int window_marker) {
  BoundarySource s;
  s.kind = Kind::kGaussianWindowed;
  s.kappa = kappa;
  s.window_marker = window_marker;
  return s;
}

Complex BoundarySource::exact_plane_wave(Point p) const {
  if (kind != Kind::kPlaneWaveTrace)
    throw ConfigError("exact_plane_wave: source is not a manufactured plane wave");
  return std::exp(-kI * kappa * (dir_x * p.x + dir_y * p.y));
}

Complex BoundarySource::eval(Point x, Point n, int marker) const {
  switch (kind) {
    case Kind::kZero:
      return {};
    case Kind::kPlaneWaveTrace: {
      // u = exp(-i k d.x): a du/dn - i w beta u = (-i k a d.n - i w beta) u
      const Complex u = std::exp(-kI * kappa * (dir_x * x.x + dir_y * x.y));
      const double dn = dir_x * n.x + dir_y * n.y;
      return (-kI * kappa * a * dn - kI * omega * beta) * u;
    }
    case Kind::kIncomingPlaneWave:
      return kI * kappa * (1.0 - n.x) * std::exp(-kI * kappa * x.x);
    case Kind::kGaussianWindowed:
      if (marker != window_marker) return {};
      return kI * kappa * std::exp(-kI * kappa * x.x) * std::exp(-x.y * x.y);
  }
  return {};
}

HelmholtzProblem::HelmholtzProblem(std::map<int, double> a_by_tag, std::map<int, double> c_by_tag,
                                   double omega, std::map<int, double> beta_by_marker,
                                   BoundarySource source)
    : a_by_tag_(std::move(a_by_tag)),
      c_by_tag_(std::move(c_by_tag)),
      omega_(omega),
      beta_by_marker_(std::move(beta_by_marker)),
      source_(std::move(source)) {
  if (!(omega_ > 0.0)) throw ConfigError("problem: omega must be positive");
  if (a_by_tag_.empty() || c_by_tag_.empty())
    throw ConfigError("problem: coefficient maps must not be empty");
  for (const auto& [tag, v] : a_by_tag_)
    if (!(v > 0.0))
      throw ConfigError("problem: coefficient a must be positive (tag " + std::to_string(tag) +
                        ")");
  for (const auto& [tag, v] : c_by_tag_)
    if (!(v > 0.0))
      throw ConfigError("problem: coefficient c must be positive (tag " + std::to_string(tag) +
                        ")");
  if (beta_by_marker_.empty()) throw ConfigError("problem: beta map must not be empty");
  bool pos = false, neg = false;
  for (const auto& [m, v] : beta_by_marker_) {
    if (v > 0.0) pos = true;
    else if (v < 0.0) neg = true;
    else throw ConfigError("problem: beta must be nonzero");
  }
  if (pos && neg) throw ConfigError("problem: beta must be sign-definite across markers");
}

double HelmholtzProblem::a(int tag) const {
  auto it = a_by_tag_.find(tag);
  if (it == a_by_tag_.end())
    throw ConfigError("problem: no coefficient a for material tag " + std::to_string(tag));
  return it->second;
}

double HelmholtzProblem::c(int tag) const {
  auto it = c_by_tag_.find(tag);
  if (it == c_by_tag_.end())
    throw ConfigError("problem: no coefficient c for material tag " + std::to_string(tag));
  return it->second;
}

double HelmholtzProblem::beta(int marker) const {
  auto it = beta_by_marker_.find(marker);
  if (it == beta_by_marker_.end())
    throw ConfigError("problem: no beta for boundary marker " + std::to_string(marker));
  return it->second;
}

bool HelmholtzProblem::constant_coefficients() const {
  double a0 = a_by_tag_.begin()->second;
  double c0 = c_by_tag_.begin()->second;
  for (const auto& [t, v] : a_by_tag_)
    if (v != a0) return false;
  for (const auto& [t, v] : c_by_tag_)
    if (v != c0) return false;
  return true;
}

}  // namespace acms
