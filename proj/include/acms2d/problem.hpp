// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ACMS2D_PROBLEM_HPP
#define ACMS2D_PROBLEM_HPP

#include <complex>
#include <map>
#include <string>

#include "acms2d/geometry.hpp"

namespace acms {

using Complex = std::complex<double>;

/// Boundary source g(x, n) of the impedance condition a du/dn - i w beta u = g.
struct BoundarySource {
  enum class Kind {
    kZero,
    // g = a du/dn - i w beta u for the exact plane wave u = exp(-i k d.x);
    // turns the plane wave into a manufactured solution.
    kPlaneWaveTrace,
    // g = i k (1 - (1,0).n) exp(-i k x): plane wave entering from the left.
    kIncomingPlaneWave,
    // g = i k exp(-i k x) exp(-y^2) on one side of the boundary, 0 elsewhere.
    kGaussianWindowed,
  };

  Kind kind = Kind::kZero;
  double dir_x = 1.0, dir_y = 0.0;  // plane-wave direction (unit length)
  double kappa = 1.0;
  int window_marker = kLeft;
  // coefficients entering the manufactured trace
  double a = 1.0, beta = 1.0, omega = 1.0;

  static BoundarySource zero();
  static BoundarySource plane_wave_trace(double dx, double dy, double kappa, double a,
                                         double beta, double omega);
  static BoundarySource incoming_plane_wave(double kappa);
  static BoundarySource gaussian_windowed(double kappa, int window_marker = kLeft);

  Complex eval(Point x, Point normal, int marker) const;

  /// Exact field for kPlaneWaveTrace; throws for other kinds.
  Complex exact_plane_wave(Point x) const;
};

/// Coefficients of the heterogeneous Helmholtz problem
///   -div(a grad u) - kappa^2 u = 0,  a du/dn - i w beta u = g,
/// with a, c piecewise constant per material tag, kappa = omega / c, and beta
/// piecewise constant per boundary marker. Volume sources are out of scope;
/// the interior right-hand side is identically zero.
class HelmholtzProblem {
 public:
  HelmholtzProblem(std::map<int, double> a_by_tag, std::map<int, double> c_by_tag, double omega,
                   std::map<int, double> beta_by_marker, BoundarySource source);

  double a(int material_tag) const;
  double c(int material_tag) const;
  double kappa(int material_tag) const { return omega_ / c(material_tag); }
  double kappa_sq(int material_tag) const {
    const double k = kappa(material_tag);
    return k * k;
  }
  double omega() const { return omega_; }
  double beta(int marker) const;
  const BoundarySource& source() const { return source_; }

  Complex eval_g(Point x, Point normal, int marker) const {
    return source_.eval(x, normal, marker);
  }

  bool constant_coefficients() const;

 private:
  std::map<int, double> a_by_tag_, c_by_tag_;
  double omega_;
  std::map<int, double> beta_by_marker_;
  BoundarySource source_;
};

}  // namespace acms

#endif
