// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#include "acms2d/legendre.hpp"

#include <cmath>

#include "acms2d/errors.hpp"

namespace acms {

void legendre_values(int n, double x, std::vector<double>& out) {
  out.resize(n + 1);
  out[0] = 1.0;
  if (n == 0) return;
  out[1] = x;
  for (int k = 1; k < n; ++k)
    out[k + 1] = ((2 * k + 1) * x * out[k] - k * out[k - 1]) / (k + 1);
}

void legendre_derivs(int n, double x, std::vector<double>& out) {
  std::vector<double> v;
  legendre_values(n, x, v);
  out.resize(n + 1);
  out[0] = 0.0;
  if (n == 0) return;
  out[1] = 1.0;
  // (k+1) L'_{k+1} = (2k+1)(L_k + x L'_k) - k L'_{k-1}
  for (int k = 1; k < n; ++k)
    out[k + 1] = ((2 * k + 1) * (v[k] + x * out[k]) - k * out[k - 1]) / (k + 1);
}

void legendre_derivs2(int n, double x, std::vector<double>& out) {
  std::vector<double> d;
  legendre_derivs(n, x, d);
  out.resize(n + 1);
  out[0] = 0.0;
  if (n == 0) return;
  out[1] = 0.0;
  // (k+1) L''_{k+1} = (2k+1)(2 L'_k + x L''_k) - k L''_{k-1}
  for (int k = 1; k < n; ++k)
    out[k + 1] = ((2 * k + 1) * (2.0 * d[k] + x * out[k]) - k * out[k - 1]) / (k + 1);
}

double lobatto_value(int k, double x) {
  std::vector<double> v;
  legendre_values(k, x, v);
  return (v[k] - v[k - 2]) / std::sqrt(2.0 * (2 * k - 1));
}

double lobatto_deriv(int k, double x) {
  std::vector<double> v;
  legendre_values(k - 1, x, v);
  return std::sqrt((2 * k - 1) / 2.0) * v[k - 1];
}

double edge_kernel_value(int j, double x) {
  const int k = j + 2;
  std::vector<double> d;
  legendre_derivs(k - 1, x, d);
  return -4.0 * std::sqrt((2 * k - 1) / 2.0) / (double(k) * (k - 1)) * d[k - 1];
}

double edge_kernel_deriv(int j, double x) {
  const int k = j + 2;
  std::vector<double> d2;
  legendre_derivs2(k - 1, x, d2);
  return -4.0 * std::sqrt((2 * k - 1) / 2.0) / (double(k) * (k - 1)) * d2[k - 1];
}

void gauss_legendre_01(int n, std::vector<double>& points, std::vector<double>& weights) {
  if (n < 1) throw ConfigError("gauss_legendre_01: need at least one point");
  points.resize(n);
  weights.resize(n);
  std::vector<double> v, d;
  for (int i = 0; i < n; ++i) {
    // Newton from the Chebyshev-based initial guess; roots ordered ascending.
    double x = -std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      legendre_values(n, x, v);
      legendre_derivs(n, x, d);
      double dx = v[n] / d[n];
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre_derivs(n, x, d);
    points[i] = 0.5 * (x + 1.0);
    weights[i] = 1.0 / ((1.0 - x * x) * d[n] * d[n]);
  }
}

}  // namespace acms
