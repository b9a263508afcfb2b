// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#include "acms2d/reference_element.hpp"

#include <cmath>

#include "acms2d/errors.hpp"
#include "acms2d/legendre.hpp"

namespace acms {

namespace {

// gradients of the barycentric coordinates on the reference triangle
constexpr double kGradL[3][2] = {{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}};

// kernel scaling: phi_j(x) = s_j * L'_{j+1}(x), s_j = -4 sqrt((2j+3)/2)/((j+2)(j+1))
double kernel_scale(int j) {
  const int k = j + 2;
  return -4.0 * std::sqrt((2 * k - 1) / 2.0) / (double(k) * (k - 1));
}

}  // namespace

ReferenceElement::ReferenceElement(int p) : p_(p) {
  if (p < 1 || p > kMaxOrder)
    throw ConfigError("ReferenceElement: order must lie in [1, " + std::to_string(kMaxOrder) +
                      "]");
  ndof_ = 3 + 3 * (p - 1) + (p - 1) * (p - 2) / 2;
}

void ReferenceElement::eval(double x, double y, std::vector<double>& values) const {
  std::vector<std::array<double, 2>> grads;
  eval_grad(x, y, values, grads);
}

void ReferenceElement::eval_grad(double x, double y, std::vector<double>& values,
                                 std::vector<std::array<double, 2>>& grads) const {
  values.assign(ndof_, 0.0);
  grads.assign(ndof_, {0.0, 0.0});
  const double l[3] = {1.0 - x - y, x, y};
  for (int v = 0; v < 3; ++v) {
    values[v] = l[v];
    grads[v] = {kGradL[v][0], kGradL[v][1]};
  }
  if (p_ == 1) return;

  std::vector<double> lv, ld, ld2;
  const auto edges = edge_vertices();
  for (int e = 0; e < 3; ++e) {
    const int a = edges[e][0], b = edges[e][1];
    const double xi = l[b] - l[a];
    legendre_derivs(p_ - 1, xi, ld);
    legendre_derivs2(p_ - 1, xi, ld2);
    const double prod = l[a] * l[b];
    const double px = l[b] * kGradL[a][0] + l[a] * kGradL[b][0];
    const double py = l[b] * kGradL[a][1] + l[a] * kGradL[b][1];
    const double xix = kGradL[b][0] - kGradL[a][0];
    const double xiy = kGradL[b][1] - kGradL[a][1];
    for (int j = 0; j <= p_ - 2; ++j) {
      const double s = kernel_scale(j);
      const double ker = s * ld[j + 1];
      const double kerd = s * ld2[j + 1];
      const int dof = 3 + e * (p_ - 1) + j;
      values[dof] = prod * ker;
      grads[dof] = {px * ker + prod * kerd * xix, py * ker + prod * kerd * xiy};
    }
  }

  if (p_ < 3) return;
  const double bub = l[0] * l[1] * l[2];
  const double bx = l[1] * l[2] * kGradL[0][0] + l[0] * l[2] * kGradL[1][0] +
                    l[0] * l[1] * kGradL[2][0];
  const double by = l[1] * l[2] * kGradL[0][1] + l[0] * l[2] * kGradL[1][1] +
                    l[0] * l[1] * kGradL[2][1];
  const double s = l[1] - l[0];
  const double t = 2.0 * l[2] - 1.0;
  std::vector<double> ls, lsd, lt, ltd;
  legendre_values(p_ - 3, s, ls);
  legendre_derivs(p_ - 3, s, lsd);
  legendre_values(p_ - 3, t, lt);
  legendre_derivs(p_ - 3, t, ltd);
  const double sx = kGradL[1][0] - kGradL[0][0], sy = kGradL[1][1] - kGradL[0][1];
  const double tx = 2.0 * kGradL[2][0], ty = 2.0 * kGradL[2][1];
  int dof = 3 + 3 * (p_ - 1);
  for (int total = 0; total <= p_ - 3; ++total)
    for (int i = 0; i <= total; ++i, ++dof) {
      const int j = total - i;
      const double pij = ls[i] * lt[j];
      values[dof] = bub * pij;
      grads[dof] = {bx * pij + bub * (lsd[i] * sx * lt[j] + ls[i] * ltd[j] * tx),
                    by * pij + bub * (lsd[i] * sy * lt[j] + ls[i] * ltd[j] * ty)};
    }
}

ReferenceElement::Tabulation ReferenceElement::tabulate(const TriangleRule& rule) const {
  Tabulation tab;
  tab.npts = rule.size();
  tab.ndof = ndof_;
  tab.values.resize(std::size_t(tab.npts) * ndof_);
  tab.grad_x.resize(std::size_t(tab.npts) * ndof_);
  tab.grad_y.resize(std::size_t(tab.npts) * ndof_);
  tab.weights = rule.w;
  std::vector<double> v;
  std::vector<std::array<double, 2>> g;
  for (int q = 0; q < tab.npts; ++q) {
    eval_grad(rule.x[q], rule.y[q], v, g);
    for (int i = 0; i < ndof_; ++i) {
      tab.values[std::size_t(q) * ndof_ + i] = v[i];
      tab.grad_x[std::size_t(q) * ndof_ + i] = g[i][0];
      tab.grad_y[std::size_t(q) * ndof_ + i] = g[i][1];
    }
  }
  return tab;
}

ReferenceInterval::ReferenceInterval(int p) : p_(p) {
  if (p < 1 || p > kMaxOrder)
    throw ConfigError("ReferenceInterval: order must lie in [1, " + std::to_string(kMaxOrder) +
                      "]");
}

void ReferenceInterval::eval(double t, std::vector<double>& values) const {
  std::vector<double> derivs;
  eval_deriv(t, values, derivs);
}

void ReferenceInterval::eval_deriv(double t, std::vector<double>& values,
                                   std::vector<double>& derivs) const {
  values.assign(p_ + 1, 0.0);
  derivs.assign(p_ + 1, 0.0);
  values[0] = 1.0 - t;
  derivs[0] = -1.0;
  values[1] = t;
  derivs[1] = 1.0;
  if (p_ == 1) return;
  const double x = 2.0 * t - 1.0;
  std::vector<double> lv;
  legendre_values(p_, x, lv);
  for (int k = 2; k <= p_; ++k) {
    values[k] = (lv[k] - lv[k - 2]) / std::sqrt(2.0 * (2 * k - 1));
    derivs[k] = std::sqrt((2 * k - 1) / 2.0) * lv[k - 1] * 2.0;
  }
}

ReferenceInterval::Tabulation ReferenceInterval::tabulate(const IntervalRule& rule) const {
  Tabulation tab;
  tab.npts = rule.size();
  tab.ndof = p_ + 1;
  tab.values.resize(std::size_t(tab.npts) * tab.ndof);
  tab.derivs.resize(std::size_t(tab.npts) * tab.ndof);
  tab.weights = rule.w;
  std::vector<double> v, d;
  for (int q = 0; q < tab.npts; ++q) {
    eval_deriv(rule.t[q], v, d);
    for (int i = 0; i < tab.ndof; ++i) {
      tab.values[std::size_t(q) * tab.ndof + i] = v[i];
      tab.derivs[std::size_t(q) * tab.ndof + i] = d[i];
    }
  }
  return tab;
}

}  // namespace acms
