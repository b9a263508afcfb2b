// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#include "acms2d/quadrature.hpp"

#include <array>
#include <mutex>

#include "acms2d/errors.hpp"
#include "acms2d/legendre.hpp"

namespace acms {

namespace {

TriangleRule make_triangle_rule(int degree) {
  TriangleRule rule;
  if (degree <= 1) {
    rule.x = {1.0 / 3.0};
    rule.y = {1.0 / 3.0};
    rule.w = {0.5};
    return rule;
  }
  // Collapsed tensor rule: x = a(1-b), y = b with Jacobian (1-b). The factor
  // (1-b) raises the b-degree by one, hence n = ceil((degree+2)/2).
  const int n = (degree + 3) / 2;
  std::vector<double> gp, gw;
  gauss_legendre_01(n, gp, gw);
  rule.x.reserve(n * n);
  rule.y.reserve(n * n);
  rule.w.reserve(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double a = gp[i], b = gp[j];
      rule.x.push_back(a * (1.0 - b));
      rule.y.push_back(b);
      rule.w.push_back(gw[i] * gw[j] * (1.0 - b));
    }
  return rule;
}

IntervalRule make_interval_rule(int degree) {
  IntervalRule rule;
  const int n = degree / 2 + 1;  // exact through 2n-1 >= degree
  gauss_legendre_01(n, rule.t, rule.w);
  return rule;
}

std::array<TriangleRule, kMaxQuadDegree + 1> tri_cache;
std::array<IntervalRule, kMaxQuadDegree + 1> int_cache;
std::array<std::once_flag, kMaxQuadDegree + 1> tri_once;
std::array<std::once_flag, kMaxQuadDegree + 1> int_once;

}  // namespace

const TriangleRule& triangle_rule(int target_degree) {
  if (target_degree < 0 || target_degree > kMaxQuadDegree)
    throw ConfigError("triangle_rule: unsupported degree " + std::to_string(target_degree));
  std::call_once(tri_once[target_degree],
                 [&] { tri_cache[target_degree] = make_triangle_rule(target_degree); });
  return tri_cache[target_degree];
}

const IntervalRule& interval_rule(int target_degree) {
  if (target_degree < 0 || target_degree > kMaxQuadDegree)
    throw ConfigError("interval_rule: unsupported degree " + std::to_string(target_degree));
  std::call_once(int_once[target_degree],
                 [&] { int_cache[target_degree] = make_interval_rule(target_degree); });
  return int_cache[target_degree];
}

}  // namespace acms
