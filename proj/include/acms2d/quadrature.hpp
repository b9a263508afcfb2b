// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ACMS2D_QUADRATURE_HPP
#define ACMS2D_QUADRATURE_HPP

#include <vector>

namespace acms {

inline constexpr int kMaxOrder = 10;            // largest supported element order p
inline constexpr int kMaxQuadDegree = 2 * kMaxOrder + 2;

/// Quadrature rule on the reference triangle {x,y >= 0, x+y <= 1}.
struct TriangleRule {
  std::vector<double> x, y, w;  // weights sum to 1/2
  int size() const { return int(w.size()); }
};

/// Quadrature rule on the reference interval [0,1].
struct IntervalRule {
  std::vector<double> t, w;  // weights sum to 1
  int size() const { return int(w.size()); }
};

/// Rule exact for all polynomials of the given total degree. Degree <= 1 maps
/// to the one-point centroid rule. Throws ConfigError above kMaxQuadDegree.
const TriangleRule& triangle_rule(int target_degree);

const IntervalRule& interval_rule(int target_degree);

}  // namespace acms

#endif
