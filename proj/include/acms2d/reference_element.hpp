// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ACMS2D_REFERENCE_ELEMENT_HPP
#define ACMS2D_REFERENCE_ELEMENT_HPP

#include <array>
#include <vector>

#include "acms2d/quadrature.hpp"

namespace acms {

/// Hierarchical shape functions of order p on the reference triangle
/// {x, y >= 0, x + y <= 1} with barycentric coordinates
/// (l0, l1, l2) = (1-x-y, x, y).
///
/// Local dof layout:
///   0..2                N_v = l_v (vertex hats)
///   3 + e*(p-1) + k-2   edge e in {(0,1), (1,2), (2,0)}, degree k = 2..p:
///                       l_a l_b * kernel_{k-2}(l_b - l_a)
///   3 + 3*(p-1) + idx   interior bubbles l0 l1 l2 L_i(l1-l0) L_j(2 l2 - 1),
///                       i + j <= p-3, ordered by (i+j, i)
///
/// The trace of an edge function on its own edge equals the 1D hierarchical
/// function of the same degree; edge functions vanish on the two other edges
/// and all non-vertex functions vanish at every vertex.
class ReferenceElement {
 public:
  explicit ReferenceElement(int p);

  int order() const { return p_; }
  int ndof() const { return ndof_; }
  int bubble_count() const { return (p_ - 1) * (p_ - 2) / 2; }
  static std::array<std::array<int, 2>, 3> edge_vertices() { return {{{0, 1}, {1, 2}, {2, 0}}}; }

  void eval(double x, double y, std::vector<double>& values) const;
  void eval_grad(double x, double y, std::vector<double>& values,
                 std::vector<std::array<double, 2>>& grads) const;

  struct Tabulation {
    int npts = 0, ndof = 0;
    std::vector<double> values;  // [q * ndof + i]
    std::vector<double> grad_x;
    std::vector<double> grad_y;
    std::vector<double> weights;
    double value(int q, int i) const { return values[std::size_t(q) * ndof + i]; }
    double gx(int q, int i) const { return grad_x[std::size_t(q) * ndof + i]; }
    double gy(int q, int i) const { return grad_y[std::size_t(q) * ndof + i]; }
  };
  Tabulation tabulate(const TriangleRule& rule) const;

 private:
  int p_;
  int ndof_;
};

/// Hierarchical 1D shape functions on [0,1]: N_0 = 1-t, N_1 = t and
/// N_k = l_k(2t-1) for k = 2..p. These equal the traces of the 2D functions
/// along an edge traversed from its first to its second vertex.
class ReferenceInterval {
 public:
  explicit ReferenceInterval(int p);

  int order() const { return p_; }
  int ndof() const { return p_ + 1; }

  void eval(double t, std::vector<double>& values) const;
  void eval_deriv(double t, std::vector<double>& values, std::vector<double>& derivs) const;

  struct Tabulation {
    int npts = 0, ndof = 0;
    std::vector<double> values;
    std::vector<double> derivs;
    std::vector<double> weights;
    double value(int q, int i) const { return values[std::size_t(q) * ndof + i]; }
    double deriv(int q, int i) const { return derivs[std::size_t(q) * ndof + i]; }
  };
  Tabulation tabulate(const IntervalRule& rule) const;

 private:
  int p_;
};

}  // namespace acms

#endif
