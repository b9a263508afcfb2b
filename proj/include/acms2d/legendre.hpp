// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ACMS2D_LEGENDRE_HPP
#define ACMS2D_LEGENDRE_HPP

#include <vector>

namespace acms {

/// Values L_0(x)..L_n(x) of the Legendre polynomials.
void legendre_values(int n, double x, std::vector<double>& out);

/// First derivatives L_0'..L_n'.
void legendre_derivs(int n, double x, std::vector<double>& out);

/// Second derivatives L_0''..L_n''.
void legendre_derivs2(int n, double x, std::vector<double>& out);

/// Integrated Legendre ("Lobatto") function l_k on [-1,1], k >= 2:
///   l_k(x) = (L_k(x) - L_{k-2}(x)) / sqrt(2(2k-1)),
/// vanishing at both endpoints. l_k' = sqrt((2k-1)/2) L_{k-1}.
double lobatto_value(int k, double x);
double lobatto_deriv(int k, double x);

/// Edge kernel phi_j, j >= 0, defined by l_{j+2}(x) = (1-x^2)/4 * phi_j(x).
/// Stable closed form: phi_j(x) = -4 sqrt((2j+3)/2) / ((j+2)(j+1)) * L'_{j+1}(x).
double edge_kernel_value(int j, double x);
double edge_kernel_deriv(int j, double x);

/// Gauss-Legendre rule with n points on [0,1]; exact through degree 2n-1.
void gauss_legendre_01(int n, std::vector<double>& points, std::vector<double>& weights);

}  // namespace acms

#endif
