// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ACMS2D_ASSEMBLY_HPP
#define ACMS2D_ASSEMBLY_HPP

#include <functional>

#include "acms2d/hp_space.hpp"
#include "acms2d/linalg.hpp"
#include "acms2d/problem.hpp"

namespace acms {

/// Volume element matrices A_T (stiffness with a) and M_T (mass with kappa^2)
/// in local dof order, orientation signs already applied.
void element_matrices(const HpSpace& space, const HelmholtzProblem& problem, int t,
                      const ReferenceElement::Tabulation& tab, DenseMatrix<double>& a_mat,
                      DenseMatrix<double>& m_mat);

/// S_F = A - M - i*B assembled per subdomain (boundary facets contribute to
/// their unique owning subdomain) plus the global merge.
struct SesquilinearAssembly {
  // block j is indexed by HpSpace::subdomain(j).dofs
  std::vector<CsrMatrix<Complex>> subdomain_blocks;
  CsrMatrix<Complex> global;
};

SesquilinearAssembly assemble_fem(const HpSpace& space, const HelmholtzProblem& problem);

std::vector<Complex> assemble_rhs(const HpSpace& space, const HelmholtzProblem& problem);

/// Outward unit normal of a boundary marker on the rectangular domain.
Point boundary_normal(int marker);

// --- field measures -------------------------------------------------------

double l2_norm(const HpSpace& space, const std::vector<Complex>& coeffs);

struct ErrorResult {
  double ref_norm = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
};

/// L2 distance to a closed-form reference, quadrature degree 2p+2.
ErrorResult l2_error_vs(const HpSpace& space, const std::vector<Complex>& coeffs,
                        const std::function<Complex(Point)>& exact);

/// L2 distance between two fields on the same mesh (orders may differ).
ErrorResult l2_error_between(const HpSpace& space_a, const std::vector<Complex>& ua,
                             const HpSpace& space_b, const std::vector<Complex>& ub);

}  // namespace acms

#endif
