// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ACMS2D_ACMS_SYSTEM_HPP
#define ACMS2D_ACMS_SYSTEM_HPP

#include <memory>

#include "acms2d/acms_basis.hpp"

namespace acms {

/// Row-sweep numbering of the ACMS dofs: per vertex row (bottom to top),
/// vertices interleaved with horizontal-edge modes along x, followed by the
/// row's vertical-edge modes along x.
struct AcmsDofMap {
  int ie = 0;
  int n_total = 0;                 // |V| + |E| * ie
  std::vector<int> vertex_dof;     // per decomposition vertex
  std::vector<int> edge_dof0;      // per decomposition edge, modes contiguous
  int declared_bandwidth = 0;      // 3 (max(jx,jy)+2) (ie+1)
};

AcmsDofMap number_dofs(const DomainDecomposition& decomp, const InterfaceGraph& graph, int ie);

/// Per-subdomain block of the ACMS basis: one column per basis function
/// supported on the subdomain (its 4 vertices first, ascending vertex id,
/// then its 4 edges ascending edge id with modes ascending). Columns hold FEM
/// coefficients over subdomain(j).dofs; boundary rows reproduce the trace.
struct BasisMatrix {
  int subdomain = -1;
  DenseMatrix<double> columns;
  std::vector<int> acms_dofs;  // column -> global ACMS dof
  // nonzero trace entries per column, indexed into subdomain(j).boundary_dofs
  std::vector<std::vector<std::pair<int, double>>> trace_entries;
};

BasisMatrix build_basis_matrix(const HpSpace& space, ModeCache& modes,
                               const SubdomainExtension& extension, const AcmsDofMap& dofmap,
                               int j);

struct AcmsLinearSystem {
  BandedMatrix<Complex> s_a;
  std::vector<Complex> g_a;
  int realized_bandwidth = 0;
};

/// S_A = sum_j scatter(B_j^T S_F|_j B_j), g_A = sum_j scatter(B_j^T g_F|_j)
/// with boundary facets of the domain attributed to their owning subdomain.
AcmsLinearSystem assemble_acms(const HpSpace& space, const SesquilinearAssembly& assembly,
                               const AcmsDofMap& dofmap, const std::vector<BasisMatrix>& basis,
                               const HelmholtzProblem& problem);

struct AcmsSolveResult {
  std::vector<Complex> u_acms;
  double residual = 0.0;  // relative linear residual
};

AcmsSolveResult solve_acms(const AcmsLinearSystem& system);

/// Per-subdomain accumulation of B_j u_A into a global FEM coefficient
/// vector; shared trace dofs must agree from both sides (1e-12 tolerance).
std::vector<Complex> reconstruct(const HpSpace& space, const std::vector<BasisMatrix>& basis,
                                 const std::vector<Complex>& u_acms);

struct AcmsTimings {
  double t_bas = 0.0;
  double t_ass = 0.0;
  double t_sol = 0.0;
  double total() const { return t_bas + t_ass + t_sol; }
};

struct AcmsSolution {
  AcmsDofMap dofmap;
  std::vector<Complex> u_acms;
  std::vector<Complex> u_fem;
  AcmsTimings timings;
  int n_f = 0;
  int realized_bandwidth = 0;
  double residual = 0.0;
};

struct AcmsOptions {
  int threads = 1;
};

/// End-to-end driver holding the session caches: edge-mode sets per reuse key
/// and one extension factorization per subdomain. Repeated solves with
/// different mode counts reuse both, so sweeps amortize factorization work.
class AcmsSolver {
 public:
  AcmsSolver(std::shared_ptr<const HpSpace> space, std::shared_ptr<const HelmholtzProblem> problem,
             AcmsOptions options = {});

  /// Largest admissible uniform mode count, min over edges of n_e - 2.
  int max_modes() const;

  AcmsSolution solve(int ie);

  const HpSpace& space() const { return *space_; }
  const SesquilinearAssembly& assembly();

 private:
  void ensure_setup(int ie);

  std::shared_ptr<const HpSpace> space_;
  std::shared_ptr<const HelmholtzProblem> problem_;
  AcmsOptions options_;
  std::unique_ptr<SesquilinearAssembly> assembly_;
  ModeCache modes_;
  std::vector<std::unique_ptr<SubdomainExtension>> extensions_;
  double setup_seconds_ = 0.0;  // factorization time, spent once per session
};

}  // namespace acms

#endif
