// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ACMS2D_ACMS_BASIS_HPP
#define ACMS2D_ACMS_BASIS_HPP

#include <map>
#include <memory>

#include "acms2d/assembly.hpp"
#include "acms2d/hp_space.hpp"
#include "acms2d/linalg.hpp"
#include "acms2d/problem.hpp"

namespace acms {

/// 1D stiffness and mass matrices of the interior trace space V0(e)
/// (endpoint hats removed), in canonical along-edge orientation.
void edge_trace_matrices(const HpSpace& space, int edge, DenseMatrix<double>& stiffness,
                         DenseMatrix<double>& mass);

/// Laplace eigenmodes of one decomposition edge. Mode vectors are coefficient
/// vectors over the interior 1D trace dofs (canonical orientation), extended
/// by zero to the rest of the interface; they are L2(e)-orthonormal with the
/// largest-magnitude entry positive.
struct EdgeModeSet {
  int edge = -1;
  int count = 0;                    // retained modes
  int available = 0;                // n_e - 2
  std::vector<double> eigenvalues;  // ascending, size count
  DenseMatrix<double> modes;        // (n_e - 2) x count
};

EdgeModeSet compute_edge_modes(const HpSpace& space, int edge, int count);

/// Two edges share a key iff their 1D discretizations coincide: same order,
/// same length and same sorted spacing sequence (1e-13 granularity).
struct EdgeReuseKey {
  int p = 0;
  std::vector<long long> quantized;  // [length, sorted spacings...]
  auto operator<=>(const EdgeReuseKey&) const = default;
};

EdgeReuseKey edge_reuse_key(const HpSpace& space, int edge);

/// Session cache: the full eigendecomposition is computed once per distinct
/// key and sliced per request, so a uniform crystal solves each edge
/// eigenproblem once.
class ModeCache {
 public:
  /// All available modes of the edge's reuse class.
  const EdgeModeSet& full_modes(const HpSpace& space, int edge);
  int distinct_keys() const { return int(cache_.size()); }

 private:
  std::map<EdgeReuseKey, EdgeModeSet> cache_;
};

/// Interface function that is 1 at vertex q, 0 at every other decomposition
/// vertex and linear along each adjacent (straight) edge; zero elsewhere.
struct VertexTrace {
  int vertex = -1;
  // edge id -> values over the edge's full 1D trace dofs (hats only)
  std::vector<std::pair<int, std::vector<double>>> edge_values;
};

VertexTrace compute_vertex_trace(const HpSpace& space, int q);

/// Discrete Helmholtz-harmonic extension into one subdomain. The interior
/// block of A - M is factored once: element-interior (bubble) dofs are
/// eliminated per element and the remaining skeleton is factored by banded LU
/// with partial pivoting under a lexicographic interior ordering. Solves with
/// distinct right-hand sides may run concurrently.
class SubdomainExtension {
 public:
  SubdomainExtension(const HpSpace& space, const HelmholtzProblem& problem, int j);

  int subdomain() const { return j_; }
  double factor_seconds() const { return factor_seconds_; }

  /// boundary_values is indexed like subdomain(j).boundary_dofs; the result is
  /// indexed like subdomain(j).dofs (boundary dofs copied verbatim).
  std::vector<double> extend(const std::vector<double>& boundary_values) const;
  std::vector<Complex> extend(const std::vector<Complex>& boundary_values) const;

 private:
  const HpSpace* space_;
  int j_;
  double factor_seconds_ = 0.0;

  std::vector<int> skel_local_;            // skeleton interior dofs as local ids, banded order
  std::vector<int> local_to_skel_;         // local id -> skeleton index or -1
  std::vector<int> local_to_boundary_;     // local id -> boundary index or -1
  BandedLu<double> lu_;
  CsrMatrix<double> k_sb_;                 // skeleton x boundary coupling (condensed)

  struct BubbleBlock {
    int tri;
    std::vector<int> bubble_local;   // local ids of the element's bubbles
    std::vector<int> other_local;    // local ids of the element's non-bubble dofs
    DenseMatrix<double> w;           // bubbles x other: D^{-1} K_b,other
  };
  std::vector<BubbleBlock> bubbles_;
};

}  // namespace acms

#endif
