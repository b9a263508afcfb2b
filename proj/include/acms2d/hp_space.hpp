// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ACMS2D_HP_SPACE_HPP
#define ACMS2D_HP_SPACE_HPP

#include <complex>
#include <memory>
#include <unordered_map>
#include <vector>

#include "acms2d/geometry.hpp"
#include "acms2d/reference_element.hpp"

namespace acms {

using Complex = std::complex<double>;

/// 1D trace space of the hp space on one decomposition edge. Dofs are ordered
/// along the edge, nodes interleaved with per-segment hierarchical dofs:
/// dof(node k) = k*p, dof(segment k, degree d) = k*p + d - 1. The first and
/// last dof are the endpoint hats; the interior block has dimension n_e - 2.
struct TraceSpace {
  int edge = -1;
  int p = 1;
  int segments = 0;
  double length = 0.0;
  std::vector<double> node_pos;    // arclength of the 1D nodes, size segments+1
  std::vector<int> global_dof;     // 1D dof -> global 2D dof, size n_e
  std::vector<double> sign;        // canonical-orientation factor (+-1) per dof

  int total_dofs() const { return segments * p + 1; }
  int interior_dofs() const { return total_dofs() - 2; }
  int dof_of_node(int k) const { return k * p; }
  int dof_of_segment(int k, int degree) const { return k * p + degree - 1; }
};

/// Dof bookkeeping of the subdomain Omega_j: triangles, the dofs supported on
/// the closure, and the split into boundary dofs (on the decomposition edges
/// bounding the subdomain, domain boundary included) and interior dofs.
struct SubdomainDofs {
  std::vector<int> triangles;
  std::vector<int> boundary_edges;   // decomposition edge ids
  std::vector<int> dofs;             // ascending global dofs
  std::vector<int> boundary_dofs;    // ascending
  std::vector<int> interior_dofs;    // ascending
  std::unordered_map<int, int> global_to_local;  // into `dofs`
  int local_of(int global) const { return global_to_local.at(global); }
};

/// Global continuous hp space on a conforming triangulation: one dof per mesh
/// vertex, p-1 per mesh edge (orientation fixed by ascending node index, odd
/// degrees flip sign on the reversed side) and (p-1)(p-2)/2 bubbles per
/// triangle.
class HpSpace {
 public:
  HpSpace(std::shared_ptr<const Mesh> mesh, std::shared_ptr<const InterfaceGraph> graph, int p);

  int order() const { return p_; }
  int ndof() const { return ndof_; }
  int ndof_local() const { return ref_->ndof(); }
  int n_mesh_edges() const { return int(edge_nodes_.size()); }
  int n_vertices() const { return int(mesh_->nodes.size()); }
  int bubble_count() const { return ref_->bubble_count(); }

  const Mesh& mesh() const { return *mesh_; }
  const InterfaceGraph& graph() const { return *graph_; }
  const ReferenceElement& ref() const { return *ref_; }
  std::shared_ptr<const Mesh> mesh_ptr() const { return mesh_; }
  std::shared_ptr<const InterfaceGraph> graph_ptr() const { return graph_; }

  int tri_dof(int t, int i) const { return tri_dofs_[std::size_t(t) * ndof_local() + i]; }
  double tri_sign(int t, int i) const { return tri_signs_[std::size_t(t) * ndof_local() + i]; }

  /// First bubble dof of triangle t (bubbles are contiguous per triangle).
  int bubble_dof0(int t) const { return n_vertices() + n_mesh_edges() * (p_ - 1) + t * bubble_count(); }
  bool is_bubble(int dof) const { return dof >= n_vertices() + n_mesh_edges() * (p_ - 1); }

  /// Global dofs and signs of a mesh edge (a, b) traversed a -> b:
  /// [hat(a), hat(b), degree 2..p]. Used for boundary-term assembly.
  void edge_trace_dofs(int a, int b, std::vector<int>& dofs, std::vector<double>& signs) const;

  int mesh_edge_id(int a, int b) const;

  const SubdomainDofs& subdomain(int j) const { return subdomains_[j]; }
  int subdomain_count() const { return int(subdomains_.size()); }
  const TraceSpace& trace(int edge) const { return traces_[edge]; }

  /// Representative coordinate of a dof (vertex, edge midpoint or centroid),
  /// used by bandwidth-reducing orderings.
  Point dof_position(int dof) const;

  /// Point evaluation of a coefficient field. Throws MeshError for points
  /// outside the mesh.
  Complex eval(const std::vector<Complex>& coeffs, Point pt) const;
  double eval(const std::vector<double>& coeffs, Point pt) const;

  /// Triangle containing the point together with its reference coordinates.
  struct Location {
    int triangle;
    double x, y;
  };
  Location locate(Point pt) const;

 private:
  void build_dof_tables();
  void build_traces();
  void build_subdomains();
  void build_locator();

  std::shared_ptr<const Mesh> mesh_;
  std::shared_ptr<const InterfaceGraph> graph_;
  int p_;
  int ndof_ = 0;
  std::shared_ptr<const ReferenceElement> ref_;

  std::vector<std::array<int, 2>> edge_nodes_;            // mesh edge -> (min, max) node
  std::unordered_map<long long, int> edge_ids_;           // packed (min,max) -> edge
  std::vector<int> tri_dofs_;
  std::vector<double> tri_signs_;
  std::vector<TraceSpace> traces_;
  std::vector<SubdomainDofs> subdomains_;

  // point location: unit-cell buckets
  double bx0_ = 0, by0_ = 0;
  int bnx_ = 0, bny_ = 0;
  std::vector<std::vector<int>> buckets_;
};

}  // namespace acms

#endif
