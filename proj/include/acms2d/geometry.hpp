// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ACMS2D_GEOMETRY_HPP
#define ACMS2D_GEOMETRY_HPP

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace acms {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// 1x1 building block of a crystal, optionally with a polygonal pore.
/// The pore is a regular polygon with its vertices on the circle of the given
/// radius; an even segment count keeps the cell mirror-symmetric.
struct UnitCellSpec {
  struct Pore {
    double radius = 0.25;
    int segments = 16;
  };
  std::optional<Pore> pore;
  int cell_tag = 1;
  int pore_tag = 2;

  void validate() const;
};

struct Rect {
  double x0, y0, x1, y1;
};

/// Non-overlapping decomposition of a rectangular multi-cell domain into a
/// jx x jy grid of square subdomains, each made of cells x cells unit cells.
/// The domain is centered at the origin.
struct DomainDecomposition {
  int jx = 1, jy = 1;            // subdomain grid counts
  int cells_per_subdomain = 1;   // j: each subdomain is j x j unit cells
  std::vector<Rect> subdomain_rects;

  int subdomain_count() const { return jx * jy; }
  int edge_count() const { return jx * (jy + 1) + jy * (jx + 1); }
  int vertex_count() const { return (jx + 1) * (jy + 1); }
  int cells_x() const { return jx * cells_per_subdomain; }
  int cells_y() const { return jy * cells_per_subdomain; }
  double x0() const { return -0.5 * cells_x(); }
  double y0() const { return -0.5 * cells_y(); }
  int subdomain_of_cell(int cx, int cy) const {
    return (cy / cells_per_subdomain) * jx + (cx / cells_per_subdomain);
  }
};

DomainDecomposition build_decomposition(int jx, int jy, int cells_per_subdomain);

/// Decomposition from a full cell grid plus the cells-per-subdomain factor;
/// rejects non-divisible cell counts.
DomainDecomposition decompose_cell_grid(int cells_x, int cells_y, int cells_per_subdomain);

struct Triangle {
  std::array<int, 3> v;
  int material = 1;
  int subdomain = 0;
};

enum BoundaryMarker : int { kLeft = 0, kRight = 1, kBottom = 2, kTop = 3 };

struct BoundarySegment {
  int a, b;
  int marker;
};

struct Mesh {
  std::vector<Point> nodes;
  std::vector<Triangle> triangles;
  std::vector<BoundarySegment> boundary_segments;
  double h = 0.0;  // max triangle diameter
  DomainDecomposition decomposition;

  double triangle_area(int t) const;
  double triangle_diameter(int t) const;
  Point centroid(int t) const;
  void recompute_h();
};

/// A maximal straight interface segment between two decomposition vertices,
/// with the mesh nodes that lie on it sorted by arclength.
struct DecompEdge {
  int v0, v1;              // decomposition vertex ids
  std::vector<int> nodes;  // mesh node ids from v0 to v1, endpoints included
  double length = 0.0;
  int sub_left = -1;   // adjacent subdomains; -1 where the edge lies on the
  int sub_right = -1;  // domain boundary
  bool horizontal = false;
};

struct DecompVertex {
  int node = -1;  // mesh node id
  Point position;
};

struct InterfaceGraph {
  std::vector<DecompEdge> edges;
  std::vector<DecompVertex> vertices;
  std::vector<std::vector<int>> vertex_edges;  // edge ids adjacent to a vertex
};

/// Which cells carry a pore (when the cell spec has one).
enum class PoreLayout { kAll, kNone, kWaveguide };

/// Meshes the domain with one deterministic template per cell kind: a
/// criss-cross pattern (4 triangles per quad via the quad center) for plain
/// cells and concentric rings stitched between the pore polygon and the cell
/// boundary, plus a fan inside the pore, for pored cells. Every cell boundary
/// is split into n = ceil(1/h) uniform segments per side, so neighboring
/// cells and subdomains conform exactly.
std::pair<Mesh, InterfaceGraph> mesh_domain(const DomainDecomposition& decomp,
                                            const UnitCellSpec& cell, double h,
                                            PoreLayout layout = PoreLayout::kAll);

/// Red refinement: each triangle splits into 4 congruent children.
Mesh refine_uniform(const Mesh& mesh);

/// Rebuilds the interface graph of a mesh (used after refinement or load).
InterfaceGraph extract_interface(const Mesh& mesh);

void save_mesh(const Mesh& mesh, const std::string& path);
std::pair<Mesh, InterfaceGraph> load_mesh(const std::string& path);

/// Conformity checks shared by the generator and the loader: positive areas,
/// subdomain containment, boundary segment consistency, no hanging nodes.
void validate_mesh(const Mesh& mesh);

}  // namespace acms

#endif
