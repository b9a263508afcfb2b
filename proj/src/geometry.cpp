// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#include "acms2d/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "acms2d/errors.hpp"

namespace acms {

namespace {

constexpr double kQuantScale = 1e10;

struct NodeKey {
  long long qx, qy;
  bool operator==(const NodeKey& o) const { return qx == o.qx && qy == o.qy; }
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const {
    return std::hash<long long>()(k.qx * 1000003LL ^ k.qy);
  }
};

NodeKey quantize(double x, double y) {
  return {llround(x * kQuantScale), llround(y * kQuantScale)};
}

double signed_area2(const Point& a, const Point& b, const Point& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// A cell template: nodes in [0,1]^2 whose boundary is split into n uniform
// segments per side.
struct CellTemplate {
  std::vector<Point> nodes;
  std::vector<std::array<int, 3>> tris;
  std::vector<int> materials;
};

CellTemplate plain_template(int n, int cell_tag) {
  CellTemplate tpl;
  const double s = 1.0 / n;
  auto corner = [&](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) tpl.nodes.push_back({i * s, j * s});
  const int center0 = int(tpl.nodes.size());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) tpl.nodes.push_back({(i + 0.5) * s, (j + 0.5) * s});
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int bl = corner(i, j), br = corner(i + 1, j);
      const int tr = corner(i + 1, j + 1), tl = corner(i, j + 1);
      const int c = center0 + j * n + i;
      tpl.tris.push_back({bl, br, c});
      tpl.tris.push_back({br, tr, c});
      tpl.tris.push_back({tr, tl, c});
      tpl.tris.push_back({tl, bl, c});
    }
  tpl.materials.assign(tpl.tris.size(), cell_tag);
  return tpl;
}

// Square-boundary ring: 4n nodes counterclockwise from the corner (0,0).
std::vector<Point> square_ring(int n) {
  std::vector<Point> ring;
  ring.reserve(4 * n);
  const double s = 1.0 / n;
  for (int k = 0; k < n; ++k) ring.push_back({k * s, 0.0});
  for (int k = 0; k < n; ++k) ring.push_back({1.0, k * s});
  for (int k = 0; k < n; ++k) ring.push_back({1.0 - k * s, 1.0});
  for (int k = 0; k < n; ++k) ring.push_back({0.0, 1.0 - k * s});
  return ring;
}

// Stitches two closed rings (inner CCW, outer CCW, both star-shaped about the
// cell center) into a fan of triangles by merging their angular orders.
void stitch_rings(CellTemplate& tpl, const std::vector<int>& inner, const std::vector<int>& outer,
                  int material) {
  auto angle_of = [&](int node) {
    double a = std::atan2(tpl.nodes[node].y - 0.5, tpl.nodes[node].x - 0.5);
    if (a < 0.0) a += 2.0 * M_PI;
    return a;
  };
  auto rotated = [&](const std::vector<int>& ring) {
    int best = 0;
    for (int i = 1; i < int(ring.size()); ++i)
      if (angle_of(ring[i]) < angle_of(ring[best])) best = i;
    std::vector<int> out(ring.begin() + best, ring.end());
    out.insert(out.end(), ring.begin(), ring.begin() + best);
    return out;
  };
  const std::vector<int> a = rotated(inner);
  const std::vector<int> b = rotated(outer);
  const int ca = int(a.size()), cb = int(b.size());
  auto ang = [&](const std::vector<int>& ring, int i) {
    const int c = int(ring.size());
    return angle_of(ring[i % c]) + 2.0 * M_PI * (i / c);
  };
  auto emit = [&](int p, int q, int r) {
    if (signed_area2(tpl.nodes[p], tpl.nodes[q], tpl.nodes[r]) < 0.0) std::swap(q, r);
    tpl.tris.push_back({p, q, r});
    tpl.materials.push_back(material);
  };
  int i = 0, j = 0;
  while (i < ca || j < cb) {
    const bool advance_a =
        (j == cb) || (i < ca && ang(a, i + 1) <= ang(b, j + 1));
    if (advance_a) {
      emit(a[i % ca], a[(i + 1) % ca], b[j % cb]);
      ++i;
    } else {
      emit(b[j % cb], b[(j + 1) % cb], a[i % ca]);
      ++j;
    }
  }
}

CellTemplate pore_template(int n, const UnitCellSpec& cell) {
  const double r = cell.pore->radius;
  const int m = cell.pore->segments;
  const double ht = 1.0 / n;
  CellTemplate tpl;

  auto circle_ring = [&](double radius, int count) {
    std::vector<int> ring(count);
    for (int s = 0; s < count; ++s) {
      const double th = 2.0 * M_PI * s / count;
      ring[s] = int(tpl.nodes.size());
      tpl.nodes.push_back({0.5 + radius * std::cos(th), 0.5 + radius * std::sin(th)});
    }
    return ring;
  };

  // pore interior: rings of m points plus a center fan
  const int rings_in = std::max(1, int(std::lround(r / ht)));
  const int center = int(tpl.nodes.size());
  tpl.nodes.push_back({0.5, 0.5});
  std::vector<std::vector<int>> inner(rings_in);
  for (int k = 1; k <= rings_in; ++k) inner[k - 1] = circle_ring(r * k / rings_in, m);
  for (int s = 0; s < m; ++s) {
    tpl.tris.push_back({center, inner[0][s], inner[0][(s + 1) % m]});
    tpl.materials.push_back(cell.pore_tag);
  }
  for (int k = 0; k + 1 < rings_in; ++k) stitch_rings(tpl, inner[k], inner[k + 1], cell.pore_tag);

  // annulus between the pore polygon and the square boundary
  const std::vector<int>& polygon = inner[rings_in - 1];
  const double span = 0.5 * std::sqrt(2.0) - r;
  const int layers = std::max(1, int(std::lround(span / ht)));
  auto square_radius = [](double th) {
    return 0.5 / std::max(std::abs(std::cos(th)), std::abs(std::sin(th)));
  };
  std::vector<int> prev = polygon;
  int count = m;
  for (int i = 1; i < layers; ++i) {
    const double t = double(i) / layers;
    count = std::min(4 * n, count * 2);
    std::vector<int> ring(count);
    for (int s = 0; s < count; ++s) {
      const double th = 2.0 * M_PI * s / count;
      const double radius = (1.0 - t) * r + t * square_radius(th);
      ring[s] = int(tpl.nodes.size());
      tpl.nodes.push_back({0.5 + radius * std::cos(th), 0.5 + radius * std::sin(th)});
    }
    stitch_rings(tpl, prev, ring, cell.cell_tag);
    prev = ring;
  }
  std::vector<Point> boundary = square_ring(n);
  std::vector<int> bring(boundary.size());
  for (std::size_t s = 0; s < boundary.size(); ++s) {
    bring[s] = int(tpl.nodes.size());
    tpl.nodes.push_back(boundary[s]);
  }
  stitch_rings(tpl, prev, bring, cell.cell_tag);
  return tpl;
}

}  // namespace

void UnitCellSpec::validate() const {
  if (pore) {
    if (!(pore->radius > 0.0 && pore->radius < 0.5))
      throw ConfigError("unit cell: pore radius must lie in (0, 0.5)");
    if (pore->segments < 8 || pore->segments % 2 != 0)
      throw ConfigError("unit cell: pore segments must be even and at least 8");
  }
  if (cell_tag == pore_tag) throw ConfigError("unit cell: material tags must differ");
}

DomainDecomposition build_decomposition(int jx, int jy, int cells_per_subdomain) {
  if (jx < 1 || jy < 1 || cells_per_subdomain < 1)
    throw ConfigError("build_decomposition: counts must be positive");
  DomainDecomposition d;
  d.jx = jx;
  d.jy = jy;
  d.cells_per_subdomain = cells_per_subdomain;
  const double x0 = d.x0(), y0 = d.y0();
  const double side = cells_per_subdomain;
  for (int j = 0; j < jy; ++j)
    for (int i = 0; i < jx; ++i)
      d.subdomain_rects.push_back(
          {x0 + i * side, y0 + j * side, x0 + (i + 1) * side, y0 + (j + 1) * side});
  return d;
}

DomainDecomposition decompose_cell_grid(int cells_x, int cells_y, int cells_per_subdomain) {
  if (cells_per_subdomain < 1 || cells_x < 1 || cells_y < 1)
    throw ConfigError("decompose_cell_grid: counts must be positive");
  if (cells_x % cells_per_subdomain != 0 || cells_y % cells_per_subdomain != 0)
    throw ConfigError("decompose_cell_grid: cells_per_subdomain must divide the cell counts");
  return build_decomposition(cells_x / cells_per_subdomain, cells_y / cells_per_subdomain,
                             cells_per_subdomain);
}

double Mesh::triangle_area(int t) const {
  const auto& tr = triangles[t];
  return 0.5 * signed_area2(nodes[tr.v[0]], nodes[tr.v[1]], nodes[tr.v[2]]);
}

double Mesh::triangle_diameter(int t) const {
  const auto& tr = triangles[t];
  double d = 0.0;
  for (int e = 0; e < 3; ++e) {
    const Point& a = nodes[tr.v[e]];
    const Point& b = nodes[tr.v[(e + 1) % 3]];
    d = std::max(d, std::hypot(b.x - a.x, b.y - a.y));
  }
  return d;
}

Point Mesh::centroid(int t) const {
  const auto& tr = triangles[t];
  return {(nodes[tr.v[0]].x + nodes[tr.v[1]].x + nodes[tr.v[2]].x) / 3.0,
          (nodes[tr.v[0]].y + nodes[tr.v[1]].y + nodes[tr.v[2]].y) / 3.0};
}

void Mesh::recompute_h() {
  h = 0.0;
  for (int t = 0; t < int(triangles.size()); ++t) h = std::max(h, triangle_diameter(t));
}

std::pair<Mesh, InterfaceGraph> mesh_domain(const DomainDecomposition& decomp,
                                            const UnitCellSpec& cell, double h,
                                            PoreLayout layout) {
  cell.validate();
  if (!(h > 0.0) || h > 0.5) throw ConfigError("mesh_domain: need 0 < h <= 0.5 per unit cell");
  const int n = int(std::ceil(1.0 / h - 1e-12));

  const CellTemplate plain = plain_template(n, cell.cell_tag);
  CellTemplate pored;
  const bool any_pore = cell.pore && layout != PoreLayout::kNone;
  if (any_pore) pored = pore_template(n, cell);

  const int cx_count = decomp.cells_x(), cy_count = decomp.cells_y();
  auto cell_has_pore = [&](int cx, int cy) {
    if (!any_pore) return false;
    if (layout == PoreLayout::kWaveguide) {
      const int lo = cy_count / 2 - 1, hi = cy_count / 2;
      if (cy == lo || cy == hi) return false;
    }
    (void)cx;
    return true;
  };

  Mesh mesh;
  mesh.decomposition = decomp;
  std::unordered_map<NodeKey, int, NodeKeyHash> node_ids;
  const double x0 = decomp.x0(), y0 = decomp.y0();
  for (int cy = 0; cy < cy_count; ++cy)
    for (int cx = 0; cx < cx_count; ++cx) {
      const CellTemplate& tpl = cell_has_pore(cx, cy) ? pored : plain;
      const double ox = x0 + cx, oy = y0 + cy;
      std::vector<int> local(tpl.nodes.size());
      for (std::size_t k = 0; k < tpl.nodes.size(); ++k) {
        const double gx = ox + tpl.nodes[k].x, gy = oy + tpl.nodes[k].y;
        const NodeKey key = quantize(gx, gy);
        auto [it, inserted] = node_ids.try_emplace(key, int(mesh.nodes.size()));
        if (inserted) mesh.nodes.push_back({gx, gy});
        local[k] = it->second;
      }
      const int sub = decomp.subdomain_of_cell(cx, cy);
      for (std::size_t t = 0; t < tpl.tris.size(); ++t) {
        Triangle tri;
        tri.v = {local[tpl.tris[t][0]], local[tpl.tris[t][1]], local[tpl.tris[t][2]]};
        tri.material = tpl.materials[t];
        tri.subdomain = sub;
        mesh.triangles.push_back(tri);
      }
    }

  // boundary segments: triangle edges used exactly once
  std::map<std::pair<int, int>, int> edge_use;
  for (const auto& tr : mesh.triangles)
    for (int e = 0; e < 3; ++e) {
      const int a = tr.v[e], b = tr.v[(e + 1) % 3];
      edge_use[{std::min(a, b), std::max(a, b)}]++;
    }
  const double x1 = x0 + cx_count, y1 = y0 + cy_count;
  auto on_line = [](double v, double ref) { return std::abs(v - ref) < 1e-9; };
  for (const auto& [e, cnt] : edge_use) {
    if (cnt != 1) continue;
    const Point& a = mesh.nodes[e.first];
    const Point& b = mesh.nodes[e.second];
    int marker;
    if (on_line(a.x, x0) && on_line(b.x, x0))
      marker = kLeft;
    else if (on_line(a.x, x1) && on_line(b.x, x1))
      marker = kRight;
    else if (on_line(a.y, y0) && on_line(b.y, y0))
      marker = kBottom;
    else if (on_line(a.y, y1) && on_line(b.y, y1))
      marker = kTop;
    else
      throw MeshError("mesh_domain: free edge off the domain boundary");
    mesh.boundary_segments.push_back({e.first, e.second, marker});
  }

  mesh.recompute_h();
  validate_mesh(mesh);
  InterfaceGraph graph = extract_interface(mesh);
  return {std::move(mesh), std::move(graph)};
}

InterfaceGraph extract_interface(const Mesh& mesh) {
  const DomainDecomposition& d = mesh.decomposition;
  InterfaceGraph g;
  const double x0 = d.x0(), y0 = d.y0();
  const double side = d.cells_per_subdomain;

  auto find_node = [&](double x, double y) {
    const NodeKey key = quantize(x, y);
    for (int i = 0; i < int(mesh.nodes.size()); ++i)
      if (quantize(mesh.nodes[i].x, mesh.nodes[i].y) == key) return i;
    throw MeshError("interface: decomposition vertex has no mesh node");
  };
  std::unordered_map<NodeKey, int, NodeKeyHash> node_lookup;
  for (int i = 0; i < int(mesh.nodes.size()); ++i)
    node_lookup.try_emplace(quantize(mesh.nodes[i].x, mesh.nodes[i].y), i);
  auto lookup = [&](double x, double y) {
    auto it = node_lookup.find(quantize(x, y));
    if (it == node_lookup.end()) return find_node(x, y);
    return it->second;
  };

  for (int j = 0; j <= d.jy; ++j)
    for (int i = 0; i <= d.jx; ++i) {
      DecompVertex v;
      v.position = {x0 + i * side, y0 + j * side};
      v.node = lookup(v.position.x, v.position.y);
      g.vertices.push_back(v);
    }

  // bucket mesh nodes on decomposition lines
  std::unordered_map<long long, std::vector<int>> by_qy, by_qx;
  for (int i = 0; i < int(mesh.nodes.size()); ++i) {
    by_qy[llround(mesh.nodes[i].y * kQuantScale)].push_back(i);
    by_qx[llround(mesh.nodes[i].x * kQuantScale)].push_back(i);
  }

  auto vid = [&](int i, int j) { return j * (d.jx + 1) + i; };
  auto make_edge = [&](int va, int vb, bool horizontal, int sminus, int splus) {
    DecompEdge e;
    e.v0 = va;
    e.v1 = vb;
    e.horizontal = horizontal;
    e.sub_left = sminus;
    e.sub_right = splus;
    const Point pa = g.vertices[va].position, pb = g.vertices[vb].position;
    e.length = std::hypot(pb.x - pa.x, pb.y - pa.y);
    const long long key =
        horizontal ? llround(pa.y * kQuantScale) : llround(pa.x * kQuantScale);
    const auto& bucket = horizontal ? by_qy : by_qx;
    auto it = bucket.find(key);
    if (it == bucket.end()) throw MeshError("interface: empty decomposition edge");
    for (int nidx : it->second) {
      const double s = horizontal ? mesh.nodes[nidx].x : mesh.nodes[nidx].y;
      const double lo = horizontal ? pa.x : pa.y;
      const double hi = horizontal ? pb.x : pb.y;
      if (s > lo - 1e-9 && s < hi + 1e-9) e.nodes.push_back(nidx);
    }
    std::sort(e.nodes.begin(), e.nodes.end(), [&](int a, int b) {
      return (horizontal ? mesh.nodes[a].x : mesh.nodes[a].y) <
             (horizontal ? mesh.nodes[b].x : mesh.nodes[b].y);
    });
    if (e.nodes.size() < 2 || e.nodes.front() != g.vertices[va].node ||
        e.nodes.back() != g.vertices[vb].node)
      throw MeshError("interface: decomposition edge endpoints do not match mesh nodes");
    g.edges.push_back(std::move(e));
  };

  for (int j = 0; j <= d.jy; ++j)
    for (int i = 0; i < d.jx; ++i)
      make_edge(vid(i, j), vid(i + 1, j), true, j > 0 ? (j - 1) * d.jx + i : -1,
                j < d.jy ? j * d.jx + i : -1);
  for (int j = 0; j < d.jy; ++j)
    for (int i = 0; i <= d.jx; ++i)
      make_edge(vid(i, j), vid(i, j + 1), false, i > 0 ? j * d.jx + (i - 1) : -1,
                i < d.jx ? j * d.jx + i : -1);

  g.vertex_edges.assign(g.vertices.size(), {});
  for (int e = 0; e < int(g.edges.size()); ++e) {
    g.vertex_edges[g.edges[e].v0].push_back(e);
    g.vertex_edges[g.edges[e].v1].push_back(e);
  }
  return g;
}

Mesh refine_uniform(const Mesh& mesh) {
  Mesh out;
  out.decomposition = mesh.decomposition;
  out.nodes = mesh.nodes;
  std::map<std::pair<int, int>, int> midpoints;
  auto midpoint = [&](int a, int b) {
    const auto key = std::make_pair(std::min(a, b), std::max(a, b));
    auto it = midpoints.find(key);
    if (it != midpoints.end()) return it->second;
    const int id = int(out.nodes.size());
    out.nodes.push_back({0.5 * (mesh.nodes[a].x + mesh.nodes[b].x),
                         0.5 * (mesh.nodes[a].y + mesh.nodes[b].y)});
    midpoints.emplace(key, id);
    return id;
  };
  for (const auto& tr : mesh.triangles) {
    const int m01 = midpoint(tr.v[0], tr.v[1]);
    const int m12 = midpoint(tr.v[1], tr.v[2]);
    const int m20 = midpoint(tr.v[2], tr.v[0]);
    for (const auto& child : {std::array<int, 3>{tr.v[0], m01, m20},
                              std::array<int, 3>{tr.v[1], m12, m01},
                              std::array<int, 3>{tr.v[2], m20, m12},
                              std::array<int, 3>{m01, m12, m20}}) {
      Triangle t;
      t.v = child;
      t.material = tr.material;
      t.subdomain = tr.subdomain;
      out.triangles.push_back(t);
    }
  }
  for (const auto& bs : mesh.boundary_segments) {
    const int m = midpoint(bs.a, bs.b);
    out.boundary_segments.push_back({bs.a, m, bs.marker});
    out.boundary_segments.push_back({m, bs.b, bs.marker});
  }
  out.recompute_h();
  return out;
}

void validate_mesh(const Mesh& mesh) {
  const double area_floor = 1e-14 * mesh.h * mesh.h;
  for (int t = 0; t < int(mesh.triangles.size()); ++t) {
    const double area = mesh.triangle_area(t);
    if (!(area > area_floor))
      throw MeshError("mesh: degenerate or inverted triangle #" + std::to_string(t));
    const auto& tr = mesh.triangles[t];
    if (tr.subdomain < 0 || tr.subdomain >= mesh.decomposition.subdomain_count())
      throw MeshError("mesh: triangle #" + std::to_string(t) + " has invalid subdomain index");
    const Rect r = mesh.decomposition.subdomain_rects[tr.subdomain];
    for (int k = 0; k < 3; ++k) {
      const Point& p = mesh.nodes[tr.v[k]];
      if (p.x < r.x0 - 1e-9 || p.x > r.x1 + 1e-9 || p.y < r.y0 - 1e-9 || p.y > r.y1 + 1e-9)
        throw MeshError("mesh: triangle #" + std::to_string(t) +
                        " crosses its subdomain boundary");
    }
  }
  std::map<std::pair<int, int>, int> edge_use;
  for (const auto& tr : mesh.triangles)
    for (int e = 0; e < 3; ++e) {
      const int a = tr.v[e], b = tr.v[(e + 1) % 3];
      edge_use[{std::min(a, b), std::max(a, b)}]++;
    }
  std::map<std::pair<int, int>, int> listed;
  for (const auto& bs : mesh.boundary_segments)
    listed[{std::min(bs.a, bs.b), std::max(bs.a, bs.b)}]++;
  for (const auto& [e, cnt] : edge_use) {
    if (cnt > 2)
      throw MeshError("mesh: edge shared by more than two triangles (hanging node)");
    if (cnt == 1 && !listed.count(e))
      throw MeshError("mesh: free edge not listed as a boundary segment (hanging node)");
    if (cnt == 2 && listed.count(e))
      throw MeshError("mesh: interior edge listed as boundary segment");
  }
  for (const auto& [e, cnt] : listed) {
    auto it = edge_use.find(e);
    if (cnt != 1 || it == edge_use.end() || it->second != 1)
      throw MeshError("mesh: boundary segment is not a free mesh edge");
  }
}

}  // namespace acms
