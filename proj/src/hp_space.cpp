// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#include "acms2d/hp_space.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "acms2d/errors.hpp"

namespace acms {

namespace {
long long pack(int a, int b) { return (long long)(a) * 0x40000000LL + b; }
}  // namespace

HpSpace::HpSpace(std::shared_ptr<const Mesh> mesh, std::shared_ptr<const InterfaceGraph> graph,
                 int p)
    : mesh_(std::move(mesh)), graph_(std::move(graph)), p_(p) {
  if (p < 1 || p > kMaxOrder)
    throw ConfigError("build_space: order must lie in [1, " + std::to_string(kMaxOrder) + "]");
  ref_ = std::make_shared<const ReferenceElement>(p);
  build_dof_tables();
  build_traces();
  build_subdomains();
  build_locator();
}

void HpSpace::build_dof_tables() {
  const Mesh& m = *mesh_;
  for (const auto& tr : m.triangles)
    for (int e = 0; e < 3; ++e) {
      const int a = std::min(tr.v[e], tr.v[(e + 1) % 3]);
      const int b = std::max(tr.v[e], tr.v[(e + 1) % 3]);
      auto [it, inserted] = edge_ids_.try_emplace(pack(a, b), int(edge_nodes_.size()));
      if (inserted) edge_nodes_.push_back({a, b});
    }
  const int nv = int(m.nodes.size());
  const int ne = int(edge_nodes_.size());
  const int nt = int(m.triangles.size());
  const int q = ref_->bubble_count();
  ndof_ = nv + ne * (p_ - 1) + nt * q;

  const int nloc = ref_->ndof();
  tri_dofs_.resize(std::size_t(nt) * nloc);
  tri_signs_.assign(std::size_t(nt) * nloc, 1.0);
  const auto edges = ReferenceElement::edge_vertices();
  for (int t = 0; t < nt; ++t) {
    const auto& tr = m.triangles[t];
    int* dofs = tri_dofs_.data() + std::size_t(t) * nloc;
    double* signs = tri_signs_.data() + std::size_t(t) * nloc;
    for (int v = 0; v < 3; ++v) dofs[v] = tr.v[v];
    for (int e = 0; e < 3; ++e) {
      const int a = tr.v[edges[e][0]], b = tr.v[edges[e][1]];
      const int id = mesh_edge_id(a, b);
      const bool flipped = a > b;
      for (int j = 0; j <= p_ - 2; ++j) {
        dofs[3 + e * (p_ - 1) + j] = nv + id * (p_ - 1) + j;
        if (flipped && (j % 2 == 1)) signs[3 + e * (p_ - 1) + j] = -1.0;
      }
    }
    for (int l = 0; l < q; ++l) dofs[3 + 3 * (p_ - 1) + l] = nv + ne * (p_ - 1) + t * q + l;
  }
}

int HpSpace::mesh_edge_id(int a, int b) const {
  auto it = edge_ids_.find(pack(std::min(a, b), std::max(a, b)));
  if (it == edge_ids_.end()) throw MeshError("mesh_edge_id: no such edge");
  return it->second;
}

void HpSpace::edge_trace_dofs(int a, int b, std::vector<int>& dofs,
                              std::vector<double>& signs) const {
  const int nv = n_vertices();
  const int id = mesh_edge_id(a, b);
  const bool flipped = a > b;
  dofs.assign(std::size_t(p_) + 1, 0);
  signs.assign(std::size_t(p_) + 1, 1.0);
  dofs[0] = a;
  dofs[1] = b;
  for (int j = 0; j <= p_ - 2; ++j) {
    dofs[2 + j] = nv + id * (p_ - 1) + j;
    if (flipped && (j % 2 == 1)) signs[2 + j] = -1.0;
  }
}

void HpSpace::build_traces() {
  const Mesh& m = *mesh_;
  traces_.resize(graph_->edges.size());
  for (int e = 0; e < int(graph_->edges.size()); ++e) {
    const DecompEdge& de = graph_->edges[e];
    TraceSpace& ts = traces_[e];
    ts.edge = e;
    ts.p = p_;
    ts.segments = int(de.nodes.size()) - 1;
    ts.length = de.length;
    ts.node_pos.resize(de.nodes.size());
    const Point p0 = m.nodes[de.nodes.front()];
    for (std::size_t k = 0; k < de.nodes.size(); ++k) {
      const Point pk = m.nodes[de.nodes[k]];
      ts.node_pos[k] = std::hypot(pk.x - p0.x, pk.y - p0.y);
    }
    ts.global_dof.assign(ts.total_dofs(), -1);
    ts.sign.assign(ts.total_dofs(), 1.0);
    const int nv = n_vertices();
    for (int k = 0; k <= ts.segments; ++k) ts.global_dof[ts.dof_of_node(k)] = de.nodes[k];
    for (int k = 0; k < ts.segments; ++k) {
      const int a = de.nodes[k], b = de.nodes[k + 1];
      const int id = mesh_edge_id(a, b);
      const bool flipped = a > b;
      for (int d = 2; d <= p_; ++d) {
        const int i = ts.dof_of_segment(k, d);
        ts.global_dof[i] = nv + id * (p_ - 1) + (d - 2);
        if (flipped && (d % 2 == 1)) ts.sign[i] = -1.0;
      }
    }
  }
}

void HpSpace::build_subdomains() {
  const Mesh& m = *mesh_;
  const int nsub = m.decomposition.subdomain_count();
  subdomains_.resize(nsub);
  for (int t = 0; t < int(m.triangles.size()); ++t)
    subdomains_[m.triangles[t].subdomain].triangles.push_back(t);
  for (int e = 0; e < int(graph_->edges.size()); ++e) {
    const DecompEdge& de = graph_->edges[e];
    if (de.sub_left >= 0) subdomains_[de.sub_left].boundary_edges.push_back(e);
    if (de.sub_right >= 0) subdomains_[de.sub_right].boundary_edges.push_back(e);
  }
  const int nloc = ref_->ndof();
  for (int j = 0; j < nsub; ++j) {
    SubdomainDofs& sd = subdomains_[j];
    std::set<int> dofset;
    for (int t : sd.triangles)
      for (int i = 0; i < nloc; ++i) dofset.insert(tri_dof(t, i));
    sd.dofs.assign(dofset.begin(), dofset.end());
    sd.global_to_local.reserve(sd.dofs.size());
    for (int i = 0; i < int(sd.dofs.size()); ++i) sd.global_to_local.emplace(sd.dofs[i], i);
    std::set<int> bset;
    for (int e : sd.boundary_edges)
      for (int g : traces_[e].global_dof) bset.insert(g);
    sd.boundary_dofs.assign(bset.begin(), bset.end());
    for (int g : sd.dofs)
      if (!bset.count(g)) sd.interior_dofs.push_back(g);
    for (int g : sd.boundary_dofs)
      if (!dofset.count(g))
        throw MeshError("subdomain boundary dof missing from the subdomain closure");
  }
}

void HpSpace::build_locator() {
  const auto& d = mesh_->decomposition;
  bx0_ = d.x0();
  by0_ = d.y0();
  bnx_ = d.cells_x();
  bny_ = d.cells_y();
  buckets_.assign(std::size_t(bnx_) * bny_, {});
  for (int t = 0; t < int(mesh_->triangles.size()); ++t) {
    const Point c = mesh_->centroid(t);
    const int cx = std::clamp(int(std::floor(c.x - bx0_)), 0, bnx_ - 1);
    const int cy = std::clamp(int(std::floor(c.y - by0_)), 0, bny_ - 1);
    buckets_[std::size_t(cy) * bnx_ + cx].push_back(t);
  }
}

Point HpSpace::dof_position(int dof) const {
  const int nv = n_vertices();
  const int ne = n_mesh_edges();
  if (dof < nv) return mesh_->nodes[dof];
  if (dof < nv + ne * (p_ - 1)) {
    const int e = (dof - nv) / (p_ - 1);
    const Point a = mesh_->nodes[edge_nodes_[e][0]];
    const Point b = mesh_->nodes[edge_nodes_[e][1]];
    return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  }
  const int t = (dof - nv - ne * (p_ - 1)) / std::max(1, ref_->bubble_count());
  return mesh_->centroid(t);
}

HpSpace::Location HpSpace::locate(Point pt) const {
  const double tol = 1e-10;
  auto try_triangle = [&](int t, Location& loc) {
    const auto& tr = mesh_->triangles[t];
    const Point& a = mesh_->nodes[tr.v[0]];
    const Point& b = mesh_->nodes[tr.v[1]];
    const Point& c = mesh_->nodes[tr.v[2]];
    const double det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    const double l1 = ((pt.x - a.x) * (c.y - a.y) - (pt.y - a.y) * (c.x - a.x)) / det;
    const double l2 = ((b.x - a.x) * (pt.y - a.y) - (b.y - a.y) * (pt.x - a.x)) / det;
    if (l1 < -tol || l2 < -tol || l1 + l2 > 1.0 + tol) return false;
    loc = {t, l1, l2};
    return true;
  };
  const int cx = std::clamp(int(std::floor(pt.x - bx0_)), 0, bnx_ - 1);
  const int cy = std::clamp(int(std::floor(pt.y - by0_)), 0, bny_ - 1);
  Location loc;
  for (int t : buckets_[std::size_t(cy) * bnx_ + cx])
    if (try_triangle(t, loc)) return loc;
  for (int uy = cy - 1; uy <= cy + 1; ++uy)
    for (int ux = cx - 1; ux <= cx + 1; ++ux) {
      if (ux < 0 || ux >= bnx_ || uy < 0 || uy >= bny_ || (ux == cx && uy == cy)) continue;
      for (int t : buckets_[std::size_t(uy) * bnx_ + ux])
        if (try_triangle(t, loc)) return loc;
    }
  throw MeshError("eval_field: point outside the mesh");
}

namespace {
template <class T>
T eval_impl(const HpSpace& sp, const std::vector<T>& coeffs, Point pt) {
  const auto loc = sp.locate(pt);
  std::vector<double> vals;
  sp.ref().eval(loc.x, loc.y, vals);
  T out{};
  for (int i = 0; i < sp.ndof_local(); ++i)
    out += coeffs[sp.tri_dof(loc.triangle, i)] * (sp.tri_sign(loc.triangle, i) * vals[i]);
  return out;
}
}  // namespace

Complex HpSpace::eval(const std::vector<Complex>& coeffs, Point pt) const {
  if (int(coeffs.size()) != ndof_) throw ConfigError("eval: coefficient size mismatch");
  return eval_impl(*this, coeffs, pt);
}

double HpSpace::eval(const std::vector<double>& coeffs, Point pt) const {
  if (int(coeffs.size()) != ndof_) throw ConfigError("eval: coefficient size mismatch");
  return eval_impl(*this, coeffs, pt);
}

}  // namespace acms
