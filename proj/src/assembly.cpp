// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#include "acms2d/assembly.hpp"

#include <algorithm>
#include <cmath>

#include "acms2d/errors.hpp"

namespace acms {

namespace {
constexpr Complex kI{0.0, 1.0};

struct AffineMap {
  double det;       // positive for CCW triangles
  double jt[2][2];  // adj(J)^T; physical gradient = jt * ref_gradient / det

  AffineMap(const Mesh& m, const Triangle& tr) {
    const Point& a = m.nodes[tr.v[0]];
    const Point& b = m.nodes[tr.v[1]];
    const Point& c = m.nodes[tr.v[2]];
    const double j00 = b.x - a.x, j01 = c.x - a.x;
    const double j10 = b.y - a.y, j11 = c.y - a.y;
    det = j00 * j11 - j01 * j10;
    jt[0][0] = j11;
    jt[0][1] = -j10;
    jt[1][0] = -j01;
    jt[1][1] = j00;
  }
  Point to_physical(const Mesh& m, const Triangle& tr, double x, double y) const {
    const Point& a = m.nodes[tr.v[0]];
    const Point& b = m.nodes[tr.v[1]];
    const Point& c = m.nodes[tr.v[2]];
    return {a.x + (b.x - a.x) * x + (c.x - a.x) * y, a.y + (b.y - a.y) * x + (c.y - a.y) * y};
  }
};

// Sparsity pattern from element dof lists, then accumulation by binary search.
template <class T>
class CsrAccumulator {
 public:
  CsrAccumulator(int nrows, int ncols, const std::vector<std::vector<int>>& elem_dofs) {
    mat_.rows = nrows;
    mat_.cols = ncols;
    std::vector<std::vector<int>> incident(nrows);
    for (int e = 0; e < int(elem_dofs.size()); ++e)
      for (int d : elem_dofs[e]) incident[d].push_back(e);
    mat_.row_offsets.assign(nrows + 1, 0);
    std::vector<int> row;
    std::vector<std::vector<int>> rows_cols(nrows);
    for (int r = 0; r < nrows; ++r) {
      row.clear();
      for (int e : incident[r]) row.insert(row.end(), elem_dofs[e].begin(), elem_dofs[e].end());
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
      rows_cols[r] = row;
      mat_.row_offsets[r + 1] = mat_.row_offsets[r] + std::int64_t(row.size());
    }
    mat_.col_indices.reserve(mat_.row_offsets[nrows]);
    for (int r = 0; r < nrows; ++r)
      mat_.col_indices.insert(mat_.col_indices.end(), rows_cols[r].begin(), rows_cols[r].end());
    mat_.values.assign(mat_.col_indices.size(), T{});
  }

  void add(int i, int j, T v) {
    const auto begin = mat_.col_indices.begin() + mat_.row_offsets[i];
    const auto end = mat_.col_indices.begin() + mat_.row_offsets[i + 1];
    const auto it = std::lower_bound(begin, end, j);
    if (it == end || *it != j) throw ConfigError("CsrAccumulator: entry outside pattern");
    mat_.values[it - mat_.col_indices.begin()] += v;
  }

  CsrMatrix<T> take() { return std::move(mat_); }

 private:
  CsrMatrix<T> mat_;
};

}  // namespace

Point boundary_normal(int marker) {
  switch (marker) {
    case kLeft: return {-1.0, 0.0};
    case kRight: return {1.0, 0.0};
    case kBottom: return {0.0, -1.0};
    case kTop: return {0.0, 1.0};
  }
  throw ConfigError("boundary_normal: unknown marker " + std::to_string(marker));
}

void element_matrices(const HpSpace& space, const HelmholtzProblem& problem, int t,
                      const ReferenceElement::Tabulation& tab, DenseMatrix<double>& a_mat,
                      DenseMatrix<double>& m_mat) {
  const Mesh& mesh = space.mesh();
  const Triangle& tr = mesh.triangles[t];
  const AffineMap map(mesh, tr);
  const int n = tab.ndof;
  const double coeff_a = problem.a(tr.material);
  const double ksq = problem.kappa_sq(tr.material);
  if (a_mat.rows() != n) a_mat = DenseMatrix<double>(n, n);
  else std::fill(a_mat.data(), a_mat.data() + std::size_t(n) * n, 0.0);
  if (m_mat.rows() != n) m_mat = DenseMatrix<double>(n, n);
  else std::fill(m_mat.data(), m_mat.data() + std::size_t(n) * n, 0.0);

  std::vector<double> gx(n), gy(n);
  for (int q = 0; q < tab.npts; ++q) {
    const double w = tab.weights[q] * map.det;
    const double wa = w * coeff_a / (map.det * map.det);
    const double wm = w * ksq;
    const double* vals = tab.values.data() + std::size_t(q) * n;
    for (int i = 0; i < n; ++i) {
      gx[i] = map.jt[0][0] * tab.gx(q, i) + map.jt[0][1] * tab.gy(q, i);
      gy[i] = map.jt[1][0] * tab.gx(q, i) + map.jt[1][1] * tab.gy(q, i);
    }
    for (int i = 0; i < n; ++i) {
      const double gxi = wa * gx[i], gyi = wa * gy[i], vi = wm * vals[i];
      double* acol = a_mat.col(i);
      double* mcol = m_mat.col(i);
      for (int j = 0; j <= i; ++j) {
        acol[j] += gxi * gx[j] + gyi * gy[j];
        mcol[j] += vi * vals[j];
      }
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a_mat(j, i) = a_mat(i, j);
      m_mat(j, i) = m_mat(i, j);
    }
  for (int i = 0; i < n; ++i) {
    const double si = space.tri_sign(t, i);
    if (si == 1.0) continue;
    for (int j = 0; j < n; ++j) {
      a_mat(i, j) *= si;
      a_mat(j, i) *= si;
      m_mat(i, j) *= si;
      m_mat(j, i) *= si;
    }
  }
}

SesquilinearAssembly assemble_fem(const HpSpace& space, const HelmholtzProblem& problem) {
  const Mesh& mesh = space.mesh();
  const int p = space.order();
  const auto& rule = triangle_rule(2 * p);
  const auto tab = space.ref().tabulate(rule);
  const int nloc = space.ndof_local();
  const int nsub = space.subdomain_count();

  // boundary facet ownership: the subdomain of the unique adjacent triangle
  std::vector<std::vector<int>> owned_segments(nsub);
  {
    std::unordered_map<long long, int> facet_sub;
    auto key = [](int a, int b) {
      return (long long)std::min(a, b) * 0x40000000LL + std::max(a, b);
    };
    for (const auto& tr : mesh.triangles)
      for (int e = 0; e < 3; ++e) facet_sub[key(tr.v[e], tr.v[(e + 1) % 3])] = tr.subdomain;
    for (int s = 0; s < int(mesh.boundary_segments.size()); ++s) {
      const auto& bs = mesh.boundary_segments[s];
      owned_segments[facet_sub.at(key(bs.a, bs.b))].push_back(s);
    }
  }

  const auto& brule = interval_rule(2 * p + 1);
  ReferenceInterval ref1d(p);
  const auto btab = ref1d.tabulate(brule);
  // 1D trace mass on the reference interval, local order [hat0, hat1, deg 2..p]
  DenseMatrix<double> bmass(p + 1, p + 1);
  for (int i = 0; i <= p; ++i)
    for (int k = 0; k <= p; ++k) {
      double s = 0.0;
      for (int q = 0; q < btab.npts; ++q) s += btab.weights[q] * btab.value(q, i) * btab.value(q, k);
      bmass(i, k) = s;
    }

  SesquilinearAssembly out;
  out.subdomain_blocks.resize(nsub);
  std::vector<std::vector<int>> global_elems;
  global_elems.reserve(mesh.triangles.size());
  for (int t = 0; t < int(mesh.triangles.size()); ++t) {
    std::vector<int> dofs(nloc);
    for (int i = 0; i < nloc; ++i) dofs[i] = space.tri_dof(t, i);
    global_elems.push_back(std::move(dofs));
  }
  CsrAccumulator<Complex> global_acc(space.ndof(), space.ndof(), global_elems);

  DenseMatrix<double> a_mat, m_mat;
  std::vector<int> bdofs;
  std::vector<double> bsigns;
  for (int j = 0; j < nsub; ++j) {
    const SubdomainDofs& sd = space.subdomain(j);
    std::vector<std::vector<int>> local_elems;
    local_elems.reserve(sd.triangles.size());
    for (int t : sd.triangles) {
      std::vector<int> dofs(nloc);
      for (int i = 0; i < nloc; ++i) dofs[i] = sd.local_of(space.tri_dof(t, i));
      local_elems.push_back(std::move(dofs));
    }
    CsrAccumulator<Complex> acc(int(sd.dofs.size()), int(sd.dofs.size()), local_elems);
    for (std::size_t ti = 0; ti < sd.triangles.size(); ++ti) {
      const int t = sd.triangles[ti];
      element_matrices(space, problem, t, tab, a_mat, m_mat);
      const auto& loc = local_elems[ti];
      const auto& glob = global_elems[t];
      for (int i = 0; i < nloc; ++i)
        for (int k = 0; k < nloc; ++k) {
          const Complex v{a_mat(i, k) - m_mat(i, k), 0.0};
          acc.add(loc[i], loc[k], v);
          global_acc.add(glob[i], glob[k], v);
        }
    }
    for (int s : owned_segments[j]) {
      const auto& bs = mesh.boundary_segments[s];
      const Point& pa = mesh.nodes[bs.a];
      const Point& pb = mesh.nodes[bs.b];
      const double len = std::hypot(pb.x - pa.x, pb.y - pa.y);
      const double wb = problem.omega() * problem.beta(bs.marker) * len;
      space.edge_trace_dofs(bs.a, bs.b, bdofs, bsigns);
      for (int i = 0; i < int(bdofs.size()); ++i)
        for (int k = 0; k < int(bdofs.size()); ++k) {
          const Complex v = -kI * (wb * bmass(i, k) * bsigns[i] * bsigns[k]);
          acc.add(sd.local_of(bdofs[i]), sd.local_of(bdofs[k]), v);
          global_acc.add(bdofs[i], bdofs[k], v);
        }
    }
    out.subdomain_blocks[j] = acc.take();
  }
  out.global = global_acc.take();
  return out;
}

std::vector<Complex> assemble_rhs(const HpSpace& space, const HelmholtzProblem& problem) {
  const Mesh& mesh = space.mesh();
  const int p = space.order();
  const auto& brule = interval_rule(2 * p + 1);
  ReferenceInterval ref1d(p);
  const auto btab = ref1d.tabulate(brule);

  std::vector<Complex> rhs(space.ndof(), Complex{});
  std::vector<int> bdofs;
  std::vector<double> bsigns;
  for (const auto& bs : mesh.boundary_segments) {
    const Point& pa = mesh.nodes[bs.a];
    const Point& pb = mesh.nodes[bs.b];
    const double len = std::hypot(pb.x - pa.x, pb.y - pa.y);
    const Point normal = boundary_normal(bs.marker);
    space.edge_trace_dofs(bs.a, bs.b, bdofs, bsigns);
    for (int q = 0; q < btab.npts; ++q) {
      const double t = brule.t[q];
      const Point x{pa.x + t * (pb.x - pa.x), pa.y + t * (pb.y - pa.y)};
      const Complex g = problem.eval_g(x, normal, bs.marker);
      const double w = btab.weights[q] * len;
      for (int i = 0; i < int(bdofs.size()); ++i)
        rhs[bdofs[i]] += g * (w * btab.value(q, i) * bsigns[i]);
    }
  }
  return rhs;
}

double l2_norm(const HpSpace& space, const std::vector<Complex>& coeffs) {
  return l2_error_vs(space, coeffs, [](Point) { return Complex{}; }).abs_error;
}

namespace {

ErrorResult integrate_error(const HpSpace& space_a, const std::vector<Complex>& ua,
                            const HpSpace* space_b, const std::vector<Complex>* ub,
                            const std::function<Complex(Point)>* exact) {
  const Mesh& mesh = space_a.mesh();
  const int pmax = space_b ? std::max(space_a.order(), space_b->order()) : space_a.order();
  const auto& rule = triangle_rule(std::min(2 * pmax + 2, kMaxQuadDegree));
  const auto tab_a = space_a.ref().tabulate(rule);
  ReferenceElement::Tabulation tab_b;
  if (space_b) tab_b = space_b->ref().tabulate(rule);

  double err2 = 0.0, ref2 = 0.0;
  for (int t = 0; t < int(mesh.triangles.size()); ++t) {
    const Triangle& tr = mesh.triangles[t];
    const AffineMap map(mesh, tr);
    for (int q = 0; q < rule.size(); ++q) {
      Complex va{};
      for (int i = 0; i < tab_a.ndof; ++i)
        va += ua[space_a.tri_dof(t, i)] * (space_a.tri_sign(t, i) * tab_a.value(q, i));
      Complex vr{};
      if (space_b) {
        for (int i = 0; i < tab_b.ndof; ++i)
          vr += (*ub)[space_b->tri_dof(t, i)] * (space_b->tri_sign(t, i) * tab_b.value(q, i));
      } else {
        vr = (*exact)(map.to_physical(mesh, tr, rule.x[q], rule.y[q]));
      }
      const double w = rule.w[q] * map.det;
      err2 += w * std::norm(va - vr);
      ref2 += w * std::norm(vr);
    }
  }
  ErrorResult out;
  out.ref_norm = std::sqrt(ref2);
  out.abs_error = std::sqrt(err2);
  out.rel_error = out.ref_norm > 0.0 ? out.abs_error / out.ref_norm : out.abs_error;
  return out;
}

}  // namespace

ErrorResult l2_error_vs(const HpSpace& space, const std::vector<Complex>& coeffs,
                        const std::function<Complex(Point)>& exact) {
  return integrate_error(space, coeffs, nullptr, nullptr, &exact);
}

ErrorResult l2_error_between(const HpSpace& space_a, const std::vector<Complex>& ua,
                             const HpSpace& space_b, const std::vector<Complex>& ub) {
  if (&space_a.mesh() != &space_b.mesh())
    throw ConfigError("l2_error_between: fields must share one mesh");
  return integrate_error(space_a, ua, &space_b, &ub, nullptr);
}

}  // namespace acms
