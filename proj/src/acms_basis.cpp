// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#include "acms2d/acms_basis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "acms2d/errors.hpp"

namespace acms {

void edge_trace_matrices(const HpSpace& space, int edge, DenseMatrix<double>& stiffness,
                         DenseMatrix<double>& mass) {
  const TraceSpace& ts = space.trace(edge);
  const int p = ts.p;
  const int n0 = ts.interior_dofs();
  stiffness = DenseMatrix<double>(n0, n0);
  mass = DenseMatrix<double>(n0, n0);

  ReferenceInterval ref(p);
  const auto tab = ref.tabulate(interval_rule(2 * p));
  const int nloc = p + 1;
  DenseMatrix<double> ke(nloc, nloc), me(nloc, nloc);
  std::vector<int> loc(nloc);
  for (int seg = 0; seg < ts.segments; ++seg) {
    const double len = ts.node_pos[seg + 1] - ts.node_pos[seg];
    for (int i = 0; i < nloc; ++i)
      for (int k = 0; k < nloc; ++k) {
        double s = 0.0, m = 0.0;
        for (int q = 0; q < tab.npts; ++q) {
          s += tab.weights[q] * tab.deriv(q, i) * tab.deriv(q, k);
          m += tab.weights[q] * tab.value(q, i) * tab.value(q, k);
        }
        ke(i, k) = s / len;
        me(i, k) = m * len;
      }
    // local dof order [hat left, hat right, degrees 2..p], interior indexing
    // shifts the trace dof by one (endpoint hats removed)
    loc[0] = ts.dof_of_node(seg) - 1;
    loc[1] = ts.dof_of_node(seg + 1) - 1;
    for (int d = 2; d <= p; ++d) loc[2 + d - 2] = ts.dof_of_segment(seg, d) - 1;
    for (int i = 0; i < nloc; ++i) {
      if (loc[i] < 0 || loc[i] >= n0) continue;
      for (int k = 0; k < nloc; ++k) {
        if (loc[k] < 0 || loc[k] >= n0) continue;
        stiffness(loc[i], loc[k]) += ke(i, k);
        mass(loc[i], loc[k]) += me(i, k);
      }
    }
  }
}

EdgeModeSet compute_edge_modes(const HpSpace& space, int edge, int count) {
  const TraceSpace& ts = space.trace(edge);
  const int n0 = ts.interior_dofs();
  if (count < 1)
    throw ConfigError("compute_edge_modes: mode count must be positive");
  if (count > n0)
    throw ConfigError("compute_edge_modes: requested " + std::to_string(count) +
                      " modes but the edge trace space only has " + std::to_string(n0) +
                      " interior dofs; enrich the underlying space by refining the mesh or "
                      "raising the order");
  DenseMatrix<double> k_mat, m_mat;
  edge_trace_matrices(space, edge, k_mat, m_mat);
  const GeneralizedEig eig = generalized_eig_symmetric(k_mat, m_mat, count);
  EdgeModeSet set;
  set.edge = edge;
  set.count = count;
  set.available = n0;
  set.eigenvalues = eig.eigenvalues;
  set.modes = eig.eigenvectors;
  return set;
}

EdgeReuseKey edge_reuse_key(const HpSpace& space, int edge) {
  const TraceSpace& ts = space.trace(edge);
  EdgeReuseKey key;
  key.p = ts.p;
  auto quant = [](double v) { return llround(v * 1e13); };
  key.quantized.push_back(quant(ts.length));
  std::vector<double> spacings(ts.segments);
  for (int s = 0; s < ts.segments; ++s) spacings[s] = ts.node_pos[s + 1] - ts.node_pos[s];
  std::sort(spacings.begin(), spacings.end());
  for (double s : spacings) key.quantized.push_back(quant(s));
  return key;
}

const EdgeModeSet& ModeCache::full_modes(const HpSpace& space, int edge) {
  EdgeReuseKey key = edge_reuse_key(space, edge);
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    const int n0 = space.trace(edge).interior_dofs();
    it = cache_.emplace(std::move(key), compute_edge_modes(space, edge, n0)).first;
  }
  return it->second;
}

VertexTrace compute_vertex_trace(const HpSpace& space, int q) {
  const InterfaceGraph& g = space.graph();
  if (q < 0 || q >= int(g.vertices.size()))
    throw ConfigError("compute_vertex_trace: no such decomposition vertex");
  VertexTrace out;
  out.vertex = q;
  for (int e : g.vertex_edges[q]) {
    const DecompEdge& de = g.edges[e];
    const TraceSpace& ts = space.trace(e);
    std::vector<double> vals(ts.total_dofs(), 0.0);
    const bool at_start = de.v0 == q;
    for (int k = 0; k <= ts.segments; ++k) {
      const double frac = ts.node_pos[k] / ts.length;
      vals[ts.dof_of_node(k)] = at_start ? 1.0 - frac : frac;
    }
    out.edge_values.emplace_back(e, std::move(vals));
  }
  return out;
}

SubdomainExtension::SubdomainExtension(const HpSpace& space, const HelmholtzProblem& problem,
                                       int j)
    : space_(&space), j_(j) {
  const auto t0 = std::chrono::steady_clock::now();
  const SubdomainDofs& sd = space.subdomain(j);
  const int nloc_total = int(sd.dofs.size());

  local_to_boundary_.assign(nloc_total, -1);
  for (int b = 0; b < int(sd.boundary_dofs.size()); ++b)
    local_to_boundary_[sd.local_of(sd.boundary_dofs[b])] = b;

  // split interior dofs: skeleton vs element bubbles
  std::vector<int> skel_globals;
  for (int g : sd.interior_dofs)
    if (!space.is_bubble(g)) skel_globals.push_back(g);
  std::sort(skel_globals.begin(), skel_globals.end(), [&](int a, int b) {
    const Point pa = space.dof_position(a), pb = space.dof_position(b);
    if (pa.y != pb.y) return pa.y < pb.y;
    if (pa.x != pb.x) return pa.x < pb.x;
    return a < b;
  });
  local_to_skel_.assign(nloc_total, -1);
  skel_local_.resize(skel_globals.size());
  for (int i = 0; i < int(skel_globals.size()); ++i) {
    const int l = sd.local_of(skel_globals[i]);
    skel_local_[i] = l;
    local_to_skel_[l] = i;
  }
  const int ns = int(skel_globals.size());

  // element matrices
  const auto& rule = triangle_rule(2 * space.order());
  const auto tab = space.ref().tabulate(rule);
  const int nloc = space.ndof_local();
  const int nbub = space.bubble_count();

  // bandwidth: max skeleton index spread within one element (Schur fill stays
  // element-local)
  int band = 0;
  for (int t : sd.triangles) {
    int lo = ns, hi = -1;
    for (int i = 0; i < nloc; ++i) {
      const int s = local_to_skel_[sd.local_of(space.tri_dof(t, i))];
      if (s < 0) continue;
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    if (hi >= 0) band = std::max(band, hi - lo);
  }
  if (ns == 0)
    throw NumericalError("extension: subdomain " + std::to_string(j) + " has no interior dofs");
  band = std::min(band, ns - 1);

  BandedMatrix<double> k_ss(ns, band, band);
  TripletList<double> sb_trip;
  DenseMatrix<double> a_mat, m_mat;
  std::vector<int> loc(nloc), skel_idx(nloc), bnd_idx(nloc);
  for (int t : sd.triangles) {
    element_matrices(space, problem, t, tab, a_mat, m_mat);
    for (int i = 0; i < nloc; ++i) {
      loc[i] = sd.local_of(space.tri_dof(t, i));
      skel_idx[i] = local_to_skel_[loc[i]];
      bnd_idx[i] = local_to_boundary_[loc[i]];
    }
    // assemble uncondensed couplings among skeleton/boundary dofs
    for (int i = 0; i < nloc; ++i) {
      if (skel_idx[i] < 0) continue;
      for (int k = 0; k < nloc; ++k) {
        const double v = a_mat(i, k) - m_mat(i, k);
        if (skel_idx[k] >= 0)
          k_ss.add(skel_idx[i], skel_idx[k], v);
        else if (bnd_idx[k] >= 0)
          sb_trip.add(skel_idx[i], bnd_idx[k], v);
      }
    }
    if (nbub == 0) continue;
    // eliminate the element's bubble block
    BubbleBlock blk;
    blk.tri = t;
    std::vector<int> bub_pos, other_pos;
    for (int i = 0; i < nloc; ++i) {
      if (space.is_bubble(space.tri_dof(t, i))) {
        bub_pos.push_back(i);
        blk.bubble_local.push_back(loc[i]);
      } else {
        other_pos.push_back(i);
        blk.other_local.push_back(loc[i]);
      }
    }
    const int nb = int(bub_pos.size());
    const int no = int(other_pos.size());
    DenseMatrix<double> d(nb, nb), e(nb, no);
    for (int a = 0; a < nb; ++a) {
      for (int b = 0; b < nb; ++b) d(a, b) = a_mat(bub_pos[a], bub_pos[b]) - m_mat(bub_pos[a], bub_pos[b]);
      for (int o = 0; o < no; ++o) e(a, o) = a_mat(bub_pos[a], other_pos[o]) - m_mat(bub_pos[a], other_pos[o]);
    }
    blk.w = e;
    try {
      dense_solve(d, blk.w);  // W = D^{-1} K_b,other
    } catch (const NumericalError&) {
      throw NumericalError("extension: interior resonance in subdomain " + std::to_string(j) +
                           " (local eigenvalue 1 hit); shift the wavenumber or refine");
    }
    // Schur update: K_other,other -= K_other,b W
    for (int o1 = 0; o1 < no; ++o1) {
      const int i = other_pos[o1];
      const int si = skel_idx[i];
      if (si < 0) continue;
      for (int o2 = 0; o2 < no; ++o2) {
        double upd = 0.0;
        for (int b = 0; b < nb; ++b) upd += e(b, o1) * blk.w(b, o2);
        if (upd == 0.0) continue;
        const int k = other_pos[o2];
        if (skel_idx[k] >= 0)
          k_ss.add(si, skel_idx[k], -upd);
        else if (bnd_idx[k] >= 0)
          sb_trip.add(si, bnd_idx[k], -upd);
      }
    }
    bubbles_.push_back(std::move(blk));
  }
  k_sb_ = csr_from_triplets(ns, int(sd.boundary_dofs.size()), sb_trip);
  try {
    lu_ = BandedLu<double>(std::move(k_ss));
  } catch (const NumericalError&) {
    throw NumericalError("extension: singular interior block in subdomain " + std::to_string(j) +
                         " (interior resonance, local eigenvalue 1)");
  }
  factor_seconds_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> SubdomainExtension::extend(const std::vector<double>& boundary_values) const {
  const SubdomainDofs& sd = space_->subdomain(j_);
  if (boundary_values.size() != sd.boundary_dofs.size())
    throw ConfigError("extend: boundary trace dimension mismatch");
  const int ns = int(skel_local_.size());
  // skeleton solve: K_ss u_s = -K_sB tau
  std::vector<double> rhs(ns, 0.0);
  for (int i = 0; i < ns; ++i)
    for (std::int64_t k = k_sb_.row_offsets[i]; k < k_sb_.row_offsets[i + 1]; ++k)
      rhs[i] -= k_sb_.values[k] * boundary_values[k_sb_.col_indices[k]];
  lu_.solve(rhs);

  std::vector<double> out(sd.dofs.size(), 0.0);
  for (int b = 0; b < int(sd.boundary_dofs.size()); ++b)
    out[sd.local_of(sd.boundary_dofs[b])] = boundary_values[b];
  for (int i = 0; i < ns; ++i) out[skel_local_[i]] = rhs[i];
  // back-substitute bubbles: u_b = -W [u_other]
  for (const auto& blk : bubbles_) {
    const int nb = int(blk.bubble_local.size());
    const int no = int(blk.other_local.size());
    for (int b = 0; b < nb; ++b) {
      double s = 0.0;
      for (int o = 0; o < no; ++o) s += blk.w(b, o) * out[blk.other_local[o]];
      out[blk.bubble_local[b]] = -s;
    }
  }
  return out;
}

std::vector<Complex> SubdomainExtension::extend(const std::vector<Complex>& boundary_values) const {
  std::vector<double> re(boundary_values.size()), im(boundary_values.size());
  for (std::size_t i = 0; i < boundary_values.size(); ++i) {
    re[i] = boundary_values[i].real();
    im[i] = boundary_values[i].imag();
  }
  const std::vector<double> ure = extend(re);
  const std::vector<double> uim = extend(im);
  std::vector<Complex> out(ure.size());
  for (std::size_t i = 0; i < ure.size(); ++i) out[i] = {ure[i], uim[i]};
  return out;
}

}  // namespace acms
