// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numeric>

#include "acms2d/errors.hpp"
#include "acms2d/linalg.hpp"

namespace acms {

namespace {

// Lower Cholesky factor of a symmetric positive definite matrix.
DenseMatrix<double> cholesky_lower(const DenseMatrix<double>& m) {
  const int n = m.rows();
  DenseMatrix<double> l(n, n);
  for (int j = 0; j < n; ++j) {
    double s = m(j, j);
    for (int k = 0; k < j; ++k) s -= l(j, k) * l(j, k);
    if (s <= 0.0) throw NumericalError("generalized eig: mass matrix not positive definite");
    l(j, j) = std::sqrt(s);
    for (int i = j + 1; i < n; ++i) {
      double t = m(i, j);
      for (int k = 0; k < j; ++k) t -= l(i, k) * l(j, k);
      l(i, j) = t / l(j, j);
    }
  }
  return l;
}

// Householder reduction of a symmetric matrix to tridiagonal form with
// accumulation of the orthogonal transformation in z.
void tred2(DenseMatrix<double>& z, std::vector<double>& d, std::vector<double>& e) {
  const int n = z.rows();
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (int i = n - 1; i >= 1; --i) {
    const int l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (int k = 0; k <= l; ++k) scale += std::abs(z(i, k));
      if (scale == 0.0) {
        e[i] = z(i, l);
      } else {
        for (int k = 0; k <= l; ++k) {
          z(i, k) /= scale;
          h += z(i, k) * z(i, k);
        }
        double f = z(i, l);
        double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        z(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          z(j, i) = z(i, j) / h;
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += z(j, k) * z(i, k);
          for (int k = j + 1; k <= l; ++k) g += z(k, j) * z(i, k);
          e[j] = g / h;
          f += e[j] * z(i, j);
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) e[j] -= hh * z(i, j);
        for (int j = 0; j <= l; ++j) {
          f = z(i, j);
          g = e[j];
          for (int k = j; k <= l; ++k) z(k, j) -= f * e[k] + g * z(i, k);
        }
      }
    } else {
      e[i] = z(i, l);
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    if (d[i] != 0.0) {
      for (int j = 0; j < i; ++j) {
        double g = 0.0;
        for (int k = 0; k < i; ++k) g += z(i, k) * z(k, j);
        for (int k = 0; k < i; ++k) z(k, j) -= g * z(k, i);
      }
    }
    d[i] = z(i, i);
    z(i, i) = 1.0;
    for (int j = 0; j < i; ++j) z(j, i) = z(i, j) = 0.0;
  }
}

// Implicit-shift QL iteration on a tridiagonal (d, e) with eigenvector
// accumulation in z.
void tql2(std::vector<double>& d, std::vector<double>& e, DenseMatrix<double>& z) {
  const int n = int(d.size());
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-300 + 2.3e-16 * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) throw NumericalError("generalized eig: QL iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool deflated = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            deflated = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (int k = 0; k < n; ++k) {
            f = z(k, i + 1);
            z(k, i + 1) = s * z(k, i) + c * f;
            z(k, i) = c * z(k, i) - s * f;
          }
        }
        if (deflated) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

GeneralizedEig generalized_eig_symmetric(const DenseMatrix<double>& k_mat,
                                         const DenseMatrix<double>& m_mat, int count) {
  const int n = k_mat.rows();
  if (k_mat.cols() != n || m_mat.rows() != n || m_mat.cols() != n)
    throw ConfigError("generalized eig: dimension mismatch");
  if (count < 1 || count > n) throw ConfigError("generalized eig: invalid eigenpair count");

  const DenseMatrix<double> l = cholesky_lower(m_mat);

  // C = L^{-1} K L^{-T}, built column by column.
  DenseMatrix<double> c(n, n);
  {
    // X = L^{-1} K
    DenseMatrix<double> x = k_mat;
    for (int j = 0; j < n; ++j) {
      double* xc = x.col(j);
      for (int i = 0; i < n; ++i) {
        double s = xc[i];
        for (int k = 0; k < i; ++k) s -= l(i, k) * xc[k];
        xc[i] = s / l(i, i);
      }
    }
    // C = X L^{-T}: solve C L^T = X row-wise, i.e. forward substitution on
    // columns of C using rows of X.
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double s = x(i, j);
        for (int k = 0; k < j; ++k) s -= c(i, k) * l(j, k);
        c(i, j) = s / l(j, j);
      }
    }
    // symmetrize against roundoff
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) {
        const double avg = 0.5 * (c(i, j) + c(j, i));
        c(i, j) = c(j, i) = avg;
      }
  }

  std::vector<double> d, e;
  tred2(c, d, e);
  tql2(d, e, c);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });

  GeneralizedEig out;
  out.eigenvalues.resize(count);
  out.eigenvectors = DenseMatrix<double>(n, count);
  std::vector<double> y(n), v(n);
  for (int idx = 0; idx < count; ++idx) {
    const int src = order[idx];
    out.eigenvalues[idx] = d[src];
    for (int i = 0; i < n; ++i) y[i] = c(i, src);
    // back-transform: solve L^T v = y
    for (int i = n - 1; i >= 0; --i) {
      double s = y[i];
      for (int k = i + 1; k < n; ++k) s -= l(k, i) * v[k];
      v[i] = s / l(i, i);
    }
    // normalize to v^T M v = 1
    double norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
      double mi = 0.0;
      for (int k = 0; k < n; ++k) mi += m_mat(i, k) * v[k];
      norm2 += v[i] * mi;
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (int i = 0; i < n; ++i) v[i] *= scale;
    // sign convention: the entry of largest magnitude is positive
    int imax = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
    if (v[imax] < 0.0)
      for (int i = 0; i < n; ++i) v[i] = -v[i];
    for (int i = 0; i < n; ++i) out.eigenvectors(i, idx) = v[i];
  }
  return out;
}

}  // namespace acms
