// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numeric>

#include "acms2d/errors.hpp"
#include "acms2d/linalg.hpp"

namespace acms {

template <class T>
void dense_solve(DenseMatrix<T> a, DenseMatrix<T>& b) {
  const int n = a.rows();
  if (n != a.cols()) throw ConfigError("dense_solve: matrix not square");
  if (b.rows() != n) throw ConfigError("dense_solve: rhs dimension mismatch");
  std::vector<int> piv(n);
  std::iota(piv.begin(), piv.end(), 0);
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      double m = std::abs(a(i, k));
      if (m > best) {
        best = m;
        p = i;
      }
    }
    if (best < 1e-300) throw NumericalError("dense_solve: singular matrix");
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      for (int j = 0; j < b.cols(); ++j) std::swap(b(k, j), b(p, j));
    }
    const T pivot = a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const T l = a(i, k) / pivot;
      a(i, k) = l;
      if (l == T{}) continue;
      for (int j = k + 1; j < n; ++j) a(i, j) -= l * a(k, j);
      for (int j = 0; j < b.cols(); ++j) b(i, j) -= l * b(k, j);
    }
  }
  for (int j = 0; j < b.cols(); ++j) {
    for (int i = n - 1; i >= 0; --i) {
      T s = b(i, j);
      for (int k2 = i + 1; k2 < n; ++k2) s -= a(i, k2) * b(k2, j);
      b(i, j) = s / a(i, i);
    }
  }
}

template <class T>
std::vector<T> dense_solve(const DenseMatrix<T>& a, const std::vector<T>& rhs) {
  DenseMatrix<T> b(int(rhs.size()), 1);
  for (int i = 0; i < int(rhs.size()); ++i) b(i, 0) = rhs[i];
  dense_solve(a, b);
  std::vector<T> out(rhs.size());
  for (int i = 0; i < int(rhs.size()); ++i) out[i] = b(i, 0);
  return out;
}

template void dense_solve<double>(DenseMatrix<double>, DenseMatrix<double>&);
template void dense_solve<Complex>(DenseMatrix<Complex>, DenseMatrix<Complex>&);
template std::vector<double> dense_solve<double>(const DenseMatrix<double>&,
                                                 const std::vector<double>&);
template std::vector<Complex> dense_solve<Complex>(const DenseMatrix<Complex>&,
                                                   const std::vector<Complex>&);

template <class T>
std::vector<T> CsrMatrix<T>::matvec(const std::vector<T>& x) const {
  std::vector<T> y(rows, T{});
  for (int i = 0; i < rows; ++i) {
    T s{};
    for (std::int64_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k)
      s += values[k] * x[col_indices[k]];
    y[i] = s;
  }
  return y;
}

template <class T>
T CsrMatrix<T>::at(int i, int j) const {
  for (std::int64_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k)
    if (col_indices[k] == j) return values[k];
  return T{};
}

template <class T>
CsrMatrix<T> csr_from_triplets(int rows, int cols, const TripletList<T>& trip) {
  CsrMatrix<T> m;
  m.rows = rows;
  m.cols = cols;
  const std::size_t nt = trip.rows.size();
  for (std::size_t k = 0; k < nt; ++k) {
    if (trip.rows[k] < 0 || trip.rows[k] >= rows || trip.cols[k] < 0 || trip.cols[k] >= cols)
      throw ConfigError("csr_from_triplets: index out of range");
  }
  std::vector<std::int64_t> count(rows + 1, 0);
  for (std::size_t k = 0; k < nt; ++k) count[trip.rows[k] + 1]++;
  std::partial_sum(count.begin(), count.end(), count.begin());
  std::vector<std::size_t> order(nt);
  {
    std::vector<std::int64_t> cursor(count.begin(), count.end() - 1);
    for (std::size_t k = 0; k < nt; ++k) order[cursor[trip.rows[k]]++] = k;
  }
  m.row_offsets.assign(rows + 1, 0);
  std::vector<std::pair<int, T>> rowbuf;
  for (int i = 0; i < rows; ++i) {
    rowbuf.clear();
    for (std::int64_t k = count[i]; k < count[i + 1]; ++k)
      rowbuf.emplace_back(trip.cols[order[k]], trip.vals[order[k]]);
    std::sort(rowbuf.begin(), rowbuf.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    int last = -1;
    for (const auto& [c, v] : rowbuf) {
      if (c == last) {
        m.values.back() += v;
      } else {
        m.col_indices.push_back(c);
        m.values.push_back(v);
        last = c;
      }
    }
    m.row_offsets[i + 1] = std::int64_t(m.col_indices.size());
  }
  return m;
}

template struct CsrMatrix<double>;
template struct CsrMatrix<Complex>;
template CsrMatrix<double> csr_from_triplets<double>(int, int, const TripletList<double>&);
template CsrMatrix<Complex> csr_from_triplets<Complex>(int, int, const TripletList<Complex>&);

}  // namespace acms
