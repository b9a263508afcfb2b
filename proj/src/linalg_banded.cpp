// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "acms2d/errors.hpp"
#include "acms2d/linalg.hpp"

namespace acms {

template <class T>
BandedMatrix<T>::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ld_(2 * kl + ku + 1) {
  if (n < 1 || kl < 0 || ku < 0 || kl >= n || ku >= n)
    throw ConfigError("BandedMatrix: invalid dimensions");
  data_.assign(std::size_t(ld_) * n_, T{});
}

template <class T>
bool BandedMatrix<T>::in_band(int i, int j) const {
  return i >= 0 && i < n_ && j >= 0 && j < n_ && i - j <= kl_ && j - i <= ku_;
}

template <class T>
void BandedMatrix<T>::add(int i, int j, T v) {
  if (!in_band(i, j)) throw ConfigError("BandedMatrix::add: entry outside declared band");
  data_[std::size_t(ld_) * j + kl_ + ku_ + i - j] += v;
}

template <class T>
void BandedMatrix<T>::set(int i, int j, T v) {
  if (!in_band(i, j)) throw ConfigError("BandedMatrix::set: entry outside declared band");
  data_[std::size_t(ld_) * j + kl_ + ku_ + i - j] = v;
}

template <class T>
T BandedMatrix<T>::get(int i, int j) const {
  if (!in_band(i, j)) return T{};
  return data_[std::size_t(ld_) * j + kl_ + ku_ + i - j];
}

template <class T>
std::vector<T> BandedMatrix<T>::matvec(const std::vector<T>& x) const {
  std::vector<T> y(n_, T{});
  for (int j = 0; j < n_; ++j) {
    const T xj = x[j];
    if (xj == T{}) continue;
    const int ilo = std::max(0, j - ku_);
    const int ihi = std::min(n_ - 1, j + kl_);
    const T* colp = data_.data() + std::size_t(ld_) * j + kl_ + ku_ - j;
    for (int i = ilo; i <= ihi; ++i) y[i] += colp[i] * xj;
  }
  return y;
}

template class BandedMatrix<double>;
template class BandedMatrix<Complex>;

template <class T>
BandedLu<T>::BandedLu(BandedMatrix<T> mat)
    : n_(mat.size()), kl_(mat.lower()), ku_(mat.upper()), band_(std::move(mat)) {
  pivots_.resize(n_);
  const int km = kl_ + ku_;
  const int ld = band_.ld();
  T* a = band_.raw();
  auto at = [&](int i, int j) -> T& { return a[std::size_t(ld) * j + km + i - j]; };
  for (int j = 0; j < n_; ++j) {
    const int ihi = std::min(n_ - 1, j + kl_);
    int p = j;
    double best = std::abs(at(j, j));
    for (int i = j + 1; i <= ihi; ++i) {
      const double m = std::abs(at(i, j));
      if (m > best) {
        best = m;
        p = i;
      }
    }
    if (best < 1e-300)
      throw NumericalError("banded LU: pivot below 1e-300, matrix is singular");
    pivots_[j] = p;
    const int chi = std::min(n_ - 1, j + km);
    if (p != j)
      for (int c = j; c <= chi; ++c) std::swap(at(j, c), at(p, c));
    const T pivot = at(j, j);
    for (int i = j + 1; i <= ihi; ++i) at(i, j) /= pivot;
    for (int c = j + 1; c <= chi; ++c) {
      const T ujc = at(j, c);
      if (ujc == T{}) continue;
      T* colp = a + std::size_t(ld) * c + km - c;
      const T* mulp = a + std::size_t(ld) * j + km - j;
      for (int i = j + 1; i <= ihi; ++i) colp[i] -= mulp[i] * ujc;
    }
  }
}

template <class T>
void BandedLu<T>::solve_raw(T* b) const {
  const int km = kl_ + ku_;
  const int ld = band_.ld();
  const T* a = band_.raw();
  auto at = [&](int i, int j) -> const T& { return a[std::size_t(ld) * j + km + i - j]; };
  for (int k = 0; k < n_; ++k) {
    if (pivots_[k] != k) std::swap(b[k], b[pivots_[k]]);
    const T bk = b[k];
    if (bk == T{}) continue;
    const int ihi = std::min(n_ - 1, k + kl_);
    const T* mulp = a + std::size_t(ld) * k + km - k;
    for (int i = k + 1; i <= ihi; ++i) b[i] -= mulp[i] * bk;
  }
  for (int i = n_ - 1; i >= 0; --i) {
    T s = b[i];
    const int jhi = std::min(n_ - 1, i + km);
    for (int j = i + 1; j <= jhi; ++j) s -= at(i, j) * b[j];
    b[i] = s / at(i, i);
  }
}

template <class T>
void BandedLu<T>::solve(std::vector<T>& b) const {
  if (int(b.size()) != n_) throw ConfigError("BandedLu::solve: rhs dimension mismatch");
  solve_raw(b.data());
}

template <class T>
void BandedLu<T>::solve(DenseMatrix<T>& b) const {
  if (b.rows() != n_) throw ConfigError("BandedLu::solve: rhs dimension mismatch");
  for (int j = 0; j < b.cols(); ++j) solve_raw(b.col(j));
}

template class BandedLu<double>;
template class BandedLu<Complex>;

template <class T>
DenseMatrix<T> banded_solve(BandedMatrix<T> mat, DenseMatrix<T> rhs) {
  BandedLu<T> lu(std::move(mat));
  lu.solve(rhs);
  return rhs;
}

template DenseMatrix<double> banded_solve<double>(BandedMatrix<double>, DenseMatrix<double>);
template DenseMatrix<Complex> banded_solve<Complex>(BandedMatrix<Complex>, DenseMatrix<Complex>);

}  // namespace acms
