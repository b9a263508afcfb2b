// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ACMS2D_LINALG_HPP
#define ACMS2D_LINALG_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace acms {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Dense column-major matrix.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, T{}) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int i, int j) { return data_[std::size_t(j) * rows_ + i]; }
  const T& operator()(int i, int j) const { return data_[std::size_t(j) * rows_ + i]; }
  T* col(int j) { return data_.data() + std::size_t(j) * rows_; }
  const T* col(int j) const { return data_.data() + std::size_t(j) * rows_; }
  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

/// In-place dense LU solve with partial pivoting; b holds the solution on exit.
/// Throws NumericalError on (numerically) singular input.
template <class T>
void dense_solve(DenseMatrix<T> a, DenseMatrix<T>& b);

template <class T>
std::vector<T> dense_solve(const DenseMatrix<T>& a, const std::vector<T>& rhs);

// ---------------------------------------------------------------------------
// Compressed sparse row matrix with sorted, unique columns per row.
template <class T>
struct CsrMatrix {
  int rows = 0, cols = 0;
  std::vector<std::int64_t> row_offsets;  // size rows+1
  std::vector<int> col_indices;
  std::vector<T> values;

  std::vector<T> matvec(const std::vector<T>& x) const;
  T at(int i, int j) const;  // 0 if absent
};

struct Triplet {
  int row;
  int col;
};

template <class T>
struct TripletList {
  std::vector<int> rows, cols;
  std::vector<T> vals;
  void add(int i, int j, T v) {
    rows.push_back(i);
    cols.push_back(j);
    vals.push_back(v);
  }
};

/// Duplicates are summed; rows come out sorted with unique column indices.
template <class T>
CsrMatrix<T> csr_from_triplets(int rows, int cols, const TripletList<T>& trip);

// ---------------------------------------------------------------------------
// Banded matrix, LAPACK-style band storage with room for pivoting fill-in:
// entry (i,j) with -ku <= i-j <= kl lives at band(kl + ku + i - j, j) in a
// (2*kl + ku + 1) x n column-major array.
template <class T>
class BandedMatrix {
 public:
  BandedMatrix() = default;
  BandedMatrix(int n, int kl, int ku);

  int size() const { return n_; }
  int lower() const { return kl_; }
  int upper() const { return ku_; }

  /// Throws ConfigError if (i,j) lies outside the declared band.
  void add(int i, int j, T v);
  void set(int i, int j, T v);
  T get(int i, int j) const;
  bool in_band(int i, int j) const;

  std::vector<T> matvec(const std::vector<T>& x) const;
  std::size_t storage_bytes() const { return data_.size() * sizeof(T); }

  T* raw() { return data_.data(); }
  const T* raw() const { return data_.data(); }
  int ld() const { return ld_; }

 private:
  int n_ = 0, kl_ = 0, ku_ = 0, ld_ = 0;
  std::vector<T> data_;
};

/// LU factorization of a banded matrix with partial pivoting.
/// The factored upper bandwidth grows to at most kl + ku.
template <class T>
class BandedLu {
 public:
  BandedLu() = default;
  /// Factors in place (consumes the matrix). Throws NumericalError when a
  /// pivot falls below 1e-300 in magnitude, which signals a singular system
  /// (e.g. an interior resonance of a local Helmholtz problem).
  explicit BandedLu(BandedMatrix<T> mat);

  int size() const { return n_; }
  /// Solves for one right-hand side in place.
  void solve(std::vector<T>& b) const;
  /// Solves for several right-hand sides (columns of b) in place.
  void solve(DenseMatrix<T>& b) const;
  void solve_raw(T* b) const;
  std::size_t storage_bytes() const { return band_.storage_bytes(); }

 private:
  int n_ = 0, kl_ = 0, ku_ = 0;
  BandedMatrix<T> band_;
  std::vector<int> pivots_;
};

/// Banded LU convenience wrapper: factor + solve for a block of rhs columns.
template <class T>
DenseMatrix<T> banded_solve(BandedMatrix<T> mat, DenseMatrix<T> rhs);

// ---------------------------------------------------------------------------
// Dense symmetric-definite generalized eigenproblem K v = lambda M v.
struct GeneralizedEig {
  std::vector<double> eigenvalues;  // ascending
  DenseMatrix<double> eigenvectors;  // column i pairs with eigenvalues[i]
};

/// Reduces with a Cholesky factorization of M, tridiagonalizes by Householder
/// reflections and runs implicit-shift QL. Vectors are M-orthonormal and the
/// entry of largest magnitude of each returned vector is positive.
/// Throws NumericalError if M is not positive definite.
GeneralizedEig generalized_eig_symmetric(const DenseMatrix<double>& k_mat,
                                         const DenseMatrix<double>& m_mat, int count);

}  // namespace acms

#endif
