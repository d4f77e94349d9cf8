// Copyright 2026 The sslab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sslab/core.hpp"

namespace sslab {

using Cplx = std::complex<double>;

template <class T>
struct is_complex : std::false_type {};
template <class R>
struct is_complex<std::complex<R>> : std::true_type {};

template <class T>
inline T conjugate(const T& x) {
  if constexpr (is_complex<T>::value) {
    return std::conj(x);
  } else {
    return x;
  }
}

template <class T>
inline double real_part(const T& x) {
  if constexpr (is_complex<T>::value) {
    return x.real();
  } else {
    return x;
  }
}

// Structural tolerance (Hermiticity, normalization) and the tolerance used
// when two computed quantities are compared.
inline constexpr double kStructTol = 1e-10;
inline constexpr double kComputeTol = 1e-8;

// Row-major dense matrix.
template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw DimensionError("Matrix: data size mismatch");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  Matrix adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = conjugate((*this)(i, j));
    return out;
  }

  T trace() const {
    T acc{};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) acc += (*this)(i, i);
    return acc;
  }

  double max_abs() const {
    double m = 0.0;
    for (const T& x : data_) m = std::max(m, std::abs(x));
    return m;
  }

  double frobenius() const {
    double acc = 0.0;
    for (const T& x : data_) acc += std::norm(x);
    return std::sqrt(acc);
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const T& a) {
    for (T& x : data_) x *= a;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("Matrix product: inner dimension mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const T ail = a(i, l);
        if (ail == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += ail * b(l, j);
      }
    return out;
  }

  // Largest |a_ij - b_ij|.
  friend double max_abs_diff(const Matrix& a, const Matrix& b) {
    a.check_same(b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.data_.size(); ++i) m = std::max(m, std::abs(a.data_[i] - b.data_[i]));
    return m;
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("Matrix: shape mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

template <class To, class From>
Matrix<To> matrix_cast(const Matrix<From>& m) {
  std::vector<To> data(m.data().begin(), m.data().end());
  return Matrix<To>(m.rows(), m.cols(), std::move(data));
}

// Largest deviation from Hermiticity.
template <class T>
double hermiticity_defect(const Matrix<T>& a) {
  if (!a.square()) throw DimensionError("hermiticity_defect: matrix not square");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - conjugate(a(j, i))));
  return m;
}

// Square matrix equal to its adjoint. T is double or Cplx; real symmetric
// operators (all moment operators) use double to halve memory.
template <class T>
class HermitianOperator {
 public:
  using value_type = T;

  HermitianOperator() = default;

  explicit HermitianOperator(Matrix<T> m, double tol = kStructTol) : m_(std::move(m)) {
    if (!m_.square()) throw DimensionError("HermitianOperator: matrix not square");
    if (m_.rows() == 0) throw DimensionError("HermitianOperator: empty matrix");
    if (hermiticity_defect(m_) > tol * std::max(1.0, m_.max_abs()))
      throw PreconditionError("HermitianOperator: matrix is not Hermitian");
  }

  static HermitianOperator zero(std::size_t n) { return unchecked(Matrix<T>(n, n)); }
  static HermitianOperator identity(std::size_t n) { return unchecked(Matrix<T>::identity(n)); }

  // Caller guarantees Hermiticity (e.g. built symmetrically).
  static HermitianOperator unchecked(Matrix<T> m) {
    HermitianOperator h;
    h.m_ = std::move(m);
    return h;
  }

  std::size_t dim() const { return m_.rows(); }
  const T& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix<T>& matrix() const { return m_; }
  Matrix<T>& mutable_matrix() { return m_; }
  double trace() const { return real_part(m_.trace()); }

  HermitianOperator& operator+=(const HermitianOperator& o) {
    m_ += o.m_;
    return *this;
  }
  HermitianOperator& operator-=(const HermitianOperator& o) {
    m_ -= o.m_;
    return *this;
  }
  HermitianOperator& operator*=(double a) {
    m_ *= T(a);
    return *this;
  }
  friend HermitianOperator operator+(HermitianOperator a, const HermitianOperator& b) { return a += b; }
  friend HermitianOperator operator-(HermitianOperator a, const HermitianOperator& b) { return a -= b; }
  friend HermitianOperator operator*(double s, HermitianOperator a) { return a *= s; }

 private:
  Matrix<T> m_;
};

template <class T>
HermitianOperator<Cplx> to_complex(const HermitianOperator<T>& h) {
  return HermitianOperator<Cplx>::unchecked(matrix_cast<Cplx>(h.matrix()));
}

// Unit vector in C^dim.
class StateVector {
 public:
  StateVector() = default;

  explicit StateVector(std::vector<Cplx> amps, double tol = kStructTol) : amps_(std::move(amps)) {
    if (amps_.empty()) throw DimensionError("StateVector: dim must be at least 1");
    const double n = norm_of(amps_);
    if (std::abs(n - 1.0) > tol) throw PreconditionError("StateVector: amplitudes are not unit norm");
  }

  // Rescales a nonzero vector to unit norm.
  static StateVector normalized(std::vector<Cplx> amps) {
    if (amps.empty()) throw DimensionError("StateVector: dim must be at least 1");
    const double n = norm_of(amps);
    if (!(n > 0.0)) throw PreconditionError("StateVector: cannot normalize the zero vector");
    for (auto& a : amps) a /= n;
    return StateVector(std::move(amps));
  }

  static StateVector basis(std::size_t dim, std::size_t i) {
    require(i < dim, "StateVector::basis: index out of range");
    std::vector<Cplx> a(dim);
    a[i] = 1.0;
    return StateVector(std::move(a));
  }

  std::size_t dim() const { return amps_.size(); }
  const Cplx& operator[](std::size_t i) const { return amps_[i]; }
  const std::vector<Cplx>& amps() const { return amps_; }
  double norm() const { return norm_of(amps_); }

 private:
  static double norm_of(const std::vector<Cplx>& a) {
    double acc = 0.0;
    for (const auto& x : a) acc += std::norm(x);
    return std::sqrt(acc);
  }

  std::vector<Cplx> amps_;
};

// <a|b>, conjugate-linear in a.
inline Cplx inner_product(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw DimensionError("inner_product: dimension mismatch");
  Cplx acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

inline double overlap(const StateVector& a, const StateVector& b) { return std::norm(inner_product(a, b)); }

inline HermitianOperator<Cplx> density(const StateVector& psi) {
  const std::size_t n = psi.dim();
  Matrix<Cplx> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
  return HermitianOperator<Cplx>::unchecked(std::move(m));
}

inline StateVector kron(const StateVector& a, const StateVector& b) {
  std::vector<Cplx> out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
  return StateVector(std::move(out), 1e-9);
}

template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const T aij = a(i, j);
      if (aij == T(0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

template <class T>
HermitianOperator<T> kron(const HermitianOperator<T>& a, const HermitianOperator<T>& b) {
  return HermitianOperator<T>::unchecked(kron(a.matrix(), b.matrix()));
}

// <psi|H|psi>.
template <class T>
double expectation(const HermitianOperator<T>& h, const StateVector& psi) {
  if (h.dim() != psi.dim()) throw DimensionError("expectation: dimension mismatch");
  Cplx acc = 0.0;
  for (std::size_t i = 0; i < h.dim(); ++i) {
    Cplx row = 0.0;
    for (std::size_t j = 0; j < h.dim(); ++j) row += Cplx(h(i, j)) * psi[j];
    acc += std::conj(psi[i]) * row;
  }
  return acc.real();
}

// tr(A B) for Hermitian A, B.
template <class T, class U>
double trace_product(const HermitianOperator<T>& a, const HermitianOperator<U>& b) {
  if (a.dim() != b.dim()) throw DimensionError("trace_product: dimension mismatch");
  Cplx acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) acc += Cplx(a(i, j)) * Cplx(b(j, i));
  return acc.real();
}

template <class T>
struct EigenDecomposition {
  std::vector<double> eigenvalues;  // descending
  Matrix<T> eigenvectors;           // column j pairs with eigenvalues[j]
};

namespace detail {

template <class T>
void sort_descending(std::vector<double>& w, Matrix<T>& v) {
  const std::size_t n = w.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
  std::vector<double> w2(n);
  Matrix<T> v2(v.rows(), n);
  for (std::size_t c = 0; c < n; ++c) {
    w2[c] = w[order[c]];
    for (std::size_t r = 0; r < v.rows(); ++r) v2(r, c) = v(r, order[c]);
  }
  w = std::move(w2);
  v = std::move(v2);
}

template <class T>
using EigenDense = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

template <class T>
EigenDense<T> to_eigen(const Matrix<T>& m) {
  EigenDense<T> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

}  // namespace detail

inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiThreshold = 1e-12;

// Cyclic Jacobi for Hermitian matrices. Each rotation combines a phase that
// makes a_pq real with the classical real rotation.
template <class T>
EigenDecomposition<T> jacobi_eigs(const HermitianOperator<T>& h) {
  const std::size_t n = h.dim();
  Matrix<T> a = h.matrix();
  Matrix<T> v = Matrix<T>::identity(n);
  const double scale = std::max(1.0, a.frobenius());

  auto off_norm = [&] {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) acc += std::norm(a(i, j));
    return std::sqrt(acc);
  };

  int sweep = 0;
  for (; sweep < kJacobiMaxSweeps; ++sweep) {
    if (off_norm() <= kJacobiThreshold * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const T b = a(p, q);
        const double mag = std::abs(b);
        if (mag == 0.0) continue;
        const T ph = b / mag;  // e^{i phi}
        const T phc = conjugate(ph);
        const double theta = (real_part(a(q, q)) - real_part(a(p, p))) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const T akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * phc * akq;
          a(k, q) = s * akp + c * phc * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const T apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * ph * aqk;
          a(q, k) = s * apk + c * ph * aqk;
        }
        a(p, q) = T(0);
        a(q, p) = T(0);
        a(p, p) = T(real_part(a(p, p)));
        a(q, q) = T(real_part(a(q, q)));
        for (std::size_t k = 0; k < n; ++k) {
          const T vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * phc * vkq;
          v(k, q) = s * vkp + c * phc * vkq;
        }
      }
    }
  }
  if (sweep == kJacobiMaxSweeps && off_norm() > 1e-9 * scale)
    throw Error("jacobi_eigs: no convergence within the sweep cap");

  EigenDecomposition<T> out;
  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = real_part(a(i, i));
  out.eigenvectors = std::move(v);
  detail::sort_descending(out.eigenvalues, out.eigenvectors);
  return out;
}

// Above this size a Householder tridiagonal solver replaces Jacobi.
inline constexpr std::size_t kJacobiMaxDim = 96;

template <class T>
EigenDecomposition<T> hermitian_eigs(const HermitianOperator<T>& h) {
  if (hermiticity_defect(h.matrix()) > kStructTol * std::max(1.0, h.matrix().max_abs()))
    throw PreconditionError("hermitian_eigs: input is not Hermitian");
  if (h.dim() <= kJacobiMaxDim) return jacobi_eigs(h);
  Eigen::SelfAdjointEigenSolver<detail::EigenDense<T>> solver(detail::to_eigen(h.matrix()));
  if (solver.info() != Eigen::Success) throw Error("hermitian_eigs: solver failed");
  EigenDecomposition<T> out;
  const std::size_t n = h.dim();
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix<T>(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = solver.eigenvalues()(j);
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = solver.eigenvectors()(i, j);
  }
  detail::sort_descending(out.eigenvalues, out.eigenvectors);
  return out;
}

// Eigenvalues only, descending.
template <class T>
std::vector<double> hermitian_eigenvalues(const HermitianOperator<T>& h) {
  if (h.dim() <= kJacobiMaxDim) return jacobi_eigs(h).eigenvalues;
  Eigen::SelfAdjointEigenSolver<detail::EigenDense<T>> solver(detail::to_eigen(h.matrix()),
                                                               Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("hermitian_eigenvalues: solver failed");
  std::vector<double> w(solver.eigenvalues().data(), solver.eigenvalues().data() + h.dim());
  std::sort(w.begin(), w.end(), std::greater<>());
  return w;
}

// Index sets of the connected components of the nonzero pattern. The
// operator is block diagonal in this partition.
template <class T>
std::vector<std::vector<std::size_t>> diagonal_blocks(const HermitianOperator<T>& h) {
  const std::size_t n = h.dim();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (h(i, j) != T(0)) {
        const std::size_t a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == n) {
      slot[r] = blocks.size();
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(i);
  }
  return blocks;
}

template <class T>
HermitianOperator<T> principal_submatrix(const HermitianOperator<T>& h, const std::vector<std::size_t>& idx) {
  Matrix<T> m(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) m(a, b) = h(idx[a], idx[b]);
  return HermitianOperator<T>::unchecked(std::move(m));
}

// Spectrum computed block by block over the nonzero pattern (descending).
template <class T>
std::vector<double> blockwise_eigenvalues(const HermitianOperator<T>& h) {
  const auto blocks = diagonal_blocks(h);
  if (blocks.size() == 1) return hermitian_eigenvalues(h);
  std::vector<double> w;
  w.reserve(h.dim());
  for (const auto& b : blocks) {
    if (b.size() == 1) {
      w.push_back(real_part(h(b[0], b[0])));
      continue;
    }
    const auto wb = hermitian_eigenvalues(principal_submatrix(h, b));
    w.insert(w.end(), wb.begin(), wb.end());
  }
  std::sort(w.begin(), w.end(), std::greater<>());
  return w;
}

// Sum of absolute eigenvalues.
template <class T>
double trace_norm(const HermitianOperator<T>& h) {
  double acc = 0.0;
  for (double x : blockwise_eigenvalues(h)) acc += std::abs(x);
  return acc;
}

// Half the trace norm of the difference. Sub-normalized inputs are accepted.
template <class T>
double trace_distance(const HermitianOperator<T>& rho, const HermitianOperator<T>& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("trace_distance: dimension mismatch");
  return 0.5 * trace_norm(rho - sigma);
}

inline double trace_distance(const StateVector& a, const StateVector& b) {
  return std::sqrt(std::max(0.0, 1.0 - overlap(a, b)));
}

// Smallest eigenvalue is at least -tol.
template <class T>
bool is_psd(const HermitianOperator<T>& h, double tol = kComputeTol) {
  const auto w = blockwise_eigenvalues(h);
  return w.back() >= -tol;
}

// Traces out every factor not listed in keep. dims is the tensor
// factorization, most significant factor first.
template <class T>
HermitianOperator<T> partial_trace(const HermitianOperator<T>& rho, const std::vector<std::size_t>& dims,
                                   std::vector<std::size_t> keep) {
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw DimensionError("partial_trace: zero factor dimension");
    total *= d;
  }
  if (total != rho.dim()) throw DimensionError("partial_trace: factor dimensions do not multiply to dim");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (std::size_t k : keep)
    if (k >= dims.size()) throw DimensionError("partial_trace: kept factor out of range");

  const std::size_t nf = dims.size();
  std::vector<std::size_t> stride(nf, 1);
  for (std::size_t f = nf; f-- > 1;) stride[f - 1] = stride[f] * dims[f];
  std::vector<bool> kept(nf, false);
  for (std::size_t k : keep) kept[k] = true;

  // Offsets contributed by the kept and the traced factors, in row-major order
  // over each group.
  auto offsets = [&](bool want_kept) {
    std::vector<std::size_t> offs{0};
    for (std::size_t f = 0; f < nf; ++f) {
      if (kept[f] != want_kept) continue;
      std::vector<std::size_t> next;
      next.reserve(offs.size() * dims[f]);
      for (std::size_t o : offs)
        for (std::size_t x = 0; x < dims[f]; ++x) next.push_back(o + x * stride[f]);
      offs = std::move(next);
    }
    return offs;
  };
  const auto ko = offsets(true);
  const auto to = offsets(false);

  Matrix<T> out(ko.size(), ko.size());
  for (std::size_t a = 0; a < ko.size(); ++a)
    for (std::size_t b = 0; b < ko.size(); ++b) {
      T acc{};
      for (std::size_t c : to) acc += rho(ko[a] + c, ko[b] + c);
      out(a, b) = acc;
    }
  return HermitianOperator<T>::unchecked(std::move(out));
}

// -tr(rho log2 rho), with 0 log 0 = 0.
template <class T>
double von_neumann_entropy(const HermitianOperator<T>& rho) {
  double h = 0.0;
  for (double x : hermitian_eigenvalues(rho))
    if (x > 1e-15) h -= x * std::log2(x);
  return std::max(0.0, h);
}

// Entropy of the reduced state on the first factor of C^dim_a (x) C^dim_b.
inline double entanglement_entropy(const StateVector& psi, std::size_t dim_a) {
  if (std::abs(psi.norm() - 1.0) > kStructTol) throw PreconditionError("entanglement_entropy: state not unit norm");
  if (dim_a == 0 || psi.dim() % dim_a != 0)
    throw DimensionError("entanglement_entropy: cut does not factor the dimension");
  const std::size_t dim_b = psi.dim() / dim_a;
  // Reduce onto the smaller side; both sides share the nonzero spectrum.
  const bool keep_a = dim_a <= dim_b;
  const std::size_t r = keep_a ? dim_a : dim_b;
  const std::size_t o = keep_a ? dim_b : dim_a;
  Matrix<Cplx> red(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) {
      Cplx acc = 0.0;
      for (std::size_t c = 0; c < o; ++c) {
        const Cplx x = keep_a ? psi[i * dim_b + c] : psi[c * dim_b + i];
        const Cplx y = keep_a ? psi[j * dim_b + c] : psi[c * dim_b + j];
        acc += x * std::conj(y);
      }
      red(i, j) = acc;
      red(j, i) = std::conj(acc);
    }
  return von_neumann_entropy(HermitianOperator<Cplx>::unchecked(std::move(red)));
}

}  // namespace sslab
