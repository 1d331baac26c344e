#pragma once

// Dense exact matrices over a field F plus the elimination routines the
// engine relies on: rank, kernel/image bases, and cokernel coordinates.
// A sparse rank path over F_p kicks in for wide graded pieces.
//
// Pivoting is deterministic (first nonzero in column order), so every
// result is reproducible across runs and schedules.

#include <cstdint>
#include <utility>
#include <vector>

#include "monadcoh/fields.hpp"

namespace monadcoh {

template <class F>
class Matrix {
 public:
  using Elt = typename F::Elt;

  Matrix(const F& f, int rows, int cols)
      : field_(f), rows_(rows), cols_(cols),
        a_((std::size_t)rows * (std::size_t)cols, f.zero()) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const F& field() const { return field_; }

  Elt& at(int r, int c) { return a_[(std::size_t)r * cols_ + c]; }
  const Elt& at(int r, int c) const { return a_[(std::size_t)r * cols_ + c]; }
  Elt* row(int r) { return a_.data() + (std::size_t)r * cols_; }
  const Elt* row(int r) const { return a_.data() + (std::size_t)r * cols_; }

  static Matrix identity(const F& f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
  }

  Matrix transposed() const {
    Matrix t(field_, cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
  }

  Matrix mul(const Matrix& o) const {
    if (cols_ != o.rows_) throw StructuralError("Matrix::mul: shape mismatch");
    Matrix r(field_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Elt& v = at(i, k);
        if (field_.is_zero(v)) continue;
        field_.row_addmul(r.row(i), o.row(k), (std::size_t)o.cols_, v);
      }
    return r;
  }

  std::vector<Elt> apply(const std::vector<Elt>& v) const {
    if ((int)v.size() != cols_)
      throw StructuralError("Matrix::apply: size mismatch");
    std::vector<Elt> out((std::size_t)rows_, field_.zero());
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c)
        if (!field_.is_zero(at(r, c)) && !field_.is_zero(v[c]))
          out[r] = field_.add(out[r], field_.mul(at(r, c), v[c]));
    return out;
  }

  bool operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (!field_.eq(a_[i], o.a_[i])) return false;
    return true;
  }

 private:
  F field_;
  int rows_, cols_;
  std::vector<Elt> a_;
};

namespace detail {

// In-place row echelon; returns pivot columns.  If full_rref, also
// normalizes pivots to 1 and clears above them.
template <class F>
std::vector<int> echelonize(Matrix<F>& m, bool full_rref) {
  const F& f = m.field();
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int pr = -1;
    for (int k = r; k < m.rows(); ++k)
      if (!f.is_zero(m.at(k, c))) {
        pr = k;
        break;
      }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = c; j < m.cols(); ++j)
        std::swap(m.at(r, j), m.at(pr, j));
    auto pinv = f.inv(m.at(r, c));
    for (int k = r + 1; k < m.rows(); ++k) {
      if (f.is_zero(m.at(k, c))) continue;
      auto mult = f.neg(f.mul(m.at(k, c), pinv));
      f.row_addmul(m.row(k) + c, m.row(r) + c, (std::size_t)(m.cols() - c),
                   mult);
      m.at(k, c) = f.zero();  // guard against residue drift
    }
    pivots.push_back(c);
    ++r;
  }
  if (full_rref) {
    for (int k = (int)pivots.size() - 1; k >= 0; --k) {
      int c = pivots[k];
      auto pinv = f.inv(m.at(k, c));
      f.row_scale(m.row(k) + c, (std::size_t)(m.cols() - c), pinv);
      for (int up = 0; up < k; ++up) {
        if (f.is_zero(m.at(up, c))) continue;
        auto mult = f.neg(m.at(up, c));
        f.row_addmul(m.row(up) + c, m.row(k) + c,
                     (std::size_t)(m.cols() - c), mult);
        m.at(up, c) = f.zero();
      }
    }
  }
  return pivots;
}

}  // namespace detail

template <class F>
long long matrix_rank(Matrix<F> m) {
  return (long long)detail::echelonize(m, false).size();
}

template <class F>
struct KernelImage {
  long long rank = 0;
  // kernel basis vectors (length = cols), one per free column
  std::vector<std::vector<typename F::Elt>> kernel;
  // indices of the pivot columns of the input; the corresponding original
  // columns form a basis of the column space
  std::vector<int> image_columns;
};

template <class F>
KernelImage<F> rank_kernel_image(Matrix<F> m) {
  const F& f = m.field();
  KernelImage<F> out;
  std::vector<int> pivots = detail::echelonize(m, true);
  out.rank = (long long)pivots.size();
  out.image_columns = pivots;
  std::vector<char> is_pivot((std::size_t)m.cols(), 0);
  for (int c : pivots) is_pivot[(std::size_t)c] = 1;
  for (int c = 0; c < m.cols(); ++c) {
    if (is_pivot[(std::size_t)c]) continue;
    std::vector<typename F::Elt> v((std::size_t)m.cols(), f.zero());
    v[(std::size_t)c] = f.one();
    for (int k = 0; k < (int)pivots.size(); ++k)
      v[(std::size_t)pivots[k]] = f.neg(m.at(k, c));
    out.kernel.push_back(std::move(v));
  }
  return out;
}

// Coordinates on coker(M) = k^rows / col(M): a reduced basis of the column
// space plus the list of standard coordinates that survive as a basis of
// the quotient.  project() rewrites any vector in those coordinates.
template <class F>
struct Cokernel {
  long long dim = 0;
  int ambient = 0;
  std::vector<int> basis_rows;   // non-pivot coordinates, ascending
  std::vector<int> pivot_rows;   // pivot coordinates of the column space
  Matrix<F> reduced;             // rank x ambient, RREF rows spanning col(M)

  std::vector<typename F::Elt> project(
      std::vector<typename F::Elt> v) const {
    const F& f = reduced.field();
    for (int k = 0; k < (int)pivot_rows.size(); ++k) {
      auto c = v[(std::size_t)pivot_rows[k]];
      if (f.is_zero(c)) continue;
      f.row_addmul(v.data(), reduced.row(k), v.size(), f.neg(c));
    }
    std::vector<typename F::Elt> out;
    out.reserve(basis_rows.size());
    for (int i : basis_rows) out.push_back(v[(std::size_t)i]);
    return out;
  }
};

template <class F>
Cokernel<F> cokernel(const Matrix<F>& m) {
  Matrix<F> t = m.transposed();
  std::vector<int> pivots = detail::echelonize(t, true);
  Cokernel<F> out{0, m.rows(), {}, pivots,
                  Matrix<F>(m.field(), (int)pivots.size(), m.rows())};
  for (int k = 0; k < (int)pivots.size(); ++k)
    for (int j = 0; j < m.rows(); ++j) out.reduced.at(k, j) = t.at(k, j);
  std::vector<char> is_pivot((std::size_t)m.rows(), 0);
  for (int c : pivots) is_pivot[(std::size_t)c] = 1;
  for (int i = 0; i < m.rows(); ++i)
    if (!is_pivot[(std::size_t)i]) out.basis_rows.push_back(i);
  out.dim = (long long)out.basis_rows.size();
  return out;
}

// --- sparse rank over F_p ------------------------------------------------

struct SparseRowsFp {
  int rows = 0, cols = 0;
  // each row sorted by column index, values canonical nonzero residues
  std::vector<std::vector<std::pair<int, std::uint32_t>>> data;
};

// Structured elimination: among rows sharing the least leading column,
// the sparsest (ties by index) becomes the pivot.  Deterministic.
long long sparse_rank_fp(const Fp& f, SparseRowsFp m);

}  // namespace monadcoh
