#pragma once

// Exact dense linear algebra over ExactField scalars, plus ring-generic
// determinant/adjugate and the jet-matrix inverse.

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diffcoh/scalar.hpp"

namespace diffcoh {

template <ExactField S>
struct RowEchelon {
  Mat<S> reduced;             // reduced row echelon form
  std::vector<Index> pivots;  // pivot column of each nonzero row
  Index rank() const { return static_cast<Index>(pivots.size()); }
};

/// Gauss–Jordan elimination. The pivot of each column is the first nonzero
/// entry at or below the current row, so results are deterministic.
template <ExactField S>
RowEchelon<S> row_echelon(Mat<S> m) {
  RowEchelon<S> out;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index pivot = -1;
    for (Index r = row; r < m.rows(); ++r)
      if (!is_zero(m(r, col))) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    const S inv = S(1) / m(row, col);
    for (Index c = col; c < m.cols(); ++c) m(row, c) = m(row, c) * inv;
    for (Index r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      const S f = m(r, col);
      for (Index c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <ExactField S>
Index rank(const Mat<S>& m) {
  return row_echelon<S>(m).rank();
}

/// Basis of {v : m·v = 0}, one basis vector per column, one per free column
/// of the echelon form.
template <ExactField S>
Mat<S> kernel_basis(const Mat<S>& m) {
  const auto e = row_echelon<S>(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (Index c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  const Index nullity = m.cols() - e.rank();
  Mat<S> basis = Mat<S>::Zero(m.cols(), nullity);
  Index k = 0;
  for (Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, k) = S(1);
    for (Index r = 0; r < e.rank(); ++r) basis(e.pivots[static_cast<std::size_t>(r)], k) = -e.reduced(r, free);
    ++k;
  }
  return basis;
}

/// The linearly independent columns of m chosen greedily left to right.
template <ExactField S>
Mat<S> column_basis(const Mat<S>& m) {
  const auto e = row_echelon<S>(m);
  Mat<S> out(m.rows(), e.rank());
  for (Index k = 0; k < e.rank(); ++k) out.col(k) = m.col(e.pivots[static_cast<std::size_t>(k)]);
  return out;
}

/// Some x with a·x = b, or nothing when b is outside the column space.
template <ExactField S>
std::optional<Vec<S>> solve(const Mat<S>& a, const Vec<S>& b) {
  if (b.rows() != a.rows()) throw std::invalid_argument("solve: dimension mismatch");
  Mat<S> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  const auto e = row_echelon<S>(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vec<S> x = Vec<S>::Zero(a.cols());
  for (Index r = 0; r < e.rank(); ++r) x(e.pivots[static_cast<std::size_t>(r)]) = e.reduced(r, a.cols());
  return x;
}

template <ExactField S>
bool in_column_space(const Mat<S>& a, const Vec<S>& b) {
  return solve<S>(a, b).has_value();
}

template <ExactField S>
std::optional<Mat<S>> inverse(const Mat<S>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const Index n = m.rows();
  Mat<S> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = Mat<S>::Identity(n, n);
  const auto e = row_echelon<S>(std::move(aug));
  if (e.rank() < n || e.pivots.back() >= n) return std::nullopt;
  return Mat<S>(e.reduced.rightCols(n));
}

namespace detail {

template <class R>
R laplace_det(const Mat<R>& m, std::vector<Index>& cols, Index row) {
  const Index n = m.rows();
  if (row == n) return R(1);
  R acc(0);
  bool negative = false;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const Index c = cols[k];
    if (!is_zero(m(row, c))) {
      cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
      R term = m(row, c) * laplace_det(m, cols, row + 1);
      cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
      acc = negative ? acc - term : acc + term;
    }
    negative = !negative;
  }
  return acc;
}

}  // namespace detail

/// Ring-generic determinant by cofactor expansion (no division), so it is
/// valid over jet rings. Intended for the small k×k matrices of GL_k.
template <class R>
R determinant(const Mat<R>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() > 8) throw std::invalid_argument("cofactor determinant limited to size 8");
  std::vector<Index> cols(static_cast<std::size_t>(m.cols()));
  for (Index c = 0; c < m.cols(); ++c) cols[static_cast<std::size_t>(c)] = c;
  return detail::laplace_det(m, cols, 0);
}

/// Transposed cofactor matrix; m·adj(m) = det(m)·I over any commutative ring.
template <class R>
Mat<R> adjugate(const Mat<R>& m) {
  const Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("adjugate of a non-square matrix");
  Mat<R> adj(n, n);
  if (n == 1) {
    adj(0, 0) = R(1);
    return adj;
  }
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      Mat<R> minor(n - 1, n - 1);
      for (Index r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (Index c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      R cof = determinant(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? cof : R(-cof);
    }
  return adj;
}

template <ExactField S>
Mat<S> base_part(const Mat<Jet<S>>& m) {
  return m.unaryExpr([](const Jet<S>& x) { return x.base(); });
}

/// Inverse over a jet ring: with m = M₀(I + N), N nilpotent,
/// m⁻¹ = (I − N + N² − …)M₀⁻¹; the series stops once a power of N vanishes.
/// Throws std::domain_error when the base part is singular.
template <ExactField S>
Mat<Jet<S>> jet_matrix_inverse(const Mat<Jet<S>>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square jet matrix");
  const Index n = m.rows();
  const auto base_inv = inverse<S>(base_part<S>(m));
  if (!base_inv) throw std::domain_error("jet matrix has a singular base part");
  const Mat<Jet<S>> m0inv = base_inv->template cast<Jet<S>>();
  const Mat<Jet<S>> nil = m0inv * m - Mat<Jet<S>>::Identity(n, n);
  Mat<Jet<S>> sum = Mat<Jet<S>>::Identity(n, n);
  Mat<Jet<S>> power = sum;
  for (unsigned k = 0; k <= Jet<S>::max_generators; ++k) {
    power = Mat<Jet<S>>(-(power * nil));
    if (is_zero_matrix(power)) break;
    sum += power;
  }
  return sum * m0inv;
}

}  // namespace diffcoh
