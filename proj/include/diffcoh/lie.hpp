#pragma once

// Lie algebras by structure constants, difference operators D on them, and
// representations (V, T, θ).

#include <stdexcept>
#include <string>
#include <vector>

#include "diffcoh/group.hpp"
#include "diffcoh/linalg.hpp"

namespace diffcoh {

template <ExactField S>
class LieAlgebra {
 public:
  /// brackets[i][j] = [eᵢ, eⱼ] in coordinates.
  using Constants = std::vector<std::vector<Vec<S>>>;

  static ValidationReport validate(const Constants& c) {
    ValidationReport report;
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (c[i].size() != n) throw std::invalid_argument("structure constants are not square");
      for (std::size_t j = 0; j < n; ++j)
        if (c[i][j].size() != static_cast<Index>(n)) throw std::invalid_argument("bracket vector has the wrong length");
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!(c[i][j] == Vec<S>(-c[j][i]))) report.add("antisymmetry", pair_label(i, j));
    LieAlgebra raw;
    raw.c_ = c;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const Vec<S> x = raw.basis(i), y = raw.basis(j), z = raw.basis(k);
          const Vec<S> jac = raw.bracket(x, raw.bracket(y, z)) + raw.bracket(y, raw.bracket(z, x)) +
                             raw.bracket(z, raw.bracket(x, y));
          if (!is_zero_matrix(jac))
            report.add("Jacobi", "(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ",e" +
                                     std::to_string(k + 1) + ")");
        }
    return report;
  }

  /// Throws ValidationError on an antisymmetry or Jacobi failure.
  explicit LieAlgebra(Constants c) : c_(std::move(c)) {
    auto report = validate(c_);
    if (!report.ok()) throw ValidationError(std::move(report));
  }

  static LieAlgebra abelian(Index n) {
    return LieAlgebra(Constants(static_cast<std::size_t>(n), std::vector<Vec<S>>(static_cast<std::size_t>(n), Vec<S>::Zero(n))));
  }

  Index dim() const { return static_cast<Index>(c_.size()); }
  const Constants& constants() const { return c_; }
  Vec<S> basis(std::size_t i) const { return Vec<S>::Unit(dim(), static_cast<Index>(i)); }
  const Vec<S>& bracket_basis(std::size_t i, std::size_t j) const { return c_[i][j]; }
  Vec<S> bracket(const Vec<S>& x, const Vec<S>& y) const {
    Vec<S> out = Vec<S>::Zero(dim());
    for (Index i = 0; i < dim(); ++i) {
      if (is_zero(x(i))) continue;
      for (Index j = 0; j < dim(); ++j)
        if (!is_zero(y(j))) out += (x(i) * y(j)) * c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return out;
  }

  static std::string pair_label(std::size_t i, std::size_t j) {
    return "(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ")";
  }

 private:
  LieAlgebra() = default;
  Constants c_;
};

/// D[x,y] = [Dx,y] + [x,Dy] + [Dx,Dy] on every pair of basis elements.
template <ExactField S>
ValidationReport check_lie_difference_operator(const LieAlgebra<S>& g, const Mat<S>& d) {
  if (d.rows() != g.dim() || d.cols() != g.dim()) throw std::invalid_argument("D has the wrong shape");
  ValidationReport report;
  for (Index i = 0; i < g.dim(); ++i)
    for (Index j = 0; j < g.dim(); ++j) {
      const Vec<S> x = g.basis(static_cast<std::size_t>(i)), y = g.basis(static_cast<std::size_t>(j));
      const Vec<S> dx = d * x, dy = d * y;
      const Vec<S> lhs = d * g.bracket(x, y);
      const Vec<S> rhs = g.bracket(dx, y) + g.bracket(x, dy) + g.bracket(dx, dy);
      if (!(lhs == rhs)) report.add("Lie difference identity", LieAlgebra<S>::pair_label(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    }
  return report;
}

/// A Lie algebra with a verified difference operator; D's columns are the
/// images of the basis vectors.
template <ExactField S>
class LieDifferenceOp {
 public:
  LieDifferenceOp(LieAlgebra<S> g, Mat<S> d) : g_(std::move(g)), d_(std::move(d)) {
    auto report = check_lie_difference_operator<S>(g_, d_);
    if (!report.ok()) throw ValidationError(std::move(report));
  }
  const LieAlgebra<S>& algebra() const { return g_; }
  const Mat<S>& matrix() const { return d_; }
  Index dim() const { return g_.dim(); }

 private:
  LieAlgebra<S> g_;
  Mat<S> d_;
};

template <ExactField S>
struct LieRep {
  Index dim = 0;
  std::vector<Mat<S>> theta;  // θ(eᵢ)
  Mat<S> t;

  /// θ(x) for a coordinate vector x.
  Mat<S> at(const Vec<S>& x) const {
    Mat<S> out = Mat<S>::Zero(dim, dim);
    for (Index i = 0; i < x.size(); ++i)
      if (!is_zero(x(i))) out += x(i) * theta[static_cast<std::size_t>(i)];
    return out;
  }
};

/// θ[x,y] = [θx,θy] and T(θ(x)u) = θ(Dx)u + θ(x)Tu + θ(Dx)Tu on basis
/// elements x, y and basis vectors u.
template <ExactField S>
ValidationReport check_lie_representation(const LieDifferenceOp<S>& ld, const LieRep<S>& rep) {
  const auto& g = ld.algebra();
  if (static_cast<Index>(rep.theta.size()) != g.dim()) throw std::invalid_argument("θ needs one matrix per basis element");
  for (const auto& m : rep.theta)
    if (m.rows() != rep.dim || m.cols() != rep.dim) throw std::invalid_argument("θ matrix has the wrong shape");
  if (rep.t.rows() != rep.dim || rep.t.cols() != rep.dim) throw std::invalid_argument("T has the wrong shape");
  ValidationReport report;
  for (Index i = 0; i < g.dim(); ++i)
    for (Index j = 0; j < g.dim(); ++j) {
      const auto& a = rep.theta[static_cast<std::size_t>(i)];
      const auto& b = rep.theta[static_cast<std::size_t>(j)];
      if (!(rep.at(g.bracket_basis(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) == Mat<S>(a * b - b * a)))
        report.add("θ[x,y] = [θx,θy]", LieAlgebra<S>::pair_label(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    }
  for (Index i = 0; i < g.dim(); ++i) {
    const Mat<S>& th = rep.theta[static_cast<std::size_t>(i)];
    const Mat<S> thd = rep.at(ld.matrix().col(i));
    const Mat<S> lhs = rep.t * th;
    const Mat<S> rhs = thd + th * rep.t + thd * rep.t;
    for (Index k = 0; k < rep.dim; ++k)
      if (!(lhs.col(k) == rhs.col(k)))
        report.add("Lie representation identity", "(e" + std::to_string(i + 1) + ",u" + std::to_string(k + 1) + ")");
  }
  return report;
}

/// θ_D(x) = θ(x) + θ(Dx), verified to be a Lie algebra representation.
template <ExactField S>
std::vector<Mat<S>> theta_D(const LieDifferenceOp<S>& ld, const LieRep<S>& rep) {
  std::vector<Mat<S>> out;
  for (Index i = 0; i < ld.dim(); ++i) out.push_back(rep.theta[static_cast<std::size_t>(i)] + rep.at(ld.matrix().col(i)));
  const auto& g = ld.algebra();
  LieRep<S> twisted{rep.dim, out, rep.t};
  ValidationReport report;
  for (Index i = 0; i < g.dim(); ++i)
    for (Index j = 0; j < g.dim(); ++j) {
      const auto& a = out[static_cast<std::size_t>(i)];
      const auto& b = out[static_cast<std::size_t>(j)];
      if (!(twisted.at(g.bracket_basis(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) == Mat<S>(a * b - b * a)))
        report.add("θ_D[x,y] = [θ_D x,θ_D y]", LieAlgebra<S>::pair_label(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    }
  if (!report.ok()) throw ValidationError(std::move(report));
  return out;
}

}  // namespace diffcoh
