#pragma once

// Alternating cochains on the wedge basis, the Chevalley–Eilenberg
// coboundary, the map K, δ_θ, and the Lie-side long exact sequence.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "diffcoh/homological.hpp"
#include "diffcoh/lie.hpp"

namespace diffcoh {

/// Strictly increasing index tuples of length n from {0..m−1}, lexicographic.
class WedgeBasis {
 public:
  WedgeBasis(Index m, Index n) : m_(m), n_(n) {
    if (n < 0 || n > m) return;
    std::vector<Index> c(static_cast<std::size_t>(n));
    for (Index k = 0; k < n; ++k) c[static_cast<std::size_t>(k)] = k;
    while (true) {
      rank_.emplace(c, static_cast<Index>(combos_.size()));
      combos_.push_back(c);
      Index k = n - 1;
      while (k >= 0 && c[static_cast<std::size_t>(k)] == m - n + k) --k;
      if (k < 0) break;
      ++c[static_cast<std::size_t>(k)];
      for (Index l = k + 1; l < n; ++l) c[static_cast<std::size_t>(l)] = c[static_cast<std::size_t>(l - 1)] + 1;
    }
  }
  Index size() const { return static_cast<Index>(combos_.size()); }
  Index degree() const { return n_; }
  const std::vector<Index>& combo(Index r) const { return combos_[static_cast<std::size_t>(r)]; }

  /// Rank and permutation sign of an arbitrary index tuple; nothing on repeats.
  std::optional<std::pair<Index, int>> locate(std::vector<Index> idx) const {
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i)
      for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
        if (idx[j - 1] == idx[j]) return std::nullopt;
        std::swap(idx[j - 1], idx[j]);
        sign = -sign;
      }
    return std::make_pair(rank_.at(idx), sign);
  }

 private:
  Index m_, n_;
  std::vector<std::vector<Index>> combos_;
  std::map<std::vector<Index>, Index> rank_;
};

/// Element of Hom(∧ⁿ𝔤, V): values[r·dimV + k] is coordinate k of ζ on the r-th
/// increasing tuple.
template <ExactField S>
struct LieCochain {
  Index lie_dim = 0;
  Index degree = 0;
  Index vdim = 0;
  Vec<S> values;

  static LieCochain zero(Index lie_dim, Index degree, Index vdim) {
    return {lie_dim, degree, vdim, Vec<S>::Zero(WedgeBasis(lie_dim, degree).size() * vdim)};
  }
  friend bool operator==(const LieCochain& a, const LieCochain& b) {
    return a.lie_dim == b.lie_dim && a.degree == b.degree && a.vdim == b.vdim && a.values == b.values;
  }
};

/// ζ on basis elements with arbitrary indices (sign of the sorting
/// permutation, zero on repeats).
template <ExactField S>
Vec<S> evaluate_basis(const LieCochain<S>& z, const WedgeBasis& wb, const std::vector<Index>& idx) {
  const auto loc = wb.locate(idx);
  if (!loc) return Vec<S>::Zero(z.vdim);
  Vec<S> v = z.values.segment(loc->first * z.vdim, z.vdim);
  return loc->second > 0 ? v : Vec<S>(-v);
}

/// ζ(v₁, …, vₙ) by multilinear expansion.
template <ExactField S>
Vec<S> evaluate(const LieCochain<S>& z, const WedgeBasis& wb, const std::vector<Vec<S>>& args) {
  Vec<S> acc = Vec<S>::Zero(z.vdim);
  if (static_cast<Index>(args.size()) != z.degree) throw std::invalid_argument("Lie cochain evaluated at the wrong arity");
  if (z.degree == 0) return acc;
  std::vector<Index> idx(args.size(), 0);
  const Index m = z.lie_dim;
  while (true) {
    S coeff(1);
    bool nonzero = true;
    for (std::size_t k = 0; k < args.size() && nonzero; ++k) {
      coeff = coeff * args[k](idx[k]);
      nonzero = !is_zero(coeff);
    }
    if (nonzero) acc += coeff * evaluate_basis(z, wb, idx);
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == m) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return acc;
}

/// The operators of one Lie fixture (𝔤, D, V, T, θ).
template <ExactField S>
class LieComplex {
 public:
  LieComplex(LieDifferenceOp<S> ld, LieRep<S> rep) : ld_(std::move(ld)), rep_(std::move(rep)) {
    auto report = check_lie_representation<S>(ld_, rep_);
    if (!report.ok()) throw ValidationError(std::move(report));
    theta_d_ = theta_D<S>(ld_, rep_);
  }

  const LieDifferenceOp<S>& op() const { return ld_; }
  const LieRep<S>& rep() const { return rep_; }
  const std::vector<Mat<S>>& theta_d() const { return theta_d_; }
  Index lie_dim() const { return ld_.dim(); }
  Index space_dim(Index n) const { return WedgeBasis(lie_dim(), n).size() * rep_.dim; }

  /// Chevalley–Eilenberg coboundary with coefficients θ (or θ_D).
  LieCochain<S> ce_coboundary(const LieCochain<S>& z, bool twisted = false) const {
    check(z);
    const auto& th = twisted ? theta_d_ : rep_.theta;
    const auto& g = ld_.algebra();
    const Index n = z.degree;
    const WedgeBasis in(lie_dim(), n), out(lie_dim(), n + 1);
    auto res = LieCochain<S>::zero(lie_dim(), n + 1, rep_.dim);
    for (Index r = 0; r < out.size(); ++r) {
      const auto& x = out.combo(r);
      Vec<S> acc = Vec<S>::Zero(rep_.dim);
      for (Index i = 0; i <= n; ++i) {
        std::vector<Index> rest;
        for (Index k = 0; k <= n; ++k)
          if (k != i) rest.push_back(x[static_cast<std::size_t>(k)]);
        const Vec<S> v = th[static_cast<std::size_t>(x[static_cast<std::size_t>(i)])] * evaluate_basis(z, in, rest);
        acc = i % 2 ? Vec<S>(acc - v) : Vec<S>(acc + v);
      }
      for (Index i = 0; i <= n; ++i)
        for (Index j = i + 1; j <= n; ++j) {
          const Vec<S>& br = g.bracket_basis(static_cast<std::size_t>(x[static_cast<std::size_t>(i)]),
                                             static_cast<std::size_t>(x[static_cast<std::size_t>(j)]));
          std::vector<Vec<S>> args{br};
          for (Index k = 0; k <= n; ++k)
            if (k != i && k != j) args.push_back(g.basis(static_cast<std::size_t>(x[static_cast<std::size_t>(k)])));
          const Vec<S> v = evaluate(z, in, args);
          acc = (i + j) % 2 ? Vec<S>(acc - v) : Vec<S>(acc + v);
        }
      res.values.segment(r * rep_.dim, rep_.dim) = acc;
    }
    return res;
  }

  /// K by the sum over nonempty subsets of arguments hit by D.
  LieCochain<S> k_subset(const LieCochain<S>& z) const {
    check(z);
    const Index n = z.degree;
    const WedgeBasis wb(lie_dim(), n);
    auto res = LieCochain<S>::zero(lie_dim(), n, rep_.dim);
    const auto& g = ld_.algebra();
    for (Index r = 0; r < wb.size(); ++r) {
      const auto& x = wb.combo(r);
      Vec<S> acc = Vec<S>::Zero(rep_.dim);
      for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<Vec<S>> args;
        for (Index k = 0; k < n; ++k) {
          const Vec<S> e = g.basis(static_cast<std::size_t>(x[static_cast<std::size_t>(k)]));
          args.push_back(mask & (1u << k) ? Vec<S>(ld_.matrix() * e) : e);
        }
        acc += evaluate(z, wb, args);
      }
      acc -= rep_.t * evaluate_basis(z, wb, x);
      res.values.segment(r * rep_.dim, rep_.dim) = n % 2 ? Vec<S>(-acc) : acc;
    }
    return res;
  }

  /// K by (−1)ⁿ(ζ(D₊x₁, …, D₊xₙ) − ζ(x) − Tζ(x)) with D₊ = id + D.
  LieCochain<S> k_shifted(const LieCochain<S>& z) const {
    check(z);
    const Index n = z.degree;
    const WedgeBasis wb(lie_dim(), n);
    auto res = LieCochain<S>::zero(lie_dim(), n, rep_.dim);
    const auto& g = ld_.algebra();
    const Mat<S> dplus = ld_.matrix() + Mat<S>::Identity(lie_dim(), lie_dim());
    for (Index r = 0; r < wb.size(); ++r) {
      const auto& x = wb.combo(r);
      std::vector<Vec<S>> args;
      for (Index k = 0; k < n; ++k) args.push_back(dplus * g.basis(static_cast<std::size_t>(x[static_cast<std::size_t>(k)])));
      const Vec<S> base = evaluate_basis(z, wb, x);
      const Vec<S> acc = evaluate(z, wb, args) - base - rep_.t * base;
      res.values.segment(r * rep_.dim, rep_.dim) = n % 2 ? Vec<S>(-acc) : acc;
    }
    return res;
  }

  /// Both forms of K; a disagreement throws std::logic_error naming the
  /// first differing basis tuple.
  LieCochain<S> K(const LieCochain<S>& z) const {
    auto a = k_subset(z);
    const auto b = k_shifted(z);
    if (!(a == b)) {
      const WedgeBasis wb(lie_dim(), z.degree);
      for (Index r = 0; r < wb.size(); ++r)
        if (!(a.values.segment(r * rep_.dim, rep_.dim) == b.values.segment(r * rep_.dim, rep_.dim)))
          throw std::logic_error("K subset form and D+ form disagree at " + tuple_label(wb.combo(r)));
    }
    return a;
  }

  /// δ_θ(ζ, ξ) = (d^θζ, d^{θ_D}ξ + Kζ); ξ absent in degree 1.
  std::pair<LieCochain<S>, LieCochain<S>> delta_theta(const LieCochain<S>& z,
                                                      const std::optional<LieCochain<S>>& xi) const {
    if ((z.degree == 1) != !xi.has_value()) throw std::invalid_argument("degree-1 Lie pairs carry no ξ");
    auto second = K(z);
    if (xi) {
      if (xi->degree != z.degree - 1) throw std::invalid_argument("ξ has the wrong degree");
      second.values += ce_coboundary(*xi, true).values;
    }
    return {ce_coboundary(z), second};
  }

  template <class Op>
  Mat<S> assemble(Index in_degree, Index out_degree, Op&& op) const {
    Mat<S> m = Mat<S>::Zero(space_dim(out_degree), space_dim(in_degree));
    for (Index c = 0; c < m.cols(); ++c) {
      auto unit = LieCochain<S>::zero(lie_dim(), in_degree, rep_.dim);
      unit.values(c) = S(1);
      m.col(c) = op(unit).values;
    }
    return m;
  }

  Mat<S> ce_matrix(Index n, bool twisted = false) const {
    return assemble(n, n + 1, [&](const LieCochain<S>& z) { return ce_coboundary(z, twisted); });
  }
  Mat<S> k_matrix(Index n) const {
    return assemble(n, n, [&](const LieCochain<S>& z) { return K(z); });
  }
  Mat<S> k_subset_matrix(Index n) const {
    return assemble(n, n, [&](const LieCochain<S>& z) { return k_subset(z); });
  }
  Mat<S> k_shifted_matrix(Index n) const {
    return assemble(n, n, [&](const LieCochain<S>& z) { return k_shifted(z); });
  }

  DifferenceComplexData<S> complex_data(Index top) const {
    if (top < 1) throw std::invalid_argument("max degree must be at least 1");
    DifferenceComplexData<S> c;
    c.dims.assign(static_cast<std::size_t>(top + 2), 0);
    for (Index n = 1; n <= top + 1; ++n) c.dims[n] = space_dim(n);
    c.dA.resize(static_cast<std::size_t>(top + 1));
    c.dAD.resize(static_cast<std::size_t>(top + 1));
    c.K.resize(static_cast<std::size_t>(top + 1));
    for (Index n = 1; n <= top; ++n) {
      c.dA[n] = ce_matrix(n);
      c.dAD[n] = ce_matrix(n, true);
      c.K[n] = k_matrix(n);
    }
    return c;
  }

  static std::string tuple_label(const std::vector<Index>& x) {
    std::string s = "(";
    for (std::size_t k = 0; k < x.size(); ++k) s += (k ? ",e" : "e") + std::to_string(x[k] + 1);
    return s + ")";
  }

 private:
  void check(const LieCochain<S>& z) const {
    if (z.lie_dim != lie_dim() || z.vdim != rep_.dim) throw std::invalid_argument("Lie cochain does not match the fixture");
  }

  LieDifferenceOp<S> ld_;
  LieRep<S> rep_;
  std::vector<Mat<S>> theta_d_;
};

template <ExactField S>
std::vector<DegreeDims> lie_cohomology_dims(const LieComplex<S>& cx, Index max_degree) {
  const DifferenceCohomology<S> h(cx.complex_data(max_degree));
  std::vector<DegreeDims> out;
  for (Index n = 1; n <= max_degree; ++n) out.push_back({n, h.a[n].dim(), h.b[n].dim(), h.tot[n].dim()});
  return out;
}

template <ExactField S>
LesData<S> verify_les_lie(const LieComplex<S>& cx, Index max_degree) {
  return verify_les_data<S>(cx.complex_data(max_degree), "g,V", "D,T", "g,D,V,T");
}

}  // namespace diffcoh
