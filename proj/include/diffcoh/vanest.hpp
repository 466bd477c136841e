#pragma once

// Matrix groups evaluated over first-order jets: differentiation of 𝒟 and Θ
// at the identity, the van Est map on program cochains, and the checks that
// it commutes with the two difference complexes.
//
// Matrices live over M ∈ {ℚ, ℚ(i)}. The Lie side is always over ℚ: a ℚ(i)
// entry contributes its real and imaginary parts as two coordinates.

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "diffcoh/lie_cohomology.hpp"
#include "diffcoh/program.hpp"

namespace diffcoh {

template <class M>
struct RealCoordinates;

template <>
struct RealCoordinates<Rational> {
  static constexpr Index factor = 1;
  static Vec<Rational> split(const Mat<Rational>& m) {
    Vec<Rational> v(m.size());
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
    return v;
  }
  static Mat<Rational> realify(const Mat<Rational>& m) { return m; }
  /// Vectors whose images under a ℚ-linear map give its columns in split coordinates.
  static std::vector<Mat<Rational>> real_basis(Index d) {
    std::vector<Mat<Rational>> out;
    for (Index k = 0; k < d; ++k) out.push_back(Vec<Rational>::Unit(d, k));
    return out;
  }
};

template <>
struct RealCoordinates<GaussianRational> {
  static constexpr Index factor = 2;
  static Vec<Rational> split(const Mat<GaussianRational>& m) {
    const Index n = m.size();
    Vec<Rational> v(2 * n);
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) {
        v(i * m.cols() + j) = m(i, j).real();
        v(n + i * m.cols() + j) = m(i, j).imag();
      }
    return v;
  }
  /// A ↦ [[Re A, −Im A], [Im A, Re A]], the action on (Re u; Im u).
  static Mat<Rational> realify(const Mat<GaussianRational>& m) {
    const Index r = m.rows(), c = m.cols();
    Mat<Rational> out(2 * r, 2 * c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) {
        out(i, j) = m(i, j).real();
        out(i, c + j) = -m(i, j).imag();
        out(r + i, j) = m(i, j).imag();
        out(r + i, c + j) = m(i, j).real();
      }
    return out;
  }
  static std::vector<Mat<GaussianRational>> real_basis(Index d) {
    std::vector<Mat<GaussianRational>> out;
    for (Index k = 0; k < d; ++k) out.push_back(Vec<GaussianRational>::Unit(d, k));
    for (Index k = 0; k < d; ++k) out.push_back(Vec<GaussianRational>(GaussianRational::i() * Vec<GaussianRational>::Unit(d, k)));
    return out;
  }
};

/// GL_k over M: the elements are the k×k matrices with nonzero determinant.
struct MatrixGroupSpec {
  Index size = 0;
};

/// Everything the van Est checks need about a matrix difference group and
/// its representation. 𝒟 and Θ take one matrix input; T takes one vdim×1
/// vector (so that merely ℚ-linear maps such as u ↦ ū − u are expressible).
template <class M>
struct VanEstFixture {
  MatrixGroupSpec group;
  std::vector<Mat<M>> basis;  // Lie algebra basis over ℚ
  Program d;
  Program theta;
  Program t;
  Index vdim = 0;  // dim V over M

  Index real_vdim() const { return vdim * RealCoordinates<M>::factor; }
};

namespace detail {

template <class M>
Mat<Jet<M>> jet_point(const Mat<M>& x, unsigned gens, unsigned i) {
  const Index k = x.rows();
  Mat<Jet<M>> out = Mat<Jet<M>>::Identity(k, k);
  const Jet<M> eps = Jet<M>::generator(gens, i);
  for (Index r = 0; r < k; ++r)
    for (Index c = 0; c < k; ++c)
      if (!is_zero(x(r, c))) out(r, c) += eps * Jet<M>(x(r, c));
  return out;
}

template <class M>
Mat<M> coefficient(const Mat<Jet<M>>& m, typename Jet<M>::Mask mask) {
  return m.unaryExpr([mask](const Jet<M>& x) { return x.coefficient_mask(mask); });
}

template <class M>
Mat<Rational> split_columns(const std::vector<Mat<M>>& mats) {
  if (mats.empty()) return Mat<Rational>(0, 0);
  Mat<Rational> b(RealCoordinates<M>::split(mats[0]).size(), static_cast<Index>(mats.size()));
  for (std::size_t j = 0; j < mats.size(); ++j) b.col(static_cast<Index>(j)) = RealCoordinates<M>::split(mats[j]);
  return b;
}

inline Vec<Rational> coordinates_in(const Mat<Rational>& b, const Vec<Rational>& v, const std::string& what) {
  auto c = solve<Rational>(b, v);
  if (!c) throw std::invalid_argument(what + " leaves the span of the Lie algebra basis");
  return *c;
}

inline std::string lie_cochain_mismatch(const LieCochain<Rational>& a, const LieCochain<Rational>& b) {
  const WedgeBasis wb(a.lie_dim, a.degree);
  for (Index r = 0; r < wb.size(); ++r)
    if (!(a.values.segment(r * a.vdim, a.vdim) == b.values.segment(r * b.vdim, b.vdim)))
      return LieComplex<Rational>::tuple_label(wb.combo(r));
  return {};
}

}  // namespace detail

/// Structure constants of the ℚ-span of a list of matrices under the
/// commutator. Throws std::invalid_argument if the list is dependent or the
/// span is not closed.
template <class M>
LieAlgebra<Rational> matrix_lie_algebra(const std::vector<Mat<M>>& basis) {
  if (basis.empty()) throw std::invalid_argument("empty Lie algebra basis");
  const Mat<Rational> b = detail::split_columns<M>(basis);
  if (rank<Rational>(b) != b.cols()) throw std::invalid_argument("Lie algebra basis is linearly dependent");
  typename LieAlgebra<Rational>::Constants c(basis.size(), std::vector<Vec<Rational>>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Mat<M> br = basis[i] * basis[j] - basis[j] * basis[i];
      c[i][j] = detail::coordinates_in(b, RealCoordinates<M>::split(br), "commutator " + LieAlgebra<Rational>::pair_label(i, j));
    }
  return LieAlgebra<Rational>(std::move(c));
}

/// D = ε-coefficient of 𝒟(I + εx) on each basis element, validated as a Lie
/// difference operator.
template <class M>
LieDifferenceOp<Rational> differentiate_difference_operator(const std::vector<Mat<M>>& basis, const Program& dprog) {
  auto g = matrix_lie_algebra<M>(basis);
  const Mat<Rational> b = detail::split_columns<M>(basis);
  Mat<Rational> d(g.dim(), g.dim());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const Mat<Jet<M>> img = evaluate<Jet<M>>(dprog, std::vector<Mat<Jet<M>>>{detail::jet_point<M>(basis[j], 1, 1)});
    const Mat<M> dx = detail::coefficient<M>(img, 1);
    d.col(static_cast<Index>(j)) = detail::coordinates_in(b, RealCoordinates<M>::split(dx), "D(e" + std::to_string(j + 1) + ")");
  }
  return LieDifferenceOp<Rational>(std::move(g), std::move(d));
}

/// The matrix of a ℚ-linear program on V in split coordinates.
template <class M>
Mat<Rational> linear_program_matrix(const Program& t, Index vdim) {
  const auto units = RealCoordinates<M>::real_basis(vdim);
  Mat<Rational> out(vdim * RealCoordinates<M>::factor, static_cast<Index>(units.size()));
  for (std::size_t k = 0; k < units.size(); ++k) {
    const Mat<M> img = evaluate<M>(t, std::vector<Mat<M>>{units[k]});
    if (img.rows() != vdim || img.cols() != 1) throw std::invalid_argument("T must map V-vectors to V-vectors");
    out.col(static_cast<Index>(k)) = RealCoordinates<M>::split(img);
  }
  return out;
}

/// θ(x) = ε-coefficient of Θ(I + εx), with T from the fixture, validated
/// against D as a representation of the difference Lie algebra.
template <class M>
LieRep<Rational> differentiate_representation(const LieDifferenceOp<Rational>& ld, const VanEstFixture<M>& fx) {
  LieRep<Rational> rep;
  rep.dim = fx.real_vdim();
  for (const auto& x : fx.basis) {
    const Mat<Jet<M>> img = evaluate<Jet<M>>(fx.theta, std::vector<Mat<Jet<M>>>{detail::jet_point<M>(x, 1, 1)});
    if (img.rows() != fx.vdim || img.cols() != fx.vdim) throw std::invalid_argument("Θ has the wrong size for V");
    rep.theta.push_back(RealCoordinates<M>::realify(detail::coefficient<M>(img, 1)));
  }
  rep.t = linear_program_matrix<M>(fx.t, fx.vdim);
  auto report = check_lie_representation<Rational>(ld, rep);
  if (!report.ok()) throw ValidationError(std::move(report));
  return rep;
}

/// One summand-free evaluation of the signed sum at an ordered tuple of basis
/// indices.
template <class M>
Vec<Rational> van_est_at(const Program& alpha, const std::vector<Mat<M>>& basis, const std::vector<Index>& idx,
                         Index vdim) {
  const auto n = static_cast<unsigned>(idx.size());
  std::vector<unsigned> perm(n);
  for (unsigned k = 0; k < n; ++k) perm[k] = k;
  const typename Jet<M>::Mask top = n == 0 ? 0 : (typename Jet<M>::Mask(1) << n) - 1;
  Vec<Rational> acc = Vec<Rational>::Zero(vdim * RealCoordinates<M>::factor);
  do {
    int sign = 1;
    for (unsigned a = 0; a < n; ++a)
      for (unsigned b = a + 1; b < n; ++b)
        if (perm[a] > perm[b]) sign = -sign;
    std::vector<Mat<Jet<M>>> inputs;
    for (unsigned j = 0; j < n; ++j)
      inputs.push_back(detail::jet_point<M>(basis[static_cast<std::size_t>(idx[perm[j]])], n, j + 1));
    const Mat<Jet<M>> out = evaluate<Jet<M>>(alpha, inputs);
    if (out.rows() != vdim || out.cols() != 1)
      throw std::invalid_argument("cochain program must return a " + std::to_string(vdim) + "x1 vector");
    const Vec<Rational> v = RealCoordinates<M>::split(detail::coefficient<M>(out, top));
    acc = sign > 0 ? Vec<Rational>(acc + v) : Vec<Rational>(acc - v);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

inline constexpr Index max_van_est_degree = 3;

/// VE_n(α) on the wedge basis: Σ_σ sgn(σ)·[ε₁⋯εₙ] α(I+ε₁x_{σ(1)}, …, I+εₙx_{σ(n)}),
/// with no normalization factor. Alternation is checked on every tuple by
/// re-evaluating it with its first two entries swapped.
template <class M>
LieCochain<Rational> van_est(const Program& alpha, Index n, const std::vector<Mat<M>>& basis, Index vdim) {
  if (n < 1 || n > max_van_est_degree)
    throw std::invalid_argument("van Est degree " + std::to_string(n) + " outside 1.." + std::to_string(max_van_est_degree));
  if (alpha.arity() > n) throw std::invalid_argument("cochain program uses more than " + std::to_string(n) + " inputs");
  const Index m = static_cast<Index>(basis.size());
  auto out = LieCochain<Rational>::zero(m, n, vdim * RealCoordinates<M>::factor);
  const WedgeBasis wb(m, n);
  for (Index r = 0; r < wb.size(); ++r) {
    const auto& idx = wb.combo(r);
    const Vec<Rational> v = van_est_at<M>(alpha, basis, idx, vdim);
    if (n >= 2) {
      auto swapped = idx;
      std::swap(swapped[0], swapped[1]);
      if (!(van_est_at<M>(alpha, basis, swapped, vdim) == Vec<Rational>(-v)))
        throw std::logic_error("van Est sum is not alternating at " + LieComplex<Rational>::tuple_label(idx));
    }
    out.values.segment(r * out.vdim, out.vdim) = v;
  }
  return out;
}

// Group-side operators as programs. Cochain programs of degree n take inputs
// 0..n−1 and return a vdim×1 vector.
namespace cochain_programs {

inline Program apply1(const Program& p, const Program& g) { return p.substitute({g}); }

/// Θ(g₁)α(g₂,…) + Σᵢ(−1)ⁱα(…,gᵢgᵢ₊₁,…) + (−1)ⁿ⁺¹α(g₁,…,gₙ).
inline Program coboundary(const Program& theta, const Program& alpha, Index n) {
  std::vector<Program> g;
  for (Index k = 0; k <= n; ++k) g.push_back(Program::input(k));
  std::vector<Program> shifted(g.begin() + 1, g.end());
  Program out = apply1(theta, g[0]) * alpha.substitute(shifted);
  for (Index i = 1; i <= n; ++i) {
    std::vector<Program> args;
    for (Index k = 0; k <= n; ++k) {
      if (k == i) continue;
      args.push_back(k == i - 1 ? g[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(k + 1)] : g[static_cast<std::size_t>(k)]);
    }
    const Program term = alpha.substitute(args);
    out = i % 2 ? out - term : out + term;
  }
  const Program last = alpha.substitute(std::vector<Program>(g.begin(), g.end() - 1));
  return (n + 1) % 2 ? out - last : out + last;
}

/// g ↦ 𝒟(g)g.
inline Program d_plus(const Program& d, const Program& g) { return apply1(d, g) * g; }

/// Θ_𝒟(g) = Θ(𝒟(g)g).
inline Program twisted_theta(const Program& d, const Program& theta) { return apply1(theta, d_plus(d, Program::input(0))); }

inline Program pk(const Program& d, const Program& theta, const Program& alpha, Index n) {
  const Program g1 = Program::input(0);
  if (n == 1) {
    const Program dg = apply1(d, g1);
    return -(apply1(theta, dg) * apply1(alpha, g1)) + apply1(alpha, dg * g1) - apply1(alpha, dg);
  }
  if (n == 2) {
    const Program g2 = Program::input(1);
    const Program g12 = g1 * g2;
    return alpha.substitute({apply1(d, g1), g1}) - alpha.substitute({apply1(d, g12), g12}) +
           apply1(theta, d_plus(d, g1)) * alpha.substitute({apply1(d, g2), g2});
  }
  std::vector<Program> g;
  for (Index k = 0; k < n; ++k) g.push_back(Program::input(k));
  return Program::scalar(Rational(0)) * alpha.substitute(g);
}

/// (−1)ⁿ(α(𝒟₊g₁,…,𝒟₊gₙ) − T α(g₁,…,gₙ) − α(g₁,…,gₙ)).
inline Program hk(const Program& d, const Program& t, const Program& alpha, Index n) {
  std::vector<Program> g, gp;
  for (Index k = 0; k < n; ++k) {
    g.push_back(Program::input(k));
    gp.push_back(d_plus(d, g.back()));
  }
  const Program a = alpha.substitute(g);
  const Program body = alpha.substitute(gp) - apply1(t, a) - a;
  return n % 2 ? -body : body;
}

inline Program k(const Program& d, const Program& theta, const Program& t, const Program& alpha, Index n) {
  return pk(d, theta, alpha, n) + hk(d, t, alpha, n);
}

}  // namespace cochain_programs

/// Entries in [−3, 3] (both parts over ℚ(i)), resampled until invertible.
template <class M>
Mat<M> random_invertible(Index k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-3, 3);
  while (true) {
    Mat<M> g(k, k);
    for (Index i = 0; i < k; ++i)
      for (Index j = 0; j < k; ++j) {
        if constexpr (std::is_same_v<M, GaussianRational>)
          g(i, j) = GaussianRational(Rational(dist(rng)), Rational(dist(rng)));
        else
          g(i, j) = M(dist(rng));
      }
    if (!is_zero(determinant<M>(g))) return g;
  }
}

inline constexpr int van_est_samples = 20;

/// The group-level identities on sampled elements g₀, …, g₁₉: the difference
/// identity on consecutive pairs, Θ multiplicative with Θ(I) = I, and
/// (T+1)Θ(g)u = Θ(𝒟(g)g)(T+1)u on a real basis of V.
template <class M>
ValidationReport check_sampled_group_identities(const VanEstFixture<M>& fx, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Mat<M>> g;
  for (int s = 0; s < van_est_samples; ++s) g.push_back(random_invertible<M>(fx.group.size, rng));
  auto ev = [](const Program& p, const Mat<M>& x) { return evaluate<M>(p, std::vector<Mat<M>>{x}); };
  ValidationReport report;
  const Index k = fx.group.size;
  if (!(ev(fx.theta, Mat<M>::Identity(k, k)) == Mat<M>::Identity(fx.vdim, fx.vdim))) report.add("Θ(I) = I", "I");
  const auto units = RealCoordinates<M>::real_basis(fx.vdim);
  for (int s = 0; s < van_est_samples; ++s) {
    const Mat<M>& a = g[static_cast<std::size_t>(s)];
    const Mat<M>& b = g[static_cast<std::size_t>((s + 1) % van_est_samples)];
    const std::string w = "sample " + std::to_string(s);
    const Mat<M> ainv = *inverse<M>(a);
    if (!(ev(fx.d, a * b) == Mat<M>(ev(fx.d, a) * a * ev(fx.d, b) * ainv))) report.add("difference identity", w);
    if (!(ev(fx.theta, a * b) == Mat<M>(ev(fx.theta, a) * ev(fx.theta, b)))) report.add("Θ multiplicative", w);
    const Mat<M> th = ev(fx.theta, a), thp = ev(fx.theta, Mat<M>(ev(fx.d, a) * a));
    for (std::size_t u = 0; u < units.size(); ++u) {
      const Mat<M> v = th * units[u];
      const Mat<M> lhs = ev(fx.t, v) + v;
      const Mat<M> rhs = thp * Mat<M>(ev(fx.t, units[u]) + units[u]);
      if (!(lhs == rhs)) report.add("representation identity", w + ", u" + std::to_string(u + 1));
    }
  }
  return report;
}

/// Throws std::invalid_argument if α does not vanish with the identity in
/// some slot (the other slots sampled).
template <class M>
void check_normalized_program(const Program& alpha, Index n, Index k, std::mt19937_64& rng, const std::string& name) {
  for (Index slot = 0; slot < n; ++slot)
    for (int s = 0; s < 3; ++s) {
      std::vector<Mat<M>> in;
      for (Index j = 0; j < n; ++j) in.push_back(j == slot ? Mat<M>(Mat<M>::Identity(k, k)) : random_invertible<M>(k, rng));
      if (!is_zero_matrix(evaluate<M>(alpha, in)))
        throw std::invalid_argument(name + " is not normalized: nonzero with the identity in slot " + std::to_string(slot + 1));
    }
}

struct VanEstCheck {
  std::string name;
  bool passed = true;
  std::string witness;
};

struct VanEstReport {
  Index degree = 0;
  Mat<Rational> d;  // differentiated D on the basis
  std::vector<VanEstCheck> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

/// Checks that VE commutes with the differentials for a degree-n pair (α, β):
///   (a) VE(d^Θ α) = d^θ VE(α), and VE(d^{Θ_𝒟} β) = d^{θ_D} VE(β)
///   (b) VE(𝔥𝔨 α) = K VE(α)
///   (c) VE(𝔭𝔨 α) = 0
///   (d) VE(δ(α, β)) = δ_θ(VE α, VE β)
/// preceded by the sampled group identities. n ≤ 2; β is ignored at n = 1.
template <class M>
VanEstReport verify_van_est_cochain_map(const VanEstFixture<M>& fx, const Program& alpha,
                                        const std::optional<Program>& beta, Index n, std::uint64_t seed = 0) {
  if (n < 1 || n > 2) throw std::invalid_argument("the cochain-map check covers degrees 1 and 2");
  namespace cp = cochain_programs;
  VanEstReport rep;
  rep.degree = n;
  auto add = [&](std::string name, const LieCochain<Rational>& got, const LieCochain<Rational>& want) {
    const std::string w = detail::lie_cochain_mismatch(got, want);
    rep.checks.push_back({std::move(name), w.empty(), w});
  };

  const auto sampled = check_sampled_group_identities<M>(fx, seed);
  rep.checks.push_back({"sampled group identities", sampled.ok(), sampled.ok() ? "" : sampled.violations().front().relation + " at " + sampled.violations().front().witness});
  if (!sampled.ok()) return rep;

  const auto ld = differentiate_difference_operator<M>(fx.basis, fx.d);
  rep.d = ld.matrix();
  const LieComplex<Rational> cx(ld, differentiate_representation<M>(ld, fx));
  std::mt19937_64 rng(seed);
  check_normalized_program<M>(alpha, n, fx.group.size, rng, "alpha");
  const bool has_beta = n >= 2 && beta.has_value();
  if (has_beta) check_normalized_program<M>(*beta, n - 1, fx.group.size, rng, "beta");

  const Index vd = fx.vdim;
  auto ve = [&](const Program& p, Index deg) { return van_est<M>(p, deg, fx.basis, vd); };
  const auto va = ve(alpha, n);
  const Program theta_d = cp::twisted_theta(fx.d, fx.theta);

  const auto ve_da = ve(cp::coboundary(fx.theta, alpha, n), n + 1);
  add("(a) VE d^Theta = d^theta VE", ve_da, cx.ce_coboundary(va));
  std::optional<LieCochain<Rational>> vb;
  if (has_beta) {
    vb = ve(*beta, n - 1);
    add("(a) VE d^Theta_D = d^theta_D VE", ve(cp::coboundary(theta_d, *beta, n - 1), n), cx.ce_coboundary(*vb, true));
  }
  add("(b) VE hk = K VE", ve(cp::hk(fx.d, fx.t, alpha, n), n), cx.K(va));
  add("(c) VE pk = 0", ve(cp::pk(fx.d, fx.theta, alpha, n), n), LieCochain<Rational>::zero(va.lie_dim, n, va.vdim));

  if (n >= 2 && !vb) vb = LieCochain<Rational>::zero(va.lie_dim, n - 1, va.vdim);
  Program second = cp::k(fx.d, fx.theta, fx.t, alpha, n);
  if (has_beta) second = second + cp::coboundary(theta_d, *beta, n - 1);
  const auto [first_want, second_want] = cx.delta_theta(va, vb);
  add("(d) VE delta = delta_theta VE (first slot)", ve_da, first_want);
  add("(d) VE delta = delta_theta VE (second slot)", ve(second, n), second_want);
  return rep;
}

}  // namespace diffcoh
