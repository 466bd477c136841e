#pragma once

// Representations (V, T, Θ) of a difference group and the semidirect product.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "diffcoh/group.hpp"
#include "diffcoh/linalg.hpp"
#include "diffcoh/scalar.hpp"

namespace diffcoh {

template <ExactField S>
struct DifferenceRep {
  FieldSpec field;
  Index dim = 0;
  std::vector<Mat<S>> theta;  // one matrix per group element
  Mat<S> t;

  /// Θ trivial, T given.
  static DifferenceRep trivial(FieldSpec field, std::size_t order, Mat<S> t) {
    DifferenceRep r{field, t.rows(), {}, std::move(t)};
    r.theta.assign(order, Mat<S>::Identity(r.dim, r.dim));
    return r;
  }
};

namespace detail {

template <ExactField S>
Mat<S> bind_field(const FieldSpec& f, const Mat<S>& m) {
  if constexpr (PrimeFieldScalar<S>)
    return m.unaryExpr([&](const S& x) { return x.bind(f.characteristic); });
  else
    return m;
}

inline std::string vec_label(Index k) { return "e" + std::to_string(k + 1); }

}  // namespace detail

/// Homomorphism and identity checks for a plain representation g ↦ rho[g].
template <ExactField S>
ValidationReport check_group_representation(const FiniteGroup& g, const std::vector<Mat<S>>& rho, Index dim) {
  if (rho.size() != g.order())
    throw std::invalid_argument("representation has " + std::to_string(rho.size()) + " matrices for order " +
                                std::to_string(g.order()));
  for (const auto& m : rho)
    if (m.rows() != dim || m.cols() != dim) throw std::invalid_argument("representation matrix has the wrong shape");
  ValidationReport report;
  if (!(rho[0] == Mat<S>::Identity(dim, dim))) report.add("Θ(e) = I", g.label(0));
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      if (!(rho[g.mul(a, b)] == rho[a] * rho[b]))
        report.add("Θ(gh) = Θ(g)Θ(h)", "(" + g.label(a) + "," + g.label(b) + ")");
  return report;
}

/// Θ is a homomorphism and T(Θ(g)u) + Θ(g)u = Θ(𝒟(g)g)T(u) + Θ(𝒟(g)g)u for
/// every g and every basis vector u.
template <ExactField S>
ValidationReport check_representation(const DifferenceGroup& dg, const DifferenceRep<S>& rep) {
  if (rep.t.rows() != rep.dim || rep.t.cols() != rep.dim) throw std::invalid_argument("T has the wrong shape");
  auto report = check_group_representation<S>(dg.group(), rep.theta, rep.dim);
  const auto& g = dg.group();
  const Mat<S> id = Mat<S>::Identity(rep.dim, rep.dim);
  for (Element a = 0; a < g.order(); ++a) {
    const Mat<S> lhs = (rep.t + id) * rep.theta[a];
    const Mat<S> rhs = rep.theta[g.mul(dg.d(a), a)] * (rep.t + id);
    for (Index k = 0; k < rep.dim; ++k)
      if (!(lhs.col(k) == rhs.col(k))) report.add("representation identity", "(" + g.label(a) + "," + detail::vec_label(k) + ")");
  }
  return report;
}

/// g ↦ Θ(𝒟(g)g), verified multiplicative.
template <ExactField S>
std::vector<Mat<S>> induced_rep_theta_D(const DifferenceGroup& dg, const DifferenceRep<S>& rep) {
  const auto dp = d_plus(dg);
  std::vector<Mat<S>> out(dg.order());
  for (Element a = 0; a < dg.order(); ++a) out[a] = rep.theta[dp[a]];
  auto report = check_group_representation<S>(dg.group(), out, rep.dim);
  if (!report.ok()) throw ValidationError(std::move(report));
  return out;
}

/// Coordinates of V = F_p^d packed as a base-p integer, first coordinate least
/// significant.
template <PrimeFieldScalar S>
struct FiberCodec {
  std::uint32_t p;
  Index dim;

  std::size_t size() const {
    std::size_t n = 1;
    for (Index k = 0; k < dim; ++k) n *= p;
    return n;
  }
  std::size_t encode(const Vec<S>& u) const {
    std::size_t code = 0;
    for (Index k = dim; k-- > 0;) code = code * p + static_cast<std::size_t>(u(k).bind(p).value());
    return code;
  }
  Vec<S> decode(std::size_t code) const {
    Vec<S> u(dim);
    for (Index k = 0; k < dim; ++k) {
      u(k) = S(static_cast<std::int64_t>(code % p), p);
      code /= p;
    }
    return u;
  }
};

/// G ⋉ V with (g,u)(h,v) = (gh, u + Θ(g)v) and
/// 𝒟(g,u) = (𝒟(g), Tu + u − Θ(𝒟(g))u). Element (g,u) has index g·|V| + code(u).
/// The constructor of the returned DifferenceGroup re-checks the difference
/// identity on every pair.
template <PrimeFieldScalar S>
DifferenceGroup semidirect_product(const DifferenceGroup& dg, const DifferenceRep<S>& rep) {
  if (rep.dim == 0) return dg;
  const FiberCodec<S> codec{rep.field.characteristic, rep.dim};
  const std::size_t fiber = codec.size();
  const std::size_t m = dg.order();
  const auto& g = dg.group();
  std::vector<Vec<S>> vecs(fiber);
  for (std::size_t c = 0; c < fiber; ++c) vecs[c] = codec.decode(c);

  FiniteGroup::Table table(m * fiber, std::vector<Element>(m * fiber));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t u = 0; u < fiber; ++u)
      for (std::size_t b = 0; b < m; ++b) {
        const Mat<S> act = rep.theta[a];
        for (std::size_t v = 0; v < fiber; ++v)
          table[a * fiber + u][b * fiber + v] = g.mul(a, b) * fiber + codec.encode(vecs[u] + act * vecs[v]);
      }
  const Mat<S> id = Mat<S>::Identity(rep.dim, rep.dim);
  std::vector<Element> d(m * fiber);
  for (std::size_t a = 0; a < m; ++a) {
    const Mat<S> shift = rep.t + id - rep.theta[dg.d(a)];
    for (std::size_t u = 0; u < fiber; ++u) d[a * fiber + u] = dg.d(a) * fiber + codec.encode(shift * vecs[u]);
  }
  return DifferenceGroup(FiniteGroup(table), std::move(d));
}

}  // namespace diffcoh
