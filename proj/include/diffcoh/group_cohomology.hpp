#pragma once

// Normalized group cochains, the coboundaries d^Θ and d^{Θ_𝒟}, the maps
// 𝔭𝔨, 𝔥𝔨, 𝔎 = 𝔭𝔨 + 𝔥𝔨, the total differential δ, and the resulting
// cohomology and long exact sequence.
//
// Every operator is written once as a term generator: for an output tuple it
// emits (input tuple, sign, optional left matrix). Applying an operator to a
// cochain and assembling its matrix both consume the same generator.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "diffcoh/homological.hpp"
#include "diffcoh/representation.hpp"

namespace diffcoh {

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(Index degree, std::size_t required, std::size_t budget)
      : std::runtime_error("cochain space in degree " + std::to_string(degree) + " needs " +
                           std::to_string(required) + " basis elements, budget is " + std::to_string(budget)),
        degree_(degree),
        required_(required) {}
  Index degree() const { return degree_; }
  std::size_t required() const { return required_; }

 private:
  Index degree_;
  std::size_t required_;
};

inline constexpr std::size_t default_cochain_budget = 60000;

/// Layout of normalized n-cochains G^n → V: tuples of non-identity elements in
/// lexicographic order, then the V-coordinate.
struct CochainLayout {
  std::size_t order = 1;
  Index degree = 0;
  Index dim = 0;

  std::size_t tuples() const {
    std::size_t n = 1;
    for (Index k = 0; k < degree; ++k) n *= order - 1;
    return n;
  }
  Index size() const { return static_cast<Index>(tuples()) * dim; }
  /// Tuple rank, or nothing when some entry is the identity.
  std::optional<std::size_t> rank(std::span<const Element> args) const {
    std::size_t r = 0;
    for (Element g : args) {
      if (g == 0) return std::nullopt;
      r = r * (order - 1) + (g - 1);
    }
    return r;
  }
  std::vector<Element> tuple(std::size_t r) const {
    std::vector<Element> t(static_cast<std::size_t>(degree));
    for (std::size_t k = t.size(); k-- > 0;) {
      t[k] = r % (order - 1) + 1;
      r /= order - 1;
    }
    return t;
  }
};

template <ExactField S>
struct NormalizedCochain {
  CochainLayout layout;
  Vec<S> values;  // length layout.size()

  static NormalizedCochain zero(std::size_t order, Index degree, Index dim) {
    CochainLayout l{order, degree, dim};
    return {l, Vec<S>::Zero(l.size())};
  }
  Index degree() const { return layout.degree; }
  /// Value at an arbitrary tuple; zero whenever an entry is the identity.
  Vec<S> at(std::span<const Element> args) const {
    if (static_cast<Index>(args.size()) != layout.degree) throw std::invalid_argument("cochain evaluated at the wrong arity");
    const auto r = layout.rank(args);
    if (!r) return Vec<S>::Zero(layout.dim);
    return values.segment(static_cast<Index>(*r) * layout.dim, layout.dim);
  }
  Vec<S> at(std::initializer_list<Element> args) const { return at(std::span<const Element>(args.begin(), args.size())); }
  void set(std::span<const Element> args, const Vec<S>& v) {
    const auto r = layout.rank(args);
    if (!r) throw std::invalid_argument("normalized cochain has no value slot at a tuple containing the identity");
    values.segment(static_cast<Index>(*r) * layout.dim, layout.dim) = v;
  }
  void set(std::initializer_list<Element> args, const Vec<S>& v) { set(std::span<const Element>(args.begin(), args.size()), v); }
  friend bool operator==(const NormalizedCochain& a, const NormalizedCochain& b) {
    return a.layout.degree == b.layout.degree && a.layout.dim == b.layout.dim && a.layout.order == b.layout.order &&
           a.values == b.values;
  }
};

/// (αₙ, βₙ₋₁); beta is absent in degree 1.
template <ExactField S>
struct CochainPair {
  NormalizedCochain<S> alpha;
  std::optional<NormalizedCochain<S>> beta;
  Index degree() const { return alpha.degree(); }
};

/// The operators of one (difference group, representation) fixture.
template <ExactField S>
class GroupComplex {
 public:
  GroupComplex(const DifferenceGroup& dg, const DifferenceRep<S>& rep) : dg_(dg), rep_(rep) {
    auto report = check_representation<S>(dg, rep);
    if (!report.ok()) throw ValidationError(std::move(report));
    for (auto& m : rep_.theta) m = detail::bind_field<S>(rep.field, m);
    rep_.t = detail::bind_field<S>(rep.field, rep.t);
    theta_d_ = induced_rep_theta_D<S>(dg_, rep_);
    dplus_ = d_plus(dg_);
  }

  const DifferenceGroup& group() const { return dg_; }
  const DifferenceRep<S>& rep() const { return rep_; }
  const std::vector<Mat<S>>& theta() const { return rep_.theta; }
  const std::vector<Mat<S>>& theta_d() const { return theta_d_; }
  CochainLayout layout(Index degree) const { return {dg_.order(), degree, rep_.dim}; }

  // Term generators. emit(args, sign, left) with left == nullptr meaning I.

  /// d^ρ on n-cochains, evaluated at an (n+1)-tuple g.
  template <class Emit>
  static void coboundary_terms(const FiniteGroup& grp, const std::vector<Mat<S>>& rho, std::span<const Element> g,
                               Emit&& emit) {
    const std::size_t n = g.size() - 1;
    std::vector<Element> args(g.begin() + 1, g.end());
    emit(std::span<const Element>(args), 1, &rho[g[0]]);
    for (std::size_t i = 1; i <= n; ++i) {
      args.clear();
      for (std::size_t k = 0; k < i - 1; ++k) args.push_back(g[k]);
      args.push_back(grp.mul(g[i - 1], g[i]));
      for (std::size_t k = i + 1; k <= n; ++k) args.push_back(g[k]);
      emit(std::span<const Element>(args), i % 2 ? -1 : 1, static_cast<const Mat<S>*>(nullptr));
    }
    args.assign(g.begin(), g.end() - 1);
    emit(std::span<const Element>(args), (n + 1) % 2 ? -1 : 1, static_cast<const Mat<S>*>(nullptr));
  }

  template <class Emit>
  void pk_terms(std::span<const Element> g, Emit&& emit) const {
    const auto& grp = dg_.group();
    const Mat<S>* none = nullptr;
    if (g.size() == 1) {
      const Element d1 = dg_.d(g[0]);
      const Element one[1] = {g[0]};
      const Element two[1] = {grp.mul(d1, g[0])};
      const Element three[1] = {d1};
      emit(std::span<const Element>(one), -1, &rep_.theta[d1]);
      emit(std::span<const Element>(two), 1, none);
      emit(std::span<const Element>(three), -1, none);
    } else if (g.size() == 2) {
      const Element g12 = grp.mul(g[0], g[1]);
      const Element one[2] = {dg_.d(g[0]), g[0]};
      const Element two[2] = {dg_.d(g12), g12};
      const Element three[2] = {dg_.d(g[1]), g[1]};
      emit(std::span<const Element>(one), 1, none);
      emit(std::span<const Element>(two), -1, none);
      emit(std::span<const Element>(three), 1, &rep_.theta[dplus_[g[0]]]);
    }
  }

  template <class Emit>
  void hk_terms(std::span<const Element> g, Emit&& emit) const {
    const int s = g.size() % 2 ? -1 : 1;
    std::vector<Element> shifted(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) shifted[k] = dplus_[g[k]];
    emit(std::span<const Element>(shifted), s, static_cast<const Mat<S>*>(nullptr));
    emit(g, -s, &rep_.t);
    emit(g, -s, static_cast<const Mat<S>*>(nullptr));
  }

  template <class Emit>
  void k_terms(std::span<const Element> g, Emit&& emit) const {
    pk_terms(g, emit);
    hk_terms(g, emit);
  }

  // Pointwise evaluation at any tuple, including tuples containing e.

  template <class Gen>
  Vec<S> evaluate_at(const NormalizedCochain<S>& a, std::span<const Element> g, Gen&& gen) const {
    Vec<S> acc = Vec<S>::Zero(rep_.dim);
    gen(g, [&](std::span<const Element> args, int sign, const Mat<S>* left) {
      Vec<S> v = a.at(args);
      if (left) v = *left * v;
      if (sign > 0)
        acc += v;
      else
        acc -= v;
    });
    return acc;
  }

  /// Applies a generator to every output tuple of the given degree.
  template <class Gen>
  NormalizedCochain<S> apply(const NormalizedCochain<S>& a, Index out_degree, Gen&& gen) const {
    auto out = NormalizedCochain<S>::zero(dg_.order(), out_degree, rep_.dim);
    for (std::size_t r = 0; r < out.layout.tuples(); ++r) {
      const auto t = out.layout.tuple(r);
      out.values.segment(static_cast<Index>(r) * rep_.dim, rep_.dim) = evaluate_at(a, t, gen);
    }
    return out;
  }

  /// Matrix of a generator from in_degree-cochains to out_degree-cochains.
  template <class Gen>
  Mat<S> assemble(Index in_degree, Index out_degree, Gen&& gen) const {
    const auto in = layout(in_degree), out = layout(out_degree);
    const Index d = rep_.dim;
    Mat<S> m = Mat<S>::Zero(out.size(), in.size());
    for (std::size_t r = 0; r < out.tuples(); ++r) {
      const auto t = out.tuple(r);
      gen(std::span<const Element>(t), [&](std::span<const Element> args, int sign, const Mat<S>* left) {
        const auto c = in.rank(args);
        if (!c) return;
        auto block = m.block(static_cast<Index>(r) * d, static_cast<Index>(*c) * d, d, d);
        if (left)
          block += sign > 0 ? Mat<S>(*left) : Mat<S>(-*left);
        else
          for (Index k = 0; k < d; ++k) block(k, k) += S(sign);
      });
    }
    return detail::bind_field<S>(rep_.field, m);
  }

  auto d_gen(bool twisted) const {
    return [this, twisted](std::span<const Element> g, auto&& emit) {
      coboundary_terms(dg_.group(), twisted ? theta_d_ : rep_.theta, g, emit);
    };
  }
  auto pk_gen() const {
    return [this](std::span<const Element> g, auto&& emit) { pk_terms(g, emit); };
  }
  auto hk_gen() const {
    return [this](std::span<const Element> g, auto&& emit) { hk_terms(g, emit); };
  }
  auto k_gen() const {
    return [this](std::span<const Element> g, auto&& emit) { k_terms(g, emit); };
  }

  NormalizedCochain<S> coboundary(const NormalizedCochain<S>& a, bool twisted = false) const {
    check(a);
    return apply(a, a.degree() + 1, d_gen(twisted));
  }
  NormalizedCochain<S> pk(const NormalizedCochain<S>& a) const { return check(a), apply(a, a.degree(), pk_gen()); }
  NormalizedCochain<S> hk(const NormalizedCochain<S>& a) const { return check(a), apply(a, a.degree(), hk_gen()); }
  NormalizedCochain<S> frk_K(const NormalizedCochain<S>& a) const { return check(a), apply(a, a.degree(), k_gen()); }

  CochainPair<S> delta(const CochainPair<S>& p) const {
    const Index n = p.degree();
    if ((n == 1) != !p.beta.has_value())
      throw std::invalid_argument("degree-" + std::to_string(n) + " pair has the wrong beta slot");
    CochainPair<S> out{coboundary(p.alpha), frk_K(p.alpha)};
    if (p.beta) {
      if (p.beta->degree() != n - 1) throw std::invalid_argument("beta has the wrong degree");
      out.beta->values += coboundary(*p.beta, true).values;
    }
    return out;
  }

  Mat<S> coboundary_matrix(Index n, bool twisted = false) const { return assemble(n, n + 1, d_gen(twisted)); }
  Mat<S> pk_matrix(Index n) const { return assemble(n, n, pk_gen()); }
  Mat<S> hk_matrix(Index n) const { return assemble(n, n, hk_gen()); }
  Mat<S> k_matrix(Index n) const { return assemble(n, n, k_gen()); }

  /// Matrices through degree `top` (spaces through C^{top+1}).
  DifferenceComplexData<S> complex_data(Index top, std::size_t budget = default_cochain_budget) const {
    if (top < 1) throw std::invalid_argument("max degree must be at least 1");
    DifferenceComplexData<S> c;
    c.dims.assign(static_cast<std::size_t>(top + 2), 0);
    for (Index n = 1; n <= top + 1; ++n) {
      const auto size = static_cast<std::size_t>(layout(n).size());
      if (size > budget) throw BudgetExceeded(n, size, budget);
      c.dims[n] = static_cast<Index>(size);
    }
    c.dA.resize(static_cast<std::size_t>(top + 1));
    c.dAD.resize(static_cast<std::size_t>(top + 1));
    c.K.resize(static_cast<std::size_t>(top + 1));
    for (Index n = 1; n <= top; ++n) {
      c.dA[n] = coboundary_matrix(n);
      c.dAD[n] = coboundary_matrix(n, true);
      c.K[n] = k_matrix(n);
    }
    return c;
  }

 private:
  void check(const NormalizedCochain<S>& a) const {
    if (a.layout.order != dg_.order() || a.layout.dim != rep_.dim)
      throw std::invalid_argument("cochain does not match the fixture's group order or V");
  }

  DifferenceGroup dg_;
  DifferenceRep<S> rep_;
  std::vector<Mat<S>> theta_d_;
  std::vector<Element> dplus_;
};

// Free-function surface.

template <ExactField S>
NormalizedCochain<S> coboundary_group(const FiniteGroup& g, const std::vector<Mat<S>>& theta,
                                      const NormalizedCochain<S>& a) {
  if (a.layout.order != g.order()) throw std::invalid_argument("cochain does not match the group order");
  for (const auto& m : theta)
    if (m.rows() != a.layout.dim) throw std::invalid_argument("representation and cochain disagree on dim V");
  auto out = NormalizedCochain<S>::zero(g.order(), a.degree() + 1, a.layout.dim);
  for (std::size_t r = 0; r < out.layout.tuples(); ++r) {
    const auto t = out.layout.tuple(r);
    Vec<S> acc = Vec<S>::Zero(a.layout.dim);
    GroupComplex<S>::coboundary_terms(g, theta, t, [&](std::span<const Element> args, int sign, const Mat<S>* left) {
      Vec<S> v = a.at(args);
      if (left) v = *left * v;
      acc = sign > 0 ? Vec<S>(acc + v) : Vec<S>(acc - v);
    });
    out.set(t, acc);
  }
  return out;
}

template <ExactField S>
NormalizedCochain<S> pk(const DifferenceGroup& dg, const DifferenceRep<S>& rep, const NormalizedCochain<S>& a) {
  return GroupComplex<S>(dg, rep).pk(a);
}
template <ExactField S>
NormalizedCochain<S> hk(const DifferenceGroup& dg, const DifferenceRep<S>& rep, const NormalizedCochain<S>& a) {
  return GroupComplex<S>(dg, rep).hk(a);
}
template <ExactField S>
NormalizedCochain<S> frk_K(const DifferenceGroup& dg, const DifferenceRep<S>& rep, const NormalizedCochain<S>& a) {
  return GroupComplex<S>(dg, rep).frk_K(a);
}
template <ExactField S>
CochainPair<S> delta(const DifferenceGroup& dg, const DifferenceRep<S>& rep, const CochainPair<S>& p) {
  return GroupComplex<S>(dg, rep).delta(p);
}

template <ExactField S>
struct ConnectingClass {
  NormalizedCochain<S> image;  // 𝔎(α), an element of 𝔉C^{n+1} = Cⁿ
  Vec<S> coordinates;          // its class in H^{n+1}(𝒟,T)
  bool zero_class() const { return is_zero_matrix(coordinates); }
};

/// [α] ↦ [𝔎α] in H^{n+1}(𝒟,T). Throws std::invalid_argument unless d^Θα = 0.
template <ExactField S>
ConnectingClass<S> connecting_map(const GroupComplex<S>& cx, const NormalizedCochain<S>& a) {
  const Index n = a.degree();
  if (!is_zero_matrix(cx.coboundary(a).values))
    throw std::invalid_argument("connecting map applied to a non-cocycle of degree " + std::to_string(n));
  auto image = cx.frk_K(a);
  // H^{n+1}(𝒟,T) lives on Cⁿ with differential d^{Θ_𝒟} and boundaries from C^{n−1}.
  const auto h = cohomology_space<S>(cx.layout(n).size(), cx.coboundary_matrix(n, true),
                                     n >= 2 ? std::optional<Mat<S>>(cx.coboundary_matrix(n - 1, true)) : std::nullopt);
  Vec<S> coords = h.coordinates(image.values);
  return {std::move(image), std::move(coords)};
}

template <ExactField S>
std::vector<DegreeDims> cohomology_dims(const GroupComplex<S>& cx, Index max_degree,
                                        std::size_t budget = default_cochain_budget) {
  const auto data = cx.complex_data(max_degree, budget);
  const DifferenceCohomology<S> h(data);
  std::vector<DegreeDims> out;
  for (Index n = 1; n <= max_degree; ++n) out.push_back({n, h.a[n].dim(), h.b[n].dim(), h.tot[n].dim()});
  return out;
}

template <ExactField S>
LesData<S> verify_les(const GroupComplex<S>& cx, Index max_degree, std::size_t budget = default_cochain_budget) {
  return verify_les_data<S>(cx.complex_data(max_degree, budget), "G,V", "D,T", "G,D,V,T");
}

}  // namespace diffcoh
