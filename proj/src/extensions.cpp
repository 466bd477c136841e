#include "diffcoh/extensions.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace diffcoh {

namespace {

std::size_t power(std::size_t p, Index n) {
  std::size_t out = 1;
  for (Index k = 0; k < n; ++k) {
    if (out > std::numeric_limits<std::size_t>::max() / p) return std::numeric_limits<std::size_t>::max();
    out *= p;
  }
  return out;
}

Vec<Zp> bound(const Vec<Zp>& v, std::uint32_t p) { return detail::bind_field<Zp>(FieldSpec::prime(p), v); }

std::string tuple_label(const FiniteGroup& g, const std::vector<Element>& t) {
  std::string s = "(";
  for (std::size_t k = 0; k < t.size(); ++k) s += (k ? "," : "") + g.label(t[k]);
  return s + ")";
}

/// First tuple where a cochain is nonzero, or empty.
std::string first_nonzero(const FiniteGroup& g, const NormalizedCochain<Zp>& c) {
  for (std::size_t r = 0; r < c.layout.tuples(); ++r)
    if (!is_zero_matrix(c.values.segment(static_cast<Index>(r) * c.layout.dim, c.layout.dim)))
      return tuple_label(g, c.layout.tuple(r));
  return {};
}

Vec<Zp> pair_vector(const CochainPair<Zp>& pair) {
  Vec<Zp> v(pair.alpha.values.size() + (pair.beta ? pair.beta->values.size() : 0));
  v.head(pair.alpha.values.size()) = pair.alpha.values;
  if (pair.beta) v.tail(pair.beta->values.size()) = pair.beta->values;
  return v;
}

CochainPair<Zp> pair_from_vector(const GroupComplex<Zp>& cx, const Vec<Zp>& v) {
  auto a = NormalizedCochain<Zp>::zero(cx.group().order(), 2, cx.rep().dim);
  auto b = NormalizedCochain<Zp>::zero(cx.group().order(), 1, cx.rep().dim);
  a.values = v.head(a.values.size());
  b.values = v.tail(b.values.size());
  return {a, b};
}

bool same_fixture(const AbelianExtension& e1, const AbelianExtension& e2) {
  return e1.base.group() == e2.base.group() && e1.base.map() == e2.base.map() && e1.rep.field == e2.rep.field &&
         e1.rep.dim == e2.rep.dim &&
         detail::bind_field<Zp>(e1.rep.field, e1.rep.t) == detail::bind_field<Zp>(e2.rep.field, e2.rep.t);
}

/// Calls f on every vector of F_p^n in code order.
template <class F>
void for_each_vector(std::uint32_t p, Index n, std::size_t count, F&& f) {
  const FiberCodec<Zp> codec{p, n};
  for (std::size_t c = 0; c < count; ++c) f(c, codec.decode(c));
}

}  // namespace

ValidationReport check_extension(const AbelianExtension& ext) {
  ValidationReport report;
  const auto& pi = ext.total.group();
  const auto& g = ext.base.group();
  const std::size_t fiber = ext.fiber();
  if (pi.order() != g.order() * fiber) {
    report.add("carrier size", std::to_string(pi.order()));
    return report;
  }
  const FiberCodec<Zp> codec = ext.codec();
  const Mat<Zp> t = detail::bind_field<Zp>(ext.rep.field, ext.rep.t);
  for (std::size_t u = 0; u < fiber; ++u) {
    const Vec<Zp> uv = codec.decode(u);
    for (std::size_t v = 0; v < fiber; ++v)
      if (pi.mul(ext.inject(uv), ext.inject(codec.decode(v))) != ext.inject(bound(uv + codec.decode(v), codec.p)))
        report.add("inject is a homomorphism", "(" + std::to_string(u) + "," + std::to_string(v) + ")");
    if (ext.total.d(ext.inject(uv)) != ext.inject(bound(t * uv, codec.p)))
      report.add("D restricts to T", std::to_string(u));
  }
  std::vector<Element> proj(pi.order());
  for (Element x = 0; x < pi.order(); ++x) proj[x] = ext.project(x);
  report.merge(check_difference_homomorphism(ext.total, ext.base, proj));
  for (Element x = 0; x < pi.order(); ++x)
    if ((proj[x] == 0) != (x < fiber)) report.add("kernel of project is V", pi.label(x));
  return report;
}

AbelianExtension build_extension(const DifferenceGroup& dg, const DifferenceRep<Zp>& rep, const CochainPair<Zp>& pair) {
  if (pair.degree() != 2 || !pair.beta) throw std::invalid_argument("extensions need a degree-2 pair (alpha, beta)");
  const std::size_t m = dg.order();
  if (pair.alpha.layout.order != m || pair.beta->layout.order != m || pair.alpha.layout.dim != rep.dim ||
      pair.beta->layout.dim != rep.dim)
    throw std::invalid_argument("cocycle pair does not match the group order or V");
  const FiberCodec<Zp> codec{rep.field.characteristic, rep.dim};
  const std::size_t fiber = codec.size();
  const auto& g = dg.group();
  std::vector<Vec<Zp>> vecs(fiber);
  for (std::size_t c = 0; c < fiber; ++c) vecs[c] = codec.decode(c);

  FiniteGroup::Table table(m * fiber, std::vector<Element>(m * fiber));
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b) {
      const Vec<Zp> twist = pair.alpha.at({a, b});
      for (std::size_t u = 0; u < fiber; ++u)
        for (std::size_t v = 0; v < fiber; ++v)
          table[a * fiber + u][b * fiber + v] = g.mul(a, b) * fiber + codec.encode(vecs[u] + rep.theta[a] * vecs[v] + twist);
    }
  const Mat<Zp> id = Mat<Zp>::Identity(rep.dim, rep.dim);
  std::vector<Element> d(m * fiber);
  for (Element a = 0; a < m; ++a) {
    const Mat<Zp> shift = rep.t + id - rep.theta[dg.d(a)];
    const Vec<Zp> b = pair.beta->at({a});
    for (std::size_t u = 0; u < fiber; ++u) d[a * fiber + u] = dg.d(a) * fiber + codec.encode(shift * vecs[u] + b);
  }
  return {dg, rep, DifferenceGroup(FiniteGroup(table), std::move(d))};
}

AbelianExtension extension_from_cocycle(const DifferenceGroup& dg, const DifferenceRep<Zp>& rep,
                                        const CochainPair<Zp>& pair) {
  const GroupComplex<Zp> cx(dg, rep);
  const auto out = cx.delta(pair);
  ValidationReport report;
  if (auto w = first_nonzero(dg.group(), out.alpha); !w.empty()) report.add("d^Theta alpha = 0", w);
  if (auto w = first_nonzero(dg.group(), *out.beta); !w.empty()) report.add("d^Theta_D beta + K alpha = 0", w);
  if (!report.ok()) throw ValidationError(std::move(report));
  return build_extension(dg, rep, pair);
}

SectionMap canonical_section(const AbelianExtension& ext) {
  SectionMap s(ext.base.order());
  for (Element g = 0; g < s.size(); ++g) s[g] = g * ext.fiber();
  return s;
}

void check_section(const AbelianExtension& ext, const SectionMap& s) {
  if (s.size() != ext.base.order()) throw std::invalid_argument("section has the wrong length");
  if (s[0] != 0) throw std::invalid_argument("section does not send e to e");
  for (Element g = 0; g < s.size(); ++g)
    if (s[g] >= ext.total.order() || ext.project(s[g]) != g)
      throw std::invalid_argument("section is not a right inverse of the projection at " + ext.base.group().label(g));
}

CochainPair<Zp> cocycle_from_section(const AbelianExtension& ext, const SectionMap& s) {
  check_section(ext, s);
  const auto& pi = ext.total.group();
  const std::size_t m = ext.base.order();
  auto alpha = NormalizedCochain<Zp>::zero(m, 2, ext.rep.dim);
  auto beta = NormalizedCochain<Zp>::zero(m, 1, ext.rep.dim);
  auto in_v = [&](Element x, const char* what) {
    if (ext.project(x) != 0) throw std::logic_error(std::string(what) + " does not land in V");
    return ext.fiber_part(x);
  };
  for (Element g = 1; g < m; ++g) {
    for (Element h = 1; h < m; ++h)
      alpha.set({g, h}, in_v(pi.mul(pi.mul(s[g], s[h]), pi.inv(s[ext.base.group().mul(g, h)])), "alpha"));
    beta.set({g}, in_v(pi.mul(ext.total.d(s[g]), pi.inv(s[ext.base.d(g)])), "beta"));
  }
  CochainPair<Zp> pair{alpha, beta};
  const GroupComplex<Zp> cx(ext.base, rep_from_section(ext, s));
  const auto out = cx.delta(pair);
  if (!is_zero_matrix(out.alpha.values) || !is_zero_matrix(out.beta->values))
    throw std::logic_error("cocycle read from a section is not closed");
  return pair;
}

DifferenceRep<Zp> rep_from_section(const AbelianExtension& ext, const SectionMap& s) {
  check_section(ext, s);
  const auto& pi = ext.total.group();
  const FiberCodec<Zp> codec = ext.codec();
  const Index d = ext.rep.dim;
  auto conjugation = [&](const SectionMap& sec) {
    std::vector<Mat<Zp>> theta;
    for (Element g = 0; g < sec.size(); ++g) {
      Mat<Zp> th(d, d);
      for (Index k = 0; k < d; ++k) {
        const Element x = pi.mul(pi.mul(sec[g], ext.inject(Vec<Zp>::Unit(d, k))), pi.inv(sec[g]));
        if (ext.project(x) != 0) throw std::invalid_argument("conjugation does not normalize V");
        th.col(k) = ext.fiber_part(x);
      }
      for (std::size_t u = 0; u < codec.size(); ++u) {
        const Vec<Zp> uv = codec.decode(u);
        const Element x = pi.mul(pi.mul(sec[g], ext.inject(uv)), pi.inv(sec[g]));
        if (x != ext.inject(bound(th * uv, codec.p))) throw std::invalid_argument("conjugation on V is not linear");
      }
      theta.push_back(th);
    }
    return theta;
  };
  DifferenceRep<Zp> rep{ext.rep.field, d, conjugation(s), Mat<Zp>(d, d)};
  for (Index k = 0; k < d; ++k) {
    const Element x = ext.total.d(ext.inject(Vec<Zp>::Unit(d, k)));
    if (ext.project(x) != 0) throw std::invalid_argument("difference operator does not preserve V");
    rep.t.col(k) = ext.fiber_part(x);
  }
  if (d > 0) {
    SectionMap other = s;
    for (Element g = 1; g < other.size(); ++g) other[g] = pi.mul(s[g], ext.inject(Vec<Zp>::Unit(d, 0)));
    if (conjugation(other) != rep.theta) throw std::logic_error("conjugation action depends on the section");
  }
  auto report = check_representation<Zp>(ext.base, rep);
  if (!report.ok()) throw ValidationError(std::move(report));
  return rep;
}

std::optional<NormalizedCochain<Zp>> are_isomorphic(const AbelianExtension& e1, const AbelianExtension& e2,
                                                    std::size_t budget) {
  if (!same_fixture(e1, e2)) throw std::invalid_argument("extensions of different fixtures cannot be compared");
  const std::size_t m = e1.base.order();
  const Index d = e1.rep.dim;
  const std::uint32_t p = e1.rep.field.characteristic;
  const Index slots = static_cast<Index>(m - 1) * d;
  const std::size_t candidates = power(p, slots);
  if (candidates > budget) throw BudgetExceeded(1, candidates, budget);
  const auto& g1 = e1.total.group();
  const auto& g2 = e2.total.group();
  const std::size_t n = g1.order();
  std::optional<NormalizedCochain<Zp>> found;
  for_each_vector(p, slots, candidates, [&](std::size_t, const Vec<Zp>& v) {
    if (found) return;
    auto eta = NormalizedCochain<Zp>::zero(m, 1, d);
    eta.values = v;
    std::vector<Element> sigma(n);
    for (Element x = 0; x < n; ++x) {
      const Element g = e1.project(x);
      sigma[x] = e1.element(g, bound(e1.fiber_part(x) + eta.at({g}), p));
    }
    for (Element x = 0; x < n; ++x) {
      if (sigma[e1.total.d(x)] != e2.total.d(sigma[x])) return;
      for (Element y = 0; y < n; ++y)
        if (sigma[g1.mul(x, y)] != g2.mul(sigma[x], sigma[y])) return;
    }
    found = eta;
  });
  return found;
}

ExtensionCensus classify_extensions(const DifferenceGroup& dg, const DifferenceRep<Zp>& rep, std::size_t budget) {
  const GroupComplex<Zp> cx(dg, rep);
  const std::uint32_t p = rep.field.characteristic;
  const FieldSpec field = rep.field;
  ExtensionCensus census;

  const auto data = cx.complex_data(2);
  const DifferenceCohomology<Zp> h(data);
  census.h2_dim = h.tot[2].dim();
  census.expected = power(p, census.h2_dim);
  const Mat<Zp> delta2 = detail::bind_field<Zp>(field, total_differential(data, 2));
  const Mat<Zp> delta1 = detail::bind_field<Zp>(field, total_differential(data, 1));
  const Index tot2 = delta2.cols();
  const Index c1 = delta1.cols();

  auto is_cocycle = [&](const Vec<Zp>& v) { return is_zero_matrix(Vec<Zp>(delta2 * v)); };
  std::vector<Vec<Zp>> cocycles;
  const std::size_t all_pairs = power(p, tot2);
  if (all_pairs <= budget) {
    census.enumeration = "all pairs";
    census.candidates = all_pairs;
    census.cocycle_sets_agree = true;
    for_each_vector(p, tot2, all_pairs, [&](std::size_t, const Vec<Zp>& v) {
      bool valid = true;
      try {
        build_extension(dg, rep, pair_from_vector(cx, v));
      } catch (const ValidationError&) {
        valid = false;
      }
      const bool closed = is_cocycle(v);
      if (valid) ++census.valid_extensions;
      if (closed) cocycles.push_back(v);
      if (valid != closed) census.cocycle_sets_agree = false;
    });
  } else {
    const Mat<Zp> z = detail::bind_field<Zp>(field, kernel_basis<Zp>(delta2));
    const std::size_t span = power(p, z.cols());
    if (span > budget) throw BudgetExceeded(2, span, budget);
    census.enumeration = "cocycle span";
    census.candidates = span;
    census.cocycle_sets_agree = true;
    for_each_vector(p, z.cols(), span, [&](std::size_t, const Vec<Zp>& c) {
      const Vec<Zp> v = bound(z * c, p);
      try {
        build_extension(dg, rep, pair_from_vector(cx, v));
        ++census.valid_extensions;
      } catch (const ValidationError&) {
        census.cocycle_sets_agree = false;
      }
      cocycles.push_back(v);
    });
  }
  census.cocycles = cocycles.size();

  // Coset path: canonical representative of z + B² for every cocycle z.
  const std::size_t c1_size = power(p, c1);
  if (c1_size > budget) throw BudgetExceeded(1, c1_size, budget);
  const FiberCodec<Zp> key{p, tot2};
  std::set<std::size_t> boundary_codes;
  std::vector<Vec<Zp>> boundaries;
  for_each_vector(p, c1, c1_size, [&](std::size_t, const Vec<Zp>& eta) {
    const Vec<Zp> b = bound(delta1 * eta, p);
    if (boundary_codes.insert(key.encode(b)).second) boundaries.push_back(b);
  });
  census.coboundaries = boundaries.size();
  std::set<std::size_t> cosets;
  for (const auto& z : cocycles) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const auto& b : boundaries) best = std::min(best, key.encode(bound(z + b, p)));
    cosets.insert(best);
  }
  census.coset_classes = cosets.size();

  // Pairwise path: shear isomorphism search against one extension per class.
  std::vector<AbelianExtension> classes;
  census.round_trip = true;
  for (const auto& z : cocycles) {
    const auto pair = pair_from_vector(cx, z);
    AbelianExtension ext = build_extension(dg, rep, pair);
    const auto back = cocycle_from_section(ext, canonical_section(ext));
    if (!(bound(pair_vector(back), p) == bound(z, p))) census.round_trip = false;
    bool known = false;
    for (const auto& c : classes)
      if (are_isomorphic(ext, c, budget)) {
        known = true;
        break;
      }
    if (!known) classes.push_back(std::move(ext));
  }
  census.pairwise_classes = classes.size();
  return census;
}

SemidirectCensus classify_semidirect_difference_ops(const DifferenceGroup& dg, const DifferenceRep<Zp>& rep,
                                                    std::size_t budget) {
  const GroupComplex<Zp> cx(dg, rep);
  const std::uint32_t p = rep.field.characteristic;
  const FieldSpec field = rep.field;
  SemidirectCensus census;

  const auto data = cx.complex_data(1);
  const DifferenceCohomology<Zp> h(data);
  census.h2_d_dim = h.b[2].dim();
  census.k1_rank = rank<Zp>(detail::bind_field<Zp>(field, induced_map<Zp>(h.a[1], h.b[2], data.K[1])));
  census.expected = power(p, census.h2_d_dim - census.k1_rank);

  const Mat<Zp> d_theta = detail::bind_field<Zp>(field, data.dA[1]);
  const Mat<Zp> d_twisted = detail::bind_field<Zp>(field, data.dAD[1]);
  const Mat<Zp> k1 = detail::bind_field<Zp>(field, data.K[1]);
  const Index c1 = d_theta.cols();
  census.beta_candidates = power(p, c1);
  if (census.beta_candidates > budget) throw BudgetExceeded(1, census.beta_candidates, budget);

  const FiberCodec<Zp> key{p, c1};
  std::vector<Vec<Zp>> betas, z1;
  std::set<std::size_t> k_codes;
  std::vector<Vec<Zp>> k_image;
  for_each_vector(p, c1, census.beta_candidates, [&](std::size_t, const Vec<Zp>& v) {
    if (is_zero_matrix(Vec<Zp>(d_twisted * v))) betas.push_back(v);
    if (is_zero_matrix(Vec<Zp>(d_theta * v))) {
      z1.push_back(v);
      const Vec<Zp> k = bound(k1 * v, p);
      if (k_codes.insert(key.encode(k)).second) k_image.push_back(k);
    }
  });
  census.beta_cocycles = betas.size();
  census.k_image = k_image.size();
  std::set<std::size_t> buckets;
  for (const auto& b : betas) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const auto& k : k_image) best = std::min(best, key.encode(bound(b + k, p)));
    buckets.insert(best);
  }
  census.buckets = buckets.size();

  // Direct path: every map (g,u) ↦ (𝒟g, w) on G ⋉ V with (e,u) ↦ (e,Tu).
  const DifferenceGroup pi = semidirect_product<Zp>(dg, rep);
  const std::size_t m = dg.order();
  const FiberCodec<Zp> codec{p, rep.dim};
  const std::size_t fiber = codec.size();
  const Index free_slots = static_cast<Index>((m - 1) * fiber);
  census.direct_candidates = power(fiber, free_slots);
  if (census.direct_candidates > budget || fiber == 1) {
    census.direct_run = fiber == 1;
    if (fiber == 1) {
      census.direct_candidates = 1;
      census.direct_operators = 1;
      census.direct_classes = 1;
    }
    return census;
  }
  census.direct_run = true;
  const Mat<Zp> t = detail::bind_field<Zp>(field, rep.t);
  std::vector<Element> d(m * fiber);
  for (std::size_t u = 0; u < fiber; ++u) d[u] = codec.encode(bound(t * codec.decode(u), p));

  std::vector<std::vector<Element>> shears, unshears;
  for (const auto& eta : z1) {
    auto c = NormalizedCochain<Zp>::zero(m, 1, rep.dim);
    c.values = eta;
    std::vector<Element> fwd(m * fiber), back(m * fiber);
    for (Element g = 0; g < m; ++g)
      for (std::size_t u = 0; u < fiber; ++u) {
        fwd[g * fiber + u] = g * fiber + codec.encode(bound(codec.decode(u) + c.at({g}), p));
        back[g * fiber + u] = g * fiber + codec.encode(bound(codec.decode(u) - c.at({g}), p));
      }
    shears.push_back(std::move(fwd));
    unshears.push_back(std::move(back));
  }

  std::set<std::vector<Element>> orbits;
  std::vector<std::size_t> choice(static_cast<std::size_t>(free_slots), 0);
  for (std::size_t n = 0; n < census.direct_candidates; ++n) {
    for (std::size_t k = 0; k < choice.size(); ++k) {
      const Element x = fiber + k;
      d[x] = dg.d(x / fiber) * fiber + choice[k];
    }
    if (check_difference_operator(pi.group(), d).ok()) {
      ++census.direct_operators;
      std::vector<Element> best;
      for (std::size_t s = 0; s < shears.size(); ++s) {
        std::vector<Element> conj(d.size());
        for (Element x = 0; x < d.size(); ++x) conj[x] = shears[s][d[unshears[s][x]]];
        if (best.empty() || conj < best) best = std::move(conj);
      }
      orbits.insert(best);
    }
    for (std::size_t k = 0; k < choice.size() && ++choice[k] == fiber; ++k) choice[k] = 0;
  }
  census.direct_classes = orbits.size();
  return census;
}

}  // namespace diffcoh
