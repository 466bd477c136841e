#include "diffcoh/commands.hpp"

#include <chrono>
#include <sstream>

#include "diffcoh/extensions.hpp"
#include "diffcoh/io.hpp"
#include "diffcoh/lie_cohomology.hpp"
#include "diffcoh/vanest.hpp"

namespace diffcoh {

namespace {

using Clock = std::chrono::steady_clock;

std::string first_violation(const ValidationReport& r) {
  if (r.ok()) return {};
  const auto& v = r.violations().front();
  std::string s = v.relation + " at " + v.witness;
  if (r.violations().size() > 1) s += " (+" + std::to_string(r.violations().size() - 1) + " more)";
  return s;
}

std::string witness_of(const std::exception& e) {
  if (const auto* ve = dynamic_cast<const ValidationError*>(&e)) return first_violation(ve->report());
  return e.what();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }
std::string num(std::size_t n) { return std::to_string(n); }

struct Session {
  RunReport report;
  FixtureData data;
  Clock::time_point start = Clock::now();
  bool timing = false;

  Session(const std::string& echo, const std::string& path, const CommandOptions& opts) : timing(opts.timing) {
    auto loaded = load_json_file(path);
    report.command = echo;
    report.fixture = path;
    report.digest = fnv1a_hex(loaded.bytes);
    data = parse_fixture(loaded.value);
  }

  RunReport finish() {
    if (timing) report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return std::move(report);
  }
};

void characteristic_note(const FieldSpec& f, RunReport& r) {
  if (f.is_prime_field())
    r.notes.push_back("coefficients in F_" + std::to_string(f.characteristic) +
                      "; formulas stated for real or complex V are applied unchanged in characteristic " +
                      std::to_string(f.characteristic));
}

template <class S>
ReportTable matrix_table(const std::string& title, const Mat<S>& m) {
  ReportTable t{title, {"row"}, {}};
  for (Index c = 0; c < m.cols(); ++c) t.columns.push_back("c" + std::to_string(c + 1));
  for (Index r = 0; r < m.rows(); ++r) {
    std::vector<std::string> row{"r" + std::to_string(r + 1)};
    for (Index c = 0; c < m.cols(); ++c) row.push_back(ScalarTraits<S>::format(m(r, c)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

ReportTable dims_table(const std::vector<DegreeDims>& dims, const std::string& a, const std::string& b,
                       const std::string& tot) {
  ReportTable t{"cohomology dimensions", {"n", "H^n(" + a + ")", "H^n(" + b + ")", "H^n(" + tot + ")"}, {}};
  for (const auto& d : dims)
    t.rows.push_back({std::to_string(d.degree), std::to_string(d.group), std::to_string(d.operator_), std::to_string(d.total)});
  return t;
}

// Group fixtures.

std::optional<DifferenceGroup> build_group(const GroupFixtureData& fx, RunReport& r) {
  const auto gv = FiniteGroup::validate(fx.table);
  r.check("group axioms", gv.ok(), first_violation(gv));
  if (!gv.ok()) return std::nullopt;
  FiniteGroup g(fx.table, fx.labels);
  const auto dv = check_difference_operator(g, fx.d);
  r.check("difference operator identity", dv.ok(), first_violation(dv));
  if (!dv.ok()) return std::nullopt;
  return DifferenceGroup(std::move(g), fx.d);
}

template <ExactField S>
std::optional<DifferenceRep<S>> build_rep(const DifferenceGroup& dg, const GroupFixtureData& fx, RunReport& r) {
  auto rep = parse_rep<S>(fx);
  const auto rv = check_representation<S>(dg, rep);
  r.check("representation (V, T, Theta)", rv.ok(), first_violation(rv));
  if (!rv.ok()) return std::nullopt;
  try {
    induced_rep_theta_D<S>(dg, rep);
    r.check("Theta_D is a representation", true);
  } catch (const ValidationError& e) {
    r.check("Theta_D is a representation", false, witness_of(e));
    return std::nullopt;
  }
  return rep;
}

template <ExactField S>
std::string first_nonzero(const NormalizedCochain<S>& c) {
  for (std::size_t t = 0; t < c.layout.tuples(); ++t) {
    const auto args = c.layout.tuple(t);
    if (!is_zero_matrix(c.at(args))) {
      std::string s = "(";
      for (std::size_t k = 0; k < args.size(); ++k) s += (k ? "," : "") + std::to_string(args[k]);
      return s + ")";
    }
  }
  return {};
}

template <ExactField S>
CochainPair<S> parse_pair(const GroupFixtureData& fx) {
  const auto& j = *fx.cocycle_json;
  if (!j.is_object() || !j.contains("alpha")) throw FixtureError("cocycle: expected {\"alpha\": ..., \"beta\": ...}");
  const std::size_t m = fx.table.size();
  CochainPair<S> p{parse_cochain<S>(j.at("alpha"), m, fx.dim, fx.field, "cocycle.alpha"), std::nullopt};
  if (p.alpha.degree() != 2) throw FixtureError("cocycle.alpha.degree: extension cocycles have degree 2");
  if (j.contains("beta")) p.beta = parse_cochain<S>(j.at("beta"), m, fx.dim, fx.field, "cocycle.beta");
  else p.beta = NormalizedCochain<S>::zero(m, 1, fx.dim);
  if (p.beta->degree() != 1) throw FixtureError("cocycle.beta.degree: must be 1");
  return p;
}

template <ExactField S>
void check_group_fixture(const DifferenceGroup& dg, const GroupFixtureData& fx, RunReport& r) {
  try {
    d_plus(dg);
    r.check("D+ is an endomorphism", true);
  } catch (const std::exception& e) {
    r.check("D+ is an endomorphism", false, witness_of(e));
  }
  if (!fx.has_rep) return;
  const auto rep = build_rep<S>(dg, fx, r);
  if (!rep) return;
  if constexpr (PrimeFieldScalar<S>) {
    try {
      const auto sd = semidirect_product<S>(dg, *rep);
      r.check("semidirect product difference identity", true);
      r.tables.back().rows.push_back({"semidirect order", num(sd.order())});
    } catch (const ValidationError& e) {
      r.check("semidirect product difference identity", false, witness_of(e));
    }
  }
  if (!fx.cocycle_json) return;
  const auto pair = parse_pair<S>(fx);
  const GroupComplex<S> cx(dg, *rep);
  const auto dp = cx.delta(pair);
  const std::string wa = first_nonzero(dp.alpha), wb = first_nonzero(*dp.beta);
  r.check("cocycle: d^Theta alpha = 0", wa.empty(), "nonzero at " + wa);
  r.check("cocycle: d^Theta_D beta + K alpha = 0", wb.empty(), "nonzero at " + wb);
  if constexpr (PrimeFieldScalar<S>) {
    if (!wa.empty() || !wb.empty()) return;
    try {
      const auto ext = extension_from_cocycle(dg, *rep, pair);
      r.check("extension is a difference group", true);
      const auto ev = check_extension(ext);
      r.check("extension maps (injection, projection, restriction to T)", ev.ok(), first_violation(ev));
      r.tables.back().rows.push_back({"extension order", num(ext.total.order())});
      r.tables.back().rows.push_back({"extension abelian", yes_no(ext.total.group().is_abelian())});
      const auto back = cocycle_from_section(ext, canonical_section(ext));
      const bool same = back.alpha == pair.alpha && back.beta && *back.beta == *pair.beta;
      r.check("canonical section returns the cocycle", same, "alpha or beta differs");
    } catch (const ValidationError& e) {
      r.check("extension is a difference group", false, witness_of(e));
    }
  }
}

ReportTable group_summary(const GroupFixtureData& fx) {
  ReportTable t{"fixture", {"property", "value"}, {}};
  t.rows.push_back({"group order", num(fx.table.size())});
  if (fx.has_rep) {
    t.rows.push_back({"field", fx.field.name()});
    t.rows.push_back({"dim V", std::to_string(fx.dim)});
  }
  return t;
}

template <ExactField S>
std::optional<GroupComplex<S>> group_complex(const GroupFixtureData& fx, RunReport& r) {
  if (!fx.has_rep) throw FixtureError("this command needs a \"rep\" block");
  const auto dg = build_group(fx, r);
  if (!dg) return std::nullopt;
  const auto rep = build_rep<S>(*dg, fx, r);
  if (!rep) return std::nullopt;
  return GroupComplex<S>(*dg, *rep);
}

// Lie fixtures.

template <ExactField S>
std::optional<LieComplex<S>> build_lie(const LieFixtureData& data, RunReport& r) {
  auto fx = parse_lie_fixture<S>(data);
  const auto av = LieAlgebra<S>::validate(fx.constants);
  r.check("Lie algebra axioms", av.ok(), first_violation(av));
  if (!av.ok()) return std::nullopt;
  LieAlgebra<S> g(fx.constants);
  const auto dv = check_lie_difference_operator<S>(g, fx.d);
  r.check("Lie difference identity", dv.ok(), first_violation(dv));
  if (!dv.ok()) return std::nullopt;
  LieDifferenceOp<S> ld(std::move(g), fx.d);
  if (static_cast<Index>(fx.rep.theta.size()) != ld.dim()) throw FixtureError("rep.theta: one matrix per basis element");
  const auto rv = check_lie_representation<S>(ld, fx.rep);
  r.check("representation (V, T, theta)", rv.ok(), first_violation(rv));
  if (!rv.ok()) return std::nullopt;
  try {
    theta_D<S>(ld, fx.rep);
    r.check("theta_D is a representation", true);
  } catch (const ValidationError& e) {
    r.check("theta_D is a representation", false, witness_of(e));
    return std::nullopt;
  }
  return LieComplex<S>(std::move(ld), fx.rep);
}

template <ExactField S>
void lie_budget(const LieComplex<S>& cx, Index top, std::size_t budget) {
  for (Index n = 1; n <= top + 1; ++n)
    if (static_cast<std::size_t>(cx.space_dim(n)) > budget) throw BudgetExceeded(n, static_cast<std::size_t>(cx.space_dim(n)), budget);
}

// Shared LES report.

template <ExactField S>
void les_checks(const DifferenceComplexData<S>& c, const LesData<S>& les, RunReport& r) {
  for (Index n = 1; n + 1 <= c.top(); ++n) {
    const auto tag = " (degree " + std::to_string(n) + ")";
    r.check("d^Theta o d^Theta = 0" + tag, is_zero_matrix(Mat<S>(c.dA[n + 1] * c.dA[n])), "nonzero composite");
    r.check("d^Theta_D o d^Theta_D = 0" + tag, is_zero_matrix(Mat<S>(c.dAD[n + 1] * c.dAD[n])), "nonzero composite");
  }
  Index bad = 0;
  r.check("d^Theta_D K + K d^Theta = 0", anticommutes(c, &bad), "degree " + std::to_string(bad));
  r.check("total delta o delta = 0", total_square_zero(c, &bad), "degree " + std::to_string(bad));
  ReportTable t{"long exact sequence", {"node", "dim", "rank in", "rank out", "exact"}, {}};
  for (const auto& node : les.nodes) {
    t.rows.push_back({node.name, std::to_string(node.dim), std::to_string(node.rank_in), std::to_string(node.rank_out),
                      yes_no(node.exact)});
    std::string w;
    if (!node.composite_zero) w = "composite of the adjacent maps is nonzero";
    else w = "rank in + rank out = " + std::to_string(node.rank_in + node.rank_out) + " but dim = " + std::to_string(node.dim);
    r.check("exact at " + node.name, node.exact, w);
  }
  r.tables.push_back(std::move(t));
}

std::string budget_flag(std::size_t b) { return " --budget " + std::to_string(b); }

template <class F>
auto with_field(const FieldSpec& f, F&& body) {
  if (f.is_prime_field()) return body(Zp{});
  return body(Rational{});
}

// van Est fixtures.

template <class M>
void vanest_check(const VanEstFixtureData& data, const CommandOptions& opts, RunReport& r) {
  const auto in = parse_vanest<M>(data);
  const auto& fx = in.fixture;
  const auto sampled = check_sampled_group_identities<M>(fx, opts.seed);
  r.check("sampled group identities", sampled.ok(), first_violation(sampled));
  if (!sampled.ok()) return;
  std::optional<LieDifferenceOp<Rational>> ld;
  try {
    ld.emplace(differentiate_difference_operator<M>(fx.basis, fx.d));
    r.check("derived D is a Lie difference operator", true);
  } catch (const std::invalid_argument& e) {
    r.check("derived D is a Lie difference operator", false, witness_of(e));
    return;
  }
  r.tables.push_back(matrix_table<Rational>("derived D on the basis", ld->matrix()));
  try {
    differentiate_representation<M>(*ld, fx);
    r.check("derived (theta, T) is a representation", true);
  } catch (const std::invalid_argument& e) {
    r.check("derived (theta, T) is a representation", false, witness_of(e));
  }
}

template <class M>
void vanest_run(const VanEstFixtureData& data, const CommandOptions& opts, RunReport& r) {
  const auto in = parse_vanest<M>(data);
  const Index n = opts.degree.value_or(in.degree);
  const auto rep = verify_van_est_cochain_map<M>(in.fixture, in.alpha, in.beta, n, opts.seed);
  if (rep.d.size() > 0) r.tables.push_back(matrix_table<Rational>("derived D on the basis", rep.d));
  for (const auto& c : rep.checks) r.check(c.name, c.passed, c.witness);
}

void sampling_note(const CommandOptions& opts, RunReport& r) {
  r.notes.push_back("group identities and cochain normalization sampled on " + std::to_string(van_est_samples) +
                    " random invertible matrices, seed " + std::to_string(opts.seed));
}

}  // namespace

RunReport cmd_check(const std::string& path, const CommandOptions& opts) {
  Session s("check --seed " + std::to_string(opts.seed), path, opts);
  RunReport& r = s.report;
  if (const auto* fx = std::get_if<GroupFixtureData>(&s.data)) {
    if (fx->has_rep) characteristic_note(fx->field, r);
    r.tables.push_back(group_summary(*fx));
    if (const auto dg = build_group(*fx, r))
      with_field(fx->field, [&](auto tag) {
        check_group_fixture<decltype(tag)>(*dg, *fx, r);
        return 0;
      });
  } else if (const auto* lf = std::get_if<LieFixtureData>(&s.data)) {
    characteristic_note(lf->field, r);
    with_field(lf->field, [&](auto tag) {
      build_lie<decltype(tag)>(*lf, r);
      return 0;
    });
  } else {
    const auto& vf = std::get<VanEstFixtureData>(s.data);
    sampling_note(opts, r);
    if (vf.gaussian) vanest_check<GaussianRational>(vf, opts, r);
    else vanest_check<Rational>(vf, opts, r);
  }
  return s.finish();
}

RunReport cmd_cohomology(const std::string& path, const CommandOptions& opts) {
  const std::size_t budget = opts.budget.value_or(default_cochain_budget);
  Session s("cohomology --max-degree " + std::to_string(opts.max_degree) + budget_flag(budget), path, opts);
  RunReport& r = s.report;
  if (opts.max_degree < 1) throw std::invalid_argument("--max-degree must be at least 1");
  if (const auto* fx = std::get_if<GroupFixtureData>(&s.data)) {
    characteristic_note(fx->field, r);
    with_field(fx->field, [&](auto tag) {
      using S = decltype(tag);
      if (const auto cx = group_complex<S>(*fx, r))
        r.tables.push_back(dims_table(cohomology_dims<S>(*cx, opts.max_degree, budget), "G,V", "D,T", "G,D,V,T"));
      return 0;
    });
  } else if (const auto* lf = std::get_if<LieFixtureData>(&s.data)) {
    characteristic_note(lf->field, r);
    with_field(lf->field, [&](auto tag) {
      using S = decltype(tag);
      if (const auto cx = build_lie<S>(*lf, r)) {
        lie_budget(*cx, opts.max_degree, budget);
        r.tables.push_back(dims_table(lie_cohomology_dims<S>(*cx, opts.max_degree), "g,V", "D,T", "g,D,V,T"));
      }
      return 0;
    });
  } else {
    throw FixtureError("cohomology needs a group or Lie fixture");
  }
  return s.finish();
}

RunReport cmd_les(const std::string& path, const CommandOptions& opts) {
  const std::size_t budget = opts.budget.value_or(default_cochain_budget);
  Session s("les --max-degree " + std::to_string(opts.max_degree) + budget_flag(budget), path, opts);
  RunReport& r = s.report;
  if (opts.max_degree < 1) throw std::invalid_argument("--max-degree must be at least 1");
  if (const auto* fx = std::get_if<GroupFixtureData>(&s.data)) {
    characteristic_note(fx->field, r);
    with_field(fx->field, [&](auto tag) {
      using S = decltype(tag);
      if (const auto cx = group_complex<S>(*fx, r)) {
        const auto c = cx->complex_data(opts.max_degree, budget);
        les_checks<S>(c, verify_les_data<S>(c, "G,V", "D,T", "G,D,V,T"), r);
      }
      return 0;
    });
  } else if (const auto* lf = std::get_if<LieFixtureData>(&s.data)) {
    characteristic_note(lf->field, r);
    with_field(lf->field, [&](auto tag) {
      using S = decltype(tag);
      if (const auto cx = build_lie<S>(*lf, r)) {
        lie_budget(*cx, opts.max_degree, budget);
        for (Index n = 1; n <= opts.max_degree; ++n)
          r.check("K subset form = K D+ form (degree " + std::to_string(n) + ")",
                  cx->k_subset_matrix(n) == cx->k_shifted_matrix(n), "matrices differ");
        const auto c = cx->complex_data(opts.max_degree);
        les_checks<S>(c, verify_les_data<S>(c, "g,V", "D,T", "g,D,V,T"), r);
      }
      return 0;
    });
  } else {
    throw FixtureError("les needs a group or Lie fixture");
  }
  return s.finish();
}

RunReport cmd_classify(const std::string& path, const CommandOptions& opts) {
  const std::size_t budget = opts.budget.value_or(default_enumeration_budget);
  if (opts.mode != "extensions" && opts.mode != "semidirect-ops")
    throw std::invalid_argument("--mode must be extensions or semidirect-ops");
  Session s("classify --mode " + opts.mode + budget_flag(budget), path, opts);
  RunReport& r = s.report;
  const auto* fx = std::get_if<GroupFixtureData>(&s.data);
  if (!fx || !fx->has_rep || !fx->field.is_prime_field())
    throw FixtureError("classify needs a group fixture with a rep over F_p");
  characteristic_note(fx->field, r);
  const auto dg = build_group(*fx, r);
  if (!dg) return s.finish();
  const auto rep = build_rep<Zp>(*dg, *fx, r);
  if (!rep) return s.finish();
  ReportTable t{"census", {"quantity", "value"}, {}};
  if (opts.mode == "extensions") {
    const auto c = classify_extensions(*dg, *rep, budget);
    t.rows = {{"enumeration", c.enumeration},
              {"pairs enumerated", num(c.candidates)},
              {"pairs passing the axioms", num(c.valid_extensions)},
              {"cocycles", num(c.cocycles)},
              {"coboundaries", num(c.coboundaries)},
              {"classes by cosets", num(c.coset_classes)},
              {"classes by shear search", num(c.pairwise_classes)},
              {"dim H^2(G,D,V,T)", std::to_string(c.h2_dim)},
              {"p^dim", num(c.expected)}};
    r.tables.push_back(std::move(t));
    r.check("axioms hold exactly on the cocycles", c.cocycle_sets_agree, "axiom and cocycle sets differ");
    r.check("cocycle -> extension -> cocycle is the identity", c.round_trip, "canonical section changed a pair");
    r.check("coset census = p^dim H^2", c.coset_classes == c.expected,
            num(c.coset_classes) + " vs " + num(c.expected));
    r.check("shear census = p^dim H^2", c.pairwise_classes == c.expected,
            num(c.pairwise_classes) + " vs " + num(c.expected));
  } else {
    const auto c = classify_semidirect_difference_ops(*dg, *rep, budget);
    t.rows = {{"beta candidates", num(c.beta_candidates)},
              {"beta cocycles", num(c.beta_cocycles)},
              {"image of K on 1-cocycles", num(c.k_image)},
              {"classes by quotient", num(c.buckets)},
              {"dim H^2(D,T)", std::to_string(c.h2_d_dim)},
              {"rank k1", std::to_string(c.k1_rank)},
              {"p^(dim - rank)", num(c.expected)},
              {"direct enumeration", yes_no(c.direct_run)}};
    if (c.direct_run) {
      t.rows.push_back({"direct candidates", num(c.direct_candidates)});
      t.rows.push_back({"direct difference operators", num(c.direct_operators)});
      t.rows.push_back({"direct classes", num(c.direct_classes)});
    } else {
      r.notes.push_back("direct enumeration skipped: candidate count exceeds the budget");
    }
    r.tables.push_back(std::move(t));
    r.check("quotient census = p^(dim H^2(D,T) - rank k1)", c.buckets == c.expected,
            num(c.buckets) + " vs " + num(c.expected));
    if (c.direct_run) {
      r.check("direct operators = beta cocycles", c.direct_operators == c.beta_cocycles,
              num(c.direct_operators) + " vs " + num(c.beta_cocycles));
      r.check("direct classes = quotient census", c.direct_classes == c.expected,
              num(c.direct_classes) + " vs " + num(c.expected));
    }
  }
  return s.finish();
}

RunReport cmd_vanest(const std::string& path, const CommandOptions& opts) {
  std::string echo = "vanest";
  if (opts.degree) echo += " --degree " + std::to_string(*opts.degree);
  echo += " --seed " + std::to_string(opts.seed);
  Session s(echo, path, opts);
  RunReport& r = s.report;
  const auto* vf = std::get_if<VanEstFixtureData>(&s.data);
  if (!vf) throw FixtureError("vanest needs a fixture with a \"vanest\" block");
  sampling_note(opts, r);
  if (vf->gaussian) vanest_run<GaussianRational>(*vf, opts, r);
  else vanest_run<Rational>(*vf, opts, r);
  return s.finish();
}

}  // namespace diffcoh
