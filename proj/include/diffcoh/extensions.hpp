#pragma once

// Abelian extensions 0 → V → Π → G → 0 of finite difference groups over F_p:
// construction from 2-cocycles, cocycles and representations from sections,
// isomorphism search by fiber shears, and the H² classification censuses.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diffcoh/group_cohomology.hpp"

namespace diffcoh {

/// Π on the carrier G × V; element (g,u) has index g·|V| + code(u), so the
/// injection is u ↦ code(u) and the projection is x ↦ x / |V|.
struct AbelianExtension {
  DifferenceGroup base;
  DifferenceRep<Zp> rep;
  DifferenceGroup total;

  FiberCodec<Zp> codec() const { return {rep.field.characteristic, rep.dim}; }
  std::size_t fiber() const { return codec().size(); }
  Element element(Element g, const Vec<Zp>& u) const { return g * fiber() + codec().encode(u); }
  Element inject(const Vec<Zp>& u) const { return codec().encode(u); }
  Element project(Element x) const { return x / fiber(); }
  Vec<Zp> fiber_part(Element x) const { return codec().decode(x % fiber()); }
};

/// Section s : G → Π with p∘s = id and s(e) = e.
using SectionMap = std::vector<Element>;

/// Injection is an injective hom onto ker(project), project is a surjective
/// difference-group hom onto the base, and 𝒟_Π restricts to T on V.
ValidationReport check_extension(const AbelianExtension& ext);

/// Π with (g,u)(h,v) = (gh, u + Θ(g)v + α(g,h)) and
/// 𝒟(g,u) = (𝒟g, Tu + u − Θ(𝒟g)u + β(g)), validated only by the group and
/// difference-operator axioms (no cocycle test). Throws ValidationError.
AbelianExtension build_extension(const DifferenceGroup& dg, const DifferenceRep<Zp>& rep, const CochainPair<Zp>& pair);

/// As build_extension, after first requiring δ(α, β) = 0; a non-cocycle is
/// rejected with the first violated identity and tuple.
AbelianExtension extension_from_cocycle(const DifferenceGroup& dg, const DifferenceRep<Zp>& rep,
                                        const CochainPair<Zp>& pair);

/// (g,u) ↦ (g,0).
SectionMap canonical_section(const AbelianExtension& ext);

/// Throws std::invalid_argument unless s is a section.
void check_section(const AbelianExtension& ext, const SectionMap& s);

/// α(g,h) = s(g)s(h)s(gh)⁻¹ and β(g) = 𝒟_Π(s(g))·s(𝒟g)⁻¹, read in V; the
/// result is checked to satisfy δ(α, β) = 0 (std::logic_error otherwise).
CochainPair<Zp> cocycle_from_section(const AbelianExtension& ext, const SectionMap& s);

/// Θ(g)u = s(g)·u·s(g)⁻¹ and T = 𝒟_Π on V. Re-derived from a second section
/// and compared; validated against the base difference group.
DifferenceRep<Zp> rep_from_section(const AbelianExtension& ext, const SectionMap& s);

/// A normalized 1-cochain η with (g,u) ↦ (g, u + η(g)) an isomorphism of
/// difference groups e1 → e2, found by exhaustive search; nothing if none
/// exists. Throws std::invalid_argument if the extensions do not share G, 𝒟,
/// V and T, or the search space exceeds the budget.
std::optional<NormalizedCochain<Zp>> are_isomorphic(const AbelianExtension& e1, const AbelianExtension& e2,
                                                    std::size_t budget = 59049);

inline constexpr std::size_t default_enumeration_budget = 59049;  // 3^10

struct ExtensionCensus {
  std::string enumeration;          // "all pairs" or "cocycle span"
  std::size_t candidates = 0;       // pairs enumerated
  std::size_t valid_extensions = 0; // pairs whose extension passed the axioms
  std::size_t cocycles = 0;         // pairs with δ = 0
  bool cocycle_sets_agree = false;  // axioms pass exactly on the δ-cocycles
  std::size_t coboundaries = 0;     // |δ(C¹)|
  std::size_t coset_classes = 0;    // cocycles / coboundaries
  std::size_t pairwise_classes = 0; // classes under the shear search
  Index h2_dim = 0;                 // dim H²(G,𝒟,V,T) by rank arithmetic
  std::size_t expected = 0;         // p^h2_dim
  bool round_trip = false;          // canonical-section cocycles reproduce every pair
  bool agree() const {
    return cocycle_sets_agree && round_trip && coset_classes == expected && pairwise_classes == expected;
  }
};

/// Classifies the extensions of (G,𝒟) by (V,T,Θ) two ways and compares both
/// counts with p^dim H². Throws BudgetExceeded when nothing is enumerable.
ExtensionCensus classify_extensions(const DifferenceGroup& dg, const DifferenceRep<Zp>& rep,
                                    std::size_t budget = default_enumeration_budget);

struct SemidirectCensus {
  std::size_t beta_candidates = 0;  // |C¹|
  std::size_t beta_cocycles = 0;    // β with d^{Θ_𝒟}β = 0
  std::size_t k_image = 0;          // |𝔎(Z¹(G,V))|
  std::size_t buckets = 0;          // beta_cocycles / k_image
  Index h2_d_dim = 0;               // dim H²(𝒟,T)
  Index k1_rank = 0;                // rank of 𝔨¹ : H¹(G,V) → H²(𝒟,T)
  std::size_t expected = 0;         // p^(h2_d_dim − k1_rank)
  bool direct_run = false;
  std::size_t direct_candidates = 0;  // maps restricting to 𝒟 on G and T on V
  std::size_t direct_operators = 0;   // of those, difference operators
  std::size_t direct_classes = 0;     // orbits under shears by 1-cocycles
  bool agree() const {
    const bool quotient = buckets == expected;
    if (!direct_run) return quotient;
    return quotient && direct_operators == beta_cocycles && direct_classes == expected;
  }
};

/// Difference operators on G ⋉ V that extend 𝒟 and restrict to T, up to
/// shear isomorphism: by the quotient H²(𝒟,T)/𝔨¹(H¹(G,V)) and, when the
/// candidate count fits the budget, by direct enumeration on the group table.
SemidirectCensus classify_semidirect_difference_ops(const DifferenceGroup& dg, const DifferenceRep<Zp>& rep,
                                                    std::size_t budget = default_enumeration_budget);

}  // namespace diffcoh
