#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace diffcoh {

using Element = std::size_t;

struct Violation {
  std::string relation;  // which identity failed, e.g. "associativity"
  std::string witness;   // the concrete elements / indices that break it
};

/// Outcome of an exhaustive axiom check. Empty means every instance held.
class ValidationReport {
 public:
  void add(std::string relation, std::string witness) { violations_.push_back({std::move(relation), std::move(witness)}); }
  void merge(const ValidationReport& other) {
    violations_.insert(violations_.end(), other.violations_.begin(), other.violations_.end());
  }
  bool ok() const { return violations_.empty(); }
  const std::vector<Violation>& violations() const { return violations_; }
  std::string summary() const;

 private:
  std::vector<Violation> violations_;
};

class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(ValidationReport report)
      : std::invalid_argument(report.summary()), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Finite group given by its multiplication table; element 0 is the identity.
class FiniteGroup {
 public:
  using Table = std::vector<std::vector<Element>>;

  /// Shape, identity at index 0, associativity and inverses, exhaustively.
  static ValidationReport validate(const Table& table);

  /// Throws ValidationError when validate() fails.
  explicit FiniteGroup(const Table& table, std::vector<std::string> labels = {});

  std::size_t order() const { return order_; }
  Element identity() const { return 0; }
  Element mul(Element a, Element b) const { return table_[a * order_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }
  bool is_abelian() const;
  Table table() const;
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Element g) const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

 private:
  std::size_t order_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::vector<std::string> labels_;
};

ValidationReport check_homomorphism(const FiniteGroup& from, const FiniteGroup& to, std::span<const Element> map);

/// Exhaustive check of 𝒟(gh) = 𝒟(g)·g·𝒟(h)·g⁻¹ over all pairs. When that
/// holds, 𝒟(e) = e and 𝒟(g⁻¹) = (𝒟(g)g)⁻¹g are re-verified as well.
/// Throws std::invalid_argument when d has the wrong length.
ValidationReport check_difference_operator(const FiniteGroup& group, std::span<const Element> d);

/// A finite group together with a verified difference operator.
class DifferenceGroup {
 public:
  /// Throws ValidationError when d is not a difference operator.
  DifferenceGroup(FiniteGroup group, std::vector<Element> d);

  const FiniteGroup& group() const { return group_; }
  std::size_t order() const { return group_.order(); }
  Element d(Element g) const { return d_[g]; }
  const std::vector<Element>& map() const { return d_; }

 private:
  FiniteGroup group_;
  std::vector<Element> d_;
};

/// g ↦ 𝒟(g)·g, checked to be an endomorphism before it is returned.
std::vector<Element> d_plus(const DifferenceGroup& dg);

/// Difference-group homomorphism check: Ψ is a group hom and 𝒟′∘Ψ = Ψ∘𝒟.
ValidationReport check_difference_homomorphism(const DifferenceGroup& from, const DifferenceGroup& to,
                                               std::span<const Element> map);

std::vector<Element> inverse_map(const FiniteGroup& g);
std::vector<Element> identity_map(const FiniteGroup& g);

namespace groups {

FiniteGroup trivial();
FiniteGroup cyclic(std::size_t n);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
/// Closure of the given permutations (images of 0..n−1) under composition,
/// with the identity permutation first.
FiniteGroup from_permutations(const std::vector<std::vector<std::size_t>>& generators);
FiniteGroup symmetric(std::size_t n);
FiniteGroup alternating(std::size_t n);
FiniteGroup dihedral(std::size_t n);  // order 2n
FiniteGroup quaternion();             // Q8

/// All endomorphisms of g: every assignment of images to a greedy generating
/// set that extends consistently to the whole group.
std::vector<std::vector<Element>> endomorphisms(const FiniteGroup& g);

}  // namespace groups

}  // namespace diffcoh
