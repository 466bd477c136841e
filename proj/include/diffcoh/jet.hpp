#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>

namespace diffcoh {

/// Element of the jet ring S[ε₁, …, εₙ]/(εᵢ²).
///
/// Coefficients are keyed by the generator subset as a bitmask (bit i−1 for
/// εᵢ); absent subsets are zero and zero coefficients are never stored.
/// A jet with zero generators is a constant and combines with jets of any
/// generator count; two jets with different nonzero counts do not combine.
template <class S>
class Jet {
 public:
  using Mask = std::uint32_t;
  static constexpr unsigned max_generators = 16;

  Jet() = default;
  Jet(int constant) : Jet(S(constant)) {}
  Jet(const S& constant) {
    if (!(constant == S(0))) coeffs_.emplace(0, constant);
  }

  static Jet constant(unsigned generators, const S& value) {
    Jet j(value);
    j.gens_ = check_count(generators);
    return j;
  }
  /// εᵢ, with i in 1..generators.
  static Jet generator(unsigned generators, unsigned i) {
    Jet j;
    j.gens_ = check_count(generators);
    j.coeffs_.emplace(j.bit(i), S(1));
    return j;
  }

  unsigned generators() const { return gens_; }
  const std::map<Mask, S>& terms() const { return coeffs_; }

  /// Coefficient of ∏_{i∈subset} εᵢ; indices are 1-based.
  S coefficient(std::span<const unsigned> subset) const {
    Mask m = 0;
    for (unsigned i : subset) m |= bit(i);
    return coefficient_mask(m);
  }
  S coefficient(std::initializer_list<unsigned> subset) const {
    return coefficient(std::span<const unsigned>(subset.begin(), subset.size()));
  }
  S coefficient_mask(Mask m) const {
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? S(0) : it->second;
  }
  S base() const { return coefficient_mask(0); }
  /// Coefficient of ε₁⋯εₙ.
  S top() const { return coefficient_mask(gens_ == 0 ? 0 : (Mask(1) << gens_) - 1); }

  void set(Mask m, const S& value) {
    if (value == S(0))
      coeffs_.erase(m);
    else
      coeffs_[m] = value;
  }

  bool is_zero() const { return coeffs_.empty(); }

  Jet inverse() const {
    const S b = base();
    if (b == S(0)) throw std::domain_error("jet with zero constant term is not invertible");
    // (b(1 + n))⁻¹ = b⁻¹ Σ (−n)ᵏ, n nilpotent of order ≤ generators + 1.
    const S binv = S(1) / b;
    Jet nil = *this * Jet(binv);
    nil.coeffs_.erase(0);
    Jet neg = -nil;
    Jet sum(S(1));
    sum.gens_ = gens_;
    Jet power = sum;
    for (unsigned k = 0; k < gens_; ++k) {
      power = power * neg;
      if (power.is_zero()) break;
      sum += power;
    }
    return sum * Jet(binv);
  }

  Jet& operator+=(const Jet& o) {
    gens_ = combined(o);
    for (const auto& [m, c] : o.coeffs_) set(m, coefficient_mask(m) + c);
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    gens_ = combined(o);
    for (const auto& [m, c] : o.coeffs_) set(m, coefficient_mask(m) - c);
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this * o.inverse(); }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
  friend Jet operator-(const Jet& a) {
    Jet r;
    r.gens_ = a.gens_;
    for (const auto& [m, c] : a.coeffs_) r.coeffs_.emplace(m, -c);
    return r;
  }

  /// Coefficient of S in the product is Σ_{A ⊔ B = S} a[A]·b[B].
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    r.gens_ = a.combined(b);
    for (const auto& [ma, ca] : a.coeffs_)
      for (const auto& [mb, cb] : b.coeffs_) {
        if (ma & mb) continue;
        r.set(ma | mb, r.coefficient_mask(ma | mb) + ca * cb);
      }
    return r;
  }

  friend bool operator==(const Jet& a, const Jet& b) { return a.coeffs_ == b.coeffs_; }

  friend Jet conjugate(const Jet& a) {
    Jet r;
    r.gens_ = a.gens_;
    for (const auto& [m, c] : a.coeffs_) r.coeffs_.emplace(m, conjugate(c));
    return r;
  }

  friend std::ostream& operator<<(std::ostream& os, const Jet& a) {
    if (a.coeffs_.empty()) return os << "0";
    bool first = true;
    for (const auto& [m, c] : a.coeffs_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c << ")";
      for (unsigned i = 0; i < max_generators; ++i)
        if (m & (Mask(1) << i)) os << "e" << (i + 1);
    }
    return os;
  }

 private:
  static unsigned check_count(unsigned n) {
    if (n > max_generators) throw std::invalid_argument("too many jet generators: " + std::to_string(n));
    return n;
  }

  Mask bit(unsigned i) const {
    if (i == 0 || i > gens_)
      throw std::out_of_range("jet generator index " + std::to_string(i) + " outside 1.." + std::to_string(gens_));
    return Mask(1) << (i - 1);
  }

  unsigned combined(const Jet& o) const {
    if (gens_ && o.gens_ && gens_ != o.gens_)
      throw std::invalid_argument("jets with mismatched generator counts " + std::to_string(gens_) + " and " +
                                  std::to_string(o.gens_));
    return gens_ ? gens_ : o.gens_;
  }

  unsigned gens_ = 0;
  std::map<Mask, S> coeffs_;
};

template <class S>
Jet<S> jet_mul(const Jet<S>& a, const Jet<S>& b) {
  return a * b;
}

}  // namespace diffcoh
