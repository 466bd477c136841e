#pragma once

#include <cstdint>
#include <ostream>
#include <string>

namespace diffcoh {

bool is_prime(std::uint64_t n);

/// Element of F_p with a runtime modulus.
///
/// A value constructed from a bare integer is an unbound literal (modulus 0).
/// Literals adopt the modulus of the bound operand they meet, which is what
/// lets generic code write `S(0)` and `S(1)`. Mixing two different bound
/// moduli throws std::invalid_argument.
class Zp {
 public:
  Zp() = default;
  Zp(int literal) : value_(literal) {}
  Zp(std::int64_t value, std::uint32_t p);

  std::uint32_t modulus() const { return p_; }
  bool bound() const { return p_ != 0; }
  /// Canonical residue in [0, p) when bound; the raw literal otherwise.
  std::int64_t value() const { return value_; }

  bool is_zero() const { return value_ == 0; }
  Zp inverse() const;
  Zp bind(std::uint32_t p) const { return bound() ? *this : Zp(value_, p); }

  Zp& operator+=(const Zp& rhs);
  Zp& operator-=(const Zp& rhs);
  Zp& operator*=(const Zp& rhs);
  Zp& operator/=(const Zp& rhs) { return *this *= rhs.inverse(); }

  friend Zp operator+(Zp lhs, const Zp& rhs) { return lhs += rhs; }
  friend Zp operator-(Zp lhs, const Zp& rhs) { return lhs -= rhs; }
  friend Zp operator*(Zp lhs, const Zp& rhs) { return lhs *= rhs; }
  friend Zp operator/(Zp lhs, const Zp& rhs) { return lhs /= rhs; }
  friend Zp operator-(const Zp& x) { return Zp(0) - x; }

  friend bool operator==(const Zp& a, const Zp& b);

  friend std::ostream& operator<<(std::ostream& os, const Zp& x) { return os << x.value_; }

 private:
  static std::uint32_t common_modulus(const Zp& a, const Zp& b);

  std::int64_t value_ = 0;
  std::uint32_t p_ = 0;
};

inline Zp conjugate(const Zp& x) { return x; }

/// Which exact field a fixture lives over.
struct FieldSpec {
  enum class Kind { rationals, prime_field };

  Kind kind = Kind::rationals;
  std::uint32_t characteristic = 0;

  static FieldSpec rationals() { return {}; }
  /// Throws std::invalid_argument unless p is prime.
  static FieldSpec prime(std::uint32_t p);

  bool is_prime_field() const { return kind == Kind::prime_field; }
  std::string name() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

}  // namespace diffcoh
