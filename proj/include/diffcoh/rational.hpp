#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace diffcoh {

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int value) : value_(value) {}
  Rational(long value) : value_(value) {}
  Rational(long long value) : value_(static_cast<long>(value)) {}
  Rational(long numerator, long denominator);
  explicit Rational(mpq_class value);

  /// Parses "a", "-a" or "a/b". Throws std::invalid_argument on malformed
  /// text or a zero denominator.
  static Rational parse(std::string_view text);

  /// "a/b" with b > 0 and gcd(a, b) = 1, or "a" when b = 1.
  std::string to_string() const;

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  Rational inverse() const;
  const mpq_class& raw() const { return value_; }

  Rational& operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
  }
  Rational& operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
  }
  Rational& operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
  }
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& x) { return Rational(mpq_class(-x.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

 private:
  mpq_class value_;
};

inline Rational conjugate(const Rational& x) { return x; }

}  // namespace diffcoh
