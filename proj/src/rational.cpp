#include "diffcoh/rational.hpp"

#include <stdexcept>

namespace diffcoh {

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::invalid_argument("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = s.find('/');
  mpz_class num;
  mpz_class den = 1;
  auto parse_int = [&](const std::string& part, mpz_class& out) {
    if (part.empty() || out.set_str(part, 10) != 0)
      throw std::invalid_argument("malformed rational literal '" + s + "'");
  };
  if (slash == std::string::npos) {
    parse_int(s, num);
  } else {
    parse_int(s.substr(0, slash), num);
    parse_int(s.substr(slash + 1), den);
    if (den == 0) throw std::invalid_argument("rational with zero denominator: '" + s + "'");
  }
  mpq_class q(num, den);
  q.canonicalize();
  return Rational(std::move(q));
}

std::string Rational::to_string() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational");
  mpq_class r = 1 / value_;
  return Rational(std::move(r));
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero rational");
  value_ /= rhs.value_;
  return *this;
}

}  // namespace diffcoh
