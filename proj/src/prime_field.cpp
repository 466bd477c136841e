#include "diffcoh/prime_field.hpp"

#include <stdexcept>

namespace diffcoh {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::int64_t reduce(std::int64_t v, std::uint32_t p) {
  const auto m = static_cast<std::int64_t>(p);
  v %= m;
  return v < 0 ? v + m : v;
}

}  // namespace

Zp::Zp(std::int64_t value, std::uint32_t p) : value_(p ? reduce(value, p) : value), p_(p) {}

std::uint32_t Zp::common_modulus(const Zp& a, const Zp& b) {
  if (a.p_ && b.p_ && a.p_ != b.p_)
    throw std::invalid_argument("mixed prime-field moduli " + std::to_string(a.p_) + " and " +
                                std::to_string(b.p_));
  return a.p_ ? a.p_ : b.p_;
}

Zp& Zp::operator+=(const Zp& rhs) {
  const auto p = common_modulus(*this, rhs);
  if (!p) {
    value_ += rhs.value_;
    return *this;
  }
  value_ = reduce(reduce(value_, p) + reduce(rhs.value_, p), p);
  p_ = p;
  return *this;
}

Zp& Zp::operator-=(const Zp& rhs) {
  const auto p = common_modulus(*this, rhs);
  if (!p) {
    value_ -= rhs.value_;
    return *this;
  }
  value_ = reduce(reduce(value_, p) - reduce(rhs.value_, p), p);
  p_ = p;
  return *this;
}

Zp& Zp::operator*=(const Zp& rhs) {
  const auto p = common_modulus(*this, rhs);
  if (!p) {
    value_ *= rhs.value_;
    return *this;
  }
  const auto a = static_cast<std::uint64_t>(reduce(value_, p));
  const auto b = static_cast<std::uint64_t>(reduce(rhs.value_, p));
  value_ = static_cast<std::int64_t>((a * b) % p);
  p_ = p;
  return *this;
}

Zp Zp::inverse() const {
  if (!p_) {
    if (value_ == 1 || value_ == -1) return *this;
    throw std::domain_error("inverse of an unbound prime-field literal");
  }
  if (value_ == 0) throw std::domain_error("inverse of zero in F_" + std::to_string(p_));
  // Extended Euclid on (value, p).
  std::int64_t r0 = p_, r1 = value_, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const auto q = r0 / r1;
    std::int64_t tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  return Zp(t0, p_);
}

bool operator==(const Zp& a, const Zp& b) {
  const auto p = Zp::common_modulus(a, b);
  if (!p) return a.value_ == b.value_;
  return reduce(a.value_, p) == reduce(b.value_, p);
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  return {Kind::prime_field, p};
}

std::string FieldSpec::name() const {
  return is_prime_field() ? "F_" + std::to_string(characteristic) : "Q";
}

}  // namespace diffcoh
