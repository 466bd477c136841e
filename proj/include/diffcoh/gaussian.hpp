#pragma once

#include <ostream>
#include <string>

#include "diffcoh/rational.hpp"

namespace diffcoh {

/// Element re + im·i of Q(i), i² = −1. Complex conjugation is the nontrivial
/// field automorphism.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(int re) : re_(re) {}
  GaussianRational(Rational re) : re_(std::move(re)) {}
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  GaussianRational inverse() const {
    const Rational norm = re_ * re_ + im_ * im_;
    return {re_ / norm, -im_ / norm};
  }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;

  std::string to_string() const {
    if (im_.is_zero()) return re_.to_string();
    return re_.to_string() + (im_ < Rational(0) ? "" : "+") + im_.to_string() + "i";
  }
  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& x) { return os << x.to_string(); }

 private:
  Rational re_;
  Rational im_;
};

inline GaussianRational conjugate(const GaussianRational& x) { return {x.real(), -x.imag()}; }

}  // namespace diffcoh
