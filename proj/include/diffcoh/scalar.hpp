#pragma once

// Scalar traits, concepts and the Eigen glue for the exact scalar types.

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "diffcoh/gaussian.hpp"
#include "diffcoh/jet.hpp"
#include "diffcoh/prime_field.hpp"
#include "diffcoh/rational.hpp"

namespace diffcoh {

template <class S>
struct ScalarTraits {
  static constexpr bool is_field = false;
  static constexpr bool is_prime_field = false;
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool is_field = true;
  static constexpr bool is_prime_field = false;
  static Rational from_integer(const FieldSpec&, long long v) { return Rational(v); }
  static Rational parse(const FieldSpec&, std::string_view text) { return Rational::parse(text); }
  static std::string format(const Rational& x) { return x.to_string(); }
  static Rational from_gaussian(const GaussianRational& x) {
    if (!x.imag().is_zero()) throw std::invalid_argument("non-real constant " + x.to_string() + " over Q");
    return x.real();
  }
};

template <>
struct ScalarTraits<Zp> {
  static constexpr bool is_field = true;
  static constexpr bool is_prime_field = true;
  static Zp from_integer(const FieldSpec& f, long long v) {
    if (!f.is_prime_field()) throw std::invalid_argument("prime-field scalar requested over " + f.name());
    return Zp(v, f.characteristic);
  }
  static Zp parse(const FieldSpec& f, std::string_view text) {
    const Rational q = Rational::parse(text);
    const Zp num(q.raw().get_num().get_si(), f.characteristic);
    const Zp den(q.raw().get_den().get_si(), f.characteristic);
    return num / den;
  }
  static std::string format(const Zp& x) { return std::to_string(x.value()); }
};

template <>
struct ScalarTraits<GaussianRational> {
  static constexpr bool is_field = true;
  static constexpr bool is_prime_field = false;
  static GaussianRational from_integer(const FieldSpec&, long long v) { return Rational(v); }
  static std::string format(const GaussianRational& x) { return x.to_string(); }
  static GaussianRational from_gaussian(const GaussianRational& x) { return x; }
};

template <class S>
struct ScalarTraits<Jet<S>> {
  static constexpr bool is_field = false;
  static constexpr bool is_prime_field = false;
  static Jet<S> from_gaussian(const GaussianRational& x) { return Jet<S>(ScalarTraits<S>::from_gaussian(x)); }
};

/// Exact fields: rationals, prime fields, Gaussian rationals. Jet rings are
/// rings, not fields, and are rejected wherever elimination is needed.
template <class S>
concept ExactField = ScalarTraits<S>::is_field;

template <class S>
concept PrimeFieldScalar = ScalarTraits<S>::is_prime_field;

/// Anything with exact ring arithmetic usable as an Eigen scalar.
template <class R>
concept ExactRing = requires(R a, R b) {
  { a + b } -> std::convertible_to<R>;
  { a * b } -> std::convertible_to<R>;
  { -a } -> std::convertible_to<R>;
  { a == b } -> std::convertible_to<bool>;
  R(0);
  R(1);
};

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

template <ExactField S>
S scalar(const FieldSpec& f, long long v) {
  return ScalarTraits<S>::from_integer(f, v);
}

template <class S>
bool is_zero(const S& x) {
  return x == S(0);
}

template <class Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!(m(i, j) == S(0))) return false;
  return true;
}

template <class S>
Mat<S> conjugate_matrix(const Mat<S>& m) {
  return m.unaryExpr([](const S& x) { return conjugate(x); });
}

}  // namespace diffcoh

namespace Eigen {

namespace diffcoh_detail {
template <class T>
struct ExactNumTraits : GenericNumTraits<T> {
  using Real = T;
  using NonInteger = T;
  using Literal = T;
  using Nested = T;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3
  };
  static T epsilon() { return T(0); }
  static T dummy_precision() { return T(0); }
  static int digits10() { return 0; }
};
}  // namespace diffcoh_detail

template <>
struct NumTraits<diffcoh::Rational> : diffcoh_detail::ExactNumTraits<diffcoh::Rational> {};
template <>
struct NumTraits<diffcoh::Zp> : diffcoh_detail::ExactNumTraits<diffcoh::Zp> {};
template <>
struct NumTraits<diffcoh::GaussianRational> : diffcoh_detail::ExactNumTraits<diffcoh::GaussianRational> {};
template <class S>
struct NumTraits<diffcoh::Jet<S>> : diffcoh_detail::ExactNumTraits<diffcoh::Jet<S>> {};

}  // namespace Eigen
