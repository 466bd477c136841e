#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "diffcoh/linalg.hpp"

using namespace diffcoh;
using Q = Rational;

namespace {

Mat<Q> qmat(std::initializer_list<std::initializer_list<long>> rows) {
  Mat<Q> m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index r = 0;
  for (const auto& row : rows) {
    Index c = 0;
    for (long x : row) m(r, c++) = Q(x);
    ++r;
  }
  return m;
}

Mat<Zp> zmat(std::uint32_t p, std::initializer_list<std::initializer_list<long>> rows) {
  const Mat<Q> q = qmat(rows);
  Mat<Zp> m(q.rows(), q.cols());
  for (Index r = 0; r < q.rows(); ++r)
    for (Index c = 0; c < q.cols(); ++c) m(r, c) = Zp(q(r, c).raw().get_num().get_si(), p);
  return m;
}

}  // namespace

TEST_SUITE("rational") {
  TEST_CASE("always reduced, positive denominator") {
    CHECK(Q(6, -4).to_string() == "-3/2");
    CHECK(Q(4, 2).to_string() == "2");
    CHECK(Q::parse("10/4") == Q(5, 2));
    CHECK(Q::parse("-7") == Q(-7));
  }
  TEST_CASE("malformed text and zero denominators throw") {
    CHECK_THROWS_AS(Q::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Q::parse("x"), std::invalid_argument);
    CHECK_THROWS(Q(0).inverse());
  }
  TEST_CASE("field axioms on sampled triples") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
    for (int k = 0; k < 200; ++k) {
      const Q a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      if (!a.is_zero()) CHECK(a * a.inverse() == Q(1));
    }
  }
}

TEST_SUITE("prime field") {
  TEST_CASE("canonical residues") {
    CHECK(Zp(-1, 3).value() == 2);
    CHECK(Zp(7, 5).value() == 2);
    CHECK(FieldSpec::prime(3).name() == "F_3");
    CHECK_THROWS_AS(FieldSpec::prime(4), std::invalid_argument);
  }
  TEST_CASE("literals adopt the bound modulus") {
    const Zp a(2, 3);
    CHECK(a + Zp(1) == Zp(0, 3));
    CHECK(a * a == Zp(1, 3));
  }
  TEST_CASE("mixing moduli throws") { CHECK_THROWS_AS(Zp(1, 3) + Zp(1, 5), std::invalid_argument); }
  TEST_CASE("field axioms exhaustively over F_7") {
    for (long x = 0; x < 7; ++x)
      for (long y = 0; y < 7; ++y)
        for (long z = 0; z < 7; ++z) {
          const Zp a(x, 7), b(y, 7), c(z, 7);
          CHECK(a * (b + c) == a * b + a * c);
          CHECK((a * b) * c == a * (b * c));
        }
    for (long x = 1; x < 7; ++x) CHECK(Zp(x, 7) * Zp(x, 7).inverse() == Zp(1, 7));
  }
}

TEST_SUITE("gaussian rationals") {
  TEST_CASE("i squared is -1, conjugation is an involutive automorphism") {
    const GaussianRational i = GaussianRational::i();
    CHECK(i * i == GaussianRational(-1));
    const GaussianRational a(Q(1, 2), Q(3)), b(Q(-2), Q(1, 3));
    CHECK(conjugate(a * b) == conjugate(a) * conjugate(b));
    CHECK(conjugate(conjugate(a)) == a);
    CHECK(a * a.inverse() == GaussianRational(1));
  }
}

TEST_SUITE("jets") {
  using J = Jet<Q>;
  TEST_CASE("products drop repeated generators") {
    const J one = J::constant(2, Q(1));
    const J e1 = J::generator(2, 1), e2 = J::generator(2, 2);
    const J sq = (one + e1) * (one + e1);
    CHECK(sq.coefficient({}) == Q(1));
    CHECK(sq.coefficient({1}) == Q(2));
    const J mixed = (one + e1) * (one + e2);
    CHECK(mixed.coefficient({1, 2}) == Q(1));
    CHECK(mixed.coefficient({1}) == Q(1));
    CHECK(mixed.coefficient({2}) == Q(1));
    CHECK(e1 * e2 * e1 == J(0));
  }
  TEST_CASE("coefficients of 3 + 2e1") {
    const J a = J::constant(1, Q(3)) + J::constant(1, Q(2)) * J::generator(1, 1);
    CHECK(a.coefficient({}) == Q(3));
    CHECK(a.coefficient({1}) == Q(2));
  }
  TEST_CASE("commutative, associative, invertible with nonzero constant term") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> d(-4, 4);
    auto sample = [&] {
      J j = J::constant(3, Q(d(rng)));
      for (unsigned i = 1; i <= 3; ++i) j += J::constant(3, Q(d(rng))) * J::generator(3, i);
      j += J::constant(3, Q(d(rng))) * J::generator(3, 1) * J::generator(3, 2);
      return j;
    };
    for (int k = 0; k < 50; ++k) {
      const J a = sample(), b = sample(), c = sample();
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      if (!a.coefficient({}).is_zero()) CHECK(a * a.inverse() == J(1));
    }
  }
  TEST_CASE("jet matrix inverse") {
    const Mat<J> id = Mat<J>::Identity(2, 2);
    CHECK(jet_matrix_inverse<Q>(id) == id);
    const J e = J::generator(1, 1);
    Mat<J> x(2, 2);
    x << J(1), J(2), J(-1), J(3);
    const Mat<J> m = id + Mat<J>(x * e);
    CHECK(jet_matrix_inverse<Q>(m) == Mat<J>(id - Mat<J>(x * e)));
    const Mat<J> s = Mat<J>(id * (J(1) + e));
    CHECK(jet_matrix_inverse<Q>(s) == Mat<J>(id * (J(1) - e)));
    Mat<J> y(2, 2);
    y << J(2) + e, J(1), J::generator(1, 1), J(1);
    CHECK(Mat<J>(y * jet_matrix_inverse<Q>(y)) == id);
  }
}

TEST_SUITE("linear algebra") {
  TEST_CASE("rank") {
    CHECK(rank<Q>(Mat<Q>::Identity(2, 2)) == 2);
    CHECK(rank<Zp>(zmat(3, {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}})) == 0);
    CHECK(rank<Q>(qmat({{1, 2}, {2, 4}})) == 1);
  }
  TEST_CASE("kernel bases") {
    CHECK(kernel_basis<Q>(Mat<Q>::Identity(3, 3)).cols() == 0);
    CHECK(kernel_basis<Q>(Mat<Q>::Zero(2, 3)).cols() == 3);
    const Mat<Zp> m = zmat(2, {{1, 1, 0}, {0, 1, 1}});
    const Mat<Zp> k = kernel_basis<Zp>(m);
    REQUIRE(k.cols() == 1);
    for (Index r = 0; r < 3; ++r) CHECK(k(r, 0) == Zp(1, 2));
    // The F_2 kernel by enumerating all 8 vectors.
    int nonzero_solutions = 0;
    for (int v = 1; v < 8; ++v) {
      Vec<Zp> x(3);
      for (int b = 0; b < 3; ++b) x(b) = Zp((v >> b) & 1, 2);
      nonzero_solutions += is_zero_matrix(Mat<Zp>(m * x));
    }
    CHECK(nonzero_solutions == 1);
  }
  TEST_CASE("rank plus nullity is the column count") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> d(-2, 2);
    for (int k = 0; k < 30; ++k) {
      Mat<Q> m(4, 6);
      for (Index r = 0; r < 4; ++r)
        for (Index c = 0; c < 6; ++c) m(r, c) = Q(d(rng));
      const Mat<Q> ker = kernel_basis<Q>(m);
      CHECK(rank<Q>(m) + ker.cols() == 6);
      CHECK(is_zero_matrix(Mat<Q>(m * ker)));
    }
  }
  TEST_CASE("determinant and adjugate") {
    const Mat<Q> m = qmat({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}});
    CHECK(determinant<Q>(m) == Q(18));
    CHECK(Mat<Q>(m * adjugate<Q>(m)) == Mat<Q>(Mat<Q>::Identity(3, 3) * Q(18)));
    CHECK(inverse<Q>(qmat({{1, 2}, {2, 4}})) == std::nullopt);
  }
  TEST_CASE("solve") {
    const auto x = solve<Q>(qmat({{1, 1}, {1, -1}}), Vec<Q>(qmat({{3}, {1}})));
    REQUIRE(x);
    CHECK((*x)(0) == Q(2));
    CHECK((*x)(1) == Q(1));
  }
}
