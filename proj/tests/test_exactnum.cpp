#include <doctest.h>

#include <cmath>
#include <random>

#include "qmk/exactnum.hpp"

using namespace qmk;

TEST_CASE("rational normalization and arithmetic") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(3, -6).den() == 2);
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).frac() == Rational(1, 2));
  CHECK(Rational(7, 3).to_string() == "7/3");
  CHECK(Rational(-4).to_string() == "-4");
  CHECK(Rational(1, 3) < Rational(1, 2));
}

TEST_CASE("rational field axioms on random values") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(-1000, 1000);
  for (int i = 0; i < 500; ++i) {
    long a = d(rng), b = d(rng), c = d(rng), e = d(rng);
    if (b == 0 || e == 0) continue;
    Rational x(a, b), y(c, e);
    CHECK((x + y) - y == x);
    if (!y.is_zero()) CHECK((x * y) / y == x);
    // oracle: a/b < c/e  iff  (a*e - c*b) * sign(b*e) < 0
    long long cross = static_cast<long long>(a) * e - static_cast<long long>(c) * b;
    CHECK((x < y) == (cross * (static_cast<long long>(b) * e > 0 ? 1 : -1) < 0));
  }
}

TEST_CASE("floor_div and isqrt") {
  CHECK(floor_div(7, 2) == 3);
  CHECK(floor_div(-7, 2) == -4);
  CHECK(floor_div(7, -2) == -4);
  CHECK(floor_div(-7, -2) == 3);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    Integer n = Integer(static_cast<unsigned long>(rng())) * Integer(static_cast<unsigned long>(rng()));
    Integer r = isqrt(n);
    CHECK(r * r <= n);
    CHECK((r + 1) * (r + 1) > n);
  }
}

TEST_CASE("split_square against trial factorization") {
  for (long n = 1; n <= 3000; ++n) {
    // oracle: largest f with f^2 | n by direct search
    long f = 1;
    for (long k = 1; k * k <= n; ++k)
      if (n % (k * k) == 0) f = k;
    auto [root, core] = split_square(Integer(n));
    CHECK(root == f);
    CHECK(core == n / (f * f));
  }
}

TEST_CASE("dyadic rationals") {
  Dyadic d = Dyadic::from_rational(Rational(3, 8));
  CHECK(d.odd_part() == 3);
  CHECK(d.exponent() == 3);
  CHECK(d.to_rational() == Rational(3, 8));
  CHECK(Dyadic::from_rational(Rational(4)).to_rational() == Rational(4));
  CHECK_THROWS_AS(Dyadic::from_rational(Rational(1, 3)), std::domain_error);
  CHECK(is_dyadic(Rational(5, 16)));
  CHECK_FALSE(is_dyadic(Rational(2, 5)));
  CHECK(pow2(-3) == Rational(1, 8));
}

TEST_CASE("quadratic surds") {
  ExactNumber golden = parse_exact("(1+sqrt(5))/2");
  REQUIRE_FALSE(golden.is_rational());
  CHECK(golden.to_string() == "(1+sqrt(5))/2");
  CHECK(golden.floor() == 1);
  CHECK(golden.surd().conjugate().to_string() == "(1-sqrt(5))/2");
  ExactNumber product = surd_arith(golden.surd(), golden.surd().conjugate(), ArithOp::Mul);
  REQUIRE(product.is_rational());
  CHECK(product.rational() == Rational(-1));
  CHECK(ExactNumber::quadratic(1, 0, 1, 5).is_rational());
  CHECK(ExactNumber::quadratic(0, 1, 1, 9) == ExactNumber(3));
  CHECK(parse_exact("sqrt(8)") == ExactNumber::quadratic(0, 2, 1, 2));
  CHECK_THROWS_AS(QuadraticSurd(1, 1, 1, 4), std::domain_error);
  CHECK_THROWS_AS(QuadraticSurd(1, 1, 1, -3), std::domain_error);
  CHECK(parse_exact("sqrt(2)-1").to_string() == "-1+sqrt(2)");
  CHECK(parse_exact("sqrt(2)") < parse_exact("sqrt(3)"));
  CHECK_THROWS_AS(parse_exact("sqrt(2)") + parse_exact("sqrt(3)"), std::domain_error);
}

TEST_CASE("surd arithmetic agrees with floating point and inverts") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> small(-20, 20), pos(1, 9);
  const long radicands[] = {2, 3, 5, 7, 13};
  for (int i = 0; i < 300; ++i) {
    long d = radicands[rng() % 5];
    ExactNumber a = ExactNumber::quadratic(small(rng), pos(rng), pos(rng), d);
    ExactNumber b = ExactNumber::quadratic(small(rng), pos(rng), pos(rng), d);
    CHECK((a + b) - b == a);
    CHECK((a * b) / b == a);
    CHECK(std::abs((a * b).to_double() - a.to_double() * b.to_double()) < 1e-9 * (1 + std::abs(a.to_double() * b.to_double())));
    CHECK(a.floor() == Integer(static_cast<long>(std::floor(a.to_double()))));
    if (!a.is_rational()) {
      auto [lo, hi] = a.surd().enclosure(60);
      CHECK(lo < hi);
      CHECK(hi - lo <= pow2(-60));
      CHECK(lo.to_double() <= a.to_double() + 1e-12);
      CHECK(hi.to_double() >= a.to_double() - 1e-12);
    }
  }
}

TEST_CASE("expression parser") {
  CHECK(parse_exact("-0.375") == ExactNumber(Rational(-3, 8)));
  CHECK(parse_exact(".5") == ExactNumber(Rational(1, 2)));
  CHECK(parse_exact("0.0375") == ExactNumber(Rational(3, 80)));
  CHECK(parse_exact("010") == ExactNumber(Rational(10)));
  CHECK(parse_exact("3/7") == ExactNumber(Rational(3, 7)));
  CHECK(parse_exact("(3-2*sqrt(7))/5") == ExactNumber::quadratic(3, -2, 5, 7));
  CHECK(parse_exact("sqrt(1/2)") == ExactNumber::quadratic(0, 1, 2, 2));
  CHECK(parse_rational("10/4") == Rational(5, 2));
  CHECK_THROWS_AS(parse_exact("1/"), std::invalid_argument);
  CHECK_THROWS_AS(parse_exact("sqrt(2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_exact("abc"), std::invalid_argument);
  CHECK_THROWS(parse_rational("sqrt(2)"));
}
