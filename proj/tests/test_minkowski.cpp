#include <doctest.h>

#include <algorithm>
#include <random>

#include "qmk/minkowski.hpp"

using namespace qmk;

namespace {

Rational qm(const std::string& x) { return question_mark_exact(parse_exact(x)); }

}  // namespace

TEST_CASE("worked values") {
  CHECK(qm("0") == Rational(0));
  CHECK(qm("1") == Rational(1));
  CHECK(qm("1/2") == Rational(1, 2));
  CHECK(qm("1/3") == Rational(1, 4));
  CHECK(qm("2/5") == Rational(3, 8));
  CHECK(qm("sqrt(2)-1") == Rational(2, 5));
  CHECK(qm("(sqrt(5)-1)/2") == Rational(2, 3));
  CHECK(qm("(3-sqrt(5))/2") == Rational(1, 3));
  CHECK_THROWS_AS(qm("3/2"), std::out_of_range);
  CHECK_THROWS_AS(qm("-1/7"), std::out_of_range);
  CHECK(question_mark_binary(cf_expand(parse_exact("2/5"))).to_string() == "0.011");
  CHECK(question_mark_binary(cf_expand(parse_exact("sqrt(2)-1"))).to_string() == "0.(0110)");
  CHECK(question_mark_dyadic(Rational(1, 3)) == Dyadic(1, 2));
}

TEST_CASE("Stern-Brocot mediant recursion oracle") {
  // ?((a+c)/(b+d)) = (?(a/b) + ?(c/d)) / 2 on Farey neighbours
  struct Node {
    long a, b, c, d;
    Rational qa, qc;
  };
  std::vector<Node> level{{0, 1, 1, 1, Rational(0), Rational(1)}};
  int checked = 0;
  for (int depth = 0; depth < 11; ++depth) {
    std::vector<Node> next;
    for (const auto& n : level) {
      Rational mediant(n.a + n.c, n.b + n.d);
      Rational expected = (n.qa + n.qc) / Rational(2);
      CHECK(question_mark_exact(mediant) == expected);
      ++checked;
      next.push_back({n.a, n.b, n.a + n.c, n.b + n.d, n.qa, expected});
      next.push_back({n.a + n.c, n.b + n.d, n.c, n.d, expected, n.qc});
    }
    level = std::move(next);
  }
  CHECK(checked == 2047);
}

TEST_CASE("binary code parsing and value") {
  CHECK(BinaryCode::parse("0.0(1100)").value() == Rational(2, 5));
  CHECK(BinaryCode::parse("0.011").value() == Rational(3, 8));
  CHECK(BinaryCode::parse("0.(1)").value() == Rational(1));
  CHECK(BinaryCode::parse("1.0").value() == Rational(1));
  CHECK(binary_expansion(Rational(2, 5)).to_string() == "0.(0110)");
  CHECK(binary_expansion(Rational(1, 6)).to_string() == "0.0(01)");
  CHECK(binary_from_runs(0, {Integer(1)}).to_string() == "0.1");
}

TEST_CASE("series and binary evaluations agree") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    long q = 1 + static_cast<long>(rng() % 400);
    long p = static_cast<long>(rng() % (q + 1));
    ContinuedFraction cf = cf_expand_rational(Rational(p, q));
    if (cf.quotients().empty()) continue;
    DyadicInterval iv = question_mark_series(cf, cf.quotients().size());
    CHECK(iv.exact());
    CHECK(iv.lower.to_rational() == question_mark_binary(cf).value());
    CHECK(question_mark_series_limit(cf) == question_mark_binary(cf).value());
    // non-canonical twin gives the same value
    CHECK(question_mark_binary(cf.canonical()).value() == question_mark_binary(cf).value());
  }
}

TEST_CASE("series enclosures for surds") {
  std::mt19937_64 rng(19);
  const long radicands[] = {2, 3, 5, 7, 11};
  for (int i = 0; i < 60; ++i) {
    ExactNumber x = ExactNumber::quadratic(static_cast<long>(rng() % 7), 1, 2 + static_cast<long>(rng() % 9),
                                           radicands[rng() % 5]);
    x = x.frac();
    if (x.is_rational()) continue;
    ContinuedFraction cf = cf_expand(x);
    Rational exact = question_mark_exact(x);
    CHECK(question_mark_series_limit(cf) == exact);
    Integer sum = 0;
    for (std::size_t k = 1; k <= 12; ++k) {
      sum += *cf.quotient(k);
      DyadicInterval iv = question_mark_series(cf, k);
      CHECK(iv.lower.to_rational() <= exact);
      CHECK(exact <= iv.upper.to_rational());
      CHECK(iv.width() <= pow2(-sum.get_si()));
    }
  }
}

TEST_CASE("inverse round trips") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    long q = 1 + static_cast<long>(rng() % 300);
    long p = static_cast<long>(rng() % (q + 1));
    Rational y(p, q);
    ExactNumber x = inverse_question_mark(y);
    CHECK(x.is_rational() == is_dyadic(y));
    CHECK(question_mark_exact(x) == y);
  }
  CHECK(inverse_question_mark(Rational(2, 5)) == parse_exact("sqrt(2)-1"));
  CHECK_THROWS_AS(inverse_question_mark(Rational(3, 2)), std::out_of_range);
}

TEST_CASE("classification") {
  Classification r = classify(parse_exact("2/5"));
  CHECK(r.domain == DomainClass::Rational);
  CHECK(r.image == ImageClass::DyadicRational);
  CHECK(r.verified);
  Classification s = classify(parse_exact("sqrt(3)-1"));
  CHECK(s.domain == DomainClass::QuadraticIrrational);
  CHECK(s.image == ImageClass::NonDyadicRational);
  Classification e = classify(ContinuedFraction::stream(0, euler_digits()));
  CHECK(e.domain == DomainClass::OtherIrrational);
  CHECK(e.image == ImageClass::Irrational);

  auto ones = std::make_shared<DigitStream>([]() -> std::optional<Integer> { return Integer(1); });
  Classification u = classify(ContinuedFraction::stream(0, ones), 64);
  CHECK(u.domain == DomainClass::Unknown);
  CHECK(u.horizon == std::size_t{64});

  int left = 4;
  auto finite = std::make_shared<DigitStream>([left]() mutable -> std::optional<Integer> {
    if (left-- > 0) return Integer(3);
    return std::nullopt;
  });
  Classification f = classify(ContinuedFraction::stream(0, finite));
  CHECK(f.domain == DomainClass::Rational);
  CHECK(f.image == ImageClass::DyadicRational);
}

TEST_CASE("streamed binary code matches the exact code") {
  // a finite stream [0; 3, 1, 4, 2] must give the same bits as the finite expansion
  std::vector<long> digits = {3, 1, 4, 2};
  std::size_t pos = 0;
  auto src = std::make_shared<DigitStream>([digits, pos]() mutable -> std::optional<Integer> {
    if (pos < digits.size()) return Integer(digits[pos++]);
    return std::nullopt;
  });
  BinaryCode streamed = question_mark_binary(ContinuedFraction::stream(0, src));
  BinaryCode exact = question_mark_binary(ContinuedFraction::finite(0, {3, 1, 4, 2}));
  for (std::size_t i = 0; i < 20; ++i) CHECK(streamed.bit(i) == exact.bit(i));
}

TEST_CASE("monotone on random rationals") {
  std::mt19937_64 rng(29);
  std::vector<Rational> xs;
  for (int i = 0; i < 1000; ++i) {
    long q = 1 + static_cast<long>(rng() % 100000);
    xs.emplace_back(static_cast<long>(rng() % (q + 1)), q);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (std::size_t i = 1; i < xs.size(); ++i) CHECK(question_mark_exact(xs[i - 1]) < question_mark_exact(xs[i]));
}
