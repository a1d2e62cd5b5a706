#include "qmk/exactnum.hpp"

#include <cmath>
#include <stdexcept>

namespace qmk {

Integer floor_div(const Integer& a, const Integer& b) {
  if (b == 0) throw std::domain_error("floor_div: division by zero");
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw std::domain_error("isqrt: negative argument");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::pair<Integer, Integer> split_square(const Integer& n) {
  if (n <= 0) throw std::domain_error("split_square: non-positive argument");
  Integer rest = n;
  Integer root = 1;
  Integer core = 1;
  constexpr unsigned long kBound = 1000000;
  bool certified = false;
  for (unsigned long p = 2; p <= kBound; p += (p == 2 ? 1 : 2)) {
    if (Integer(p) * p > rest) {
      certified = true;  // rest is 1 or a prime
      break;
    }
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      rest /= p;
      ++e;
    }
    for (unsigned i = 0; i < e / 2; ++i) root *= p;
    if (e % 2) core *= p;
  }
  if (!certified) {
    // rest has no prime factor <= kBound; below kBound^3 it is p, p*q or p^2.
    // Above kBound^3 a square of a large prime could hide in rest. It is kept
    // in the core, which leaves the value exact but the form non-canonical.
    if (mpz_perfect_square_p(rest.get_mpz_t())) {
      root *= isqrt(rest);
      rest = 1;
    }
  }
  return {root, Integer(core * rest)};
}

// ---------------------------------------------------------------- Rational

Rational::Rational(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw std::invalid_argument("rational: zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  Integer g;
  mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational rational_normalize(const Integer& num, const Integer& den) { return Rational(num, den); }

Rational pow2(long exponent) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(std::labs(exponent)));
  return exponent >= 0 ? Rational(p) : Rational(Integer(1), p);
}

bool is_dyadic(const Rational& x) {
  const Integer& d = x.den();
  return mpz_popcount(d.get_mpz_t()) == 1;
}

double Rational::to_double() const {
  mpq_class q(num_, den_);
  return q.get_d();
}

std::string Rational::to_string() const {
  if (den_ == 1) return num_.get_str();
  return num_.get_str() + "/" + den_.get_str();
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}
Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational: division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  int c = cmp(Integer(a.num_ * b.den_), Integer(b.num_ * a.den_));
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

// ---------------------------------------------------------------- Dyadic

Dyadic::Dyadic(Integer odd_part, unsigned long exponent)
    : odd_part_(std::move(odd_part)), exponent_(exponent) {
  while (exponent_ > 0 && mpz_even_p(odd_part_.get_mpz_t())) {
    odd_part_ /= 2;
    --exponent_;
  }
}

Dyadic Dyadic::from_rational(const Rational& x) {
  if (!is_dyadic(x)) throw std::domain_error("dyadic: " + x.to_string() + " is not dyadic");
  unsigned long e = mpz_scan1(x.den().get_mpz_t(), 0);
  return Dyadic(x.num(), e);
}

Rational Dyadic::to_rational() const {
  return Rational(odd_part_) * pow2(-static_cast<long>(exponent_));
}

// ---------------------------------------------------------------- quadratic helpers

namespace {

// Sign of a + b*sqrt(d) for d > 0 not a perfect square.
int sign_of(const Integer& a, const Integer& b, const Integer& d) {
  int sa = sgn(a), sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  Integer lhs = a * a;
  Integer rhs = b * b * d;
  int c = cmp(lhs, rhs);  // c != 0 because d is not a square
  return sa > 0 ? (c > 0 ? 1 : -1) : (c > 0 ? -1 : 1);
}

// Normalized element of Q(sqrt(d)); q == 0 means rational.
struct Elem {
  Integer p, q, r, d;
};

Elem normalize(Integer p, Integer q, Integer r, Integer d) {
  if (r == 0) throw std::invalid_argument("quadratic: zero denominator");
  if (d < 0) throw std::domain_error("quadratic: negative radicand");
  if (d == 0) q = 0;
  if (q != 0) {
    auto [f, core] = split_square(d);
    q *= f;
    d = core;
    if (d == 1) {
      p += q;
      q = 0;
    }
  }
  if (q == 0) d = 0;
  if (r < 0) {
    p = -p;
    q = -q;
    r = -r;
  }
  Integer g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r.get_mpz_t());
  if (g > 1) {
    p /= g;
    q /= g;
    r /= g;
  }
  return {p, q, r, d};
}

Elem as_elem(const ExactNumber& x) {
  if (x.is_rational()) return {x.rational().num(), 0, x.rational().den(), 0};
  const auto& s = x.surd();
  return {s.p(), s.q(), s.r(), s.d()};
}

Integer common_radicand(const Elem& a, const Elem& b) {
  if (a.q == 0) return b.d;
  if (b.q == 0) return a.d;
  if (a.d != b.d) {
    throw std::domain_error("quadratic: operands lie in different fields (sqrt(" + a.d.get_str() +
                            ") vs sqrt(" + b.d.get_str() + "))");
  }
  return a.d;
}

}  // namespace

// ---------------------------------------------------------------- QuadraticSurd

QuadraticSurd::QuadraticSurd(Integer p, Integer q, Integer r, Integer d) {
  Elem e = normalize(std::move(p), std::move(q), std::move(r), std::move(d));
  if (e.q == 0) throw std::domain_error("quadratic surd: value is rational");
  p_ = e.p;
  q_ = e.q;
  r_ = e.r;
  d_ = e.d;
}

int QuadraticSurd::sign() const { return sign_of(p_, q_, d_); }

Integer QuadraticSurd::floor() const {
  // floor(q*sqrt(d)) is exact because q*sqrt(d) is irrational.
  Integer s = isqrt(Integer(q_ * q_ * d_));
  Integer fs = q_ > 0 ? s : Integer(-s - 1);
  return floor_div(p_ + fs, r_);
}

QuadraticSurd QuadraticSurd::conjugate() const { return QuadraticSurd(p_, -q_, r_, d_, Raw{}); }

double QuadraticSurd::to_double() const {
  auto [lo, hi] = enclosure(80);
  return ((lo + hi) * Rational(Integer(1), Integer(2))).to_double();
}

std::pair<Rational, Rational> QuadraticSurd::enclosure(unsigned bits) const {
  // |q|*sqrt(d) * 2^k lies strictly between s and s + 1.
  unsigned k = bits + static_cast<unsigned>(mpz_sizeinbase(r_.get_mpz_t(), 2)) + 1;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, k);
  Integer s = isqrt(Integer(q_ * q_ * d_ * scale * scale));
  Rational lo(s, scale), hi(Integer(s + 1), scale);
  if (q_ < 0) {
    Rational t = -hi;
    hi = -lo;
    lo = t;
  }
  Rational p(p_), r(r_);
  return {(p + lo) / r, (p + hi) / r};
}

std::string QuadraticSurd::to_string() const {
  std::string out;
  if (p_ != 0) out = p_.get_str();
  Integer aq = abs(q_);
  std::string root = "sqrt(" + d_.get_str() + ")";
  std::string term = aq == 1 ? root : aq.get_str() + "*" + root;
  if (q_ < 0)
    out += "-" + term;
  else
    out += (out.empty() ? "" : "+") + term;
  if (r_ != 1) out = "(" + out + ")/" + r_.get_str();
  return out;
}

// ---------------------------------------------------------------- ExactNumber

ExactNumber ExactNumber::quadratic(Integer p, Integer q, Integer r, Integer d) {
  Elem e = normalize(std::move(p), std::move(q), std::move(r), std::move(d));
  if (e.q == 0) return Rational(e.p, e.r);
  return QuadraticSurd(e.p, e.q, e.r, e.d, QuadraticSurd::Raw{});
}

Integer ExactNumber::radicand() const { return is_rational() ? Integer(0) : surd().d(); }

int ExactNumber::sign() const { return is_rational() ? rational().sign() : surd().sign(); }

Integer ExactNumber::floor() const { return is_rational() ? rational().floor() : surd().floor(); }

double ExactNumber::to_double() const {
  return is_rational() ? rational().to_double() : surd().to_double();
}

std::string ExactNumber::to_string() const {
  return is_rational() ? rational().to_string() : surd().to_string();
}

ExactNumber ExactNumber::operator-() const {
  if (is_rational()) return -rational();
  const auto& s = surd();
  return QuadraticSurd(Integer(-s.p()), Integer(-s.q()), s.r(), s.d(), QuadraticSurd::Raw{});
}

ExactNumber operator+(const ExactNumber& a, const ExactNumber& b) {
  if (a.is_rational() && b.is_rational()) return a.rational() + b.rational();
  Elem x = as_elem(a), y = as_elem(b);
  Integer d = common_radicand(x, y);
  return ExactNumber::quadratic(x.p * y.r + y.p * x.r, x.q * y.r + y.q * x.r, x.r * y.r, d);
}

ExactNumber operator-(const ExactNumber& a, const ExactNumber& b) { return a + (-b); }

ExactNumber operator*(const ExactNumber& a, const ExactNumber& b) {
  if (a.is_rational() && b.is_rational()) return a.rational() * b.rational();
  Elem x = as_elem(a), y = as_elem(b);
  Integer d = common_radicand(x, y);
  return ExactNumber::quadratic(x.p * y.p + x.q * y.q * d, x.p * y.q + x.q * y.p, x.r * y.r, d);
}

ExactNumber operator/(const ExactNumber& a, const ExactNumber& b) {
  if (b.sign() == 0) throw std::domain_error("quadratic: division by zero");
  if (a.is_rational() && b.is_rational()) return a.rational() / b.rational();
  Elem x = as_elem(a), y = as_elem(b);
  Integer d = common_radicand(x, y);
  // 1/((p+q sqrt d)/r) = r (p - q sqrt d) / (p^2 - q^2 d)
  Integer norm = y.p * y.p - y.q * y.q * d;
  ExactNumber inv = ExactNumber::quadratic(y.r * y.p, Integer(-y.r * y.q), norm, d);
  return a * inv;
}

std::strong_ordering operator<=>(const ExactNumber& a, const ExactNumber& b) {
  if (a.is_rational() && b.is_rational()) return a.rational() <=> b.rational();
  Elem x = as_elem(a), y = as_elem(b);
  int s;
  if (x.q != 0 && y.q != 0 && x.d != y.d) {
    // Different fields: compare enclosures until they separate.
    for (unsigned bits = 64;; bits *= 2) {
      auto [alo, ahi] = a.surd().enclosure(bits);
      auto [blo, bhi] = b.surd().enclosure(bits);
      if (ahi < blo) return std::strong_ordering::less;
      if (bhi < alo) return std::strong_ordering::greater;
    }
  }
  s = (a - b).sign();
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

ExactNumber surd_arith(const QuadraticSurd& a, const QuadraticSurd& b, ArithOp op) {
  if (a.d() != b.d()) throw std::domain_error("surd_arith: mismatched radicands");
  ExactNumber x(a), y(b);
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Div: return x / y;
  }
  throw std::logic_error("surd_arith: unknown op");
}

}  // namespace qmk
