#pragma once

// Exact number types: reduced rationals, dyadic rationals and real
// quadratic irrationals (p + q*sqrt(d))/r, all on top of GMP integers.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace qmk {

using Integer = mpz_class;

Integer floor_div(const Integer& a, const Integer& b);
Integer isqrt(const Integer& n);
std::string to_string(const Integer& n);
/// Largest f with f^2 | n, together with n / f^2. n > 0. Exact below 10^18;
/// above that only prime squares up to 10^6 and a square cofactor are removed.
std::pair<Integer, Integer> split_square(const Integer& n);

class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(Integer n) : num_(std::move(n)), den_(1) {}  // NOLINT
  /// Throws std::invalid_argument on a zero denominator.
  Rational(Integer num, Integer den);

  const Integer& num() const { return num_; }
  const Integer& den() const { return den_; }

  int sign() const { return sgn(num_); }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  Integer floor() const { return floor_div(num_, den_); }
  Rational frac() const { return *this - Rational(floor()); }
  double to_double() const;
  std::string to_string() const;

  Rational operator-() const { return Rational(Integer(-num_), den_, Reduced{}); }
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  /// Throws std::domain_error when b is zero.
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  struct Reduced {};
  Rational(Integer num, Integer den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}

  Integer num_;
  Integer den_;
};

Rational rational_normalize(const Integer& num, const Integer& den);
Rational pow2(long exponent);  // 2^exponent, exponent may be negative
bool is_dyadic(const Rational& x);

/// odd_part / 2^exponent, with odd_part odd unless exponent is zero.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(Integer odd_part, unsigned long exponent);
  /// Throws std::domain_error when x is not dyadic.
  static Dyadic from_rational(const Rational& x);

  const Integer& odd_part() const { return odd_part_; }
  unsigned long exponent() const { return exponent_; }
  Rational to_rational() const;
  std::string to_string() const { return to_rational().to_string(); }

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    return a.to_rational() <=> b.to_rational();
  }

 private:
  Integer odd_part_ = 0;
  unsigned long exponent_ = 0;
};

class ExactNumber;

/// Irrational element (p + q*sqrt(d))/r of a real quadratic field.
/// q != 0, r > 0, d squarefree and >= 2, gcd(p, q, r) = 1.
class QuadraticSurd {
 public:
  /// Throws std::domain_error if the value is rational or d < 0.
  QuadraticSurd(Integer p, Integer q, Integer r, Integer d);

  const Integer& p() const { return p_; }
  const Integer& q() const { return q_; }
  const Integer& r() const { return r_; }
  const Integer& d() const { return d_; }

  int sign() const;
  Integer floor() const;
  QuadraticSurd conjugate() const;
  double to_double() const;
  /// Rational bounds lo < value < hi with hi - lo <= 2^-bits.
  std::pair<Rational, Rational> enclosure(unsigned bits) const;
  std::string to_string() const;

  friend bool operator==(const QuadraticSurd&, const QuadraticSurd&) = default;

 private:
  friend class ExactNumber;
  struct Raw {};
  QuadraticSurd(Integer p, Integer q, Integer r, Integer d, Raw)
      : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), d_(std::move(d)) {}

  Integer p_, q_, r_, d_;
};

enum class ArithOp { Add, Sub, Mul, Div };

/// A rational or a quadratic irrational. Arithmetic stays inside one
/// quadratic field; results that turn out rational collapse to Rational.
class ExactNumber {
 public:
  ExactNumber() = default;
  ExactNumber(Rational q) : value_(std::move(q)) {}  // NOLINT
  ExactNumber(QuadraticSurd s) : value_(std::move(s)) {}  // NOLINT
  ExactNumber(long n) : value_(Rational(n)) {}  // NOLINT

  /// Normalizes (p + q*sqrt(d))/r; perfect-square d or q = 0 gives a rational.
  static ExactNumber quadratic(Integer p, Integer q, Integer r, Integer d);

  bool is_rational() const { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const { return std::get<Rational>(value_); }
  const QuadraticSurd& surd() const { return std::get<QuadraticSurd>(value_); }
  /// The radicand, or 0 for rationals.
  Integer radicand() const;

  int sign() const;
  Integer floor() const;
  ExactNumber frac() const { return *this - ExactNumber(Rational(floor())); }
  double to_double() const;
  std::string to_string() const;

  ExactNumber operator-() const;
  /// Mixing two different radicands throws std::domain_error.
  friend ExactNumber operator+(const ExactNumber& a, const ExactNumber& b);
  friend ExactNumber operator-(const ExactNumber& a, const ExactNumber& b);
  friend ExactNumber operator*(const ExactNumber& a, const ExactNumber& b);
  friend ExactNumber operator/(const ExactNumber& a, const ExactNumber& b);

  friend bool operator==(const ExactNumber&, const ExactNumber&) = default;
  friend std::strong_ordering operator<=>(const ExactNumber& a, const ExactNumber& b);

 private:
  std::variant<Rational, QuadraticSurd> value_;
};

ExactNumber surd_arith(const QuadraticSurd& a, const QuadraticSurd& b, ArithOp op);

/// Parses integers, "p/q", decimals ("-0.375") and arithmetic expressions
/// in + - * / with parentheses and sqrt(n), e.g. "(1+sqrt(5))/2",
/// "sqrt(2)-1", "(3-2*sqrt(7))/5". Throws std::invalid_argument.
ExactNumber parse_exact(std::string_view text);
Rational parse_rational(std::string_view text);

}  // namespace qmk
