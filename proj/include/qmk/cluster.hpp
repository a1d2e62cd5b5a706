#pragma once

// Seed mutation for skew-symmetric cluster algebras, with cluster variables
// kept as exact rational functions in the initial cluster x1, ..., xn.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmk/exactnum.hpp"

namespace qmk {

using Exponents = std::vector<int>;

/// Sum of c * x^e with integer c != 0 and e in Z^n.
class LaurentPolynomial {
 public:
  explicit LaurentPolynomial(std::size_t nvars = 0) : nvars_(nvars) {}
  static LaurentPolynomial constant(std::size_t nvars, const Integer& c);
  static LaurentPolynomial monomial(const Exponents& e, const Integer& c = 1);
  /// x_i (0-based)
  static LaurentPolynomial variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponents, Integer>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool has_positive_coefficients() const;
  /// Total degree span, for budgeting.
  std::size_t size() const { return terms_.size(); }

  void add_term(const Exponents& e, const Integer& c);
  LaurentPolynomial pow(unsigned k) const;

  /// "x1^-1 + x1^-1*x2", "0".
  std::string to_string() const;

  friend LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;

 private:
  std::size_t nvars_;
  std::map<Exponents, Integer> terms_;
};

/// Exact quotient a / b in the Laurent ring, or nullopt when b does not divide a.
std::optional<LaurentPolynomial> laurent_divide(const LaurentPolynomial& a, const LaurentPolynomial& b);

/// num / den with den != 0. Laurent-divisible fractions are kept with den = 1.
class RationalFunction {
 public:
  RationalFunction() = default;
  RationalFunction(LaurentPolynomial num);  // NOLINT
  /// Throws std::domain_error when den is zero.
  RationalFunction(LaurentPolynomial num, LaurentPolynomial den);

  const LaurentPolynomial& num() const { return num_; }
  const LaurentPolynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  std::string to_string() const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  /// Equality as functions (cross-multiplication).
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);

 private:
  void normalize();
  LaurentPolynomial num_;
  LaurentPolynomial den_;
};

/// Laurent normal form when the reduced denominator is a monomial.
std::optional<LaurentPolynomial> is_laurent(const RationalFunction& f);

using ExchangeMatrix = std::vector<std::vector<std::int64_t>>;

class ClusterSeed {
 public:
  /// Initial seed (x1, ..., xn). Throws std::invalid_argument unless B is
  /// square and skew-symmetric.
  explicit ClusterSeed(ExchangeMatrix b);
  ClusterSeed(std::vector<RationalFunction> variables, ExchangeMatrix b);

  std::size_t rank() const { return b_.size(); }
  const std::vector<RationalFunction>& variables() const { return vars_; }
  const ExchangeMatrix& exchange_matrix() const { return b_; }

  friend bool operator==(const ClusterSeed& a, const ClusterSeed& b) { return a.b_ == b.b_ && a.vars_ == b.vars_; }

 private:
  std::vector<RationalFunction> vars_;
  ExchangeMatrix b_;
};

/// Mutation in direction k (1-based). Throws std::out_of_range for a bad k
/// and std::overflow_error if a matrix entry overflows.
ClusterSeed mutate(const ClusterSeed& seed, std::size_t k);

/// Same variables and matrix after some simultaneous relabelling of indices.
bool equivalent(const ClusterSeed& a, const ClusterSeed& b);

struct MutationOrbit {
  /// Distinct cluster variables in Laurent form, in discovery order.
  std::vector<LaurentPolynomial> variables;
  /// Variables that failed the Laurent test (expected empty).
  std::vector<RationalFunction> non_laurent;
  std::size_t seeds_visited = 0;
  bool all_positive = true;
  /// The budget stopped the search early.
  bool truncated = false;
};

/// Breadth-first search over mutation sequences of length <= depth.
/// `budget` caps the number of distinct seeds explored (0 = unlimited).
MutationOrbit mutation_orbit(const ClusterSeed& seed, std::size_t depth, std::size_t budget = 0);

}  // namespace qmk
