#pragma once

// Jacobi-Perron multidimensional continued fractions.
//
// One step maps x = (x1, ..., xm) in [0,1)^m to
//   ({x2/x1}, ..., {xm/x1}, {1/x1})
// and emits the digit (floor(x2/x1), ..., floor(xm/x1), floor(1/x1)).
// For m = 1 this is the Gauss map.

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmk/exactnum.hpp"
#include "qmk/matrix.hpp"

namespace qmk {

using Enclosure = std::pair<Rational, Rational>;

/// A coordinate is either exact or an oracle returning lo <= x <= hi with
/// hi - lo <= 2^-bits.
struct Coordinate {
  std::optional<ExactNumber> exact;
  std::function<Enclosure(unsigned bits)> oracle;

  Coordinate(ExactNumber x) : exact(std::move(x)) {}  // NOLINT
  Coordinate(Rational x) : exact(ExactNumber(std::move(x))) {}  // NOLINT
  explicit Coordinate(std::function<Enclosure(unsigned)> f) : oracle(std::move(f)) {}

  Enclosure enclose(unsigned bits) const;
};

using RealVector = std::vector<Coordinate>;
using DigitVector = std::vector<Integer>;

/// Parses "3/7,2/7" or "sqrt(2)-1, sqrt(3)-1".
RealVector parse_real_vector(std::string_view text);

class JpCertificationError : public std::runtime_error {
 public:
  JpCertificationError(std::size_t step, const std::string& what)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

struct JPExpansion {
  std::size_t m = 0;
  std::vector<DigitVector> digits;
  /// The map hit x1 = 0.
  bool terminated = false;
  /// Point reached after the last digit when it is exact (zero vector for a
  /// fully reduced rational input; nonzero when x1 = 0 stopped the map early).
  std::optional<std::vector<Rational>> residual;
};

/// Exact path when every coordinate is rational or they share one quadratic
/// field; otherwise interval arithmetic on oracle enclosures, which throws
/// JpCertificationError when a floor cannot be decided.
JPExpansion jp_expand(const RealVector& theta, std::size_t max_steps, unsigned precision_bits = 0);

/// The (m+1)x(m+1) matrix with first row (0,...,0,1), identity block below
/// left and the digit in the last column. Throws std::invalid_argument when
/// the digit length is not m.
IntegerMatrix jp_factor_matrix(const DigitVector& digit, std::size_t m);

/// Product of the first k factor matrices applied to (0,...,0,1); the
/// column is normalized by its last coordinate. k = 0 or k beyond the
/// available digits throws std::out_of_range; a zero normalizer throws
/// std::domain_error.
std::vector<Rational> jp_convergent(const JPExpansion& exp, std::size_t k);

/// The product of all factor matrices applied to (residual; 1). Equals the
/// input exactly for terminated rational expansions.
std::vector<Rational> jp_final_convergent(const JPExpansion& exp);

enum class JpTailClass { Finite, DeclaredPeriodic, DeclaredAperiodic, Unknown };
std::string to_string(JpTailClass c);

/// m >= 2: a terminated expansion is Finite; otherwise the caller's
/// declaration (periodicity is never detected for m >= 2) or Unknown.
JpTailClass classify_jp(const JPExpansion& exp, std::optional<bool> declared_periodic);

}  // namespace qmk
