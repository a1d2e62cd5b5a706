#pragma once

// Minkowski question-mark function ?(x).
//
// Two independent evaluations are provided: the run-length rule that turns
// [a0; a1, a2, ...] into the binary code a0 . 0^(a1-1) 1^(a2) 0^(a3) ...
// (question_mark_binary), and the alternating dyadic series
//   ?(x) = a0 + 2 * sum_k (-1)^(k+1) / 2^(a1 + ... + ak)
// (question_mark_series). Rationals map to dyadic rationals, quadratic
// irrationals to non-dyadic rationals, and everything else to irrationals.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmk/contfrac.hpp"
#include "qmk/exactnum.hpp"

namespace qmk {

using Bits = std::vector<std::uint8_t>;

/// Bits after the binary point, pulled on demand. Single-consumer.
class BitStream {
 public:
  using Oracle = std::function<std::optional<std::uint8_t>()>;
  explicit BitStream(Oracle oracle) : oracle_(std::move(oracle)) {}
  std::optional<std::uint8_t> at(std::size_t i);

 private:
  Oracle oracle_;
  Bits cache_;
  bool exhausted_ = false;
};

/// integer_part . b1 b2 b3 ...
/// Finite codes carry no trailing zeros; periodic codes have a minimal
/// period that is neither all zeros nor all ones.
class BinaryCode {
 public:
  enum class Kind { Finite, Periodic, Stream };

  static BinaryCode finite(Integer integer_part, Bits bits);
  static BinaryCode periodic(Integer integer_part, Bits preperiod, Bits period);
  static BinaryCode stream(Integer integer_part, std::shared_ptr<BitStream> source);
  /// "0.011", "1.0", "0.0(1100)".
  static BinaryCode parse(std::string_view text);

  Kind kind() const { return kind_; }
  const Integer& integer_part() const { return integer_part_; }
  /// Finite: all bits. Periodic: the preperiod.
  const Bits& bits() const { return head_; }
  const Bits& preperiod() const { return head_; }
  const Bits& period() const { return period_; }

  /// Bit i after the point (0-based); nullopt past the end of a finite code.
  std::optional<std::uint8_t> bit(std::size_t i) const;
  /// Exact value; throws std::invalid_argument for streams.
  Rational value() const;
  std::string to_string() const;

  friend bool operator==(const BinaryCode& a, const BinaryCode& b) {
    return a.kind_ == b.kind_ && a.integer_part_ == b.integer_part_ && a.head_ == b.head_ &&
           a.period_ == b.period_ && a.source_ == b.source_;
  }

 private:
  Kind kind_ = Kind::Finite;
  Integer integer_part_ = 0;
  Bits head_;
  Bits period_;
  std::shared_ptr<BitStream> source_;
};

/// Binary code built from alternating runs 0^r1 1^r2 0^r3 ... (lengths may
/// be zero). A finite run list is followed by an endless run of the next
/// colour, so an odd number of runs ends in trailing ones and carries.
BinaryCode binary_from_runs(Integer integer_part, const std::vector<Integer>& runs);
BinaryCode binary_from_runs(Integer integer_part, const std::vector<Integer>& pre_runs,
                            const std::vector<Integer>& period_runs);

/// Exact binary expansion of a rational (terminating form for dyadics).
BinaryCode binary_expansion(const Rational& y);

BinaryCode question_mark_binary(const ContinuedFraction& cf);

struct DyadicInterval {
  Dyadic lower;
  Dyadic upper;
  bool exact() const { return lower == upper; }
  Rational width() const { return upper.to_rational() - lower.to_rational(); }
};

/// Encloses ?(x) using the first k terms of the series; the width is at
/// most 2^(-(a1+...+ak)). A finite expansion with at most k quotients gives
/// a width-zero interval.
DyadicInterval question_mark_series(const ContinuedFraction& cf, std::size_t k);

/// Closed-form sum of the series for finite and eventually periodic
/// expansions (geometric tail). Throws std::invalid_argument for streams.
Rational question_mark_series_limit(const ContinuedFraction& cf);

/// ?(x) for x in [0, 1]; throws std::out_of_range outside.
Rational question_mark_exact(const ExactNumber& x);
Dyadic question_mark_dyadic(const Rational& x);

/// ?^{-1}(y) for rational y in [0, 1]; throws std::out_of_range outside.
ExactNumber inverse_question_mark(const Rational& y);

enum class DomainClass { Rational, QuadraticIrrational, OtherIrrational, Unknown };
enum class ImageClass { DyadicRational, NonDyadicRational, Irrational, Unknown };

std::string to_string(DomainClass c);
std::string to_string(ImageClass c);

struct Classification {
  DomainClass domain = DomainClass::Unknown;
  ImageClass image = ImageClass::Unknown;
  /// ?(x) when it could be computed exactly (scalar inputs only).
  std::optional<Rational> image_value;
  /// Digits inspected before giving up on an undeclared stream.
  std::optional<std::size_t> horizon;
  /// The image class was checked against an exact ?(x).
  bool verified = false;
};

Classification classify(const ExactNumber& x);
/// Finite and periodic expansions are classified exactly. A stream is
/// Rational if it ends within the horizon, OtherIrrational if declared
/// aperiodic, and Unknown otherwise.
Classification classify(const ContinuedFraction& cf, std::size_t horizon = 256);

}  // namespace qmk
