#pragma once

// Regular continued fractions [a0; a1, a2, ...]: finite, eventually
// periodic, or streamed from a digit oracle.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmk/exactnum.hpp"

namespace qmk {

/// Partial quotients a1, a2, ... pulled on demand from an oracle and cached.
/// Stateful and single-consumer: do not share across threads without locking.
class DigitStream {
 public:
  using Oracle = std::function<std::optional<Integer>()>;

  explicit DigitStream(Oracle oracle, bool declared_aperiodic = false)
      : oracle_(std::move(oracle)), declared_aperiodic_(declared_aperiodic) {}

  /// The (i+1)-th partial quotient, or nullopt once the oracle is exhausted.
  std::optional<Integer> at(std::size_t i);
  bool declared_aperiodic() const { return declared_aperiodic_; }

 private:
  Oracle oracle_;
  std::vector<Integer> cache_;
  bool exhausted_ = false;
  bool declared_aperiodic_;
};

/// Quotients of e - 2 = [0; 1, 2, 1, 1, 4, 1, 1, 6, ...], declared aperiodic.
std::shared_ptr<DigitStream> euler_digits();

class ContinuedFraction {
 public:
  enum class Kind { Finite, Periodic, Stream };

  /// Quotients must be >= 1. The representation is kept as given; see canonical().
  static ContinuedFraction finite(Integer a0, std::vector<Integer> quotients);
  /// Stored with minimal period and shortest preperiod.
  static ContinuedFraction periodic(Integer a0, std::vector<Integer> preperiod,
                                    std::vector<Integer> period);
  static ContinuedFraction stream(Integer a0, std::shared_ptr<DigitStream> source);
  /// "[a0; a1, a2]", "[a0; a1, (p1, p2)]", "[a0]". Throws std::invalid_argument.
  static ContinuedFraction parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_periodic() const { return kind_ == Kind::Periodic; }
  bool is_stream() const { return kind_ == Kind::Stream; }

  const Integer& a0() const { return a0_; }
  /// Finite: all quotients. Periodic: the preperiod.
  const std::vector<Integer>& preperiod() const { return head_; }
  const std::vector<Integer>& quotients() const { return head_; }
  const std::vector<Integer>& period() const { return period_; }
  const std::shared_ptr<DigitStream>& source() const { return source_; }

  /// The k-th partial quotient a_k (k >= 1), nullopt past the end.
  std::optional<Integer> quotient(std::size_t k) const;

  /// Finite forms ending in a quotient 1 are folded into their shorter twin.
  bool is_canonical() const;
  ContinuedFraction canonical() const;

  std::string to_string() const;

  friend bool operator==(const ContinuedFraction& a, const ContinuedFraction& b) {
    return a.kind_ == b.kind_ && a.a0_ == b.a0_ && a.head_ == b.head_ &&
           a.period_ == b.period_ && a.source_ == b.source_;
  }

 private:
  Kind kind_ = Kind::Finite;
  Integer a0_ = 0;
  std::vector<Integer> head_;
  std::vector<Integer> period_;
  std::shared_ptr<DigitStream> source_;
};

ContinuedFraction cf_expand_rational(const Rational& x);
/// Exact (P, Q) recurrence; the first repeated state fixes the minimal period.
ContinuedFraction cf_expand_surd(const QuadraticSurd& x);
ContinuedFraction cf_expand(const ExactNumber& x);

/// Exact value. Throws std::invalid_argument for streams.
ExactNumber cf_value(const ContinuedFraction& cf);

/// p_0/q_0, ..., p_{k-1}/q_{k-1}, fewer if a finite expansion runs out.
std::vector<Rational> convergents(const ContinuedFraction& cf, std::size_t k);

}  // namespace qmk
