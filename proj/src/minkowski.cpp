#include "qmk/minkowski.hpp"

#include <cctype>
#include <map>
#include <stdexcept>

#include "qmk/periodic.hpp"

namespace qmk {

namespace {

// Longest code we are willing to materialise.
constexpr unsigned long kMaxBits = 1UL << 28;

unsigned long run_length(const Integer& r) {
  if (r < 0) throw std::invalid_argument("binary code: negative run length");
  if (r > kMaxBits) throw std::length_error("binary code: run of " + r.get_str() + " bits is too long");
  return r.get_ui();
}

void append_run(Bits& bits, const Integer& length, std::uint8_t colour) {
  unsigned long n = run_length(length);
  if (bits.size() + n > kMaxBits) throw std::length_error("binary code: too many bits");
  bits.insert(bits.end(), n, colour);
}

// Adds 2^-len to integer_part.bits, where len = bits.size().
void increment(Integer& integer_part, Bits& bits) {
  std::size_t i = bits.size();
  while (i > 0) {
    --i;
    if (bits[i] == 0) {
      bits[i] = 1;
      return;
    }
    bits[i] = 0;
  }
  integer_part += 1;
}

void strip_trailing_zeros(Bits& bits) {
  while (!bits.empty() && bits.back() == 0) bits.pop_back();
}

Rational bits_value(const Bits& bits) {
  Integer n = 0;
  for (auto b : bits) {
    n *= 2;
    if (b) n += 1;
  }
  return Rational(n) * pow2(-static_cast<long>(bits.size()));
}

}  // namespace

std::optional<std::uint8_t> BitStream::at(std::size_t i) {
  while (cache_.size() <= i && !exhausted_) {
    auto b = oracle_();
    if (!b) {
      exhausted_ = true;
      break;
    }
    cache_.push_back(*b);
  }
  if (i < cache_.size()) return cache_[i];
  return std::nullopt;
}

BinaryCode BinaryCode::finite(Integer integer_part, Bits bits) {
  for (auto b : bits) {
    if (b > 1) throw std::invalid_argument("binary code: bit value other than 0/1");
  }
  strip_trailing_zeros(bits);
  BinaryCode c;
  c.kind_ = Kind::Finite;
  c.integer_part_ = std::move(integer_part);
  c.head_ = std::move(bits);
  return c;
}

BinaryCode BinaryCode::periodic(Integer integer_part, Bits preperiod, Bits period) {
  if (period.empty()) return finite(std::move(integer_part), std::move(preperiod));
  for (const Bits* v : {&preperiod, &period}) {
    for (auto b : *v) {
      if (b > 1) throw std::invalid_argument("binary code: bit value other than 0/1");
    }
  }
  minimize_period(preperiod, period);
  if (period.size() == 1) {
    // x.pre000... or x.pre111... = x.pre + 2^-|pre|
    if (period[0] == 1) increment(integer_part, preperiod);
    return finite(std::move(integer_part), std::move(preperiod));
  }
  BinaryCode c;
  c.kind_ = Kind::Periodic;
  c.integer_part_ = std::move(integer_part);
  c.head_ = std::move(preperiod);
  c.period_ = std::move(period);
  return c;
}

BinaryCode BinaryCode::stream(Integer integer_part, std::shared_ptr<BitStream> source) {
  if (!source) throw std::invalid_argument("binary code: null bit stream");
  BinaryCode c;
  c.kind_ = Kind::Stream;
  c.integer_part_ = std::move(integer_part);
  c.source_ = std::move(source);
  return c;
}

BinaryCode BinaryCode::parse(std::string_view text) {
  auto fail = [&](const std::string& why) {
    return std::invalid_argument("cannot parse binary code \"" + std::string(text) + "\": " + why);
  };
  std::size_t dot = text.find('.');
  if (dot == std::string_view::npos) throw fail("missing '.'");
  std::string ip(text.substr(0, dot));
  if (ip.empty()) throw fail("missing integer part");
  Integer integer_part;
  try {
    integer_part = Integer(ip, 10);
  } catch (const std::exception&) {
    throw fail("bad integer part");
  }
  Bits pre, period;
  bool in_period = false, closed = false;
  for (std::size_t i = dot + 1; i < text.size(); ++i) {
    char c = text[i];
    if (closed) throw fail("characters after ')'");
    if (c == '(' && !in_period) {
      in_period = true;
    } else if (c == ')' && in_period) {
      closed = true;
    } else if (c == '0' || c == '1') {
      (in_period ? period : pre).push_back(static_cast<std::uint8_t>(c - '0'));
    } else {
      throw fail(std::string("unexpected '") + c + "'");
    }
  }
  if (in_period && !closed) throw fail("missing ')'");
  if (in_period && period.empty()) throw fail("empty period");
  return in_period ? periodic(integer_part, pre, period) : finite(integer_part, pre);
}

std::optional<std::uint8_t> BinaryCode::bit(std::size_t i) const {
  switch (kind_) {
    case Kind::Finite:
      if (i < head_.size()) return head_[i];
      return std::nullopt;
    case Kind::Periodic:
      return periodic_at(head_, period_, i);
    case Kind::Stream:
      return source_->at(i);
  }
  return std::nullopt;
}

Rational BinaryCode::value() const {
  switch (kind_) {
    case Kind::Finite:
      return Rational(integer_part_) + bits_value(head_);
    case Kind::Periodic: {
      // 0.pre(per) = pre/2^p + per / (2^p (2^n - 1))
      Rational scale = pow2(-static_cast<long>(head_.size()));
      Rational per = bits_value(period_) * pow2(static_cast<long>(period_.size()));
      Rational denom = pow2(static_cast<long>(period_.size())) - Rational(1);
      return Rational(integer_part_) + bits_value(head_) + scale * per / denom;
    }
    case Kind::Stream:
      break;
  }
  throw std::invalid_argument("binary code: a streamed code has no exact value");
}

std::string BinaryCode::to_string() const {
  std::string out = integer_part_.get_str() + ".";
  auto put = [&out](const Bits& bits) {
    for (auto b : bits) out += static_cast<char>('0' + b);
  };
  switch (kind_) {
    case Kind::Finite:
      if (head_.empty())
        out += "0";
      else
        put(head_);
      break;
    case Kind::Periodic:
      put(head_);
      out += "(";
      put(period_);
      out += ")";
      break;
    case Kind::Stream:
      for (std::size_t i = 0; i < 32; ++i) {
        auto b = source_->at(i);
        if (!b) return out;
        out += static_cast<char>('0' + *b);
      }
      out += "...";
      break;
  }
  return out;
}

BinaryCode binary_from_runs(Integer integer_part, const std::vector<Integer>& runs) {
  Bits bits;
  for (std::size_t i = 0; i < runs.size(); ++i) append_run(bits, runs[i], static_cast<std::uint8_t>(i % 2));
  // The endless run that follows has colour runs.size() % 2.
  if (runs.size() % 2 == 1) increment(integer_part, bits);
  return BinaryCode::finite(std::move(integer_part), std::move(bits));
}

BinaryCode binary_from_runs(Integer integer_part, const std::vector<Integer>& pre_runs,
                            const std::vector<Integer>& period_runs) {
  if (period_runs.empty()) throw std::invalid_argument("binary code: empty run period");
  Bits pre, period;
  for (std::size_t i = 0; i < pre_runs.size(); ++i) append_run(pre, pre_runs[i], static_cast<std::uint8_t>(i % 2));
  // Colours alternate, so an odd run period only repeats after two passes.
  std::size_t passes = period_runs.size() % 2 == 1 ? 2 : 1;
  std::size_t colour = pre_runs.size() % 2;
  for (std::size_t pass = 0; pass < passes; ++pass) {
    for (const auto& r : period_runs) {
      append_run(period, r, static_cast<std::uint8_t>(colour));
      colour ^= 1;
    }
  }
  if (period.empty()) return BinaryCode::finite(std::move(integer_part), std::move(pre));
  return BinaryCode::periodic(std::move(integer_part), std::move(pre), std::move(period));
}

BinaryCode binary_expansion(const Rational& y) {
  Integer integer_part = y.floor();
  Integer den = y.den();
  Integer rem = y.num() - integer_part * den;
  Bits bits;
  std::map<std::string, std::size_t> seen;  // remainder -> position
  while (rem != 0) {
    auto [it, fresh] = seen.emplace(rem.get_str(16), bits.size());
    if (!fresh) {
      Bits pre(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(it->second));
      Bits period(bits.begin() + static_cast<std::ptrdiff_t>(it->second), bits.end());
      return BinaryCode::periodic(integer_part, std::move(pre), std::move(period));
    }
    if (bits.size() >= kMaxBits) throw std::length_error("binary expansion too long");
    rem *= 2;
    if (rem >= den) {
      bits.push_back(1);
      rem -= den;
    } else {
      bits.push_back(0);
    }
  }
  return BinaryCode::finite(integer_part, std::move(bits));
}

namespace {

// Streamed run-length encoding of a streamed continued fraction.
class RunBits {
 public:
  explicit RunBits(std::shared_ptr<DigitStream> digits) : digits_(std::move(digits)) {}

  std::optional<std::uint8_t> operator()() {
    for (;;) {
      if (pending_ > 0) {
        --pending_;
        return colour_;
      }
      if (tail_one_) {
        tail_one_ = false;
        return 1;
      }
      if (ended_) return std::nullopt;
      load_run();
    }
  }

 private:
  void load_run() {
    std::optional<Integer> a = digits_->at(next_);
    if (!a) {
      ended_ = true;
      return;
    }
    std::size_t k = ++next_;
    colour_ = static_cast<std::uint8_t>(k % 2 == 1 ? 0 : 1);
    Integer len = k == 1 ? Integer(*a - 1) : *a;
    pending_ = run_length(len);
    if (!digits_->at(next_)) {
      ended_ = true;
      // 0^len 1^inf = 0^(len-1) 1
      if (colour_ == 0 && pending_ > 0) {
        --pending_;
        tail_one_ = true;
      }
    }
  }

  std::shared_ptr<DigitStream> digits_;
  std::size_t next_ = 0;
  unsigned long pending_ = 0;
  std::uint8_t colour_ = 0;
  bool tail_one_ = false;
  bool ended_ = false;
};

}  // namespace

BinaryCode question_mark_binary(const ContinuedFraction& cf) {
  switch (cf.kind()) {
    case ContinuedFraction::Kind::Finite: {
      const auto& qs = cf.quotients();
      std::vector<Integer> runs(qs.begin(), qs.end());
      if (!runs.empty()) runs[0] -= 1;
      return binary_from_runs(cf.a0(), runs);
    }
    case ContinuedFraction::Kind::Periodic: {
      // Unroll one period into the head so the shortened first run is not repeated.
      std::vector<Integer> pre = cf.preperiod();
      pre.insert(pre.end(), cf.period().begin(), cf.period().end());
      pre[0] -= 1;
      return binary_from_runs(cf.a0(), pre, cf.period());
    }
    case ContinuedFraction::Kind::Stream: {
      const auto& src = cf.source();
      Integer integer_part = cf.a0();
      auto a1 = src->at(0);
      if (a1 && *a1 == 1 && !src->at(1)) {
        // [a0; 1] = a0 + 1
        return BinaryCode::finite(integer_part + 1, {});
      }
      auto runs = std::make_shared<RunBits>(src);
      return BinaryCode::stream(integer_part,
                                std::make_shared<BitStream>([runs]() { return (*runs)(); }));
    }
  }
  throw std::logic_error("question_mark_binary: unknown kind");
}

DyadicInterval question_mark_series(const ContinuedFraction& cf, std::size_t k) {
  if (k == 0) throw std::invalid_argument("question_mark_series: need at least one term");
  Rational sum(cf.a0());
  Integer exponent = 0;
  std::size_t terms = 0;
  for (std::size_t i = 1; i <= k; ++i) {
    auto a = cf.quotient(i);
    if (!a) {
      Dyadic exact = Dyadic::from_rational(sum);
      return {exact, exact};
    }
    exponent += *a;
    if (exponent > kMaxBits) throw std::length_error("question_mark_series: exponent too large");
    Rational term = pow2(1 - static_cast<long>(exponent.get_ui()));
    sum += (i % 2 == 1) ? term : -term;
    terms = i;
  }
  if (!cf.quotient(terms + 1)) {
    Dyadic exact = Dyadic::from_rational(sum);
    return {exact, exact};
  }
  // The remainder has sign (-1)^k and magnitude below 2^-(a1+...+ak).
  Rational slack = pow2(-static_cast<long>(exponent.get_ui()));
  Rational lo = terms % 2 == 0 ? sum : sum - slack;
  Rational hi = terms % 2 == 0 ? sum + slack : sum;
  return {Dyadic::from_rational(lo), Dyadic::from_rational(hi)};
}

Rational question_mark_series_limit(const ContinuedFraction& cf) {
  auto partial = [](const std::vector<Integer>& digits, std::size_t first_index, Integer& exponent) {
    Rational s(0);
    for (std::size_t j = 0; j < digits.size(); ++j) {
      exponent += digits[j];
      Rational term = pow2(1 - static_cast<long>(run_length(exponent)));
      s += ((first_index + j) % 2 == 1) ? term : -term;
    }
    return s;
  };
  switch (cf.kind()) {
    case ContinuedFraction::Kind::Finite: {
      Integer e = 0;
      return Rational(cf.a0()) + partial(cf.quotients(), 1, e);
    }
    case ContinuedFraction::Kind::Periodic: {
      Integer e = 0;
      Rational head = partial(cf.preperiod(), 1, e);
      Integer e_before = e;
      Rational block = partial(cf.period(), cf.preperiod().size() + 1, e);
      // each further period multiplies the block by (-1)^len * 2^-(sum of period)
      Integer period_sum = e - e_before;
      Rational ratio = pow2(-static_cast<long>(run_length(period_sum)));
      if (cf.period().size() % 2 == 1) ratio = -ratio;
      return Rational(cf.a0()) + head + block / (Rational(1) - ratio);
    }
    case ContinuedFraction::Kind::Stream:
      break;
  }
  throw std::invalid_argument("question_mark_series_limit: streams have no closed form");
}

Rational question_mark_exact(const ExactNumber& x) {
  if (x < ExactNumber(0) || x > ExactNumber(1)) {
    throw std::out_of_range("question_mark_exact: " + x.to_string() + " is outside [0, 1]");
  }
  Rational y = question_mark_binary(cf_expand(x)).value();
  if (is_dyadic(y) != x.is_rational()) {
    throw std::logic_error("question_mark_exact: image type does not match input type");
  }
  return y;
}

Dyadic question_mark_dyadic(const Rational& x) { return Dyadic::from_rational(question_mark_exact(x)); }

ExactNumber inverse_question_mark(const Rational& y) {
  if (y < Rational(0) || y > Rational(1)) {
    throw std::out_of_range("inverse_question_mark: " + y.to_string() + " is outside [0, 1]");
  }
  BinaryCode code = binary_expansion(y);
  const Integer& ip = code.integer_part();
  auto runs_of = [](const Bits& bits, std::size_t begin, std::size_t end, std::uint8_t first_colour) {
    std::vector<Integer> runs;
    std::uint8_t colour = first_colour;
    unsigned long len = 0;
    for (std::size_t i = begin; i < end; ++i) {
      if (bits[i] == colour) {
        ++len;
      } else {
        runs.emplace_back(len);
        colour = bits[i];
        len = 1;
      }
    }
    runs.emplace_back(len);
    return runs;
  };

  if (code.kind() == BinaryCode::Kind::Finite) {
    const Bits& bits = code.bits();
    if (bits.empty()) return Rational(ip);
    // bits end in 1: runs 0^r1 1^r2 ... 1^rn, n even  ->  [ip; r1 + 1, r2, ..., rn]
    std::vector<Integer> digits = runs_of(bits, 0, bits.size(), 0);
    digits[0] += 1;
    return cf_value(ContinuedFraction::finite(ip, std::move(digits)));
  }

  // Cut at a colour change with both sides in the periodic part, so that one
  // period splits into complete runs.
  const std::size_t p = code.preperiod().size(), n = code.period().size();
  Bits bits = code.preperiod();
  for (int rep = 0; rep < 3; ++rep) bits.insert(bits.end(), code.period().begin(), code.period().end());
  std::size_t cut = p + 1;
  while (cut < p + n && bits[cut - 1] == bits[cut]) ++cut;
  if (cut == p + n) throw std::logic_error("inverse_question_mark: constant period in a non-dyadic expansion");
  std::vector<Integer> pre = runs_of(bits, 0, cut, 0);
  pre[0] += 1;
  std::vector<Integer> period = runs_of(bits, cut, cut + n, bits[cut]);
  return cf_value(ContinuedFraction::periodic(ip, std::move(pre), std::move(period)));
}

std::string to_string(DomainClass c) {
  switch (c) {
    case DomainClass::Rational: return "Rational";
    case DomainClass::QuadraticIrrational: return "QuadraticIrrational";
    case DomainClass::OtherIrrational: return "OtherIrrational";
    case DomainClass::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string to_string(ImageClass c) {
  switch (c) {
    case ImageClass::DyadicRational: return "DyadicRational";
    case ImageClass::NonDyadicRational: return "NonDyadicRational";
    case ImageClass::Irrational: return "Irrational";
    case ImageClass::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

Classification classify_exact(const ContinuedFraction& cf) {
  Classification out;
  out.domain = cf.is_finite() ? DomainClass::Rational : DomainClass::QuadraticIrrational;
  Rational y = question_mark_binary(cf).value();
  out.image_value = y;
  out.image = is_dyadic(y) ? ImageClass::DyadicRational : ImageClass::NonDyadicRational;
  ImageClass expected = cf.is_finite() ? ImageClass::DyadicRational : ImageClass::NonDyadicRational;
  out.verified = out.image == expected;
  return out;
}

}  // namespace

Classification classify(const ExactNumber& x) { return classify_exact(cf_expand(x)); }

Classification classify(const ContinuedFraction& cf, std::size_t horizon) {
  if (!cf.is_stream()) return classify_exact(cf);
  Classification out;
  const auto& src = cf.source();
  if (src->declared_aperiodic()) {
    out.domain = DomainClass::OtherIrrational;
    out.image = ImageClass::Irrational;
    return out;
  }
  for (std::size_t i = 0; i < horizon; ++i) {
    if (!src->at(i)) {
      std::vector<Integer> qs;
      for (std::size_t j = 0; j < i; ++j) qs.push_back(*src->at(j));
      return classify_exact(ContinuedFraction::finite(cf.a0(), std::move(qs)));
    }
  }
  out.horizon = horizon;
  return out;
}

}  // namespace qmk
