#include "qmk/contfrac.hpp"

#include <cctype>
#include <map>
#include <stdexcept>

#include "qmk/periodic.hpp"

namespace qmk {

std::optional<Integer> DigitStream::at(std::size_t i) {
  while (cache_.size() <= i && !exhausted_) {
    std::optional<Integer> next = oracle_();
    if (!next) {
      exhausted_ = true;
      break;
    }
    if (*next < 1) throw std::domain_error("digit stream produced a quotient < 1");
    cache_.push_back(*next);
  }
  if (i < cache_.size()) return cache_[i];
  return std::nullopt;
}

std::shared_ptr<DigitStream> euler_digits() {
  // e - 2 = [0; 1, 2, 1, 1, 4, 1, 1, 6, ...]
  auto counter = std::make_shared<unsigned long>(0);
  return std::make_shared<DigitStream>(
      [counter]() -> std::optional<Integer> {
        unsigned long i = (*counter)++;
        if (i % 3 == 1) return Integer(2 * (i / 3 + 1));
        return Integer(1);
      },
      true);
}

namespace {

void check_quotients(const std::vector<Integer>& qs) {
  for (const auto& q : qs) {
    if (q < 1) throw std::invalid_argument("continued fraction: partial quotient " + q.get_str() + " < 1");
  }
}

std::string join(const std::vector<Integer>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].get_str();
  }
  return out;
}

}  // namespace

ContinuedFraction ContinuedFraction::finite(Integer a0, std::vector<Integer> quotients) {
  check_quotients(quotients);
  ContinuedFraction cf;
  cf.kind_ = Kind::Finite;
  cf.a0_ = std::move(a0);
  cf.head_ = std::move(quotients);
  return cf;
}

ContinuedFraction ContinuedFraction::periodic(Integer a0, std::vector<Integer> preperiod,
                                              std::vector<Integer> period) {
  if (period.empty()) throw std::invalid_argument("continued fraction: empty period");
  check_quotients(preperiod);
  check_quotients(period);
  minimize_period(preperiod, period);
  ContinuedFraction cf;
  cf.kind_ = Kind::Periodic;
  cf.a0_ = std::move(a0);
  cf.head_ = std::move(preperiod);
  cf.period_ = std::move(period);
  return cf;
}

ContinuedFraction ContinuedFraction::stream(Integer a0, std::shared_ptr<DigitStream> source) {
  if (!source) throw std::invalid_argument("continued fraction: null digit stream");
  ContinuedFraction cf;
  cf.kind_ = Kind::Stream;
  cf.a0_ = std::move(a0);
  cf.source_ = std::move(source);
  return cf;
}

std::optional<Integer> ContinuedFraction::quotient(std::size_t k) const {
  if (k == 0) return a0_;
  switch (kind_) {
    case Kind::Finite:
      if (k <= head_.size()) return head_[k - 1];
      return std::nullopt;
    case Kind::Periodic:
      return periodic_at(head_, period_, k - 1);
    case Kind::Stream:
      return source_->at(k - 1);
  }
  return std::nullopt;
}

bool ContinuedFraction::is_canonical() const {
  return kind_ != Kind::Finite || head_.empty() || head_.back() >= 2;
}

ContinuedFraction ContinuedFraction::canonical() const {
  if (is_canonical()) return *this;
  ContinuedFraction cf = *this;
  cf.head_.pop_back();
  if (cf.head_.empty())
    cf.a0_ += 1;
  else
    cf.head_.back() += 1;
  return cf;
}

std::string ContinuedFraction::to_string() const {
  std::string out = "[" + a0_.get_str();
  switch (kind_) {
    case Kind::Finite:
      if (!head_.empty()) out += "; " + join(head_);
      break;
    case Kind::Periodic:
      out += "; ";
      if (!head_.empty()) out += join(head_) + ", ";
      out += "(" + join(period_) + ")";
      break;
    case Kind::Stream: {
      std::vector<Integer> shown;
      for (std::size_t i = 0; i < 8; ++i) {
        auto q = source_->at(i);
        if (!q) break;
        shown.push_back(*q);
      }
      if (!shown.empty()) out += "; " + join(shown);
      if (source_->at(8)) out += ", ...";
      break;
    }
  }
  return out + "]";
}

ContinuedFraction ContinuedFraction::parse(std::string_view text) {
  auto fail = [&](const std::string& why) -> std::invalid_argument {
    return std::invalid_argument("cannot parse continued fraction \"" + std::string(text) + "\": " + why);
  };
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto integer = [&]() -> Integer {
    skip();
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    std::string tok(text.substr(start, pos - start));
    if (tok.empty() || tok == "-" || tok == "+") throw fail("expected an integer");
    if (tok[0] == '+') tok.erase(0, 1);
    return Integer(tok, 10);
  };
  auto expect = [&](char c) {
    skip();
    if (pos >= text.size() || text[pos] != c) throw fail(std::string("expected '") + c + "'");
    ++pos;
  };
  auto peek = [&]() -> char {
    skip();
    return pos < text.size() ? text[pos] : '\0';
  };

  expect('[');
  Integer a0 = integer();
  std::vector<Integer> head, period;
  bool has_period = false;
  char c = peek();
  if (c == ';' || c == ',') {
    ++pos;
    for (;;) {
      if (peek() == '(') {
        ++pos;
        period.push_back(integer());
        while (peek() == ',') {
          ++pos;
          period.push_back(integer());
        }
        expect(')');
        has_period = true;
        break;
      }
      head.push_back(integer());
      if (peek() != ',') break;
      ++pos;
    }
  }
  expect(']');
  skip();
  if (pos != text.size()) throw fail("trailing characters");
  try {
    if (has_period) return periodic(a0, head, period);
    return finite(a0, head);
  } catch (const std::invalid_argument& e) {
    throw fail(e.what());
  }
}

ContinuedFraction cf_expand_rational(const Rational& x) {
  Integer num = x.num(), den = x.den();
  Integer a0 = floor_div(num, den);
  num -= a0 * den;
  std::vector<Integer> qs;
  while (num != 0) {
    // x = num/den in (0, 1): next quotient is floor(den/num)
    Integer a = floor_div(den, num);
    qs.push_back(a);
    Integer r = den - a * num;
    den = num;
    num = r;
  }
  return ContinuedFraction::finite(a0, std::move(qs));
}

ContinuedFraction cf_expand_surd(const QuadraticSurd& x) {
  // x = (P + sqrt(D)) / Q with Q | D - P^2
  Integer P = x.q() > 0 ? x.p() : Integer(-x.p());
  Integer Q = x.q() > 0 ? x.r() : Integer(-x.r());
  Integer D = x.q() * x.q() * x.d();
  if (((D - P * P) % Q) != 0) {
    Integer aq = abs(Q);
    P *= aq;
    D *= Q * Q;
    Q *= aq;
  }
  const Integer root = isqrt(D);

  std::map<std::pair<Integer, Integer>, std::size_t, bool (*)(const std::pair<Integer, Integer>&,
                                                            const std::pair<Integer, Integer>&)>
      seen([](const std::pair<Integer, Integer>& a, const std::pair<Integer, Integer>& b) {
        int c = cmp(a.first, b.first);
        if (c != 0) return c < 0;
        return cmp(a.second, b.second) < 0;
      });
  std::vector<Integer> digits;
  for (;;) {
    auto [it, fresh] = seen.emplace(std::make_pair(P, Q), digits.size());
    if (!fresh) {
      std::size_t start = it->second;
      std::vector<Integer> pre, period;
      if (start == 0) {
        // a0 starts the cycle; the tail a1, a2, ... is the rotated cycle
        period.assign(digits.begin() + 1, digits.end());
        period.push_back(digits[0]);
      } else {
        pre.assign(digits.begin() + 1, digits.begin() + static_cast<std::ptrdiff_t>(start));
        period.assign(digits.begin() + static_cast<std::ptrdiff_t>(start), digits.end());
      }
      return ContinuedFraction::periodic(digits[0], std::move(pre), std::move(period));
    }
    Integer a = Q > 0 ? floor_div(P + root, Q) : Integer(-(floor_div(P + root, Integer(-Q)) + 1));
    digits.push_back(a);
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
}

ContinuedFraction cf_expand(const ExactNumber& x) {
  return x.is_rational() ? cf_expand_rational(x.rational()) : cf_expand_surd(x.surd());
}

namespace {

// Convergent pair (p_k, p_{k-1}), (q_k, q_{k-1}) of [b1; b2, ..., bk].
struct Mobius {
  Integer p = 1, p_prev = 0, q = 0, q_prev = 1;
  void push(const Integer& a) {
    Integer np = a * p + p_prev;
    Integer nq = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = np;
    q = nq;
  }
};

}  // namespace

ExactNumber cf_value(const ContinuedFraction& cf) {
  switch (cf.kind()) {
    case ContinuedFraction::Kind::Finite: {
      Mobius m;
      m.push(cf.a0());
      for (const auto& a : cf.quotients()) m.push(a);
      return Rational(m.p, m.q);
    }
    case ContinuedFraction::Kind::Periodic: {
      // y = [b1; ..., bk, y]  =>  q_k y^2 + (q_{k-1} - p_k) y - p_{k-1} = 0, y > 1
      Mobius m;
      for (const auto& b : cf.period()) m.push(b);
      Integer disc = (m.q_prev - m.p) * (m.q_prev - m.p) + 4 * m.q * m.p_prev;
      ExactNumber t = ExactNumber::quadratic(Integer(m.p - m.q_prev), 1, Integer(2 * m.q), disc);
      const auto& pre = cf.preperiod();
      for (auto it = pre.rbegin(); it != pre.rend(); ++it) t = ExactNumber(Rational(*it)) + ExactNumber(1) / t;
      return ExactNumber(Rational(cf.a0())) + ExactNumber(1) / t;
    }
    case ContinuedFraction::Kind::Stream:
      break;
  }
  throw std::invalid_argument("cf_value: a streamed continued fraction has no exact value");
}

std::vector<Rational> convergents(const ContinuedFraction& cf, std::size_t k) {
  std::vector<Rational> out;
  Mobius m;
  for (std::size_t i = 0; i < k; ++i) {
    std::optional<Integer> a = cf.quotient(i);
    if (!a) break;
    m.push(*a);
    out.emplace_back(m.p, m.q);
  }
  return out;
}

}  // namespace qmk
