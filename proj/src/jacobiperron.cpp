#include "qmk/jacobiperron.hpp"

#include <algorithm>

namespace qmk {

Enclosure Coordinate::enclose(unsigned bits) const {
  if (exact) {
    if (exact->is_rational()) return {exact->rational(), exact->rational()};
    return exact->surd().enclosure(bits);
  }
  if (!oracle) throw std::invalid_argument("coordinate has neither a value nor an oracle");
  return oracle(bits);
}

RealVector parse_real_vector(std::string_view text) {
  RealVector out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    char c = i < text.size() ? text[i] : ',';
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.emplace_back(parse_exact(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

namespace {

bool in_unit_interval(const ExactNumber& x) { return x.sign() >= 0 && x < ExactNumber(1); }

// Common radicand of the exact coordinates: 0 if all rational, nullopt if
// mixed fields or an oracle coordinate is present.
std::optional<Integer> common_field(const RealVector& theta) {
  Integer d = 0;
  for (const auto& c : theta) {
    if (!c.exact) return std::nullopt;
    Integer r = c.exact->radicand();
    if (r == 0) continue;
    if (d != 0 && d != r) return std::nullopt;
    d = r;
  }
  return d;
}

JPExpansion expand_exact(const RealVector& theta, std::size_t max_steps) {
  const std::size_t m = theta.size();
  std::vector<ExactNumber> x;
  for (const auto& c : theta) {
    if (!in_unit_interval(*c.exact)) throw std::invalid_argument("jp_expand: coordinate outside [0, 1)");
    x.push_back(*c.exact);
  }
  JPExpansion exp;
  exp.m = m;
  for (std::size_t step = 0;; ++step) {
    if (x[0].sign() == 0) {
      exp.terminated = true;
      break;
    }
    if (step == max_steps) break;
    DigitVector digit(m);
    std::vector<ExactNumber> next(m);
    for (std::size_t i = 0; i + 1 < m; ++i) {
      ExactNumber ratio = x[i + 1] / x[0];
      digit[i] = ratio.floor();
      next[i] = ratio - ExactNumber(Rational(digit[i]));
    }
    ExactNumber inv = ExactNumber(1) / x[0];
    digit[m - 1] = inv.floor();
    next[m - 1] = inv - ExactNumber(Rational(digit[m - 1]));
    exp.digits.push_back(std::move(digit));
    x = std::move(next);
  }
  if (std::all_of(x.begin(), x.end(), [](const ExactNumber& v) { return v.is_rational(); })) {
    std::vector<Rational> r;
    for (const auto& v : x) r.push_back(v.rational());
    exp.residual = std::move(r);
  }
  return exp;
}

Rational round_down(const Rational& x, unsigned bits) {
  Integer scale = Integer(1) << bits;
  return Rational(floor_div(x.num() * scale, x.den()), scale);
}

Rational round_up(const Rational& x, unsigned bits) {
  Integer scale = Integer(1) << bits;
  return Rational(-floor_div(-x.num() * scale, x.den()), scale);
}

JPExpansion expand_enclosed(const RealVector& theta, std::size_t max_steps, unsigned bits) {
  const std::size_t m = theta.size();
  std::vector<Enclosure> x;
  for (const auto& c : theta) {
    Enclosure e = c.enclose(bits);
    if (e.first > e.second) std::swap(e.first, e.second);
    if (e.second.sign() < 0 || e.first >= Rational(1))
      throw std::invalid_argument("jp_expand: coordinate outside [0, 1)");
    if (e.first.sign() < 0) e.first = 0;
    x.push_back(std::move(e));
  }
  JPExpansion exp;
  exp.m = m;
  auto certify = [&](const Rational& lo, const Rational& hi, std::size_t step) {
    Integer f = lo.floor();
    if (hi.floor() != f)
      throw JpCertificationError(step, "jp_expand: enclosure [" + lo.to_string() + ", " + hi.to_string() +
                                           "] too wide to certify a floor at step " + std::to_string(step));
    return f;
  };
  for (std::size_t step = 0;; ++step) {
    const auto& [l1, h1] = x[0];
    if (l1.is_zero() && h1.is_zero()) {
      exp.terminated = true;
      break;
    }
    if (step == max_steps) break;
    if (l1.sign() <= 0)
      throw JpCertificationError(step, "jp_expand: cannot certify x1 != 0 at step " + std::to_string(step));
    DigitVector digit(m);
    std::vector<Enclosure> next(m);
    for (std::size_t i = 0; i + 1 < m; ++i) {
      Rational lo = x[i + 1].first / h1, hi = x[i + 1].second / l1;
      digit[i] = certify(lo, hi, step);
      next[i] = {round_down(lo - Rational(digit[i]), bits), round_up(hi - Rational(digit[i]), bits)};
    }
    Rational lo = Rational(1) / h1, hi = Rational(1) / l1;
    digit[m - 1] = certify(lo, hi, step);
    next[m - 1] = {round_down(lo - Rational(digit[m - 1]), bits), round_up(hi - Rational(digit[m - 1]), bits)};
    exp.digits.push_back(std::move(digit));
    x = std::move(next);
  }
  return exp;
}

}  // namespace

JPExpansion jp_expand(const RealVector& theta, std::size_t max_steps, unsigned precision_bits) {
  if (theta.empty()) throw std::invalid_argument("jp_expand: dimension must be at least 1");
  if (common_field(theta)) return expand_exact(theta, max_steps);
  unsigned bits = precision_bits ? precision_bits : static_cast<unsigned>(std::max<std::size_t>(256, 48 * max_steps));
  return expand_enclosed(theta, max_steps, bits);
}

IntegerMatrix jp_factor_matrix(const DigitVector& digit, std::size_t m) {
  if (digit.size() != m || m == 0) throw std::invalid_argument("jp_factor_matrix: digit length must equal m");
  IntegerMatrix a(m + 1, m + 1);
  a(0, m) = 1;
  for (std::size_t i = 1; i <= m; ++i) {
    a(i, i - 1) = 1;
    a(i, m) += digit[i - 1];
  }
  return a;
}

namespace {

IntegerMatrix product(const JPExpansion& exp, std::size_t k) {
  IntegerMatrix p = IntegerMatrix::identity(exp.m + 1);
  for (std::size_t i = 0; i < k; ++i) p = p * jp_factor_matrix(exp.digits[i], exp.m);
  return p;
}

std::vector<Rational> normalize(const std::vector<Rational>& column) {
  const Rational& last = column.back();
  if (last.is_zero()) throw std::domain_error("jp_convergent: zero normalizing coordinate (non-admissible digits)");
  std::vector<Rational> out;
  for (std::size_t i = 0; i + 1 < column.size(); ++i) out.push_back(column[i] / last);
  return out;
}

}  // namespace

std::vector<Rational> jp_convergent(const JPExpansion& exp, std::size_t k) {
  if (k == 0) throw std::out_of_range("jp_convergent: k = 0 has no convergent");
  if (k > exp.digits.size()) throw std::out_of_range("jp_convergent: k exceeds the available digits");
  IntegerMatrix p = product(exp, k);
  std::vector<Rational> column;
  for (std::size_t i = 0; i <= exp.m; ++i) column.emplace_back(p(i, exp.m));
  return normalize(column);
}

std::vector<Rational> jp_final_convergent(const JPExpansion& exp) {
  if (!exp.residual) throw std::domain_error("jp_final_convergent: expansion has no exact residual");
  IntegerMatrix p = product(exp, exp.digits.size());
  std::vector<Rational> w = *exp.residual;
  w.emplace_back(1);
  std::vector<Rational> column(exp.m + 1);
  for (std::size_t i = 0; i <= exp.m; ++i)
    for (std::size_t j = 0; j <= exp.m; ++j)
      if (p(i, j) != 0) column[i] += Rational(p(i, j)) * w[j];
  return normalize(column);
}

std::string to_string(JpTailClass c) {
  switch (c) {
    case JpTailClass::Finite: return "finite";
    case JpTailClass::DeclaredPeriodic: return "periodic (declared)";
    case JpTailClass::DeclaredAperiodic: return "aperiodic (declared)";
    case JpTailClass::Unknown: return "unknown";
  }
  return "unknown";
}

JpTailClass classify_jp(const JPExpansion& exp, std::optional<bool> declared_periodic) {
  if (exp.terminated) return JpTailClass::Finite;
  if (!declared_periodic) return JpTailClass::Unknown;
  return *declared_periodic ? JpTailClass::DeclaredPeriodic : JpTailClass::DeclaredAperiodic;
}

}  // namespace qmk
