#include "qmk/cluster.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qmk {

LaurentPolynomial LaurentPolynomial::constant(std::size_t nvars, const Integer& c) {
  LaurentPolynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

LaurentPolynomial LaurentPolynomial::monomial(const Exponents& e, const Integer& c) {
  LaurentPolynomial p(e.size());
  p.add_term(e, c);
  return p;
}

LaurentPolynomial LaurentPolynomial::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw std::out_of_range("variable index out of range");
  Exponents e(nvars, 0);
  e[i] = 1;
  return monomial(e);
}

bool LaurentPolynomial::has_positive_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second > 0; });
}

void LaurentPolynomial::add_term(const Exponents& e, const Integer& c) {
  if (e.size() != nvars_) throw std::invalid_argument("Laurent polynomial: exponent length mismatch");
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPolynomial LaurentPolynomial::pow(unsigned k) const {
  LaurentPolynomial r = constant(nvars_, 1), base = *this;
  while (k) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

std::string LaurentPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    Integer a = abs(c);
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) out += a.get_str();
    else if (a == 1) out += mono;
    else out += a.get_str() + "*" + mono;
  }
  return out;
}

namespace {

void check_same(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("Laurent polynomials over different variable sets");
}

Exponents shifted(const Exponents& e, const Exponents& by, int sign) {
  Exponents r = e;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += sign * by[i];
  return r;
}

LaurentPolynomial shift(const LaurentPolynomial& p, const Exponents& by, int sign) {
  LaurentPolynomial r(p.nvars());
  for (const auto& [e, c] : p.terms()) r.add_term(shifted(e, by, sign), c);
  return r;
}

Exponents min_exponents(const LaurentPolynomial& p) {
  Exponents m = p.terms().begin()->first;
  for (const auto& [e, c] : p.terms())
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
  return m;
}

}  // namespace

LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  check_same(a, b);
  LaurentPolynomial r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  check_same(a, b);
  LaurentPolynomial r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
  return r;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  check_same(a, b);
  LaurentPolynomial r(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(shifted(ea, eb, 1), ca * cb);
  return r;
}

std::optional<LaurentPolynomial> laurent_divide(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  check_same(a, b);
  if (b.is_zero()) throw std::domain_error("Laurent division by zero");
  if (a.is_zero()) return a;
  // Strip monomial content; b0 then has no factor x_i, so b | a in the
  // Laurent ring iff b0 | a0 as polynomials.
  const Exponents ma = min_exponents(a), mb = min_exponents(b);
  LaurentPolynomial r = shift(a, ma, -1);
  const LaurentPolynomial b0 = shift(b, mb, -1);
  const auto& [lead_b, lead_c] = *b0.terms().rbegin();
  LaurentPolynomial q(a.nvars());
  while (!r.is_zero()) {
    const auto [lead_r, lead_rc] = *r.terms().rbegin();
    Exponents d = shifted(lead_r, lead_b, -1);
    if (std::any_of(d.begin(), d.end(), [](int x) { return x < 0; })) return std::nullopt;
    if (!mpz_divisible_p(lead_rc.get_mpz_t(), lead_c.get_mpz_t())) return std::nullopt;
    Integer c = lead_rc / lead_c;
    q.add_term(d, c);
    for (const auto& [e, cb] : b0.terms()) r.add_term(shifted(e, d, 1), -c * cb);
  }
  return shift(q, shifted(ma, mb, -1), 1);
}

RationalFunction::RationalFunction(LaurentPolynomial num)
    : num_(std::move(num)), den_(LaurentPolynomial::constant(num_.nvars(), 1)) {}

RationalFunction::RationalFunction(LaurentPolynomial num, LaurentPolynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  check_same(num_, den_);
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  const std::size_t n = num_.nvars();
  const LaurentPolynomial one = LaurentPolynomial::constant(n, 1);
  if (den_ == one) return;
  if (num_.is_zero()) {
    den_ = one;
    return;
  }
  if (den_.is_monomial() && abs(den_.terms().begin()->second) == 1) {
    const auto& [e, c] = *den_.terms().begin();
    num_ = shift(num_, e, -1) * LaurentPolynomial::constant(n, c);
    den_ = one;
    return;
  }
  if (auto q = laurent_divide(num_, den_)) {
    num_ = std::move(*q);
    den_ = one;
    return;
  }
  if (den_.terms().rbegin()->second < 0) {
    num_ = LaurentPolynomial(n) - num_;
    den_ = LaurentPolynomial(n) - den_;
  }
}

std::string RationalFunction::to_string() const {
  if (den_ == LaurentPolynomial::constant(num_.nvars(), 1)) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw std::domain_error("rational function division by zero");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

std::optional<LaurentPolynomial> is_laurent(const RationalFunction& f) {
  if (f.den() == LaurentPolynomial::constant(f.num().nvars(), 1)) return f.num();
  return laurent_divide(f.num(), f.den());
}

namespace {

void check_exchange_matrix(const ExchangeMatrix& b) {
  const std::size_t n = b.size();
  if (n == 0) throw std::invalid_argument("cluster seed: rank must be at least 1");
  for (const auto& row : b)
    if (row.size() != n) throw std::invalid_argument("cluster seed: exchange matrix must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (b[i][j] != -b[j][i]) throw std::invalid_argument("cluster seed: exchange matrix must be skew-symmetric");
}

std::int64_t checked(bool overflow, std::int64_t v) {
  if (overflow) throw std::overflow_error("matrix mutation: entry overflows 64 bits");
  return v;
}

RationalFunction power(const RationalFunction& x, std::int64_t k) {
  RationalFunction r(LaurentPolynomial::constant(x.num().nvars(), 1));
  for (std::int64_t i = 0; i < k; ++i) r = r * x;
  return r;
}

}  // namespace

ClusterSeed::ClusterSeed(ExchangeMatrix b) : b_(std::move(b)) {
  check_exchange_matrix(b_);
  for (std::size_t i = 0; i < b_.size(); ++i) vars_.emplace_back(LaurentPolynomial::variable(b_.size(), i));
}

ClusterSeed::ClusterSeed(std::vector<RationalFunction> variables, ExchangeMatrix b)
    : vars_(std::move(variables)), b_(std::move(b)) {
  check_exchange_matrix(b_);
  if (vars_.size() != b_.size()) throw std::invalid_argument("cluster seed: need one variable per row of B");
  for (const auto& v : vars_)
    if (v.is_zero()) throw std::invalid_argument("cluster seed: variables must be nonzero");
}

ClusterSeed mutate(const ClusterSeed& seed, std::size_t k1) {
  const std::size_t n = seed.rank();
  if (k1 < 1 || k1 > n) throw std::out_of_range("mutate: direction must be in 1.." + std::to_string(n));
  const std::size_t k = k1 - 1;
  const ExchangeMatrix& b = seed.exchange_matrix();
  const auto& x = seed.variables();

  RationalFunction plus(LaurentPolynomial::constant(n, 1)), minus(LaurentPolynomial::constant(n, 1));
  for (std::size_t i = 0; i < n; ++i) {
    if (b[i][k] > 0) plus = plus * power(x[i], b[i][k]);
    if (b[i][k] < 0) minus = minus * power(x[i], -b[i][k]);
  }
  std::vector<RationalFunction> vars = x;
  vars[k] = (plus + minus) / x[k];

  ExchangeMatrix nb = b;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == k || j == k) {
        nb[i][j] = -b[i][j];
        continue;
      }
      std::int64_t p1, p2, s, out;
      bool o1 = __builtin_mul_overflow(std::abs(b[i][k]), b[k][j], &p1);
      bool o2 = __builtin_mul_overflow(b[i][k], std::abs(b[k][j]), &p2);
      bool o3 = __builtin_add_overflow(p1, p2, &s);
      bool o4 = __builtin_add_overflow(b[i][j], s / 2, &out);
      nb[i][j] = checked(o1 || o2 || o3 || o4, out);
    }
  return ClusterSeed(std::move(vars), std::move(nb));
}

bool equivalent(const ClusterSeed& a, const ClusterSeed& b) {
  const std::size_t n = a.rank();
  if (b.rank() != n) return false;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) ok = a.exchange_matrix()[i][j] == b.exchange_matrix()[perm[i]][perm[j]];
    for (std::size_t i = 0; i < n && ok; ++i) ok = a.variables()[i] == b.variables()[perm[i]];
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

namespace {

// Permutation-invariant key for seed deduplication (identity only above rank 6).
std::string seed_key(const ClusterSeed& s) {
  const std::size_t n = s.rank();
  std::vector<std::string> names;
  for (const auto& v : s.variables()) names.push_back(v.to_string());
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  bool first = true;
  do {
    std::string key;
    for (std::size_t i = 0; i < n; ++i) key += names[perm[i]] + ";";
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) key += std::to_string(s.exchange_matrix()[perm[i]][perm[j]]) + ",";
    if (first || key < best) best = key;
    first = false;
  } while (n <= 6 && std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

MutationOrbit mutation_orbit(const ClusterSeed& seed, std::size_t depth, std::size_t budget) {
  MutationOrbit orbit;
  std::set<std::string> seen_seeds, seen_vars;
  auto record = [&](const ClusterSeed& s) {
    for (const auto& v : s.variables()) {
      std::string name = v.to_string();
      if (!seen_vars.insert(name).second) continue;
      if (auto l = is_laurent(v)) {
        orbit.all_positive = orbit.all_positive && l->has_positive_coefficients();
        orbit.variables.push_back(std::move(*l));
      } else {
        orbit.non_laurent.push_back(v);
      }
    }
  };
  std::vector<ClusterSeed> frontier{seed};
  seen_seeds.insert(seed_key(seed));
  record(seed);
  orbit.seeds_visited = 1;
  for (std::size_t level = 0; level < depth && !frontier.empty(); ++level) {
    std::vector<ClusterSeed> next;
    for (const auto& s : frontier) {
      for (std::size_t k = 1; k <= s.rank(); ++k) {
        ClusterSeed t = mutate(s, k);
        if (!seen_seeds.insert(seed_key(t)).second) continue;
        if (budget && orbit.seeds_visited >= budget) {
          orbit.truncated = true;
          return orbit;
        }
        ++orbit.seeds_visited;
        record(t);
        next.push_back(std::move(t));
      }
    }
    frontier = std::move(next);
  }
  return orbit;
}

}  // namespace qmk
