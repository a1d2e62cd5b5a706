#include "qmk/ktheory.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qmk {

SmithForm smith_normal_form(const IntegerMatrix& a, std::size_t step_budget) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithForm f{IntegerMatrix::identity(m), a, IntegerMatrix::identity(n)};
  IntegerMatrix &U = f.U, &S = f.S, &V = f.V;
  std::size_t steps = 0;
  auto tick = [&] {
    if (step_budget && ++steps > step_budget) throw std::runtime_error("smith_normal_form: step budget exhausted");
  };
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      tick();
      // pivot: smallest nonzero |entry| in the trailing submatrix
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (S(i, j) != 0 && (pi == m || mpz_cmpabs(S(i, j).get_mpz_t(), S(pi, pj).get_mpz_t()) < 0)) {
            pi = i;
            pj = j;
          }
      if (pi == m) return f;
      S.swap_rows(t, pi);
      U.swap_rows(t, pi);
      S.swap_cols(t, pj);
      V.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        Integer q = S(i, t) / S(t, t);
        S.add_row_multiple(i, t, -q);
        U.add_row_multiple(i, t, -q);
        clean = clean && S(i, t) == 0;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        Integer q = S(t, j) / S(t, t);
        S.add_col_multiple(j, t, -q);
        V.add_col_multiple(j, t, -q);
        clean = clean && S(t, j) == 0;
      }
      if (!clean) continue;

      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      S.add_row_multiple(t, bad, 1);
      U.add_row_multiple(t, bad, 1);
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      U.negate_row(t);
    }
  }
  return f;
}

std::optional<Integer> AbelianGroupPresentation::order() const {
  if (free_rank) return std::nullopt;
  Integer o = 1;
  for (const auto& d : invariant_factors) o *= d;
  return o;
}

std::string AbelianGroupPresentation::to_string() const {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (const auto& d : invariant_factors) parts.push_back("Z/" + d.get_str());
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

namespace {

// Invariant factors of a direct sum of cyclic groups Z/d_i.
std::vector<Integer> invariant_factors_of(std::vector<Integer> d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      Integer g = gcd(d[i], d[j]);
      Integer l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  std::vector<Integer> out;
  for (auto& x : d)
    if (x > 1) out.push_back(x);
  return out;
}

}  // namespace

AbelianGroupPresentation direct_sum(const AbelianGroupPresentation& a, const AbelianGroupPresentation& b) {
  std::vector<Integer> all = a.invariant_factors;
  all.insert(all.end(), b.invariant_factors.begin(), b.invariant_factors.end());
  return {a.free_rank + b.free_rank, invariant_factors_of(std::move(all))};
}

namespace {

std::size_t diagonal_rank(const IntegerMatrix& s) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(s.rows(), s.cols()); ++i)
    if (s(i, i) != 0) ++r;
  return r;
}

}  // namespace

std::size_t matrix_rank(const IntegerMatrix& a) { return diagonal_rank(smith_normal_form(a).S); }

AbelianGroupPresentation cokernel(const IntegerMatrix& a) {
  IntegerMatrix s = smith_normal_form(a).S;
  AbelianGroupPresentation g;
  g.free_rank = a.rows() - diagonal_rank(s);
  for (std::size_t i = 0; i < std::min(s.rows(), s.cols()); ++i)
    if (s(i, i) > 1) g.invariant_factors.push_back(s(i, i));
  return g;
}

namespace {

using BoolMatrix = std::vector<std::vector<bool>>;

BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b) {
  const std::size_t n = a.size();
  BoolMatrix c(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (b[k][j]) c[i][j] = true;
  return c;
}

bool all_true(const BoolMatrix& a) {
  return std::all_of(a.begin(), a.end(), [](const auto& row) {
    return std::all_of(row.begin(), row.end(), [](bool v) { return v; });
  });
}

}  // namespace

CuntzKriegerK0 k0_cuntz_krieger(const IntegerMatrix& a) {
  if (!a.is_square() || a.rows() == 0) throw std::invalid_argument("k0_cuntz_krieger: matrix must be square");
  const std::size_t n = a.rows();
  BoolMatrix adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) != 0 && a(i, j) != 1) throw std::invalid_argument("k0_cuntz_krieger: entries must be 0 or 1");
      adj[i][j] = a(i, j) == 1;
    }
  CuntzKriegerK0 r;
  IntegerMatrix m = IntegerMatrix::identity(n) - a.transpose();
  SmithForm f = smith_normal_form(m);
  std::size_t rank = diagonal_rank(f.S);
  r.k0.free_rank = n - rank;
  for (std::size_t i = 0; i < n; ++i)
    if (f.S(i, i) > 1) r.k0.invariant_factors.push_back(f.S(i, i));
  r.k1_rank = n - rank;

  r.permutation = true;
  for (std::size_t i = 0; i < n && r.permutation; ++i) {
    std::size_t row = 0, col = 0;
    for (std::size_t j = 0; j < n; ++j) {
      row += adj[i][j];
      col += adj[j][i];
    }
    r.permutation = row == 1 && col == 1;
  }
  // reachability through paths of length >= 1
  BoolMatrix reach = adj;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  r.irreducible = all_true(reach);
  // Wielandt: a primitive matrix has A^k > 0 for k = n^2 - 2n + 2
  if (r.irreducible) {
    BoolMatrix p = adj;
    const std::size_t bound = n * n - 2 * n + 2;
    for (std::size_t k = 1; k <= bound && !r.primitive; ++k) {
      if (all_true(p)) r.primitive = true;
      else p = bool_product(p, adj);
    }
  }
  return r;
}

IntegerMatrix block_matrix(const Block& block) {
  const std::size_t l = block.size();
  IntegerMatrix m(l, l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) m(i, j) = block[i];
  return m;
}

K0Blocks k0_blocks(const BlockSequence& seq, std::size_t truncation) {
  if (truncation == 0) throw std::invalid_argument("k0_blocks: truncation must be at least 1");
  K0Blocks r;
  std::vector<Integer> factors;
  for (std::size_t i = 0; i < truncation; ++i) {
    auto b = seq.block(i);
    if (!b) break;
    long s = std::count(b->begin(), b->end(), 1);
    r.block_factors.emplace_back(std::abs(1 - s));
    r.degenerate.push_back(s == 1);
    IntegerMatrix m = IntegerMatrix::identity(b->size()) - block_matrix(*b).transpose();
    AbelianGroupPresentation summand = cokernel(m);
    r.group.free_rank += summand.free_rank;
    factors.insert(factors.end(), summand.invariant_factors.begin(), summand.invariant_factors.end());
    ++r.blocks_used;
  }
  r.group.invariant_factors = invariant_factors_of(std::move(factors));
  return r;
}

K0Blocks k0_blocks_by_periods(const BlockSequence& seq, std::size_t periods) {
  if (seq.tail != BlockTail::Periodic) throw std::invalid_argument("k0_blocks_by_periods: sequence is not periodic");
  return k0_blocks(seq, seq.preperiod + periods * seq.period.size());
}

std::string Lattice::to_string() const {
  std::string out = "Z";
  for (std::size_t i = 1; i < generators.size(); ++i) {
    const auto& g = generators[i];
    out += " + Z*(" + (g.exact ? g.exact->to_string() : std::string("?")) + ")";
  }
  return out;
}

Lattice lattice_lambda(const RealVector& theta) {
  Lattice l;
  l.generators.emplace_back(Rational(1));
  for (const auto& c : theta) {
    if (c.exact) l.generators.emplace_back(c.exact->frac());
    else l.generators.push_back(c);
  }
  return l;
}

std::optional<bool> lattice_equal(const Lattice& a, const Lattice& b) {
  auto all_rational = [](const Lattice& l) {
    return std::all_of(l.generators.begin(), l.generators.end(),
                       [](const Coordinate& c) { return c.exact && c.exact->is_rational(); });
  };
  auto all_exact = [](const Lattice& l) {
    return std::all_of(l.generators.begin(), l.generators.end(), [](const Coordinate& c) { return c.exact.has_value(); });
  };
  if (!all_exact(a) || !all_exact(b)) return std::nullopt;
  auto denominator = [](const Lattice& l) {
    Integer d = 1;
    for (const auto& c : l.generators) d = lcm(d, c.exact->rational().den());
    return d;
  };
  bool ra = all_rational(a), rb = all_rational(b);
  if (ra && rb) return denominator(a) == denominator(b);
  if (a.generators.size() == 2 && b.generators.size() == 2) {
    if (ra != rb) return false;
    const ExactNumber &x = *a.generators[1].exact, &y = *b.generators[1].exact;
    if (x.radicand() != y.radicand()) return false;
    ExactNumber diff = x - y, sum = x + y;
    return (diff.is_rational() && diff.rational().is_integer()) || (sum.is_rational() && sum.rational().is_integer());
  }
  return std::nullopt;
}

}  // namespace qmk
