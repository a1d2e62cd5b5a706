// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qmk/cluster.hpp"
#include "qmk/jacobiperron.hpp"
#include "qmk/ktheory.hpp"
#include "qmk/minkowski.hpp"

using namespace qmk;

namespace {

// Pinned limits.
constexpr double kFastLimitSeconds = 1.0;
constexpr double kDualLimitSeconds = 30.0;
constexpr long kDualMaxDenominator = 200;
constexpr int kRandomRationals = 500;
constexpr int kRandomSurds = 200;
constexpr int kWordRationals = 200;
constexpr int kPeriodicSequences = 50;
constexpr std::size_t kTruncations = 10;
constexpr int kSnfMatrices = 50;
constexpr std::size_t kSnfMaxDim = 8;
constexpr long kCosetMaxDet = 64;
constexpr int kJpRationals = 100;
constexpr int kJpVectors = 200;
constexpr int kInvolutionSeeds = 500;
constexpr std::size_t kRank2Depth = 6;
constexpr std::size_t kMarkovDepth = 4;
constexpr int kMonotonePoints = 10000;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, double limit, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit > 0 && secs >= limit) {
    o.pass = false;
    o.detail += " (time limit exceeded)";
  }
  if (!o.pass) ++failures;
  std::printf("AC%-2d %s  %s: %s [%.3f s]\n", id, o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string count_line(long bad, long total, const std::string& what) {
  std::ostringstream s;
  s << bad << " failures / " << total << " " << what;
  return s.str();
}

ExactNumber random_surd(std::mt19937_64& rng) {
  const long radicands[] = {2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19};
  for (;;) {
    ExactNumber x = ExactNumber::quadratic(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 4),
                                           1 + static_cast<long>(rng() % 9), radicands[rng() % 12]);
    x = x.frac();
    if (!x.is_rational()) return x;
  }
}

Rational random_unit_rational(std::mt19937_64& rng, long max_den) {
  long q = 1 + static_cast<long>(rng() % max_den);
  return Rational(static_cast<long>(rng() % (q + 1)), q);
}

Outcome ac1() {
  auto cf = ContinuedFraction::periodic(0, {}, {Integer(2)});
  BlockSequence seq = detect_block_period(encode_blocks(cf, SurfaceData::make(1, 1), 5), 5);
  std::vector<Block> expected{{1, 1, 0}, {1, 1, 1}, {1, 1, 1}, {1, 1, 0}, {1, 1, 0}};
  bool ok = seq.blocks == expected && seq.tail == BlockTail::Periodic && seq.preperiod == 1 && seq.period.size() == 4;
  std::ostringstream s;
  s << "blocks " << (seq.blocks == expected ? "match" : "differ") << ", preperiod " << seq.preperiod << ", period "
    << seq.period.size();
  return {ok, s.str()};
}

Outcome ac2() {
  long bad = 0;
  for (std::size_t n = 2; n <= 10; ++n) {
    BlockSequence one;
    one.blocks = {Block(n, 1)};
    one.tail = BlockTail::Finite;
    AbelianGroupPresentation g = k0_blocks(one, 1).group;
    IntegerMatrix ones(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ones(i, j) = 1;
    AbelianGroupPresentation ck = k0_cuntz_krieger(ones).k0;
    bool cyclic = g.free_rank == 0 && g.order() == Integer(static_cast<long>(n) - 1) &&
                  g.invariant_factors.size() <= 1;
    if (!cyclic || !(g == ck) || g.is_trivial() != (n == 2)) ++bad;
  }
  return {bad == 0, count_line(bad, 9, "sizes n = 2..10")};
}

Outcome ac3() {
  long bad = 0, total = 0;
  for (long q = 1; q <= kDualMaxDenominator; ++q)
    for (long p = 0; p <= q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      ++total;
      ContinuedFraction cf = cf_expand_rational(Rational(p, q));
      if (question_mark_binary(cf).value() != question_mark_series_limit(cf)) ++bad;
    }
  return {bad == 0, count_line(bad, total, "reduced rationals")};
}

Outcome ac4() {
  std::mt19937_64 rng(101);
  long bad = 0;
  for (int i = 0; i < kRandomRationals; ++i) {
    Rational x = random_unit_rational(rng, 100000);
    Rational y = question_mark_exact(x);
    if (!is_dyadic(y) || !(inverse_question_mark(y) == ExactNumber(x))) ++bad;
  }
  for (int i = 0; i < kRandomSurds; ++i) {
    ExactNumber x = random_surd(rng);
    Rational y = question_mark_exact(x);
    if (is_dyadic(y) || !(inverse_question_mark(y) == x)) ++bad;
  }
  return {bad == 0, count_line(bad, kRandomRationals + kRandomSurds, "points")};
}

Outcome ac5() {
  std::mt19937_64 rng(103);
  long bad = 0;
  for (int i = 0; i < kWordRationals; ++i) {
    ContinuedFraction cf = cf_expand_rational(random_unit_rational(rng, 5000));
    std::string word = lr_word(cf, 1 << 20);
    Bits bits;
    for (char c : word) bits.push_back(c == 'R');
    if (bits != question_mark_binary(cf).bits()) ++bad;
  }
  return {bad == 0, count_line(bad, kWordRationals, "rationals")};
}

Outcome ac6() {
  std::mt19937_64 rng(107);
  long bad = 0;
  for (int i = 0; i < kPeriodicSequences; ++i) {
    BlockSequence seq = oracle::random_periodic_blocks(rng);
    Integer prev = 0;
    for (std::size_t t = 1; t <= kTruncations; ++t) {
      K0Blocks r = k0_blocks_by_periods(seq, t);
      if (!r.group.is_torsion() || !(*r.group.order() > prev)) {
        ++bad;
        break;
      }
      prev = *r.group.order();
    }
  }
  return {bad == 0, count_line(bad, kPeriodicSequences, "sequences, truncated at 1..10 periods")};
}

Outcome ac7() {
  std::mt19937_64 rng(109);
  long bad = 0, compared = 0;
  for (int i = 0; i < kSnfMatrices; ++i) {
    IntegerMatrix a = oracle::random_matrix(rng, 1 + rng() % kSnfMaxDim, 1 + rng() % kSnfMaxDim, 10);
    SmithForm f = smith_normal_form(a);
    if (!(f.U * a * f.V == f.S) || abs(f.U.determinant()) != 1 || abs(f.V.determinant()) != 1 ||
        !oracle::is_smith_diagonal(f.S))
      ++bad;
  }
  // small nonsingular squares for the coset comparison
  for (int i = 0; compared < kSnfMatrices && i < 2000; ++i) {
    std::size_t n = 1 + rng() % 4;
    IntegerMatrix a = oracle::random_matrix(rng, n, n, 4);
    Integer det = a.determinant();
    if (det == 0 || abs(det) > kCosetMaxDet) continue;
    ++compared;
    auto order = cokernel(a).order();
    if (!order || *order != Integer(static_cast<unsigned long>(oracle::coset_count(a)))) ++bad;
  }
  std::ostringstream s;
  s << bad << " failures / " << kSnfMatrices << " Smith forms + " << compared << " coset enumerations";
  return {bad == 0 && compared == kSnfMatrices, s.str()};
}

Outcome ac8() {
  std::mt19937_64 rng(113);
  long bad = 0;
  for (int i = 0; i < kJpRationals; ++i) {
    Rational x = random_unit_rational(rng, 100000);
    if (x == Rational(1)) x = Rational(0);
    JPExpansion e = jp_expand({x}, 10000);
    ContinuedFraction cf = cf_expand_rational(x);
    bool ok = e.terminated && e.digits.size() == cf.quotients().size();
    for (std::size_t k = 0; ok && k < e.digits.size(); ++k) ok = e.digits[k][0] == cf.quotients()[k];
    if (!ok) ++bad;
  }
  for (std::size_t m = 2; m <= 3; ++m)
    for (int i = 0; i < kJpVectors / 2; ++i) {
      RealVector v;
      std::vector<Rational> expect;
      for (std::size_t j = 0; j < m; ++j) {
        long q = 1 + static_cast<long>(rng() % 1000);
        expect.emplace_back(static_cast<long>(rng() % q), q);
        v.emplace_back(expect.back());
      }
      JPExpansion e = jp_expand(v, 100000);
      if (!e.terminated || jp_final_convergent(e) != expect) ++bad;
    }
  return {bad == 0, count_line(bad, kJpRationals + kJpVectors, "expansions")};
}

Outcome ac9() {
  std::mt19937_64 rng(127);
  long bad = 0;
  for (int i = 0; i < kInvolutionSeeds; ++i) {
    std::size_t n = 1 + rng() % 4;
    ExchangeMatrix b(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r + 1; c < n; ++c) {
        b[r][c] = static_cast<std::int64_t>(rng() % 5) - 2;
        b[c][r] = -b[r][c];
      }
    ClusterSeed seed = mutate(ClusterSeed(b), 1 + rng() % n);
    std::size_t k = 1 + rng() % n;
    if (!(mutate(mutate(seed, k), k) == seed)) ++bad;
  }
  std::size_t non_laurent = 0, variables = 0;
  for (const ExchangeMatrix& b : {ExchangeMatrix{{0, 1}, {-1, 0}}, ExchangeMatrix{{0, 2}, {-2, 0}},
                                  ExchangeMatrix{{0, 3}, {-3, 0}}}) {
    MutationOrbit o = mutation_orbit(ClusterSeed(b), kRank2Depth);
    non_laurent += o.non_laurent.size();
    variables += o.variables.size();
  }
  MutationOrbit markov = mutation_orbit(ClusterSeed({{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}}), kMarkovDepth);
  non_laurent += markov.non_laurent.size();
  variables += markov.variables.size();
  std::ostringstream s;
  s << bad << " involution failures / " << kInvolutionSeeds << " seeds, " << non_laurent << " non-Laurent / "
    << variables + non_laurent << " variables";
  return {bad == 0 && non_laurent == 0, s.str()};
}

Outcome ac10() {
  bool ends = question_mark_exact(Rational(0)) == Rational(0) && question_mark_exact(Rational(1)) == Rational(1);
  std::mt19937_64 rng(131);
  std::vector<Rational> xs;
  while (xs.size() < static_cast<std::size_t>(kMonotonePoints)) {
    xs.push_back(random_unit_rational(rng, 1000000));
    if (xs.size() == static_cast<std::size_t>(kMonotonePoints)) {
      std::sort(xs.begin(), xs.end());
      xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    }
  }
  long bad = 0;
  Rational prev = question_mark_exact(xs[0]);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    Rational cur = question_mark_exact(xs[i]);
    if (!(prev < cur)) ++bad;
    prev = cur;
  }
  std::ostringstream s;
  s << "endpoints " << (ends ? "exact" : "wrong") << ", " << bad << " order violations / " << xs.size()
    << " sorted points";
  return {ends && bad == 0, s.str()};
}

}  // namespace

int main() {
  report(1, "golden block sequence", kFastLimitSeconds, ac1);
  report(2, "all-ones blocks give Z/(n-1)", kFastLimitSeconds, ac2);
  report(3, "binary vs series evaluation", kDualLimitSeconds, ac3);
  report(4, "rational/surd/other trichotomy", 0, ac4);
  report(5, "L/R word vs binary code", 0, ac5);
  report(6, "torsion growth on periodic blocks", 0, ac6);
  report(7, "Smith normal form contract", 0, ac7);
  report(8, "Jacobi-Perron expansions", 0, ac8);
  report(9, "cluster mutation", 0, ac9);
  report(10, "endpoints and monotonicity", 0, ac10);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures;
}
