#include <doctest.h>

#include <random>

#include "qmk/blockcode.hpp"

using namespace qmk;

namespace {

const SurfaceData kTorus = SurfaceData::make(1, 1);

std::vector<Block> blocks_of(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<Block> out;
  for (const auto& r : rows) out.emplace_back(r.begin(), r.end());
  return out;
}

// Slot bits of an m = 1 sequence, one per block.
Bits slot_bits(const BlockSequence& seq) {
  Bits out;
  for (const auto& b : seq.blocks) out.push_back(b.back());
  return out;
}

ExactNumber random_surd(std::mt19937_64& rng) {
  const long radicands[] = {2, 3, 5, 6, 7, 10, 11, 13};
  for (;;) {
    ExactNumber x = ExactNumber::quadratic(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 3),
                                           1 + static_cast<long>(rng() % 7), radicands[rng() % 8]);
    x = x.frac();
    if (!x.is_rational()) return x;
  }
}

}  // namespace

TEST_CASE("block lengths") {
  CHECK(block_length(SurfaceData{1, 1}).length == 3);
  CHECK(block_length(SurfaceData{1, 1}).slots == 1);
  CHECK(block_length(SurfaceData{0, 4}).length == 4);
  CHECK(block_length(SurfaceData{0, 4}).slots == 2);
  CHECK(SurfaceData::make(0, 4).m() == 1);
  CHECK(SurfaceData::make(2, 0).m() == 5);
  CHECK(block_length(SurfaceData{2, 0}).slots == 2);
  CHECK_THROWS_AS(SurfaceData::make(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(SurfaceData::make(-1, 5), std::invalid_argument);
  CHECK(SurfaceData::parse("1, 1").length() == 3);
  CHECK_THROWS_AS(SurfaceData::parse("1"), std::invalid_argument);
  CHECK_THROWS_AS(SurfaceData::parse("a,b"), std::invalid_argument);
}

TEST_CASE("the golden block sequence") {
  auto cf = ContinuedFraction::periodic(0, {}, {Integer(2)});
  BlockSequence seq = encode_blocks(cf, kTorus, 5);
  CHECK(seq.blocks == blocks_of({{1, 1, 0}, {1, 1, 1}, {1, 1, 1}, {1, 1, 0}, {1, 1, 0}}));
  CHECK(seq.tail == BlockTail::Periodic);
  CHECK(seq.certified);
  CHECK(seq.preperiod == 1);
  CHECK(seq.period.size() == 4);
  CHECK(seq.period == blocks_of({{1, 1, 1}, {1, 1, 1}, {1, 1, 0}, {1, 1, 0}}));
  // the bit stream 0110 0110 ... is also purely periodic
  CHECK(seq.shortest_preperiod == 0);
  CHECK(*seq.block(41) == seq.blocks[(41 - 1) % 4 + 1]);
}

TEST_CASE("finite and empty sequences") {
  BlockSequence two_fifths = encode_blocks(cf_expand_rational(Rational(2, 5)), kTorus, 10);
  CHECK(slot_bits(two_fifths) == Bits{0, 1, 1});
  CHECK(two_fifths.tail == BlockTail::Finite);
  BlockSequence empty = encode_blocks(ContinuedFraction::finite(0, {}), kTorus, 10);
  CHECK(empty.blocks.empty());
  CHECK(empty.tail == BlockTail::Finite);
  CHECK_FALSE(two_fifths.block(3).has_value());
  CHECK_THROWS_AS(encode_blocks(cf_expand_rational(Rational(2, 5)), SurfaceData::make(2, 0), 4), std::invalid_argument);
}

TEST_CASE("period detection") {
  auto cf = ContinuedFraction::periodic(0, {}, {Integer(2)});
  BlockSequence exact = detect_block_period(encode_blocks(cf, kTorus, 20), 20);
  CHECK(exact.tail == BlockTail::Periodic);
  CHECK(exact.preperiod == 1);

  BlockSequence e = detect_block_period(encode_blocks(ContinuedFraction::stream(0, euler_digits()), kTorus, 64), 64);
  CHECK(e.tail == BlockTail::AperiodicAtHorizon);
  CHECK(e.horizon == 64);

  // an undeclared stream of 2s: the search guesses the period without certifying it
  auto twos = std::make_shared<DigitStream>([]() -> std::optional<Integer> { return Integer(2); });
  BlockSequence raw = encode_blocks(ContinuedFraction::stream(0, twos), kTorus, 40);
  CHECK(raw.tail == BlockTail::Unknown);
  BlockSequence guessed = detect_block_period(raw, 40);
  CHECK(guessed.tail == BlockTail::Periodic);
  CHECK_FALSE(guessed.certified);
  CHECK(guessed.period.size() == 4);
}

TEST_CASE("L/R words") {
  CHECK(lr_word(ContinuedFraction::finite(0, {2, 2}), 100) == "LRR");
  CHECK(lr_word(ContinuedFraction::finite(0, {1, 1}), 100) == "R");
  CHECK(lr_word(ContinuedFraction::periodic(0, {}, {Integer(2)}), 9) == "LRRLLRRLL");
  CHECK(lr_word(ContinuedFraction::finite(0, {3}), 100) == "LR");
}

TEST_CASE("slot streams follow the question-mark code") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 200; ++i) {
    long q = 1 + static_cast<long>(rng() % 300);
    Rational x(static_cast<long>(rng() % q), q);
    ContinuedFraction cf = cf_expand_rational(x);
    BinaryCode code = question_mark_binary(cf);
    BlockSequence seq = encode_blocks(cf, kTorus, 100000);
    CHECK(slot_bits(seq) == code.bits());
    CHECK(seq.tail == BlockTail::Finite);
    std::string word = lr_word(cf, 100000);
    Bits from_word;
    for (char c : word) from_word.push_back(c == 'R');
    CHECK(from_word == code.bits());
    for (const auto& b : seq.blocks) CHECK((b[0] == 1 && b[1] == 1));
  }
  for (int i = 0; i < 50; ++i) {
    ExactNumber x = random_surd(rng);
    ContinuedFraction cf = cf_expand(x);
    BinaryCode code = question_mark_binary(cf);
    BlockSequence seq = encode_blocks(cf, kTorus, 200);
    REQUIRE(seq.blocks.size() >= 200);
    for (std::size_t k = 0; k < 200; ++k) CHECK(seq.blocks[k][2] == *code.bit(k));
    CHECK(seq.tail == BlockTail::Periodic);
    CHECK(seq.certified);
    for (std::size_t k = 0; k < 200; ++k) CHECK(*seq.block(k + 200) == Block{1, 1, *code.bit(k + 200)});
  }
}

TEST_CASE("two slots on the four-punctured sphere") {
  SurfaceData s = SurfaceData::make(0, 4);
  BlockSequence seq = encode_blocks(cf_expand_rational(Rational(3, 7)), s, 50);
  for (const auto& b : seq.blocks) {
    CHECK(b.size() == 4);
    CHECK(b[0] == 1);
    CHECK(b[1] == 1);
    CHECK(b[2] == b[3]);
  }
}

TEST_CASE("Jacobi-Perron digits on an m = 3 surface") {
  SurfaceData s = SurfaceData::make(0, 5);
  REQUIRE(s.m() == 3);
  JPExpansion e = jp_expand({Rational(1, 2), Rational(1, 3), Rational(1, 5)}, 100);
  REQUIRE(e.terminated);
  BlockSequence seq = encode_blocks(e, s, 1000);
  CHECK(seq.tail == BlockTail::Finite);
  for (const auto& b : seq.blocks) {
    CHECK(b.size() == 5);
    CHECK((b[0] == 1 && b[1] == 1 && b[2] == 1));
  }
  // slot 0 carries coordinate 0 of the digits with runs 0^a 1^b ...
  std::vector<Integer> runs;
  for (const auto& d : e.digits) runs.push_back(d[0]);
  BinaryCode slot0 = binary_from_runs(0, runs);
  for (std::size_t k = 0; k < slot0.bits().size(); ++k) CHECK(seq.blocks[k][3] == slot0.bits()[k]);
  CHECK_THROWS_AS(encode_blocks(e, kTorus, 10), std::invalid_argument);

  JPExpansion open = jp_expand(parse_real_vector("sqrt(2)-1, sqrt(3)-1, sqrt(5)-2"), 12);
  BlockSequence prefix = encode_blocks(open, s, 30);
  CHECK(prefix.tail == BlockTail::Unknown);
  BlockSequence declared = encode_blocks(open, s, 30, JpPeriodDeclaration{2, 3});
  CHECK(declared.tail == BlockTail::Periodic);
  CHECK(declared.certified);
}

TEST_CASE("domination by the full incidence sequence") {
  CHECK(farey_incidence(2).blocks == blocks_of({{1, 1, 1}, {1, 1, 1}}));
  CHECK(farey_incidence(0).blocks.empty());
  std::mt19937_64 rng(59);
  BlockSequence full = farey_incidence(1);
  for (int i = 0; i < 100; ++i) {
    long q = 1 + static_cast<long>(rng() % 500);
    BlockSequence seq = encode_blocks(cf_expand_rational(Rational(static_cast<long>(rng() % q), q)), kTorus, 1000);
    CHECK(dominated_by(seq, full));
  }
  CHECK_FALSE(dominated_by(full, encode_blocks(cf_expand_rational(Rational(1, 3)), kTorus, 10)));
}

TEST_CASE("periodicity transfer") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 100; ++i) {
    if (i % 2 == 0) {
      long q = 1 + static_cast<long>(rng() % 1000);
      BlockSequence seq = encode_blocks(cf_expand_rational(Rational(static_cast<long>(rng() % q), q)), kTorus, 64);
      CHECK(seq.tail == BlockTail::Finite);
    } else {
      BlockSequence seq = encode_blocks(cf_expand(random_surd(rng)), kTorus, 64);
      CHECK(seq.tail == BlockTail::Periodic);
      CHECK(seq.certified);
    }
  }
}
