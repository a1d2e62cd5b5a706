#pragma once

// Block sequences B_1, B_2, ... of 0/1 column vectors. Each block of length
// L = 2g+n starts with ceil(L/2) fixed ones followed by s = floor(L/2)
// slots; successive blocks fill each slot from a run-length bit stream.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qmk/contfrac.hpp"
#include "qmk/jacobiperron.hpp"
#include "qmk/minkowski.hpp"

namespace qmk {

struct SurfaceData {
  long g = 0;
  long n = 0;

  /// Throws std::invalid_argument when g, n < 0, m < 1 or L < 2.
  static SurfaceData make(long g, long n);
  /// "g,n"
  static SurfaceData parse(std::string_view text);

  long m() const { return 6 * g - 7 + 2 * n; }
  std::size_t length() const { return static_cast<std::size_t>(2 * g + n); }
  std::size_t slots() const { return length() / 2; }
  std::size_t fixed() const { return length() - slots(); }
};

struct BlockShape {
  std::size_t length;
  std::size_t slots;
};

BlockShape block_length(const SurfaceData& surface);

using Block = Bits;

enum class BlockTail { Finite, Periodic, AperiodicAtHorizon, Unknown };
std::string to_string(BlockTail t);

struct BlockSequence {
  SurfaceData surface;
  /// Materialized prefix. Periodic tails always include the whole preperiod.
  std::vector<Block> blocks;
  BlockTail tail = BlockTail::Unknown;
  /// Periodic tails: blocks before the period, aligned with the digit runs.
  std::size_t preperiod = 0;
  /// Periodic tails: the shortest possible preperiod (may be smaller than
  /// the run-aligned one when the period can be rotated backwards).
  std::size_t shortest_preperiod = 0;
  /// Periodic tails: one minimal period.
  std::vector<Block> period;
  /// AperiodicAtHorizon / Unknown: number of blocks inspected.
  std::size_t horizon = 0;
  /// The tail was derived exactly (or from a declaration), not guessed.
  bool certified = false;

  /// Block i, extending a periodic tail beyond the prefix; nullopt past the
  /// end of a finite sequence or an unclassified prefix.
  std::optional<Block> block(std::size_t i) const;
};

/// m = 1 surfaces only; every slot carries the bits of ?(x) after the point.
BlockSequence encode_blocks(const ContinuedFraction& cf, const SurfaceData& surface, std::size_t count);

struct JpPeriodDeclaration {
  std::size_t preperiod;  // digit vectors
  std::size_t period;     // digit vectors
};

/// Slot j carries the run-length stream of digit coordinate j mod m. The
/// last coordinate gets the shortened first run used for m = 1. A terminated
/// expansion gives a finite sequence; a declared period (which the digits
/// must cover at least once) gives a periodic one; otherwise Unknown.
BlockSequence encode_blocks(const JPExpansion& exp, const SurfaceData& surface, std::size_t count,
                            std::optional<JpPeriodDeclaration> declared = std::nullopt);

/// Returns the classified tail unchanged; otherwise searches the first
/// `horizon` blocks for a repeating tail (uncertified) and reports
/// AperiodicAtHorizon when none is found.
BlockSequence detect_block_period(const BlockSequence& seq, std::size_t horizon);

/// L-runs and R-runs of lengths a1-1, a2, a3, ... (first `length` letters).
/// Finite expansions are first rewritten to an even number of quotients so
/// that the word ends with an R-run.
std::string lr_word(const ContinuedFraction& cf, std::size_t length);

/// All-ones blocks of length 3 on the surface g = n = 1.
BlockSequence farey_incidence(std::size_t levels);

/// Entrywise a <= b over the materialized prefix of a.
bool dominated_by(const BlockSequence& a, const BlockSequence& b);

}  // namespace qmk
