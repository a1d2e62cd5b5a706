#include "qmk/blockcode.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

#include "qmk/periodic.hpp"

namespace qmk {

SurfaceData SurfaceData::make(long g, long n) {
  if (g < 0 || n < 0) throw std::invalid_argument("surface: g and n must be non-negative");
  SurfaceData s{g, n};
  if (s.m() < 1)
    throw std::invalid_argument("unsupported surface (g=" + std::to_string(g) + ", n=" + std::to_string(n) +
                                "): m = 6g-7+2n must be at least 1");
  if (s.length() < 2) throw std::invalid_argument("unsupported surface: block length 2g+n must be at least 2");
  return s;
}

SurfaceData SurfaceData::parse(std::string_view text) {
  long g = 0, n = 0;
  auto comma = text.find(',');
  if (comma == std::string_view::npos) throw std::invalid_argument("surface must be given as g,n");
  auto read = [&](std::string_view part, long& out) {
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    if (ec != std::errc() || ptr != part.data() + part.size())
      throw std::invalid_argument("surface must be given as g,n");
  };
  read(text.substr(0, comma), g);
  read(text.substr(comma + 1), n);
  return make(g, n);
}

BlockShape block_length(const SurfaceData& surface) {
  SurfaceData s = SurfaceData::make(surface.g, surface.n);
  return {s.length(), s.slots()};
}

std::string to_string(BlockTail t) {
  switch (t) {
    case BlockTail::Finite: return "finite";
    case BlockTail::Periodic: return "periodic";
    case BlockTail::AperiodicAtHorizon: return "aperiodic-at-horizon";
    case BlockTail::Unknown: return "unknown";
  }
  return "unknown";
}

std::optional<Block> BlockSequence::block(std::size_t i) const {
  if (i < blocks.size()) return blocks[i];
  if (tail == BlockTail::Periodic && !period.empty() && i >= preperiod) return period[(i - preperiod) % period.size()];
  return std::nullopt;
}

namespace {

constexpr unsigned long kMaxSlotBits = 1UL << 26;

void append_runs(Bits& out, const std::vector<Integer>& runs, std::uint8_t& colour) {
  for (const auto& r : runs) {
    if (r < 0) throw std::invalid_argument("block code: negative run length");
    if (r > kMaxSlotBits || out.size() + r.get_ui() > kMaxSlotBits)
      throw std::length_error("block code: slot stream too long");
    out.insert(out.end(), r.get_ui(), colour);
    colour ^= 1;
  }
}

// One slot: a finite bit list, an eventually periodic one, or a stream.
struct SlotSource {
  enum class Kind { Finite, Periodic, Stream } kind = Kind::Finite;
  Bits pre;
  Bits per;
  std::optional<BinaryCode> code;

  std::optional<std::uint8_t> at(std::size_t i) const {
    switch (kind) {
      case Kind::Finite:
        if (i < pre.size()) return pre[i];
        return std::nullopt;
      case Kind::Periodic:
        return periodic_at(pre, per, i);
      case Kind::Stream:
        return code->bit(i);
    }
    return std::nullopt;
  }
};

// Run-aligned eventually periodic bits: the first run of the unrolled
// head is shortened by `shift`; an odd run period is doubled for colour.
SlotSource periodic_slot(std::vector<Integer> pre_runs, const std::vector<Integer>& period_runs, long shift) {
  std::vector<Integer> head = pre_runs;
  head.insert(head.end(), period_runs.begin(), period_runs.end());
  head[0] -= shift;
  SlotSource s;
  s.kind = SlotSource::Kind::Periodic;
  std::uint8_t colour = 0;
  append_runs(s.pre, head, colour);
  append_runs(s.per, period_runs, colour);
  if (period_runs.size() % 2 == 1) append_runs(s.per, period_runs, colour);
  if (s.per.empty()) {
    // all period runs are empty: an endless run of the next colour, as for a finite run list
    s.per.push_back(colour);
  } else {
    std::vector<std::uint8_t> none;
    minimize_period(none, s.per);  // length only: `none` is empty, so no rotation
  }
  return s;
}

SlotSource finite_slot(Bits bits) {
  SlotSource s;
  s.pre = std::move(bits);
  return s;
}

Block make_block(const SurfaceData& surface, const std::vector<std::uint8_t>& slot_bits) {
  Block b(surface.fixed(), 1);
  b.insert(b.end(), slot_bits.begin(), slot_bits.end());
  return b;
}

// Assembles blocks from one source per slot. When every source is finite
// or periodic the tail is derived exactly.
BlockSequence assemble(const SurfaceData& surface, const std::vector<SlotSource>& slots, std::size_t count) {
  BlockSequence seq;
  seq.surface = surface;
  bool any_stream = false, any_periodic = false;
  std::size_t finite_len = 0, pre_len = 0, period_len = 1;
  for (const auto& s : slots) {
    switch (s.kind) {
      case SlotSource::Kind::Stream: any_stream = true; break;
      case SlotSource::Kind::Periodic:
        any_periodic = true;
        pre_len = std::max(pre_len, s.pre.size());
        period_len = std::lcm(period_len, s.per.size());
        break;
      case SlotSource::Kind::Finite:
        finite_len = std::max(finite_len, s.pre.size());
        break;
    }
  }
  auto block_at = [&](std::size_t i) -> std::optional<Block> {
    std::vector<std::uint8_t> bits;
    bool any = false;
    for (const auto& s : slots) {
      auto b = s.at(i);
      any = any || b.has_value();
      bits.push_back(b.value_or(0));
    }
    if (!any) return std::nullopt;
    return make_block(surface, bits);
  };
  for (std::size_t i = 0; i < count; ++i) {
    auto b = block_at(i);
    if (!b) break;
    seq.blocks.push_back(std::move(*b));
  }
  if (any_stream) {
    seq.tail = seq.blocks.size() < count ? BlockTail::Finite : BlockTail::Unknown;
    seq.certified = seq.tail == BlockTail::Finite;
    seq.horizon = seq.blocks.size();
    return seq;
  }
  if (!any_periodic) {
    seq.tail = BlockTail::Finite;
    seq.certified = true;
    return seq;
  }
  // Finite slots are zero past their end, so they join the preperiod.
  pre_len = std::max(pre_len, finite_len);
  std::vector<Block> period;
  for (std::size_t i = 0; i < period_len; ++i) period.push_back(*block_at(pre_len + i));
  std::vector<Block> none;
  minimize_period(none, period);
  // block i < pre_len would equal period[(i - pre_len) mod P] if the period reached back
  auto period_at = [&](std::size_t i) -> const Block& {
    const std::size_t p = period.size();
    return period[(p - (pre_len - i) % p) % p];
  };
  std::size_t shortest = pre_len;
  while (shortest > 0 && *block_at(shortest - 1) == period_at(shortest - 1)) --shortest;
  // the prefix must cover the preperiod so that block(i) is defined everywhere
  for (std::size_t i = seq.blocks.size(); i < pre_len; ++i) seq.blocks.push_back(*block_at(i));
  seq.tail = BlockTail::Periodic;
  seq.preperiod = pre_len;
  seq.shortest_preperiod = shortest;
  seq.period = std::move(period);
  seq.certified = true;
  return seq;
}

}  // namespace

BlockSequence encode_blocks(const ContinuedFraction& cf, const SurfaceData& surface, std::size_t count) {
  if (surface.m() != 1)
    throw std::invalid_argument("encode_blocks: a regular continued fraction needs m = 1, surface has m = " +
                                std::to_string(surface.m()));
  SlotSource slot;
  switch (cf.kind()) {
    case ContinuedFraction::Kind::Finite:
      slot = finite_slot(question_mark_binary(cf).bits());
      break;
    case ContinuedFraction::Kind::Periodic:
      slot = periodic_slot(cf.preperiod(), cf.period(), 1);
      break;
    case ContinuedFraction::Kind::Stream: {
      BinaryCode code = question_mark_binary(cf);
      if (code.kind() == BinaryCode::Kind::Finite) {
        slot = finite_slot(code.bits());
      } else {
        slot.kind = SlotSource::Kind::Stream;
        slot.code = code;
      }
      break;
    }
  }
  std::vector<SlotSource> slots(surface.slots(), slot);
  BlockSequence seq = assemble(surface, slots, count);
  if (seq.tail == BlockTail::Unknown && cf.source()->declared_aperiodic()) {
    seq.tail = BlockTail::AperiodicAtHorizon;
    seq.certified = true;
  }
  return seq;
}

BlockSequence encode_blocks(const JPExpansion& exp, const SurfaceData& surface, std::size_t count,
                            std::optional<JpPeriodDeclaration> declared) {
  if (static_cast<long>(exp.m) != surface.m())
    throw std::invalid_argument("encode_blocks: expansion has m = " + std::to_string(exp.m) + ", surface has m = " +
                                std::to_string(surface.m()));
  const std::size_t m = exp.m;
  if (declared) {
    if (declared->period == 0) throw std::invalid_argument("encode_blocks: declared period must be positive");
    if (exp.terminated) throw std::invalid_argument("encode_blocks: a terminated expansion cannot be periodic");
    if (exp.digits.size() < declared->preperiod + declared->period)
      throw std::invalid_argument("encode_blocks: not enough digits to cover the declared period");
  }
  std::vector<SlotSource> slots;
  bool prefix_only = false;
  for (std::size_t j = 0; j < surface.slots(); ++j) {
    const std::size_t c = j % m;
    const long shift = c + 1 == m ? 1 : 0;
    auto runs_of = [&](std::size_t from, std::size_t to) {
      std::vector<Integer> runs;
      for (std::size_t i = from; i < to; ++i) runs.push_back(exp.digits[i][c]);
      return runs;
    };
    if (declared) {
      slots.push_back(periodic_slot(runs_of(0, declared->preperiod),
                                    runs_of(declared->preperiod, declared->preperiod + declared->period), shift));
      continue;
    }
    std::vector<Integer> runs = runs_of(0, exp.digits.size());
    if (!runs.empty()) runs[0] -= shift;
    if (exp.terminated) {
      slots.push_back(finite_slot(binary_from_runs(0, runs).bits()));
    } else {
      Bits bits;
      std::uint8_t colour = 0;
      append_runs(bits, runs, colour);
      slots.push_back(finite_slot(std::move(bits)));
      prefix_only = true;
    }
  }
  BlockSequence seq = assemble(surface, slots, count);
  if (prefix_only) {
    seq.tail = BlockTail::Unknown;
    seq.certified = false;
    seq.horizon = seq.blocks.size();
  }
  return seq;
}

BlockSequence detect_block_period(const BlockSequence& seq, std::size_t horizon) {
  BlockSequence out = seq;
  if (seq.tail == BlockTail::AperiodicAtHorizon) {
    out.horizon = horizon;
    return out;
  }
  if (seq.tail != BlockTail::Unknown) return out;
  const std::size_t n = std::min(horizon, seq.blocks.size());
  const std::vector<Block> window(seq.blocks.begin(), seq.blocks.begin() + static_cast<std::ptrdiff_t>(n));
  out.horizon = n;
  out.certified = false;
  for (std::size_t p = 1; 3 * p <= n; ++p) {
    std::size_t start = n - p;
    while (start > 0 && window[start - 1] == window[start - 1 + p]) --start;
    if (n - start >= std::max(3 * p, n / 2)) {
      out.tail = BlockTail::Periodic;
      out.preperiod = out.shortest_preperiod = start;
      out.period.assign(window.begin() + static_cast<std::ptrdiff_t>(start),
                        window.begin() + static_cast<std::ptrdiff_t>(start + p));
      return out;
    }
  }
  out.tail = BlockTail::AperiodicAtHorizon;
  return out;
}

std::string lr_word(const ContinuedFraction& cf, std::size_t length) {
  std::string word;
  auto emit = [&](char letter, const Integer& run) {
    for (Integer i = 0; i < run && word.size() < length; ++i) word.push_back(letter);
  };
  if (cf.is_finite()) {
    std::vector<Integer> qs = cf.quotients();
    if (qs.size() % 2 == 1) {
      if (qs.back() >= 2) {
        qs.back() -= 1;
        qs.emplace_back(1);
      } else {
        qs.pop_back();
        if (qs.empty()) return word;
        qs.back() += 1;
      }
    }
    for (std::size_t k = 0; k < qs.size() && word.size() < length; ++k)
      emit(k % 2 == 0 ? 'L' : 'R', k == 0 ? Integer(qs[0] - 1) : qs[k]);
    return word;
  }
  for (std::size_t k = 1; word.size() < length; ++k) {
    auto a = cf.quotient(k);
    if (!a) break;
    emit(k % 2 == 1 ? 'L' : 'R', k == 1 ? Integer(*a - 1) : *a);
  }
  return word;
}

BlockSequence farey_incidence(std::size_t levels) {
  BlockSequence seq;
  seq.surface = SurfaceData::make(1, 1);
  seq.blocks.assign(levels, Block(3, 1));
  seq.tail = BlockTail::Periodic;
  seq.period = {Block(3, 1)};
  seq.certified = true;
  return seq;
}

bool dominated_by(const BlockSequence& a, const BlockSequence& b) {
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    auto other = b.block(i);
    if (!other || other->size() != a.blocks[i].size()) return false;
    for (std::size_t j = 0; j < other->size(); ++j)
      if (a.blocks[i][j] > (*other)[j]) return false;
  }
  return true;
}

}  // namespace qmk
