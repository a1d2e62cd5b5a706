#include "qmk/ktheory.hpp"

#include <algorithm>

namespace qmk {

bool CorrespondenceReport::consistent() const {
  return std::all_of(checks.begin(), checks.end(), [](const CorrespondenceCheck& c) { return c.holds; });
}

namespace {

CorrespondenceReport build(CorrespondenceReport r, const SurfaceData& surface, std::size_t block_count) {
  if (surface.m() != 1)
    throw std::invalid_argument("classification_correspondence: needs an m = 1 surface, got m = " +
                                std::to_string(surface.m()));
  r.blocks = detect_block_period(encode_blocks(r.cf, surface, block_count), block_count);
  std::size_t truncation = std::max<std::size_t>(1, r.blocks.blocks.size());
  if (r.blocks.tail == BlockTail::Periodic) truncation = std::max(truncation, r.blocks.preperiod + 4 * r.blocks.period.size());
  r.k0 = k0_blocks(r.blocks, truncation);

  const bool finite_blocks = r.blocks.tail == BlockTail::Finite;
  const bool periodic_blocks = r.blocks.tail == BlockTail::Periodic && r.blocks.certified;
  const bool aperiodic_blocks = r.blocks.tail == BlockTail::AperiodicAtHorizon;
  switch (r.domain) {
    case DomainClass::Rational:
      r.checks.push_back({"rational => finite block sequence", finite_blocks});
      r.checks.push_back({"finite block sequence => dyadic image", r.image.image == ImageClass::DyadicRational});
      break;
    case DomainClass::QuadraticIrrational:
      r.checks.push_back({"quadratic irrational => block-periodic", periodic_blocks});
      r.checks.push_back({"block-periodic => non-dyadic rational image", r.image.image == ImageClass::NonDyadicRational});
      break;
    case DomainClass::OtherIrrational:
      r.checks.push_back({"declared aperiodic => aperiodic blocks", aperiodic_blocks});
      r.checks.push_back({"aperiodic blocks => irrational image", r.image.image == ImageClass::Irrational});
      break;
    case DomainClass::Unknown:
      r.checks.push_back({"expansion type decided", false});
      break;
  }
  if (r.image.image_value && r.image.image == ImageClass::DyadicRational)
    r.checks.push_back({"image is dyadic", is_dyadic(*r.image.image_value)});
  if (r.image.image_value && r.image.image == ImageClass::NonDyadicRational)
    r.checks.push_back({"image is not dyadic", !is_dyadic(*r.image.image_value)});
  return r;
}

}  // namespace

CorrespondenceReport classification_correspondence(const ExactNumber& x, const SurfaceData& surface,
                                                   std::size_t block_count) {
  CorrespondenceReport r;
  r.input = x.to_string();
  r.cf = cf_expand(x);
  r.image = classify(x);
  r.domain = r.image.domain;
  return build(std::move(r), surface, block_count);
}

CorrespondenceReport classification_correspondence(const ContinuedFraction& cf, const SurfaceData& surface,
                                                   std::size_t block_count) {
  CorrespondenceReport r;
  r.input = cf.to_string();
  r.cf = cf;
  r.image = classify(cf, block_count);
  r.domain = r.image.domain;
  return build(std::move(r), surface, block_count);
}

}  // namespace qmk
