#pragma once

// Smith normal form, cokernels and the K0 computations built on them.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qmk/blockcode.hpp"
#include "qmk/jacobiperron.hpp"
#include "qmk/matrix.hpp"
#include "qmk/minkowski.hpp"

namespace qmk {

struct SmithForm {
  IntegerMatrix U;
  IntegerMatrix S;
  IntegerMatrix V;
};

/// U*A*V = S with U, V unimodular and S diagonal, non-negative, d1 | d2 | ...
/// A nonzero step budget bounds the elementary operations; exceeding it
/// throws std::runtime_error.
SmithForm smith_normal_form(const IntegerMatrix& a, std::size_t step_budget = 0);

/// Z^free_rank + Z/d1 + ... + Z/dr with 2 <= d1 | d2 | ... | dr.
struct AbelianGroupPresentation {
  std::size_t free_rank = 0;
  std::vector<Integer> invariant_factors;

  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  bool is_torsion() const { return free_rank == 0; }
  /// Nullopt for infinite groups.
  std::optional<Integer> order() const;
  /// "0", "Z/2", "Z^2 + Z/2 + Z/4".
  std::string to_string() const;

  friend bool operator==(const AbelianGroupPresentation&, const AbelianGroupPresentation&) = default;
};

AbelianGroupPresentation direct_sum(const AbelianGroupPresentation& a, const AbelianGroupPresentation& b);

/// Z^rows / A Z^cols.
AbelianGroupPresentation cokernel(const IntegerMatrix& a);
std::size_t matrix_rank(const IntegerMatrix& a);

struct CuntzKriegerK0 {
  AbelianGroupPresentation k0;
  std::size_t k1_rank = 0;
  bool permutation = false;
  bool irreducible = false;
  bool primitive = false;
  /// Irreducible and not a permutation matrix.
  bool hypothesis_holds() const { return irreducible && !permutation; }
};

/// K0 = coker(1 - A^T), K1 rank = nullity of (1 - A^T). A must be square
/// with 0/1 entries (std::invalid_argument otherwise).
CuntzKriegerK0 k0_cuntz_krieger(const IntegerMatrix& a);

/// The L x L matrix whose every column is the block.
IntegerMatrix block_matrix(const Block& block);

struct K0Blocks {
  AbelianGroupPresentation group;
  /// |1 - s_i| with s_i the number of ones in block i.
  std::vector<Integer> block_factors;
  /// Blocks with s_i = 1 contribute a free summand.
  std::vector<bool> degenerate;
  std::size_t blocks_used = 0;
};

/// Direct sum over the first `truncation` blocks of coker(I - B_i^T), with
/// B_i the block matrix. Uses fewer blocks when a finite sequence ends.
K0Blocks k0_blocks(const BlockSequence& seq, std::size_t truncation);
/// Periodic sequences: truncates after the preperiod plus `periods` periods.
K0Blocks k0_blocks_by_periods(const BlockSequence& seq, std::size_t periods);

/// Z + Z*theta_1 + ... + Z*theta_m with the generators reduced mod Z.
struct Lattice {
  std::vector<Coordinate> generators;
  std::string to_string() const;
};

Lattice lattice_lambda(const RealVector& theta);

/// Decided when every generator is rational (both sides are (1/N)Z) or
/// m = 1 with quadratic generators (theta' = +-theta mod Z). Nullopt otherwise.
std::optional<bool> lattice_equal(const Lattice& a, const Lattice& b);

struct CorrespondenceCheck {
  std::string name;
  bool holds = false;
};

struct CorrespondenceReport {
  std::string input;
  ContinuedFraction cf;
  DomainClass domain = DomainClass::Unknown;
  BlockSequence blocks;
  K0Blocks k0;
  Classification image;
  std::vector<CorrespondenceCheck> checks;
  bool consistent() const;
};

/// Links the expansion type of x, the block sequence on an m = 1 surface,
/// truncated K0 of the blocks, and the arithmetic type of ?(x).
CorrespondenceReport classification_correspondence(const ExactNumber& x, const SurfaceData& surface,
                                                   std::size_t block_count = 64);
CorrespondenceReport classification_correspondence(const ContinuedFraction& cf, const SurfaceData& surface,
                                                   std::size_t block_count = 64);

}  // namespace qmk
