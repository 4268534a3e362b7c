#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "weilforge/groebner.hpp"
#include "weilforge/hilbert.hpp"

namespace weilforge {

/// Quantities of R/I for a homogeneous ideal I given by its reduced basis.
HilbertSeries hilbert_series(const GroebnerBasis& I);
std::int64_t hilbert_function(const GroebnerBasis& I, unsigned d);
std::size_t krull_dimension(const GroebnerBasis& I);
/// Throws ImproperIdeal when 1 is in I.
std::int64_t multiplicity(const GroebnerBasis& I);

/// Least d with HF of R/(F^top) zero at d. Throws NotZeroDimensionalTop when
/// R/(F^top) is not Artinian.
unsigned degree_of_regularity(const PolySystem& F, const GbOptions& opts = {});

/// Graded Betti numbers of R/I over R.
struct BettiTable {
  std::size_t nvars = 0;
  /// Largest internal degree j examined.
  unsigned cap = 0;
  /// Every j > cap is known to vanish.
  bool closed = false;
  /// Nonzero entries keyed by (i, j).
  std::map<std::pair<unsigned, unsigned>, std::uint64_t> entries;

  std::uint64_t at(unsigned i, unsigned j) const;
  /// Rows j - i, columns i, like Macaulay2's `betti`.
  std::string render() const;
  std::string to_json() const;
};

struct BettiOptions {
  /// Highest internal degree the computation may examine.
  unsigned cap = 40;
  /// Seed for the random linear forms tried as non-zerodivisors.
  std::uint64_t seed = 0x5eed;
  /// Random linear forms tried per variable removed.
  unsigned attempts = 8;
  GbOptions groebner;
};

/// Koszul homology over standard-monomial bases. Throws CapTooSmall when the
/// degrees that may carry syzygies run past `cap`.
BettiTable betti_table(const GroebnerBasis& I, const BettiOptions& opts = {});

struct HomologicalInvariants {
  int reg_quotient = 0;
  int reg_ideal = 1;
  unsigned projective_dimension = 0;
  std::size_t dimension = 0;
  std::size_t height = 0;
  std::uint64_t minimal_generators = 0;
  bool cohen_macaulay = false;
  bool complete_intersection = false;
};

/// Throws OpenTable for a table that is not closed, ImproperIdeal for (1).
HomologicalInvariants derive_homological_invariants(const BettiTable& B, const GroebnerBasis& I);

/// sum_i (-1)^i beta_{i,j} against the coefficients of HS * (1-z)^m.
bool alternating_sum_identity(const BettiTable& B, const HilbertSeries& hs);

/// HS of R/(I + L) equals (1-z)^|L| HS of R/I. L must be linear forms.
bool linear_regular_sequence_check(const GroebnerBasis& I, const PolySystem& L, const GbOptions& opts = {});

}  // namespace weilforge
