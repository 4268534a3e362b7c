#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "weilforge/ring.hpp"
#include "weilforge/weil.hpp"

namespace weilforge {

using Point = std::vector<Elem>;

inline constexpr std::uint64_t kDefaultSolutionBudget = std::uint64_t{1} << 22;

/// All common zeros in field^nvars, sorted lexicographically by code.
/// Throws BudgetExceeded when the search space is larger than `budget`.
std::vector<Point> enumerate_affine_solutions(const RingPtr& ring, const PolySystem& F,
                                              std::uint64_t budget = kDefaultSolutionBudget);

/// Common zeros in projective space, each normalized so that its first
/// nonzero coordinate is 1.
std::vector<Point> enumerate_projective_solutions(const RingPtr& ring, const PolySystem& F,
                                                  std::uint64_t budget = kDefaultSolutionBudget);

struct BijectionReport {
  std::uint64_t source_count = 0;
  std::uint64_t target_count = 0;
  bool bijective = false;
  /// A source point whose image is not a target solution, or a target point
  /// with no preimage.
  std::optional<Point> witness;
};

/// Compares V_K(F) with V_k(Weil(F)) through coordinate decomposition.
BijectionReport bijection_check(const WeilContext& ctx, const PolySystem& F,
                                std::uint64_t budget = kDefaultSolutionBudget);

}  // namespace weilforge
