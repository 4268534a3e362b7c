#include "weilforge/solutions.hpp"

#include <algorithm>

#include "weilforge/error.hpp"

namespace weilforge {

namespace {

std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t budget) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (v > budget / base) {
      throw Error(ErrorKind::BudgetExceeded,
                  std::to_string(base) + "^" + std::to_string(exp) + " points exceed budget " + std::to_string(budget));
    }
    v *= base;
  }
  return v;
}

bool vanishes(const PolySystem& F, const Point& p) {
  return std::all_of(F.begin(), F.end(), [&](const Polynomial& f) { return evaluate(f, p) == 0; });
}

void check_ring(const RingPtr& ring, const PolySystem& F) {
  for (const auto& f : F) require_same_ring(*f.ring(), *ring);
}

}  // namespace

std::vector<Point> enumerate_affine_solutions(const RingPtr& ring, const PolySystem& F, std::uint64_t budget) {
  check_ring(ring, F);
  const std::uint64_t Q = ring->field()->size();
  const std::size_t m = ring->nvars();
  checked_power(Q, m, budget);
  std::vector<Point> out;
  Point p(m, 0);
  for (;;) {
    if (vanishes(F, p)) out.push_back(p);
    std::size_t i = m;
    while (i > 0 && p[i - 1] + 1 == Q) p[--i] = 0;
    if (i == 0) break;
    ++p[i - 1];
  }
  return out;
}

std::vector<Point> enumerate_projective_solutions(const RingPtr& ring, const PolySystem& F, std::uint64_t budget) {
  check_ring(ring, F);
  if (!is_homogeneous(F)) throw Error(ErrorKind::NotHomogeneous, "projective zeros need a homogeneous system");
  const std::uint64_t Q = ring->field()->size();
  const std::size_t m = ring->nvars();
  checked_power(Q, m, budget);
  std::vector<Point> out;
  // Points whose first nonzero coordinate sits at `lead`, walked in
  // lexicographic order of the free tail.
  for (std::size_t lead = m; lead-- > 0;) {
    Point p(m, 0);
    p[lead] = 1;
    for (;;) {
      if (vanishes(F, p)) out.push_back(p);
      std::size_t i = m;
      while (i > lead + 1 && p[i - 1] + 1 == Q) p[--i] = 0;
      if (i == lead + 1) break;
      ++p[i - 1];
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

BijectionReport bijection_check(const WeilContext& ctx, const PolySystem& F, std::uint64_t budget) {
  const PolySystem W = weil_restrict_system(ctx, F);
  const auto source = enumerate_affine_solutions(ctx.source, F, budget);
  const auto target = enumerate_affine_solutions(ctx.target, W, budget);
  const Field& K = *ctx.extension;
  const std::size_t m = ctx.source->nvars();
  const unsigned n = ctx.degree();

  BijectionReport rep;
  rep.source_count = source.size();
  rep.target_count = target.size();
  for (const auto& a : source) {
    Point image(m * n, 0);
    for (std::size_t i = 0; i < m; ++i) {
      const auto coords = K.decompose(a[i]);
      for (unsigned j = 0; j < n; ++j) image[ctx.target_index(i, j)] = coords[j];
    }
    if (!std::binary_search(target.begin(), target.end(), image)) {
      rep.witness = a;
      return rep;
    }
  }
  // Decomposition is injective, so equal counts make the map onto.
  if (source.size() != target.size()) {
    for (const auto& b : target) {
      Point pre(m, 0);
      for (std::size_t i = 0; i < m; ++i) {
        pre[i] = K.recompose(std::span<const Elem>(b).subspan(ctx.target_index(i, 0), n));
      }
      if (!std::binary_search(source.begin(), source.end(), pre)) {
        rep.witness = b;
        return rep;
      }
    }
  }
  rep.bijective = source.size() == target.size();
  return rep;
}

}  // namespace weilforge
