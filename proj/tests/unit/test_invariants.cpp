#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "weilforge/error.hpp"
#include "weilforge/groebner.hpp"
#include "weilforge/hilbert.hpp"
#include "weilforge/invariants.hpp"
#include "weilforge/macaulay.hpp"
#include "weilforge/weil.hpp"

namespace wf = weilforge;
using testsupport::poly;
using testsupport::ring;
using testsupport::system;

namespace {

wf::GroebnerBasis gb(const wf::RingPtr& R, const std::vector<std::string>& gens) {
  return wf::buchberger_reduced_gb(R, system(R, gens));
}

// Monomials of degree d outside the ideal, by enumeration.
std::int64_t brute_force_hf(const std::vector<wf::Monomial>& gens, std::size_t nvars, unsigned d) {
  std::int64_t count = 0;
  for (const auto& m : wf::monomials_of_degree(nvars, d)) {
    bool inside = false;
    for (const auto& g : gens) inside = inside || g.divides(m);
    count += !inside;
  }
  return count;
}

}  // namespace

TEST(HilbertFunction, Examples) {
  const auto R = ring("GF(2)", {"x", "y"});
  EXPECT_EQ(wf::hilbert_function(wf::buchberger_reduced_gb(R, {wf::Polynomial(R)}), 3), 4);
  const auto I = gb(R, {"x^2", "x*y", "y^3"});
  EXPECT_EQ(wf::hilbert_function(I, 2), 1);
  EXPECT_EQ(wf::hilbert_function(I, 3), 0);
}

TEST(HilbertSeries, Examples) {
  const auto R = ring("GF(3)", {"x", "y"});
  const auto free = wf::hilbert_series(wf::buchberger_reduced_gb(R, {wf::Polynomial(R)}));
  EXPECT_EQ(free.dimension, 2u);
  EXPECT_EQ(free.reduced, (wf::ZPoly{1}));

  const auto ci = wf::hilbert_series(gb(R, {"x^2", "y^3"}));
  EXPECT_EQ(ci.dimension, 0u);
  EXPECT_EQ(ci.reduced, wf::zpoly_mul({1, 1}, {1, 1, 1}));
  EXPECT_EQ(ci.multiplicity(), 6);

  const auto I = gb(R, {"x^2", "x*y", "y^3"});
  const auto hs = wf::hilbert_series(I);
  EXPECT_EQ(hs.reduced, (wf::ZPoly{1, 2, 1}));
  for (unsigned d = 0; d <= 5; ++d) EXPECT_EQ(hs.coefficient(d), wf::hilbert_function(I, d));
}

TEST(HilbertSeries, InhomogeneousInputIsRejected) {
  const auto R = ring("GF(2)", {"x", "y"});
  try {
    wf::hilbert_series(gb(R, {"x^2+y"}));
    FAIL() << "expected NotHomogeneous";
  } catch (const wf::Error& e) {
    EXPECT_EQ(e.kind(), wf::ErrorKind::NotHomogeneous);
  }
}

TEST(HilbertSeries, MonomialRecursionMatchesBruteForce) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t nvars = 2 + rng() % 4;
    std::vector<wf::Monomial> gens;
    const int count = 1 + static_cast<int>(rng() % 6);
    for (int g = 0; g < count; ++g) {
      std::vector<unsigned> e(nvars);
      for (auto& x : e) x = rng() % 4;
      wf::Monomial m(nvars, e);
      if (!m.is_one()) gens.push_back(m);
    }
    const auto J = wf::MonomialIdeal::minimalize(nvars, gens);
    const auto hs = wf::hilbert_series(J);
    for (unsigned d = 0; d <= 8; ++d) {
      EXPECT_EQ(hs.coefficient(d), brute_force_hf(J.generators, nvars, d)) << "trial " << trial << " d " << d;
      EXPECT_EQ(static_cast<std::int64_t>(wf::count_standard_monomials(J, d)), brute_force_hf(J.generators, nvars, d));
    }
  }
}

TEST(KrullDimension, Examples) {
  const auto R = ring("GF(2)[a]/(a^2+a+1)", {"x_1", "x_2"});
  EXPECT_EQ(wf::krull_dimension(wf::buchberger_reduced_gb(R, {wf::Polynomial(R)})), 2u);
  EXPECT_EQ(wf::krull_dimension(gb(R, {"x_1"})), 1u);
  const auto ctx = wf::make_weil_context(R);
  const auto W = wf::weil_restrict_system(ctx, system(R, {"x_1"}));
  EXPECT_EQ(wf::krull_dimension(wf::buchberger_reduced_gb(ctx.target, W)), 2u);
}

TEST(Multiplicity, Examples) {
  const auto R = ring("GF(2)[a]/(a^2+a+1)", {"x", "y"});
  EXPECT_EQ(wf::multiplicity(gb(R, {"x^2", "y^3"})), 6);
  EXPECT_EQ(wf::multiplicity(wf::buchberger_reduced_gb(R, {wf::Polynomial(R)})), 1);
  const auto ctx = wf::make_weil_context(R);
  const auto W = wf::weil_restrict_system(ctx, system(R, {"x^2", "y^3"}));
  EXPECT_EQ(wf::multiplicity(wf::buchberger_reduced_gb(ctx.target, W)), 36);
  EXPECT_THROW(wf::multiplicity(gb(R, {"x", "y+1"})), wf::Error);
}

TEST(DegreeOfRegularity, Examples) {
  const auto R = ring("GF(3)[a]/(a^2+1)", {"x", "y"});
  EXPECT_EQ(wf::degree_of_regularity(system(R, {"x", "y"})), 1u);
  EXPECT_EQ(wf::degree_of_regularity(system(R, {"x^2", "y^2"})), 3u);
  const auto ctx = wf::make_weil_context(R);
  EXPECT_EQ(wf::degree_of_regularity(wf::weil_restrict_system(ctx, system(R, {"x^2", "y^2"}))), 5u);
  try {
    wf::degree_of_regularity(system(R, {"x*y"}));
    FAIL() << "expected NotZeroDimensionalTop";
  } catch (const wf::Error& e) {
    EXPECT_EQ(e.kind(), wf::ErrorKind::NotZeroDimensionalTop);
  }
}

TEST(Betti, LinearRegularSequence) {
  const auto R = ring("GF(2)", {"x", "y"});
  const auto B = wf::betti_table(gb(R, {"x", "y"}));
  EXPECT_TRUE(B.closed);
  EXPECT_EQ(B.at(0, 0), 1u);
  EXPECT_EQ(B.at(1, 1), 2u);
  EXPECT_EQ(B.at(2, 2), 1u);
  std::uint64_t total = 0;
  for (const auto& [ij, b] : B.entries) total += b;
  EXPECT_EQ(total, 4u);
  const auto inv = wf::derive_homological_invariants(B, gb(R, {"x", "y"}));
  EXPECT_EQ(inv.reg_ideal, 1);
  EXPECT_EQ(inv.projective_dimension, 2u);
  EXPECT_TRUE(inv.cohen_macaulay);
  EXPECT_TRUE(inv.complete_intersection);
}

TEST(Betti, NonCohenMacaulayExample) {
  const auto R = ring("GF(3)", {"x", "y"});
  const auto I = gb(R, {"x^2", "x*y"});
  const auto B = wf::betti_table(I);
  EXPECT_EQ(B.at(1, 2), 2u);
  EXPECT_EQ(B.at(2, 3), 1u);
  EXPECT_EQ(B.at(1, 3), 0u);
  const auto inv = wf::derive_homological_invariants(B, I);
  EXPECT_EQ(inv.reg_ideal, 2);
  EXPECT_EQ(inv.projective_dimension, 2u);
  EXPECT_EQ(inv.height, 1u);
  EXPECT_FALSE(inv.cohen_macaulay);
  EXPECT_FALSE(inv.complete_intersection);
  EXPECT_TRUE(wf::alternating_sum_identity(B, wf::hilbert_series(I)));
}

TEST(Betti, KoszulOfRegularSequence) {
  const auto R = ring("GF(2)", {"x", "y"});
  const auto I = gb(R, {"x^2", "y^3"});
  const auto B = wf::betti_table(I);
  EXPECT_EQ(B.at(1, 2), 1u);
  EXPECT_EQ(B.at(1, 3), 1u);
  EXPECT_EQ(B.at(2, 5), 1u);
  EXPECT_TRUE(wf::derive_homological_invariants(B, I).complete_intersection);
}

TEST(Betti, RedundantPresentationStillComplete) {
  const auto R = ring("GF(3)", {"x", "y", "z"});
  const auto I = gb(R, {"x^2", "y^2", "x^2+y^2", "x^2*z"});
  const auto inv = wf::derive_homological_invariants(wf::betti_table(I), I);
  EXPECT_EQ(inv.minimal_generators, 2u);
  EXPECT_TRUE(inv.complete_intersection);
}

TEST(Betti, WeilOfSquareHasShiftedRegularity) {
  const auto R = ring("GF(2)[a]/(a^2+a+1)", {"x_1", "x_2"});
  const auto ctx = wf::make_weil_context(R);
  const auto I = wf::buchberger_reduced_gb(ctx.target, wf::weil_restrict_system(ctx, system(R, {"x_1^2"})));
  EXPECT_EQ(wf::derive_homological_invariants(wf::betti_table(I), I).reg_ideal, 3);
}

TEST(Betti, SmallCapIsReported) {
  const auto R = ring("GF(2)", {"x", "y", "z"});
  wf::BettiOptions opts;
  opts.cap = 2;
  try {
    wf::betti_table(gb(R, {"x^3", "y^3", "z^3"}), opts);
    FAIL() << "expected CapTooSmall";
  } catch (const wf::Error& e) {
    EXPECT_EQ(e.kind(), wf::ErrorKind::CapTooSmall);
  }
}

TEST(Betti, AlternatingSumOnRandomIdeals) {
  std::mt19937 rng(10);
  for (const char* field : {"GF(2)", "GF(3)"}) {
    const auto R = ring(field, {"x", "y", "z", "w"});
    for (int i = 0; i < 12; ++i) {
      wf::PolySystem F;
      for (int k = 0; k < 3; ++k) F.push_back(testsupport::random_poly(R, rng, 2, 4, true));
      const auto I = wf::buchberger_reduced_gb(R, F);
      if (I.is_zero_ideal()) continue;
      const auto B = wf::betti_table(I);
      EXPECT_TRUE(wf::alternating_sum_identity(B, wf::hilbert_series(I)));
      const auto inv = wf::derive_homological_invariants(B, I);
      EXPECT_EQ(inv.dimension, wf::krull_dimension(I));
      EXPECT_LE(inv.projective_dimension, 4u);
      for (const auto& [ij, b] : B.entries) EXPECT_LE(ij.first, 4u);
    }
  }
}

TEST(LinearRegularSequence, Examples) {
  const auto R = ring("GF(2)", {"x", "y"});
  EXPECT_TRUE(wf::linear_regular_sequence_check(wf::buchberger_reduced_gb(R, {wf::Polynomial(R)}), system(R, {"x"})));
  EXPECT_FALSE(wf::linear_regular_sequence_check(gb(R, {"x*y"}), system(R, {"x"})));
  EXPECT_TRUE(wf::linear_regular_sequence_check(gb(R, {"x*y"}), system(R, {"x+y"})));
  EXPECT_THROW(wf::linear_regular_sequence_check(gb(R, {"x*y"}), system(R, {"x^2"})), wf::Error);
}

TEST(LinearRegularSequence, SourceAndTargetAgreeOnPublishedExample) {
  const auto R = ring("GF(2)[a]/(a^3+a+1)", {"x", "y"});
  const auto Rt = R->with_homogenizing("t");
  const auto fh = wf::homogenize(poly(R, "y^2+x*y+a*x+a^2"), Rt);
  const bool source = wf::linear_regular_sequence_check(wf::buchberger_reduced_gb(Rt, {fh}), system(Rt, {"t"}));
  const auto ctx = wf::make_weil_context(Rt);
  const auto W = wf::weil_restrict_system(ctx, {fh});
  const bool target =
      wf::linear_regular_sequence_check(wf::buchberger_reduced_gb(ctx.target, W), system(ctx.target, {"t1", "t2", "t3"}));
  EXPECT_TRUE(source);
  EXPECT_EQ(source, target);
}

TEST(HilbertSeries, TensorProductOfWeilPair) {
  std::mt19937 rng(55);
  const auto R = ring("GF(3)[a]/(a^2+1)", {"x", "y"});
  const auto ctx = wf::make_weil_context(R);
  for (int i = 0; i < 8; ++i) {
    wf::PolySystem F{testsupport::random_poly(R, rng, 2, 3, true), testsupport::random_poly(R, rng, 3, 3, true)};
    if (F[0].is_zero() || F[1].is_zero()) continue;
    const auto I = wf::buchberger_reduced_gb(R, F);
    const auto W = wf::buchberger_reduced_gb(ctx.target, wf::weil_restrict_system(ctx, F));
    EXPECT_EQ(wf::hilbert_series(W), wf::hs_power(wf::hilbert_series(I), 2));
    EXPECT_EQ(wf::krull_dimension(W), 2 * wf::krull_dimension(I));
  }
}
