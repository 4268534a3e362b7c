#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "test_support.hpp"
#include "weilforge/weil.hpp"

namespace wf = weilforge;
using testsupport::poly;
using testsupport::ring;

namespace {

const char* kF8 = "GF(2)[a]/(a^3+a+1)";

// Coordinates of a point of K^m in k^{nm}, variable-major.
std::vector<wf::Elem> flatten(const wf::Field& K, const std::vector<wf::Elem>& a) {
  std::vector<wf::Elem> out;
  for (auto x : a) {
    for (auto c : K.decompose(x)) out.push_back(c);
  }
  return out;
}

}  // namespace

TEST(Weil, PublishedHomogenizedExample) {
  const auto R = ring(kF8, {"x", "y"});
  const auto ctx = wf::make_weil_context(R->with_homogenizing("t"));
  const auto g = wf::weil_restrict_poly(ctx, poly(ctx.source, "y^2+x*y+a*x*t+a^2*t^2"));
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g[0], poly(ctx.target, "y_1^2+x_1*y_1+x_2*y_3+x_3*y_2+x_1*t3+x_2*t2+x_3*t1+x_3*t3+t3^2"));
  EXPECT_EQ(g[1], poly(ctx.target,
                       "y_3^2+x_1*y_2+x_2*y_1+x_2*y_3+x_3*y_2+x_3*y_3+x_1*t1+x_1*t3+x_2*t2+x_2*t3+x_3*t1+x_3*t2+"
                       "x_3*t3+t2^2"));
  EXPECT_EQ(g[2], poly(ctx.target,
                       "y_2^2+y_3^2+x_1*y_3+x_2*y_2+x_3*y_1+x_3*y_3+x_1*t2+x_2*t1+x_2*t3+x_3*t2+x_3*t3+t1^2+t2^2+t3^2"));
}

TEST(Weil, TargetRingLayout) {
  const auto R = ring(kF8, {"x", "y"});
  const auto ctx_t = wf::make_weil_context(R->with_homogenizing("t"));
  EXPECT_EQ(ctx_t.target->names(),
            (std::vector<std::string>{"x_1", "x_2", "x_3", "y_1", "y_2", "y_3", "t1", "t2", "t3"}));
  EXPECT_EQ(ctx_t.target->homogenizing_count(), 3u);
  EXPECT_EQ(wf::make_weil_context(ring(kF8, {"x1"})).target->name(1), "x1_2");
}

TEST(Weil, LinearVariable) {
  const auto ctx = wf::make_weil_context(ring(kF8, {"x"}));
  EXPECT_EQ(wf::weil_restrict_poly(ctx, poly(ctx.source, "x")),
            testsupport::system(ctx.target, {"x_1", "x_2", "x_3"}));
}

TEST(Weil, SquareOverF4ByHand) {
  const auto ctx = wf::make_weil_context(ring("GF(2)[w]/(w^2+w+1)", {"x"}));
  EXPECT_EQ(wf::weil_restrict_poly(ctx, poly(ctx.source, "x^2")),
            testsupport::system(ctx.target, {"x_1^2+x_2^2", "x_2^2"}));
}

TEST(Weil, SystemOrderAndSize) {
  const auto ctx = wf::make_weil_context(ring("GF(2)[a]/(a^2+a+1)", {"x1", "x2"}));
  EXPECT_EQ(wf::weil_restrict_system(ctx, testsupport::system(ctx.source, {"x1", "x2"})),
            testsupport::system(ctx.target, {"x1_1", "x1_2", "x2_1", "x2_2"}));
  EXPECT_TRUE(wf::weil_restrict_system(ctx, {}).empty());
}

TEST(Weil, ComponentsAgreeWithCoordinateEvaluation) {
  std::mt19937 rng(99);
  for (const char* field : {"GF(2)[a]/(a^2+a+1)", kF8, "GF(3)[a]/(a^2+1)"}) {
    const auto R = ring(field, {"x", "y"});
    const auto& K = *R->field();
    const auto ctx = wf::make_weil_context(R);
    const auto points = testsupport::all_points(K.size(), 2);
    for (int i = 0; i < 8; ++i) {
      const auto f = testsupport::random_poly(R, rng, 3, 5);
      const auto W = wf::weil_restrict_poly(ctx, f);
      ASSERT_EQ(W.size(), K.degree());
      for (const auto& p : points) {
        const auto coords = K.decompose(wf::evaluate(f, p));
        const auto flat = flatten(K, p);
        for (std::size_t j = 0; j < W.size(); ++j) EXPECT_EQ(wf::evaluate(W[j], flat), coords[j]);
      }
    }
  }
}

TEST(Weil, DegreeAndLinearity) {
  std::mt19937 rng(3);
  const auto R = ring(kF8, {"x", "y", "z"});
  const auto ctx = wf::make_weil_context(R);
  const auto& k = *ctx.base;
  for (int i = 0; i < 30; ++i) {
    const auto f = testsupport::random_poly(R, rng, 3, 5);
    const auto g = testsupport::random_poly(R, rng, 3, 5);
    const auto Wf = wf::weil_restrict_poly(ctx, f), Wg = wf::weil_restrict_poly(ctx, g);
    const auto Wsum = wf::weil_restrict_poly(ctx, f + g);
    unsigned top = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_EQ(Wsum[j], Wf[j] + Wg[j]);
      if (!Wf[j].is_zero()) top = std::max(top, Wf[j].degree());
    }
    if (!f.is_zero()) EXPECT_EQ(top, f.degree());
    for (wf::Elem c = 0; c < k.size(); ++c) {
      const auto Wc = wf::weil_restrict_poly(ctx, f.scaled(c));
      for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(Wc[j], wf::Polynomial(Wf[j]).scaled(c));
    }
  }
}

TEST(Weil, DegreeOneExtensionIsRenaming) {
  const auto R = ring("GF(3)[a]/(a+1)", {"x", "y"});
  const auto ctx = wf::make_weil_context(R);
  const auto W = wf::weil_restrict_poly(ctx, poly(R, "x^2+2*x*y+1"));
  ASSERT_EQ(W.size(), 1u);
  EXPECT_EQ(W[0], poly(ctx.target, "x_1^2+2*x_1*y_1+1"));
}

TEST(Weil, HomogenizingVariableSplitsIntoTs) {
  std::mt19937 rng(8);
  const auto R = ring("GF(2)[a]/(a^2+a+1)", {"x", "y"});
  const auto ctx_t = wf::make_weil_context(R->with_homogenizing("t"));
  for (int i = 0; i < 10; ++i) {
    const auto fh = wf::homogenize(testsupport::random_poly(R, rng, 2, 4), ctx_t.source);
    const auto with_t = wf::weil_restrict_system(ctx_t, {fh, poly(ctx_t.source, "t")});
    auto expected = wf::weil_restrict_system(ctx_t, {fh});
    for (const char* t : {"t1", "t2"}) expected.push_back(poly(ctx_t.target, t));
    EXPECT_EQ(with_t, expected);
  }
}

TEST(FieldEquations, Instances) {
  const auto R2 = ring("GF(2)", {"x_1", "x_2"});
  EXPECT_EQ(wf::field_equations(R2, 2), testsupport::system(R2, {"x_1^2+x_1", "x_2^2+x_2"}));
  const auto R3 = ring("GF(3)", {"x_1"});
  EXPECT_EQ(wf::field_equations(R3, 3), testsupport::system(R3, {"x_1^3-x_1"}));
}

TEST(GaloisConjugate, Examples) {
  const auto R = ring(kF8, {"x", "y"});
  const auto f = poly(R, "y^2+x*y+a*x+a^2");
  EXPECT_EQ(wf::galois_conjugate_poly(poly(R, "a*x"), {1}), poly(R, "a^2*x"));
  EXPECT_EQ(wf::galois_conjugate_poly(poly(R, "x^2+x*y+1"), {1}), poly(R, "x^2+x*y+1"));
  auto g = f;
  for (int i = 0; i < 3; ++i) g = wf::galois_conjugate_poly(g, {1});
  EXPECT_EQ(g, f);
  EXPECT_EQ(wf::galois_conjugate_poly(wf::galois_conjugate_poly(f, {1}), {2}), f);
}

TEST(PsiIsomorphism, HoldsForEveryAutomorphism) {
  const auto R = ring(kF8, {"x", "y"});
  const auto ctx = wf::make_weil_context(R);
  for (const char* text : {"y^2+x*y+a*x+a^2", "x", "x^2+y+1", "a^5*x*y^2+a*y"}) {
    const auto rep = wf::psi_iso_check(ctx, poly(R, text));
    EXPECT_EQ(rep.entries.size(), 3u);
    EXPECT_TRUE(rep.holds()) << text;
  }
  EXPECT_TRUE(wf::conjugate_basis_matrix_invertible(*R->field()));
}

TEST(HomogCompat, PublishedPairing) {
  const auto R = ring(kF8, {"x", "y"});
  const auto ctx = wf::make_weil_context(R);
  const auto rep = wf::weil_homog_compat_check(ctx, {poly(R, "y^2+x*y+a*x+a^2")});
  EXPECT_FALSE(rep.vacuous);
  EXPECT_TRUE(rep.holds);
  ASSERT_EQ(rep.pairs.size(), 3u);
  const auto& S = rep.pairs[0].second.ring();
  EXPECT_EQ(rep.pairs[0].second, poly(S, "y_1^2+x_1*y_1+x_2*y_3+x_3*y_2+x_3*t"));
  EXPECT_EQ(rep.pairs[1].second, poly(S, "y_3^2+x_1*y_2+x_2*y_1+x_2*y_3+x_3*y_2+x_3*y_3+x_1*t+x_3*t"));
  EXPECT_EQ(rep.pairs[2].second, poly(S, "y_2^2+y_3^2+x_1*y_3+x_2*y_2+x_3*y_1+x_3*y_3+x_2*t+t^2"));
  for (const auto& [lhs, rhs] : rep.pairs) EXPECT_EQ(lhs, rhs);
}

TEST(HomogCompat, HomogeneousSystemIsVacuous) {
  const auto R = ring(kF8, {"x", "y"});
  const auto rep = wf::weil_homog_compat_check(wf::make_weil_context(R), {poly(R, "x^2+a*y^2")});
  EXPECT_TRUE(rep.vacuous);
  EXPECT_TRUE(rep.holds);
}

TEST(HomogCompat, RandomInhomogeneousOverF4) {
  std::mt19937 rng(25);
  const auto R = ring("GF(2)[a]/(a^2+a+1)", {"x", "y", "z"});
  const auto ctx = wf::make_weil_context(R);
  for (int i = 0; i < 25; ++i) {
    wf::PolySystem F{testsupport::random_poly(R, rng, 3, 6), testsupport::random_poly(R, rng, 2, 4)};
    F.erase(std::remove_if(F.begin(), F.end(), [](const wf::Polynomial& f) { return f.is_zero(); }), F.end());
    EXPECT_TRUE(wf::weil_homog_compat_check(ctx, F).holds);
  }
}

TEST(TopCompat, PublishedExampleAndRandom) {
  const auto R = ring(kF8, {"x", "y"});
  const auto ctx = wf::make_weil_context(R);
  const wf::PolySystem F{poly(R, "y^2+x*y+a*x+a^2")};
  EXPECT_TRUE(wf::weil_top_compat_check(ctx, F).holds);
  EXPECT_EQ(wf::weil_restrict_system(ctx, wf::top_parts(F)), wf::weil_then_top(ctx, F));

  std::mt19937 rng(77);
  for (int i = 0; i < 25; ++i) {
    const auto f = testsupport::random_poly(R, rng, 3, 6);
    if (f.is_zero()) continue;
    EXPECT_TRUE(wf::weil_top_compat_check(ctx, {f}).holds);
  }
}
