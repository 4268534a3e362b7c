#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "test_support.hpp"
#include "weilforge/error.hpp"
#include "weilforge/groebner.hpp"
#include "weilforge/hilbert.hpp"

namespace wf = weilforge;
using testsupport::poly;
using testsupport::ring;
using testsupport::system;

TEST(Buchberger, HandComputedSPolynomial) {
  const auto R = ring("GF(3)", {"x", "y"});
  const auto G = wf::buchberger_reduced_gb(system(R, {"x^2+y^2", "x*y"}));
  EXPECT_EQ(G.elements.size(), 3u);
  for (const char* g : {"x^2+y^2", "x*y", "y^3"}) {
    EXPECT_NE(std::find(G.elements.begin(), G.elements.end(), poly(R, g)), G.elements.end()) << g;
  }
  EXPECT_EQ(G.max_degree(), 3u);
  EXPECT_EQ(wf::max_gb_deg(system(R, {"x^2+y^2", "x*y"})), 3u);
}

TEST(Buchberger, CoprimeLeadingTermsAreAlreadyABasis) {
  const auto R = ring("GF(2)", {"x", "y"});
  const auto F = system(R, {"x^2", "y^2"});
  EXPECT_TRUE(wf::is_groebner(F));
  const auto G = wf::buchberger_reduced_gb(F);
  EXPECT_EQ(G.elements.size(), 2u);
  EXPECT_EQ(wf::max_gb_deg(F), 2u);
}

TEST(Buchberger, ZeroAndUnitIdeals) {
  const auto R = ring("GF(5)", {"x", "y"});
  EXPECT_TRUE(wf::buchberger_reduced_gb(R, {wf::Polynomial(R)}).is_zero_ideal());
  EXPECT_TRUE(wf::buchberger_reduced_gb(system(R, {"x*y+1", "x"})).is_unit_ideal());
}

TEST(Buchberger, IsGroebnerDetectsMissingSPolynomial) {
  const auto R = ring("GF(3)", {"x", "y"});
  EXPECT_FALSE(wf::is_groebner(system(R, {"x^2+y^2", "x*y"})));
}

TEST(Buchberger, ReducedBasisInvariants) {
  std::mt19937 rng(17);
  for (const char* field : {"GF(2)", "GF(3)", "GF(2)[a]/(a^2+a+1)"}) {
    const auto R = ring(field, {"x", "y", "z"});
    for (int i = 0; i < 15; ++i) {
      wf::PolySystem F;
      for (int k = 0; k < 3; ++k) F.push_back(testsupport::random_poly(R, rng, 2, 4));
      const auto G = wf::buchberger_reduced_gb(R, F);
      EXPECT_TRUE(wf::is_groebner(G.elements));
      for (const auto& f : F) EXPECT_TRUE(wf::normal_form(f, G).is_zero());
      for (std::size_t a = 0; a < G.elements.size(); ++a) {
        EXPECT_EQ(G.elements[a].leading_coeff(), 1u);
        for (std::size_t b = 0; b < G.elements.size(); ++b) {
          if (a == b) continue;
          for (const auto& t : G.elements[b].terms()) EXPECT_FALSE(G.elements[a].leading_monomial().divides(t.mono));
        }
      }

      // Permuting and rescaling the input leaves the reduced basis unchanged.
      auto shuffled = F;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      for (auto& f : shuffled) f = f.scaled(static_cast<wf::Elem>(R->field()->size() - 1));
      EXPECT_EQ(wf::buchberger_reduced_gb(R, shuffled), G);
    }
  }
}

TEST(NormalForm, Examples) {
  const auto R = ring("GF(3)", {"x", "y"});
  const auto G = wf::buchberger_reduced_gb(system(R, {"x^2+y^2", "x*y"}));
  EXPECT_TRUE(wf::normal_form(poly(R, "x^2*y"), G).is_zero());
  const auto H = wf::buchberger_reduced_gb(system(R, {"x"}));
  EXPECT_EQ(wf::normal_form(poly(R, "y^2"), H), poly(R, "y^2"));
  for (const auto& g : G.elements) EXPECT_TRUE(wf::normal_form(g, G).is_zero());
}

TEST(NormalForm, LinearAndMultiplicative) {
  std::mt19937 rng(4);
  const auto R = ring("GF(3)", {"x", "y", "z"});
  const auto G = wf::buchberger_reduced_gb(system(R, {"x^2-y*z", "y^2+x*z+1", "z^3-x"}));
  for (int i = 0; i < 30; ++i) {
    const auto f = testsupport::random_poly(R, rng, 4, 5);
    const auto g = testsupport::random_poly(R, rng, 4, 5);
    EXPECT_EQ(wf::normal_form(f + g, G), wf::normal_form(f, G) + wf::normal_form(g, G));
    EXPECT_EQ(wf::normal_form(f * g, G), wf::normal_form(wf::normal_form(f, G) * wf::normal_form(g, G), G));
    const auto r = wf::normal_form(f, G);
    for (const auto& t : r.terms()) {
      for (const auto& lm : G.leading_monomials()) EXPECT_FALSE(lm.divides(t.mono));
    }
  }
}

TEST(InitialIdeal, MinimalGeneratorsDoNotDivideEachOther) {
  std::mt19937 rng(6);
  const auto R = ring("GF(2)", {"x", "y", "z", "w"});
  for (int i = 0; i < 10; ++i) {
    wf::PolySystem F;
    for (int k = 0; k < 3; ++k) F.push_back(testsupport::random_poly(R, rng, 2, 4, true));
    const auto J = wf::initial_ideal(wf::buchberger_reduced_gb(R, F));
    for (std::size_t a = 0; a < J.generators.size(); ++a) {
      for (std::size_t b = 0; b < J.generators.size(); ++b) {
        if (a != b) EXPECT_FALSE(J.generators[a].divides(J.generators[b]));
      }
    }
  }
}

TEST(Saturation, ByLastVariable) {
  const auto R = ring("GF(2)", {"x", "y"});
  // y^2 lies in the ideal, so 1 lies in the saturation.
  EXPECT_TRUE(wf::saturate_by_variable(wf::buchberger_reduced_gb(system(R, {"x*y", "y^2"})), 1).is_unit_ideal());
  const auto sat = wf::saturate_by_variable(wf::buchberger_reduced_gb(system(R, {"x*y", "x^2*y^3"})), 1);
  EXPECT_EQ(sat, wf::buchberger_reduced_gb(system(R, {"x"})));

  const auto Ryx = ring("GF(2)", {"y", "x"});
  EXPECT_TRUE(wf::saturate_by_variable(wf::buchberger_reduced_gb(system(Ryx, {"x^2"})), 1).is_unit_ideal());
  EXPECT_TRUE(wf::saturate_by_variable(wf::buchberger_reduced_gb(system(R, {"x^2", "y^2"})), 1).is_unit_ideal());
}

TEST(Saturation, RejectsWrongInputs) {
  const auto R = ring("GF(2)", {"x", "y"});
  EXPECT_THROW(wf::saturate_by_variable(wf::buchberger_reduced_gb(system(R, {"x*y+x"})), 1), wf::Error);
  EXPECT_THROW(wf::saturate_by_variable(wf::buchberger_reduced_gb(system(R, {"x*y"})), 0), wf::Error);
}

TEST(Saturation, IrrelevantIdealAndColon) {
  const auto R = ring("GF(3)", {"x", "y", "z"});
  // (x^2, xy) = (x) cap (x^2, y): the m-primary component disappears after saturation.
  const auto I = wf::buchberger_reduced_gb(system(R, {"x^2", "x*y", "x*z"}));
  EXPECT_EQ(wf::saturate_irrelevant(I), wf::buchberger_reduced_gb(system(R, {"x"})));
  EXPECT_EQ(wf::colon(I, poly(R, "x")), wf::buchberger_reduced_gb(system(R, {"x", "y", "z"})));
}

TEST(Intersection, MonomialIdealsByHand) {
  const auto R = ring("GF(2)", {"x", "y"});
  const auto I = wf::buchberger_reduced_gb(system(R, {"x^2"}));
  const auto J = wf::buchberger_reduced_gb(system(R, {"x*y", "y^3"}));
  EXPECT_EQ(wf::intersect(I, J), wf::buchberger_reduced_gb(system(R, {"x^2*y"})));
}

TEST(GenericCoordinates, Examples) {
  const auto R = ring("GF(2)", {"x_1", "x_2"});
  EXPECT_TRUE(wf::is_generic_coordinates(wf::buchberger_reduced_gb(system(R, {"x_1^2", "x_2^3"}))).generic);
  const auto good = wf::is_generic_coordinates(wf::buchberger_reduced_gb(system(R, {"x_1"})));
  EXPECT_TRUE(good.generic);
  EXPECT_EQ(good.dimension, 1u);
  EXPECT_EQ(good.field, "GF(2)");
  EXPECT_FALSE(wf::is_generic_coordinates(wf::buchberger_reduced_gb(system(R, {"x_2"}))).generic);
}

TEST(GenericCoordinates, RegularLastVariableLeavesNoGeneratorDivisibleByIt) {
  std::mt19937 rng(31);
  const auto R = ring("GF(3)", {"x", "y", "z", "w"});
  int seen = 0;
  for (int i = 0; i < 20; ++i) {
    wf::PolySystem F;
    for (int k = 0; k < 2; ++k) F.push_back(testsupport::random_poly(R, rng, 2, 5, true));
    const auto G = wf::buchberger_reduced_gb(R, F);
    if (G.is_zero_ideal() || wf::colon(G, poly(R, "w")) != G) continue;
    ++seen;
    for (const auto& lm : G.leading_monomials()) EXPECT_EQ(lm[3], 0u);
  }
  EXPECT_GT(seen, 0);
}

TEST(Buchberger, DegreeCapFailsLoudly) {
  const auto R = ring("GF(2)", {"x", "y", "z"});
  wf::GbOptions opts;
  opts.degree_cap = 3;
  try {
    wf::buchberger_reduced_gb(system(R, {"x^3+y^2*z", "x*y^2+z^3", "y^4+x*z^3"}), opts);
    FAIL() << "expected DegreeCapExceeded";
  } catch (const wf::Error& e) {
    EXPECT_EQ(e.kind(), wf::ErrorKind::DegreeCapExceeded);
  }
}
