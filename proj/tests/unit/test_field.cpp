#include <gtest/gtest.h>

#include <vector>

#include "weilforge/error.hpp"
#include "weilforge/field.hpp"
#include "weilforge/parse.hpp"

namespace wf = weilforge;

namespace {

wf::FieldPtr f8() { return wf::parse_field_spec("GF(2)[a]/(a^3+a+1)"); }

// Carry-less product of coordinate bit vectors, reduced mod a^3+a+1.
unsigned gf8_mul_bits(unsigned x, unsigned y) {
  unsigned r = 0;
  for (int i = 0; i < 3; ++i) {
    if (y >> i & 1) r ^= x << i;
  }
  for (int d = 4; d >= 3; --d) {
    if (r >> d & 1) r ^= 0b1011u << (d - 3);
  }
  return r;
}

unsigned bits_of(const wf::Field& K, wf::Elem x) {
  const auto c = K.decompose(x);
  return c[0] | c[1] << 1 | c[2] << 2;
}

}  // namespace

TEST(PrimeField, InverseIsExhaustive) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 101u}) {
    const auto F = wf::Field::prime(p);
    for (wf::Elem x = 1; x < p; ++x) EXPECT_EQ(F->mul(x, F->inv(x)), 1u) << "p=" << p << " x=" << x;
  }
}

TEST(PrimeField, ArithmeticMatchesIntegerResidues) {
  const auto F = wf::Field::prime(7);
  for (wf::Elem a = 0; a < 7; ++a) {
    for (wf::Elem b = 0; b < 7; ++b) {
      EXPECT_EQ(F->add(a, b), (a + b) % 7);
      EXPECT_EQ(F->mul(a, b), (a * b) % 7);
      EXPECT_EQ(F->sub(a, b), (a + 7 - b) % 7);
    }
  }
}

TEST(ExtensionField, F8HasPowerBasisAndRelation) {
  const auto K = f8();
  EXPECT_EQ(K->size(), 8u);
  EXPECT_EQ(K->degree(), 3u);
  const wf::Elem a = K->generator();
  EXPECT_EQ(K->pow(a, 3), K->add(a, 1));
  EXPECT_EQ(K->basis().front(), 1u);
}

TEST(ExtensionField, MultiplicationMatchesCarrylessOracle) {
  const auto K = f8();
  for (wf::Elem x = 0; x < 8; ++x) {
    for (wf::Elem y = 0; y < 8; ++y) {
      EXPECT_EQ(bits_of(*K, K->mul(x, y)), gf8_mul_bits(bits_of(*K, x), bits_of(*K, y)));
    }
  }
}

TEST(ExtensionField, DegreeOneIsBaseField) {
  const auto K = wf::parse_field_spec("GF(2)[a]/(a+1)");
  EXPECT_EQ(K->degree(), 1u);
  EXPECT_EQ(K->size(), 2u);
}

TEST(ExtensionField, ReducibleModulusIsRejected) {
  try {
    wf::parse_field_spec("GF(2)[a]/(a^2+1)");
    FAIL() << "expected ReducibleModulus";
  } catch (const wf::Error& e) {
    EXPECT_EQ(e.kind(), wf::ErrorKind::ReducibleModulus);
  }
}

TEST(ExtensionField, BasisValidation) {
  const auto base = wf::Field::prime(2);
  const auto K = f8();
  const wf::Elem a = K->generator();
  const wf::Elem a2 = K->mul(a, a);
  try {
    wf::Field::extension(base, {1, 1, 0, 1}, std::vector<wf::Elem>{1, a, K->add(1, a)});
    FAIL() << "expected DependentBasis";
  } catch (const wf::Error& e) {
    EXPECT_EQ(e.kind(), wf::ErrorKind::DependentBasis);
  }
  try {
    wf::Field::extension(base, {1, 1, 0, 1}, std::vector<wf::Elem>{a, a2, 1});
    FAIL() << "expected BasisNotUnital";
  } catch (const wf::Error& e) {
    EXPECT_EQ(e.kind(), wf::ErrorKind::BasisNotUnital);
  }
}

TEST(ExtensionField, DecomposeExamples) {
  const auto K = f8();
  const wf::Elem a = K->generator();
  EXPECT_EQ(K->decompose(K->mul(a, a)), (std::vector<wf::Elem>{0, 0, 1}));
  EXPECT_EQ(K->decompose(K->add(a, 1)), (std::vector<wf::Elem>{1, 1, 0}));
}

TEST(ExtensionField, DecomposeRoundTripAndLinearity) {
  const auto K = wf::parse_field_spec("GF(3)[a]/(a^2+1)");
  const auto& k = *K->base();
  EXPECT_EQ(K->size(), 9u);
  for (wf::Elem x = 0; x < 9; ++x) {
    EXPECT_EQ(K->recompose(K->decompose(x)), x);
    for (wf::Elem y = 0; y < 9; ++y) {
      const auto cx = K->decompose(x), cy = K->decompose(y), cs = K->decompose(K->add(x, y));
      for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(cs[j], k.add(cx[j], cy[j]));
    }
  }
}

TEST(ExtensionField, CustomBasisDecomposition) {
  const auto K = wf::parse_field_spec("GF(2)[a]/(a^3+a+1) basis = [1, a+1, a^2+a]");
  for (wf::Elem x = 0; x < 8; ++x) {
    const auto c = K->decompose(x);
    wf::Elem sum = 0;
    for (std::size_t j = 0; j < 3; ++j) sum = K->add(sum, K->mul(c[j], K->basis()[j]));
    EXPECT_EQ(sum, x);
  }
}

TEST(Frobenius, ExamplesAndGroupLaw) {
  const auto K = f8();
  const wf::Elem a = K->generator();
  EXPECT_EQ(K->frobenius(a, {1}), K->mul(a, a));
  EXPECT_EQ(K->frobenius(1, {1}), 1u);
  EXPECT_EQ(K->frobenius(0, {2}), 0u);
  for (wf::Elem x = 0; x < 8; ++x) {
    EXPECT_EQ(K->frobenius(K->frobenius(K->frobenius(x, {1}), {1}), {1}), x);
    for (unsigned i = 0; i < 3; ++i) {
      for (unsigned j = 0; j < 3; ++j) {
        EXPECT_EQ(K->frobenius(K->frobenius(x, {i}), {j}), K->frobenius(x, {(i + j) % 3}));
      }
    }
  }
  EXPECT_EQ(K->galois_group().size(), 3u);
}

TEST(Frobenius, AutomorphismLawsExhaustive) {
  for (const char* spec : {"GF(2)[a]/(a^3+a+1)", "GF(3)[a]/(a^2+1)", "GF(2)[a]/(a^4+a+1)", "GF(5)[a]/(a^2+2)"}) {
    const auto K = wf::parse_field_spec(spec);
    const auto q = K->base_size();
    for (const auto sigma : K->galois_group()) {
      for (wf::Elem x = 0; x < K->size(); ++x) {
        std::uint64_t e = 1;
        for (unsigned i = 0; i < sigma.power; ++i) e *= q;
        EXPECT_EQ(K->frobenius(x, sigma), K->pow(x, e));
        if (K->in_base(x)) EXPECT_EQ(K->frobenius(x, sigma), x);
        for (wf::Elem y = 0; y < K->size(); ++y) {
          EXPECT_EQ(K->frobenius(K->add(x, y), sigma), K->add(K->frobenius(x, sigma), K->frobenius(y, sigma)));
          EXPECT_EQ(K->frobenius(K->mul(x, y), sigma), K->mul(K->frobenius(x, sigma), K->frobenius(y, sigma)));
        }
      }
    }
  }
}

TEST(ExtensionField, InverseExhaustive) {
  const auto K = wf::parse_field_spec("GF(2)[a]/(a^8+a^4+a^3+a+1)");
  for (wf::Elem x = 1; x < K->size(); ++x) EXPECT_EQ(K->mul(x, K->inv(x)), 1u);
}

TEST(FieldSpec, RenderAndParseRoundTrip) {
  for (const char* spec : {"GF(2)", "GF(3)[a]/(a^2+1)", "GF(2)[a]/(a^3+a+1)"}) {
    const auto K = wf::parse_field_spec(spec);
    EXPECT_EQ(K->spec_string(), spec);
    for (wf::Elem x = 0; x < K->size(); ++x) EXPECT_EQ(wf::parse_element(K->render(x), K), x);
  }
}

TEST(FieldSpec, RendersAsPolynomialInGenerator) {
  const auto K = f8();
  const wf::Elem a = K->generator();
  EXPECT_EQ(K->render(K->add(K->mul(a, a), K->add(a, 1))), "a^2+a+1");
}

TEST(FieldSpec, MalformedSpecsReportFieldSpecError) {
  for (const char* bad : {"GF(4)", "GF(2)[a]/(", "Q", "GF(2)[a]/(a^2+a+1) basis = [a]"}) {
    try {
      wf::parse_field_spec(bad);
      ADD_FAILURE() << "accepted " << bad;
    } catch (const wf::Error&) {
    }
  }
}
