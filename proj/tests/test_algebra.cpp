#include <random>

#include <gtest/gtest.h>

#include "incidence/algebra.hpp"
#include "oracle.hpp"

using namespace incidence;

namespace {

FIElement from_residues(const PosetPtr& p, const FieldDesc& f, const std::vector<std::int64_t>& v) {
  std::vector<Scalar> c;
  for (auto x : v) c.push_back(Scalar::from_int(f, x));
  return FIElement::from_coordinates(p, f, c);
}

std::vector<std::int64_t> residues_of(const FIElement& a) {
  std::vector<std::int64_t> out;
  for (const auto& s : a.coordinates()) out.push_back(s.residue());
  return out;
}

FIElement random_element(const PosetPtr& p, const FieldDesc& f, std::mt19937_64& rng, bool unit) {
  std::uniform_int_distribution<int> v(-4, 4);
  auto a = FIElement::zero(p, f);
  for (std::size_t k = 0; k < a.dimension(); ++k) {
    int x = v(rng);
    if (unit && k < p->size() && x == 0) x = 1;
    a[k] = f.is_finite() ? Scalar::from_int(f, x) : Scalar::from_rational(f, Rational(x, 1 + std::abs(v(rng))));
  }
  return a;
}

}  // namespace

TEST(FIElement, BasisAndIdentity) {
  auto p = share(Poset::chain(2));
  const auto f = FieldDesc::prime(3);
  auto delta = FIElement::identity(p, f);
  EXPECT_EQ(delta, FIElement::basis(p, f, 0, 0) + FIElement::basis(p, f, 1, 1));
  EXPECT_THROW(FIElement::basis(p, f, 1, 0), std::invalid_argument);
  EXPECT_EQ(FIElement::basis(p, f, 0, 1) * FIElement::basis(p, f, 0, 1), FIElement::zero(p, f));
  EXPECT_EQ(FIElement::basis(p, f, 0, 0) * FIElement::basis(p, f, 0, 1), FIElement::basis(p, f, 0, 1));
  EXPECT_EQ(FIElement::basis(p, f, 0, 1) * FIElement::basis(p, f, 0, 0), FIElement::zero(p, f));
  EXPECT_EQ(to_string(FIElement::zero(p, f)), "0");
  EXPECT_EQ(to_string(delta + Scalar::from_int(f, 2) * FIElement::basis(p, f, 0, 1)),
            "1*e[1] + 1*e[2] + 2*e[1,2]");
}

TEST(FIElement, MismatchedAlgebrasThrow) {
  auto p = share(Poset::chain(2));
  auto a = FIElement::identity(p, FieldDesc::prime(3));
  auto b = FIElement::identity(p, FieldDesc::prime(5));
  EXPECT_THROW(a + b, AlgebraMismatch);
  EXPECT_THROW(a * FIElement::identity(share(Poset::chain(3)), FieldDesc::prime(3)), AlgebraMismatch);
}

TEST(FIElement, DecompositionAndLevelSets) {
  auto p = share(Poset::chain(3));
  const auto f = FieldDesc::prime(5);
  auto a = from_residues(p, f, {2, 0, 2, 1, 3, 4});
  auto [dpart, rpart] = decompose(a);
  EXPECT_EQ(dpart + rpart, a);
  EXPECT_EQ(dpart, from_residues(p, f, {2, 0, 2, 0, 0, 0}));
  EXPECT_EQ(level_set(a, Scalar::from_int(f, 2)), Subset::of(3, {0, 2}));
  EXPECT_EQ(level_set(a, Scalar::zero(f)), Subset::of(3, {1}));
  EXPECT_FALSE(is_unit(a));
  EXPECT_THROW(invert(a), NotAUnit);
}

// Convolution against full-matrix multiplication on random posets.
TEST(AlgebraProperty, ConvolutionMatchesMatrixProduct) {
  std::mt19937_64 rng(99);
  const auto f = FieldDesc::prime(7);
  for (int trial = 0; trial < 150; ++trial) {
    auto p = share(oracle::random_poset(1 + trial % 6, 0.5, rng));
    oracle::Layout layout(*p);
    auto a = random_element(p, f, rng, false), b = random_element(p, f, rng, false);
    EXPECT_EQ(residues_of(a * b), oracle::mul_mod(layout, residues_of(a), residues_of(b), 7));
  }
  const auto qf = FieldDesc::rationals();
  for (int trial = 0; trial < 60; ++trial) {
    auto p = share(oracle::random_poset(1 + trial % 6, 0.5, rng));
    oracle::Layout layout(*p);
    auto a = random_element(p, qf, rng, false), b = random_element(p, qf, rng, false);
    std::vector<Rational> ra, rb;
    for (const auto& s : a.coordinates()) ra.push_back(s.to_rational());
    for (const auto& s : b.coordinates()) rb.push_back(s.to_rational());
    auto expected = oracle::mul_q(layout, ra, rb);
    auto got = a * b;
    for (std::size_t k = 0; k < got.dimension(); ++k) EXPECT_EQ(got[k].to_rational(), expected[k]);
  }
}

// Ring axioms exhaustively on the 2-chain over Z_2 and Z_3.
class RingAxioms : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(RingAxioms, Exhaustive2Chain) {
  auto p = share(Poset::chain(2));
  const auto f = FieldDesc::prime(GetParam());
  std::vector<FIElement> all;
  for_each_element(p, f, [&](const FIElement& a) { all.push_back(a); });
  ASSERT_EQ(all.size(), std::size_t(GetParam()) * GetParam() * GetParam());
  const auto delta = FIElement::identity(p, f);
  for (const auto& a : all) {
    EXPECT_EQ(a * delta, a);
    EXPECT_EQ(delta * a, a);
    for (const auto& b : all) {
      EXPECT_EQ(a + b, b + a);
      for (const auto& c : all) {
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a + b) * c, a * c + b * c);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(SmallFields, RingAxioms, ::testing::Values(2u, 3u));

TEST(AlgebraProperty, RingAxiomsRandomQ) {
  std::mt19937_64 rng(7);
  const auto f = FieldDesc::rationals();
  for (int trial = 0; trial < 100; ++trial) {
    auto p = share(oracle::random_poset(2 + trial % 5, 0.5, rng));
    auto a = random_element(p, f, rng, false), b = random_element(p, f, rng, false),
         c = random_element(p, f, rng, false);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}

// Units and inverses against exhaustive inverse search.
class UnitsExhaustive : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(UnitsExhaustive, TwoChain) {
  const auto q = GetParam();
  auto p = share(Poset::chain(2));
  const auto f = FieldDesc::prime(q);
  oracle::UnitTable table(*p, q);
  std::size_t i = 0, units = 0;
  const auto delta = FIElement::identity(p, f);
  for_each_element(p, f, [&](const FIElement& a) {
    ASSERT_EQ(residues_of(a), table.elements[i]);
    EXPECT_EQ(is_unit(a), bool(table.unit[i]));
    EXPECT_EQ(is_unit(a), is_unit(diagonal_part(a)));
    if (table.unit[i]) {
      ++units;
      auto inv = invert(a);
      EXPECT_EQ(residues_of(inv), table.elements[table.inverse[i]]);
      EXPECT_EQ(a * inv, delta);
      EXPECT_EQ(inv * a, delta);
    }
    ++i;
  });
  EXPECT_EQ(units, std::size_t(q - 1) * (q - 1) * q);
  std::size_t visited = 0;
  for_each_unit(p, f, [&](const FIElement& u) {
    EXPECT_TRUE(is_unit(u));
    ++visited;
  });
  EXPECT_EQ(visited, units);
}

INSTANTIATE_TEST_SUITE_P(SmallFields, UnitsExhaustive, ::testing::Values(2u, 3u, 5u));

TEST(AlgebraProperty, ThousandRandomRationalUnits) {
  std::mt19937_64 rng(1000);
  const auto f = FieldDesc::rationals();
  for (int trial = 0; trial < 1000; ++trial) {
    auto p = share(oracle::random_poset(1 + trial % 6, 0.6, rng));
    auto u = random_element(p, f, rng, true);
    ASSERT_TRUE(is_unit(u));
    auto inv = invert(u);
    const auto delta = FIElement::identity(p, f);
    EXPECT_EQ(u * inv, delta);
    EXPECT_EQ(inv * u, delta);
  }
}

TEST(FIElement, IdempotentsAndJordan) {
  auto p = share(Poset::chain(2));
  const auto f = FieldDesc::prime(3);
  oracle::Layout layout(*p);
  std::size_t count = 0;
  for_each_element(p, f, [&](const FIElement& a) {
    const auto r = residues_of(a);
    const bool naive = oracle::mul_mod(layout, r, r, 3) == r;
    EXPECT_EQ(is_idempotent(a), naive);
    count += naive;
  });
  // 0, delta, and e_1 + k e_12, e_2 + k e_12 for k in Z_3.
  EXPECT_EQ(count, 8u);
  auto e1 = FIElement::basis(p, f, 0, 0), e12 = FIElement::basis(p, f, 0, 1);
  EXPECT_EQ(jordan_product(e1, e12), e12);
  EXPECT_TRUE(is_central(FIElement::identity(p, f)));
  EXPECT_FALSE(is_central(e1));
  EXPECT_TRUE(is_central(Scalar::from_int(f, 2) * FIElement::identity(share(Poset::antichain(2)), f)));
  EXPECT_TRUE(is_central(FIElement::basis(share(Poset::antichain(2)), f, 0, 0)));
}

TEST(FIElement, IteratorsRejectQ) {
  auto p = share(Poset::chain(2));
  EXPECT_THROW(for_each_element(p, FieldDesc::rationals(), [](const FIElement&) {}), std::invalid_argument);
}
