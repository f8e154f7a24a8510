#include <random>

#include <gtest/gtest.h>

#include "incidence/field.hpp"

using namespace incidence;

namespace {

Scalar z(const FieldDesc& f, std::int64_t v) { return Scalar::from_int(f, v); }

Scalar q(std::int64_t num, std::int64_t den) {
  return Scalar::from_rational(FieldDesc::rationals(), Rational(num, den));
}

}  // namespace

TEST(FieldDesc, PrimeValidation) {
  EXPECT_NO_THROW(FieldDesc::prime(2));
  EXPECT_NO_THROW(FieldDesc::prime(7));
  EXPECT_NO_THROW(FieldDesc::prime(2147483647u));
  EXPECT_THROW(FieldDesc::prime(1), std::invalid_argument);
  EXPECT_THROW(FieldDesc::prime(4), std::invalid_argument);
  EXPECT_THROW(FieldDesc::prime(91), std::invalid_argument);
}

TEST(FieldDesc, CardinalityClasses) {
  EXPECT_EQ(FieldDesc::prime(2).cardinality_class(), CardinalityClass::two);
  EXPECT_EQ(FieldDesc::prime(3).cardinality_class(), CardinalityClass::finite_above_two);
  EXPECT_EQ(FieldDesc::rationals().cardinality_class(), CardinalityClass::infinite);
  EXPECT_EQ(FieldDesc::prime(5).cardinality(), std::optional<std::uint64_t>(5));
  EXPECT_FALSE(FieldDesc::rationals().cardinality().has_value());
  EXPECT_EQ(FieldDesc::rationals().characteristic(), 0u);
}

TEST(FieldDesc, ParseLiterals) {
  EXPECT_EQ(parse_field("Fp 3"), FieldDesc::prime(3));
  EXPECT_EQ(parse_field("F5"), FieldDesc::prime(5));
  EXPECT_EQ(parse_field("Z2"), FieldDesc::prime(2));
  EXPECT_EQ(parse_field("Fp3"), FieldDesc::prime(3));
  EXPECT_EQ(parse_field("Q"), FieldDesc::rationals());
  EXPECT_THROW(parse_field("Fp 4"), std::invalid_argument);
  EXPECT_THROW(parse_field("R"), std::invalid_argument);
  for (auto f : {FieldDesc::prime(2), FieldDesc::prime(13), FieldDesc::rationals()})
    EXPECT_EQ(parse_field(f.literal()), f);
}

TEST(Scalar, SmallExamples) {
  const auto f5 = FieldDesc::prime(5);
  EXPECT_EQ(z(f5, 3) + z(f5, 4), z(f5, 2));
  EXPECT_EQ(z(f5, 3) * z(f5, 4), z(f5, 2));
  EXPECT_EQ(z(f5, 2).inv(), z(f5, 3));
  EXPECT_EQ(-z(f5, 1), z(f5, 4));
  EXPECT_EQ(z(f5, -7), z(f5, 3));
  EXPECT_EQ(q(1, 2) + q(1, 3), q(5, 6));
  EXPECT_EQ(q(2, 3).inv(), q(3, 2));
}

TEST(Scalar, DivisionByZeroThrows) {
  EXPECT_THROW(Scalar::zero(FieldDesc::prime(3)).inv(), DivisionByZero);
  EXPECT_THROW(Scalar::zero(FieldDesc::rationals()).inv(), DivisionByZero);
  EXPECT_THROW(z(FieldDesc::prime(7), 3) / Scalar::zero(FieldDesc::prime(7)), DivisionByZero);
}

TEST(Scalar, MixedFieldsThrow) {
  EXPECT_THROW(z(FieldDesc::prime(3), 1) + z(FieldDesc::prime(5), 1), FieldMismatch);
  EXPECT_THROW(z(FieldDesc::prime(3), 1) * q(1, 2), FieldMismatch);
  EXPECT_FALSE(z(FieldDesc::prime(3), 1) == z(FieldDesc::prime(5), 1));
}

TEST(Scalar, ParseScalar) {
  const auto f3 = FieldDesc::prime(3);
  EXPECT_EQ(parse_scalar(f3, "1/2"), z(f3, 2));
  EXPECT_EQ(parse_scalar(f3, "-1"), z(f3, 2));
  EXPECT_EQ(parse_scalar(FieldDesc::rationals(), "-3/6"), q(-1, 2));
  EXPECT_THROW(parse_scalar(f3, "1/3"), DivisionByZero);
  EXPECT_THROW(parse_scalar(f3, "x"), std::invalid_argument);
  EXPECT_EQ(q(-1, 2).to_string(), "-1/2");
  EXPECT_EQ(parse_scalar(FieldDesc::rationals(), q(7, 3).to_string()), q(7, 3));
}

TEST(Scalar, EnumerateField) {
  auto values = enumerate_field(FieldDesc::prime(5));
  ASSERT_EQ(values.size(), 5u);
  for (std::uint32_t i = 0; i < 5; ++i) EXPECT_EQ(values[i].residue(), i);
  EXPECT_THROW(enumerate_field(FieldDesc::rationals()), std::invalid_argument);
}

// Field axioms exhaustively, with products checked against integer arithmetic mod p.
class PrimeFieldAxioms : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(PrimeFieldAxioms, Exhaustive) {
  const auto p = GetParam();
  const auto f = FieldDesc::prime(p);
  const auto vals = enumerate_field(f);
  const auto zero = Scalar::zero(f), one = Scalar::one(f);
  for (const auto& a : vals) {
    EXPECT_EQ(a + zero, a);
    EXPECT_EQ(a * one, a);
    EXPECT_EQ(a + (-a), zero);
    if (!a.is_zero()) EXPECT_EQ(a * a.inv(), one);
    for (const auto& b : vals) {
      EXPECT_EQ((a + b).residue(), (a.residue() + b.residue()) % p);
      EXPECT_EQ((a * b).residue(), (std::uint64_t(a.residue()) * b.residue()) % p);
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * b, b * a);
      for (const auto& c : vals) {
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(SmallPrimes, PrimeFieldAxioms, ::testing::Values(2u, 3u, 5u, 7u));

TEST(Scalar, LargePrimeInverse) {
  const auto f = FieldDesc::prime(2147483647u);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> d(1, 2147483646);
  for (int i = 0; i < 200; ++i) {
    auto a = z(f, d(rng));
    EXPECT_TRUE((a * a.inv()).is_one());
  }
}

TEST(Scalar, RationalAxiomsSeeded) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::int64_t> num(-50, 50), den(1, 30);
  auto r = [&] { return q(num(rng), den(rng)); };
  for (int i = 0; i < 500; ++i) {
    auto a = r(), b = r(), c = r();
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b).to_rational(), a.to_rational() * b.to_rational());
    if (!a.is_zero()) EXPECT_TRUE((a / a).is_one());
  }
}
