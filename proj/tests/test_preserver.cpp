#include <random>

#include <gtest/gtest.h>

#include "incidence/preserver.hpp"
#include "incidence/verifier.hpp"
#include "oracle.hpp"

using namespace incidence;

namespace {

LinearMap rows(const PosetPtr& p, const FieldDesc& f, const std::vector<std::vector<std::int64_t>>& r) {
  std::vector<std::vector<Scalar>> out;
  for (const auto& row : r) {
    out.emplace_back();
    for (auto v : row) out.back().push_back(Scalar::from_int(f, v));
  }
  return LinearMap::from_rows(p, f, out);
}

std::string spec_error(const PreserverSpec& s) {
  try {
    s.validate();
  } catch (const SpecError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Preserver, DiagonalTruncationIsPreserver) {
  auto p = share(Poset::chain(2));
  const auto f = FieldDesc::prime(3);
  auto phi = rows(p, f, {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
  EXPECT_TRUE(is_unital(phi));
  EXPECT_TRUE(preserves_invertibility(phi));
  EXPECT_TRUE(is_strong(phi));
  EXPECT_FALSE(is_bijective(phi));
  EXPECT_EQ(extract_lambda(phi), SubsetMapTable::tabulate(PartitionEndo::identity(2)));
  EXPECT_EQ(extract_psi(phi), LinearMap::zero(p, f));
}

TEST(Preserver, SwapMapFailsWithWitness) {
  auto p = share(Poset::chain(2));
  const auto f = FieldDesc::prime(3);
  auto phi = rows(p, f, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  auto v = check_invertibility(phi);
  ASSERT_FALSE(v.holds);
  ASSERT_TRUE(v.witness.has_value());
  const auto& u = v.witness->elements.at(0);
  EXPECT_TRUE(is_unit(u));
  EXPECT_FALSE(is_unit(phi.apply(u)));
  EXPECT_FALSE(check_strong(phi).holds);
}

TEST(Preserver, ValidateNamesInvariant) {
  auto p = share(Poset::chain(2));
  const auto f = FieldDesc::prime(3);
  auto zero = LinearMap::zero(p, f);
  EXPECT_EQ(spec_error({PartitionEndo::identity(2), zero}), "");
  EXPECT_NE(spec_error({PartitionEndo::identity(2), rows(p, f, {{0, 0, 1}, {0, 0, 0}, {0, 0, 0}})})
                .find("psi image in radical"),
            std::string::npos);
  EXPECT_NE(spec_error({PartitionEndo::identity(2), rows(p, f, {{0, 0, 0}, {0, 0, 0}, {1, 0, 0}})})
                .find("psi must annihilate delta"),
            std::string::npos);
  // psi(e_1) = -psi(e_2) kills delta.
  EXPECT_EQ(spec_error({PartitionEndo::identity(2), rows(p, f, {{0, 0, 0}, {0, 0, 0}, {1, 2, 1}})}), "");
  EXPECT_NE(spec_error({XorEndo::identity(2), zero}).find("lambda regime"), std::string::npos);
  EXPECT_NE(spec_error({PartitionEndo::identity(3), zero}).find("lambda size"), std::string::npos);
  EXPECT_NE(spec_error({PartitionEndo::identity(2), LinearMap::zero(p, FieldDesc::prime(2))}).find("lambda regime"),
            std::string::npos);
  EXPECT_THROW(build_preserver({XorEndo::identity(2), zero}), SpecError);
}

TEST(Preserver, ExtractionReportsDiagonalValue) {
  auto p = share(Poset::chain(2));
  const auto f = FieldDesc::prime(3);
  // phi(e_1) = phi(e_2) = 2 e_1 + 2 e_2: unital since 4 = 1 in Z_3.
  auto phi = rows(p, f, {{2, 2, 0}, {2, 2, 0}, {0, 0, 1}});
  ASSERT_TRUE(is_unital(phi));
  try {
    extract_lambda(phi);
    FAIL();
  } catch (const ExtractionError& e) {
    EXPECT_NE(std::string(e.what()).find("diagonal value 2"), std::string::npos);
    EXPECT_EQ(e.value(), Scalar::from_int(f, 2));
  }
  EXPECT_THROW(extract_lambda(LinearMap::zero(p, f)), std::invalid_argument);
}

TEST(Preserver, BuildRoundTrip) {
  auto p = share(Poset::chain(2));
  const auto f = FieldDesc::prime(3);
  PreserverSpec spec{PartitionEndo::from_owner({1, 0}), rows(p, f, {{0, 0, 0}, {0, 0, 0}, {0, 0, 1}})};
  auto phi = build_preserver(spec);
  EXPECT_EQ(phi, rows(p, f, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}));
  EXPECT_TRUE(preserves_invertibility(phi));
  EXPECT_TRUE(is_bijective(phi));
  EXPECT_EQ(to_partition(extract_lambda(phi)), std::get<PartitionEndo>(spec.lambda));
  EXPECT_EQ(extract_psi(phi), spec.psi);
}

// Every linear map on I(2-chain, K), against the exhaustive unit table.
class AllMapsTwoChain : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(AllMapsTwoChain, InvertibilityAndStrongness) {
  const auto q = GetParam();
  auto p = share(Poset::chain(2));
  const auto f = FieldDesc::prime(q);
  oracle::UnitTable table(*p, q);
  const std::uint64_t total = std::uint64_t(q) * q * q * q * q * q * q * q * q;
  std::size_t preservers = 0, strong = 0;
  for (std::uint64_t i = 0; i < total; ++i) {
    auto phi = map_at(p, f, i);
    const auto m = oracle::map_entries(i, 3, q);
    ASSERT_EQ(oracle::residues(phi), m);
    const bool pres = oracle::preserves_units(table, m);
    EXPECT_EQ(preserves_invertibility(phi), pres) << i;
    const bool str = pres && oracle::reflects_units(table, m);
    EXPECT_EQ(is_strong(phi), str) << i;
    if (pres && oracle::unital(table, m)) {
      ++preservers;
      strong += str;
    }
  }
  // Unital preservers: n^n q^{m(d-1)} for q > 2, 2^{n(n-1)} 2^{m(d-1)} for q = 2.
  EXPECT_EQ(preservers, q == 2 ? 16u : 36u);
  // Strong iff lambda injective: 2 of the 4 lambdas (both regimes on n = 2).
  EXPECT_EQ(strong, q == 2 ? 8u : 18u);
}

TEST_P(AllMapsTwoChain, InversesAgainstOracle) {
  const auto q = GetParam();
  auto p = share(Poset::chain(2));
  const auto f = FieldDesc::prime(q);
  oracle::UnitTable table(*p, q);
  const std::uint64_t total = std::uint64_t(q) * q * q * q * q * q * q * q * q;
  for (std::uint64_t i = 0; i < total; ++i) {
    auto phi = map_at(p, f, i);
    EXPECT_EQ(preserves_inverses(phi), oracle::preserves_inverses(table, oracle::map_entries(i, 3, q))) << i;
  }
}

INSTANTIATE_TEST_SUITE_P(SmallFields, AllMapsTwoChain, ::testing::Values(2u, 3u));

TEST(PreserverProperty, IdempotentsAgainstOracleZ2) {
  auto p = share(Poset::chain(2));
  const auto f = FieldDesc::prime(2);
  oracle::Layout layout(*p);
  auto elements = oracle::all_elements(3, 2);
  std::vector<std::vector<std::int64_t>> idem;
  for (const auto& e : elements)
    if (oracle::mul_mod(layout, e, e, 2) == e) idem.push_back(e);
  EXPECT_EQ(all_idempotents(p, f).size(), idem.size());
  for (std::uint64_t i = 0; i < 512; ++i) {
    const auto m = oracle::map_entries(i, 3, 2);
    bool naive = true;
    for (const auto& e : idem) {
      auto img = oracle::apply(m, 3, e, 2);
      naive = naive && oracle::mul_mod(layout, img, img, 2) == img;
    }
    EXPECT_EQ(preserves_idempotents(map_at(p, f, i)), naive) << i;
  }
}

TEST(Preserver, JordanAndMultiplicativity) {
  auto d = share(Poset::diamond());
  const auto f = FieldDesc::prime(5);
  auto aut = automorphism_map(d, f, {0, 2, 1, 3});
  EXPECT_TRUE(is_multiplicative(aut));
  EXPECT_FALSE(is_antimultiplicative(aut));
  EXPECT_TRUE(is_jordan_endo(aut));
  EXPECT_TRUE(is_bijective(aut));
  EXPECT_TRUE(is_strong(aut));
  auto anti = anti_automorphism_map(d, f, {3, 1, 2, 0});
  EXPECT_TRUE(is_antimultiplicative(anti));
  EXPECT_FALSE(is_multiplicative(anti));
  EXPECT_TRUE(is_jordan_endo(anti));
  EXPECT_TRUE(preserves_invertibility(anti));
  EXPECT_THROW(automorphism_map(d, f, {1, 0, 2, 3}), std::invalid_argument);
  EXPECT_THROW(anti_automorphism_map(d, f, {0, 1, 2, 3}), std::invalid_argument);

  auto c2 = share(Poset::chain(2));
  const auto f3 = FieldDesc::prime(3);
  auto u = FIElement::identity(c2, f3) + FIElement::basis(c2, f3, 0, 1);
  auto inner = inner_automorphism(u);
  EXPECT_TRUE(is_multiplicative(inner));
  EXPECT_TRUE(preserves_inverses(inner));
  EXPECT_TRUE(preserves_idempotents(inner));

  // a -> a_D: diagonals of products are products of diagonals.
  auto trunc = rows(c2, f3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
  EXPECT_TRUE(is_jordan_endo(trunc));
  EXPECT_TRUE(preserves_inverses(trunc));
}

TEST(Preserver, JordanWitnessNamesPair) {
  auto c3 = share(Poset::chain(3));
  const auto f = FieldDesc::prime(2);
  auto phi = example_map("z2-not-jordan");
  auto v = check_jordan(phi);
  ASSERT_FALSE(v.holds);
  ASSERT_TRUE(v.witness.has_value());
  ASSERT_GE(v.witness->elements.size(), 2u);
  EXPECT_EQ(v.witness->elements[0], FIElement::basis(c3, f, 1, 1));
  EXPECT_EQ(v.witness->elements[1], FIElement::basis(c3, f, 0, 1));
  EXPECT_TRUE(preserves_inverses(phi));
}

TEST(Preserver, IdempotentFallbackOverQ) {
  auto d = share(Poset::diamond());
  const auto q = FieldDesc::rationals();
  EXPECT_TRUE(preserves_idempotents(automorphism_map(d, q, {0, 2, 1, 3})));
  EXPECT_TRUE(preserves_idempotents(anti_automorphism_map(d, q, {3, 1, 2, 0})));
  auto trunc = LinearMap::identity(d, q);
  for (std::size_t k = d->size(); k < d->basis_size(); ++k) trunc(k, k) = Scalar::zero(q);
  EXPECT_TRUE(preserves_idempotents(trunc));
  // 2 * id sends every nonzero idempotent e to 2e.
  auto twice = LinearMap::identity(d, q);
  for (std::size_t k = 0; k < d->basis_size(); ++k) twice(k, k) = Scalar::from_int(q, 2);
  EXPECT_FALSE(preserves_idempotents(twice));
  EXPECT_THROW(preserves_invertibility(twice), std::invalid_argument);
}

TEST(Preserver, Gates) {
  auto big = share(Poset::antichain(7));
  const auto f = FieldDesc::prime(2);
  auto id = LinearMap::identity(big, f);
  EXPECT_THROW(preserves_invertibility(id), GateExceeded);
  EXPECT_TRUE(preserves_invertibility(id, GateOptions{true}));
  EXPECT_THROW(preserves_inverses(LinearMap::identity(share(Poset::antichain(5)), f)), GateExceeded);
}

// Maps built from random normal forms are unital preservers whose extracted
// lambda and psi reproduce the spec.
TEST(PreserverProperty, BuiltPreserversRoundTrip) {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 120; ++trial) {
    auto p = share(oracle::random_poset(1 + trial % 5, 0.5, rng));
    const auto f = trial % 3 == 0 ? FieldDesc::prime(2) : FieldDesc::prime(trial % 3 == 1 ? 3 : 5);
    auto spec = random_spec(p, f, rng);
    ASSERT_NO_THROW(spec.validate());
    auto phi = build_preserver(spec);
    EXPECT_TRUE(is_unital(phi));
    EXPECT_TRUE(preserves_invertibility(phi));
    auto table = extract_lambda(phi);
    std::visit([&](const auto& l) { EXPECT_EQ(table, SubsetMapTable::tabulate(l)); }, spec.lambda);
    EXPECT_EQ(extract_psi(phi), spec.psi);
    // Strong iff lambda injective.
    const bool injective = std::visit([](const auto& l) { return is_injective(l); }, spec.lambda);
    EXPECT_EQ(is_strong(phi), injective);
  }
}
