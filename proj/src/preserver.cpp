#include "incidence/preserver.hpp"

#include <algorithm>

namespace incidence {

namespace {

void require_finite(const LinearMap& phi, const char* what) {
  if (!phi.field().is_finite())
    throw std::invalid_argument(std::string(what) + " needs a finite field; use classify over Q");
}

BigInt power(std::uint64_t base, std::uint64_t exp) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r *= base;
  return r;
}

// phi(delta)_{yy}.
Scalar unit_image_diagonal(const LinearMap& phi, std::size_t y) {
  Scalar s = Scalar::zero(phi.field());
  for (std::size_t x = 0; x < phi.poset().size(); ++x) s += phi(y, x);
  return s;
}

// Step (i): a unit killed by a radical dependence of some diagonal output.
std::optional<Witness> radical_dependence_witness(const LinearMap& phi) {
  const std::size_t n = phi.poset().size();
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t c = n; c < phi.dimension(); ++c) {
      if (phi(y, c).is_zero()) continue;
      auto u = FIElement::identity(phi.poset_ptr(), phi.field());
      u[c] = -(unit_image_diagonal(phi, y) / phi(y, c));
      auto image = phi.apply(u);
      return Witness{"unit " + to_string(u) + " maps to non-unit " + to_string(image) +
                         " (diagonal output " + phi.poset().label(y) + " depends on radical coordinate)",
                     {u, image}};
    }
  return std::nullopt;
}

bool diagonal_image_is_unit(const LinearMap& phi, const FIElement& diag) {
  const std::size_t n = phi.poset().size();
  for (std::size_t y = 0; y < n; ++y) {
    Scalar s = Scalar::zero(phi.field());
    for (std::size_t x = 0; x < n; ++x) s += phi(y, x) * diag[x];
    if (s.is_zero()) return false;
  }
  return true;
}

std::vector<FIElement> basis_images(const LinearMap& phi) {
  std::vector<FIElement> out;
  for (std::size_t c = 0; c < phi.dimension(); ++c) out.push_back(phi.image_of_basis(c));
  return out;
}

void require_bijection(const std::vector<std::size_t>& perm, std::size_t n) {
  if (perm.size() != n) throw std::invalid_argument("permutation length does not match the poset");
  std::vector<bool> seen(n, false);
  for (auto v : perm) {
    if (v >= n || seen[v]) throw std::invalid_argument("not a bijection of the poset elements");
    seen[v] = true;
  }
}

}  // namespace

void PreserverSpec::validate() const {
  const auto& poset = psi.poset();
  const std::size_t n = poset.size();
  const bool z2 = psi.field().cardinality_class() == CardinalityClass::two;
  if (std::holds_alternative<XorEndo>(lambda) != z2)
    throw SpecError(z2 ? "lambda regime: Z_2 preservers need an xor-lambda"
                       : "lambda regime: |K| > 2 preservers need a partition lambda");
  const std::size_t lambda_size = std::visit([](const auto& l) { return l.size(); }, lambda);
  if (lambda_size != n) throw SpecError("lambda size: lambda acts on a set of a different size than X");
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < psi.dimension(); ++c)
      if (!psi(r, c).is_zero()) throw SpecError("psi image in radical: psi has a nonzero diagonal output row");
  for (std::size_t r = n; r < psi.dimension(); ++r)
    if (!unit_image_diagonal(psi, r).is_zero()) throw SpecError("psi must annihilate delta");
}

LinearMap build_preserver(const PreserverSpec& spec) {
  spec.validate();
  LinearMap phi = spec.psi;
  const std::size_t n = phi.poset().size();
  const auto one = Scalar::one(phi.field());
  if (const auto* part = std::get_if<PartitionEndo>(&spec.lambda)) {
    for (std::size_t y = 0; y < n; ++y) phi(y, part->owner(y)) = one;
  } else {
    const auto& xe = std::get<XorEndo>(spec.lambda);
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t x = 0; x < n; ++x)
        if (xe.entry(y, x)) phi(y, x) = one;
  }
  return phi;
}

bool is_unital(const LinearMap& phi) {
  return phi.apply(FIElement::identity(phi.poset_ptr(), phi.field())) ==
         FIElement::identity(phi.poset_ptr(), phi.field());
}

SubsetMapTable extract_lambda(const LinearMap& phi) {
  if (!is_unital(phi)) throw std::invalid_argument("extract_lambda requires a unital map");
  const std::size_t n = phi.poset().size();
  if (n > SubsetMapTable::kMaxSize) throw GateExceeded("|X| for extract_lambda", n, SubsetMapTable::kMaxSize);
  const auto zero = Scalar::zero(phi.field());
  return SubsetMapTable::from_function(n, [&](const Subset& a) {
    auto image = Subset::empty(n);
    for (std::size_t y = 0; y < n; ++y) {
      Scalar v = zero;
      for (auto x : a.elements()) v += phi(y, x);
      if (v.is_one()) {
        image = image.with(y);
      } else if (!v.is_zero()) {
        throw ExtractionError("phi(e_A)_{xx} = " + v.to_string() + " is outside {0,1} at x = " +
                                  phi.poset().label(y) + " (diagonal value " + v.to_string() + ")",
                              a, y, v);
      }
    }
    return image;
  });
}

LinearMap extract_psi(const LinearMap& phi) {
  LinearMap psi = phi;
  for (std::size_t r = 0; r < phi.poset().size(); ++r)
    for (std::size_t c = 0; c < phi.dimension(); ++c) psi(r, c) = Scalar::zero(phi.field());
  return psi;
}

Verdict check_invertibility(const LinearMap& phi, const GateOptions& gates) {
  require_finite(phi, "preserves_invertibility");
  enforce_gate("|X| for preserves_invertibility", phi.poset().size(), kMaxInvertibilityCheckSize, gates);
  if (auto w = radical_dependence_witness(phi)) return {false, std::move(w)};
  std::optional<Witness> witness;
  for_each_diagonal(phi.poset_ptr(), phi.field(), [&](const FIElement& d) {
    if (witness || !is_unit(d)) return;
    if (!diagonal_image_is_unit(phi, d)) {
      auto image = phi.apply(d);
      witness = Witness{"unit " + to_string(d) + " maps to non-unit " + to_string(image), {d, image}};
    }
  });
  if (witness) return {false, std::move(witness)};
  return Verdict::pass();
}

bool preserves_invertibility(const LinearMap& phi, const GateOptions& gates) {
  return check_invertibility(phi, gates).holds;
}

Verdict check_strong(const LinearMap& phi, const GateOptions& gates) {
  auto preserving = check_invertibility(phi, gates);
  if (!preserving) return preserving;
  std::optional<Witness> witness;
  for_each_diagonal(phi.poset_ptr(), phi.field(), [&](const FIElement& d) {
    if (witness || is_unit(d)) return;
    if (diagonal_image_is_unit(phi, d)) {
      auto image = phi.apply(d);
      witness = Witness{"non-unit " + to_string(d) + " maps to unit " + to_string(image), {d, image}};
    }
  });
  if (witness) return {false, std::move(witness)};
  return Verdict::pass();
}

bool is_strong(const LinearMap& phi, const GateOptions& gates) { return check_strong(phi, gates).holds; }

Verdict check_inverses(const LinearMap& phi, const GateOptions& gates) {
  require_finite(phi, "preserves_inverses");
  const auto& poset = phi.poset();
  enforce_gate("|X| for preserves_inverses", poset.size(), kMaxInverseCheckSize, gates);
  const auto q = phi.field().characteristic();
  enforce_gate("unit count for preserves_inverses",
               power(q - 1, poset.size()) * power(q, poset.strict_pairs().size()), kMaxUnitEnumeration, gates);
  std::optional<Witness> witness;
  for_each_unit(phi.poset_ptr(), phi.field(), [&](const FIElement& u) {
    if (witness) return;
    auto image = phi.apply(u);
    if (!is_unit(image)) {
      witness = Witness{"unit " + to_string(u) + " maps to non-unit " + to_string(image), {u, image}};
      return;
    }
    auto lhs = phi.apply(invert(u));
    auto rhs = invert(image);
    if (!(lhs == rhs))
      witness = Witness{"phi(u^-1) = " + to_string(lhs) + " differs from phi(u)^-1 = " + to_string(rhs) +
                            " for u = " + to_string(u),
                        {u, lhs, rhs}};
  });
  if (witness) return {false, std::move(witness)};
  return Verdict::pass();
}

bool preserves_inverses(const LinearMap& phi, const GateOptions& gates) {
  return check_inverses(phi, gates).holds;
}

Verdict check_jordan(const LinearMap& phi) {
  const auto images = basis_images(phi);
  const std::size_t d = phi.dimension();
  for (std::size_t i = 0; i < d; ++i) {
    auto bi = FIElement::unit_vector(phi.poset_ptr(), phi.field(), i);
    for (std::size_t j = i; j < d; ++j) {
      auto bj = FIElement::unit_vector(phi.poset_ptr(), phi.field(), j);
      auto lhs = phi.apply(jordan_product(bi, bj));
      auto rhs = jordan_product(images[i], images[j]);
      if (!(lhs == rhs))
        return Verdict::fail("phi(" + to_string(bi) + " o " + to_string(bj) + ") = " + to_string(lhs) +
                                 " but phi(" + to_string(bi) + ") o phi(" + to_string(bj) + ") = " + to_string(rhs),
                             {bi, bj, lhs, rhs});
    }
  }
  return Verdict::pass();
}

bool is_jordan_endo(const LinearMap& phi) { return check_jordan(phi).holds; }

namespace {

bool multiplicative_on_basis(const LinearMap& phi, bool reversed) {
  const auto images = basis_images(phi);
  const std::size_t d = phi.dimension();
  for (std::size_t i = 0; i < d; ++i) {
    auto bi = FIElement::unit_vector(phi.poset_ptr(), phi.field(), i);
    for (std::size_t j = 0; j < d; ++j) {
      auto bj = FIElement::unit_vector(phi.poset_ptr(), phi.field(), j);
      auto rhs = reversed ? images[j] * images[i] : images[i] * images[j];
      if (!(phi.apply(bi * bj) == rhs)) return false;
    }
  }
  return true;
}

}  // namespace

bool is_multiplicative(const LinearMap& phi) { return multiplicative_on_basis(phi, false); }
bool is_antimultiplicative(const LinearMap& phi) { return multiplicative_on_basis(phi, true); }

std::vector<FIElement> all_idempotents(const PosetPtr& poset, const FieldDesc& field, const GateOptions& gates) {
  if (!field.is_finite()) throw std::invalid_argument("idempotent enumeration needs a finite field");
  enforce_gate("q^d for idempotent enumeration", power(field.characteristic(), poset->basis_size()),
               kMaxIdempotentEnumeration, gates);
  std::vector<FIElement> out;
  for_each_element(poset, field, [&](const FIElement& e) {
    if (is_idempotent(e)) out.push_back(e);
  });
  return out;
}

Verdict check_idempotents(const LinearMap& phi, const GateOptions& gates) {
  std::vector<FIElement> family;
  const auto& field = phi.field();
  const bool exhaustive =
      field.is_finite() &&
      (gates.override_gates ||
       power(field.characteristic(), phi.dimension()) <= BigInt(kMaxIdempotentEnumeration));
  if (exhaustive) {
    family = all_idempotents(phi.poset_ptr(), field, gates);
  } else {
    const auto& poset = phi.poset();
    const std::size_t n = poset.size();
    if (n > SubsetMapTable::kMaxSize)
      throw GateExceeded("|X| for the idempotent family", n, SubsetMapTable::kMaxSize);
    std::vector<Scalar> ks;
    if (field.is_finite())
      ks = enumerate_field(field);
    else
      ks = {Scalar::one(field), Scalar::from_int(field, -1), Scalar::from_int(field, 2)};
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      Subset a(n, bits);
      auto ea = FIElement::indicator(phi.poset_ptr(), field, a);
      family.push_back(ea);
      for (const auto& p : poset.strict_pairs()) {
        if (!a.contains(p.lower) || a.contains(p.upper)) continue;
        for (const auto& k : ks) {
          if (k.is_zero()) continue;
          auto e = ea;
          e[*poset.coordinate(p.lower, p.upper)] = k;
          family.push_back(e);
        }
      }
    }
  }
  for (const auto& e : family) {
    auto image = phi.apply(e);
    if (!is_idempotent(image))
      return Verdict::fail("idempotent " + to_string(e) + " maps to non-idempotent " + to_string(image),
                           {e, image});
  }
  return Verdict::pass();
}

bool preserves_idempotents(const LinearMap& phi, const GateOptions& gates) {
  return check_idempotents(phi, gates).holds;
}

LinearMap automorphism_map(const PosetPtr& poset, const FieldDesc& field, const std::vector<std::size_t>& mu) {
  require_bijection(mu, poset->size());
  for (std::size_t x = 0; x < poset->size(); ++x)
    for (std::size_t y = 0; y < poset->size(); ++y)
      if (poset->leq(x, y) != poset->leq(mu[x], mu[y]))
        throw std::invalid_argument("mu is not an order automorphism");
  std::vector<FIElement> images;
  for (std::size_t c = 0; c < poset->basis_size(); ++c) {
    auto [x, y] = poset->pair_at(c);
    images.push_back(FIElement::basis(poset, field, mu[x], mu[y]));
  }
  return LinearMap::from_images(poset, field, images);
}

LinearMap anti_automorphism_map(const PosetPtr& poset, const FieldDesc& field, const std::vector<std::size_t>& tau) {
  require_bijection(tau, poset->size());
  for (std::size_t x = 0; x < poset->size(); ++x)
    for (std::size_t y = 0; y < poset->size(); ++y)
      if (poset->leq(x, y) != poset->leq(tau[y], tau[x]))
        throw std::invalid_argument("tau is not order-reversing");
  std::vector<FIElement> images;
  for (std::size_t c = 0; c < poset->basis_size(); ++c) {
    auto [x, y] = poset->pair_at(c);
    images.push_back(FIElement::basis(poset, field, tau[y], tau[x]));
  }
  return LinearMap::from_images(poset, field, images);
}

LinearMap inner_automorphism(const FIElement& u) {
  const auto u_inv = invert(u);
  std::vector<FIElement> images;
  for (std::size_t c = 0; c < u.dimension(); ++c)
    images.push_back(u * FIElement::unit_vector(u.poset_ptr(), u.field(), c) * u_inv);
  return LinearMap::from_images(u.poset_ptr(), u.field(), images);
}

}  // namespace incidence
