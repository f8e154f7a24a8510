#include "incidence/algebra.hpp"

namespace incidence {

FIElement FIElement::zero(PosetPtr poset, FieldDesc field) {
  if (!poset) throw std::invalid_argument("null poset");
  std::vector<Scalar> coords(poset->basis_size(), Scalar::zero(field));
  return FIElement(std::move(poset), field, std::move(coords));
}

FIElement FIElement::identity(PosetPtr poset, FieldDesc field) {
  return indicator(poset, field, Subset::full(poset->size()));
}

FIElement FIElement::basis(PosetPtr poset, FieldDesc field, std::size_t x, std::size_t y) {
  auto c = poset->coordinate(x, y);
  if (!c) throw std::invalid_argument("basis element e[x,y] requires x <= y");
  return unit_vector(std::move(poset), field, *c);
}

FIElement FIElement::indicator(PosetPtr poset, FieldDesc field, const Subset& a) {
  if (a.universe() != poset->size()) throw std::invalid_argument("subset does not match poset size");
  auto e = zero(std::move(poset), field);
  for (auto x : a.elements()) e.coords_[x] = Scalar::one(field);
  return e;
}

FIElement FIElement::unit_vector(PosetPtr poset, FieldDesc field, std::size_t coordinate) {
  auto e = zero(std::move(poset), field);
  e.coords_.at(coordinate) = Scalar::one(field);
  return e;
}

FIElement FIElement::from_coordinates(PosetPtr poset, FieldDesc field, std::vector<Scalar> coords) {
  if (coords.size() != poset->basis_size())
    throw std::invalid_argument("coordinate count " + std::to_string(coords.size()) +
                                " does not match basis size " + std::to_string(poset->basis_size()));
  for (const auto& s : coords)
    if (!(s.field() == field)) throw FieldMismatch("coordinate outside the declared field");
  return FIElement(std::move(poset), field, std::move(coords));
}

Scalar FIElement::at(std::size_t x, std::size_t y) const {
  auto c = poset_->coordinate(x, y);
  return c ? coords_[*c] : Scalar::zero(field_);
}

bool FIElement::is_zero() const {
  for (const auto& s : coords_)
    if (!s.is_zero()) return false;
  return true;
}

void FIElement::require_compatible(const FIElement& o) const {
  if (!(field_ == o.field_)) throw AlgebraMismatch("elements over different fields");
  if (poset_ != o.poset_ && !(*poset_ == *o.poset_)) throw AlgebraMismatch("elements over different posets");
}

FIElement& FIElement::operator+=(const FIElement& o) {
  require_compatible(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

FIElement& FIElement::operator-=(const FIElement& o) {
  require_compatible(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

FIElement& FIElement::operator*=(const Scalar& k) {
  for (auto& c : coords_) c *= k;
  return *this;
}

FIElement FIElement::operator-() const {
  FIElement r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

bool operator==(const FIElement& a, const FIElement& b) {
  if (!(a.field_ == b.field_)) return false;
  if (a.poset_ != b.poset_ && !(*a.poset_ == *b.poset_)) return false;
  return a.coords_ == b.coords_;
}

FIElement convolve(const FIElement& a, const FIElement& b) {
  a.require_compatible(b);
  auto out = FIElement::zero(a.poset_ptr(), a.field());
  const auto& terms = a.poset().convolution_terms();
  for (std::size_t k = 0; k < terms.size(); ++k) {
    Scalar acc = Scalar::zero(a.field());
    for (auto [left, right] : terms[k]) acc += a[left] * b[right];
    out[k] = acc;
  }
  return out;
}

Decomposition decompose(const FIElement& a) { return {diagonal_part(a), radical_part(a)}; }

FIElement diagonal_part(const FIElement& a) {
  auto d = FIElement::zero(a.poset_ptr(), a.field());
  for (std::size_t x = 0; x < a.poset().size(); ++x) d[x] = a[x];
  return d;
}

FIElement radical_part(const FIElement& a) {
  FIElement r = a;
  for (std::size_t x = 0; x < a.poset().size(); ++x) r[x] = Scalar::zero(a.field());
  return r;
}

bool is_unit(const FIElement& a) {
  for (std::size_t x = 0; x < a.poset().size(); ++x)
    if (a.diagonal(x).is_zero()) return false;
  return true;
}

FIElement invert(const FIElement& a) {
  if (!is_unit(a)) throw NotAUnit("element has a zero diagonal coefficient");
  const auto n = a.poset().size();
  auto d_inv = FIElement::zero(a.poset_ptr(), a.field());
  for (std::size_t x = 0; x < n; ++x) d_inv[x] = a.diagonal(x).inv();
  // -nu = -(d^{-1} a_J)
  FIElement minus_nu = -(d_inv * radical_part(a));
  auto identity = FIElement::identity(a.poset_ptr(), a.field());
  FIElement series = identity;
  FIElement power = identity;
  for (std::size_t k = 1; k < a.poset().longest_chain(); ++k) {
    power = power * minus_nu;
    series += power;
  }
  return series * d_inv;
}

Subset level_set(const FIElement& a, const Scalar& k) {
  auto s = Subset::empty(a.poset().size());
  for (std::size_t x = 0; x < a.poset().size(); ++x)
    if (a.diagonal(x) == k) s = s.with(x);
  return s;
}

FIElement jordan_product(const FIElement& a, const FIElement& b) { return a * b + b * a; }

bool is_idempotent(const FIElement& a) { return a * a == a; }

bool is_central(const FIElement& a) {
  for (std::size_t c = 0; c < a.dimension(); ++c) {
    auto b = FIElement::unit_vector(a.poset_ptr(), a.field(), c);
    if (!(a * b == b * a)) return false;
  }
  return true;
}

std::string to_string(const FIElement& a) {
  std::string out;
  for (std::size_t c = 0; c < a.dimension(); ++c) {
    if (a[c].is_zero()) continue;
    auto [x, y] = a.poset().pair_at(c);
    if (!out.empty()) out += " + ";
    out += a[c].to_string() + "*e[" + a.poset().label(x);
    if (x != y) out += "," + a.poset().label(y);
    out += "]";
  }
  return out.empty() ? "0" : out;
}

namespace {

// Odometer over per-coordinate value ranges.
void odometer(const PosetPtr& poset, const FieldDesc& field, const std::vector<std::uint32_t>& low,
              const std::vector<std::uint32_t>& high, const std::function<void(const FIElement&)>& visit) {
  if (!field.is_finite()) throw std::invalid_argument("infinite field cannot be enumerated");
  const auto elements = enumerate_field(field);
  const std::size_t d = poset->basis_size();
  std::vector<std::uint32_t> digit(low);
  for (std::size_t c = 0; c < d; ++c)
    if (low[c] >= high[c]) return;
  auto e = FIElement::zero(poset, field);
  for (std::size_t c = 0; c < d; ++c) e[c] = elements[digit[c]];
  while (true) {
    visit(e);
    std::size_t c = d;
    while (c > 0) {
      --c;
      if (++digit[c] < high[c]) {
        e[c] = elements[digit[c]];
        break;
      }
      digit[c] = low[c];
      e[c] = elements[digit[c]];
      if (c == 0) return;
    }
    if (d == 0) return;
  }
}

}  // namespace

void for_each_element(const PosetPtr& poset, const FieldDesc& field,
                      const std::function<void(const FIElement&)>& visit) {
  const std::size_t d = poset->basis_size();
  odometer(poset, field, std::vector<std::uint32_t>(d, 0), std::vector<std::uint32_t>(d, field.characteristic()),
           visit);
}

void for_each_unit(const PosetPtr& poset, const FieldDesc& field,
                   const std::function<void(const FIElement&)>& visit) {
  const std::size_t d = poset->basis_size();
  std::vector<std::uint32_t> low(d, 0);
  for (std::size_t x = 0; x < poset->size(); ++x) low[x] = 1;
  odometer(poset, field, low, std::vector<std::uint32_t>(d, field.characteristic()), visit);
}

void for_each_diagonal(const PosetPtr& poset, const FieldDesc& field,
                       const std::function<void(const FIElement&)>& visit) {
  const std::size_t d = poset->basis_size();
  std::vector<std::uint32_t> high(d, 1);
  for (std::size_t x = 0; x < poset->size(); ++x) high[x] = field.characteristic();
  odometer(poset, field, std::vector<std::uint32_t>(d, 0), high, visit);
}

}  // namespace incidence
