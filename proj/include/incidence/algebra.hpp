#pragma once

// The incidence algebra I(X, K) of a finite poset. Elements are dense
// coefficient vectors in the poset's canonical basis.

#include <functional>
#include <span>
#include <string>
#include <stdexcept>
#include <vector>

#include "incidence/field.hpp"
#include "incidence/poset.hpp"
#include "incidence/subset.hpp"

namespace incidence {

class AlgebraMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotAUnit : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class FIElement {
 public:
  static FIElement zero(PosetPtr poset, FieldDesc field);
  /// delta, the identity of the algebra.
  static FIElement identity(PosetPtr poset, FieldDesc field);
  /// e_{xy}; throws std::invalid_argument unless x <= y.
  static FIElement basis(PosetPtr poset, FieldDesc field, std::size_t x, std::size_t y);
  /// The idempotent e_A = sum of e_x over x in A.
  static FIElement indicator(PosetPtr poset, FieldDesc field, const Subset& a);
  /// Basis vector for a canonical coordinate.
  static FIElement unit_vector(PosetPtr poset, FieldDesc field, std::size_t coordinate);
  static FIElement from_coordinates(PosetPtr poset, FieldDesc field, std::vector<Scalar> coords);

  const Poset& poset() const { return *poset_; }
  const PosetPtr& poset_ptr() const { return poset_; }
  const FieldDesc& field() const { return field_; }
  std::span<const Scalar> coordinates() const { return coords_; }
  std::size_t dimension() const { return coords_.size(); }

  const Scalar& operator[](std::size_t coordinate) const { return coords_[coordinate]; }
  Scalar& operator[](std::size_t coordinate) { return coords_[coordinate]; }
  /// alpha_{xy}; zero when x is not <= y.
  Scalar at(std::size_t x, std::size_t y) const;
  const Scalar& diagonal(std::size_t x) const { return coords_[x]; }

  bool is_zero() const;

  FIElement& operator+=(const FIElement& o);
  FIElement& operator-=(const FIElement& o);
  FIElement& operator*=(const Scalar& k);

  friend FIElement operator+(FIElement a, const FIElement& b) { return a += b; }
  friend FIElement operator-(FIElement a, const FIElement& b) { return a -= b; }
  friend FIElement operator*(const Scalar& k, FIElement a) { return a *= k; }
  FIElement operator-() const;

  friend bool operator==(const FIElement& a, const FIElement& b);

  /// Throws AlgebraMismatch unless both elements live in the same algebra.
  void require_compatible(const FIElement& o) const;

 private:
  FIElement(PosetPtr poset, FieldDesc field, std::vector<Scalar> coords)
      : poset_(std::move(poset)), field_(field), coords_(std::move(coords)) {}

  PosetPtr poset_;
  FieldDesc field_;
  std::vector<Scalar> coords_;
};

/// (ab)_{xy} = sum over x <= z <= y of a_{xz} b_{zy}.
FIElement convolve(const FIElement& a, const FIElement& b);
inline FIElement operator*(const FIElement& a, const FIElement& b) { return convolve(a, b); }

struct Decomposition {
  FIElement diagonal;
  FIElement radical;
};

/// a = a_D + a_J.
Decomposition decompose(const FIElement& a);
FIElement diagonal_part(const FIElement& a);
FIElement radical_part(const FIElement& a);

/// True iff every diagonal coefficient is nonzero.
bool is_unit(const FIElement& a);

/// Writes a = d(delta + nu) with d = a_D and nu = d^{-1} a_J, then
/// a^{-1} = (sum_{k < c} (-nu)^k) d^{-1}, c the longest chain length.
/// Throws NotAUnit when some diagonal coefficient vanishes.
FIElement invert(const FIElement& a);

/// L_k(a) = {x : a_{xx} = k}.
Subset level_set(const FIElement& a, const Scalar& k);

/// a o b = ab + ba.
FIElement jordan_product(const FIElement& a, const FIElement& b);

bool is_idempotent(const FIElement& a);

/// Commutes with every canonical basis element.
bool is_central(const FIElement& a);

/// Element literal, e.g. `1*e[a] + 2*e[b] + 1*e[a,b]`; zero prints as `0`.
std::string to_string(const FIElement& a);

// Exhaustive iteration over a finite-field algebra, in row-major coordinate
// order (first coordinate varies slowest). Throws std::invalid_argument for
// infinite fields.

/// q^d elements.
void for_each_element(const PosetPtr& poset, const FieldDesc& field,
                      const std::function<void(const FIElement&)>& visit);
/// (q-1)^n q^m units.
void for_each_unit(const PosetPtr& poset, const FieldDesc& field,
                   const std::function<void(const FIElement&)>& visit);
/// Elements with zero radical part, all q^n diagonal patterns.
void for_each_diagonal(const PosetPtr& poset, const FieldDesc& field,
                       const std::function<void(const FIElement&)>& visit);

}  // namespace incidence
