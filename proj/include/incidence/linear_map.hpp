#pragma once

// K-linear maps on I(X, K) as d x d matrices in the canonical basis. Column k
// holds the coordinates of the image of the k-th basis element.

#include <vector>

#include "incidence/algebra.hpp"

namespace incidence {

class LinearMap {
 public:
  static LinearMap zero(PosetPtr poset, FieldDesc field);
  static LinearMap identity(PosetPtr poset, FieldDesc field);
  /// Throws std::invalid_argument on a wrong row count or row length.
  static LinearMap from_rows(PosetPtr poset, FieldDesc field, const std::vector<std::vector<Scalar>>& rows);
  /// images[k] = image of the k-th basis element.
  static LinearMap from_images(PosetPtr poset, FieldDesc field, const std::vector<FIElement>& images);

  const Poset& poset() const { return *poset_; }
  const PosetPtr& poset_ptr() const { return poset_; }
  const FieldDesc& field() const { return field_; }
  std::size_t dimension() const { return d_; }

  const Scalar& operator()(std::size_t row, std::size_t col) const { return entries_[row * d_ + col]; }
  Scalar& operator()(std::size_t row, std::size_t col) { return entries_[row * d_ + col]; }
  const std::vector<Scalar>& entries() const { return entries_; }

  FIElement apply(const FIElement& a) const;
  FIElement image_of_basis(std::size_t coordinate) const;

  friend bool operator==(const LinearMap& a, const LinearMap& b);

 private:
  LinearMap(PosetPtr poset, FieldDesc field);

  PosetPtr poset_;
  FieldDesc field_;
  std::size_t d_ = 0;
  std::vector<Scalar> entries_;
};

inline FIElement apply(const LinearMap& phi, const FIElement& a) { return phi.apply(a); }

/// (a o b)(x) = a(b(x)).
LinearMap compose(const LinearMap& a, const LinearMap& b);
/// x -> u * phi(x).
LinearMap left_multiply(const FIElement& u, const LinearMap& phi);

/// Rank of a rows x cols matrix (row-major) by exact Gaussian elimination.
std::size_t matrix_rank(std::vector<Scalar> entries, std::size_t rows, std::size_t cols);
std::size_t rank(const LinearMap& phi);
bool is_bijective(const LinearMap& phi);

}  // namespace incidence
