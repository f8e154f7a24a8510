#include "incidence/linear_map.hpp"

namespace incidence {

LinearMap::LinearMap(PosetPtr poset, FieldDesc field)
    : poset_(std::move(poset)), field_(field), d_(poset_->basis_size()), entries_(d_ * d_, Scalar::zero(field)) {}

LinearMap LinearMap::zero(PosetPtr poset, FieldDesc field) { return LinearMap(std::move(poset), field); }

LinearMap LinearMap::identity(PosetPtr poset, FieldDesc field) {
  LinearMap m(std::move(poset), field);
  for (std::size_t i = 0; i < m.d_; ++i) m(i, i) = Scalar::one(field);
  return m;
}

LinearMap LinearMap::from_rows(PosetPtr poset, FieldDesc field, const std::vector<std::vector<Scalar>>& rows) {
  LinearMap m(std::move(poset), field);
  if (rows.size() != m.d_)
    throw std::invalid_argument("map has " + std::to_string(rows.size()) + " rows; the basis size is " +
                                std::to_string(m.d_));
  for (std::size_t r = 0; r < m.d_; ++r) {
    if (rows[r].size() != m.d_)
      throw std::invalid_argument("row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                                  " entries; expected " + std::to_string(m.d_));
    for (std::size_t c = 0; c < m.d_; ++c) {
      if (!(rows[r][c].field() == field)) throw FieldMismatch("matrix entry outside the declared field");
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

LinearMap LinearMap::from_images(PosetPtr poset, FieldDesc field, const std::vector<FIElement>& images) {
  LinearMap m(std::move(poset), field);
  if (images.size() != m.d_) throw std::invalid_argument("need one image per basis element");
  for (std::size_t c = 0; c < m.d_; ++c) {
    if (!(images[c].field() == field) || !(images[c].poset() == *m.poset_))
      throw AlgebraMismatch("image outside the map's algebra");
    for (std::size_t r = 0; r < m.d_; ++r) m(r, c) = images[c][r];
  }
  return m;
}

FIElement LinearMap::apply(const FIElement& a) const {
  if (!(a.field() == field_) || (a.poset_ptr() != poset_ && !(a.poset() == *poset_)))
    throw AlgebraMismatch("element outside the map's algebra");
  auto out = FIElement::zero(poset_, field_);
  for (std::size_t r = 0; r < d_; ++r) {
    Scalar acc = Scalar::zero(field_);
    for (std::size_t c = 0; c < d_; ++c)
      if (!a[c].is_zero()) acc += (*this)(r, c) * a[c];
    out[r] = acc;
  }
  return out;
}

FIElement LinearMap::image_of_basis(std::size_t coordinate) const {
  auto out = FIElement::zero(poset_, field_);
  for (std::size_t r = 0; r < d_; ++r) out[r] = (*this)(r, coordinate);
  return out;
}

bool operator==(const LinearMap& a, const LinearMap& b) {
  if (!(a.field_ == b.field_)) return false;
  if (a.poset_ != b.poset_ && !(*a.poset_ == *b.poset_)) return false;
  return a.entries_ == b.entries_;
}

LinearMap compose(const LinearMap& a, const LinearMap& b) {
  std::vector<FIElement> images;
  for (std::size_t c = 0; c < b.dimension(); ++c) images.push_back(a.apply(b.image_of_basis(c)));
  return LinearMap::from_images(b.poset_ptr(), b.field(), images);
}

LinearMap left_multiply(const FIElement& u, const LinearMap& phi) {
  std::vector<FIElement> images;
  for (std::size_t c = 0; c < phi.dimension(); ++c) images.push_back(u * phi.image_of_basis(c));
  return LinearMap::from_images(phi.poset_ptr(), phi.field(), images);
}

std::size_t matrix_rank(std::vector<Scalar> m, std::size_t rows, std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot * cols + col].is_zero()) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t c = 0; c < cols; ++c) std::swap(m[pivot * cols + c], m[rank * cols + c]);
    const Scalar inv = m[rank * cols + col].inv();
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r * cols + col].is_zero()) continue;
      const Scalar factor = m[r * cols + col] * inv;
      for (std::size_t c = col; c < cols; ++c) m[r * cols + c] -= factor * m[rank * cols + c];
    }
    ++rank;
  }
  return rank;
}

std::size_t rank(const LinearMap& phi) {
  return matrix_rank(phi.entries(), phi.dimension(), phi.dimension());
}

bool is_bijective(const LinearMap& phi) { return rank(phi) == phi.dimension(); }

}  // namespace incidence
