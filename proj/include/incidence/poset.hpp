#pragma once

// Finite posets with a fixed element enumeration. The element order fixes the
// canonical basis of the incidence algebra: all e_x in element order, then all
// e_{xy} (x < y) in lexicographic order of (index x, index y).

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace incidence {

class PosetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct StrictPair {
  std::size_t lower;
  std::size_t upper;
  friend bool operator==(const StrictPair&, const StrictPair&) = default;
};

class Poset {
 public:
  static constexpr std::size_t kMaxElements = 16;

  /// Reflexive-transitive closure of the given `lower < upper` pairs. Throws
  /// PosetError on duplicate labels, unknown labels, or a cycle.
  static Poset from_relations(std::vector<std::string> labels,
                              const std::vector<std::pair<std::string, std::string>>& less);
  static Poset from_index_relations(std::vector<std::string> labels,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& less);

  /// 1 < 2 < ... < n
  static Poset chain(std::size_t n);
  /// n incomparable elements labelled 1..n
  static Poset antichain(std::size_t n);
  /// a < c, b < c
  static Poset v();
  /// a < b, a < c, b < d, c < d
  static Poset diamond();

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::optional<std::size_t> index_of(std::string_view label) const;

  bool leq(std::size_t x, std::size_t y) const { return leq_[x * size() + y]; }
  bool less(std::size_t x, std::size_t y) const { return x != y && leq(x, y); }

  const std::vector<StrictPair>& strict_pairs() const { return strict_pairs_; }
  /// n + |strict_pairs|.
  std::size_t basis_size() const { return size() + strict_pairs_.size(); }
  /// Coordinate of e_{xy} in the canonical basis; empty when x is not <= y.
  std::optional<std::size_t> coordinate(std::size_t x, std::size_t y) const;
  /// Inverse of coordinate().
  std::pair<std::size_t, std::size_t> pair_at(std::size_t coordinate) const;

  /// For each coordinate (x, y): all (coordinate(x, z), coordinate(z, y)) with x <= z <= y.
  const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& convolution_terms() const {
    return convolution_terms_;
  }

  /// Pairs x < y with nothing strictly between them.
  std::vector<StrictPair> covering_pairs() const;

  bool is_connected() const;
  Poset dual() const;
  /// Maximum number of elements in a chain; 0 for the empty poset.
  std::size_t longest_chain() const;

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.labels_ == b.labels_ && a.leq_ == b.leq_;
  }

 private:
  Poset(std::vector<std::string> labels, std::vector<bool> leq);

  std::vector<std::string> labels_;
  std::vector<bool> leq_;
  std::vector<StrictPair> strict_pairs_;
  std::vector<std::size_t> coordinate_;  // n*n, npos when x is not <= y
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> convolution_terms_;
};

using PosetPtr = std::shared_ptr<const Poset>;

inline PosetPtr share(Poset p) { return std::make_shared<const Poset>(std::move(p)); }

}  // namespace incidence
