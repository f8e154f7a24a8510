#pragma once

// Maps of the power set P(X) of a finite set: Boolean-algebra endomorphisms
// represented by partitions, additive endomorphisms of (P(X), xor) fixing X
// represented by 0/1 matrices, and explicit tables for maps whose structure is
// not yet known.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "incidence/gates.hpp"
#include "incidence/subset.hpp"

namespace incidence {

class EndoError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// lambda(Y) = union of A_y over y in Y, for a family {A_x} of pairwise
/// disjoint blocks covering X. Empty blocks are allowed.
class PartitionEndo {
 public:
  /// Throws EndoError when blocks overlap or miss an element.
  static PartitionEndo from_blocks(std::vector<Subset> blocks);
  /// owner[y] = the x whose block contains y.
  static PartitionEndo from_owner(const std::vector<std::size_t>& owner);
  static PartitionEndo identity(std::size_t n);

  std::size_t size() const { return blocks_.size(); }
  const std::vector<Subset>& blocks() const { return blocks_; }
  const Subset& block(std::size_t x) const { return blocks_.at(x); }
  std::size_t owner(std::size_t y) const { return owner_.at(y); }

  Subset apply(const Subset& a) const;

  friend bool operator==(const PartitionEndo& a, const PartitionEndo& b) { return a.blocks_ == b.blocks_; }

 private:
  explicit PartitionEndo(std::vector<Subset> blocks);

  std::vector<Subset> blocks_;
  std::vector<std::size_t> owner_;
};

/// lambda(A) = M * chi(A) over Z_2. Column x of M is lambda({x}); the columns
/// XOR to X, which is lambda(X) = X.
class XorEndo {
 public:
  /// Throws EndoError unless the columns XOR to the full set.
  static XorEndo from_columns(std::vector<Subset> columns);
  static XorEndo identity(std::size_t n);

  std::size_t size() const { return columns_.size(); }
  const std::vector<Subset>& columns() const { return columns_; }
  const Subset& column(std::size_t x) const { return columns_.at(x); }
  /// M[row][col] as 0/1.
  bool entry(std::size_t row, std::size_t col) const { return columns_.at(col).contains(row); }

  Subset apply(const Subset& a) const;

  friend bool operator==(const XorEndo&, const XorEndo&) = default;

 private:
  explicit XorEndo(std::vector<Subset> columns) : columns_(std::move(columns)) {}

  std::vector<Subset> columns_;
};

/// Explicit lambda: P(X) -> P(X), indexed by the subset bit mask.
class SubsetMapTable {
 public:
  static constexpr std::size_t kMaxSize = 12;

  static SubsetMapTable from_function(std::size_t n, const std::function<Subset(const Subset&)>& f);
  static SubsetMapTable from_images(std::size_t n, std::vector<Subset> images);
  static SubsetMapTable tabulate(const PartitionEndo& e);
  static SubsetMapTable tabulate(const XorEndo& e);

  std::size_t size() const { return n_; }
  const std::vector<Subset>& images() const { return images_; }
  Subset apply(const Subset& a) const;

  friend bool operator==(const SubsetMapTable&, const SubsetMapTable&) = default;

 private:
  SubsetMapTable(std::size_t n, std::vector<Subset> images) : n_(n), images_(std::move(images)) {}

  std::size_t n_ = 0;
  std::vector<Subset> images_;
};

inline Subset apply(const PartitionEndo& e, const Subset& a) { return e.apply(a); }
inline Subset apply(const XorEndo& e, const Subset& a) { return e.apply(a); }
inline Subset apply(const SubsetMapTable& t, const Subset& a) { return t.apply(a); }

/// Largest |X| for the exhaustive table predicates below.
inline constexpr std::size_t kMaxExhaustiveTableSize = 8;

/// A and B disjoint implies lambda(A) and lambda(B) disjoint. Requires |X| <= 8.
bool is_separating(const SubsetMapTable& t);

/// lambda(X) = X, lambda(X \ A) = X \ lambda(A), lambda(A & B) = lambda(A) & lambda(B).
/// Requires |X| <= 8.
bool is_boolean_endo(const SubsetMapTable& t);

/// lambda(A xor B) = lambda(A) xor lambda(B) and lambda(X) = X. Requires |X| <= 8.
bool is_xor_endo(const SubsetMapTable& t);

/// Reads off A_x = lambda({x}). Throws EndoError when the table is not a
/// Boolean endomorphism (the singleton images do not partition X, or the
/// partition does not reproduce the table).
PartitionEndo to_partition(const SubsetMapTable& t);

/// Reads off the columns lambda({x}). Throws EndoError when the table is not
/// additive with lambda(X) = X.
XorEndo to_xor_endo(const SubsetMapTable& t);

/// Every block nonempty.
bool is_injective(const PartitionEndo& e);
/// Matrix invertible over Z_2.
bool is_injective(const XorEndo& e);

/// The bijection mu with lambda({x}) = {mu(x)}, when every block is a singleton.
std::optional<std::vector<std::size_t>> is_automorphism(const PartitionEndo& e);
/// The inverse matrix (as an XorEndo) when M is invertible over Z_2.
std::optional<XorEndo> is_automorphism(const XorEndo& e);

/// Union of lambda(part) over the parts equals X. Throws EndoError unless the
/// parts are pairwise disjoint with union X.
bool check_partition_preservation(const PartitionEndo& e, const std::vector<Subset>& parts);
bool check_partition_preservation(const XorEndo& e, const std::vector<Subset>& parts);
bool check_partition_preservation(const SubsetMapTable& t, const std::vector<Subset>& parts);

enum class EndoRegime { boolean, xor_group };

/// Largest |X| for endomorphism enumeration.
inline constexpr std::size_t kMaxEnumeratedEndoSize = 4;

/// n^n (boolean) or 2^{n(n-1)} (xor).
std::uint64_t endo_count(std::size_t n, EndoRegime regime);
/// The index-th endomorphism in enumeration order; indices can be split into
/// ranges for parallel workers.
PartitionEndo partition_endo_at(std::size_t n, std::uint64_t index);
XorEndo xor_endo_at(std::size_t n, std::uint64_t index);

/// Streams every endomorphism to the visitor. Requires |X| <= 4.
void enumerate_endos(std::size_t n, const std::function<void(const PartitionEndo&)>& visit);
void enumerate_endos(std::size_t n, const std::function<void(const XorEndo&)>& visit);

/// All set partitions of {0..n-1} into nonempty blocks, at most max_blocks of them.
std::vector<std::vector<Subset>> set_partitions(std::size_t n, std::size_t max_blocks);

}  // namespace incidence
