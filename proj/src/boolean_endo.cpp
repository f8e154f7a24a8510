#include "incidence/boolean_endo.hpp"

#include <string>

namespace incidence {

namespace {

void require_table_gate(const SubsetMapTable& t, const char* what) {
  if (t.size() > kMaxExhaustiveTableSize)
    throw GateExceeded(std::string("|X| for ") + what, t.size(), kMaxExhaustiveTableSize);
}

void require_partition_of_x(std::size_t n, const std::vector<Subset>& parts) {
  auto seen = Subset::empty(n);
  for (const auto& p : parts) {
    if (p.universe() != n) throw EndoError("part does not live in the ambient set");
    if (!(seen & p).is_empty()) throw EndoError("parts are not pairwise disjoint");
    seen = seen | p;
  }
  if (!seen.is_full()) throw EndoError("parts do not cover X");
}

template <class Map>
bool union_covers(const Map& m, std::size_t n, const std::vector<Subset>& parts) {
  require_partition_of_x(n, parts);
  auto covered = Subset::empty(n);
  for (const auto& p : parts) covered = covered | m.apply(p);
  return covered.is_full();
}

// Rows of the Z_2 matrix as bit masks over columns.
std::vector<std::uint32_t> matrix_rows(const XorEndo& e) {
  std::vector<std::uint32_t> rows(e.size(), 0);
  for (std::size_t c = 0; c < e.size(); ++c)
    for (std::size_t r = 0; r < e.size(); ++r)
      if (e.entry(r, c)) rows[r] |= 1u << c;
  return rows;
}

// Gauss-Jordan over Z_2; returns the inverse rows when the matrix is invertible.
std::optional<std::vector<std::uint32_t>> invert_z2(std::vector<std::uint32_t> rows) {
  const std::size_t n = rows.size();
  std::vector<std::uint32_t> inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i] = 1u << i;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && !((rows[pivot] >> col) & 1u)) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(rows[pivot], rows[col]);
    std::swap(inv[pivot], inv[col]);
    for (std::size_t r = 0; r < n; ++r)
      if (r != col && ((rows[r] >> col) & 1u)) {
        rows[r] ^= rows[col];
        inv[r] ^= inv[col];
      }
  }
  return inv;
}

}  // namespace

// PartitionEndo

PartitionEndo::PartitionEndo(std::vector<Subset> blocks) : blocks_(std::move(blocks)) {
  const std::size_t n = blocks_.size();
  owner_.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (auto y : blocks_[x].elements()) owner_[y] = x;
}

PartitionEndo PartitionEndo::from_blocks(std::vector<Subset> blocks) {
  require_partition_of_x(blocks.size(), blocks);
  return PartitionEndo(std::move(blocks));
}

PartitionEndo PartitionEndo::from_owner(const std::vector<std::size_t>& owner) {
  const std::size_t n = owner.size();
  std::vector<Subset> blocks(n, Subset::empty(n));
  for (std::size_t y = 0; y < n; ++y) {
    if (owner[y] >= n) throw EndoError("owner index out of range");
    blocks[owner[y]] = blocks[owner[y]].with(y);
  }
  return PartitionEndo(std::move(blocks));
}

PartitionEndo PartitionEndo::identity(std::size_t n) {
  std::vector<std::size_t> owner(n);
  for (std::size_t i = 0; i < n; ++i) owner[i] = i;
  return from_owner(owner);
}

Subset PartitionEndo::apply(const Subset& a) const {
  if (a.universe() != size()) throw EndoError("subset size does not match the endomorphism");
  auto out = Subset::empty(size());
  for (auto x : a.elements()) out = out | blocks_[x];
  return out;
}

// XorEndo

XorEndo XorEndo::from_columns(std::vector<Subset> columns) {
  const std::size_t n = columns.size();
  auto total = Subset::empty(n);
  for (const auto& c : columns) {
    if (c.universe() != n) throw EndoError("column does not live in the ambient set");
    total = total ^ c;
  }
  if (!total.is_full()) throw EndoError("xor-lambda must fix X: the columns do not XOR to X");
  return XorEndo(std::move(columns));
}

XorEndo XorEndo::identity(std::size_t n) {
  std::vector<Subset> cols;
  for (std::size_t x = 0; x < n; ++x) cols.push_back(Subset::singleton(n, x));
  return XorEndo(std::move(cols));
}

Subset XorEndo::apply(const Subset& a) const {
  if (a.universe() != size()) throw EndoError("subset size does not match the endomorphism");
  auto out = Subset::empty(size());
  for (auto x : a.elements()) out = out ^ columns_[x];
  return out;
}

// SubsetMapTable

SubsetMapTable SubsetMapTable::from_function(std::size_t n, const std::function<Subset(const Subset&)>& f) {
  if (n > kMaxSize) throw EndoError("subset tables are limited to |X| <= 12");
  std::vector<Subset> images;
  images.reserve(std::size_t(1) << n);
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) images.push_back(f(Subset(n, bits)));
  return from_images(n, std::move(images));
}

SubsetMapTable SubsetMapTable::from_images(std::size_t n, std::vector<Subset> images) {
  if (n > kMaxSize) throw EndoError("subset tables are limited to |X| <= 12");
  if (images.size() != (std::size_t(1) << n)) throw EndoError("subset table must have 2^|X| entries");
  for (const auto& s : images)
    if (s.universe() != n) throw EndoError("table image does not live in the ambient set");
  return SubsetMapTable(n, std::move(images));
}

SubsetMapTable SubsetMapTable::tabulate(const PartitionEndo& e) {
  return from_function(e.size(), [&](const Subset& a) { return e.apply(a); });
}

SubsetMapTable SubsetMapTable::tabulate(const XorEndo& e) {
  return from_function(e.size(), [&](const Subset& a) { return e.apply(a); });
}

Subset SubsetMapTable::apply(const Subset& a) const {
  if (a.universe() != n_) throw EndoError("subset size does not match the table");
  return images_[a.bits()];
}

// Predicates

bool is_separating(const SubsetMapTable& t) {
  require_table_gate(t, "is_separating");
  const std::size_t n = t.size();
  const std::uint32_t full = Subset::full_mask(n);
  for (std::uint32_t a = 0; a <= full; ++a) {
    // All B inside the complement of A.
    const std::uint32_t rest = full & ~a;
    for (std::uint32_t b = rest;; b = (b - 1) & rest) {
      if (!(t.images()[a] & t.images()[b]).is_empty()) return false;
      if (b == 0) break;
    }
  }
  return true;
}

bool is_boolean_endo(const SubsetMapTable& t) {
  require_table_gate(t, "is_boolean_endo");
  const std::size_t n = t.size();
  const auto& img = t.images();
  const std::uint32_t full = Subset::full_mask(n);
  if (!img[full].is_full()) return false;
  for (std::uint32_t a = 0; a <= full; ++a) {
    if (!(img[full & ~a] == img[a].complement())) return false;
    for (std::uint32_t b = 0; b <= full; ++b)
      if (!(img[a & b] == (img[a] & img[b]))) return false;
  }
  return true;
}

bool is_xor_endo(const SubsetMapTable& t) {
  require_table_gate(t, "is_xor_endo");
  const std::size_t n = t.size();
  const auto& img = t.images();
  const std::uint32_t full = Subset::full_mask(n);
  if (!img[full].is_full()) return false;
  for (std::uint32_t a = 0; a <= full; ++a)
    for (std::uint32_t b = 0; b <= full; ++b)
      if (!(img[a ^ b] == (img[a] ^ img[b]))) return false;
  return true;
}

PartitionEndo to_partition(const SubsetMapTable& t) {
  const std::size_t n = t.size();
  std::vector<Subset> blocks;
  for (std::size_t x = 0; x < n; ++x) blocks.push_back(t.apply(Subset::singleton(n, x)));
  PartitionEndo e = [&] {
    try {
      return PartitionEndo::from_blocks(blocks);
    } catch (const EndoError& err) {
      throw EndoError(std::string("not a Boolean endomorphism: singleton images do not form a partition (") +
                      err.what() + ")");
    }
  }();
  if (!(SubsetMapTable::tabulate(e) == t))
    throw EndoError("not a Boolean endomorphism: table differs from the union of its singleton images");
  return e;
}

XorEndo to_xor_endo(const SubsetMapTable& t) {
  const std::size_t n = t.size();
  std::vector<Subset> columns;
  for (std::size_t x = 0; x < n; ++x) columns.push_back(t.apply(Subset::singleton(n, x)));
  XorEndo e = [&] {
    try {
      return XorEndo::from_columns(columns);
    } catch (const EndoError& err) {
      throw EndoError(std::string("not an endomorphism of (P(X), xor) fixing X (") + err.what() + ")");
    }
  }();
  if (!(SubsetMapTable::tabulate(e) == t))
    throw EndoError("not an endomorphism of (P(X), xor): table is not additive");
  return e;
}

bool is_injective(const PartitionEndo& e) {
  for (const auto& b : e.blocks())
    if (b.is_empty()) return false;
  return true;
}

bool is_injective(const XorEndo& e) { return invert_z2(matrix_rows(e)).has_value(); }

std::optional<std::vector<std::size_t>> is_automorphism(const PartitionEndo& e) {
  std::vector<std::size_t> mu;
  for (const auto& b : e.blocks()) {
    if (b.count() != 1) return std::nullopt;
    mu.push_back(b.elements().front());
  }
  return mu;
}

std::optional<XorEndo> is_automorphism(const XorEndo& e) {
  const std::size_t n = e.size();
  auto inv_rows = invert_z2(matrix_rows(e));
  if (!inv_rows) return std::nullopt;
  std::vector<Subset> cols(n, Subset::empty(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (((*inv_rows)[r] >> c) & 1u) cols[c] = cols[c].with(r);
  // The inverse also fixes X, so the column constraint holds.
  return XorEndo::from_columns(std::move(cols));
}

bool check_partition_preservation(const PartitionEndo& e, const std::vector<Subset>& parts) {
  return union_covers(e, e.size(), parts);
}

bool check_partition_preservation(const XorEndo& e, const std::vector<Subset>& parts) {
  return union_covers(e, e.size(), parts);
}

bool check_partition_preservation(const SubsetMapTable& t, const std::vector<Subset>& parts) {
  return union_covers(t, t.size(), parts);
}

// Enumeration

std::uint64_t endo_count(std::size_t n, EndoRegime regime) {
  if (n > kMaxEnumeratedEndoSize)
    throw GateExceeded("|X| for endomorphism enumeration", n, kMaxEnumeratedEndoSize);
  std::uint64_t count = 1;
  if (regime == EndoRegime::boolean) {
    for (std::size_t i = 0; i < n; ++i) count *= n;
  } else {
    count = std::uint64_t(1) << (n * (n == 0 ? 0 : n - 1));
  }
  return count;
}

PartitionEndo partition_endo_at(std::size_t n, std::uint64_t index) {
  if (index >= endo_count(n, EndoRegime::boolean)) throw std::out_of_range("endomorphism index out of range");
  std::vector<std::size_t> owner(n);
  for (std::size_t y = 0; y < n; ++y) {
    owner[y] = index % n;
    index /= n;
  }
  return PartitionEndo::from_owner(owner);
}

XorEndo xor_endo_at(std::size_t n, std::uint64_t index) {
  if (index >= endo_count(n, EndoRegime::xor_group)) throw std::out_of_range("endomorphism index out of range");
  // Row r: free bits in columns 0..n-2, the last column restores odd parity.
  std::vector<Subset> cols(n, Subset::empty(n));
  for (std::size_t r = 0; r < n; ++r) {
    bool parity = false;
    for (std::size_t c = 0; c + 1 < n; ++c) {
      bool bit = index & 1u;
      index >>= 1;
      if (bit) cols[c] = cols[c].with(r);
      parity ^= bit;
    }
    if (!parity) cols[n - 1] = cols[n - 1].with(r);
  }
  return XorEndo::from_columns(std::move(cols));
}

void enumerate_endos(std::size_t n, const std::function<void(const PartitionEndo&)>& visit) {
  const auto count = endo_count(n, EndoRegime::boolean);
  for (std::uint64_t i = 0; i < count; ++i) visit(partition_endo_at(n, i));
}

void enumerate_endos(std::size_t n, const std::function<void(const XorEndo&)>& visit) {
  const auto count = endo_count(n, EndoRegime::xor_group);
  for (std::uint64_t i = 0; i < count; ++i) visit(xor_endo_at(n, i));
}

std::vector<std::vector<Subset>> set_partitions(std::size_t n, std::size_t max_blocks) {
  // Restricted growth strings: block[i] <= 1 + max(block[0..i-1]).
  std::vector<std::vector<Subset>> out;
  if (n == 0) {
    out.push_back({});
    return out;
  }
  std::vector<std::size_t> block(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i == n) {
      std::vector<Subset> parts(used, Subset::empty(n));
      for (std::size_t y = 0; y < n; ++y) parts[block[y]] = parts[block[y]].with(y);
      out.push_back(std::move(parts));
      return;
    }
    for (std::size_t b = 0; b <= used && b < max_blocks; ++b) {
      block[i] = b;
      rec(i + 1, b == used ? used + 1 : used);
    }
  };
  rec(0, 0);
  return out;
}

}  // namespace incidence
