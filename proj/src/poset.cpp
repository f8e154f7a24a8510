#include "incidence/poset.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_set>

namespace incidence {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

std::vector<std::string> numbered_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

}  // namespace

Poset Poset::from_relations(std::vector<std::string> labels,
                            const std::vector<std::pair<std::string, std::string>>& less) {
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  auto find = [&](const std::string& l) {
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) throw PosetError("unknown element '" + l + "' in relation");
    return static_cast<std::size_t>(it - labels.begin());
  };
  for (const auto& [a, b] : less) idx.emplace_back(find(a), find(b));
  return from_index_relations(std::move(labels), idx);
}

Poset Poset::from_index_relations(std::vector<std::string> labels,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& less) {
  const std::size_t n = labels.size();
  if (n > kMaxElements)
    throw PosetError("poset has " + std::to_string(n) + " elements; the limit is " +
                     std::to_string(kMaxElements));
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw PosetError("empty element label");
    if (!seen.insert(l).second) throw PosetError("duplicate label '" + l + "'");
  }
  std::vector<bool> leq(n * n, false);
  for (std::size_t i = 0; i < n; ++i) leq[i * n + i] = true;
  for (auto [a, b] : less) {
    if (a >= n || b >= n) throw PosetError("relation index out of range");
    leq[a * n + b] = true;
  }
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq[k * n + j]) leq[i * n + j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (leq[i * n + j] && leq[j * n + i])
        throw PosetError("cycle detected: " + labels[i] + " and " + labels[j] +
                         " are mutually related (antisymmetry violated)");
  return Poset(std::move(labels), std::move(leq));
}

Poset::Poset(std::vector<std::string> labels, std::vector<bool> relation)
    : labels_(std::move(labels)), leq_(std::move(relation)) {
  const std::size_t n = size();
  coordinate_.assign(n * n, npos);
  for (std::size_t x = 0; x < n; ++x) coordinate_[x * n + x] = x;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (less(x, y)) {
        coordinate_[x * n + y] = n + strict_pairs_.size();
        strict_pairs_.push_back({x, y});
      }
  convolution_terms_.resize(basis_size());
  for (std::size_t k = 0; k < basis_size(); ++k) {
    auto [x, y] = pair_at(k);
    for (std::size_t z = 0; z < n; ++z)
      if (leq(x, z) && leq(z, y)) convolution_terms_[k].emplace_back(*coordinate(x, z), *coordinate(z, y));
  }
}

Poset Poset::chain(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::size_t i = 0; i + 1 < n; ++i) rel.emplace_back(i, i + 1);
  return from_index_relations(numbered_labels(n), rel);
}

Poset Poset::antichain(std::size_t n) { return from_index_relations(numbered_labels(n), {}); }

Poset Poset::v() { return from_relations({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}}); }

Poset Poset::diamond() {
  return from_relations({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
}

std::optional<std::size_t> Poset::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

std::optional<std::size_t> Poset::coordinate(std::size_t x, std::size_t y) const {
  if (x >= size() || y >= size()) return std::nullopt;
  auto c = coordinate_[x * size() + y];
  if (c == npos) return std::nullopt;
  return c;
}

std::pair<std::size_t, std::size_t> Poset::pair_at(std::size_t coordinate) const {
  if (coordinate < size()) return {coordinate, coordinate};
  const auto& p = strict_pairs_.at(coordinate - size());
  return {p.lower, p.upper};
}

std::vector<StrictPair> Poset::covering_pairs() const {
  std::vector<StrictPair> out;
  for (const auto& p : strict_pairs_) {
    bool covered = true;
    for (std::size_t z = 0; z < size() && covered; ++z)
      if (less(p.lower, z) && less(z, p.upper)) covered = false;
    if (covered) out.push_back(p);
  }
  return out;
}

bool Poset::is_connected() const {
  const std::size_t n = size();
  if (n == 0) return true;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& p : strict_pairs_) parent[root(p.lower)] = root(p.upper);
  for (std::size_t x = 1; x < n; ++x)
    if (root(x) != root(0)) return false;
  return true;
}

Poset Poset::dual() const {
  const std::size_t n = size();
  std::vector<bool> rev(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) rev[x * n + y] = leq(y, x);
  return Poset(labels_, std::move(rev));
}

std::size_t Poset::longest_chain() const {
  const std::size_t n = size();
  // Longest chain ending at y, processed in an order compatible with <=
  // (elements with fewer predecessors come first).
  std::vector<std::size_t> order(n), below(n, 0), best(n, 1);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x)
      if (less(x, y)) ++below[y];
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return below[a] < below[b]; });
  std::size_t result = 0;
  for (auto y : order) {
    for (std::size_t x = 0; x < n; ++x)
      if (less(x, y)) best[y] = std::max(best[y], best[x] + 1);
    result = std::max(result, best[y]);
  }
  return result;
}

}  // namespace incidence
