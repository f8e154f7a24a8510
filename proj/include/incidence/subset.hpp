#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace incidence {

/// A subset of an ambient set {0, ..., n-1}, n <= 16, stored as a bit mask in
/// poset element order.
class Subset {
 public:
  static constexpr std::size_t kMaxUniverse = 16;

  Subset() = default;
  Subset(std::size_t universe, std::uint32_t bits) : bits_(bits), universe_(static_cast<std::uint8_t>(universe)) {
    if (universe > kMaxUniverse) throw std::invalid_argument("subset universe larger than 16");
    if (bits & ~full_mask(universe)) throw std::invalid_argument("subset bits outside the universe");
  }

  static Subset empty(std::size_t n) { return Subset(n, 0); }
  static Subset full(std::size_t n) { return Subset(n, full_mask(n)); }
  static Subset singleton(std::size_t n, std::size_t x) { return empty(n).with(x); }
  static Subset of(std::size_t n, std::initializer_list<std::size_t> xs) {
    auto s = empty(n);
    for (auto x : xs) s = s.with(x);
    return s;
  }

  std::size_t universe() const { return universe_; }
  std::uint32_t bits() const { return bits_; }
  bool contains(std::size_t x) const { return x < universe_ && ((bits_ >> x) & 1u); }
  std::size_t count() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool is_empty() const { return bits_ == 0; }
  bool is_full() const { return bits_ == full_mask(universe_); }

  Subset with(std::size_t x) const {
    if (x >= universe_) throw std::out_of_range("element outside subset universe");
    return Subset(universe_, bits_ | (1u << x));
  }
  Subset complement() const { return Subset(universe_, ~bits_ & full_mask(universe_)); }

  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < universe_; ++x)
      if (contains(x)) out.push_back(x);
    return out;
  }

  friend Subset operator&(const Subset& a, const Subset& b) { return Subset(check(a, b), a.bits_ & b.bits_); }
  friend Subset operator|(const Subset& a, const Subset& b) { return Subset(check(a, b), a.bits_ | b.bits_); }
  /// Symmetric difference.
  friend Subset operator^(const Subset& a, const Subset& b) { return Subset(check(a, b), a.bits_ ^ b.bits_); }
  friend Subset operator-(const Subset& a, const Subset& b) { return Subset(check(a, b), a.bits_ & ~b.bits_); }

  friend bool operator==(const Subset&, const Subset&) = default;
  friend auto operator<=>(const Subset&, const Subset&) = default;

  static std::uint32_t full_mask(std::size_t n) { return n >= 32 ? ~0u : ((1u << n) - 1u); }

 private:
  static std::size_t check(const Subset& a, const Subset& b) {
    if (a.universe_ != b.universe_) throw std::invalid_argument("subset universe mismatch");
    return a.universe_;
  }

  std::uint32_t bits_ = 0;
  std::uint8_t universe_ = 0;
};

}  // namespace incidence
