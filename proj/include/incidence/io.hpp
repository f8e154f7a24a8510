#pragma once

// Text formats for posets, elements, linear maps and preserver specs.
//
// Poset reference: a built-in name (chain:N, antichain:N, v, diamond), an
// inline literal `[a,b,c | a<b, b<c]`, or a path to a poset file:
//
//   poset
//   elements: a b c
//   relations: a<b b<c
//
// Map file (`field:` and `poset:` may be omitted when supplied elsewhere):
//
//   map
//   field: Fp 3
//   poset: chain:2
//   matrix:
//   1 0 0
//   0 1 0
//   0 0 1
//
// Spec file: `spec`, `field:`, `poset:`, then `lambda: a->{a} b->{b}` (or
// `xor-lambda:` over Z_2) and a `psi:` block of d rows.
//
// Blank lines and `#` comments are ignored everywhere.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "incidence/linear_map.hpp"
#include "incidence/preserver.hpp"

namespace incidence {

/// A syntax or validation error; line is 1-based, 0 when not tied to a line.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t line = 0)
      : std::invalid_argument(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string format_subset(const Poset& poset, const Subset& s);
/// `a->{a,b} b->{}`: the image of each singleton.
std::string format_lambda(const Poset& poset, const Lambda& lambda);

/// Canonical inline literal, e.g. `[a,b,c | a<b, a<c, b<c]` (covering pairs only).
std::string poset_literal(const Poset& poset);
/// Poset file text.
std::string write_poset(const Poset& poset);
Poset parse_poset(std::string_view text);
/// Built-in name, inline literal, or file path (relative to base_dir).
PosetPtr resolve_poset(std::string_view reference, const std::filesystem::path& base_dir = {});

/// `1*e[a] + 2*e[a,b]`, `0`, `delta`; coefficients default to 1.
FIElement parse_element(const PosetPtr& poset, const FieldDesc& field, std::string_view text);

struct MapContext {
  std::optional<PosetPtr> poset;
  std::optional<FieldDesc> field;
  std::filesystem::path base_dir;
};

std::string write_map(const LinearMap& phi);
/// Header values and context values must agree when both are present.
LinearMap parse_map(std::string_view text, const MapContext& context = {});

std::string write_spec(const PreserverSpec& spec);
/// Invariant violations are reported as ParseError carrying the invariant name.
PreserverSpec parse_spec(std::string_view text, const MapContext& context = {});

std::string read_file(const std::filesystem::path& path);

}  // namespace incidence
