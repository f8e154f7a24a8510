#pragma once

// Invertibility preservers of I(X, K).
//
// A preserver in normal form is a pair (lambda, psi): lambda acts on the
// diagonal, psi maps into the radical and kills delta.
//   |K| > 2:  phi(a)_{yy} = a_{xx} for the unique x with y in A_x
//   K = Z_2:  phi(a)_D = e_{lambda(L_1(a))}, lambda an xor-endomorphism
// and phi(a)_J = psi(a) in both cases.
//
// Deciding phi(U) in U by enumeration uses two exact steps:
//  (i)  No diagonal output may depend on a radical input coordinate. If row y
//       has a nonzero entry c in radical column k, the unit
//       u = delta - (phi(delta)_{yy} / c) e_k has phi(u)_{yy} = 0. This works
//       over every field.
//  (ii) Once (i) holds, phi(a)_D depends only on a_D, so it suffices to test
//       the (q-1)^n unit diagonals (and, for strongness, the q^n diagonals).

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "incidence/boolean_endo.hpp"
#include "incidence/gates.hpp"
#include "incidence/linear_map.hpp"

namespace incidence {

class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Lambda = std::variant<PartitionEndo, XorEndo>;

struct PreserverSpec {
  Lambda lambda;
  LinearMap psi;

  /// Throws SpecError naming the violated invariant: "psi image in radical",
  /// "psi must annihilate delta", "lambda regime", "lambda size".
  void validate() const;

  friend bool operator==(const PreserverSpec&, const PreserverSpec&) = default;
};

/// Builds phi from a validated spec.
LinearMap build_preserver(const PreserverSpec& spec);

/// Raised when phi(e_A)_{xx} lies outside {0, 1}.
class ExtractionError : public std::domain_error {
 public:
  ExtractionError(const std::string& message, Subset set, std::size_t element, Scalar value)
      : std::domain_error(message), set_(set), element_(element), value_(std::move(value)) {}

  const Subset& set() const { return set_; }
  std::size_t element() const { return element_; }
  const Scalar& value() const { return value_; }

 private:
  Subset set_;
  std::size_t element_;
  Scalar value_;
};

/// lambda(A) = {x : phi(e_A)_{xx} = 1}. Requires phi unital and |X| <= 12;
/// throws ExtractionError on a diagonal value outside {0, 1}.
SubsetMapTable extract_lambda(const LinearMap& phi);

/// psi = (radical projection) o phi.
LinearMap extract_psi(const LinearMap& phi);

bool is_unital(const LinearMap& phi);

/// A concrete counterexample to a predicate.
struct Witness {
  std::string description;
  std::vector<FIElement> elements;
};

struct Verdict {
  bool holds = true;
  std::optional<Witness> witness;

  explicit operator bool() const { return holds; }
  static Verdict pass() { return {}; }
  static Verdict fail(std::string description, std::vector<FIElement> elements) {
    return {false, Witness{std::move(description), std::move(elements)}};
  }
};

/// Size limits for the brute-force predicates.
inline constexpr std::size_t kMaxInvertibilityCheckSize = 6;
inline constexpr std::size_t kMaxInverseCheckSize = 4;
inline constexpr std::uint64_t kMaxUnitEnumeration = 1'000'000;
inline constexpr std::uint64_t kMaxIdempotentEnumeration = 1'000'000;

/// phi(U) in U, decided by steps (i) and (ii). Finite fields only, |X| <= 6.
Verdict check_invertibility(const LinearMap& phi, const GateOptions& gates = {});
bool preserves_invertibility(const LinearMap& phi, const GateOptions& gates = {});

/// phi(a) in U implies a in U, checked over all q^n diagonals. Requires step
/// (i) to hold; finite fields only, |X| <= 6.
Verdict check_strong(const LinearMap& phi, const GateOptions& gates = {});
bool is_strong(const LinearMap& phi, const GateOptions& gates = {});

/// phi(u^{-1}) = phi(u)^{-1} for every unit u. A unit mapped to a non-unit is
/// reported as a failure. Finite fields only, |X| <= 4.
Verdict check_inverses(const LinearMap& phi, const GateOptions& gates = {});
bool preserves_inverses(const LinearMap& phi, const GateOptions& gates = {});

/// phi(a o b) = phi(a) o phi(b) on all canonical basis pairs.
Verdict check_jordan(const LinearMap& phi);
bool is_jordan_endo(const LinearMap& phi);

/// phi(ab) = phi(a)phi(b) on basis pairs.
bool is_multiplicative(const LinearMap& phi);
/// phi(ab) = phi(b)phi(a) on basis pairs.
bool is_antimultiplicative(const LinearMap& phi);

/// Every idempotent maps to an idempotent. Exhaustive when q^d <= 10^6;
/// otherwise (or for Q) checked on the family e_A and e_A + k e_{xy} with
/// x in A, y not in A, which spans the algebra.
Verdict check_idempotents(const LinearMap& phi, const GateOptions& gates = {});
bool preserves_idempotents(const LinearMap& phi, const GateOptions& gates = {});

/// All idempotents of a finite-field algebra (q^d gate applies).
std::vector<FIElement> all_idempotents(const PosetPtr& poset, const FieldDesc& field,
                                       const GateOptions& gates = {});

/// e_{xy} -> e_{mu(x) mu(y)} for an order automorphism mu.
LinearMap automorphism_map(const PosetPtr& poset, const FieldDesc& field, const std::vector<std::size_t>& mu);
/// e_{xy} -> e_{tau(y) tau(x)} for an order-reversing bijection tau.
LinearMap anti_automorphism_map(const PosetPtr& poset, const FieldDesc& field, const std::vector<std::size_t>& tau);
/// a -> u a u^{-1}.
LinearMap inner_automorphism(const FIElement& u);

}  // namespace incidence
