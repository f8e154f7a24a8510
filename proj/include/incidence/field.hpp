#pragma once

// Exact coefficient fields: prime fields Z_p and the rationals.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace incidence {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class FieldKind { prime, rationals };

/// The three regimes the preserver theorems branch on.
enum class CardinalityClass { two, finite_above_two, infinite };

class FieldDesc {
 public:
  static constexpr std::uint32_t kMaxPrime = 2147483647u;  // 2^31 - 1

  /// Throws std::invalid_argument unless p is a prime <= kMaxPrime.
  static FieldDesc prime(std::uint32_t p);
  static FieldDesc rationals() { return FieldDesc(FieldKind::rationals, 0); }

  FieldKind kind() const { return kind_; }
  bool is_prime() const { return kind_ == FieldKind::prime; }
  bool is_finite() const { return is_prime(); }
  /// 0 for the rationals.
  std::uint32_t characteristic() const { return p_; }
  /// Number of elements; empty for the rationals.
  std::optional<std::uint64_t> cardinality() const;
  CardinalityClass cardinality_class() const;

  /// Literal form used in files: `Fp 3` or `Q`.
  std::string literal() const;

  friend bool operator==(const FieldDesc&, const FieldDesc&) = default;

 private:
  FieldDesc(FieldKind kind, std::uint32_t p) : kind_(kind), p_(p) {}

  FieldKind kind_;
  std::uint32_t p_;
};

bool is_prime_number(std::uint64_t n);

/// An element of a FieldDesc in canonical form: a residue in [0, p) or a
/// reduced fraction with positive denominator.
class Scalar {
 public:
  Scalar() : Scalar(FieldDesc::rationals()) {}
  explicit Scalar(FieldDesc field) : field_(field) {}

  static Scalar zero(FieldDesc field) { return Scalar(field); }
  static Scalar one(FieldDesc field) { return from_int(field, 1); }
  static Scalar from_int(FieldDesc field, std::int64_t v);
  static Scalar from_rational(FieldDesc field, const Rational& v);

  const FieldDesc& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  /// Residue in [0, p); only meaningful for prime fields.
  std::uint32_t residue() const { return residue_; }
  /// The value as a rational; for prime fields, the residue.
  Rational to_rational() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inv(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  /// Multiplicative inverse; throws DivisionByZero on zero.
  Scalar inv() const;

  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Decimal residue for prime fields, `num/den` (or an integer) for Q.
  std::string to_string() const;

 private:
  void require_same_field(const Scalar& o) const;

  FieldDesc field_;
  std::uint32_t residue_ = 0;
  Rational rational_;
};

Scalar add(const Scalar& a, const Scalar& b);
Scalar mul(const Scalar& a, const Scalar& b);
Scalar inv(const Scalar& a);

/// All elements of a prime field in order 0, 1, ..., p-1. Throws
/// std::invalid_argument for the rationals.
std::vector<Scalar> enumerate_field(const FieldDesc& field);

/// Parses `Fp 3`, `Fp3`, `F3`, `Z3` or `Q`.
FieldDesc parse_field(std::string_view text);

/// Parses a decimal integer or `num/den` into the given field. Prime-field
/// fractions are interpreted as num * den^{-1}.
Scalar parse_scalar(const FieldDesc& field, std::string_view text);

}  // namespace incidence
