#include "incidence/field.hpp"

#include <cctype>
#include <charconv>

namespace incidence {

namespace {

std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
  auto r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t reduce(const BigInt& v, std::uint32_t p) {
  BigInt r = v % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint32_t>();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigInt parse_integer(std::string_view s) {
  s = trim(s);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw std::invalid_argument("expected an integer");
  BigInt v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("invalid digit '" + std::string(1, c) + "' in scalar");
    v = v * 10 + (c - '0');
  }
  return negative ? BigInt(-v) : v;
}

}  // namespace

bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

FieldDesc FieldDesc::prime(std::uint32_t p) {
  if (p > kMaxPrime || !is_prime_number(p))
    throw std::invalid_argument("field characteristic " + std::to_string(p) +
                                " is not a prime <= 2^31-1");
  return FieldDesc(FieldKind::prime, p);
}

std::optional<std::uint64_t> FieldDesc::cardinality() const {
  if (is_prime()) return p_;
  return std::nullopt;
}

CardinalityClass FieldDesc::cardinality_class() const {
  if (!is_prime()) return CardinalityClass::infinite;
  return p_ == 2 ? CardinalityClass::two : CardinalityClass::finite_above_two;
}

std::string FieldDesc::literal() const {
  return is_prime() ? "Fp " + std::to_string(p_) : "Q";
}

Scalar Scalar::from_int(FieldDesc field, std::int64_t v) {
  Scalar s(field);
  if (field.is_prime())
    s.residue_ = reduce(v, field.characteristic());
  else
    s.rational_ = v;
  return s;
}

Scalar Scalar::from_rational(FieldDesc field, const Rational& v) {
  Scalar s(field);
  if (field.is_prime()) {
    auto p = field.characteristic();
    auto den = reduce(boost::multiprecision::denominator(v), p);
    if (den == 0) throw DivisionByZero("denominator vanishes in Fp " + std::to_string(p));
    Scalar num(field);
    num.residue_ = reduce(boost::multiprecision::numerator(v), p);
    Scalar d(field);
    d.residue_ = den;
    return num * d.inv();
  }
  s.rational_ = v;
  return s;
}

bool Scalar::is_zero() const {
  return field_.is_prime() ? residue_ == 0 : rational_ == 0;
}

bool Scalar::is_one() const {
  return field_.is_prime() ? residue_ == 1 : rational_ == 1;
}

Rational Scalar::to_rational() const {
  return field_.is_prime() ? Rational(residue_) : rational_;
}

void Scalar::require_same_field(const Scalar& o) const {
  if (!(field_ == o.field_))
    throw FieldMismatch("scalar field mismatch: " + field_.literal() + " vs " + o.field_.literal());
}

Scalar& Scalar::operator+=(const Scalar& o) {
  require_same_field(o);
  if (field_.is_prime()) {
    std::uint64_t s = std::uint64_t(residue_) + o.residue_;
    if (s >= field_.characteristic()) s -= field_.characteristic();
    residue_ = static_cast<std::uint32_t>(s);
  } else {
    rational_ += o.rational_;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  require_same_field(o);
  if (field_.is_prime()) {
    std::uint64_t p = field_.characteristic();
    residue_ = static_cast<std::uint32_t>((residue_ + p - o.residue_) % p);
  } else {
    rational_ -= o.rational_;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  require_same_field(o);
  if (field_.is_prime())
    residue_ = static_cast<std::uint32_t>(std::uint64_t(residue_) * o.residue_ %
                                          field_.characteristic());
  else
    rational_ *= o.rational_;
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar r(field_);
  return r -= *this;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  Scalar r(field_);
  if (field_.is_prime()) {
    // Fermat: a^(p-2).
    std::uint64_t p = field_.characteristic(), base = residue_, acc = 1;
    for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
      if (e & 1) acc = acc * base % p;
      base = base * base % p;
    }
    r.residue_ = static_cast<std::uint32_t>(acc);
  } else {
    r.rational_ = 1 / rational_;
  }
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!(a.field_ == b.field_)) return false;
  return a.field_.is_prime() ? a.residue_ == b.residue_ : a.rational_ == b.rational_;
}

std::string Scalar::to_string() const {
  if (field_.is_prime()) return std::to_string(residue_);
  if (boost::multiprecision::denominator(rational_) == 1)
    return boost::multiprecision::numerator(rational_).str();
  return boost::multiprecision::numerator(rational_).str() + "/" +
         boost::multiprecision::denominator(rational_).str();
}

Scalar add(const Scalar& a, const Scalar& b) { return a + b; }
Scalar mul(const Scalar& a, const Scalar& b) { return a * b; }
Scalar inv(const Scalar& a) { return a.inv(); }

std::vector<Scalar> enumerate_field(const FieldDesc& field) {
  if (!field.is_finite()) throw std::invalid_argument("infinite field cannot be enumerated");
  std::vector<Scalar> out;
  out.reserve(field.characteristic());
  for (std::uint32_t v = 0; v < field.characteristic(); ++v) out.push_back(Scalar::from_int(field, v));
  return out;
}

FieldDesc parse_field(std::string_view text) {
  text = trim(text);
  if (text == "Q" || text == "QQ") return FieldDesc::rationals();
  std::string_view rest;
  if (text.starts_with("Fp"))
    rest = text.substr(2);
  else if (text.starts_with("F") || text.starts_with("Z"))
    rest = text.substr(1);
  else
    throw std::invalid_argument("unknown field literal '" + std::string(text) + "'");
  rest = trim(rest);
  std::uint64_t p = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), p);
  if (ec != std::errc() || ptr != rest.data() + rest.size() || rest.empty() || p > FieldDesc::kMaxPrime)
    throw std::invalid_argument("invalid field characteristic in '" + std::string(text) + "'");
  return FieldDesc::prime(static_cast<std::uint32_t>(p));
}

Scalar parse_scalar(const FieldDesc& field, std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Scalar::from_rational(field, Rational(parse_integer(text)));
  BigInt num = parse_integer(text.substr(0, slash));
  BigInt den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw DivisionByZero("zero denominator in '" + std::string(text) + "'");
  return Scalar::from_rational(field, Rational(num, den));
}

}  // namespace incidence
