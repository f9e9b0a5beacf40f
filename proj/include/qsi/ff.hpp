#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qsi/rng.hpp"

namespace qsi {

/// A fully reduced residue; only meaningful together with its PrimeField.
using Residue = std::uint64_t;

/// The prime field F_q with q prime, gcd(q, 6) = 1 and q < 2^62.
class PrimeField {
 public:
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

  /// Throws InvalidModulus for q in {2, 3}, composite q, or q >= 2^62.
  explicit PrimeField(std::uint64_t q);

  std::uint64_t modulus() const noexcept { return q_; }

  Residue reduce(std::uint64_t v) const noexcept { return v % q_; }
  Residue from_signed(std::int64_t v) const noexcept;

  Residue add(Residue a, Residue b) const noexcept {
    Residue s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + q_ - b; }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : q_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>((static_cast<u128>(a) * b) % q_);
  }
  /// Throws DivisionByZero for a == 0.
  Residue inv(Residue a) const;
  Residue div(Residue a, Residue b) const { return mul(a, inv(b)); }
  Residue pow(Residue a, u128 e) const noexcept;

  Residue random(Stream& rng) const { return rng.uniform(q_); }
  Residue random_nonzero(Stream& rng) const { return 1 + rng.uniform(q_ - 1); }

  /// Multiplicative order of a nonzero element.
  std::uint64_t order(Residue a) const;

  friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept { return a.q_ == b.q_; }

 private:
  std::uint64_t q_;
};

/// Throws ModulusMismatch unless both fields agree.
void require_same_field(const PrimeField& a, const PrimeField& b);

/// Field element with its modulus attached, for API boundaries and tests.
class Fq {
 public:
  Fq(const PrimeField& field, std::uint64_t value) : field_(field), value_(field.reduce(value)) {}

  const PrimeField& field() const noexcept { return field_; }
  std::uint64_t modulus() const noexcept { return field_.modulus(); }
  Residue value() const noexcept { return value_; }
  bool is_zero() const noexcept { return value_ == 0; }

  Fq inv() const { return Fq(field_, field_.inv(value_)); }
  Fq pow(u128 e) const { return Fq(field_, field_.pow(value_, e)); }

  friend Fq operator+(const Fq& a, const Fq& b);
  friend Fq operator-(const Fq& a, const Fq& b);
  friend Fq operator*(const Fq& a, const Fq& b);
  friend Fq operator/(const Fq& a, const Fq& b);
  Fq operator-() const { return Fq(field_, field_.neg(value_)); }

  friend bool operator==(const Fq& a, const Fq& b) noexcept {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

 private:
  PrimeField field_;
  Residue value_;
};

std::ostream& operator<<(std::ostream& os, const Fq& x);

// Number theory on machine words.

bool is_prime(std::uint64_t n) noexcept;

/// Prime factorization (trial division + Pollard rho), ascending primes.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

/// Distinct prime divisors of q^4 - 1 = (q - 1)(q + 1)(q^2 + 1). Requires q < 2^32.
std::vector<std::uint64_t> prime_divisors_q4_minus_1(std::uint64_t q);

std::string to_string(u128 v);
/// Parses a decimal u128; throws MalformedInput.
u128 parse_u128(const std::string& text);

}  // namespace qsi
