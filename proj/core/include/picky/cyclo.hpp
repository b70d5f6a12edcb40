#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "picky/numtheory.hpp"

namespace picky {

/// Exact element of a cyclotomic field.
///
/// Canonical form: the conductor n is the least n (n != 2 mod 4) with the
/// value in Q(zeta_n), and the coefficients are taken in the power basis
/// 1, z, ..., z^(phi(n)-1) of Q(zeta_n), where z = exp(2 pi i / n). Two values
/// are equal iff conductor and coefficient vector agree. Every constructor and
/// operation returns a canonical value.
class Cyclotomic {
 public:
  Cyclotomic();
  Cyclotomic(long long value);  // NOLINT(google-explicit-constructor)
  Cyclotomic(const Rational& value);  // NOLINT(google-explicit-constructor)

  /// zeta_n^k.
  static Cyclotomic root_of_unity(std::uint64_t n, long long k);
  /// sum_j coeffs[j] * zeta_n^j for j = 0 .. coeffs.size()-1; exponents are taken mod n.
  static Cyclotomic from_exponents(std::uint64_t n, std::span<const Rational> coeffs);
  /// Value with power-basis coefficients `coeffs` (length phi(n)) in Q(zeta_n).
  static Cyclotomic from_basis(std::uint64_t n, std::span<const Rational> coeffs);

  std::uint64_t conductor() const { return conductor_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const { return conductor_ == 1; }
  std::optional<Rational> as_rational() const;
  std::optional<Integer> as_integer() const;

  /// Complex conjugation zeta -> zeta^-1.
  Cyclotomic conj() const;
  /// Galois automorphism zeta_n -> zeta_n^s; s must be coprime to the conductor.
  Cyclotomic galois(long long s) const;
  /// Throws InputError for zero.
  Cyclotomic inverse() const;

  Cyclotomic operator-() const;
  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }
  Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
  Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
  Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.conductor_ == b.conductor_ && a.coeffs_ == b.coeffs_;
  }

  /// Display form, e.g. "-1", "3/2", "E(3)", "-E(3)^2", "2 + E(5) - E(5)^3".
  std::string to_string() const;

 private:
  Cyclotomic(std::uint64_t conductor, std::vector<Rational> coeffs) : conductor_(conductor), coeffs_(std::move(coeffs)) {}
  static Cyclotomic canonical(std::uint64_t n, std::vector<Rational> basis_coeffs);

  std::uint64_t conductor_ = 1;
  std::vector<Rational> coeffs_;
};

/// Documented total order on canonical values: smaller conductor first, then
/// coefficient vectors compared lexicographically with larger entries first.
/// Used for row ordering and multiset comparisons.
bool canonical_less(const Cyclotomic& a, const Cyclotomic& b);

/// +1 if a == b, -1 if a == -b, nothing otherwise (+1 when both are zero).
std::optional<int> equal_up_to_sign(const Cyclotomic& a, const Cyclotomic& b);

/// Exact sum of many products at a common conductor, canonicalized once at the end.
class CyclotomicAccumulator {
 public:
  void add(const Cyclotomic& a, const Rational& scale = 1);
  void add_product(const Cyclotomic& a, const Cyclotomic& b, const Rational& scale = 1);
  Cyclotomic result() const;

 private:
  void widen(std::uint64_t n);
  std::uint64_t n_ = 1;
  std::vector<Rational> acc_{Rational(0)};  // exponent-indexed, length n_
};

/// "num/den" with the denominator always written.
std::string rational_to_string(const Rational& q);
/// Accepts "num/den" or "num"; throws InputError on malformed text.
Rational rational_from_string(const std::string& s);

/// {"n": conductor, "terms": [[exponent, "num/den"], ...]}, zero terms omitted.
nlohmann::json to_json(const Cyclotomic& c);
Cyclotomic cyclotomic_from_json(const nlohmann::json& j);

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
std::vector<Integer> cyclotomic_polynomial(std::uint64_t n);

}  // namespace picky
