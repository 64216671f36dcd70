#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "padicreg/rational.hpp"

namespace padicreg {

/// Deterministic primality test by trial division. Intended for small,
/// user-supplied primes (configuration, not data-scale input).
bool is_prime(std::int64_t p);

/// Throws std::invalid_argument unless p is prime.
void require_prime(std::int64_t p);

/**
 * A p-adic valuation: an integer, or infinity exactly when the valuated
 * rational is zero. Infinity compares greater than every integer and
 * absorbs addition, which makes the ultrametric and multiplicativity
 * identities hold without special cases.
 */
class ExtendedValuation {
 public:
  static ExtendedValuation infinity() { return ExtendedValuation(true, 0); }
  static ExtendedValuation finite(std::int64_t v) { return ExtendedValuation(false, v); }

  bool is_infinity() const { return infinite_; }

  /// The finite value; throws std::logic_error on infinity.
  std::int64_t value() const;

  ExtendedValuation operator+(const ExtendedValuation& other) const;

  friend bool operator==(const ExtendedValuation&, const ExtendedValuation&) = default;
  friend std::strong_ordering operator<=>(const ExtendedValuation& a,
                                          const ExtendedValuation& b) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    if (a.infinite_) return std::strong_ordering::greater;
    if (b.infinite_) return std::strong_ordering::less;
    return a.value_ <=> b.value_;
  }

 private:
  ExtendedValuation(bool infinite, std::int64_t value) : infinite_(infinite), value_(value) {}
  bool infinite_;
  std::int64_t value_;
};

/**
 * Exact p-adic absolute value p^(-v), stored by its valuation v; never a
 * float. Zero is valuation infinity. Smaller valuation means larger
 * magnitude, so comparisons invert the valuation order.
 */
class PadicMagnitude {
 public:
  PadicMagnitude(ExtendedValuation valuation, std::int64_t prime);

  ExtendedValuation valuation() const { return valuation_; }
  std::int64_t prime() const { return prime_; }
  bool is_zero() const { return valuation_.is_infinity(); }

  /// The exact value p^(-v) as a rational (0 when v is infinite).
  Rational to_rational() const;

  /// |x|_p * |y|_p = |xy|_p; primes must match.
  PadicMagnitude operator*(const PadicMagnitude& other) const;

  friend bool operator==(const PadicMagnitude& a, const PadicMagnitude& b) {
    return a.prime_ == b.prime_ && a.valuation_ == b.valuation_;
  }
  friend bool operator<(const PadicMagnitude& a, const PadicMagnitude& b);
  friend bool operator>(const PadicMagnitude& a, const PadicMagnitude& b) { return b < a; }
  friend bool operator<=(const PadicMagnitude& a, const PadicMagnitude& b) { return !(b < a); }
  friend bool operator>=(const PadicMagnitude& a, const PadicMagnitude& b) { return !(a < b); }

 private:
  ExtendedValuation valuation_;
  std::int64_t prime_;
};

/// v_p(x): the exponent k with x = p^k * (a/b), gcd(ab, p) = 1; infinity
/// for x = 0. Throws std::invalid_argument for non-prime p.
ExtendedValuation valuation(const Rational& x, std::int64_t p);

/// |x|_p = p^(-v_p(x)).
PadicMagnitude abs_p(const Rational& x, std::int64_t p);

/// p^(-v) as an exact rational; 0 for infinite v.
Rational magnitude_to_rational(const ExtendedValuation& v, std::int64_t p);

/**
 * The first k digits a_0..a_{k-1} of the canonical expansion
 * x = a_0 + a_1 p + a_2 p^2 + ..., each digit in [0, p). Defined for
 * p-adic integers only (denominator coprime to p).
 */
struct DigitPrefix {
  std::vector<std::int64_t> digits;
  std::int64_t prime = 2;

  std::size_t length() const { return digits.size(); }

  /// sum a_i p^i over the stored digits, as an exact rational.
  Rational reconstruct() const;
};

/// First k digits of x's p-adic expansion, computed through the modular
/// inverse of the denominator mod p^k (exact, no iterative drift).
/// Throws std::domain_error when v_p(x) < 0 and std::invalid_argument
/// when k = 0.
DigitPrefix digit_prefix(const Rational& x, std::int64_t p, std::size_t k);

/// a_0 of the expansion; for p = 2 this is the parity of a p-adic integer
/// (ordinary residue for integers, well-defined for odd denominators).
std::int64_t first_digit(const Rational& x, std::int64_t p);

}  // namespace padicreg
