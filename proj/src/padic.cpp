#include "padicreg/padic.hpp"

#include <stdexcept>
#include <string>

namespace padicreg {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (std::int64_t d = 3; d <= p / d; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

void require_prime(std::int64_t p) {
  if (!is_prime(p)) {
    throw std::invalid_argument("p must be a prime >= 2, got " + std::to_string(p));
  }
}

std::int64_t ExtendedValuation::value() const {
  if (infinite_) throw std::logic_error("infinite valuation has no finite value");
  return value_;
}

ExtendedValuation ExtendedValuation::operator+(const ExtendedValuation& other) const {
  if (infinite_ || other.infinite_) return infinity();
  return finite(value_ + other.value_);
}

PadicMagnitude::PadicMagnitude(ExtendedValuation valuation, std::int64_t prime)
    : valuation_(valuation), prime_(prime) {
  require_prime(prime);
}

Rational PadicMagnitude::to_rational() const { return magnitude_to_rational(valuation_, prime_); }

PadicMagnitude PadicMagnitude::operator*(const PadicMagnitude& other) const {
  if (prime_ != other.prime_) {
    throw std::invalid_argument("cannot multiply magnitudes over different primes");
  }
  return PadicMagnitude(valuation_ + other.valuation_, prime_);
}

bool operator<(const PadicMagnitude& a, const PadicMagnitude& b) {
  if (a.prime_ != b.prime_) {
    throw std::invalid_argument("cannot compare magnitudes over different primes");
  }
  return a.valuation_ > b.valuation_;
}

ExtendedValuation valuation(const Rational& x, std::int64_t p) {
  require_prime(p);
  if (sgn(x) == 0) return ExtendedValuation::infinity();
  // x is in lowest terms, so p divides at most one of numerator and
  // denominator.
  Integer prime(static_cast<long>(p));
  Integer reduced;
  if (mpz_divisible_p(x.get_num_mpz_t(), prime.get_mpz_t())) {
    const auto k = mpz_remove(reduced.get_mpz_t(), x.get_num_mpz_t(), prime.get_mpz_t());
    return ExtendedValuation::finite(static_cast<std::int64_t>(k));
  }
  if (mpz_divisible_p(x.get_den_mpz_t(), prime.get_mpz_t())) {
    const auto k = mpz_remove(reduced.get_mpz_t(), x.get_den_mpz_t(), prime.get_mpz_t());
    return ExtendedValuation::finite(-static_cast<std::int64_t>(k));
  }
  return ExtendedValuation::finite(0);
}

PadicMagnitude abs_p(const Rational& x, std::int64_t p) { return PadicMagnitude(valuation(x, p), p); }

Rational magnitude_to_rational(const ExtendedValuation& v, std::int64_t p) {
  if (v.is_infinity()) return Rational(0);
  Integer power;
  mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(v.value() < 0 ? -v.value() : v.value()));
  if (v.value() >= 0) return make_rational(1, std::move(power));
  return Rational(std::move(power));
}

Rational DigitPrefix::reconstruct() const {
  Integer acc(0);
  for (std::size_t i = digits.size(); i-- > 0;) {
    acc = acc * prime + digits[i];
  }
  return Rational(acc);
}

DigitPrefix digit_prefix(const Rational& x, std::int64_t p, std::size_t k) {
  require_prime(p);
  if (k == 0) throw std::invalid_argument("digit prefix length must be >= 1");
  const ExtendedValuation v = valuation(x, p);
  if (!v.is_infinity() && v.value() < 0) {
    throw std::domain_error("not a p-adic integer: denominator of " + to_string(x) +
                            " is divisible by " + std::to_string(p));
  }

  // Solve x = num/den mod p^k through the modular inverse of den, then
  // peel base-p digits off the residue.
  Integer modulus;
  mpz_ui_pow_ui(modulus.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  Integer inv;
  mpz_invert(inv.get_mpz_t(), x.get_den_mpz_t(), modulus.get_mpz_t());
  Integer residue;
  mpz_mod(residue.get_mpz_t(), x.get_num_mpz_t(), modulus.get_mpz_t());
  residue = residue * inv;
  mpz_mod(residue.get_mpz_t(), residue.get_mpz_t(), modulus.get_mpz_t());

  DigitPrefix out;
  out.prime = p;
  out.digits.reserve(k);
  Integer quotient;
  for (std::size_t i = 0; i < k; ++i) {
    out.digits.push_back(static_cast<std::int64_t>(
        mpz_fdiv_q_ui(quotient.get_mpz_t(), residue.get_mpz_t(), static_cast<unsigned long>(p))));
    mpz_swap(residue.get_mpz_t(), quotient.get_mpz_t());
  }
  return out;
}

std::int64_t first_digit(const Rational& x, std::int64_t p) {
  return digit_prefix(x, p, 1).digits.front();
}

}  // namespace padicreg
