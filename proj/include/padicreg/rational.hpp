#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace padicreg {

// Exact arbitrary-precision rational, always in lowest terms with a
// positive denominator (zero is 0/1). GMP keeps arithmetic canonical as
// long as inputs are canonical; every constructor path below canonicalizes.
using Rational = mpq_class;
using Integer = mpz_class;

/// Build a canonical rational from numerator and denominator (den != 0).
Rational make_rational(Integer numerator, Integer denominator);

/// Parse "a" or "a/b" with an optional leading minus sign. The input need
/// not be in lowest terms; the result always is. Throws ParseError.
Rational parse_rational(std::string_view text);

/// Canonical text form: "a" when the denominator is 1, otherwise "a/b".
std::string to_string(const Rational& value);

/// Comma-separated canonical forms, e.g. "1/2,0,-3".
std::string to_string(std::span<const Rational> values);

/// Parse a comma-separated list of rationals. Throws ParseError.
std::vector<Rational> parse_rational_vector(std::string_view text);

/// Coordinatewise lexicographic order on rational vectors.
bool lex_less(std::span<const Rational> a, std::span<const Rational> b);

}  // namespace padicreg
