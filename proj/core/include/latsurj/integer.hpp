#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace latsurj {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

/// Parses a decimal integer, optionally signed. Throws std::invalid_argument.
Integer parse_integer(std::string_view text);

/// Parses "a", "a/b" or a terminating decimal such as "0.125" into an exact
/// rational. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// BPSW-backed probable prime test (deterministic below 2^64).
bool is_probable_prime(const Integer& n);

/// True iff the value fits in a non-negative 64-bit word.
bool fits_u64(const Integer& n);
std::uint64_t to_u64(const Integer& n);
Integer from_u64(std::uint64_t v);

double to_double(const Rational& r);

/// Distinct prime divisors of n >= 1, ascending. Always completes: 64-bit
/// inputs are small enough for Pollard rho to finish.
std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n);

}  // namespace latsurj
