#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

namespace latsurj {

struct Prediction {
  double value = 0.0;
  double truncation_bound = 0.0;  // |exact - value| <= truncation_bound
  std::size_t terms_used = 0;
  std::string note;
};

/// prod_{p in primes} prod_{k>=1} (1 - p^{-k-u}). Throws on non-prime entries.
Prediction trivial_cokernel_prediction(std::span<const std::uint64_t> primes, unsigned u);

/// Same product over every prime, evaluated as prod_{j>=u+1} 1/zeta(j).
/// u = 0 gives 0 (zeta(1) diverges) with an explanatory note.
Prediction trivial_cokernel_all_primes(unsigned u);

/// Limiting probability that an iid matrix over F_q has corank k:
/// q^{-k^2} prod_{i=1}^k (1-q^{-i})^{-1} prod_{i>k} (1-q^{-i}).
/// Throws unless q is a prime power.
Prediction corank_prediction(std::uint64_t q, unsigned k);

struct ZetaTail {
  double value;        // zeta(s) - 1
  double error_bound;  // absolute
};

/// zeta(s) - 1 for integer s >= 2, by direct summation plus an
/// Euler-Maclaurin remainder.
ZetaTail zeta_minus_one(unsigned s);

bool is_prime_power(std::uint64_t q);

}  // namespace latsurj
