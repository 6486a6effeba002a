#pragma once

#include "latsurj/exact_linalg.hpp"
#include "latsurj/integer.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace latsurj {

struct FactorBudget {
  std::uint64_t trial_limit = 1'000'000;
  std::uint64_t rho_iterations = 1u << 18;  // per attempt
  unsigned rho_attempts = 6;
};

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Complete factorization of |d| (d != 0), ascending primes, or nullopt if a
/// composite cofactor survives the budget.
std::optional<std::vector<PrimePower>> factorize(const Integer& d, const FactorBudget& budget = {});

struct PartialFactorization {
  std::vector<PrimePower> found;  // ascending
  Integer cofactor = 1;           // composite part that resisted the budget, 1 if none
};
PartialFactorization partial_factorize(const Integer& d, const FactorBudget& budget = {});

/// Distinct prime divisors of |d|; nullopt on factoring failure.
std::optional<std::vector<Integer>> prime_divisors(const Integer& d, const FactorBudget& budget = {});

/// rank of M mod p equals rows. Throws if p is not prime or cols < rows.
bool surjective_mod_p(const IntMatrix& m, const Integer& p);

enum class Verdict { surjective, not_surjective };
enum class Method { prime_reduction, snf_fallback };

/// Nonsingular submatrices and the primes that had to be checked.
struct SurjectiveWitness {
  std::vector<std::size_t> columns;
  Integer determinant;
  std::optional<std::vector<std::size_t>> second_columns;
  std::optional<Integer> second_determinant;
  Integer gcd;                           // |gcd| of the determinants (|det| if only one)
  std::vector<PrimePower> factorization;  // of gcd
  std::vector<Integer> confirmed_primes;  // each prime of the factorization, full rank mod p
};

/// w^T M = 0 mod `modulus` with w primitive modulo it. The modulus is prime
/// on the prime-reduction path; the SNF path may use a composite invariant
/// factor when factoring failed.
struct AnnihilatorWitness {
  Integer modulus;
  bool prime_modulus = true;
  std::vector<Integer> vector;
};

struct RankDeficiencyWitness {
  std::size_t rational_rank = 0;
};

/// Cokernel computed by Smith normal form (trivial for a surjective verdict).
struct CokernelWitness {
  CokernelStructure cokernel;
};

using Witness = std::variant<SurjectiveWitness, AnnihilatorWitness, RankDeficiencyWitness, CokernelWitness>;

struct Certificate {
  Verdict verdict = Verdict::not_surjective;
  Method method = Method::prime_reduction;
  Witness witness;
  double elapsed_ms = 0.0;
};

struct CertifierOptions {
  FactorBudget budget;
};

/// Decides surjectivity of M : Z^cols -> Z^rows by reduction modulo the
/// primes dividing a gcd of maximal minors, with an SNF fallback.
Certificate is_surjective(const IntMatrix& m, const CertifierOptions& options = {});

/// Re-derives every claim of the certificate independently (Bareiss
/// determinants, fresh rank computations mod p). False on any mismatch.
bool verify_certificate(const IntMatrix& m, const Certificate& c);

const char* to_string(Verdict v);
const char* to_string(Method m);

}  // namespace latsurj
