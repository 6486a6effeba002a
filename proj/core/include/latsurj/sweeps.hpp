#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace latsurj {

/// Outcome of an exhaustive or randomized family of checks.
struct SweepResult {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  std::uint64_t vacuous = 0;  // cases where the hypothesis fails (alpha = 0)
  std::string first_violation;
  double elapsed_ms = 0.0;

  bool passed() const noexcept { return violations == 0; }
};

/// |P(X.w = r) - 1/q| <= 2/sqrt(alpha m) for every q in `orders`, every law
/// mu with weights of denominator <= max_denominator, every multiset w of
/// 1..max_m nonzero coefficients and every target r. Comparison is exact.
SweepResult lo_grid_sweep(std::span<const std::uint32_t> orders, unsigned max_m = 6, unsigned max_denominator = 8,
                          unsigned threads = 1);

/// |A+B| + |Sym(A+B)| >= |A| + |B| for all nonempty A, B in Z/N, N <= max_n.
SweepResult kneser_sweep(std::uint32_t max_n = 12);

/// Random instances of the level-set containment kT(v) in T(k^2 v).
SweepResult level_set_sweep(std::uint64_t instances = 100000, std::uint64_t seed = 1);

/// Random tuples for cos(b_1+...+b_k) >= k sum cos b_i - k^2 + 1, k <= 6.
SweepResult cosine_sweep(std::uint64_t instances = 100000, std::uint64_t seed = 1);

/// P(X in H) <= (1-alpha)^{n - dim H} exactly, for p in `primes`, n <= max_n,
/// every subspace H of F_p^n, every law on F_p with denominator <= max_denominator.
SweepResult odlyzko_sweep(std::span<const std::uint32_t> primes, std::size_t max_n = 5, unsigned max_denominator = 4);

/// The full Fourier suite at its default sizes.
std::vector<SweepResult> run_fourier_sweeps(std::uint64_t seed = 1, unsigned threads = 1);

}  // namespace latsurj
