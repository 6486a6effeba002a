#pragma once

#include "latsurj/certifier.hpp"
#include "latsurj/ensembles.hpp"
#include "latsurj/exact_linalg.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace latsurj {

// All logarithms below are natural.

/// sqrt(3 ln n / (alpha n)).
double epsilon_n(std::size_t n, const Rational& alpha);

/// ceil(B ln n / (alpha d_prev)), at least 1.
std::size_t batch_size(std::size_t n, const Rational& alpha, double B, std::size_t d_prev);

/// floor(B ((L) ln(L) + ln n)) with L = ln n / alpha. The simple variant is
/// floor(B ln^2 n / alpha + sqrt(n ln n / alpha)).
std::size_t u_budget(std::size_t n, const Rational& alpha, double B, bool simple = false);

enum class PrimeSource { divisors_of_det, explicit_list };

struct ExposureOptions {
  double B = 1.0;
  std::uint64_t seed = 0;
  PrimeSource source = PrimeSource::divisors_of_det;
  std::vector<Integer> primes;      // explicit_list only
  std::optional<std::size_t> cap;   // extra-column cap; default 10 * u_budget
  FactorBudget budget;
};

struct ExposureTrace {
  Rational alpha;
  std::vector<Integer> primes;
  std::vector<std::vector<std::size_t>> coranks;  // per prime: d_0, d_1, ...
  /// Part of det(M0) that could not be factored. Its trajectory counts the
  /// invariant factors of the running matrix that share a factor with it,
  /// which equals the largest corank over its unknown prime divisors.
  Integer cofactor = 1;
  std::vector<std::size_t> cofactor_coranks;
  std::vector<std::size_t> batches;   // k_1, k_2, ...
  std::vector<std::size_t> drivers;   // d_{i-1} used to size batch i
  std::size_t total_extra_columns = 0;
  std::size_t cap = 0;
  bool achieved = false;

  std::size_t max_corank(std::size_t step) const;
};

struct ExposureRun {
  ExposureTrace trace;
  IntMatrix final_matrix;
};

/// Appends batches of fresh iid columns to the square matrix M0 until every
/// tracked prime sees full rank, or until the next batch would pass the cap.
/// The same sampled columns update every prime. Batches are sized from the
/// largest current corank.
ExposureRun run_exposure(const IntMatrix& m0, const Distribution& dist, const ExposureOptions& options);

}  // namespace latsurj
