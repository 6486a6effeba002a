#include "latsurj/predictions.hpp"

#include "latsurj/integer.hpp"

#include <array>
#include <cfloat>
#include <cmath>
#include <stdexcept>

namespace latsurj {

namespace {

constexpr double kStopLog = 1e-14;

/// Accumulates sum of log(1 - q^{-i}) for i = first, first+1, ... until the
/// pending term is below kStopLog. Returns the log and widens `tail` by a
/// geometric bound on everything omitted.
double log_euler_tail(double q, unsigned first, std::size_t& terms, double& tail) {
  double sum = 0.0;
  for (unsigned i = first;; ++i) {
    const double x = std::pow(q, -static_cast<double>(i));
    const double term = std::log1p(-x);
    if (std::fabs(term) < kStopLog) {
      // -log(1-x_j) <= x_j/(1-x_j), and x_{j+1} = x_j/q
      tail += x / (1 - x) / (1 - 1 / q);
      return sum;
    }
    sum += term;
    ++terms;
  }
}

Prediction finish(double log_value, double log_tail, std::size_t terms) {
  Prediction out;
  out.value = std::exp(log_value);
  // exact = value * exp(-s) with 0 <= s <= log_tail, plus rounding in the sum
  out.truncation_bound = out.value * (-std::expm1(-log_tail)) + out.value * static_cast<double>(terms + 4) * 4 * DBL_EPSILON;
  out.terms_used = terms;
  return out;
}

}  // namespace

bool is_prime_power(std::uint64_t q) {
  if (q < 2) return false;
  auto factors = prime_factors_u64(q);
  return factors.size() == 1;
}

Prediction trivial_cokernel_prediction(std::span<const std::uint64_t> primes, unsigned u) {
  double log_value = 0.0, tail = 0.0;
  std::size_t terms = 0;
  for (auto p : primes) {
    if (!is_probable_prime(from_u64(p))) throw std::invalid_argument("trivial_cokernel_prediction: " + std::to_string(p) + " is not prime");
    log_value += log_euler_tail(static_cast<double>(p), u + 1, terms, tail);
  }
  return finish(log_value, tail, terms);
}

Prediction corank_prediction(std::uint64_t q, unsigned k) {
  if (!is_prime_power(q)) throw std::invalid_argument("corank_prediction: q = " + std::to_string(q) + " is not a prime power");
  const double qd = static_cast<double>(q);
  double log_value = -static_cast<double>(k) * k * std::log(qd);
  for (unsigned i = 1; i <= k; ++i) log_value -= std::log1p(-std::pow(qd, -static_cast<double>(i)));
  double tail = 0.0;
  std::size_t terms = k;
  log_value += log_euler_tail(qd, k + 1, terms, tail);
  return finish(log_value, tail, terms);
}

ZetaTail zeta_minus_one(unsigned s) {
  if (s < 2) throw std::invalid_argument("zeta_minus_one: s must be >= 2");
  constexpr unsigned N = 64;
  const double sd = s;
  double sum = 0.0;
  for (unsigned n = N - 1; n >= 2; --n) sum += std::pow(static_cast<double>(n), -sd);
  const double nd = N;
  double value = sum + std::pow(nd, 1 - sd) / (sd - 1) + 0.5 * std::pow(nd, -sd);
  // B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
  constexpr std::array<double, 5> bernoulli{1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66};
  double rising = sd;  // s(s+1)...(s+2k-2)
  double factorial = 2;
  double last = 0.0;
  for (std::size_t k = 1; k <= bernoulli.size(); ++k) {
    const double term = bernoulli[k - 1] / factorial * rising * std::pow(nd, -sd - 2.0 * k + 1);
    if (k == bernoulli.size()) {
      last = std::fabs(term);
      break;
    }
    value += term;
    rising *= (sd + 2.0 * k - 1) * (sd + 2.0 * k);
    factorial *= (2.0 * k + 1) * (2.0 * k + 2);
  }
  // the remainder is bounded by the first omitted correction; add rounding
  return {value, last + 64 * DBL_EPSILON * value};
}

Prediction trivial_cokernel_all_primes(unsigned u) {
  if (u == 0) {
    Prediction out;
    out.note = "zeta(1) diverges, so the product over all primes is 0";
    return out;
  }
  double log_value = 0.0, err = 0.0;
  std::size_t terms = 0;
  for (unsigned j = u + 1;; ++j) {
    const double x = std::pow(2.0, -static_cast<double>(j));
    if (x < kStopLog) {
      // zeta(i) - 1 <= 2^{-i} (1 + 2/(i-1)) summed over i >= j
      err += 2 * x * (1 + 2.0 / (j - 1));
      break;
    }
    const auto z = zeta_minus_one(j);
    log_value -= std::log1p(z.value);
    err += z.error_bound;
    ++terms;
  }
  Prediction out = finish(log_value, err, terms);
  // err also covers zeta errors, which move the log in either direction
  out.truncation_bound = out.value * std::expm1(err) + out.value * static_cast<double>(terms + 4) * 4 * DBL_EPSILON;
  return out;
}

}  // namespace latsurj
