#include "latsurj/exposure.hpp"

#include "latsurj/modp_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latsurj {

namespace {

double checked_alpha(const Rational& alpha) {
  if (alpha <= 0 || alpha > 1) throw std::invalid_argument("alpha must lie in (0,1], got " + to_string(alpha));
  return alpha.get_d();
}

/// Invariant factors of m sharing a prime with c, plus the free rank.
std::size_t cofactor_corank(const IntMatrix& m, const Integer& c) {
  const auto cok = cokernel(m);
  std::size_t count = cok.free_rank;
  for (const auto& d : cok.invariant_factors) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), c.get_mpz_t());
    if (g != 1) ++count;
  }
  return count;
}

}  // namespace

double epsilon_n(std::size_t n, const Rational& alpha) {
  if (n < 2) throw std::invalid_argument("epsilon_n needs n >= 2");
  const double a = checked_alpha(alpha);
  return std::sqrt(3 * std::log(static_cast<double>(n)) / (a * static_cast<double>(n)));
}

std::size_t batch_size(std::size_t n, const Rational& alpha, double B, std::size_t d_prev) {
  if (d_prev == 0) throw std::invalid_argument("batch_size needs d_prev >= 1");
  if (n < 1) throw std::invalid_argument("batch_size needs n >= 1");
  const double a = checked_alpha(alpha);
  const double k = std::ceil(B * std::log(static_cast<double>(n)) / (a * static_cast<double>(d_prev)));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::max(0.0, k)));
}

std::size_t u_budget(std::size_t n, const Rational& alpha, double B, bool simple) {
  if (n < 3) throw std::invalid_argument("u_budget needs n >= 3");
  const double a = checked_alpha(alpha);
  const double ln = std::log(static_cast<double>(n));
  double value;
  if (simple) {
    value = B * ln * ln / a + std::sqrt(static_cast<double>(n) * ln / a);
  } else {
    const double L = ln / a;
    value = B * (L * std::log(L) + ln);
  }
  return static_cast<std::size_t>(std::floor(std::max(0.0, value)));
}

std::size_t ExposureTrace::max_corank(std::size_t step) const {
  std::size_t best = 0;
  for (const auto& traj : coranks) best = std::max(best, traj.at(step));
  if (!cofactor_coranks.empty()) best = std::max(best, cofactor_coranks.at(step));
  return best;
}

ExposureRun run_exposure(const IntMatrix& m0, const Distribution& dist, const ExposureOptions& options) {
  if (!m0.square()) throw std::invalid_argument("run_exposure needs a square starting matrix");
  const std::size_t n = m0.rows();
  const auto balance = alpha_min(dist);
  if (balance.degenerate) throw std::invalid_argument("run_exposure: distribution " + dist.to_string() + " is not balanced");

  ExposureTrace trace;
  trace.alpha = balance.alpha;
  if (options.source == PrimeSource::divisors_of_det) {
    const Integer d = det(m0);
    if (d == 0) throw std::invalid_argument("run_exposure: det(M0) = 0, no prime set to track");
    auto pf = partial_factorize(d, options.budget);
    for (const auto& pp : pf.found) trace.primes.push_back(pp.prime);
    trace.cofactor = pf.cofactor;
  } else {
    for (const auto& p : options.primes)
      if (!is_probable_prime(p)) throw std::invalid_argument("run_exposure: " + to_string(p) + " is not prime");
    trace.primes = options.primes;
  }
  trace.cap = options.cap ? *options.cap : 10 * u_budget(std::max<std::size_t>(n, 3), trace.alpha, options.B);

  std::vector<ColumnSpace> spaces;
  for (const auto& p : trace.primes) {
    spaces.push_back(ColumnSpace::of_columns(reduce_mod(m0, p)));
    trace.coranks.push_back({spaces.back().codimension()});
  }
  std::vector<std::vector<std::int64_t>> extra;
  auto current = [&] {
    std::vector<Integer> e(n * (n + extra.size()));
    const std::size_t cols = n + extra.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) e[i * cols + j] = m0(i, j);
      for (std::size_t j = 0; j < extra.size(); ++j) e[i * cols + n + j] = extra[j][i];
    }
    return IntMatrix(n, cols, std::move(e));
  };
  if (trace.cofactor != 1) trace.cofactor_coranks.push_back(cofactor_corank(m0, trace.cofactor));

  Rng rng(options.seed);
  for (std::size_t step = 0;; ++step) {
    const std::size_t d = trace.max_corank(step);
    if (d == 0) {
      trace.achieved = true;
      break;
    }
    const std::size_t k = batch_size(std::max<std::size_t>(n, 2), trace.alpha, options.B, d);
    if (trace.total_extra_columns + k > trace.cap) break;
    for (std::size_t c = 0; c < k; ++c) {
      auto col = sample_column(dist, n, rng);
      for (auto& s : spaces) s.absorb(col);
      extra.push_back(std::move(col));
    }
    trace.total_extra_columns += k;
    trace.batches.push_back(k);
    trace.drivers.push_back(d);
    for (std::size_t i = 0; i < spaces.size(); ++i) trace.coranks[i].push_back(spaces[i].codimension());
    if (trace.cofactor != 1) trace.cofactor_coranks.push_back(cofactor_corank(current(), trace.cofactor));
  }
  return {std::move(trace), current()};
}

}  // namespace latsurj
