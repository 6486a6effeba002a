#include "latsurj/certifier.hpp"

#include "latsurj/modp_linalg.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <mutex>
#include <stdexcept>

namespace latsurj {

namespace {

const Integer kPivotPrime = (Integer(1) << 61) - 1;

std::vector<std::uint32_t> sieve(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

const std::vector<std::uint32_t>& default_sieve() {
  static std::once_flag once;
  static std::vector<std::uint32_t> primes;
  std::call_once(once, [] { primes = sieve(FactorBudget{}.trial_limit); });
  return primes;
}

/// Pollard rho with Brent's cycle detection. Returns a nontrivial factor of
/// composite n or nullopt when the iteration budget runs out.
std::optional<Integer> brent(const Integer& n, unsigned long c, std::uint64_t budget) {
  auto f = [&](const Integer& x) {
    Integer y = x * x + c;
    mpz_mod(y.get_mpz_t(), y.get_mpz_t(), n.get_mpz_t());
    return y;
  };
  Integer y = 2, x, ys, q = 1, g = 1;
  const std::uint64_t m = 128;
  std::uint64_t r = 1, spent = 0;
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) y = f(y);
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        q = q * abs(Integer(x - y));
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
      spent += m;
      if (spent > budget) return std::nullopt;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      Integer diff = abs(Integer(x - ys));
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  if (g == n) return std::nullopt;
  return g;
}

std::optional<Integer> find_factor(const Integer& n, const FactorBudget& budget) {
  for (unsigned long k = mpz_sizeinbase(n.get_mpz_t(), 2); k >= 2; --k) {
    Integer root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) return root;
  }
  for (unsigned attempt = 1; attempt <= budget.rho_attempts; ++attempt)
    if (auto d = brent(n, attempt, budget.rho_iterations)) return d;
  return std::nullopt;
}

enum class FactorOutcome { complete, stopped, failed };

/// Feeds each prime power of |d| to `visit` in discovery order (ascending
/// for the trial-division range). `visit` returns false to stop early.
FactorOutcome factor_with(const Integer& d, const FactorBudget& budget,
                          const std::function<bool(const Integer&, unsigned)>& visit) {
  if (d == 0) throw std::invalid_argument("cannot factor zero");
  Integer rest = abs(d);
  std::vector<std::uint32_t> local;
  const std::vector<std::uint32_t>* primes = &default_sieve();
  if (budget.trial_limit != FactorBudget{}.trial_limit) {
    local = sieve(budget.trial_limit);
    primes = &local;
  }
  for (std::uint64_t p : *primes) {
    if (rest == 1) return FactorOutcome::complete;
    if (mpz_cmp_ui(rest.get_mpz_t(), p * p) < 0) break;
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (!visit(Integer(static_cast<unsigned long>(p)), e)) return FactorOutcome::stopped;
  }
  while (rest != 1) {
    Integer p = rest;
    while (!is_probable_prime(p)) {
      auto f = find_factor(p, budget);
      if (!f) return FactorOutcome::failed;
      Integer other = p / *f;
      p = std::min(*f, other);
    }
    unsigned e = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
      ++e;
    }
    if (!visit(p, e)) return FactorOutcome::stopped;
  }
  return FactorOutcome::complete;
}

Integer dot_mod(std::span<const Integer> w, const IntMatrix& m, std::size_t col, const Integer& modulus) {
  Integer s = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) s += w[i] * m(i, col);
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), s.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

AnnihilatorWitness annihilator_mod_prime(const IntMatrix& m, const Integer& p) {
  auto w = left_null_vector(reduce_mod(m, p));
  if (!w) throw std::logic_error("expected a left null vector modulo " + to_string(p));
  return {p, true, std::move(*w)};
}

/// Replaces one column of the basis by the first later column that keeps the
/// submatrix nonsingular. Uses Cramer's rule mod a large prime to pick the
/// slot when the basis is invertible there.
std::optional<std::vector<std::size_t>> second_basis(const IntMatrix& m, const std::vector<std::size_t>& basis,
                                                     bool invertible_mod_pivot_prime) {
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (std::binary_search(basis.begin(), basis.end(), c)) continue;
    std::vector<std::size_t> cols = basis;
    cols.push_back(c);
    if (invertible_mod_pivot_prime) {
      auto w = left_null_vector(reduce_mod(m.select_columns(cols).transpose(), kPivotPrime));
      if (!w) continue;
      for (std::size_t k = n; k-- > 0;) {
        if ((*w)[k] == 0) continue;
        std::vector<std::size_t> out = basis;
        out[k] = c;
        std::sort(out.begin(), out.end());
        return out;
      }
    } else {
      for (std::size_t k = n; k-- > 0;) {
        std::vector<std::size_t> out = basis;
        out[k] = c;
        std::sort(out.begin(), out.end());
        if (det(m.select_columns(out)) != 0) return out;
      }
    }
  }
  return std::nullopt;
}

Certificate snf_certificate(const IntMatrix& m) {
  Certificate cert;
  cert.method = Method::snf_fallback;
  auto snf = smith_normal_form(m);
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    const Integer d = i < m.cols() ? abs(snf.diag(i, i)) : Integer(0);
    if (d == 1) continue;
    if (d == 0) {
      cert.witness = RankDeficiencyWitness{rational_echelon(m).rank};
      return cert;
    }
    AnnihilatorWitness w{d, is_probable_prime(d), {}};
    for (const auto& x : snf.left.row(i)) {
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
      w.vector.push_back(r);
    }
    cert.witness = std::move(w);
    return cert;
  }
  cert.verdict = Verdict::surjective;
  cert.witness = CokernelWitness{CokernelStructure{}};
  return cert;
}

Certificate decide(const IntMatrix& m, const CertifierOptions& options) {
  Certificate cert;
  const std::size_t n = m.rows();
  if (m.cols() < n) {
    cert.witness = RankDeficiencyWitness{rational_echelon(m).rank};
    return cert;
  }
  auto pivots = pivot_columns_mod_p(reduce_mod(m, kPivotPrime));
  const bool fast = pivots.size() == n;
  if (!fast) {
    auto ech = rational_echelon(m);
    if (ech.rank < n) {
      cert.witness = RankDeficiencyWitness{ech.rank};
      return cert;
    }
    pivots = ech.pivot_columns;
  }

  SurjectiveWitness sw;
  sw.columns = pivots;
  sw.determinant = det(m.select_columns(pivots));
  sw.gcd = abs(sw.determinant);
  if (sw.gcd != 1) {
    if (auto second = second_basis(m, pivots, fast)) {
      sw.second_columns = *second;
      sw.second_determinant = det(m.select_columns(*second));
      mpz_gcd(sw.gcd.get_mpz_t(), sw.gcd.get_mpz_t(), sw.second_determinant->get_mpz_t());
    }
  }

  std::optional<AnnihilatorWitness> failure;
  auto outcome = factor_with(sw.gcd, options.budget, [&](const Integer& p, unsigned e) {
    sw.factorization.push_back({p, e});
    if (!surjective_mod_p(m, p)) {
      failure = annihilator_mod_prime(m, p);
      return false;
    }
    sw.confirmed_primes.push_back(p);
    return true;
  });
  if (outcome == FactorOutcome::failed) return snf_certificate(m);
  if (failure) {
    cert.witness = std::move(*failure);
    return cert;
  }
  std::sort(sw.factorization.begin(), sw.factorization.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  std::sort(sw.confirmed_primes.begin(), sw.confirmed_primes.end());
  cert.verdict = Verdict::surjective;
  cert.witness = std::move(sw);
  return cert;
}

bool verify_surjective(const IntMatrix& m, const SurjectiveWitness& w) {
  const std::size_t n = m.rows();
  auto valid_columns = [&](const std::vector<std::size_t>& cols) {
    if (cols.size() != n) return false;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] >= m.cols()) return false;
      if (k > 0 && cols[k] <= cols[k - 1]) return false;
    }
    return true;
  };
  if (!valid_columns(w.columns)) return false;
  const Integer d1 = det_bareiss(m.select_columns(w.columns));
  if (d1 == 0 || d1 != w.determinant) return false;
  Integer g = abs(d1);
  if (w.second_columns.has_value() != w.second_determinant.has_value()) return false;
  if (w.second_columns) {
    if (!valid_columns(*w.second_columns) || *w.second_columns == w.columns) return false;
    const Integer d2 = det_bareiss(m.select_columns(*w.second_columns));
    if (d2 == 0 || d2 != *w.second_determinant) return false;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d2.get_mpz_t());
  }
  if (g != w.gcd) return false;
  Integer product = 1;
  for (std::size_t k = 0; k < w.factorization.size(); ++k) {
    const auto& [p, e] = w.factorization[k];
    if (e == 0 || !is_probable_prime(p)) return false;
    if (k > 0 && p <= w.factorization[k - 1].prime) return false;
    Integer pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    product *= pe;
  }
  if (product != g) return false;
  if (w.confirmed_primes.size() != w.factorization.size()) return false;
  for (std::size_t k = 0; k < w.confirmed_primes.size(); ++k) {
    const Integer& p = w.confirmed_primes[k];
    if (p != w.factorization[k].prime) return false;
    if (rank_mod_p(reduce_mod(m, p)) != n) return false;
  }
  return true;
}

bool verify_annihilator(const IntMatrix& m, const AnnihilatorWitness& w, Method method) {
  if (w.modulus < 2 || w.vector.size() != m.rows()) return false;
  if (w.prime_modulus != is_probable_prime(w.modulus)) return false;
  if (method == Method::prime_reduction && !w.prime_modulus) return false;
  Integer content = w.modulus;
  for (const auto& x : w.vector) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
  if (content != 1) return false;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (dot_mod(w.vector, m, j, w.modulus) != 0) return false;
  return true;
}

}  // namespace

std::optional<std::vector<PrimePower>> factorize(const Integer& d, const FactorBudget& budget) {
  std::vector<PrimePower> out;
  auto outcome = factor_with(d, budget, [&](const Integer& p, unsigned e) {
    out.push_back({p, e});
    return true;
  });
  if (outcome != FactorOutcome::complete) return std::nullopt;
  std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  return out;
}

PartialFactorization partial_factorize(const Integer& d, const FactorBudget& budget) {
  PartialFactorization out;
  out.cofactor = abs(d);
  factor_with(d, budget, [&](const Integer& p, unsigned e) {
    out.found.push_back({p, e});
    for (unsigned k = 0; k < e; ++k) out.cofactor /= p;
    return true;
  });
  std::sort(out.found.begin(), out.found.end(), [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  return out;
}

std::optional<std::vector<Integer>> prime_divisors(const Integer& d, const FactorBudget& budget) {
  auto f = factorize(d, budget);
  if (!f) return std::nullopt;
  std::vector<Integer> out;
  for (const auto& pp : *f) out.push_back(pp.prime);
  return out;
}

bool surjective_mod_p(const IntMatrix& m, const Integer& p) {
  if (m.cols() < m.rows()) throw std::invalid_argument("surjective_mod_p: fewer columns than rows");
  return rank_mod_p(reduce_mod(m, p)) == m.rows();
}

Certificate is_surjective(const IntMatrix& m, const CertifierOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Certificate cert = decide(m, options);
  cert.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return cert;
}

bool verify_certificate(const IntMatrix& m, const Certificate& c) {
  try {
    return std::visit(
        [&](const auto& w) -> bool {
          using W = std::decay_t<decltype(w)>;
          if constexpr (std::is_same_v<W, SurjectiveWitness>) {
            return c.verdict == Verdict::surjective && c.method == Method::prime_reduction && verify_surjective(m, w);
          } else if constexpr (std::is_same_v<W, AnnihilatorWitness>) {
            return c.verdict == Verdict::not_surjective && verify_annihilator(m, w, c.method);
          } else if constexpr (std::is_same_v<W, RankDeficiencyWitness>) {
            return c.verdict == Verdict::not_surjective && w.rational_rank < m.rows() &&
                   rational_echelon(m).rank == w.rational_rank;
          } else {
            const auto cok = cokernel(m);
            return c.method == Method::snf_fallback && cok == w.cokernel &&
                   (c.verdict == Verdict::surjective) == cok.trivial();
          }
        },
        c.witness);
  } catch (const std::exception&) {
    return false;
  }
}

const char* to_string(Verdict v) { return v == Verdict::surjective ? "surjective" : "not_surjective"; }
const char* to_string(Method m) { return m == Method::prime_reduction ? "prime_reduction" : "snf_fallback"; }

}  // namespace latsurj
