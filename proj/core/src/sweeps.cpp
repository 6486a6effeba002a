#include "latsurj/sweeps.hpp"

#include "latsurj/fq_fourier.hpp"
#include "latsurj/modp_linalg.hpp"
#include "latsurj/parallel.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace latsurj {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// Weight vectors (n_0, ..., n_{parts-1}) summing to d, reduced (gcd with d
/// is 1), for every d in [1, max_denominator].
std::vector<std::pair<std::vector<std::uint64_t>, std::uint64_t>> laws(std::size_t parts, unsigned max_denominator) {
  std::vector<std::pair<std::vector<std::uint64_t>, std::uint64_t>> out;
  std::vector<std::uint64_t> cur(parts, 0);
  for (unsigned d = 1; d <= max_denominator; ++d) {
    // iterate compositions of d into `parts` nonnegative parts
    auto rec = [&](auto&& self, std::size_t i, std::uint64_t left) -> void {
      if (i + 1 == parts) {
        cur[i] = left;
        std::uint64_t g = d;
        for (auto v : cur) g = std::gcd(g, v);
        if (g == 1) out.emplace_back(cur, d);
        return;
      }
      for (std::uint64_t v = 0; v <= left; ++v) {
        cur[i] = v;
        self(self, i + 1, left - v);
      }
    };
    rec(rec, 0, d);
  }
  return out;
}

std::string describe(const std::vector<std::uint64_t>& num, std::uint64_t den) {
  std::ostringstream s;
  s << "mu=(";
  for (std::size_t i = 0; i < num.size(); ++i) s << (i ? "," : "") << num[i];
  s << ")/" << den;
  return s.str();
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

__extension__ using i128 = __int128;

struct LoPartial {
  std::uint64_t cases = 0, violations = 0, vacuous = 0;
  std::string first;
};

}  // namespace

SweepResult lo_grid_sweep(std::span<const std::uint32_t> orders, unsigned max_m, unsigned max_denominator, unsigned threads) {
  const auto start = Clock::now();
  SweepResult result;
  result.name = "littlewood_offord_grid";
  for (auto q : orders) {
    auto field = FieldTable::of_order(q);
    std::vector<Element> mul(static_cast<std::size_t>(q) * q), add(static_cast<std::size_t>(q) * q);
    for (Element a = 0; a < q; ++a)
      for (Element b = 0; b < q; ++b) {
        mul[a * q + b] = field->mul(a, b);
        add[a * q + b] = field->add(a, b);
      }
    // cosets of every proper additive subgroup
    std::vector<std::vector<std::vector<Element>>> cosets;
    for (const auto& t : additive_subgroups(*field)) {
      if (t.size() == q) continue;
      std::vector<char> seen(q, 0);
      std::vector<std::vector<Element>> parts;
      for (Element s = 0; s < q; ++s) {
        if (seen[s]) continue;
        std::vector<Element> coset;
        for (auto x : t) {
          coset.push_back(add[s * q + x]);
          seen[add[s * q + x]] = 1;
        }
        parts.push_back(std::move(coset));
      }
      cosets.push_back(std::move(parts));
    }
    const auto all = laws(q, max_denominator);
    std::vector<LoPartial> partial(all.size());
    parallel_for(all.size(), threads, [&](std::size_t idx) {
      const auto& [num, den] = all[idx];
      LoPartial& out = partial[idx];
      std::uint64_t heaviest = 0;
      for (const auto& parts : cosets)
        for (const auto& c : parts) {
          std::uint64_t mass = 0;
          for (auto x : c) mass += num[x];
          heaviest = std::max(heaviest, mass);
        }
      const std::uint64_t a_num = den - heaviest;  // alpha = a_num / den
      if (a_num == 0) {
        ++out.vacuous;
        return;
      }
      std::vector<std::vector<std::uint64_t>> law(max_m + 1, std::vector<std::uint64_t>(q, 0));
      std::vector<std::uint64_t> dpow(max_m + 1, 1);
      for (unsigned m = 1; m <= max_m; ++m) dpow[m] = dpow[m - 1] * den;
      law[0][0] = 1;
      std::vector<Element> w;
      auto dfs = [&](auto&& self, unsigned depth, Element first) -> void {
        for (Element c = first; c < q; ++c) {
          auto& next = law[depth + 1];
          std::fill(next.begin(), next.end(), 0);
          for (Element s = 0; s < q; ++s) {
            if (law[depth][s] == 0) continue;
            for (Element t = 0; t < q; ++t)
              if (num[t]) next[add[s * q + mul[c * q + t]]] += law[depth][s] * num[t];
          }
          w.push_back(c);
          const unsigned m = depth + 1;
          const i128 dm = dpow[m];
          const i128 rhs = i128(4) * q * q * dm * dm * den;
          for (Element r = 0; r < q; ++r) {
            ++out.cases;
            const i128 diff = i128(q) * next[r] - dm;
            if (diff * diff * a_num * m > rhs) {
              if (out.violations++ == 0) {
                std::ostringstream s;
                s << "q=" << q << ' ' << describe(num, den) << " w=(";
                for (std::size_t i = 0; i < w.size(); ++i) s << (i ? "," : "") << w[i];
                s << ") r=" << r;
                out.first = s.str();
              }
            }
          }
          if (m < max_m) self(self, m, c);
          w.pop_back();
        }
      };
      dfs(dfs, 0, 1);
    });
    for (const auto& p : partial) {
      result.cases += p.cases;
      result.vacuous += p.vacuous;
      if (p.violations && result.violations == 0) result.first_violation = p.first;
      result.violations += p.violations;
    }
  }
  result.elapsed_ms = ms_since(start);
  return result;
}

SweepResult kneser_sweep(std::uint32_t max_n) {
  const auto start = Clock::now();
  SweepResult result;
  result.name = "kneser";
  if (max_n > 20) throw std::invalid_argument("kneser_sweep: N too large for exhaustive enumeration");
  for (std::uint32_t n = 1; n <= max_n; ++n) {
    const std::uint32_t full = (1u << n) - 1;
    auto rot = [&](std::uint32_t a, std::uint32_t b) { return b == 0 ? a : (((a << b) | (a >> (n - b))) & full); };
    for (std::uint32_t a = 1; a <= full; ++a) {
      for (std::uint32_t b = a; b <= full; ++b) {
        std::uint32_t s = 0;
        for (std::uint32_t bits = b; bits; bits &= bits - 1) s |= rot(a, static_cast<std::uint32_t>(std::countr_zero(bits)));
        std::uint32_t sym = 0;
        for (std::uint32_t h = 0; h < n; ++h) sym += rot(s, h) == s;
        ++result.cases;
        if (std::popcount(s) + sym < static_cast<unsigned>(std::popcount(a) + std::popcount(b))) {
          if (result.violations++ == 0) {
            std::ostringstream o;
            o << "N=" << n << " A=" << a << " B=" << b;
            result.first_violation = o.str();
          }
        }
      }
    }
  }
  result.elapsed_ms = ms_since(start);
  return result;
}

SweepResult level_set_sweep(std::uint64_t instances, std::uint64_t seed) {
  const auto start = Clock::now();
  SweepResult result;
  result.name = "level_set_nesting";
  const std::uint32_t orders[] = {2, 3, 4, 5, 7, 8, 9};
  std::map<std::uint32_t, std::shared_ptr<const FieldTable>> fields;
  for (auto q : orders) fields[q] = FieldTable::of_order(q);
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < instances; ++i) {
    const auto q = orders[rng() % std::size(orders)];
    std::vector<std::uint64_t> num(q);
    std::uint64_t den = 0;
    for (auto& v : num) den += (v = rng() % 5);
    if (den == 0) {
      num[0] = 1;
      den = 1;
    }
    FqDistribution mu(fields[q], num, den);
    std::vector<Element> w(1 + rng() % 6);
    for (auto& c : w) c = static_cast<Element>(rng() % q);
    const double v = unit(rng) * static_cast<double>(w.size());
    const unsigned k = 1 + static_cast<unsigned>(rng() % 4);
    ++result.cases;
    if (!check_level_set_nesting(mu, w, v, k)) {
      if (result.violations++ == 0) {
        std::ostringstream o;
        o << "q=" << q << ' ' << describe(num, den) << " v=" << v << " k=" << k;
        result.first_violation = o.str();
      }
    }
  }
  result.elapsed_ms = ms_since(start);
  return result;
}

SweepResult cosine_sweep(std::uint64_t instances, std::uint64_t seed) {
  const auto start = Clock::now();
  SweepResult result;
  result.name = "cosine_inequality";
  std::mt19937_64 rng(seed);
  std::vector<double> betas;
  for (std::uint64_t i = 0; i < instances; ++i) {
    betas.assign(1 + rng() % 6, 0.0);
    for (auto& b : betas) b = std::numbers::pi - 2 * std::numbers::pi * unit(rng);
    ++result.cases;
    auto c = cosine_inequality_check(betas);
    if (!c.holds && result.violations++ == 0) {
      std::ostringstream o;
      o << "k=" << betas.size() << " lhs=" << c.lhs << " rhs=" << c.rhs;
      result.first_violation = o.str();
    }
  }
  result.elapsed_ms = ms_since(start);
  return result;
}

SweepResult odlyzko_sweep(std::span<const std::uint32_t> primes, std::size_t max_n, unsigned max_denominator) {
  const auto start = Clock::now();
  SweepResult result;
  result.name = "odlyzko_subspace";
  for (auto p : primes) {
    const auto all = laws(p, max_denominator);
    for (std::size_t n = 1; n <= max_n; ++n) {
      std::vector<std::vector<std::uint32_t>> subspaces;
      std::vector<std::size_t> dims;
      for (const auto& s : enumerate_subspaces(p, n)) {
        subspaces.push_back(s.element_codes());
        dims.push_back(s.dimension());
      }
      std::size_t size = 1;
      for (std::size_t i = 0; i < n; ++i) size *= p;
      for (const auto& [num, den] : all) {
        std::vector<std::uint64_t> weight(size);
        for (std::size_t code = 0; code < size; ++code) {
          std::uint64_t w = 1;
          for (std::size_t c = code, i = 0; i < n; ++i, c /= p) w *= num[c % p];
          weight[code] = w;
        }
        const std::uint64_t heaviest = *std::max_element(num.begin(), num.end());
        for (std::size_t h = 0; h < subspaces.size(); ++h) {
          std::uint64_t mass = 0;
          for (auto code : subspaces[h]) mass += weight[code];
          // mass / den^n <= (heaviest / den)^{n - dim}
          i128 bound = 1;
          for (std::size_t i = dims[h]; i < n; ++i) bound *= heaviest;
          for (std::size_t i = 0; i < dims[h]; ++i) bound *= den;
          ++result.cases;
          if (i128(mass) > bound && result.violations++ == 0) {
            std::ostringstream o;
            o << "p=" << p << " n=" << n << " dim=" << dims[h] << ' ' << describe(num, den);
            result.first_violation = o.str();
          }
        }
      }
    }
  }
  result.elapsed_ms = ms_since(start);
  return result;
}

std::vector<SweepResult> run_fourier_sweeps(std::uint64_t seed, unsigned threads) {
  const std::uint32_t orders[] = {2, 3, 4, 5, 7, 8};
  const std::uint32_t primes[] = {2, 3};
  return {lo_grid_sweep(orders, 6, 8, threads), kneser_sweep(12), level_set_sweep(100000, seed),
          cosine_sweep(100000, seed), odlyzko_sweep(primes, 5, 4)};
}

}  // namespace latsurj
