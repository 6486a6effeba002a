#include "latsurj/ensembles.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace latsurj {

namespace {

constexpr std::int64_t kValueLimit = std::int64_t{1} << 62;
constexpr std::uint64_t kDenominatorLimit = std::uint64_t{1} << 62;

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::int64_t parse_value(const std::string& s) {
  Integer v = parse_integer(s);
  if (abs(v) >= kValueLimit) throw std::invalid_argument("distribution value out of range: " + s);
  return v.get_si();
}

}  // namespace

Distribution::Distribution(std::vector<std::pair<std::int64_t, Rational>> atoms) {
  if (atoms.empty()) throw std::invalid_argument("distribution needs at least one atom");
  std::sort(atoms.begin(), atoms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Integer lcm = 1;
  Rational total = 0;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    auto& [value, weight] = atoms[k];
    weight.canonicalize();
    if (k > 0 && atoms[k - 1].first == value)
      throw std::invalid_argument("duplicate atom value " + std::to_string(value));
    if (value >= kValueLimit || value <= -kValueLimit)
      throw std::invalid_argument("atom value out of range: " + std::to_string(value));
    if (weight <= 0 || weight > 1) throw std::invalid_argument("atom weight outside (0,1]: " + latsurj::to_string(weight));
    total += weight;
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), weight.get_den_mpz_t());
  }
  if (total != 1) throw std::invalid_argument("atom weights sum to " + latsurj::to_string(total) + ", expected 1");
  if (lcm >= from_u64(kDenominatorLimit)) throw std::invalid_argument("common denominator too large for exact sampling");
  denominator_ = to_u64(lcm);
  for (auto& [value, weight] : atoms) {
    Integer num = weight.get_num() * (lcm / weight.get_den());
    numerators_.push_back(to_u64(num));
    atoms_.push_back({value, weight});
  }
}

Distribution Distribution::parse(std::string_view text) {
  std::string s = trim(text);
  if (s == "uniform01") {
    const std::int64_t v[] = {0, 1};
    return uniform(v);
  }
  if (s.rfind("uniform", 0) == 0) {
    std::vector<std::int64_t> values;
    for (const auto& part : split(std::string_view(s).substr(7), ',')) values.push_back(parse_value(part));
    return uniform(values);
  }
  if (s.rfind("bernoulli(", 0) == 0 && s.back() == ')') {
    return sparse_bernoulli(parse_rational(trim(std::string_view(s).substr(10, s.size() - 11))));
  }
  std::vector<std::pair<std::int64_t, Rational>> atoms;
  for (const auto& part : split(s, ',')) {
    auto colon = part.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("bad atom '" + part + "', expected value:weight");
    atoms.emplace_back(parse_value(trim(std::string_view(part).substr(0, colon))),
                       parse_rational(trim(std::string_view(part).substr(colon + 1))));
  }
  return Distribution(std::move(atoms));
}

Distribution Distribution::uniform(std::span<const std::int64_t> values) {
  if (values.empty()) throw std::invalid_argument("uniform distribution needs values");
  std::vector<std::pair<std::int64_t, Rational>> atoms;
  for (auto v : values) atoms.emplace_back(v, Rational(1, static_cast<unsigned long>(values.size())));
  return Distribution(std::move(atoms));
}

Distribution Distribution::point_mass(std::int64_t value) { return Distribution({{value, Rational(1)}}); }

Rational Distribution::weight_of(std::int64_t value) const {
  for (const auto& a : atoms_)
    if (a.value == value) return a.weight;
  return 0;
}

Rational Distribution::max_weight() const {
  Rational best = 0;
  for (const auto& a : atoms_) best = std::max(best, a.weight);
  return best;
}

std::vector<std::int64_t> Distribution::values() const {
  std::vector<std::int64_t> v;
  for (const auto& a : atoms_) v.push_back(a.value);
  return v;
}

std::string Distribution::to_string() const {
  std::string out;
  for (const auto& a : atoms_) {
    if (!out.empty()) out += ',';
    out += std::to_string(a.value) + ':' + latsurj::to_string(a.weight);
  }
  return out;
}

Rational alpha_mod_p(const Distribution& dist, std::uint64_t p) {
  if (!is_probable_prime(from_u64(p))) throw std::invalid_argument("alpha_mod_p: " + std::to_string(p) + " is not prime");
  std::map<std::uint64_t, Rational> mass;
  for (const auto& a : dist.atoms()) {
    __extension__ __int128 r = static_cast<__int128>(a.value) % static_cast<__int128>(p);
    if (r < 0) r += p;
    mass[static_cast<std::uint64_t>(r)] += a.weight;
  }
  Rational best = 0;
  for (const auto& [residue, w] : mass) best = std::max(best, w);
  return 1 - best;
}

AlphaBalance alpha_min(const Distribution& dist) {
  AlphaBalance out;
  out.alpha = 1 - dist.max_weight();
  if (dist.support_size() < 2) {
    out.alpha = 0;
    out.degenerate = true;
    return out;
  }
  std::set<std::uint64_t> primes;
  auto atoms = dist.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      auto diff = static_cast<std::uint64_t>(atoms[j].value - atoms[i].value);
      for (auto p : prime_factors_u64(diff)) primes.insert(p);
    }
  for (auto p : primes) {
    Rational a = alpha_mod_p(dist, p);
    if (a < out.alpha) {
      out.alpha = a;
      out.prime = p;
    }
  }
  out.degenerate = out.alpha == 0;
  return out;
}

Distribution sparse_bernoulli(const Rational& alpha) {
  if (alpha <= 0 || alpha >= 1) throw std::invalid_argument("bernoulli parameter must lie in (0,1), got " + to_string(alpha));
  return Distribution({{0, Rational(1 - alpha)}, {1, alpha}});
}

Distribution symmetrize(const Distribution& dist) {
  std::map<std::int64_t, Rational> law;
  for (const auto& a : dist.atoms())
    for (const auto& b : dist.atoms()) law[a.value - b.value] += a.weight * b.weight;
  std::vector<std::pair<std::int64_t, Rational>> atoms(law.begin(), law.end());
  Distribution out(std::move(atoms));
  const Rational alpha = 1 - dist.max_weight();
  const Rational alpha_sym = 1 - out.weight_of(0);
  if (alpha_sym < alpha || alpha_sym > 2 * alpha)
    throw std::logic_error("symmetrize: balance bound violated for " + dist.to_string());
  return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 evaluated at a counter offset by the trial index
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<std::int64_t> sample_column(const Distribution& dist, std::size_t n, Rng& rng) {
  std::vector<std::int64_t> col(n);
  for (auto& v : col) v = dist.sample(rng);
  return col;
}

std::vector<std::int64_t> sample_matrix_values(const EnsembleSpec& spec) {
  const std::size_t n = spec.n;
  if (n == 0) throw std::invalid_argument("ensemble needs n >= 1");
  if (spec.kind == EnsembleKind::iid_rect && spec.m < n)
    throw std::invalid_argument("iid_rect ensemble needs m >= n");
  const std::size_t cols = spec.total_columns();
  std::vector<std::int64_t> a(n * cols);
  Rng rng(spec.seed);
  std::size_t first_iid = 0;
  if (spec.kind == EnsembleKind::symmetric_plus) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const auto v = spec.dist.sample(rng);
        a[i * cols + j] = v;
        a[j * cols + i] = v;
      }
    first_iid = n;
  }
  for (std::size_t j = first_iid; j < cols; ++j)
    for (std::size_t i = 0; i < n; ++i) a[i * cols + j] = spec.dist.sample(rng);
  return a;
}

IntMatrix sample_matrix(const EnsembleSpec& spec) {
  auto values = sample_matrix_values(spec);
  return IntMatrix(spec.n, spec.total_columns(), std::span<const std::int64_t>(values));
}

}  // namespace latsurj
