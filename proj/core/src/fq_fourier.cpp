#include "latsurj/fq_fourier.hpp"

#include "latsurj/modp_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace latsurj {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

FieldTable::FieldTable(std::uint32_t p, std::uint32_t f) : p_(p), f_(f), q_(1) {
  if (p < 2 || !is_probable_prime(Integer(static_cast<unsigned long>(p))))
    throw std::invalid_argument("FieldTable: characteristic " + std::to_string(p) + " is not prime");
  if (f < 1) throw std::invalid_argument("FieldTable: degree must be >= 1");
  for (std::uint32_t i = 0; i < f; ++i) {
    power_.push_back(q_);
    if (static_cast<std::uint64_t>(q_) * p > kMaxOrder)
      throw std::invalid_argument("FieldTable: order exceeds " + std::to_string(kMaxOrder));
    q_ *= p;
  }
  // multiplication by x modulo x^f + sum c_i x^i, on element codes
  std::vector<std::uint32_t> c(f);
  auto times_x = [&](Element a) {
    const std::uint32_t top = a / power_[f_ - 1];
    Element shifted = (a % power_[f_ - 1]) * p_;
    if (f_ == 1) shifted = 0;
    Element out = 0;
    for (std::uint32_t i = 0; i < f_; ++i) {
      std::uint32_t d = (shifted / power_[i]) % p_;
      d = (d + top * (p_ - c[i])) % p_;
      out += d * power_[i];
    }
    return out;
  };
  for (std::uint32_t code = 0; code < q_; ++code) {
    for (std::uint32_t i = 0; i < f; ++i) c[i] = (code / power_[i]) % p;
    if (c[0] == 0) continue;
    std::vector<Element> powers{1};
    Element cur = 1;
    bool primitive = true;
    for (std::uint32_t i = 1; i < q_ - 1; ++i) {
      cur = times_x(cur);
      if (cur == 1) {
        primitive = false;
        break;
      }
      powers.push_back(cur);
    }
    if (!primitive || times_x(cur) != 1) continue;
    modulus_ = c;
    exp_ = powers;
    break;
  }
  if (exp_.size() != q_ - 1) throw std::logic_error("FieldTable: no primitive polynomial found");
  exp_.insert(exp_.end(), exp_.begin(), exp_.end());
  log_.assign(q_, 0);
  for (std::uint32_t i = 0; i < q_ - 1; ++i) log_[exp_[i]] = i;
  trace_.resize(q_);
  for (Element x = 0; x < q_; ++x) {
    Element t = 0;
    for (std::uint32_t i = 0; i < f_; ++i) t = add(t, pow(x, power_[i]));
    if (t >= p_) throw std::logic_error("FieldTable: trace left the prime field");
    trace_[x] = t;
  }
}

std::shared_ptr<const FieldTable> FieldTable::of_order(std::uint32_t q) {
  if (q < 2 || q > kMaxOrder) throw std::invalid_argument("field order must lie in [2, 4096], got " + std::to_string(q));
  auto factors = prime_factors_u64(q);
  if (factors.size() != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  const auto p = static_cast<std::uint32_t>(factors[0]);
  std::uint32_t f = 0;
  for (std::uint32_t r = q; r > 1; r /= p) ++f;
  return std::make_shared<const FieldTable>(p, f);
}

Element FieldTable::add(Element a, Element b) const {
  if (f_ == 1) return (a + b) % p_;
  Element out = 0;
  for (std::uint32_t i = 0; i < f_; ++i) out += ((a / power_[i] + b / power_[i]) % p_) * power_[i];
  return out;
}

Element FieldTable::neg(Element a) const {
  if (f_ == 1) return a == 0 ? 0 : p_ - a;
  Element out = 0;
  for (std::uint32_t i = 0; i < f_; ++i) out += ((p_ - (a / power_[i]) % p_) % p_) * power_[i];
  return out;
}

Element FieldTable::sub(Element a, Element b) const { return add(a, neg(b)); }

Element FieldTable::mul(Element a, Element b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

Element FieldTable::inv(Element a) const {
  if (a == 0) throw std::domain_error("inverse of zero in F_q");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Element FieldTable::pow(Element a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[static_cast<std::uint32_t>((static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1))];
}

Element FieldTable::from_integer(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  return static_cast<Element>(r < 0 ? r + p_ : r);
}

// ---------------------------------------------------------------------------

FqDistribution::FqDistribution(std::shared_ptr<const FieldTable> field, std::vector<Rational> weights)
    : field_(std::move(field)) {
  if (weights.size() != field_->q()) throw std::invalid_argument("FqDistribution: need one weight per field element");
  Integer lcm = 1;
  Rational total = 0;
  for (auto& w : weights) {
    w.canonicalize();
    if (w < 0) throw std::invalid_argument("FqDistribution: negative weight");
    total += w;
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), w.get_den_mpz_t());
  }
  if (total != 1) throw std::invalid_argument("FqDistribution: weights sum to " + latsurj::to_string(total));
  if (!fits_u64(lcm) || to_u64(lcm) >= (std::uint64_t{1} << 62)) throw std::invalid_argument("FqDistribution: denominator too large");
  denominator_ = to_u64(lcm);
  for (const auto& w : weights) numerators_.push_back(to_u64(Integer(w.get_num() * (lcm / w.get_den()))));
}

FqDistribution::FqDistribution(std::shared_ptr<const FieldTable> field, std::vector<std::uint64_t> numerators,
                               std::uint64_t denominator)
    : field_(std::move(field)), numerators_(std::move(numerators)), denominator_(denominator) {
  if (numerators_.size() != field_->q()) throw std::invalid_argument("FqDistribution: need one weight per field element");
  if (denominator_ == 0) throw std::invalid_argument("FqDistribution: zero denominator");
  std::uint64_t total = 0;
  for (auto n : numerators_) total += n;
  if (total != denominator_) throw std::invalid_argument("FqDistribution: weights do not sum to 1");
}

FqDistribution FqDistribution::uniform(std::shared_ptr<const FieldTable> field) {
  const auto q = field->q();
  return FqDistribution(std::move(field), std::vector<std::uint64_t>(q, 1), q);
}

FqDistribution FqDistribution::point_mass(std::shared_ptr<const FieldTable> field, Element x) {
  std::vector<std::uint64_t> n(field->q(), 0);
  n.at(x) = 1;
  return FqDistribution(std::move(field), std::move(n), 1);
}

FqDistribution FqDistribution::parse(std::shared_ptr<const FieldTable> field, std::string_view text) {
  const std::string s = trim(text);
  if (s == "uniform") return uniform(std::move(field));
  std::vector<Rational> weights(field->q(), Rational(0));
  std::size_t start = 0;
  for (;;) {
    auto comma = s.find(',', start);
    std::string part = trim(std::string_view(s).substr(start, comma - start));
    auto colon = part.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("bad F_q atom '" + part + "', expected element:weight");
    Integer x = parse_integer(trim(std::string_view(part).substr(0, colon)));
    if (x < 0 || x >= field->q()) throw std::invalid_argument("element code out of range: " + part);
    weights[x.get_ui()] += parse_rational(trim(std::string_view(part).substr(colon + 1)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return FqDistribution(std::move(field), std::move(weights));
}

Rational FqDistribution::weight(Element x) const {
  Rational r(from_u64(numerators_.at(x)), from_u64(denominator_));
  r.canonicalize();
  return r;
}

std::string FqDistribution::to_string() const {
  std::string out;
  for (Element x = 0; x < numerators_.size(); ++x) {
    if (numerators_[x] == 0) continue;
    if (!out.empty()) out += ',';
    out += std::to_string(x) + ':' + latsurj::to_string(weight(x));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<Element>> additive_subgroups(const FieldTable& field) {
  if (field.f() > 4) throw std::invalid_argument("additive subgroup enumeration supports f <= 4");
  std::vector<std::vector<Element>> out;
  for (const auto& s : enumerate_subspaces(field.p(), field.f())) {
    auto codes = s.element_codes();
    std::sort(codes.begin(), codes.end());
    out.push_back(std::move(codes));
  }
  return out;
}

Rational subgroup_alpha(const FqDistribution& mu) {
  const auto& field = mu.field();
  const auto num = mu.numerators();
  std::uint64_t best = 0;
  if (field.f() == 1) {
    best = *std::max_element(num.begin(), num.end());
  } else {
    for (const auto& t : additive_subgroups(field)) {
      if (t.size() == field.q()) continue;
      for (Element s = 0; s < field.q(); ++s) {
        std::uint64_t mass = 0;
        for (auto x : t) mass += num[field.add(s, x)];
        best = std::max(best, mass);
      }
    }
  }
  Rational a(from_u64(mu.denominator() - best), from_u64(mu.denominator()));
  a.canonicalize();
  return a;
}

std::complex<double> mu_hat(const FqDistribution& mu, Element x) {
  const auto& field = mu.field();
  const double scale = 2 * std::numbers::pi / field.p();
  std::complex<double> sum = 0;
  const auto num = mu.numerators();
  for (Element t = 0; t < field.q(); ++t) {
    if (num[t] == 0) continue;
    sum += static_cast<double>(num[t]) * std::polar(1.0, scale * field.trace(field.mul(x, t)));
  }
  return sum / static_cast<double>(mu.denominator());
}

std::vector<Element> spec_set(const FqDistribution& mu, double eps) {
  if (!(eps >= 0 && eps <= 1)) throw std::invalid_argument("spec_set: eps must lie in [0,1]");
  std::vector<Element> out;
  for (Element x = 0; x < mu.field().q(); ++x)
    if (std::abs(mu_hat(mu, x)) >= 1 - eps - kFourierSlack) out.push_back(x);
  return out;
}

std::vector<Rational> exact_dot_distribution(const FqDistribution& mu, std::span<const Element> w) {
  const auto& field = mu.field();
  const auto q = field.q();
  const auto num = mu.numerators();
  std::vector<Integer> law(q, Integer(0));
  law[0] = 1;
  Integer den = 1;
  for (auto c : w) {
    if (c >= q) throw std::invalid_argument("exact_dot_distribution: coefficient is not a field element");
    std::vector<Integer> next(q, Integer(0));
    for (Element s = 0; s < q; ++s) {
      if (law[s] == 0) continue;
      for (Element t = 0; t < q; ++t)
        if (num[t] != 0) next[field.add(s, field.mul(c, t))] += law[s] * from_u64(num[t]);
    }
    law = std::move(next);
    den *= from_u64(mu.denominator());
  }
  std::vector<Rational> out;
  for (auto& v : law) {
    Rational r(v, den);
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

LoCheck lo_bound_check(const FqDistribution& mu, std::span<const Element> w, Element r) {
  LoCheck out;
  for (auto c : w) out.m += c != 0;
  if (out.m == 0) throw std::invalid_argument("lo_bound_check needs at least one nonzero coefficient");
  if (r >= mu.field().q()) throw std::invalid_argument("lo_bound_check: target is not a field element");
  out.probability = exact_dot_distribution(mu, w)[r];
  out.alpha = subgroup_alpha(mu);
  const Rational diff = abs(Rational(out.probability - Rational(1, mu.field().q())));
  out.lhs = diff.get_d();
  if (out.alpha == 0) {
    out.degenerate = true;
    out.rhs = std::numeric_limits<double>::infinity();
    return out;
  }
  out.rhs = 2 / std::sqrt(out.alpha.get_d() * static_cast<double>(out.m));
  out.holds = diff * diff * out.alpha * static_cast<unsigned long>(out.m) <= 4;
  return out;
}

double psi(const FqDistribution& mu, Element t) { return 1 - std::norm(mu_hat(mu, t)); }

namespace {

std::vector<double> level_function(const FqDistribution& mu, std::span<const Element> w) {
  const auto& field = mu.field();
  std::vector<double> psi_table(field.q());
  for (Element t = 0; t < field.q(); ++t) psi_table[t] = psi(mu, t);
  std::vector<double> f(field.q(), 0.0);
  for (Element t = 0; t < field.q(); ++t)
    for (auto c : w) f[t] += psi_table[field.mul(c, t)];
  return f;
}

}  // namespace

std::vector<Element> psi_level_set(const FqDistribution& mu, std::span<const Element> w, double v) {
  const auto f = level_function(mu, w);
  std::vector<Element> out;
  for (Element t = 0; t < f.size(); ++t)
    if (f[t] <= v + kFourierSlack) out.push_back(t);
  return out;
}

bool check_level_set_nesting(const FqDistribution& mu, std::span<const Element> w, double v, unsigned k) {
  if (k == 0) throw std::invalid_argument("check_level_set_nesting needs k >= 1");
  const auto f = level_function(mu, w);
  std::vector<Element> t;
  for (Element x = 0; x < f.size(); ++x)
    if (f[x] <= v + kFourierSlack) t.push_back(x);
  if (t.empty()) return true;
  std::vector<Element> acc = t;
  for (unsigned i = 1; i < k; ++i) acc = sumset(mu.field(), std::span<const Element>(acc), std::span<const Element>(t));
  const double kk = static_cast<double>(k) * k;
  const double bound = kk * (v + kFourierSlack) + kFourierSlack;
  return std::all_of(acc.begin(), acc.end(), [&](Element x) { return f[x] <= bound; });
}

CosineCheck cosine_inequality_check(std::span<const double> betas) {
  CosineCheck out;
  const double k = static_cast<double>(betas.size());
  double sum = 0, cos_sum = 0;
  for (double b : betas) {
    sum += b;
    cos_sum += std::cos(b);
  }
  out.lhs = std::cos(sum);
  out.rhs = k * cos_sum - k * k + 1;
  out.holds = out.lhs >= out.rhs - kFourierSlack;
  return out;
}

SpectrumSubgroupCheck spectrum_subgroup_check(const FqDistribution& mu) {
  const auto& field = mu.field();
  if (field.f() > 3) throw std::invalid_argument("spectrum_subgroup_check supports f <= 3");
  SpectrumSubgroupCheck out;
  out.alpha = subgroup_alpha(mu);
  out.hypothesis_holds = out.alpha > 0;
  const auto spec = spec_set(mu, out.alpha.get_d() / 2);
  for (const auto& h : additive_subgroups(field)) {
    if (h.size() == 1) continue;
    if (std::includes(spec.begin(), spec.end(), h.begin(), h.end())) {
      out.holds = false;
      out.offending_subgroup = h;
      break;
    }
  }
  return out;
}

Rational single_nonzero_probability(const Rational& p_zero, unsigned t) {
  if (p_zero < 0 || p_zero > 1) throw std::invalid_argument("single_nonzero_probability: P(psi=0) outside [0,1]");
  if (t == 0) return 0;
  Rational pw = 1;
  for (unsigned i = 1; i < t; ++i) pw *= p_zero;
  return Rational(static_cast<unsigned long>(t)) * (1 - p_zero) * pw;
}

std::size_t zeros_claim_range(const Rational& alpha) {
  if (alpha <= 0) throw std::invalid_argument("zeros_claim_range needs alpha > 0");
  Integer t = Integer(144 * alpha.get_den()) / alpha.get_num();
  return t.get_ui();
}

}  // namespace latsurj
