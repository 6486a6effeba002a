#pragma once

#include "latsurj/integer.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace latsurj {

/// Field element code: base-p digits of the coordinates in the polynomial
/// basis 1, x, ..., x^{f-1}. Codes below p are the prime subfield.
using Element = std::uint32_t;

/// Explicit arithmetic in F_q, q = p^f <= 4096. The modulus is the
/// lexicographically first monic primitive polynomial of degree f, so x is a
/// generator of the multiplicative group and log/antilog tables drive
/// multiplication.
class FieldTable {
 public:
  static constexpr std::uint32_t kMaxOrder = 4096;

  FieldTable(std::uint32_t p, std::uint32_t f);
  /// Throws unless q is a prime power <= kMaxOrder.
  static std::shared_ptr<const FieldTable> of_order(std::uint32_t q);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t f() const noexcept { return f_; }
  std::uint32_t q() const noexcept { return q_; }
  std::uint32_t size() const noexcept { return q_; }
  /// Coefficients c_0..c_{f-1} of the modulus x^f + sum c_i x^i.
  std::span<const std::uint32_t> modulus() const noexcept { return modulus_; }
  /// Root of the modulus; generates the multiplicative group.
  Element generator() const noexcept { return exp_[1]; }

  Element zero() const noexcept { return 0; }
  Element one() const noexcept { return 1; }
  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  Element inv(Element a) const;
  Element pow(Element a, std::uint64_t e) const;
  /// Image of an integer in the prime subfield.
  Element from_integer(std::int64_t v) const;

  /// tr(x) = x + x^p + ... + x^{p^{f-1}}, an element of F_p (code < p).
  std::uint32_t trace(Element x) const { return trace_[x]; }

 private:
  std::uint32_t p_, f_, q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> power_;  // p^i
  std::vector<Element> exp_;          // exp_[i] = g^i, doubled length
  std::vector<std::uint32_t> log_;    // log_[0] unused
  std::vector<std::uint32_t> trace_;
};

/// Probability measure on F_q with exact weights numerators[x] / denominator.
class FqDistribution {
 public:
  FqDistribution(std::shared_ptr<const FieldTable> field, std::vector<Rational> weights);
  FqDistribution(std::shared_ptr<const FieldTable> field, std::vector<std::uint64_t> numerators, std::uint64_t denominator);

  static FqDistribution uniform(std::shared_ptr<const FieldTable> field);
  static FqDistribution point_mass(std::shared_ptr<const FieldTable> field, Element x);
  /// "x:w,x:w,..." over element codes, or "uniform".
  static FqDistribution parse(std::shared_ptr<const FieldTable> field, std::string_view text);

  const FieldTable& field() const noexcept { return *field_; }
  const std::shared_ptr<const FieldTable>& field_ptr() const noexcept { return field_; }
  std::uint64_t denominator() const noexcept { return denominator_; }
  std::span<const std::uint64_t> numerators() const noexcept { return numerators_; }
  Rational weight(Element x) const;
  std::string to_string() const;

 private:
  std::shared_ptr<const FieldTable> field_;
  std::vector<std::uint64_t> numerators_;
  std::uint64_t denominator_ = 1;
};

/// All F_p-subspaces of F_q as sorted element lists, dimension 0..f.
/// Throws std::invalid_argument for f > 4.
std::vector<std::vector<Element>> additive_subgroups(const FieldTable& field);

/// 1 - max over cosets s+T of proper additive subgroups T of mu(s+T).
/// For prime q this is 1 - max_x mu(x).
Rational subgroup_alpha(const FqDistribution& mu);

std::complex<double> mu_hat(const FqDistribution& mu, Element x);

constexpr double kFourierSlack = 1e-9;

/// {x : |mu_hat(x)| >= 1 - eps}, sorted.
std::vector<Element> spec_set(const FqDistribution& mu, double eps);

/// Exact law of sum_l xi_l w_l, indexed by element code.
std::vector<Rational> exact_dot_distribution(const FqDistribution& mu, std::span<const Element> w);

struct LoCheck {
  Rational probability;  // P(X.w = r)
  Rational alpha;
  std::size_t m = 0;
  double lhs = 0.0;       // |P - 1/q|
  double rhs = 0.0;       // 2/sqrt(alpha m), +inf when alpha = 0
  bool degenerate = false;  // alpha = 0: the bound says nothing
  bool holds = true;        // decided exactly: lhs^2 alpha m <= 4
};

/// Requires at least one nonzero coefficient.
LoCheck lo_bound_check(const FqDistribution& mu, std::span<const Element> w, Element r);

/// psi(t) = 1 - |mu_hat(t)|^2.
double psi(const FqDistribution& mu, Element t);

/// T(v) = {t : sum_l psi(w_l t) <= v}, sorted.
std::vector<Element> psi_level_set(const FqDistribution& mu, std::span<const Element> w, double v);

/// Finite abelian group Z/N with elements 0..N-1.
struct CyclicGroup {
  std::uint32_t n;
  std::uint32_t size() const noexcept { return n; }
  std::uint32_t zero() const noexcept { return 0; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept { return (a + b) % n; }
  std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : n - a; }
};

/// A + B as a sorted list. Throws on empty input.
template <class Group>
std::vector<std::uint32_t> sumset(const Group& g, std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

/// Sym(X) = {h : h + X = X}, sorted.
template <class Group>
std::vector<std::uint32_t> sym_set(const Group& g, std::span<const std::uint32_t> x);

/// k-fold sumset of T(v) is contained in T(k^2 v) (with kFourierSlack).
bool check_level_set_nesting(const FqDistribution& mu, std::span<const Element> w, double v, unsigned k);

struct CosineCheck {
  double lhs = 0.0;  // cos(b_1 + ... + b_k)
  double rhs = 0.0;  // k sum cos b_i - k^2 + 1
  bool holds = true;
};
CosineCheck cosine_inequality_check(std::span<const double> betas);

struct SpectrumSubgroupCheck {
  Rational alpha;
  bool hypothesis_holds = true;  // alpha > 0
  bool holds = true;             // no nontrivial subgroup inside Spec_{1-alpha/2}
  std::vector<Element> offending_subgroup;
};

/// Enumerates the nonzero additive subgroups H (f <= 3) and checks none lies
/// in Spec_{1-alpha/2}. When alpha = 0 the hypothesis fails and that is
/// reported instead of a verdict on the spectrum.
SpectrumSubgroupCheck spectrum_subgroup_check(const FqDistribution& mu);

/// P(exactly one of t iid copies of psi is nonzero) = t (1-P0) P0^{t-1},
/// where P0 = P(psi = 0) for the symmetrized integer law.
Rational single_nonzero_probability(const Rational& p_zero, unsigned t);

/// Largest t in the range 1 <= t <= 144 / alpha used by the sparse-support
/// argument.
std::size_t zeros_claim_range(const Rational& alpha);

template <class Group>
std::vector<std::uint32_t> sumset(const Group& g, std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("sumset of an empty set");
  std::vector<char> hit(g.size(), 0);
  for (auto x : a)
    for (auto y : b) hit[g.add(x, y)] = 1;
  std::vector<std::uint32_t> out;
  for (std::uint32_t z = 0; z < g.size(); ++z)
    if (hit[z]) out.push_back(z);
  return out;
}

template <class Group>
std::vector<std::uint32_t> sym_set(const Group& g, std::span<const std::uint32_t> x) {
  if (x.empty()) throw std::invalid_argument("sym_set of an empty set");
  std::vector<char> member(g.size(), 0);
  for (auto v : x) member[v] = 1;
  std::vector<std::uint32_t> out;
  for (std::uint32_t h = 0; h < g.size(); ++h) {
    bool stable = true;
    for (auto v : x) {
      if (!member[g.add(h, v)]) {
        stable = false;
        break;
      }
    }
    if (stable) out.push_back(h);
  }
  return out;
}

}  // namespace latsurj
