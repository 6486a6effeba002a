#pragma once

#include "latsurj/exact_linalg.hpp"
#include "latsurj/integer.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace latsurj {

struct Atom {
  std::int64_t value;
  Rational weight;
};

/// Finite-support law on the integers with exact rational weights. Stored
/// with a common denominator so sampling is exact.
class Distribution {
 public:
  /// Atoms may arrive in any order; they are sorted by value. Throws
  /// std::invalid_argument on duplicate values, weights outside (0,1], or a
  /// total different from 1.
  explicit Distribution(std::vector<std::pair<std::int64_t, Rational>> atoms);

  /// Literal syntax: "0:9/10,1:1/10", "uniform01", "uniform-1,0,1",
  /// "bernoulli(1/10)".
  static Distribution parse(std::string_view text);
  static Distribution uniform(std::span<const std::int64_t> values);
  static Distribution point_mass(std::int64_t value);

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t support_size() const noexcept { return atoms_.size(); }
  std::int64_t min_value() const noexcept { return atoms_.front().value; }
  std::int64_t max_value() const noexcept { return atoms_.back().value; }
  Rational weight_of(std::int64_t value) const;
  Rational max_weight() const;

  std::uint64_t denominator() const noexcept { return denominator_; }
  std::span<const std::uint64_t> numerators() const noexcept { return numerators_; }

  template <class Rng>
  std::int64_t sample(Rng& rng) const {
    const std::uint64_t r = uniform_below(rng, denominator_);
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < numerators_.size(); ++k) {
      acc += numerators_[k];
      if (r < acc) return atoms_[k].value;
    }
    return atoms_.back().value;
  }

  /// Canonical literal, e.g. "0:1/2,1:1/2".
  std::string to_string() const;

  friend bool operator==(const Distribution& a, const Distribution& b) {
    return a.denominator_ == b.denominator_ && a.numerators_ == b.numerators_ && a.values() == b.values();
  }

 private:
  std::vector<std::int64_t> values() const;

  /// Exact uniform draw in [0, bound) by rejection on raw 64-bit output.
  template <class Rng>
  static std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
      const std::uint64_t x = static_cast<std::uint64_t>(rng());
      if (x < limit) return x % bound;
    }
  }

  std::vector<Atom> atoms_;
  std::uint64_t denominator_ = 1;
  std::vector<std::uint64_t> numerators_;
};

/// 1 - max_x P(xi = x mod p).
Rational alpha_mod_p(const Distribution& dist, std::uint64_t p);

struct AlphaBalance {
  Rational alpha;
  bool degenerate = false;          // single atom, or some prime collapses the support
  std::optional<std::uint64_t> prime;  // minimizing prime; empty when the large-p value wins
};

/// Minimum of alpha_mod_p over all primes. Only primes dividing a difference
/// of two support values can merge atoms, so those plus the large-p value
/// (1 - max weight) are checked.
AlphaBalance alpha_min(const Distribution& dist);

Distribution sparse_bernoulli(const Rational& alpha);

/// Law of xi - xi' for independent copies. Checks alpha <= alpha' <= 2 alpha
/// with alpha = 1 - max weight and alpha' = 1 - P(0).
Distribution symmetrize(const Distribution& dist);

enum class EnsembleKind { iid_rect, symmetric_plus };

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::iid_rect;
  std::size_t n = 1;
  std::size_t m = 1;  // total columns for iid_rect
  std::size_t u = 0;  // extra iid columns for symmetric_plus
  Distribution dist = Distribution::point_mass(0);
  std::uint64_t seed = 0;

  std::size_t total_columns() const { return kind == EnsembleKind::iid_rect ? m : n + u; }
};

/// Independent stream seed for trial `index` of a run with `master` seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

using Rng = std::mt19937_64;

/// Row-major n x total_columns values. iid_rect entries are drawn column by
/// column, so a prefix of columns does not depend on how many follow.
/// symmetric_plus draws the upper triangle row by row, mirrors it, then
/// draws the u extra columns.
std::vector<std::int64_t> sample_matrix_values(const EnsembleSpec& spec);
IntMatrix sample_matrix(const EnsembleSpec& spec);

/// n fresh iid entries.
std::vector<std::int64_t> sample_column(const Distribution& dist, std::size_t n, Rng& rng);

}  // namespace latsurj
