#pragma once

#include "latsurj/exact_linalg.hpp"
#include "latsurj/integer.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace latsurj {

/// Matrix over F_p with entries reduced to [0, p). Word-size primes
/// (p < 2^62) use native arithmetic; larger primes fall back to GMP.
class ModMatrix {
 public:
  /// Word backend. Entries must already be reduced.
  ModMatrix(std::uint64_t p, std::size_t rows, std::size_t cols, std::vector<std::uint64_t> entries);
  /// Arbitrary-precision backend; entries are reduced on construction.
  ModMatrix(const Integer& p, std::size_t rows, std::size_t cols, std::vector<Integer> entries);

  const Integer& modulus() const noexcept { return modulus_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool word_backend() const noexcept { return std::holds_alternative<std::vector<std::uint64_t>>(entries_); }

  Integer entry(std::size_t i, std::size_t j) const;
  /// Valid only for the word backend.
  std::span<const std::uint64_t> words() const;
  std::span<const Integer> bigs() const;

  ModMatrix transpose() const;
  ModMatrix select_rows(std::span<const std::size_t> rows) const;

 private:
  Integer modulus_;
  std::size_t rows_;
  std::size_t cols_;
  std::variant<std::vector<std::uint64_t>, std::vector<Integer>> entries_;
};

/// Largest modulus handled by the word backend (exclusive).
inline constexpr std::uint64_t kWordModulusLimit = std::uint64_t{1} << 62;

/// Entrywise nonnegative residues. Throws std::invalid_argument if p is not prime.
ModMatrix reduce_mod(const IntMatrix& m, const Integer& p);

/// Reduction of a small-integer row-major matrix by a word-size prime.
ModMatrix reduce_mod(std::size_t rows, std::size_t cols, std::span<const std::int64_t> values, std::uint64_t p);

std::size_t rank_mod_p(const ModMatrix& m);

inline std::size_t corank_mod_p(const ModMatrix& m) { return m.rows() - rank_mod_p(m); }

/// Nonzero w with w^T M = 0 (mod p), or nullopt when the rows are independent.
std::optional<std::vector<Integer>> left_null_vector(const ModMatrix& m);

/// Greedy column rank profile mod p: indices of the first independent columns.
std::vector<std::size_t> pivot_columns_mod_p(const ModMatrix& m);

/// Span of vectors in F_p^n kept in reduced echelon form. Values are
/// persistent: extend() returns a new space and leaves this one intact.
class ColumnSpace {
 public:
  ColumnSpace(const Integer& p, std::size_t ambient);

  static ColumnSpace of_columns(const ModMatrix& m);

  const Integer& modulus() const noexcept { return modulus_; }
  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t dimension() const noexcept { return pivots_.size(); }
  std::size_t codimension() const noexcept { return ambient_ - pivots_.size(); }
  std::span<const std::size_t> pivots() const noexcept { return pivots_; }

  /// Basis vectors (reduced echelon, pivot entry 1).
  std::vector<std::vector<Integer>> basis() const;

  /// Entries may be arbitrary integers; they are reduced mod p.
  bool contains(std::span<const Integer> x) const;
  bool contains(std::span<const std::int64_t> x) const;
  ColumnSpace extend(std::span<const Integer> x) const;
  ColumnSpace extend(std::span<const std::int64_t> x) const;

  /// In-place variant used by simulators that own the space.
  bool absorb(std::span<const std::int64_t> x);

 private:
  using WordBasis = std::vector<std::vector<std::uint64_t>>;
  using BigBasis = std::vector<std::vector<Integer>>;

  template <class Vec>
  bool absorb_reduced(Vec v);

  Integer modulus_;
  std::size_t ambient_;
  std::vector<std::size_t> pivots_;
  std::variant<WordBasis, BigBasis> basis_;
};

/// Finds a nonzero w with w^T M = 0 and |supp(w)| <= delta * rows, scanning
/// supports in increasing size. Requires rows <= kSparseAnnihilatorMaxRows.
inline constexpr std::size_t kSparseAnnihilatorMaxRows = 24;
std::optional<std::vector<Integer>> has_sparse_annihilator(const ModMatrix& m, double delta);

/// Subspace of F_p^n for small p and n, stored by a reduced echelon basis.
struct SmallSubspace {
  std::uint32_t p = 2;
  std::size_t ambient = 0;
  std::vector<std::vector<std::uint32_t>> basis;

  std::size_t dimension() const noexcept { return basis.size(); }
  /// All p^dim elements, each encoded as sum_i x_i p^i.
  std::vector<std::uint32_t> element_codes() const;
};

/// Every subspace of F_p^n (all dimensions 0..n), one per reduced echelon form.
std::vector<SmallSubspace> enumerate_subspaces(std::uint32_t p, std::size_t n);

}  // namespace latsurj
