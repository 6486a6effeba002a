#pragma once

#include "latsurj/integer.hpp"

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace latsurj {

/// Dense row-major matrix of arbitrary-precision integers. Immutable once
/// constructed; every transformation returns a new matrix.
class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);
  IntMatrix(std::size_t rows, std::size_t cols, std::span<const std::int64_t> entries);

  static IntMatrix identity(std::size_t n);
  static IntMatrix zeros(std::size_t rows, std::size_t cols);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const Integer& at(std::size_t i, std::size_t j) const;
  std::span<const Integer> entries() const noexcept { return entries_; }
  std::span<const Integer> row(std::size_t i) const;
  std::vector<Integer> column(std::size_t j) const;

  IntMatrix transpose() const;
  IntMatrix select_columns(std::span<const std::size_t> columns) const;
  IntMatrix append_columns(const IntMatrix& extra) const;
  IntMatrix scaled(const Integer& factor) const;
  IntMatrix with_rows_swapped(std::size_t a, std::size_t b) const;

  /// Largest absolute entry, at least 1 (the K0 of the Hadamard bound).
  Integer max_abs_entry() const;
  bool is_symmetric_prefix() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Integer> entries_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

/// Matrix text format: "rows cols" on the first line, then whitespace
/// separated decimal entries in row-major order.
IntMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const IntMatrix& m);

/// Exact determinant; default path is CRT over word-size primes.
Integer det(const IntMatrix& m);

/// Fraction-free (Bareiss) elimination. Kept as the independent oracle.
Integer det_bareiss(const IntMatrix& m);

/// Determinant from residues modulo 62-bit primes whose product exceeds
/// twice the Hadamard bound of the matrix.
Integer det_mod_crt(const IntMatrix& m);

/// Determinant of a square word-size matrix modulo a prime p < 2^62.
std::uint64_t det_mod_word_prime(const IntMatrix& m, std::uint64_t p);

/// ceil((k0 * n)^(n/2)).
Integer hadamard_bound(std::size_t n, const Integer& k0);

/// First `count` primes below 2^62, in decreasing order.
std::span<const std::uint64_t> crt_primes(std::size_t count);

/// Rank profile over the rationals by fraction-free elimination.
struct RationalEchelon {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
};
RationalEchelon rational_echelon(const IntMatrix& m);

struct SnfDecomposition {
  IntMatrix left;
  IntMatrix diag;
  IntMatrix right;
};

/// Smith normal form with unimodular transforms: left * m * right == diag.
/// Pivot rule: minimum absolute nonzero entry of the active block.
SnfDecomposition smith_normal_form(const IntMatrix& m);

/// Diagonal of the Smith normal form only (no transforms are accumulated).
std::vector<Integer> smith_diagonal(const IntMatrix& m);

struct CokernelStructure {
  std::vector<Integer> invariant_factors;  // each >= 2, d_i | d_{i+1}
  std::size_t free_rank = 0;

  bool trivial() const noexcept { return invariant_factors.empty() && free_rank == 0; }
  friend bool operator==(const CokernelStructure&, const CokernelStructure&) = default;
};

/// Z^rows / M(Z^cols).
CokernelStructure cokernel(const IntMatrix& m);

struct PPart {
  std::vector<unsigned long> exponents;  // p-adic valuations of the invariant factors, zeros dropped
  std::size_t free_rank = 0;

  /// Corank of M mod p.
  std::size_t corank() const noexcept { return exponents.size() + free_rank; }
};

PPart cokernel_p_part(const IntMatrix& m, const Integer& p);
PPart cokernel_p_part(const CokernelStructure& cok, const Integer& p);

}  // namespace latsurj
