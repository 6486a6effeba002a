#include "latsurj/exact_linalg.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

using namespace latsurj;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<Integer> e(rows * cols);
  for (auto& x : e) x = d(rng);
  return IntMatrix(rows, cols, std::move(e));
}

// Leibniz expansion over all permutations.
Integer det_by_permutations(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Integer total = 0;
  do {
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    Integer term = sign;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

Integer det_of(const IntMatrix& u) { return det_bareiss(u); }

}  // namespace

TEST(ExactLinalg, ConstructionChecks) {
  EXPECT_THROW(IntMatrix(0, 2, std::vector<Integer>{}), std::invalid_argument);
  EXPECT_THROW(IntMatrix(2, 2, std::vector<Integer>{1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(IntMatrix::from_rows({{1, 2}, {3}}), std::invalid_argument);
  const auto m = IntMatrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  EXPECT_EQ(m.transpose(), IntMatrix::from_rows({{1, 4}, {2, 5}, {3, 6}}));
  EXPECT_EQ(m.max_abs_entry(), 6);
  EXPECT_THROW(m.at(2, 0), std::out_of_range);
}

TEST(ExactLinalg, MatrixTextRoundTrip) {
  const auto m = IntMatrix::from_rows({{1, -2, 3}, {0, 40, -6}});
  std::stringstream s;
  write_matrix(s, m);
  EXPECT_EQ(s.str(), "2 3\n1 -2 3\n0 40 -6\n");
  EXPECT_EQ(read_matrix(s), m);
  std::istringstream bad("2 2\n1 2 3");
  EXPECT_THROW(read_matrix(bad), std::invalid_argument);
  std::istringstream extra("1 1\n5 6");
  EXPECT_THROW(read_matrix(extra), std::invalid_argument);
}

TEST(ExactLinalg, KnownDeterminants) {
  EXPECT_EQ(det(IntMatrix::identity(7)), 1);
  EXPECT_EQ(det(IntMatrix::from_rows({{2, 0}, {0, 3}})), 6);
  EXPECT_EQ(det(IntMatrix::from_rows({{1, 2}, {2, 4}})), 0);
  EXPECT_EQ(det(IntMatrix::from_rows({{0, 1}, {1, 0}})), -1);
  EXPECT_THROW(det(IntMatrix::from_rows({{1, 2, 3}})), std::invalid_argument);
  // Vandermonde on 1..6: prod_{i<j} (j - i)
  const std::size_t n = 6;
  std::vector<Integer> e;
  Integer expect = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer x = static_cast<long>(i + 1), p = 1;
    for (std::size_t j = 0; j < n; ++j, p *= x) e.push_back(p);
    for (std::size_t j = 0; j < i; ++j) expect *= static_cast<long>(i - j);
  }
  EXPECT_EQ(det(IntMatrix(n, n, e)), expect);
}

TEST(ExactLinalg, DeterminantPathsAgreeWithLeibniz) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const auto m = random_matrix(rng, n, n, -9, 9);
    const Integer expect = det_by_permutations(m);
    ASSERT_EQ(det_bareiss(m), expect);
    ASSERT_EQ(det_mod_crt(m), expect);
    ASSERT_EQ(det(m), expect);
  }
}

TEST(ExactLinalg, LargeEntriesAndSizes) {
  std::mt19937_64 rng(5);
  for (std::size_t n : {12, 25, 40}) {
    auto m = random_matrix(rng, n, n, -1000000, 1000000);
    EXPECT_EQ(det_mod_crt(m), det_bareiss(m)) << n;
  }
  // entries beyond one word
  std::vector<Integer> e;
  for (int k = 0; k < 9; ++k) e.push_back(Integer("123456789012345678901234567") * (k % 3 == 0 ? 1 : -k) + k * k);
  const IntMatrix big(3, 3, e);
  EXPECT_EQ(det(big), det_by_permutations(big));
}

TEST(ExactLinalg, DetModWordPrime) {
  const auto m = IntMatrix::from_rows({{3, 1}, {4, 5}});
  EXPECT_EQ(det_mod_word_prime(m, 7), 11 % 7);
  EXPECT_EQ(det_mod_word_prime(IntMatrix::from_rows({{0, 1}, {1, 0}}), 13), 12u);
}

TEST(ExactLinalg, HadamardBoundDominates) {
  EXPECT_EQ(hadamard_bound(2, 3), 6);    // (3*2)^1
  EXPECT_EQ(hadamard_bound(3, 1), 6);    // ceil(3^{3/2}) = ceil(5.196)
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 7;
    const auto m = random_matrix(rng, n, n, -5, 5);
    const Integer k0 = m.max_abs_entry();
    EXPECT_LE(abs(det_bareiss(m)), hadamard_bound(n, k0 * k0));
  }
}

TEST(ExactLinalg, RationalEchelon) {
  const auto m = IntMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}});
  const auto e = rational_echelon(m);
  EXPECT_EQ(e.rank, 2u);
  EXPECT_EQ(e.pivot_columns, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(rational_echelon(IntMatrix::zeros(2, 3)).rank, 0u);
}

TEST(ExactLinalg, SmithNormalFormKnown) {
  // Classic example with invariant factors 2, 6, 12.
  const auto m = IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  EXPECT_EQ(smith_diagonal(m), (std::vector<Integer>{2, 6, 12}));
  const auto c = cokernel(m);
  EXPECT_EQ(c.invariant_factors, (std::vector<Integer>{2, 6, 12}));
  EXPECT_EQ(c.free_rank, 0u);
  EXPECT_EQ(cokernel(IntMatrix::from_rows({{2, 0}, {0, 3}})).invariant_factors, std::vector<Integer>{6});
  EXPECT_TRUE(cokernel(IntMatrix::from_rows({{2, 3}})).trivial());
  const auto wide = cokernel(IntMatrix::from_rows({{1, 1, 1}, {2, 2, 2}}));
  EXPECT_EQ(wide.free_rank, 1u);
  EXPECT_TRUE(wide.invariant_factors.empty());
}

TEST(ExactLinalg, SmithTransformsProperty) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t rows = 1 + trial % 5, cols = 1 + (trial / 5) % 6;
    const auto m = random_matrix(rng, rows, cols, -6, 6);
    const auto snf = smith_normal_form(m);
    ASSERT_EQ(snf.left * m * snf.right, snf.diag);
    ASSERT_EQ(abs(det_of(snf.left)), 1);
    ASSERT_EQ(abs(det_of(snf.right)), 1);
    const auto diag = smith_diagonal(m);
    ASSERT_EQ(diag.size(), std::min(rows, cols));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        if (i != j) ASSERT_EQ(snf.diag(i, j), 0);
        else ASSERT_EQ(snf.diag(i, j), diag[i]);
      }
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
      ASSERT_GE(diag[i], 0);
      if (diag[i] != 0) ASSERT_EQ(diag[i + 1] % diag[i], 0);
      else ASSERT_EQ(diag[i + 1], 0);
    }
  }
}

TEST(ExactLinalg, CokernelOrderIsAbsDet) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const auto m = random_matrix(rng, n, n, -7, 7);
    const Integer d = det(m);
    const auto c = cokernel(m);
    if (d == 0) {
      ASSERT_GE(c.free_rank, 1u);
    } else {
      Integer order = 1;
      for (const auto& f : c.invariant_factors) order *= f;
      ASSERT_EQ(order, abs(d));
      ASSERT_EQ(c.free_rank, 0u);
    }
  }
}

TEST(ExactLinalg, CokernelPPart) {
  const auto m = IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  const auto p2 = cokernel_p_part(m, 2);
  EXPECT_EQ(p2.exponents, (std::vector<unsigned long>{1, 1, 2}));
  EXPECT_EQ(p2.corank(), 3u);
  const auto p3 = cokernel_p_part(m, 3);
  EXPECT_EQ(p3.exponents, (std::vector<unsigned long>{1, 1}));
  EXPECT_EQ(cokernel_p_part(m, 5).corank(), 0u);
  EXPECT_THROW(cokernel_p_part(m, 4), std::invalid_argument);
}
