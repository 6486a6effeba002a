#include "latsurj/certifier.hpp"
#include "latsurj/modp_linalg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace latsurj;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<Integer> e(rows * cols);
  for (auto& x : e) x = d(rng);
  return IntMatrix(rows, cols, std::move(e));
}

Integer next_prime(const Integer& n) {
  Integer p;
  mpz_nextprime(p.get_mpz_t(), n.get_mpz_t());
  return p;
}

Integer product_of(const std::vector<PrimePower>& f) {
  Integer out = 1;
  for (const auto& [p, e] : f)
    for (unsigned k = 0; k < e; ++k) out *= p;
  return out;
}

}  // namespace

TEST(Factorization, SmallAndMixed) {
  const auto f = factorize(Integer(-360));
  ASSERT_TRUE(f);
  EXPECT_EQ(*f, (std::vector<PrimePower>{{2, 3}, {3, 2}, {5, 1}}));
  EXPECT_TRUE(factorize(Integer(1))->empty());
  EXPECT_THROW(factorize(Integer(0)), std::invalid_argument);

  const Integer p = next_prime(Integer("1000000000000")), q = next_prime(Integer("3000000000000"));
  const Integer n = p * p * q * 12;
  const auto g = factorize(n);
  ASSERT_TRUE(g);
  EXPECT_EQ(product_of(*g), n);
  for (const auto& pp : *g) EXPECT_TRUE(is_probable_prime(pp.prime));
  const auto divisors = prime_divisors(n);
  ASSERT_TRUE(divisors);
  EXPECT_EQ(*divisors, (std::vector<Integer>{2, 3, p, q}));
}

TEST(Factorization, BudgetExhaustion) {
  const Integer p = next_prime(Integer("100000000000000000000")), q = next_prime(Integer("300000000000000000000"));
  FactorBudget tiny{100, 8, 1};
  EXPECT_FALSE(factorize(p * q * 4, tiny));
  const auto partial = partial_factorize(p * q * 4, tiny);
  EXPECT_EQ(partial.found, (std::vector<PrimePower>{{2, 2}}));
  EXPECT_EQ(partial.cofactor, p * q);
  // a large prime is recognized without factoring effort
  const auto prime_only = factorize(p, tiny);
  ASSERT_TRUE(prime_only);
  EXPECT_EQ(prime_only->size(), 1u);
}

TEST(Certifier, IdentityIsSurjective) {
  const auto c = is_surjective(IntMatrix::identity(4));
  EXPECT_EQ(c.verdict, Verdict::surjective);
  EXPECT_EQ(c.method, Method::prime_reduction);
  const auto& w = std::get<SurjectiveWitness>(c.witness);
  EXPECT_EQ(w.gcd, 1);
  EXPECT_TRUE(w.factorization.empty());
  EXPECT_TRUE(verify_certificate(IntMatrix::identity(4), c));
}

TEST(Certifier, CoprimeMinors) {
  // minors 6 (cols 0,1), 14 (cols 0,2) and 21 (cols 1,2): gcd 1
  const auto m = IntMatrix::from_rows({{2, 3, 0}, {0, 5, 7}});
  const auto c = is_surjective(m);
  EXPECT_EQ(c.verdict, Verdict::surjective);
  EXPECT_TRUE(verify_certificate(m, c));
  const auto& w = std::get<SurjectiveWitness>(c.witness);
  for (const auto& p : w.confirmed_primes) EXPECT_TRUE(surjective_mod_p(m, p));
}

TEST(Certifier, PrimeAnnihilator) {
  const auto m = IntMatrix::from_rows({{2, 0, 4}, {0, 3, 3}});
  const auto c = is_surjective(m);
  ASSERT_EQ(c.verdict, Verdict::not_surjective);
  const auto& w = std::get<AnnihilatorWitness>(c.witness);
  EXPECT_TRUE(w.prime_modulus);
  EXPECT_TRUE(w.modulus == 2 || w.modulus == 3);
  EXPECT_TRUE(verify_certificate(m, c));
  EXPECT_FALSE(surjective_mod_p(m, w.modulus));
}

TEST(Certifier, RankDeficiency) {
  const auto m = IntMatrix::from_rows({{1, 2, 3}, {2, 4, 6}});
  const auto c = is_surjective(m);
  EXPECT_EQ(c.verdict, Verdict::not_surjective);
  EXPECT_EQ(std::get<RankDeficiencyWitness>(c.witness).rational_rank, 1u);
  EXPECT_TRUE(verify_certificate(m, c));
  // fewer columns than rows
  const auto tall = IntMatrix::from_rows({{1}, {0}});
  EXPECT_EQ(is_surjective(tall).verdict, Verdict::not_surjective);
  EXPECT_TRUE(verify_certificate(tall, is_surjective(tall)));
}

TEST(Certifier, SnfFallbackOnHardDeterminant) {
  const Integer p = next_prime(Integer("100000000000000000000")), q = next_prime(Integer("300000000000000000000"));
  CertifierOptions opts;
  opts.budget = FactorBudget{100, 8, 1};

  std::vector<Integer> e{p * q, 0, 0, 1};
  const IntMatrix bad(2, 2, e);
  const auto c = is_surjective(bad, opts);
  EXPECT_EQ(c.method, Method::snf_fallback);
  EXPECT_EQ(c.verdict, Verdict::not_surjective);
  EXPECT_TRUE(verify_certificate(bad, c));

  // square with hard determinant, plus a unit column: surjective
  std::vector<Integer> f{p * q, 0, 1, 0, 1, 0};
  const IntMatrix good(2, 3, f);
  const auto d = is_surjective(good, opts);
  EXPECT_EQ(d.verdict, Verdict::surjective);
  EXPECT_TRUE(verify_certificate(good, d));
}

TEST(Certifier, TamperedCertificatesFail) {
  const auto m = IntMatrix::from_rows({{2, 3, 0}, {0, 5, 7}});
  const auto c = is_surjective(m);
  auto flipped = c;
  flipped.verdict = Verdict::not_surjective;
  EXPECT_FALSE(verify_certificate(m, flipped));

  auto wrong_det = c;
  std::get<SurjectiveWitness>(wrong_det.witness).determinant += 1;
  EXPECT_FALSE(verify_certificate(m, wrong_det));

  const auto n = IntMatrix::from_rows({{2, 0, 4}, {0, 3, 3}});
  auto a = is_surjective(n);
  std::get<AnnihilatorWitness>(a.witness).vector.assign(2, Integer(0));
  EXPECT_FALSE(verify_certificate(n, a));

  // a surjective certificate presented for a different matrix
  EXPECT_FALSE(verify_certificate(n, c));
}

TEST(Certifier, AgreesWithSmithNormalForm) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t rows = 1 + trial % 5;
    const std::size_t cols = rows + trial % 3;
    const int range = trial % 2 ? 2 : 9;
    const auto m = random_matrix(rng, rows, cols, -range, range);
    const auto c = is_surjective(m);
    ASSERT_EQ(c.verdict == Verdict::surjective, cokernel(m).trivial()) << trial;
    ASSERT_TRUE(verify_certificate(m, c)) << trial;
  }
}

TEST(Certifier, ScaledMatricesAreNotSurjective) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const auto m = random_matrix(rng, 3, 5, -5, 5).scaled(Integer(6));
    const auto c = is_surjective(m);
    ASSERT_EQ(c.verdict, Verdict::not_surjective);
    ASSERT_TRUE(verify_certificate(m, c));
  }
}

TEST(Certifier, SurjectiveModP) {
  const auto m = IntMatrix::from_rows({{2, 0}, {0, 3}});
  EXPECT_FALSE(surjective_mod_p(m, 2));
  EXPECT_FALSE(surjective_mod_p(m, 3));
  EXPECT_TRUE(surjective_mod_p(m, 5));
  EXPECT_THROW(surjective_mod_p(m, 4), std::invalid_argument);
}
