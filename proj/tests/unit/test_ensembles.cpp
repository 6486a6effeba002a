#include "latsurj/ensembles.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace latsurj;

TEST(Ensembles, ParseLiterals) {
  const auto d = Distribution::parse("0:9/10,1:1/10");
  ASSERT_EQ(d.support_size(), 2u);
  EXPECT_EQ(d.weight_of(0), Rational(9, 10));
  EXPECT_EQ(d.weight_of(1), Rational(1, 10));
  EXPECT_EQ(d.weight_of(5), 0);
  EXPECT_EQ(d.denominator(), 10u);
  EXPECT_EQ(d, Distribution::parse("bernoulli(1/10)"));
  EXPECT_EQ(d, Distribution::parse("1:0.1, 0:0.9"));
  const auto u = Distribution::parse("uniform-1,0,1");
  EXPECT_EQ(u.support_size(), 3u);
  EXPECT_EQ(u.weight_of(-1), Rational(1, 3));
  EXPECT_EQ(Distribution::parse("uniform01").to_string(), "0:1/2,1:1/2");
  EXPECT_EQ(Distribution::parse(u.to_string()), u);
}

TEST(Ensembles, ParseRejectsBadLaws) {
  EXPECT_THROW(Distribution::parse("0:1/2,1:1/3"), std::invalid_argument);
  EXPECT_THROW(Distribution::parse("0:1/2,0:1/2"), std::invalid_argument);
  EXPECT_THROW(Distribution::parse("0:3/2,1:-1/2"), std::invalid_argument);
  EXPECT_THROW(Distribution::parse("0"), std::invalid_argument);
  EXPECT_THROW(Distribution::parse("bernoulli(1)"), std::invalid_argument);
  EXPECT_THROW(Distribution::parse("uniform"), std::invalid_argument);
}

TEST(Ensembles, AlphaModP) {
  const auto u = Distribution::parse("uniform-1,0,1");
  EXPECT_EQ(alpha_mod_p(u, 2), Rational(1, 3));
  EXPECT_EQ(alpha_mod_p(u, 3), Rational(2, 3));
  EXPECT_EQ(alpha_mod_p(u, 1000003), Rational(2, 3));
  const auto b = alpha_min(u);
  EXPECT_EQ(b.alpha, Rational(1, 3));
  EXPECT_FALSE(b.degenerate);
  ASSERT_TRUE(b.prime);
  EXPECT_EQ(*b.prime, 2u);
}

TEST(Ensembles, AlphaMinMatchesScanOverPrimes) {
  const char* laws[] = {"uniform01", "0:1/4,3:1/4,7:3/8,12:1/8", "-5:1/3,5:1/3,1:1/3", "0:1/2,6:1/4,15:1/4"};
  for (const char* text : laws) {
    const auto d = Distribution::parse(text);
    Rational best = 1 - d.max_weight();
    for (std::uint64_t p = 2; p < 200; ++p)
      if (is_probable_prime(from_u64(p))) best = std::min(best, alpha_mod_p(d, p));
    EXPECT_EQ(alpha_min(d).alpha, best) << text;
  }
  EXPECT_EQ(alpha_min(Distribution::parse("uniform01")).alpha, Rational(1, 2));
}

TEST(Ensembles, DegenerateLaws) {
  EXPECT_TRUE(alpha_min(Distribution::point_mass(3)).degenerate);
  const auto even = Distribution::parse("0:1/2,2:1/2");
  const auto b = alpha_min(even);
  EXPECT_TRUE(b.degenerate);
  EXPECT_EQ(b.alpha, 0);
  EXPECT_EQ(*b.prime, 2u);
}

TEST(Ensembles, Symmetrize) {
  const auto s = symmetrize(Distribution::parse("bernoulli(1/10)"));
  EXPECT_EQ(s.weight_of(0), Rational(41, 50));
  EXPECT_EQ(s.weight_of(1), Rational(9, 100));
  EXPECT_EQ(s.weight_of(-1), Rational(9, 100));
  const auto t = symmetrize(Distribution::parse("uniform-1,0,1"));
  EXPECT_EQ(t.weight_of(2), Rational(1, 9));
  EXPECT_EQ(t.weight_of(0), Rational(1, 3));
}

TEST(Ensembles, SparseBernoulli) {
  const auto d = sparse_bernoulli(Rational(1, 10));
  EXPECT_EQ(alpha_min(d).alpha, Rational(1, 10));
  EXPECT_THROW(sparse_bernoulli(Rational(0)), std::invalid_argument);
}

TEST(Ensembles, SamplingIsDeterministic) {
  EnsembleSpec spec;
  spec.n = 6;
  spec.m = 8;
  spec.dist = Distribution::parse("uniform-1,0,1");
  spec.seed = 42;
  EXPECT_EQ(sample_matrix_values(spec), sample_matrix_values(spec));
  auto other = spec;
  other.seed = 43;
  EXPECT_NE(sample_matrix_values(spec), sample_matrix_values(other));
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}

TEST(Ensembles, ColumnPrefixIsStable) {
  EnsembleSpec spec;
  spec.n = 5;
  spec.m = 5;
  spec.dist = Distribution::parse("uniform01");
  spec.seed = 9;
  const auto small = sample_matrix(spec);
  spec.m = 9;
  const auto wide = sample_matrix(spec);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) ASSERT_EQ(small(i, j), wide(i, j));
}

TEST(Ensembles, SymmetricPlusShape) {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::symmetric_plus;
  spec.n = 7;
  spec.u = 3;
  spec.dist = Distribution::parse("uniform-1,0,1");
  spec.seed = 5;
  const auto m = sample_matrix(spec);
  EXPECT_EQ(m.rows(), 7u);
  EXPECT_EQ(m.cols(), 10u);
  EXPECT_TRUE(m.is_symmetric_prefix());
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) ASSERT_EQ(m(i, j), m(j, i));
}

TEST(Ensembles, EmpiricalFrequencies) {
  const auto d = Distribution::parse("0:1/8,1:5/8,2:1/4");
  Rng rng(2024);
  std::map<std::int64_t, int> counts;
  const int draws = 200000;
  for (int k = 0; k < draws; ++k) ++counts[d.sample(rng)];
  // 5 standard deviations of the binomial count
  for (const auto& a : d.atoms()) {
    const double p = to_double(a.weight);
    const double sd = std::sqrt(draws * p * (1 - p));
    EXPECT_NEAR(counts[a.value], draws * p, 5 * sd) << a.value;
  }
}
