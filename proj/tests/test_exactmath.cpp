#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace qtoric;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int bound) {
  std::uniform_int_distribution<int> entry(-bound, bound);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry(rng);
  return m;
}

IntMatrix diagonal_matrix(const std::vector<Integer>& d, std::size_t rows, std::size_t cols) {
  IntMatrix m(rows, cols);
  for (std::size_t k = 0; k < d.size(); ++k) m(k, k) = d[k];
  return m;
}

void expect_valid_snf(const IntMatrix& m) {
  SnfResult snf = smith_normal_form(m);
  ASSERT_EQ(snf.diagonal.size(), std::min(m.rows(), m.cols()));
  EXPECT_EQ(snf.left * m * snf.right, diagonal_matrix(snf.diagonal, m.rows(), m.cols()));
  EXPECT_EQ(abs(determinant(snf.left)), 1);
  EXPECT_EQ(abs(determinant(snf.right)), 1);
  for (std::size_t k = 0; k < snf.diagonal.size(); ++k) {
    EXPECT_GE(snf.diagonal[k], 0);
    if (k + 1 < snf.diagonal.size() && snf.diagonal[k] != 0) EXPECT_EQ(snf.diagonal[k + 1] % snf.diagonal[k], 0);
    if (k + 1 < snf.diagonal.size() && snf.diagonal[k] == 0) EXPECT_EQ(snf.diagonal[k + 1], 0);
  }
}

}  // namespace

TEST(Rational, FloorCeilFrac) {
  EXPECT_EQ(floor_q(Rational(-1, 2)), -1);
  EXPECT_EQ(ceil_q(Rational(-1, 2)), 0);
  EXPECT_EQ(floor_q(Rational(7, 3)), 2);
  EXPECT_EQ(ceil_q(Rational(7, 3)), 3);
  EXPECT_EQ(ceil_q(Rational(-3)), -3);
  EXPECT_EQ(frac_q(Rational(-1, 3)), Rational(2, 3));
  EXPECT_EQ(frac_q(Rational(5, 2)), Rational(1, 2));
  EXPECT_EQ(frac_q(Rational(-4)), 0);
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational(" -7 "), Rational(-7));
  EXPECT_EQ(to_string(make_rational(4, 2)), "2");
  EXPECT_EQ(to_string(make_rational(-3, 9)), "-1/3");
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("abc"), InputError);
  EXPECT_THROW(parse_rational(""), InputError);
}

TEST(Rational, LcmGcd) {
  EXPECT_EQ(lcm(4, 6), 12);
  EXPECT_EQ(gcd(4, 6), 2);
  EXPECT_EQ(lcm(1, 7), 7);
}

TEST(SmithNormalForm, Identity) {
  auto snf = smith_normal_form(IntMatrix::from_rows({{1, 0}, {0, 1}}));
  EXPECT_EQ(snf.diagonal, (std::vector<Integer>{1, 1}));
}

TEST(SmithNormalForm, OneByOne) {
  auto snf = smith_normal_form(IntMatrix::from_rows({{2}}));
  EXPECT_EQ(snf.diagonal, (std::vector<Integer>{2}));
}

TEST(SmithNormalForm, UpperTriangular) {
  IntMatrix m = IntMatrix::from_rows({{1, 1}, {0, 2}});
  auto snf = smith_normal_form(m);
  EXPECT_EQ(snf.diagonal, (std::vector<Integer>{1, 2}));
  EXPECT_EQ(snf.left * m * snf.right, diagonal_matrix(snf.diagonal, 2, 2));
}

TEST(SmithNormalForm, RandomRoundTrip) {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t rows = 1 + rng() % 4;
    std::size_t cols = 1 + rng() % 5;
    expect_valid_snf(random_matrix(rng, rows, cols, 6));
  }
}

TEST(SmithNormalForm, ProductOfDiagonalIsDeterminant) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 4;
    IntMatrix m = random_matrix(rng, n, n, 5);
    Integer prod = 1;
    for (const auto& d : smith_normal_form(m).diagonal) prod *= d;
    EXPECT_EQ(prod, abs(determinant(m)));
  }
}

TEST(Determinant, Known) {
  EXPECT_EQ(determinant(IntMatrix::from_rows({{2, 1}, {1, 3}})), 5);
  EXPECT_EQ(determinant(IntMatrix::from_rows({{0, 1}, {1, 0}})), -1);
  EXPECT_EQ(determinant(IntMatrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})), 0);
}

TEST(LinearAlgebra, RankAndSolve) {
  EXPECT_EQ(rank({{1, 1}, {2, 2}}), 1u);
  EXPECT_EQ(rank({{1, 0}, {0, 1}, {1, 1}}), 2u);
  auto x = solve_square({{2, 1}, {1, 3}}, {3, 4});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (QVector{1, 1}));
  EXPECT_FALSE(solve_square({{1, 1}, {2, 2}}, {1, 2}));
}

TEST(Cone, TargetIsGenerator) {
  std::vector<QVector> gens{{1}, {2}};
  auto d = cone_contains(gens, {1});
  ASSERT_TRUE(d.contains);
  EXPECT_EQ(d.coefficients, (QVector{1, 0}));
}

TEST(Cone, OppositeRay) {
  std::vector<QVector> gens{{-1}};
  auto d = cone_contains(gens, {1});
  ASSERT_FALSE(d.contains);
  ASSERT_EQ(d.separator.size(), 1u);
  EXPECT_GE(dot(d.separator, gens[0]), 0);
  EXPECT_LT(dot(d.separator, QVector{1}), 0);
  EXPECT_EQ(d.separator, (QVector{-1}));
}

TEST(Cone, OutsideTwoDimensionalCone) {
  std::vector<QVector> gens{{1, 0}, {1, 1}};
  auto d = cone_contains(gens, {0, 1});
  ASSERT_FALSE(d.contains);
  for (const auto& g : gens) EXPECT_GE(dot(d.separator, g), 0);
  EXPECT_LT(dot(d.separator, QVector{0, 1}), 0);
}

TEST(Cone, EmptyGenerators) {
  std::vector<QVector> none;
  EXPECT_TRUE(cone_contains(none, {0, 0}).contains);
  EXPECT_FALSE(cone_contains(none, {1, 0}).contains);
}

TEST(Cone, RandomCertificatesAreValid) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t dim = 1 + rng() % 3;
    std::size_t n = rng() % 5;
    std::vector<QVector> gens(n, QVector(dim));
    for (auto& g : gens)
      for (auto& x : g) x = entry(rng);
    QVector target(dim);
    for (auto& x : target) x = entry(rng);
    auto d = cone_contains(gens, target);
    if (d.contains) {
      ASSERT_EQ(d.coefficients.size(), n);
      QVector sum(dim, 0);
      for (std::size_t j = 0; j < n; ++j) {
        EXPECT_GE(d.coefficients[j], 0);
        for (std::size_t i = 0; i < dim; ++i) sum[i] += d.coefficients[j] * gens[j][i];
      }
      EXPECT_EQ(sum, target);
    } else {
      ASSERT_EQ(d.separator.size(), dim);
      for (const auto& g : gens) EXPECT_GE(dot(d.separator, g), 0);
      EXPECT_LT(dot(d.separator, target), 0);
    }
  }
}

TEST(Subsets, CombinationsInLexOrder) {
  std::vector<Subset> seen;
  for_each_combination(4, 2, [&](const Subset& s) { seen.push_back(s); });
  EXPECT_EQ(seen, (std::vector<Subset>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  int count = 0;
  for_each_combination(3, 0, [&](const Subset& s) {
    EXPECT_TRUE(s.empty());
    ++count;
  });
  EXPECT_EQ(count, 1);
  EXPECT_TRUE(is_subset({1, 3}, {0, 1, 2, 3}));
  EXPECT_FALSE(is_subset({1, 4}, {0, 1, 2, 3}));
}
