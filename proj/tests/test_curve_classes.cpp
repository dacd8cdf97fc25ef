#include <gtest/gtest.h>

#include "qtoric/selftest/oracles.hpp"
#include "support.hpp"

using namespace qtoric;
using qtoric::testing::corpus_model;
using qtoric::testing::rank_one;

namespace {

std::vector<QVector> betas(const std::vector<CurveClass>& classes) {
  std::vector<QVector> out;
  for (const auto& c : classes) out.push_back(c.beta);
  return out;
}

}  // namespace

TEST(Pairing, Examples) {
  auto p1 = corpus_model("p1");
  auto wp = corpus_model("wp_1_2");
  EXPECT_EQ(pairing(QVector{1}, p1.character_of_ray(0)), 1);
  EXPECT_EQ(pairing(QVector{Rational(1, 2)}, wp.character_of_ray(1)), 1);
  EXPECT_EQ(pairing(QVector{Rational(7, 3)}, std::vector<Integer>{0}), 0);
}

TEST(MinimalA, Examples) {
  auto wp = corpus_model("wp_1_2");
  EXPECT_EQ(minimal_a(make_class(wp, {Rational(3)})), 1);
  EXPECT_EQ(minimal_a(make_class(wp, {Rational(1, 2)})), 2);
  auto f1 = corpus_model("f1");
  EXPECT_EQ(minimal_a(make_class(f1, {Rational(1, 2), Rational(1, 3)})), 6);
}

TEST(FBetaNonempty, Examples) {
  auto wp = corpus_model("wp_1_2");
  auto p1 = corpus_model("p1");
  EXPECT_TRUE(f_beta_nonempty(wp, make_class(wp, {Rational(0)})));
  EXPECT_TRUE(f_beta_nonempty(wp, make_class(wp, {Rational(1, 2)})));
  EXPECT_EQ(nonnegative_integral_rays(make_class(wp, {Rational(1, 2)})), (Subset{1}));
  EXPECT_FALSE(f_beta_nonempty(p1, make_class(p1, {Rational(-1)})));
}

TEST(Enumeration, ProjectiveLine) {
  EXPECT_EQ(betas(enumerate_effective(corpus_model("p1"), 2)), (std::vector<QVector>{{0}, {1}, {2}}));
}

TEST(Enumeration, WeightedLine) {
  EXPECT_EQ(betas(enumerate_effective(corpus_model("wp_1_2"), 1)),
            (std::vector<QVector>{{0}, {Rational(1, 2)}, {1}}));
}

TEST(Enumeration, LocalP2) {
  EXPECT_EQ(betas(enumerate_effective(corpus_model("local_p2"), 2)), (std::vector<QVector>{{0}, {1}, {2}}));
}

TEST(Enumeration, DegreeAscendingThenLex) {
  auto classes = enumerate_effective(corpus_model("p1xp1"), 2);
  for (std::size_t i = 1; i < classes.size(); ++i) EXPECT_TRUE(class_order(classes[i - 1], classes[i]));
  EXPECT_EQ(classes.size(), 6u);
}

TEST(Enumeration, MatchesBruteForceOnRandomModels) {
  for (const auto& p : qtoric::testing::random_stable_models(31, 25)) {
    Integer e = exponent_lcm_e(p);
    if (e > 6) continue;
    auto engine = betas(enumerate_effective(p, 2));
    std::sort(engine.begin(), engine.end());
    auto oracle_classes = oracle::brute_force_effective(p, e, 2, 8);
    EXPECT_EQ(engine, oracle_classes);
  }
}

TEST(LoopSpace, ProjectiveLine) {
  auto p1 = corpus_model("p1");
  for (long d = 0; d <= 4; ++d) {
    auto dims = loop_space_dims(p1, make_class(p1, {Rational(d)}));
    EXPECT_EQ(dims.dim_W_beta, 2 * (d + 1));
    EXPECT_EQ(dims.dim_stack, 2 * d + 1);
    EXPECT_EQ(dims.obstruction_dim, 0);
  }
}

TEST(LoopSpace, WeightedLineHalf) {
  auto wp = corpus_model("wp_1_2");
  auto dims = loop_space_dims(wp, make_class(wp, {Rational(1, 2)}));
  EXPECT_EQ(dims.a, 2);
  EXPECT_EQ(dims.dim_W_beta, 3);
  EXPECT_EQ(dims.dim_stack, 2);
  EXPECT_EQ(oracle::count_weighted_monomials(2, 1) + oracle::count_weighted_monomials(2, 2), 3);
}

TEST(LoopSpace, LocalP2) {
  auto lp = corpus_model("local_p2");
  auto dims = loop_space_dims(lp, make_class(lp, {Rational(1)}));
  EXPECT_EQ(dims.dim_W_beta, 6);
  EXPECT_EQ(dims.obstruction_dim, 2);
  EXPECT_EQ(dims.virtual_dim, 3);
}

TEST(VirtualDimension, Examples) {
  auto p1 = corpus_model("p1");
  auto wp = corpus_model("wp_1_2");
  EXPECT_EQ(virtual_dim_moduli(p1, 0, 2, make_class(p1, {Rational(1)}), QVector{0, 0}), 2);
  EXPECT_EQ(virtual_dim_moduli(wp, 0, 1, make_class(wp, {Rational(1, 2)}), QVector{Rational(1, 2)}), 0);
  EXPECT_EQ(virtual_dim_moduli(corpus_model("p3"), 1, 0, make_class(corpus_model("p3"), {Rational(0)}), QVector{}),
            0);
}

TEST(Semipositivity, Examples) {
  for (int n = 1; n <= 4; ++n) {
    auto r = semipositivity_report(corpus_model("p" + std::to_string(n)), 3);
    EXPECT_TRUE(r.pass);
    EXPECT_TRUE(r.strict);
  }
  auto lp = semipositivity_report(corpus_model("local_p2"), 3);
  EXPECT_TRUE(lp.pass);
  EXPECT_FALSE(lp.strict);
  auto bad = semipositivity_report(rank_one({1, 1, -3}), 3);
  EXPECT_FALSE(bad.pass);
  ASSERT_TRUE(bad.violation);
  EXPECT_EQ(bad.violation->beta, (QVector{1}));
}
