#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "qtoric/selftest/oracles.hpp"
#include "support.hpp"

using namespace qtoric;
using qtoric::testing::corpus_model;

TEST(Sectors, ProjectiveSpaceHasOne) {
  for (int n = 1; n <= 4; ++n) {
    auto s = enumerate_sectors(corpus_model("p" + std::to_string(n)));
    ASSERT_EQ(s.size(), 1u);
    EXPECT_TRUE(s[0].untwisted());
    EXPECT_EQ(s[0].age, 0);
    EXPECT_EQ(s[0].dim, n);
  }
}

TEST(Sectors, WeightedLine) {
  auto s = enumerate_sectors(corpus_model("wp_1_2"));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].action, (QVector{0, 0}));
  EXPECT_EQ(s[0].dim, 1);
  EXPECT_EQ(s[1].action, (QVector{Rational(1, 2), 0}));
  EXPECT_EQ(s[1].age, Rational(1, 2));
  EXPECT_EQ(s[1].dim, 0);
  EXPECT_EQ(s[1].support, (Subset{1}));
}

TEST(Sectors, WeightedPlane) {
  auto s = enumerate_sectors(corpus_model("wp_1_1_2"));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[1].action, (QVector{Rational(1, 2), Rational(1, 2), 0}));
  EXPECT_EQ(s[1].age, 1);
  EXPECT_EQ(s[1].dim, 0);
}

TEST(Sectors, ClassToSector) {
  auto wp = corpus_model("wp_1_2");
  auto sectors = enumerate_sectors(wp);
  EXPECT_TRUE(sector_of_class(sectors, make_class(wp, {Rational(3)})).untwisted());
  const auto& half = sector_of_class(sectors, make_class(wp, {Rational(1, 2)}));
  EXPECT_EQ(half.action, (QVector{Rational(1, 2), 0}));
  EXPECT_EQ(half.age, Rational(1, 2));

  auto wp112 = corpus_model("wp_1_1_2");
  auto s112 = enumerate_sectors(wp112);
  const auto& h = sector_of_class(s112, make_class(wp112, {Rational(1, 2)}));
  EXPECT_EQ(h.action, (QVector{Rational(1, 2), Rational(1, 2), 0}));
  EXPECT_EQ(h.age, 1);
}

TEST(Sectors, Involution) {
  auto wp = corpus_model("wp_1_2");
  auto s = enumerate_sectors(wp);
  EXPECT_EQ(involution(s[0]), s[0]);
  EXPECT_EQ(involution(s[1]), s[1]);
  auto mu3 = make_sector(qtoric::testing::rank_one({1, 3}), {Rational(1, 3), 0});
  EXPECT_EQ(involution(mu3).action, (QVector{Rational(2, 3), 0}));
}

TEST(Sectors, Age) {
  auto s = enumerate_sectors(corpus_model("wp_1_2"));
  EXPECT_EQ(age(s[0]), 0);
  EXPECT_EQ(age(s[1]), Rational(1, 2));
  EXPECT_EQ(age(enumerate_sectors(corpus_model("wp_1_1_2"))[1]), 1);
}

TEST(Sectors, MatchBruteForceOnCorpusAndRandomModels) {
  std::vector<GitPresentation> models;
  for (const char* name : {"p1", "p3", "wp_1_2", "wp_1_1_2", "local_p2", "conifold", "p1xp1", "f1", "wp12_squared"})
    models.push_back(corpus_model(name));
  for (auto& p : qtoric::testing::random_stable_models(77, 30)) models.push_back(std::move(p));
  std::size_t compared = 0;
  for (const auto& p : models) {
    auto stab = check_ss_equals_s(p);
    Integer order = 1;
    for (const auto& f : stab.fixed_subsets) order = lcm(order, f.stab_order);
    if (pow(to_long(order), p.rank) > 5000) continue;
    std::set<QVector> engine;
    for (const auto& s : enumerate_sectors(p)) engine.insert(s.action);
    EXPECT_EQ(engine, oracle::brute_force_sector_actions(p, to_long(order))) << p.name;
    ++compared;
  }
  EXPECT_GE(compared, 30u);
}

TEST(Sectors, AgeDualityOnRandomModels) {
  for (const auto& p : qtoric::testing::random_stable_models(78, 30)) {
    auto sectors = enumerate_sectors(p);
    for (const auto& s : sectors) {
      auto inv = involution(s);
      EXPECT_EQ(involution(inv), s);
      EXPECT_NE(std::find(sectors.begin(), sectors.end(), inv), sectors.end());
      long moving = 0;
      for (const auto& c : s.action) moving += c != 0;
      EXPECT_EQ(age(s) + age(inv), moving);
      EXPECT_EQ(inv.dim, s.dim);
    }
  }
}
