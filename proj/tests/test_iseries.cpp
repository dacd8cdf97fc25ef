#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "qtoric/selftest/battery.hpp"
#include "qtoric/serialize.hpp"
#include "support.hpp"

using namespace qtoric;
using qtoric::selftest::flatten_rank_one;
using qtoric::testing::corpus_model;
using Coeffs = std::map<std::pair<int, int>, Rational>;

namespace {

const ZLaurent& value_at(const ISeries& s, const QVector& beta) {
  for (const auto& t : s.terms)
    if (t.beta.beta == beta) return t.value;
  throw std::runtime_error("no term at requested beta");
}

std::vector<long> charges_of(const GitPresentation& p) {
  std::vector<long> a;
  for (int rho = 0; rho < p.n_rays; ++rho) a.push_back(to_long(p.charges(0, static_cast<std::size_t>(rho))));
  return a;
}

}  // namespace

TEST(SmallI, ProjectiveLineDegreeOne) {
  ToricContext ctx(corpus_model("p1"));
  auto s = small_i(ctx, 1);
  EXPECT_EQ(flatten_rank_one(value_at(s, {1})), (Coeffs{{{0, -2}, 1}, {{1, -3}, -2}}));
  EXPECT_EQ(flatten_rank_one(value_at(s, {0})), (Coeffs{{{0, 0}, 1}}));
}

TEST(SmallI, WeightedLineHalf) {
  ToricContext ctx(corpus_model("wp_1_2"));
  auto s = small_i(ctx, 1);
  const auto& t = s.terms[1];
  EXPECT_EQ(t.beta.beta, (QVector{Rational(1, 2)}));
  EXPECT_EQ(t.sector.action, (QVector{Rational(1, 2), 0}));
  EXPECT_EQ(flatten_rank_one(t.value), (Coeffs{{{0, -2}, 2}}));
}

TEST(SmallI, LocalP2DegreeOne) {
  ToricContext ctx(corpus_model("local_p2"));
  EXPECT_EQ(flatten_rank_one(value_at(small_i(ctx, 1), {1})), (Coeffs{{{1, -1}, -6}, {{2, -2}, -9}}));
}

TEST(SmallI, ConifoldIsTrivial) {
  ToricContext ctx(corpus_model("conifold"));
  auto s = small_i(ctx, 3);
  for (const auto& t : s.terms) {
    EXPECT_EQ(flatten_rank_one(t.value), oracle::rank_one_term({1, 1, -1, -1}, t.beta.beta[0]).coeffs());
    if (!t.beta.is_zero()) EXPECT_TRUE(t.value.is_zero());
  }
}

TEST(SmallI, MatchesRankOneOracleOnRandomModels) {
  std::mt19937 rng(2718);
  std::uniform_int_distribution<int> charge(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3);
    std::vector<long> a;
    bool positive = false;
    for (int j = 0; j < n; ++j) {
      a.push_back(charge(rng));
      positive = positive || a.back() > 0;
    }
    if (!positive) continue;
    ToricContext ctx(qtoric::testing::rank_one(a));
    for (const auto& t : small_i(ctx, 2).terms)
      EXPECT_EQ(flatten_rank_one(t.value), oracle::rank_one_term(a, t.beta.beta[0]).coeffs())
          << "trial " << trial << " beta " << class_to_string(t.beta);
  }
}

TEST(SmallI, ProjectiveSpacesMatchOracle) {
  for (int n = 1; n <= 4; ++n) {
    ToricContext ctx(corpus_model("p" + std::to_string(n)));
    for (const auto& t : small_i(ctx, 3).terms)
      EXPECT_EQ(flatten_rank_one(t.value), oracle::projective_space_term(n, to_long(floor_q(t.beta.beta[0]))).coeffs());
  }
}

TEST(SmallI, RankOneCorpusMatchesOracle) {
  for (const char* name : {"wp_1_2", "wp_1_1_2", "local_p1_minus3"}) {
    auto p = corpus_model(name);
    ToricContext ctx(p);
    for (const auto& t : small_i(ctx, 3).terms)
      EXPECT_EQ(flatten_rank_one(t.value), oracle::rank_one_term(charges_of(p), t.beta.beta[0]).coeffs()) << name;
  }
}

TEST(SmallI, ExplicitWindowWarnsOnDroppedContent) {
  ToricContext ctx(corpus_model("p2"));
  auto s = small_i(ctx, 2, ZWindow{-4, 0});
  EXPECT_EQ(s.window.lo, -4);
  bool warned = false;
  for (const auto& w : s.warnings) warned = warned || w.find("dropped") != std::string::npos;
  EXPECT_TRUE(warned);
  auto full = small_i(ctx, 2);
  EXPECT_EQ(full.window.hi, 0);
  EXPECT_EQ(full.window.lo, -8);
}

TEST(SmallI, RejectsUnstableModel) {
  EXPECT_THROW(ToricContext(corpus_model("ssfail")), StabilityError);
}

TEST(TwoPath, CorpusAndFaultInjection) {
  for (const char* name : {"p1", "wp_1_2", "wp_1_1_2", "local_p2", "conifold", "f1", "wp12_squared", "local_p1_minus3"}) {
    ToricContext ctx(corpus_model(name));
    for (const auto& c : ctx.classes(3)) EXPECT_TRUE(residue_two_path_check(ctx, c).equal) << name;
  }
  ToricContext ctx(corpus_model("local_p2"));
  auto c = make_class(ctx.presentation(), {1});
  auto bad = detail::small_i_term(ctx, c, detail::NuRange::drop_integer_endpoint);
  EXPECT_FALSE(residue_two_path_check(ctx, c, &bad).equal);
  auto zero = make_class(ctx.presentation(), {0});
  auto r0 = residue_two_path_check(ctx, zero);
  EXPECT_EQ(r0.localization, ZLaurent::one(ctx.untwisted_ring()));
}

TEST(TwoPath, RandomModels) {
  for (const auto& p : qtoric::testing::random_stable_models(404, 20)) {
    ToricContext ctx(p);
    for (const auto& c : ctx.classes(2)) EXPECT_TRUE(residue_two_path_check(ctx, c).equal);
  }
}

TEST(Grading, HandExamplesAndRandomModels) {
  for (const char* name : {"p1", "wp_1_2", "local_p2"}) {
    ToricContext ctx(corpus_model(name));
    EXPECT_TRUE(grading_check(small_i(ctx, 3)).ok()) << name;
  }
  for (const auto& p : qtoric::testing::random_stable_models(405, 20)) {
    ToricContext ctx(p);
    EXPECT_TRUE(grading_check(small_i(ctx, 2)).ok());
  }
}

TEST(BigI, ZeroInsertionsEqualSmallI) {
  for (const char* name : {"p2", "wp_1_2", "p1xp1"}) {
    ToricContext ctx(corpus_model(name));
    auto small = small_i(ctx, 2);
    auto big = big_i(ctx, 2, TInsertion{{}, 3});
    ASSERT_EQ(big.terms.size(), small.terms.size());
    for (std::size_t i = 0; i < small.terms.size(); ++i) {
      ASSERT_EQ(big.terms[i].by_t.size(), small.terms[i].value.is_zero() ? 0u : 1u);
      if (!small.terms[i].value.is_zero()) EXPECT_EQ(big.terms[i].by_t.begin()->second, small.terms[i].value);
    }
  }
}

TEST(BigI, DivisorInsertionOnProjectiveLine) {
  ToricContext ctx(corpus_model("p1"));
  TInsertion ins{{parse_insertion("t1:H", ctx.presentation())}, 1};
  auto big = big_i(ctx, 1, ins);
  const auto& term = big.terms[1].by_t;
  EXPECT_EQ(flatten_rank_one(term.at(TMonomial{1})), (Coeffs{{{0, -2}, 1}, {{1, -3}, -1}}));
  EXPECT_EQ(flatten_rank_one(term.at(TMonomial{0})), (Coeffs{{{0, -2}, 1}, {{1, -3}, -2}}));
}

TEST(BigI, DegreeTwoInsertionOnPlane) {
  ToricContext ctx(corpus_model("p2"));
  TInsertion ins{{parse_insertion("t1:H^2", ctx.presentation())}, 1};
  auto big = big_i(ctx, 0, ins);
  ASSERT_EQ(big.terms.size(), 1u);
  EXPECT_EQ(flatten_rank_one(big.terms[0].by_t.at(TMonomial{1})), (Coeffs{{{2, -1}, 1}}));
}

TEST(BigI, StringInsertion) {
  ToricContext ctx(corpus_model("p1"));
  TInsertion ins{{parse_insertion("t0:1", ctx.presentation())}, 1};
  auto big = big_i(ctx, 2, ins);
  auto small = small_i(ctx, 2);
  for (std::size_t i = 0; i < small.terms.size(); ++i)
    EXPECT_EQ(big.terms[i].by_t.at(TMonomial{1}), small.terms[i].value.shifted(-1));
}

TEST(BigI, GiventalFormalSpecialization) {
  ToricContext ctx(corpus_model("p1"));
  auto big = big_i(ctx, 1, givental_insertion(ctx.presentation(), 1));
  EXPECT_EQ(big.variables, (std::vector<std::string>{"t0", "t1"}));
  const auto& term = big.terms[1].by_t;
  auto ring = ctx.untwisted_ring();
  auto h = character_class(ring, std::vector<Integer>{1});
  ZLaurent base = small_i_term(ctx, big.terms[1].beta);
  EXPECT_EQ(term.at(TMonomial{0, 1}), base * (ZLaurent::monomial(h, -1) + ZLaurent::one(ring)));
}

TEST(BigI, InsertionParserErrors) {
  auto p = corpus_model("p1xp1");
  EXPECT_NO_THROW(parse_insertion("t1:H1*H2 + 2*D3 - L(1,1)/2", p));
  EXPECT_THROW(parse_insertion("t1:H3", p), InputError);
  EXPECT_THROW(parse_insertion("t1:", p), InputError);
  EXPECT_THROW(parse_insertion("H1", p), InputError);
  EXPECT_THROW(parse_insertion("t1:(H1", p), InputError);
  EXPECT_THROW(parse_insertion("t1:H1/H2", p), InputError);
}

TEST(Givental, NumericPoint) {
  ToricContext ctx(corpus_model("p1"));
  auto zero = givental_small_i(ctx, 2, GiventalPoint{0, {0}});
  auto small = small_i(ctx, 2);
  for (std::size_t i = 0; i < small.terms.size(); ++i) {
    EXPECT_EQ(zero.terms[i].value, small.terms[i].value);
    EXPECT_EQ(zero.terms[i].rescaling, 0);
  }
  auto s = givental_small_i(ctx, 1, GiventalPoint{0, {Rational(1, 2)}});
  EXPECT_EQ(s.terms[1].rescaling, Rational(1, 2));
  EXPECT_EQ(flatten_rank_one(s.terms[0].value), (Coeffs{{{0, 0}, 1}, {{1, -1}, Rational(1, 2)}}));
  EXPECT_THROW(givental_small_i(ctx, 1, GiventalPoint{0, {}}), InputError);
}

TEST(Twist, CubicOnPlane) {
  ToricContext ctx(corpus_model("p2"));
  TwistData cubic{{{3}}};
  auto line = make_class(ctx.presentation(), {1});
  EXPECT_EQ(flatten_rank_one(twist_factor(ctx, cubic, line)), oracle::twist_numerator(3, 3, 3).coeffs());
  auto s = twisted_small_i(ctx, cubic, 2);
  for (const auto& t : s.terms) {
    long d = to_long(floor_q(t.beta.beta[0]));
    auto want = t.beta.is_zero() ? oracle::TruncSeries::one(3)
                                 : oracle::twist_numerator(3, 3, 3 * d) * oracle::projective_space_term(2, d);
    EXPECT_EQ(flatten_rank_one(t.value), want.coeffs()) << "d=" << d;
  }
}

TEST(Twist, LineBundleOnProjectiveLine) {
  ToricContext ctx(corpus_model("p1"));
  auto f = twist_factor(ctx, TwistData{{{1}}}, make_class(ctx.presentation(), {1}));
  EXPECT_EQ(flatten_rank_one(f), (Coeffs{{{1, 1}, 1}}));
}

TEST(Twist, EmptyAndInvalid) {
  ToricContext ctx(corpus_model("p1"));
  auto plain = twisted_small_i(ctx, TwistData{}, 2);
  auto small = small_i(ctx, 2);
  for (std::size_t i = 0; i < small.terms.size(); ++i) EXPECT_EQ(plain.terms[i].value, small.terms[i].value);
  EXPECT_THROW(twisted_small_i(ctx, TwistData{{{-1}}}, 2), TwistError);
  ToricContext wp(corpus_model("wp_1_2"));
  EXPECT_THROW(twisted_small_i(wp, TwistData{{{1}}}, 1), TwistError);
}

TEST(MirrorMap, StrictlyPositive) {
  for (int n = 1; n <= 4; ++n) {
    ToricContext ctx(corpus_model("p" + std::to_string(n)));
    auto m = mirror_map(ctx, 3);
    EXPECT_TRUE(m.j0_is_one);
    EXPECT_TRUE(m.i1.empty());
  }
}

TEST(MirrorMap, LocalP2Coefficients) {
  ToricContext ctx(corpus_model("local_p2"));
  auto m = mirror_map(ctx, 4);
  EXPECT_TRUE(m.j0_is_one);
  ASSERT_EQ(m.i1.size(), 4u);
  for (const auto& [c, v] : m.i1) {
    long d = to_long(floor_q(c.beta[0]));
    EXPECT_EQ(v.to_polynomial(), (Polynomial{{Monomial{1}, oracle::local_p2_mirror_coefficient(d)}}));
  }
}

TEST(MirrorMap, Conifold) {
  ToricContext ctx(corpus_model("conifold"));
  auto m = mirror_map(ctx, 3);
  EXPECT_TRUE(m.j0_is_one);
  EXPECT_TRUE(m.i1.empty());
}

TEST(MirrorMap, RejectsNonSemipositive) {
  ToricContext ctx(corpus_model("local_p1_minus3"));
  EXPECT_THROW(mirror_map(ctx, 3), PreconditionError);
}

TEST(Concurrency, ThreadCountDoesNotChangeOutput) {
  ToricContext ctx(corpus_model("f1"));
  auto run = [&](const char* threads) {
    setenv("QTORIC_THREADS", threads, 1);
    auto doc = series_json(ctx, small_i(ctx, 4)).dump();
    unsetenv("QTORIC_THREADS");
    return doc;
  };
  auto one = run("1");
  EXPECT_EQ(one, run("4"));
  EXPECT_EQ(one, run("7"));
}
