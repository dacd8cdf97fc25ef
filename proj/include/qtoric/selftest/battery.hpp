#pragma once

// The acceptance battery, shared by the acceptance test binary and `qtoric selftest`.

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qtoric/iseries.hpp"
#include "qtoric/selftest/oracles.hpp"

namespace qtoric::selftest {

using Corpus = std::map<std::string, GitPresentation>;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

// Every *.json file in dir, keyed by file stem.
inline Corpus load_corpus(const std::filesystem::path& dir) {
  Corpus c;
  if (!std::filesystem::is_directory(dir)) return c;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".json") c.emplace(entry.path().stem().string(), load_presentation_file(entry.path().string()));
  return c;
}

// Rank-one engine output in the oracle's coordinates.
inline std::map<std::pair<int, int>, Rational> flatten_rank_one(const ZLaurent& z) {
  std::map<std::pair<int, int>, Rational> out;
  for (const auto& [k, coeff] : z.terms())
    for (const auto& [m, c] : coeff.to_polynomial()) out[{m.at(0), k}] = c;
  return out;
}

namespace detail {

class Failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

inline const GitPresentation& model(const Corpus& corpus, const std::string& name) {
  auto it = corpus.find(name);
  if (it == corpus.end()) throw Failure("corpus is missing model '" + name + "'");
  return it->second;
}

// Models of the corpus with W^ss = W^s.
inline std::vector<const GitPresentation*> stable_models(const Corpus& corpus) {
  std::vector<const GitPresentation*> out;
  for (const auto& [_, p] : corpus)
    if (check_ss_equals_s(p).ss_equals_s) out.push_back(&p);
  require(!out.empty(), "corpus has no models with W^ss = W^s");
  return out;
}

inline const ITerm& term_at(const ISeries& s, const QVector& beta) {
  for (const auto& t : s.terms)
    if (t.beta.beta == beta) return t;
  throw Failure("no term at beta=" + to_string(beta.at(0)));
}

inline std::vector<long> rank_one_charges(const GitPresentation& p) {
  std::vector<long> a;
  for (int rho = 0; rho < p.n_rays; ++rho) a.push_back(to_long(p.charges(0, static_cast<std::size_t>(rho))));
  return a;
}

inline CriterionResult run(int id, std::string title, const std::function<std::string()>& body,
                           double time_limit = 0) {
  CriterionResult r{id, std::move(title), false, "", 0};
  auto start = std::chrono::steady_clock::now();
  try {
    r.detail = body();
    r.passed = true;
  } catch (const std::exception& e) {
    r.detail = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.passed && time_limit > 0 && r.seconds >= time_limit) {
    r.passed = false;
    r.detail = "exceeded time limit of " + std::to_string(time_limit) + " s";
  }
  return r;
}

}  // namespace detail

inline CriterionResult projective_space_oracle(const Corpus& corpus) {
  using namespace detail;
  return run(1, "P^n small I (n=1..4, d<=3) equals prod (H+mz)^-(n+1)", [&] {
    std::size_t compared = 0;
    for (int n = 1; n <= 4; ++n) {
      ToricContext ctx(model(corpus, "p" + std::to_string(n)));
      ISeries s = small_i(ctx, 3);
      require(s.terms.size() == 4, "expected 4 classes on P^" + std::to_string(n));
      for (int d = 0; d <= 3; ++d) {
        const ITerm& t = term_at(s, {Rational(d)});
        require(flatten_rank_one(t.value) == oracle::projective_space_term(n, d).coeffs(),
                "mismatch on P^" + std::to_string(n) + " at d=" + std::to_string(d));
        ++compared;
      }
    }
    return std::to_string(compared) + " coefficients of q^d compared exactly";
  }, 5.0);
}

inline CriterionResult weighted_projective_line(const Corpus& corpus) {
  using namespace detail;
  return run(2, "P(1,2): sectors {0, 1/2}, e = 2, q^{1/2} term = 2 z^-2 on twisted sector", [&] {
    ToricContext ctx(model(corpus, "wp_1_2"));
    require(ctx.exponent_e() == 2, "e != 2");
    require(ctx.sectors().size() == 2, "expected 2 sectors");
    require(ctx.sectors()[0].age == 0 && ctx.sectors()[1].age == Rational(1, 2), "ages are not {0, 1/2}");
    ISeries s = small_i(ctx, 1);
    const ITerm& t = term_at(s, {Rational(1, 2)});
    require(t.sector.action == QVector{Rational(1, 2), Rational(0)}, "q^{1/2} term lands in wrong sector");
    auto ring = ctx.ring(ctx.sector_index(t.sector.action));
    require(t.value == ZLaurent::monomial(RingElement::scalar(ring, 2), -2), "q^{1/2} term is not 2 z^-2");
    return std::string("q^{1/2} -> 2 z^-2 on sector c=(1/2,0)");
  });
}

inline CriterionResult local_p2(const Corpus& corpus) {
  using namespace detail;
  return run(3, "local P^2: q^1 term = -6H/z - 9H^2/z^2; J0 = 1; I1 = -6H q + ...", [&] {
    ToricContext ctx(model(corpus, "local_p2"));
    ISeries s = small_i(ctx, 1);
    std::map<std::pair<int, int>, Rational> expect{{{1, -1}, Rational(-6)}, {{2, -2}, Rational(-9)}};
    require(flatten_rank_one(term_at(s, {Rational(1)}).value) == expect, "q^1 term differs from -6H z^-1 - 9H^2 z^-2");
    MirrorData m = mirror_map(ctx, 3);
    require(m.j0_is_one, "J0 != 1");
    require(m.i1.size() == 3, "expected I1 coefficients at d = 1, 2, 3");
    for (const auto& [c, v] : m.i1) {
      long d = to_long(floor_q(c.beta[0]));
      std::map<std::pair<int, int>, Rational> want{{{1, 0}, oracle::local_p2_mirror_coefficient(d)}};
      std::map<std::pair<int, int>, Rational> got;
      for (const auto& [mono, coeff] : v.to_polynomial()) got[{mono.at(0), 0}] = coeff;
      require(got == want, "I1 coefficient mismatch at d=" + std::to_string(d));
    }
    return std::string("I1 = -6H q + 45H q^2 - 560H q^3 (matches 3(-1)^d(3d-1)!/(d!)^3)");
  }, 1.0);
}

inline CriterionResult grading(const Corpus& corpus) {
  using namespace detail;
  return run(4, "grading: sum b + z-power + degree + age = 0 on every term (d<=3)", [&] {
    std::size_t checked = 0;
    for (const auto* p : stable_models(corpus)) {
      ToricContext ctx(*p);
      auto rep = grading_check(small_i(ctx, 3));
      if (!rep.ok()) throw Failure("grading violated on " + p->name + " at beta=" + class_to_string(rep.violations.front().beta));
      checked += rep.components_checked;
    }
    return std::to_string(checked) + " homogeneous components checked";
  });
}

inline CriterionResult two_path(const Corpus& corpus) {
  using namespace detail;
  return run(5, "closed form equals localization residue x normal Euler class (d<=3)", [&] {
    std::size_t checked = 0;
    for (const auto* p : stable_models(corpus)) {
      ToricContext ctx(*p);
      for (const auto& c : ctx.classes(3)) {
        require(residue_two_path_check(ctx, c).equal, "two-path mismatch on " + p->name + " at beta=" + class_to_string(c));
        ++checked;
      }
    }
    return std::to_string(checked) + " classes checked";
  });
}

inline CriterionResult semipositive_structure(const Corpus& corpus) {
  using namespace detail;
  return run(6, "semi-positive shape 1 + I1/z + O(z^-2); strict models: I1 = 0, J0 = 1", [&] {
    for (const char* name : {"local_p2", "conifold", "p1", "p2", "p3", "p4"}) model(corpus, name);
    std::size_t semi = 0, strict = 0;
    for (const auto* p : stable_models(corpus)) {
      ToricContext ctx(*p);
      auto sp = semipositivity_report(ctx.classes(3), 3);
      if (!sp.pass) continue;
      ISeries s = small_i(ctx, 3);
      auto shape = semipositive_shape(s);
      require(shape.positive_powers_absent && shape.z0_is_unit && shape.z1_untwisted_low_degree,
              p->name + ": " + (shape.notes.empty() ? std::string("shape") : shape.notes.front()));
      MirrorData m = mirror_map(ctx, 3);
      require(m.j0_is_one, p->name + ": J0 != 1");
      ++semi;
      if (sp.strict) {
        require(shape.strict_form && m.i1.empty(), p->name + ": strictly positive but I1 != 0");
        ++strict;
      }
    }
    return std::to_string(semi) + " semi-positive models, " + std::to_string(strict) + " strictly positive";
  });
}

inline CriterionResult involution_age(const Corpus& corpus) {
  using namespace detail;
  return run(7, "sector involution is an involution; age(g) + age(g^-1) = #{c != 0}", [&] {
    std::size_t checked = 0;
    for (const auto* p : stable_models(corpus)) {
      auto sectors = enumerate_sectors(*p);
      for (const auto& s : sectors) {
        SectorLabel inv = involution(s);
        require(involution(inv) == s, p->name + ": involution is not an involution");
        require(std::find(sectors.begin(), sectors.end(), inv) != sectors.end(), p->name + ": inverse sector missing");
        long moving = 0;
        for (const auto& c : s.action)
          if (c != 0) ++moving;
        require(age(s) + age(inv) == moving, p->name + ": age duality fails");
        ++checked;
      }
    }
    return std::to_string(checked) + " sectors checked";
  });
}

inline CriterionResult enumeration_oracle(const Corpus& corpus) {
  using namespace detail;
  return run(8, "enumerate_effective equals brute-force lattice scan (degree <= 2)", [&] {
    std::size_t total = 0;
    for (const auto* p : stable_models(corpus)) {
      Integer e = exponent_lcm_e(*p);
      std::vector<QVector> engine;
      for (const auto& c : enumerate_effective(*p, 2)) engine.push_back(c.beta);
      std::sort(engine.begin(), engine.end());
      auto small_box = oracle::brute_force_effective(*p, e, 2, 6);
      auto large_box = oracle::brute_force_effective(*p, e, 2, 12);
      require(small_box == large_box, p->name + ": brute-force scan box too small");
      require(engine == small_box, p->name + ": enumeration differs from brute force");
      total += engine.size();
    }
    return std::to_string(total) + " classes matched";
  });
}

inline CriterionResult cubic_twist(const Corpus& corpus) {
  using namespace detail;
  return run(9, "cubic twist on P^2, d=1: extra numerator (3H)(3H+z)(3H+2z)(3H+3z)", [&] {
    ToricContext ctx(model(corpus, "p2"));
    TwistData cubic{{{Integer(3)}}};
    CurveClass line = make_class(ctx.presentation(), {Rational(1)});
    require(flatten_rank_one(twist_factor(ctx, cubic, line)) == oracle::twist_numerator(3, 3, 3).coeffs(),
            "twist factor differs from prod_{m=0}^3 (3H + m z)");
    ISeries s = twisted_small_i(ctx, cubic, 1);
    auto want = oracle::twist_numerator(3, 3, 3) * oracle::rank_one_term({1, 1, 1}, 1);
    require(flatten_rank_one(term_at(s, {Rational(1)}).value) == want.coeffs(), "twisted q^1 term mismatch");
    return std::string("twisted q^1 term matches the hypergeometric oracle");
  });
}

inline CriterionResult dimension_table(const Corpus& corpus) {
  using namespace detail;
  return run(10, "loop-space and moduli dimension formulas reproduce the hand table", [&] {
    const auto& p1 = model(corpus, "p1");
    for (long d = 0; d <= 3; ++d) {
      auto dims = loop_space_dims(p1, make_class(p1, {Rational(d)}));
      require(dims.dim_W_beta == 2 * (d + 1) && dims.dim_stack == 2 * d + 1 && dims.obstruction_dim == 0 &&
                  dims.virtual_dim == 2 * d + 1,
              "P^1 dims wrong at d=" + std::to_string(d));
    }
    const auto& wp = model(corpus, "wp_1_2");
    auto half = loop_space_dims(wp, make_class(wp, {Rational(1, 2)}));
    require(half.a == 2 && half.dim_W_beta == 3 && half.dim_stack == 2 && half.virtual_dim == 2, "P(1,2) dims wrong");
    require(oracle::count_weighted_monomials(2, 1) + oracle::count_weighted_monomials(2, 2) == 3,
            "monomial count oracle disagrees for P(1,2)");
    const auto& lp2 = model(corpus, "local_p2");
    auto lp = loop_space_dims(lp2, make_class(lp2, {Rational(1)}));
    require(lp.dim_W_beta == 6 && lp.obstruction_dim == 2 && lp.virtual_dim == 3, "local P^2 dims wrong");

    QVector none;
    QVector two_untwisted{0, 0};
    QVector one_half{Rational(1, 2)};
    require(virtual_dim_moduli(p1, 0, 2, make_class(p1, {1}), two_untwisted) == 2, "P^1 moduli dimension != 2");
    require(virtual_dim_moduli(wp, 0, 1, make_class(wp, {Rational(1, 2)}), one_half) == 0, "P(1,2) moduli dimension != 0");
    require(virtual_dim_moduli(p1, 1, 0, make_class(p1, {0}), none) == 0, "genus-one constant dimension != 0");
    return std::string("all tabulated dimensions reproduced");
  });
}

// A deliberately wrong nu-range must be caught by the two-path check.
inline CriterionResult fault_injection(const Corpus& corpus) {
  using namespace detail;
  return run(11, "fault injection: corrupted nu-range is caught by the two-path check", [&] {
    ToricContext ctx(model(corpus, "local_p2"));
    CurveClass c = make_class(ctx.presentation(), {Rational(1)});
    ZLaurent corrupted = qtoric::detail::small_i_term(ctx, c, qtoric::detail::NuRange::drop_integer_endpoint);
    require(!residue_two_path_check(ctx, c, &corrupted).equal, "corrupted nu-range went undetected");
    return std::string("mutation detected at beta=(1)");
  });
}

inline std::vector<CriterionResult> run_acceptance(const Corpus& corpus) {
  return {projective_space_oracle(corpus), weighted_projective_line(corpus), local_p2(corpus),
          grading(corpus),                 two_path(corpus),                 semipositive_structure(corpus),
          involution_age(corpus),          enumeration_oracle(corpus),       cubic_twist(corpus),
          dimension_table(corpus),         fault_injection(corpus)};
}

inline std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.title << " -- " << r.detail << " ("
     << static_cast<long>(r.seconds * 1000) << " ms)";
  return os.str();
}

}  // namespace qtoric::selftest
