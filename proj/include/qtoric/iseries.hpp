#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qtoric/cohomology.hpp"
#include "qtoric/insertion.hpp"
#include "qtoric/parallel.hpp"

namespace qtoric {

// W^ss != W^s, or the semistable locus is empty.
class StabilityError : public std::runtime_error {
 public:
  StabilityError(const std::string& what, StabilityReport report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const StabilityReport& report() const { return report_; }

 private:
  StabilityReport report_;
};

// Everything the series engine shares read-only across curve classes.
class ToricContext {
 public:
  explicit ToricContext(GitPresentation p, std::optional<int> ring_degree = {})
      : p_(std::move(p)), stability_(check_ss_equals_s(p_)) {
    if (!stability_.ss_equals_s) {
      if (stability_.witness) throw StabilityError("W^ss != W^s for model '" + p_.name + "'", stability_);
      throw StabilityError("empty semistable locus for model '" + p_.name + "'", stability_);
    }
    sectors_ = enumerate_sectors(p_, stability_);
    for (const auto& s : sectors_) {
      int deg = ring_degree ? std::max(*ring_degree, 0) : default_max_degree(s);
      rings_.push_back(build_sector_ring(p_, s, deg));
      proper_.push_back(coarse_space_proper(p_, s.support));
    }
  }

  const GitPresentation& presentation() const { return p_; }
  const StabilityReport& stability() const { return stability_; }
  const std::vector<SectorLabel>& sectors() const { return sectors_; }
  const Integer& exponent_e() const { return stability_.exponent_e; }

  std::size_t sector_index(const QVector& action) const {
    for (std::size_t i = 0; i < sectors_.size(); ++i)
      if (sectors_[i].action == action) return i;
    throw std::logic_error("class lands in a sector missing from the sector list");
  }
  std::size_t sector_index(const CurveClass& c) const { return sector_index(class_action(c)); }
  const SectorLabel& sector_of(const CurveClass& c) const { return sectors_[sector_index(c)]; }
  const RingPtr& ring(std::size_t sector) const { return rings_.at(sector); }
  const RingPtr& ring_of(const CurveClass& c) const { return rings_[sector_index(c)]; }
  const RingPtr& untwisted_ring() const { return rings_.front(); }
  bool sector_proper(std::size_t sector) const { return proper_.at(sector); }

  std::vector<CurveClass> classes(const Rational& d_max) const { return enumerate_effective(p_, stability_, d_max); }

  // Notes about formal/truncated content that every series report should carry.
  std::vector<std::string> caveats() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < sectors_.size(); ++i) {
      if (!proper_[i]) out.push_back("sector " + std::to_string(i) + " has a non-proper coarse space; series are formal");
      if (!rings_[i]->complete())
        out.push_back("sector " + std::to_string(i) + " cohomology truncated at degree " +
                      std::to_string(rings_[i]->max_degree()));
    }
    return out;
  }

 private:
  GitPresentation p_;
  StabilityReport stability_;
  std::vector<SectorLabel> sectors_;
  std::vector<RingPtr> rings_;
  std::vector<bool> proper_;
};

// ---------------------------------------------------------------------------
// Small I-function

namespace detail {

enum class NuRange {
  exact,                  // ceil(b) <= nu <= -1, includes the bare D_rho when b is integral
  drop_integer_endpoint,  // fault injection: omits nu = b for integral b
};

inline ZLaurent small_i_term(const ToricContext& ctx, const CurveClass& c, NuRange range) {
  const RingPtr& ring = ctx.ring_of(c);
  ZLaurent out = ZLaurent::one(ring);
  for (std::size_t rho = 0; rho < c.b.size(); ++rho) {
    const Rational& b = c.b[rho];
    if (b == 0) continue;
    RingElement d = divisor_class(ring, static_cast<int>(rho));
    if (b < 0) {
      Integer lo = ceil_q(b);
      if (range == NuRange::drop_integer_endpoint && is_integer(b)) lo += 1;
      for (Integer nu = lo; nu < 0; ++nu) out = out * ZLaurent::linear(d, b - Rational(nu));
    } else {
      for (Integer nu = 0; Rational(nu) < b; ++nu) out = out * invert_linear_in_z(d, b - Rational(nu));
    }
    if (out.is_zero()) break;
  }
  return out;
}

}  // namespace detail

// Coefficient of q^beta, unclipped, in the ring of the sector of g_beta^{-1}.
inline ZLaurent small_i_term(const ToricContext& ctx, const CurveClass& c) {
  return detail::small_i_term(ctx, c, detail::NuRange::exact);
}

enum class Flavor { small, twisted };

inline const char* flavor_name(Flavor f) { return f == Flavor::small ? "small" : "twisted"; }

struct ITerm {
  CurveClass beta;
  SectorLabel sector;
  ZLaurent value;
};

struct ISeries {
  Flavor flavor = Flavor::small;
  Rational d_max;
  ZWindow window;
  std::vector<ITerm> terms;
  std::vector<std::string> warnings;
};

inline std::string class_to_string(const CurveClass& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.beta.size(); ++i) s += (i ? "," : "") + to_string(c.beta[i]);
  return s + ")";
}

// Smallest window holding every term.
inline ZWindow content_window(std::span<const ZLaurent> values) {
  std::optional<ZWindow> w;
  for (const auto& v : values) {
    if (v.is_zero()) continue;
    if (!w) w = ZWindow{*v.min_power(), *v.max_power()};
    w->lo = std::min(w->lo, *v.min_power());
    w->hi = std::max(w->hi, *v.max_power());
  }
  return w.value_or(ZWindow{0, 0});
}

namespace detail {

inline ISeries assemble(const ToricContext& ctx, Flavor flavor, const Rational& d_max,
                        const std::vector<CurveClass>& classes, std::vector<ZLaurent> values,
                        std::optional<ZWindow> window) {
  ISeries s;
  s.flavor = flavor;
  s.d_max = d_max;
  s.window = window.value_or(content_window(values));
  s.warnings = ctx.caveats();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    std::vector<int> dropped;
    ZLaurent v = values[i].clipped(s.window, &dropped);
    if (!dropped.empty()) {
      std::string msg = "z-window dropped powers";
      for (int k : dropped) msg += " " + std::to_string(k);
      s.warnings.push_back(msg + " at beta=" + class_to_string(classes[i]));
    }
    s.terms.push_back({classes[i], ctx.sector_of(classes[i]), std::move(v)});
  }
  return s;
}

}  // namespace detail

inline ISeries small_i(const ToricContext& ctx, const Rational& d_max, std::optional<ZWindow> window = {}) {
  auto classes = ctx.classes(d_max);
  std::vector<ZLaurent> values(classes.size());
  parallel_for(classes.size(), [&](std::size_t i) { values[i] = small_i_term(ctx, classes[i]); });
  return detail::assemble(ctx, Flavor::small, d_max, classes, std::move(values), window);
}

// ---------------------------------------------------------------------------
// Residue cross-check: the closed-form coefficient against
// [1 / e(N^vir)] * prod_{b_rho in Z_<0} D_rho with the virtual normal bundle
// expanded as a single product and inverted as a whole.

// Inverse of a Laurent polynomial whose top z-coefficient is a nonzero
// scalar and whose lower coefficients have positive ring degree.
inline ZLaurent invert_homogeneous_in_z(const ZLaurent& f) {
  if (f.is_zero()) throw std::domain_error("cannot invert zero");
  const int top = *f.max_power();
  const RingElement& lead = f.terms().at(top);
  if (!lead.nonzero_degrees().empty() && lead.nonzero_degrees() != std::vector<int>{0})
    throw std::domain_error("leading z-coefficient is not a scalar");
  const Rational u = lead.constant_term();
  if (u == 0) throw std::domain_error("leading z-coefficient is nilpotent");
  // f = u z^top (1 + g), g = sum_{j<top} f_j / u * z^{j-top}
  ZLaurent g(f.ring_ptr());
  for (const auto& [j, c] : f.terms())
    if (j != top) g += ZLaurent::monomial(c * (1 / u), j - top);
  ZLaurent sum = ZLaurent::one(f.ring_ptr());
  ZLaurent power = ZLaurent::one(f.ring_ptr());
  for (int n = 1; n <= f.ring_ptr()->max_degree() + 1; ++n) {
    power = power * g;
    if (power.is_zero()) break;
    sum += (n % 2 == 0) ? power : power * Rational(-1);
  }
  return sum.shifted(-top) * (1 / u);
}

struct ResidueCheck {
  ZLaurent closed_form;
  ZLaurent localization;
  bool equal = false;
};

inline ZLaurent localization_residue(const ToricContext& ctx, const CurveClass& c) {
  const RingPtr& ring = ctx.ring_of(c);
  ZLaurent moving = ZLaurent::one(ring);  // C*-weights of H^0 parts
  ZLaurent obstruction = ZLaurent::one(ring);
  RingElement normal = RingElement::one(ring);  // Euler class of Z_beta in W^{g_beta}
  for (std::size_t rho = 0; rho < c.b.size(); ++rho) {
    const Rational& b = c.b[rho];
    RingElement d = divisor_class(ring, static_cast<int>(rho));
    if (b > 0) {
      for (Integer nu = 0; Rational(nu) < b; ++nu) moving = moving * ZLaurent::linear(d, b - Rational(nu));
    } else if (b < 0) {
      for (Integer nu = floor_q(b + 1); nu < 0; ++nu) obstruction = obstruction * ZLaurent::linear(d, b - Rational(nu));
      if (is_integer(b)) normal = normal * d;
    }
  }
  return obstruction * invert_homogeneous_in_z(moving) * ZLaurent::monomial(normal, 0);
}

inline ResidueCheck residue_two_path_check(const ToricContext& ctx, const CurveClass& c,
                                           const ZLaurent* closed_form = nullptr) {
  if (!f_beta_nonempty(ctx.presentation(), c)) throw PreconditionError("residue check requires F_beta nonempty");
  ResidueCheck out;
  out.closed_form = closed_form ? *closed_form : small_i_term(ctx, c);
  out.localization = localization_residue(ctx, c);
  out.equal = out.closed_form == out.localization;
  return out;
}

// ---------------------------------------------------------------------------
// Big I-function

using TMonomial = std::vector<int>;  // exponent of each t_i

struct BigTerm {
  CurveClass beta;
  SectorLabel sector;
  std::map<TMonomial, ZLaurent> by_t;
};

struct BigISeries {
  std::vector<std::string> variables;
  int t_order = 0;
  Rational d_max;
  ZWindow window;
  std::vector<BigTerm> terms;
  std::vector<std::string> warnings;
};

// p(c_1(L_eta) + beta(L_eta) z) in the ring of beta's sector.
inline ZLaurent evaluate_insertion(const CharPoly& poly, const RingPtr& ring, const CurveClass& c) {
  std::vector<ZLaurent> vars;
  for (const auto& eta : poly.characters)
    vars.push_back(ZLaurent::linear(character_class(ring, eta), pairing(c, eta)));
  ZLaurent out(ring);
  for (const auto& [exps, coeff] : poly.terms) {
    ZLaurent t = ZLaurent::monomial(RingElement::scalar(ring, coeff), 0);
    for (std::size_t j = 0; j < exps.size(); ++j)
      for (int e = 0; e < exps[j]; ++e) t = t * vars[j];
    out += t;
  }
  return out;
}

inline std::vector<TMonomial> t_monomials(std::size_t vars, int order) {
  std::vector<TMonomial> out;
  TMonomial m(vars, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == vars) {
      out.push_back(m);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      m[i] = e;
      self(self, i + 1, left - e);
    }
    m[i] = 0;
  };
  rec(rec, 0, order);
  std::sort(out.begin(), out.end(), [](const TMonomial& a, const TMonomial& b) {
    int da = 0, db = 0;
    for (int e : a) da += e;
    for (int e : b) db += e;
    if (da != db) return da < db;
    return a > b;
  });
  return out;
}

// exp((1/z) sum_i t_i X_i) * I_beta expanded to total t-degree <= order.
inline std::map<TMonomial, ZLaurent> dress_term(const std::vector<ZLaurent>& x, const ZLaurent& base, int order) {
  const RingPtr& ring = base.ring_ptr();
  // scaled_powers[i][k] = (X_i / z)^k / k!
  std::vector<std::vector<ZLaurent>> scaled_powers(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    ZLaurent step = x[i].shifted(-1);
    scaled_powers[i].push_back(ZLaurent::one(ring));
    for (int k = 1; k <= order; ++k) scaled_powers[i].push_back(scaled_powers[i].back() * step * Rational(1, k));
  }
  std::map<TMonomial, ZLaurent> out;
  for (const auto& alpha : t_monomials(x.size(), order)) {
    ZLaurent v = base;
    for (std::size_t i = 0; i < alpha.size() && !v.is_zero(); ++i)
      if (alpha[i] > 0) v = v * scaled_powers[i][static_cast<std::size_t>(alpha[i])];
    if (!v.is_zero()) out.emplace(alpha, std::move(v));
  }
  return out;
}

inline BigISeries big_i(const ToricContext& ctx, const Rational& d_max, const TInsertion& ins,
                        std::optional<ZWindow> window = {}) {
  if (ins.t_order < 0) throw PreconditionError("t-order must be nonnegative");
  const auto& p = ctx.presentation();
  for (const auto& in : ins.insertions)
    for (const auto& eta : in.poly.characters)
      if (eta.size() != static_cast<std::size_t>(p.rank))
        throw InputError("insertion '" + in.variable + "' uses a character of the wrong rank");
  auto classes = ctx.classes(d_max);
  std::vector<std::map<TMonomial, ZLaurent>> dressed(classes.size());
  parallel_for(classes.size(), [&](std::size_t i) {
    const RingPtr& ring = ctx.ring_of(classes[i]);
    std::vector<ZLaurent> x;
    for (const auto& in : ins.insertions) x.push_back(evaluate_insertion(in.poly, ring, classes[i]));
    dressed[i] = dress_term(x, small_i_term(ctx, classes[i]), ins.t_order);
  });

  BigISeries s;
  for (const auto& in : ins.insertions) s.variables.push_back(in.variable);
  s.t_order = ins.t_order;
  s.d_max = d_max;
  std::vector<ZLaurent> all;
  for (const auto& d : dressed)
    for (const auto& [_, v] : d) all.push_back(v);
  s.window = window.value_or(content_window(all));
  s.warnings = ctx.caveats();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    BigTerm t{classes[i], ctx.sector_of(classes[i]), {}};
    for (auto& [alpha, v] : dressed[i]) {
      std::vector<int> dropped;
      ZLaurent c = v.clipped(s.window, &dropped);
      if (!dropped.empty())
        s.warnings.push_back("z-window dropped content at beta=" + class_to_string(classes[i]));
      if (!c.is_zero()) t.by_t.emplace(alpha, std::move(c));
    }
    s.terms.push_back(std::move(t));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Givental's small I-function: t = t_0 1 + sum_i t_i xi_i.

// Formal version: t_0, t_1..t_r stay symbolic.
inline TInsertion givental_insertion(const GitPresentation& p, int t_order) {
  TInsertion ins;
  ins.t_order = t_order;
  ins.insertions.push_back({"t0", CharPoly::constant(1)});
  auto names = default_class_names(p.rank);
  for (int i = 0; i < p.rank; ++i) {
    std::vector<Integer> e(static_cast<std::size_t>(p.rank), 0);
    e[static_cast<std::size_t>(i)] = 1;
    ins.insertions.push_back({"t" + std::to_string(i + 1), CharPoly::variable(names[static_cast<std::size_t>(i)], e)});
  }
  return ins;
}

struct GiventalPoint {
  Rational t0;
  QVector t_div;  // one per xi_i
};

struct GiventalTerm {
  CurveClass beta;
  SectorLabel sector;
  Rational rescaling;  // the term carries exp(rescaling) = exp(sum_i t_i beta_i)
  ZLaurent value;
};

struct GiventalSeries {
  GiventalPoint point;
  Rational d_max;
  ZWindow window;
  std::vector<GiventalTerm> terms;
  std::vector<std::string> warnings;
};

// Numeric version at rational t: exp((t_0 + sum t_i xi_i)/z) I_beta clipped to
// the window, with exp(sum_i t_i beta_i) reported as a q-rescaling.
inline GiventalSeries givental_small_i(const ToricContext& ctx, const Rational& d_max, const GiventalPoint& pt,
                                       std::optional<ZWindow> window = {}) {
  const auto& p = ctx.presentation();
  if (pt.t_div.size() != static_cast<std::size_t>(p.rank))
    throw InputError("Givental point needs one divisor parameter per xi_i");
  auto classes = ctx.classes(d_max);
  std::vector<ZLaurent> base(classes.size());
  parallel_for(classes.size(), [&](std::size_t i) { base[i] = small_i_term(ctx, classes[i]); });

  GiventalSeries s;
  s.point = pt;
  s.d_max = d_max;
  s.window = window.value_or(content_window(base));
  s.warnings = ctx.caveats();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const RingPtr& ring = ctx.ring_of(classes[i]);
    RingElement y = RingElement::scalar(ring, pt.t0);
    for (int k = 0; k < p.rank; ++k) {
      std::vector<Integer> e(static_cast<std::size_t>(p.rank), 0);
      e[static_cast<std::size_t>(k)] = 1;
      y += character_class(ring, e) * pt.t_div[static_cast<std::size_t>(k)];
    }
    ZLaurent value(ring);
    if (!base[i].is_zero()) {
      // exp(y/z) = sum_k y^k z^{-k} / k!; powers below the window cannot return.
      const int terms = std::max(0, *base[i].max_power() - s.window.lo);
      RingElement yk = RingElement::one(ring);
      Rational fact = 1;
      for (int k = 0; k <= terms; ++k) {
        if (k > 0) {
          yk = yk * y;
          fact *= k;
        }
        if (yk.is_zero()) break;
        value += base[i] * ZLaurent::monomial(yk * (1 / fact), -k);
      }
    }
    Rational rescale = 0;
    for (int k = 0; k < p.rank; ++k) rescale += pt.t_div[static_cast<std::size_t>(k)] * classes[i].beta[static_cast<std::size_t>(k)];
    std::vector<int> dropped;
    ZLaurent clipped = value.clipped(s.window, &dropped);
    if (!dropped.empty())
      s.warnings.push_back("z-window truncates exp(t0/z) expansion at beta=" + class_to_string(classes[i]));
    s.terms.push_back({classes[i], ctx.sector_of(classes[i]), rescale, std::move(clipped)});
  }
  return s;
}

// ---------------------------------------------------------------------------
// Euler-twisted small I-function for E = sum_k L_{eta_k}.

struct TwistData {
  std::vector<std::vector<Integer>> characters;
};

class TwistError : public PreconditionError {
 public:
  TwistError(const std::string& what, CurveClass beta, std::vector<Integer> eta)
      : PreconditionError(what), beta_(std::move(beta)), eta_(std::move(eta)) {}
  const CurveClass& beta() const { return beta_; }
  const std::vector<Integer>& character() const { return eta_; }

 private:
  CurveClass beta_;
  std::vector<Integer> eta_;
};

// prod_k prod_{nu=0}^{b_k} (D_{eta_k} + (b_k - nu) z), the weights of H^0 of
// O(a b_k) on the football with the twisting parameter at 0.
inline ZLaurent twist_factor(const ToricContext& ctx, const TwistData& twist, const CurveClass& c) {
  const RingPtr& ring = ctx.ring_of(c);
  ZLaurent out = ZLaurent::one(ring);
  for (const auto& eta : twist.characters) {
    Rational b = pairing(c, eta);
    RingElement d = character_class(ring, eta);
    for (Integer nu = 0; Rational(nu) <= b; ++nu) out = out * ZLaurent::linear(d, b - Rational(nu));
  }
  return out;
}

inline ISeries twisted_small_i(const ToricContext& ctx, const TwistData& twist, const Rational& d_max,
                               std::optional<ZWindow> window = {}) {
  const auto& p = ctx.presentation();
  auto classes = ctx.classes(d_max);
  for (const auto& eta : twist.characters) {
    if (eta.size() != static_cast<std::size_t>(p.rank)) throw InputError("twist character has wrong rank");
    for (const auto& c : classes) {
      if (c.is_zero()) continue;
      Rational b = pairing(c, eta);
      if (!is_integer(b) || b < 0) {
        std::string e;
        for (std::size_t i = 0; i < eta.size(); ++i) e += (i ? "," : "") + eta[i].get_str();
        throw TwistError("twist precondition fails: beta=" + class_to_string(c) + " pairs with (" + e + ") to " +
                             to_string(b) + ", not a nonnegative integer",
                         c, eta);
      }
    }
  }
  std::vector<ZLaurent> values(classes.size());
  parallel_for(classes.size(), [&](std::size_t i) {
    ZLaurent v = small_i_term(ctx, classes[i]);
    // beta = 0 stays the unit.
    if (!classes[i].is_zero()) v = v * twist_factor(ctx, twist, classes[i]);
    values[i] = std::move(v);
  });
  return detail::assemble(ctx, Flavor::twisted, d_max, classes, std::move(values), window);
}

// ---------------------------------------------------------------------------
// Structural checks

struct GradingViolation {
  CurveClass beta;
  int z_power;
  int degree;
  Rational total;
};

struct GradingReport {
  std::size_t components_checked = 0;
  std::vector<GradingViolation> violations;
  bool ok() const { return violations.empty(); }
};

// deg z = 1, deg q^beta = beta(det T), classes at age-shifted complex degree:
// sum_rho b_rho + z-power + (degree + age) must vanish on every component.
inline GradingReport grading_check(const ISeries& s) {
  if (s.flavor != Flavor::small) throw PreconditionError("grading check applies to the small I-function only");
  GradingReport rep;
  for (const auto& t : s.terms) {
    Rational base = t.beta.anticanonical_degree() + t.sector.age;
    for (const auto& [k, coeff] : t.value.terms()) {
      for (int d : coeff.nonzero_degrees()) {
        ++rep.components_checked;
        Rational total = base + k + d;
        if (total != 0) rep.violations.push_back({t.beta, k, d, total});
      }
    }
  }
  return rep;
}

struct SemipositiveShape {
  bool positive_powers_absent = true;
  bool z0_is_unit = true;              // z^0 part is exactly 1 (from beta = 0)
  bool z1_untwisted_low_degree = true; // z^{-1} part untwisted and of degree <= 1
  bool strict_form = true;             // I = 1 + O(z^{-2}) beyond beta = 0
  std::vector<std::string> notes;
};

inline SemipositiveShape semipositive_shape(const ISeries& s) {
  SemipositiveShape out;
  for (const auto& t : s.terms) {
    const std::string at = " at beta=" + class_to_string(t.beta);
    if (auto m = t.value.max_power(); m && *m > 0) {
      out.positive_powers_absent = false;
      out.notes.push_back("positive z-power" + at);
    }
    RingElement z0 = t.value.coefficient(0);
    if (t.beta.is_zero()) {
      if (!t.sector.untwisted() || !(z0 == RingElement::one(z0.ring_ptr())) || t.value.terms().size() != 1) {
        out.z0_is_unit = false;
        out.notes.push_back("beta = 0 term is not the unit");
      }
      continue;
    }
    if (!z0.is_zero()) {
      out.z0_is_unit = false;
      out.strict_form = false;
      out.notes.push_back("nonzero z^0 part" + at);
    }
    RingElement z1 = t.value.coefficient(-1);
    if (!z1.is_zero()) {
      out.strict_form = false;
      auto degs = z1.nonzero_degrees();
      if (!t.sector.untwisted() || degs.back() > 1) {
        out.z1_untwisted_low_degree = false;
        out.notes.push_back("z^-1 part outside untwisted H^{<=2}" + at);
      }
    }
  }
  return out;
}

struct MirrorData {
  std::vector<std::pair<CurveClass, Rational>> j0;      // includes beta = 0
  std::vector<std::pair<CurveClass, RingElement>> i1;   // beta != 0, nonzero entries only
  bool j0_is_one = true;
  bool positive_powers_absent = true;
};

inline MirrorData mirror_map(const ToricContext& ctx, const Rational& d_max) {
  auto classes = ctx.classes(d_max);
  auto sp = semipositivity_report(classes, d_max);
  if (!sp.pass)
    throw PreconditionError("mirror map requires a semi-positive target; violated at beta=" +
                            class_to_string(*sp.violation));
  ISeries s = small_i(ctx, d_max);
  MirrorData m;
  for (const auto& t : s.terms) {
    if (auto mp = t.value.max_power(); mp && *mp > 0) m.positive_powers_absent = false;
    RingElement z0 = t.value.coefficient(0);
    if (!z0.is_zero() && (!t.sector.untwisted() || z0.nonzero_degrees() != std::vector<int>{0}))
      throw std::logic_error("z^0 part is not proportional to the unit at beta=" + class_to_string(t.beta));
    Rational j = z0.is_zero() ? Rational(0) : z0.constant_term();
    if (t.beta.is_zero() ? j != 1 : j != 0) m.j0_is_one = false;
    m.j0.emplace_back(t.beta, j);
    if (t.beta.is_zero()) continue;
    RingElement z1 = t.value.coefficient(-1);
    if (z1.is_zero()) continue;
    if (!t.sector.untwisted() || z1.nonzero_degrees().back() > 1)
      throw std::logic_error("z^-1 part escapes untwisted H^{<=2} at beta=" + class_to_string(t.beta));
    m.i1.emplace_back(t.beta, z1);
  }
  return m;
}

}  // namespace qtoric
