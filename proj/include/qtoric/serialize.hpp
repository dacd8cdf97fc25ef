#pragma once

#include <sstream>
#include <string>

#include "json.hpp"
#include "qtoric/iseries.hpp"

namespace qtoric {

using ojson = nlohmann::ordered_json;

// Rationals are always strings; ray indices are 1-based in documents.

inline ojson rationals_json(std::span<const Rational> v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline ojson rays_json(const Subset& s) {
  ojson a = ojson::array();
  for (int rho : s) a.push_back(rho + 1);
  return a;
}

inline ojson integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

inline ojson sector_json(const SectorLabel& s) {
  return {{"c", rationals_json(s.action)}, {"support", rays_json(s.support)}, {"age", to_string(s.age)}, {"dim", s.dim}};
}

inline ojson fixed_subset_json(const FixedPointSubset& f) {
  return {{"sigma", rays_json(f.sigma)},
          {"coeffs", rationals_json(f.coeffs)},
          {"stab_order", integer_json(f.stab_order)},
          {"stab_exponent", integer_json(f.stab_exponent)}};
}

inline ojson dims_json(const LoopSpaceDims& d) {
  return {{"a", integer_json(d.a)},
          {"dim_W_beta", integer_json(d.dim_W_beta)},
          {"dim_stack", integer_json(d.dim_stack)},
          {"obstruction_dim", integer_json(d.obstruction_dim)},
          {"virtual_dim", integer_json(d.virtual_dim)}};
}

inline ojson class_json(const GitPresentation& p, const CurveClass& c) {
  auto dims = loop_space_dims(p, c);
  return {{"beta", rationals_json(c.beta)},
          {"b", rationals_json(c.b)},
          {"degree", to_string(c.degree)},
          {"a", integer_json(dims.a)},
          {"dims", dims_json(dims)}};
}

inline ojson classes_json(const GitPresentation& p, const std::vector<CurveClass>& classes) {
  ojson a = ojson::array();
  for (const auto& c : classes) a.push_back(class_json(p, c));
  return a;
}

inline ojson ring_element_json(const RingElement& e, std::span<const std::string> names) {
  ojson o = ojson::object();
  for (const auto& [m, c] : e.to_polynomial()) o[monomial_to_string(m, names)] = to_string(c);
  return o;
}

// z-powers descending.
inline ojson coefficients_json(const ZLaurent& z, std::span<const std::string> names) {
  ojson o = ojson::object();
  for (auto it = z.terms().rbegin(); it != z.terms().rend(); ++it)
    o["z^" + std::to_string(it->first)] = ring_element_json(it->second, names);
  return o;
}

inline ojson semipositivity_json(const SemipositivityReport& r) {
  ojson o = {{"status", r.strict ? "STRICT" : (r.pass ? "PASS" : "FAIL")},
             {"d_max", to_string(r.d_max)},
             {"classes_checked", r.classes_checked}};
  if (r.violation) o["violation"] = rationals_json(r.violation->beta);
  return o;
}

inline ojson stability_json(const StabilityReport& s) {
  ojson o = {{"ss_equals_s", s.ss_equals_s}};
  ojson fps = ojson::array();
  for (const auto& f : s.fixed_subsets) fps.push_back(fixed_subset_json(f));
  o["fixed_point_subsets"] = std::move(fps);
  o["e"] = integer_json(s.exponent_e);
  if (s.witness) o["witness"] = rays_json(*s.witness);
  return o;
}

inline ojson analysis_json(const ToricContext& ctx, const Rational& d_max) {
  const auto& p = ctx.presentation();
  ojson o = {{"model", p.name}};
  o["stability"] = stability_json(ctx.stability());
  ojson sectors = ojson::array();
  for (std::size_t i = 0; i < ctx.sectors().size(); ++i) {
    ojson s = sector_json(ctx.sectors()[i]);
    s["betti"] = ctx.ring(i)->betti_dims();
    s["proper"] = ctx.sector_proper(i);
    sectors.push_back(std::move(s));
  }
  o["sectors"] = std::move(sectors);
  o["semipositivity"] = semipositivity_json(semipositivity_report(ctx.classes(d_max), d_max));
  return o;
}

inline ojson window_json(const ZWindow& w) { return ojson::array({w.lo, w.hi}); }

inline ojson series_json(const ToricContext& ctx, const ISeries& s) {
  auto names = default_class_names(ctx.presentation().rank);
  ojson o = {{"model", ctx.presentation().name},
             {"flavor", flavor_name(s.flavor)},
             {"d_max", to_string(s.d_max)},
             {"z_window", window_json(s.window)}};
  ojson terms = ojson::array();
  for (const auto& t : s.terms)
    terms.push_back({{"beta", rationals_json(t.beta.beta)},
                     {"degree", to_string(t.beta.degree)},
                     {"sector", sector_json(t.sector)},
                     {"coefficients", coefficients_json(t.value, names)}});
  o["terms"] = std::move(terms);
  o["warnings"] = s.warnings;
  return o;
}

inline std::string t_monomial_to_string(const TMonomial& a, std::span<const std::string> vars) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (a[i] > 1) s += "^" + std::to_string(a[i]);
  }
  return s.empty() ? "1" : s;
}

inline ojson big_series_json(const ToricContext& ctx, const BigISeries& s) {
  auto names = default_class_names(ctx.presentation().rank);
  ojson o = {{"model", ctx.presentation().name},
             {"flavor", "big"},
             {"d_max", to_string(s.d_max)},
             {"t_variables", s.variables},
             {"t_order", s.t_order},
             {"z_window", window_json(s.window)}};
  ojson terms = ojson::array();
  for (const auto& t : s.terms) {
    ojson by_t = ojson::array();
    for (const auto& [alpha, v] : t.by_t)
      by_t.push_back({{"t", t_monomial_to_string(alpha, s.variables)}, {"coefficients", coefficients_json(v, names)}});
    terms.push_back({{"beta", rationals_json(t.beta.beta)},
                     {"degree", to_string(t.beta.degree)},
                     {"sector", sector_json(t.sector)},
                     {"t_terms", std::move(by_t)}});
  }
  o["terms"] = std::move(terms);
  o["warnings"] = s.warnings;
  return o;
}

inline ojson givental_json(const ToricContext& ctx, const GiventalSeries& s) {
  auto names = default_class_names(ctx.presentation().rank);
  ojson o = {{"model", ctx.presentation().name},
             {"flavor", "givental"},
             {"d_max", to_string(s.d_max)},
             {"t0", to_string(s.point.t0)},
             {"t_div", rationals_json(s.point.t_div)},
             {"z_window", window_json(s.window)}};
  ojson terms = ojson::array();
  for (const auto& t : s.terms)
    terms.push_back({{"beta", rationals_json(t.beta.beta)},
                     {"degree", to_string(t.beta.degree)},
                     {"sector", sector_json(t.sector)},
                     {"q_rescaling_exponent", to_string(t.rescaling)},
                     {"coefficients", coefficients_json(t.value, names)}});
  o["terms"] = std::move(terms);
  o["warnings"] = s.warnings;
  return o;
}

inline ojson mirror_json(const ToricContext& ctx, const MirrorData& m) {
  auto names = default_class_names(ctx.presentation().rank);
  ojson j0 = ojson::array();
  for (const auto& [c, v] : m.j0) j0.push_back({{"beta", rationals_json(c.beta)}, {"value", to_string(v)}});
  ojson i1 = ojson::array();
  for (const auto& [c, v] : m.i1) i1.push_back({{"beta", rationals_json(c.beta)}, {"value", ring_element_json(v, names)}});
  return {{"j0", std::move(j0)}, {"j0_is_one", m.j0_is_one}, {"i1", std::move(i1)}};
}

// ---------------------------------------------------------------------------
// Pretty text. One line per term:  q^{beta} [c=(...), age a]: <terms>
// with terms "<coef>[ <monomial>][ z^<k>]" joined by " + ", z-powers descending.

inline std::string q_power_string(const CurveClass& c) {
  if (c.beta.size() == 1) return "q^{" + to_string(c.beta[0]) + "}";
  std::string s = "q^{(";
  for (std::size_t i = 0; i < c.beta.size(); ++i) s += (i ? "," : "") + to_string(c.beta[i]);
  return s + ")}";
}

inline std::string sector_tag(const SectorLabel& s) {
  std::string tag = "[c=(";
  for (std::size_t i = 0; i < s.action.size(); ++i) tag += (i ? "," : "") + to_string(s.action[i]);
  return tag + "), age " + to_string(s.age) + "]";
}

inline std::string series_pretty(const ToricContext& ctx, const ISeries& s) {
  auto names = default_class_names(ctx.presentation().rank);
  std::ostringstream os;
  os << "# " << ctx.presentation().name << " " << flavor_name(s.flavor) << " I-function, degree <= "
     << to_string(s.d_max) << ", z-window [" << s.window.lo << "," << s.window.hi << "]\n";
  for (const auto& t : s.terms)
    os << q_power_string(t.beta) << " " << sector_tag(t.sector) << ": " << to_string(t.value, names) << "\n";
  for (const auto& w : s.warnings) os << "# warning: " << w << "\n";
  return os.str();
}

inline std::string big_series_pretty(const ToricContext& ctx, const BigISeries& s) {
  auto names = default_class_names(ctx.presentation().rank);
  std::ostringstream os;
  os << "# " << ctx.presentation().name << " big I-function, degree <= " << to_string(s.d_max) << ", t-order "
     << s.t_order << "\n";
  for (const auto& t : s.terms)
    for (const auto& [alpha, v] : t.by_t)
      os << q_power_string(t.beta) << " " << t_monomial_to_string(alpha, s.variables) << " " << sector_tag(t.sector)
         << ": " << to_string(v, names) << "\n";
  for (const auto& w : s.warnings) os << "# warning: " << w << "\n";
  return os.str();
}

inline std::string givental_pretty(const ToricContext& ctx, const GiventalSeries& s) {
  auto names = default_class_names(ctx.presentation().rank);
  std::ostringstream os;
  os << "# " << ctx.presentation().name << " Givental I-function at t0=" << to_string(s.point.t0) << "\n";
  for (const auto& t : s.terms)
    os << q_power_string(t.beta) << " exp(" << to_string(t.rescaling) << ") " << sector_tag(t.sector) << ": "
       << to_string(t.value, names) << "\n";
  for (const auto& w : s.warnings) os << "# warning: " << w << "\n";
  return os.str();
}

}  // namespace qtoric
