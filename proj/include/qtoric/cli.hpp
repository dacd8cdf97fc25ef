#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qtoric/selftest/battery.hpp"
#include "qtoric/serialize.hpp"

namespace qtoric::cli {

enum ExitCode : int { ok = 0, stability_failure = 2, input_error = 3, check_failure = 4 };

enum class Format { json, pretty };

struct RunConfig {
  std::string model_path;
  std::string command;
  Rational d_max = 3;
  int t_order = 1;
  std::optional<ZWindow> z_window;  // nullopt = auto
  std::string twist;                // comma-separated integers, grouped into r-vectors
  bool big = false;
  std::vector<std::string> insertions;  // NAME:POLY
  std::string givental;                 // t0,t1,...,tr
  bool check = false;
  Format format = Format::json;
  std::string out_path;
  std::string models_dir;
};

struct CommandResult {
  int exit_code = ok;
  std::string output;
};

// "3" -> {(3)}, "1,0,0,1" with r = 2 -> {(1,0),(0,1)}; ';' also separates characters.
inline TwistData parse_twist(const std::string& text, int rank) {
  std::vector<Integer> flat;
  std::string token;
  std::istringstream in(text);
  auto flush = [&] {
    std::string t;
    for (char c : token)
      if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    token.clear();
    if (t.empty()) return;
    Rational v = parse_rational(t);
    if (!is_integer(v)) throw InputError("twist characters must be integral: '" + t + "'");
    flat.push_back(v.get_num());
  };
  for (char c : text) {
    if (c == ',' || c == ';')
      flush();
    else
      token += c;
  }
  flush();
  if (flat.empty() || flat.size() % static_cast<std::size_t>(rank) != 0)
    throw InputError("--twist needs a multiple of rank = " + std::to_string(rank) + " integers");
  TwistData t;
  for (std::size_t i = 0; i < flat.size(); i += static_cast<std::size_t>(rank))
    t.characters.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(i),
                              flat.begin() + static_cast<std::ptrdiff_t>(i) + rank);
  return t;
}

inline GiventalPoint parse_givental(const std::string& text, int rank) {
  QVector values;
  std::string token;
  for (char c : text + ",") {
    if (c == ',') {
      values.push_back(parse_rational(token));
      token.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      token += c;
    }
  }
  if (values.size() != static_cast<std::size_t>(rank) + 1)
    throw InputError("--givental needs t0 followed by " + std::to_string(rank) + " divisor parameters");
  return {values[0], QVector(values.begin() + 1, values.end())};
}

namespace detail {

inline std::string render(const ojson& doc) { return doc.dump(2) + "\n"; }

inline std::string analysis_pretty(const ToricContext& ctx, const ojson& doc) {
  const auto& p = ctx.presentation();
  std::ostringstream os;
  os << "model " << p.name << ": N=" << p.n_rays << ", r=" << p.rank << ", dim " << p.dim() << "\n";
  os << "W^ss = W^s: yes\n";
  os << "exponent e = " << ctx.exponent_e().get_str() << "\n";
  os << "fixed points:\n";
  for (const auto& f : ctx.stability().fixed_subsets) {
    os << "  sigma={";
    for (std::size_t i = 0; i < f.sigma.size(); ++i) os << (i ? "," : "") << f.sigma[i] + 1;
    os << "} theta-coefficients (";
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) os << (i ? "," : "") << to_string(f.coeffs[i]);
    os << ") |stab|=" << f.stab_order.get_str() << " exponent " << f.stab_exponent.get_str() << "\n";
  }
  os << "sectors:\n";
  for (std::size_t i = 0; i < ctx.sectors().size(); ++i) {
    const auto& s = ctx.sectors()[i];
    os << "  " << sector_tag(s) << " dim " << s.dim << " betti";
    for (int b : ctx.ring(i)->betti_dims()) os << " " << b;
    if (!ctx.sector_proper(i)) os << " (non-proper)";
    os << "\n";
  }
  const auto& sp = doc["semipositivity"];
  os << "semi-positivity up to degree " << sp["d_max"].get<std::string>() << ": " << sp["status"].get<std::string>();
  if (sp.contains("violation")) os << " at beta=" << sp["violation"].dump();
  os << "\n";
  return os.str();
}

inline ojson stability_failure_json(const GitPresentation& p, const StabilityReport& rep) {
  ojson o = {{"model", p.name}};
  o["stability"] = stability_json(rep);
  return o;
}

inline std::string stability_failure_pretty(const GitPresentation& p, const StabilityReport& rep) {
  std::ostringstream os;
  os << "model " << p.name << ": W^ss = W^s fails";
  if (rep.witness) {
    os << "; witness T={";
    for (std::size_t i = 0; i < rep.witness->size(); ++i) os << (i ? "," : "") << (*rep.witness)[i] + 1;
    os << "} has theta in Cone(A_T) with rank " << rep.witness->size() << " < " << p.rank;
  } else {
    os << "; semistable locus is empty";
  }
  return os.str() + "\n";
}

struct Verification {
  bool ok = true;
  ojson doc = ojson::object();
  std::string text;
};

inline Verification verify(const ToricContext& ctx, const ISeries& small) {
  Verification v;
  auto grading = grading_check(small);
  v.doc["grading"] = {{"ok", grading.ok()}, {"components_checked", grading.components_checked}};
  v.text += std::string("grading: ") + (grading.ok() ? "ok" : "FAILED") + " (" +
            std::to_string(grading.components_checked) + " components)\n";
  v.ok = v.ok && grading.ok();

  std::size_t mismatches = 0;
  ojson bad = ojson::array();
  for (const auto& t : small.terms) {
    if (!residue_two_path_check(ctx, t.beta).equal) {
      ++mismatches;
      bad.push_back(rationals_json(t.beta.beta));
    }
  }
  v.doc["two_path"] = {{"ok", mismatches == 0}, {"classes_checked", small.terms.size()}, {"mismatches", bad}};
  v.text += std::string("two-path residue: ") + (mismatches == 0 ? "ok" : "FAILED") + " (" +
            std::to_string(small.terms.size()) + " classes)\n";
  v.ok = v.ok && mismatches == 0;
  return v;
}

inline void emit(const RunConfig& cfg, CommandResult& r) {
  if (cfg.out_path.empty()) return;
  std::ofstream out(cfg.out_path);
  if (!out) throw InputError("cannot write '" + cfg.out_path + "'");
  out << r.output;
  r.output.clear();
}

}  // namespace detail

inline CommandResult cmd_analyze(const RunConfig& cfg) {
  CommandResult r;
  GitPresentation p = load_presentation_file(cfg.model_path);
  auto rep = check_ss_equals_s(p);
  if (!rep.ss_equals_s) {
    r.exit_code = stability_failure;
    r.output = cfg.format == Format::json ? detail::render(detail::stability_failure_json(p, rep))
                                          : detail::stability_failure_pretty(p, rep);
  } else {
    ToricContext ctx(std::move(p));
    ojson doc = analysis_json(ctx, cfg.d_max);
    r.output = cfg.format == Format::json ? detail::render(doc) : detail::analysis_pretty(ctx, doc);
  }
  detail::emit(cfg, r);
  return r;
}

inline CommandResult cmd_classes(const RunConfig& cfg) {
  CommandResult r;
  ToricContext ctx(load_presentation_file(cfg.model_path));
  auto classes = ctx.classes(cfg.d_max);
  if (cfg.format == Format::json) {
    r.output = detail::render(classes_json(ctx.presentation(), classes));
  } else {
    std::ostringstream os;
    os << "# I-contributing classes of " << ctx.presentation().name << " up to degree " << to_string(cfg.d_max) << "\n";
    for (const auto& c : classes) {
      auto d = loop_space_dims(ctx.presentation(), c);
      os << q_power_string(c) << " degree " << to_string(c.degree) << " a=" << d.a.get_str()
         << " dim W_beta=" << d.dim_W_beta.get_str() << " dim=" << d.dim_stack.get_str()
         << " obstruction=" << d.obstruction_dim.get_str() << " vdim=" << d.virtual_dim.get_str() << "\n";
    }
    r.output = os.str();
  }
  detail::emit(cfg, r);
  return r;
}

inline CommandResult cmd_iseries(const RunConfig& cfg) {
  CommandResult r;
  ToricContext ctx(load_presentation_file(cfg.model_path));
  const auto& p = ctx.presentation();
  const int modes = (cfg.big ? 1 : 0) + (cfg.twist.empty() ? 0 : 1) + (cfg.givental.empty() ? 0 : 1);
  if (modes > 1) throw InputError("choose at most one of --big, --twist, --givental");

  ojson doc;
  std::string text;
  if (cfg.big) {
    TInsertion ins;
    ins.t_order = cfg.t_order;
    for (const auto& s : cfg.insertions) ins.insertions.push_back(parse_insertion(s, p));
    auto s = big_i(ctx, cfg.d_max, ins, cfg.z_window);
    doc = big_series_json(ctx, s);
    text = big_series_pretty(ctx, s);
  } else if (!cfg.givental.empty()) {
    auto s = givental_small_i(ctx, cfg.d_max, parse_givental(cfg.givental, p.rank), cfg.z_window);
    doc = givental_json(ctx, s);
    text = givental_pretty(ctx, s);
  } else if (!cfg.twist.empty()) {
    auto s = twisted_small_i(ctx, parse_twist(cfg.twist, p.rank), cfg.d_max, cfg.z_window);
    doc = series_json(ctx, s);
    text = series_pretty(ctx, s);
  } else {
    auto s = small_i(ctx, cfg.d_max, cfg.z_window);
    doc = series_json(ctx, s);
    text = series_pretty(ctx, s);
  }

  if (cfg.check) {
    auto v = detail::verify(ctx, small_i(ctx, cfg.d_max));
    doc["verification"] = v.doc;
    text += "# verification\n" + v.text;
    if (!v.ok) r.exit_code = check_failure;
  }
  r.output = cfg.format == Format::json ? detail::render(doc) : text;
  detail::emit(cfg, r);
  return r;
}

// Grading, two-path residues and, for semi-positive targets, the shape of I and the mirror map.
inline CommandResult cmd_check(const RunConfig& cfg) {
  CommandResult r;
  ToricContext ctx(load_presentation_file(cfg.model_path));
  ISeries s = small_i(ctx, cfg.d_max);
  auto v = detail::verify(ctx, s);
  auto sp = semipositivity_report(ctx.classes(cfg.d_max), cfg.d_max);
  v.doc["semipositivity"] = semipositivity_json(sp);
  if (sp.pass) {
    auto shape = semipositive_shape(s);
    bool shape_ok = shape.positive_powers_absent && shape.z0_is_unit && shape.z1_untwisted_low_degree;
    if (sp.strict) shape_ok = shape_ok && shape.strict_form;
    v.doc["semipositive_shape"] = {{"ok", shape_ok}, {"notes", shape.notes}};
    v.text += std::string("semi-positive shape: ") + (shape_ok ? "ok" : "FAILED") + "\n";
    v.ok = v.ok && shape_ok;
    try {
      auto m = mirror_map(ctx, cfg.d_max);
      v.doc["mirror_map"] = mirror_json(ctx, m);
      v.text += std::string("J0 = 1: ") + (m.j0_is_one ? "yes" : "NO") + "\n";
      auto names = default_class_names(ctx.presentation().rank);
      for (const auto& [c, val] : m.i1) v.text += "I1 " + q_power_string(c) + ": " + to_string(val, names) + "\n";
      v.ok = v.ok && m.j0_is_one;
    } catch (const std::logic_error& e) {
      v.doc["mirror_map"] = {{"error", e.what()}};
      v.text += std::string("mirror map: FAILED (") + e.what() + ")\n";
      v.ok = false;
    }
  } else {
    v.text += "semi-positivity fails; mirror map skipped\n";
  }
  ojson doc = {{"model", ctx.presentation().name}, {"d_max", to_string(cfg.d_max)}, {"ok", v.ok}};
  doc["verification"] = v.doc;
  r.output = cfg.format == Format::json ? detail::render(doc) : v.text;
  if (!v.ok) r.exit_code = check_failure;
  detail::emit(cfg, r);
  return r;
}

inline CommandResult cmd_selftest(const RunConfig& cfg) {
  CommandResult r;
  auto corpus = selftest::load_corpus(cfg.models_dir);
  if (corpus.empty()) {
    r.output = "no models found in '" + cfg.models_dir + "'; nothing to check\n";
    return r;
  }
  std::ostringstream os;
  bool all = true;
  for (const auto& res : selftest::run_acceptance(corpus)) {
    os << selftest::format_result(res) << "\n";
    all = all && res.passed;
  }
  os << (all ? "all criteria passed" : "some criteria FAILED") << "\n";
  r.output = os.str();
  r.exit_code = all ? ok : check_failure;
  return r;
}

// Runs a command, mapping exceptions onto exit codes.
inline CommandResult dispatch(const RunConfig& cfg) {
  try {
    if (cfg.command == "analyze") return cmd_analyze(cfg);
    if (cfg.command == "classes") return cmd_classes(cfg);
    if (cfg.command == "iseries") return cmd_iseries(cfg);
    if (cfg.command == "check") return cmd_check(cfg);
    if (cfg.command == "selftest") return cmd_selftest(cfg);
    return {input_error, "unknown command '" + cfg.command + "'\n"};
  } catch (const StabilityError& e) {
    return {stability_failure, std::string("error: ") + e.what() + "\n"};
  } catch (const InputError& e) {
    return {input_error, std::string("error: ") + e.what() + "\n"};
  } catch (const PreconditionError& e) {
    return {input_error, std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace qtoric::cli
