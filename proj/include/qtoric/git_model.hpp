#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qtoric/exactmath.hpp"

namespace qtoric {

// W = C^N with G = (C*)^r acting through the charge matrix, plus a stability character.
struct GitPresentation {
  std::string name;
  int n_rays = 0;
  int rank = 0;
  IntMatrix charges;  // rank x n_rays; column rho is the character of L_rho
  std::vector<Integer> theta;
  std::vector<std::string> ray_names;

  int dim() const { return n_rays - rank; }

  QVector charge(int rho) const { return to_rational(charges.column(static_cast<std::size_t>(rho))); }
  QVector theta_q() const { return to_rational(theta); }

  std::vector<QVector> charges_of(const Subset& rays) const {
    std::vector<QVector> out;
    out.reserve(rays.size());
    for (int rho : rays) out.push_back(charge(rho));
    return out;
  }

  // a_{i,rho} as a character vector in Z^r.
  std::vector<Integer> character_of_ray(int rho) const { return charges.column(static_cast<std::size_t>(rho)); }

  Subset all_rays() const {
    Subset s(static_cast<std::size_t>(n_rays));
    for (int i = 0; i < n_rays; ++i) s[static_cast<std::size_t>(i)] = i;
    return s;
  }
};

// theta lies in the cone spanned by the charges of the given rays.
inline bool theta_in_cone(const GitPresentation& p, const Subset& rays) {
  auto gens = p.charges_of(rays);
  return in_cone(gens, p.theta_q());
}

inline GitPresentation make_presentation(std::string name, const std::vector<std::vector<Integer>>& charge_rows,
                                         std::vector<Integer> theta, std::vector<std::string> ray_names = {}) {
  GitPresentation p;
  p.name = std::move(name);
  if (charge_rows.empty()) throw InputError("charge matrix has no rows");
  p.charges = IntMatrix::from_rows(charge_rows);
  p.rank = static_cast<int>(p.charges.rows());
  p.n_rays = static_cast<int>(p.charges.cols());
  if (p.n_rays < p.rank) throw InputError("n_rays must be at least rank");
  if (theta.size() != static_cast<std::size_t>(p.rank)) throw InputError("theta must have rank entries");
  if (std::all_of(theta.begin(), theta.end(), [](const Integer& x) { return x == 0; }))
    throw InputError("theta must be nonzero");
  p.theta = std::move(theta);

  std::vector<QVector> rows;
  for (std::size_t i = 0; i < p.charges.rows(); ++i) rows.push_back(to_rational(p.charges.row(i)));
  if (auto rk = rank(rows); rk < static_cast<std::size_t>(p.rank))
    throw InputError("charge matrix has rank " + std::to_string(rk) + " < " + std::to_string(p.rank));

  if (ray_names.empty()) {
    for (int i = 1; i <= p.n_rays; ++i) ray_names.push_back("x" + std::to_string(i));
  } else if (ray_names.size() != static_cast<std::size_t>(p.n_rays)) {
    throw InputError("ray_names must have n_rays entries");
  }
  p.ray_names = std::move(ray_names);
  return p;
}

inline GitPresentation load_presentation(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw InputError("model document must be a JSON object");
    for (const char* key : {"n_rays", "rank", "charges", "theta"})
      if (!doc.contains(key)) throw InputError(std::string("model is missing '") + key + "'");
    auto read_int = [](const nlohmann::json& v) -> Integer {
      if (!v.is_number_integer()) throw InputError("expected an integer, got " + v.dump());
      return Integer(std::to_string(v.get<long long>()));
    };
    std::vector<std::vector<Integer>> rows;
    if (!doc["charges"].is_array()) throw InputError("'charges' must be an array of rows");
    for (const auto& row : doc["charges"]) {
      if (!row.is_array()) throw InputError("'charges' rows must be arrays");
      std::vector<Integer> r;
      for (const auto& x : row) r.push_back(read_int(x));
      rows.push_back(std::move(r));
    }
    std::vector<Integer> theta;
    if (!doc["theta"].is_array()) throw InputError("'theta' must be an array");
    for (const auto& x : doc["theta"]) theta.push_back(read_int(x));
    std::vector<std::string> names;
    if (doc.contains("ray_names")) {
      for (const auto& x : doc["ray_names"]) {
        if (!x.is_string()) throw InputError("'ray_names' entries must be strings");
        names.push_back(x.get<std::string>());
      }
    }
    std::string name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : "";
    auto p = make_presentation(std::move(name), rows, std::move(theta), std::move(names));
    if (to_long(read_int(doc["n_rays"])) != p.n_rays) throw InputError("'n_rays' disagrees with charge matrix columns");
    if (to_long(read_int(doc["rank"])) != p.rank) throw InputError("'rank' disagrees with charge matrix rows");
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed model: ") + e.what());
  } catch (const std::overflow_error& e) {
    throw InputError(std::string("malformed model: ") + e.what());
  }
}

inline GitPresentation load_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
  return load_presentation(doc);
}

// ---------------------------------------------------------------------------
// Stability combinatorics

// A T-fixed point of the coarse quotient: r rays whose charges form a basis
// with theta strictly inside their cone.
struct FixedPointSubset {
  Subset sigma;
  QVector coeffs;  // theta = sum_k coeffs[k] * A_{sigma[k]}
  Integer stab_order;
  Integer stab_exponent;
};

struct StabilityReport {
  bool ss_equals_s = false;
  std::vector<FixedPointSubset> fixed_subsets;
  Integer exponent_e = 0;     // 0 when ss != s
  std::optional<Subset> witness;  // independent T with theta in Cone(A_T), |T| < r
};

inline std::vector<FixedPointSubset> fixed_point_subsets(const GitPresentation& p) {
  std::vector<FixedPointSubset> out;
  for_each_combination(p.n_rays, p.rank, [&](const Subset& sigma) {
    IntMatrix block = p.charges.select_columns(sigma);
    Integer det = determinant(block);
    if (det == 0) return;
    auto cone = cone_contains(p.charges_of(sigma), p.theta_q());
    if (!cone.contains) return;
    SnfResult snf = smith_normal_form(block);
    out.push_back({sigma, cone.coefficients, abs(det), snf.diagonal.back()});
  });
  return out;
}

inline StabilityReport check_ss_equals_s(const GitPresentation& p) {
  StabilityReport rep;
  // Caratheodory: a semistable support of deficient rank contains an
  // independent subset of size < r whose cone already holds theta.
  const QVector theta = p.theta_q();
  for (int k = 1; k < p.rank && !rep.witness; ++k) {
    for_each_combination(p.n_rays, k, [&](const Subset& t) {
      if (rep.witness) return;
      auto gens = p.charges_of(t);
      if (rank(gens) != t.size()) return;
      if (in_cone(gens, theta)) rep.witness = t;
    });
  }
  rep.fixed_subsets = fixed_point_subsets(p);
  if (rep.witness) return rep;
  if (rep.fixed_subsets.empty()) return rep;  // empty semistable locus
  rep.ss_equals_s = true;
  rep.exponent_e = 1;
  for (const auto& f : rep.fixed_subsets) rep.exponent_e = lcm(rep.exponent_e, f.stab_exponent);
  return rep;
}

inline Integer exponent_lcm_e(const GitPresentation& p) {
  auto rep = check_ss_equals_s(p);
  if (!rep.ss_equals_s) throw PreconditionError("exponent e requires W^ss = W^s");
  return rep.exponent_e;
}

// The quotient of C^S is proper over a point iff C[x_S]^G has no nonconstant
// monomial, i.e. no m >= 0, m != 0 with A_S m = 0. Decided as: (0, 1) is not
// in the cone over the columns (A_rho, 1).
inline bool coarse_space_proper(const GitPresentation& p, const Subset& support) {
  std::vector<QVector> gens;
  for (int rho : support) {
    QVector g = p.charge(rho);
    g.push_back(1);
    gens.push_back(std::move(g));
  }
  QVector target(static_cast<std::size_t>(p.rank) + 1, 0);
  target.back() = 1;
  return !in_cone(gens, target);
}

// Minimal B in S with theta outside Cone(A_{S \ B}); the Stanley-Reisner
// monomials of the quotient with support S.
inline std::vector<Subset> sr_generators(const GitPresentation& p, const Subset& support) {
  if (!theta_in_cone(p, support)) throw PreconditionError("sr_generators: support is not semistable");
  std::vector<Subset> minimal;
  const int n = static_cast<int>(support.size());
  for (int k = 1; k <= n; ++k) {
    for_each_combination(n, k, [&](const Subset& idx) {
      Subset b;
      for (int i : idx) b.push_back(support[static_cast<std::size_t>(i)]);
      for (const auto& m : minimal)
        if (is_subset(m, b)) return;
      Subset rest;
      std::set_difference(support.begin(), support.end(), b.begin(), b.end(), std::back_inserter(rest));
      if (!theta_in_cone(p, rest)) minimal.push_back(std::move(b));
    });
  }
  return minimal;
}

}  // namespace qtoric
