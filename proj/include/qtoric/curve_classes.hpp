#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qtoric/git_model.hpp"

namespace qtoric {

// beta in Hom(Pic, Q) = Q^r, with b_rho = beta(L_rho) and degree beta(L_theta).
struct CurveClass {
  QVector beta;
  QVector b;
  Rational degree;

  bool is_zero() const {
    return std::all_of(beta.begin(), beta.end(), [](const Rational& x) { return x == 0; });
  }
  // beta(det T) = sum_rho b_rho
  Rational anticanonical_degree() const {
    Rational s = 0;
    for (const auto& x : b) s += x;
    return s;
  }

  friend bool operator==(const CurveClass& x, const CurveClass& y) { return x.beta == y.beta; }
};

// Degree ascending, ties broken lexicographically on beta.
inline bool class_order(const CurveClass& x, const CurveClass& y) {
  if (x.degree != y.degree) return x.degree < y.degree;
  return x.beta < y.beta;
}

inline Rational pairing(const QVector& beta, std::span<const Integer> eta) {
  if (beta.size() != eta.size()) throw std::invalid_argument("pairing: rank mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < beta.size(); ++i) s += beta[i] * Rational(eta[i]);
  return s;
}

inline Rational pairing(const CurveClass& c, std::span<const Integer> eta) { return pairing(c.beta, eta); }

inline CurveClass make_class(const GitPresentation& p, QVector beta) {
  if (beta.size() != static_cast<std::size_t>(p.rank)) throw std::invalid_argument("curve class has wrong rank");
  CurveClass c;
  c.b.resize(static_cast<std::size_t>(p.n_rays));
  for (int rho = 0; rho < p.n_rays; ++rho) c.b[static_cast<std::size_t>(rho)] = pairing(beta, p.character_of_ray(rho));
  c.degree = pairing(beta, p.theta);
  c.beta = std::move(beta);
  return c;
}

// Least a > 0 with a * beta integral.
inline Integer minimal_a(const CurveClass& c) {
  Integer a = 1;
  for (const auto& x : c.beta) a = lcm(a, x.get_den());
  return a;
}

// S_beta = { rho : b_rho in Z_{>=0} }.
inline Subset nonnegative_integral_rays(const CurveClass& c) {
  Subset s;
  for (std::size_t rho = 0; rho < c.b.size(); ++rho)
    if (is_integer(c.b[rho]) && c.b[rho] >= 0) s.push_back(static_cast<int>(rho));
  return s;
}

// F_beta nonempty iff theta in Cone(A_{S_beta}).
inline bool f_beta_nonempty(const GitPresentation& p, const CurveClass& c) {
  return theta_in_cone(p, nonnegative_integral_rays(c));
}

// Classes with F_beta nonempty and 0 <= degree <= d_max, built from the
// fixed-point subsets: on sigma, b_sigma ranges over Z_{>=0}^sigma and
// degree = sum c_rho b_rho.
inline std::vector<CurveClass> enumerate_effective(const GitPresentation& p, const StabilityReport& stab,
                                                   const Rational& d_max) {
  if (!stab.ss_equals_s) throw PreconditionError("enumerate_effective requires W^ss = W^s");
  if (d_max < 0) throw PreconditionError("d_max must be nonnegative");
  const auto r = static_cast<std::size_t>(p.rank);
  std::map<QVector, CurveClass> found;

  for (const auto& fp : stab.fixed_subsets) {
    // rows: characters of the rays in sigma, so rows * beta = b_sigma
    std::vector<QVector> rows = p.charges_of(fp.sigma);
    std::vector<QVector> inverse_cols;
    for (std::size_t k = 0; k < r; ++k) {
      QVector e(r, 0);
      e[k] = 1;
      inverse_cols.push_back(*solve_square(rows, e));
    }
    QVector b_sigma(r, 0);
    auto emit = [&] {
      QVector beta(r, 0);
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t i = 0; i < r; ++i) beta[i] += inverse_cols[k][i] * b_sigma[k];
      if (!found.contains(beta)) found.emplace(beta, make_class(p, beta));
    };
    auto recurse = [&](auto&& self, std::size_t k, const Rational& budget) -> void {
      if (k == r) {
        emit();
        return;
      }
      Integer top = floor_q(budget / fp.coeffs[k]);
      for (Integer v = 0; v <= top; ++v) {
        b_sigma[k] = Rational(v);
        self(self, k + 1, budget - fp.coeffs[k] * Rational(v));
      }
      b_sigma[k] = 0;
    };
    recurse(recurse, 0, d_max);
  }

  std::vector<CurveClass> out;
  out.reserve(found.size());
  for (auto& [_, c] : found) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(), class_order);
  return out;
}

inline std::vector<CurveClass> enumerate_effective(const GitPresentation& p, const Rational& d_max) {
  return enumerate_effective(p, check_ss_equals_s(p), d_max);
}

// ---------------------------------------------------------------------------
// Dimension counts for the stacky loop space [W_beta^ss / G].

struct LoopSpaceDims {
  Integer a;
  Integer dim_W_beta;
  Integer dim_stack;
  Integer obstruction_dim;
  Integer virtual_dim;
};

inline LoopSpaceDims loop_space_dims(const GitPresentation& p, const CurveClass& c) {
  if (!f_beta_nonempty(p, c)) throw PreconditionError("loop_space_dims requires F_beta nonempty");
  LoopSpaceDims d;
  d.a = minimal_a(c);
  d.dim_W_beta = 0;
  d.obstruction_dim = 0;
  for (const auto& b : c.b) {
    if (b >= 0) {
      // monomials x^i y^j with a*i + j = a*b, deg x = a, deg y = 1
      d.dim_W_beta += floor_q(b) + 1;
    } else {
      // weights of H^1: integers nu with floor(b + 1) <= nu < 0
      d.obstruction_dim += ceil_q(-b) - 1;
    }
  }
  d.dim_stack = d.dim_W_beta - p.rank;
  d.virtual_dim = d.dim_stack - d.obstruction_dim;
  return d;
}

// k + (1 - g)(dim X - 3) + beta(det T) - sum of ages.
inline Rational virtual_dim_moduli(const GitPresentation& p, int genus, int markings, const CurveClass& c,
                                   std::span<const Rational> sector_ages) {
  if (sector_ages.size() != static_cast<std::size_t>(markings))
    throw std::invalid_argument("virtual_dim_moduli: need one age per marking");
  Rational v = markings + (1 - genus) * (p.dim() - 3);
  v += c.anticanonical_degree();
  for (const auto& a : sector_ages) v -= a;
  return v;
}

// ---------------------------------------------------------------------------

struct SemipositivityReport {
  Rational d_max;
  bool pass = true;     // sum b_rho >= 0 on every enumerated class
  bool strict = false;  // sum b_rho > 0 on every nonzero enumerated class
  std::optional<CurveClass> violation;
  std::size_t classes_checked = 0;
};

inline SemipositivityReport semipositivity_report(const std::vector<CurveClass>& classes, const Rational& d_max) {
  SemipositivityReport rep;
  rep.d_max = d_max;
  rep.strict = true;
  for (const auto& c : classes) {
    ++rep.classes_checked;
    Rational s = c.anticanonical_degree();
    if (s < 0 && !rep.violation) {
      rep.pass = false;
      rep.violation = c;
    }
    if (!c.is_zero() && s <= 0) rep.strict = false;
  }
  if (!rep.pass) rep.strict = false;
  return rep;
}

inline SemipositivityReport semipositivity_report(const GitPresentation& p, const Rational& d_max) {
  return semipositivity_report(enumerate_effective(p, d_max), d_max);
}

}  // namespace qtoric
