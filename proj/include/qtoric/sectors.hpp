#pragma once

#include <set>
#include <stdexcept>
#include <vector>

#include "qtoric/curve_classes.hpp"

namespace qtoric {

// A component of the inertia stack, keyed by how its group element acts on
// the coordinates: g acts on x_rho by exp(2 pi i c_rho), c_rho in [0, 1).
struct SectorLabel {
  QVector action;
  Subset support;  // rays with c_rho = 0
  Rational age;
  int dim = 0;  // |support| - r

  bool untwisted() const { return support.size() == action.size(); }

  friend bool operator==(const SectorLabel& x, const SectorLabel& y) { return x.action == y.action; }
};

inline bool sector_order(const SectorLabel& x, const SectorLabel& y) {
  if (x.age != y.age) return x.age < y.age;
  return x.action < y.action;
}

inline Rational age(const QVector& action) {
  Rational s = 0;
  for (const auto& c : action) s += c;
  return s;
}

inline Rational age(const SectorLabel& s) { return age(s.action); }

inline SectorLabel make_sector(const GitPresentation& p, QVector action) {
  SectorLabel s;
  for (std::size_t rho = 0; rho < action.size(); ++rho)
    if (action[rho] == 0) s.support.push_back(static_cast<int>(rho));
  s.age = age(action);
  s.dim = static_cast<int>(s.support.size()) - p.rank;
  s.action = std::move(action);
  return s;
}

// Action vector of gamma in (Q/Z)^r: c_rho = frac(sum_i a_{i,rho} gamma_i).
inline QVector action_vector(const GitPresentation& p, const QVector& gamma) {
  QVector c(static_cast<std::size_t>(p.n_rays));
  for (int rho = 0; rho < p.n_rays; ++rho) c[static_cast<std::size_t>(rho)] = frac_q(pairing(gamma, p.character_of_ray(rho)));
  return c;
}

// Union over fixed points of their stabilizers {gamma : A_sigma^T gamma in Z^r} / Z^r.
// With U A V = D, the stabilizer is { V D^{-1} k : 0 <= k_j < d_j }.
inline std::vector<SectorLabel> enumerate_sectors(const GitPresentation& p, const StabilityReport& stab) {
  if (!stab.ss_equals_s) throw PreconditionError("enumerate_sectors requires W^ss = W^s");
  const auto r = static_cast<std::size_t>(p.rank);
  std::set<QVector> seen;
  std::vector<SectorLabel> out;
  for (const auto& fp : stab.fixed_subsets) {
    IntMatrix a = p.charges.select_columns(fp.sigma).transpose();
    SnfResult snf = smith_normal_form(a);
    std::vector<Integer> k(r, 0);
    for (;;) {
      QVector gamma(r, 0);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
          gamma[i] += Rational(snf.right(i, j)) * make_rational(k[j], snf.diagonal[j]);
      QVector c = action_vector(p, gamma);
      if (seen.insert(c).second) out.push_back(make_sector(p, std::move(c)));
      std::size_t j = 0;
      while (j < r && ++k[j] == snf.diagonal[j]) k[j++] = 0;
      if (j == r) break;
    }
  }
  std::sort(out.begin(), out.end(), sector_order);
  return out;
}

inline std::vector<SectorLabel> enumerate_sectors(const GitPresentation& p) {
  return enumerate_sectors(p, check_ss_equals_s(p));
}

// Label of g_beta^{-1}: c_rho = frac(-b_rho).
inline QVector class_action(const CurveClass& c) {
  QVector a(c.b.size());
  for (std::size_t rho = 0; rho < c.b.size(); ++rho) a[rho] = frac_q(-c.b[rho]);
  return a;
}

inline const SectorLabel& sector_of_class(std::span<const SectorLabel> sectors, const CurveClass& c) {
  QVector a = class_action(c);
  for (const auto& s : sectors)
    if (s.action == a) return s;
  throw std::logic_error("class lands in a sector missing from the sector list");
}

inline SectorLabel involution(const SectorLabel& s) {
  SectorLabel t = s;
  for (auto& c : t.action) c = frac_q(-c);
  t.age = age(t.action);
  return t;
}

}  // namespace qtoric
