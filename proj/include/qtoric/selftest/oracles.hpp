#pragma once

// Reference computations used by the test suites and the `selftest` command.
// Nothing here touches SectorRing, RingElement or ZLaurent: rank-one series are
// expanded with their own truncated bivariate arithmetic.

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "qtoric/curve_classes.hpp"
#include "qtoric/sectors.hpp"

namespace qtoric::oracle {

// Elements of Q[H]/(H^m) ⊗ Q[z, 1/z], keyed by (H-power, z-power).
class TruncSeries {
 public:
  explicit TruncSeries(int nilpotency) : m_(nilpotency) {}

  static TruncSeries one(int m) {
    TruncSeries s(m);
    s.add(0, 0, 1);
    return s;
  }
  // a H + c z
  static TruncSeries linear(int m, const Rational& a, const Rational& c) {
    TruncSeries s(m);
    s.add(1, 0, a);
    s.add(0, 1, c);
    return s;
  }
  // (a H + c z)^{-1} = sum_k (-a)^k H^k / c^{k+1} z^{k+1}
  static TruncSeries inverse_linear(int m, const Rational& a, const Rational& c) {
    TruncSeries s(m);
    Rational coeff = 1 / c;
    for (int k = 0; k < m; ++k) {
      s.add(k, -(k + 1), coeff);
      coeff *= -a / c;
    }
    return s;
  }

  void add(int h, int z, const Rational& c) {
    if (h >= m_ || c == 0) return;
    auto key = std::make_pair(h, z);
    coeffs_[key] += c;
    if (coeffs_[key] == 0) coeffs_.erase(key);
  }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    TruncSeries out(a.m_);
    for (const auto& [ka, ca] : a.coeffs_)
      for (const auto& [kb, cb] : b.coeffs_) out.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
  }
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) {
    for (const auto& [k, c] : b.coeffs_) a.add(k.first, k.second, c);
    return a;
  }

  int nilpotency() const { return m_; }
  const std::map<std::pair<int, int>, Rational>& coeffs() const { return coeffs_; }
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  int m_;
  std::map<std::pair<int, int>, Rational> coeffs_;
};

// prod_{m=1}^d (H + m z)^{-(n+1)} in Q[H]/(H^{n+1}).
inline TruncSeries projective_space_term(int n, int d) {
  TruncSeries s = TruncSeries::one(n + 1);
  for (int m = 1; m <= d; ++m)
    for (int k = 0; k <= n; ++k) s = s * TruncSeries::inverse_linear(n + 1, 1, m);
  return s;
}

// Closed-form coefficient of q^beta for a rank-one model with theta > 0:
// D_rho = a_rho H, and the sector of beta is Q[H]/(H^p) with p the number of
// positive charges among rays where a_rho beta is integral.
inline TruncSeries rank_one_term(const std::vector<long>& charges, const Rational& beta) {
  int p = 0;
  for (long a : charges)
    if (a > 0 && is_integer(Rational(a) * beta)) ++p;
  TruncSeries s = TruncSeries::one(p);
  for (long a : charges) {
    Rational b = Rational(a) * beta;
    if (b < 0) {
      // nu from ceil(b) to -1
      Integer lo = ceil_q(b);
      for (Integer nu = lo; nu < 0; ++nu) s = s * TruncSeries::linear(p, a, b - Rational(nu));
    } else if (b > 0) {
      for (Integer nu = 0; Rational(nu) < b; ++nu) s = s * TruncSeries::inverse_linear(p, a, b - Rational(nu));
    }
  }
  return s;
}

// Euler-twist numerator prod_{m=0}^{b} (c H + m z) for a rank-one character c with b = c * beta.
inline TruncSeries twist_numerator(int nilpotency, long character, long b) {
  TruncSeries s = TruncSeries::one(nilpotency);
  for (long m = 0; m <= b; ++m) s = s * TruncSeries::linear(nilpotency, character, m);
  return s;
}

inline Integer factorial(long n) {
  Integer f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

// Coefficient of q^d H in the local P^2 mirror map: 3 (-1)^d (3d-1)! / (d!)^3.
inline Rational local_p2_mirror_coefficient(long d) {
  Integer df = factorial(d);
  Rational v = make_rational(3 * factorial(3 * d - 1), df * df * df);
  return d % 2 == 0 ? v : -v;
}

// Monomials x^i y^j with a*i + j = m, counted one by one.
inline long count_weighted_monomials(long a, long m) {
  long n = 0;
  for (long i = 0; a * i <= m; ++i)
    for (long j = 0; j <= m; ++j)
      if (a * i + j == m) ++n;
  return n;
}

// All beta in (1/e)Z^r with |beta_i| <= box, 0 <= degree <= d_max and F_beta nonempty.
inline std::vector<QVector> brute_force_effective(const GitPresentation& p, const Integer& e, const Rational& d_max,
                                                 long box) {
  const auto r = static_cast<std::size_t>(p.rank);
  const long steps = box * to_long(e);
  std::vector<long> k(r, -steps);
  std::vector<QVector> out;
  for (;;) {
    QVector beta(r);
    for (std::size_t i = 0; i < r; ++i) beta[i] = make_rational(k[i], e);
    CurveClass c = make_class(p, beta);
    if (c.degree >= 0 && c.degree <= d_max && f_beta_nonempty(p, c)) out.push_back(beta);
    std::size_t j = 0;
    while (j < r && ++k[j] > steps) k[j++] = -steps;
    if (j == r) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// W^ss = W^s by scanning every subset: each S with theta in Cone(A_S) must have full rank.
inline bool brute_force_ss_equals_s(const GitPresentation& p) {
  const int n = p.n_rays;
  bool any = false;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Subset s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    if (!theta_in_cone(p, s)) continue;
    any = true;
    if (rank(p.charges_of(s)) != static_cast<std::size_t>(p.rank)) return false;
  }
  return any;
}

// Action vectors of all gamma in ((1/order) Z / Z)^r whose fixed locus meets W^ss.
inline std::set<QVector> brute_force_sector_actions(const GitPresentation& p, long order) {
  const auto r = static_cast<std::size_t>(p.rank);
  std::vector<long> k(r, 0);
  std::set<QVector> out;
  for (;;) {
    QVector gamma(r);
    for (std::size_t i = 0; i < r; ++i) gamma[i] = make_rational(k[i], order);
    QVector c = action_vector(p, gamma);
    Subset fixed;
    for (std::size_t rho = 0; rho < c.size(); ++rho)
      if (c[rho] == 0) fixed.push_back(static_cast<int>(rho));
    if (theta_in_cone(p, fixed)) out.insert(c);
    std::size_t j = 0;
    while (j < r && ++k[j] == order) k[j++] = 0;
    if (j == r) break;
  }
  return out;
}

}  // namespace qtoric::oracle
