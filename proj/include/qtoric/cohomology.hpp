#pragma once

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qtoric/sectors.hpp"

namespace qtoric {

using Monomial = std::vector<int>;             // exponents of xi_1..xi_r
using Polynomial = std::map<Monomial, Rational>;  // zero coefficients never stored

inline int monomial_degree(const Monomial& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

// All monomials of the given degree, lex-descending.
inline std::vector<Monomial> monomials_of_degree(int vars, int degree) {
  std::vector<Monomial> out;
  Monomial m(static_cast<std::size_t>(vars), 0);
  auto fill = [&](auto&& self, int i, int left) -> void {
    if (i == vars - 1) {
      m[static_cast<std::size_t>(i)] = left;
      out.push_back(m);
      return;
    }
    for (int e = left; e >= 0; --e) {
      m[static_cast<std::size_t>(i)] = e;
      self(self, i + 1, left - e);
    }
  };
  if (vars == 0) {
    if (degree == 0) out.push_back({});
    return out;
  }
  fill(fill, 0, degree);
  return out;
}

inline Polynomial poly_mul(const Polynomial& x, const Polynomial& y) {
  Polynomial out;
  for (const auto& [mx, cx] : x)
    for (const auto& [my, cy] : y) {
      Monomial m(mx.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = mx[i] + my[i];
      Rational& slot = out[m];
      slot += cx * cy;
      if (slot == 0) out.erase(m);
    }
  return out;
}

// sum_i eta_i xi_i
inline Polynomial linear_form(std::span<const Integer> eta) {
  Polynomial out;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    if (eta[i] == 0) continue;
    Monomial m(eta.size(), 0);
    m[i] = 1;
    out[m] = Rational(eta[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

// Q[xi_1..xi_r] / (Stanley-Reisner monomials of the sector support), built
// degree by degree up to max_degree. In each degree the ideal is kept in
// reduced row echelon form; monomials that are not pivots form the basis.
class SectorRing {
 public:
  struct Piece {
    std::vector<Monomial> monomials;
    std::map<Monomial, std::size_t> index;
    std::vector<QVector> reducer;       // RREF rows, one per pivot
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> basis;     // indices of standard monomials
  };

  SectorRing(const GitPresentation& p, SectorLabel sector, int max_degree)
      : vars_(p.rank), max_degree_(max_degree), sector_(std::move(sector)) {
    if (max_degree_ < 0) throw std::invalid_argument("max_degree must be nonnegative");
    for (int rho = 0; rho < p.n_rays; ++rho) ray_characters_.push_back(p.character_of_ray(rho));
    for (const auto& b : sr_generators(p, sector_.support)) {
      Polynomial g{{Monomial(static_cast<std::size_t>(vars_), 0), Rational(1)}};
      for (int rho : b) g = poly_mul(g, linear_form(ray_characters_[static_cast<std::size_t>(rho)]));
      ideal_blocks_.push_back(b);
      ideal_generators_.push_back(std::move(g));
    }
    for (int k = 0; k <= max_degree_; ++k) pieces_.push_back(build_piece(k));
  }

  int vars() const { return vars_; }
  int max_degree() const { return max_degree_; }
  const SectorLabel& sector() const { return sector_; }
  const Piece& piece(int k) const { return pieces_.at(static_cast<std::size_t>(k)); }
  const std::vector<Polynomial>& ideal_generators() const { return ideal_generators_; }
  const std::vector<Subset>& ideal_blocks() const { return ideal_blocks_; }
  std::span<const Integer> ray_character(int rho) const { return ray_characters_.at(static_cast<std::size_t>(rho)); }
  int n_rays() const { return static_cast<int>(ray_characters_.size()); }

  std::vector<int> betti_dims() const {
    std::vector<int> d;
    for (const auto& pc : pieces_) d.push_back(static_cast<int>(pc.basis.size()));
    return d;
  }

  // The quotient vanishes in max_degree, hence in every higher degree, so
  // truncation loses nothing.
  bool complete() const { return pieces_.back().basis.empty(); }

  // Coordinates over all degree-k monomials -> coordinates over the basis.
  QVector reduce(int k, QVector full) const {
    const Piece& pc = piece(k);
    for (std::size_t r = 0; r < pc.reducer.size(); ++r) {
      const Rational f = full[pc.pivots[r]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < full.size(); ++j) full[j] -= f * pc.reducer[r][j];
    }
    QVector out(pc.basis.size());
    for (std::size_t i = 0; i < pc.basis.size(); ++i) out[i] = full[pc.basis[i]];
    return out;
  }

 private:
  Piece build_piece(int k) const {
    Piece pc;
    pc.monomials = monomials_of_degree(vars_, k);
    for (std::size_t i = 0; i < pc.monomials.size(); ++i) pc.index.emplace(pc.monomials[i], i);
    std::vector<QVector> span;
    for (const auto& g : ideal_generators_) {
      if (g.empty()) continue;
      int dg = monomial_degree(g.begin()->first);
      if (dg > k) continue;
      for (const auto& m : monomials_of_degree(vars_, k - dg)) {
        QVector v(pc.monomials.size(), 0);
        for (const auto& [mg, c] : g) {
          Monomial t(mg.size());
          for (std::size_t i = 0; i < t.size(); ++i) t[i] = mg[i] + m[i];
          v[pc.index.at(t)] += c;
        }
        span.push_back(std::move(v));
      }
    }
    // Row reduce to RREF.
    std::size_t row = 0;
    for (std::size_t col = 0; col < pc.monomials.size() && row < span.size(); ++col) {
      std::size_t p = row;
      while (p < span.size() && span[p][col] == 0) ++p;
      if (p == span.size()) continue;
      std::swap(span[row], span[p]);
      Rational inv = 1 / span[row][col];
      for (auto& x : span[row]) x *= inv;
      for (std::size_t i = 0; i < span.size(); ++i) {
        if (i == row || span[i][col] == 0) continue;
        Rational f = span[i][col];
        for (std::size_t j = 0; j < span[i].size(); ++j) span[i][j] -= f * span[row][j];
      }
      pc.pivots.push_back(col);
      ++row;
    }
    span.resize(row);
    pc.reducer = std::move(span);
    std::size_t next = 0;
    for (std::size_t i = 0; i < pc.monomials.size(); ++i) {
      if (next < pc.pivots.size() && pc.pivots[next] == i) {
        ++next;
        continue;
      }
      pc.basis.push_back(i);
    }
    return pc;
  }

  int vars_;
  int max_degree_;
  SectorLabel sector_;
  std::vector<std::vector<Integer>> ray_characters_;
  std::vector<Subset> ideal_blocks_;
  std::vector<Polynomial> ideal_generators_;
  std::vector<Piece> pieces_;
};

using RingPtr = std::shared_ptr<const SectorRing>;

inline int default_max_degree(const SectorLabel& s) { return s.dim + 1; }

inline RingPtr build_sector_ring(const GitPresentation& p, const SectorLabel& s, std::optional<int> max_degree = {}) {
  return std::make_shared<const SectorRing>(p, s, max_degree.value_or(default_max_degree(s)));
}

inline std::vector<int> betti_dims(const SectorRing& ring) { return ring.betti_dims(); }

// ---------------------------------------------------------------------------

// An element of a SectorRing in normal form: one coefficient vector per degree
// over that degree's standard monomials.
class RingElement {
 public:
  RingElement() = default;
  explicit RingElement(RingPtr ring) : ring_(std::move(ring)) {
    for (int k = 0; k <= ring_->max_degree(); ++k) comps_.emplace_back(ring_->piece(k).basis.size(), 0);
  }

  static RingElement zero(RingPtr ring) { return RingElement(std::move(ring)); }
  static RingElement scalar(RingPtr ring, const Rational& c) {
    RingElement e(std::move(ring));
    if (!e.comps_[0].empty()) e.comps_[0][0] = c;
    return e;
  }
  static RingElement one(RingPtr ring) { return scalar(std::move(ring), 1); }

  // Reduces an arbitrary polynomial; terms above max_degree are dropped.
  static RingElement from_polynomial(RingPtr ring, const Polynomial& poly) {
    std::vector<QVector> full;
    for (int k = 0; k <= ring->max_degree(); ++k) full.emplace_back(ring->piece(k).monomials.size(), 0);
    for (const auto& [m, c] : poly) {
      int d = monomial_degree(m);
      if (d > ring->max_degree()) continue;
      full[static_cast<std::size_t>(d)][ring->piece(d).index.at(m)] += c;
    }
    RingElement e(ring);
    for (int k = 0; k <= ring->max_degree(); ++k)
      e.comps_[static_cast<std::size_t>(k)] = ring->reduce(k, std::move(full[static_cast<std::size_t>(k)]));
    return e;
  }

  const SectorRing& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  const QVector& component(int k) const { return comps_.at(static_cast<std::size_t>(k)); }

  bool is_zero() const {
    for (const auto& c : comps_)
      for (const auto& x : c)
        if (x != 0) return false;
    return true;
  }
  bool component_is_zero(int k) const {
    for (const auto& x : component(k))
      if (x != 0) return false;
    return true;
  }
  std::vector<int> nonzero_degrees() const {
    std::vector<int> d;
    for (int k = 0; k <= ring_->max_degree(); ++k)
      if (!component_is_zero(k)) d.push_back(k);
    return d;
  }
  RingElement homogeneous_part(int k) const {
    RingElement e(ring_);
    e.comps_[static_cast<std::size_t>(k)] = component(k);
    return e;
  }
  // Coefficient of the unit, i.e. the degree-0 component.
  Rational constant_term() const { return comps_[0].empty() ? Rational(0) : comps_[0][0]; }

  // Normal form as a polynomial supported on standard monomials.
  Polynomial to_polynomial() const {
    Polynomial out;
    for (int k = 0; k <= ring_->max_degree(); ++k) {
      const auto& pc = ring_->piece(k);
      for (std::size_t i = 0; i < pc.basis.size(); ++i) {
        const Rational& c = comps_[static_cast<std::size_t>(k)][i];
        if (c != 0) out[pc.monomials[pc.basis[i]]] = c;
      }
    }
    return out;
  }

  RingElement& operator+=(const RingElement& o) {
    check_same(o);
    for (std::size_t k = 0; k < comps_.size(); ++k)
      for (std::size_t i = 0; i < comps_[k].size(); ++i) comps_[k][i] += o.comps_[k][i];
    return *this;
  }
  RingElement& operator-=(const RingElement& o) {
    check_same(o);
    for (std::size_t k = 0; k < comps_.size(); ++k)
      for (std::size_t i = 0; i < comps_[k].size(); ++i) comps_[k][i] -= o.comps_[k][i];
    return *this;
  }
  RingElement& operator*=(const Rational& s) {
    for (auto& c : comps_)
      for (auto& x : c) x *= s;
    return *this;
  }
  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator-(RingElement a) { return a *= Rational(-1); }
  friend RingElement operator*(RingElement a, const Rational& s) { return a *= s; }
  friend RingElement operator*(const Rational& s, RingElement a) { return a *= s; }

  friend bool operator==(const RingElement& a, const RingElement& b) {
    a.check_same(b);
    return a.comps_ == b.comps_;
  }

  // Product in normal form. When the ring is not complete and nonzero raw
  // content lands above max_degree, *dropped is set.
  friend RingElement mul(const RingElement& a, const RingElement& b, bool* dropped = nullptr) {
    a.check_same(b);
    const SectorRing& ring = *a.ring_;
    const int top = ring.max_degree();
    std::vector<QVector> full;
    for (int k = 0; k <= top; ++k) full.emplace_back(ring.piece(k).monomials.size(), 0);
    bool lost = false;
    for (int i = 0; i <= top; ++i) {
      if (a.component_is_zero(i)) continue;
      for (int j = 0; j <= top; ++j) {
        if (b.component_is_zero(j)) continue;
        if (i + j > top) {
          lost = true;
          continue;
        }
        const auto& pa = ring.piece(i);
        const auto& pb = ring.piece(j);
        const auto& pt = ring.piece(i + j);
        auto& dst = full[static_cast<std::size_t>(i + j)];
        for (std::size_t x = 0; x < pa.basis.size(); ++x) {
          const Rational& ca = a.comps_[static_cast<std::size_t>(i)][x];
          if (ca == 0) continue;
          const Monomial& ma = pa.monomials[pa.basis[x]];
          for (std::size_t y = 0; y < pb.basis.size(); ++y) {
            const Rational& cb = b.comps_[static_cast<std::size_t>(j)][y];
            if (cb == 0) continue;
            const Monomial& mb = pb.monomials[pb.basis[y]];
            Monomial m(ma.size());
            for (std::size_t v = 0; v < m.size(); ++v) m[v] = ma[v] + mb[v];
            dst[pt.index.at(m)] += ca * cb;
          }
        }
      }
    }
    if (dropped) *dropped = lost && !ring.complete();
    RingElement out(a.ring_);
    for (int k = 0; k <= top; ++k)
      out.comps_[static_cast<std::size_t>(k)] = ring.reduce(k, std::move(full[static_cast<std::size_t>(k)]));
    return out;
  }
  friend RingElement operator*(const RingElement& a, const RingElement& b) { return mul(a, b); }

 private:
  void check_same(const RingElement& o) const {
    if (ring_ != o.ring_) throw std::invalid_argument("ring element operands live in different rings");
  }

  RingPtr ring_;
  std::vector<QVector> comps_;
};

inline RingElement character_class(const RingPtr& ring, std::span<const Integer> eta) {
  return RingElement::from_polynomial(ring, linear_form(eta));
}

// D_rho = sum_i a_{i,rho} xi_i restricted to the sector ring.
inline RingElement divisor_class(const RingPtr& ring, int rho) {
  return character_class(ring, ring->ray_character(rho));
}

inline std::string monomial_to_string(const Monomial& m, std::span<const std::string> names) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

inline std::vector<std::string> default_class_names(int rank) {
  if (rank == 1) return {"H"};
  std::vector<std::string> n;
  for (int i = 1; i <= rank; ++i) n.push_back("H" + std::to_string(i));
  return n;
}

inline std::string to_string(const RingElement& e, std::span<const std::string> names) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : e.to_polynomial()) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c);
    if (monomial_degree(m) > 0) os << " " << monomial_to_string(m, names);
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------------------
// Laurent polynomials in z with coefficients in one sector ring.

struct ZWindow {
  int lo = 0;
  int hi = 0;
  bool contains(int k) const { return lo <= k && k <= hi; }
};

class ZLaurent {
 public:
  ZLaurent() = default;
  explicit ZLaurent(RingPtr ring) : ring_(std::move(ring)) {}

  static ZLaurent monomial(const RingElement& c, int power) {
    ZLaurent z(c.ring_ptr());
    if (!c.is_zero()) z.terms_.emplace(power, c);
    return z;
  }
  static ZLaurent one(RingPtr ring) { return monomial(RingElement::one(ring), 0); }

  // D + c z
  static ZLaurent linear(const RingElement& d, const Rational& c) {
    ZLaurent z = monomial(d, 0);
    z += monomial(RingElement::scalar(d.ring_ptr(), c), 1);
    return z;
  }

  const RingPtr& ring_ptr() const { return ring_; }
  const std::map<int, RingElement>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  RingElement coefficient(int power) const {
    auto it = terms_.find(power);
    return it == terms_.end() ? RingElement::zero(ring_) : it->second;
  }
  std::optional<int> max_power() const {
    return terms_.empty() ? std::nullopt : std::optional<int>(terms_.rbegin()->first);
  }
  std::optional<int> min_power() const {
    return terms_.empty() ? std::nullopt : std::optional<int>(terms_.begin()->first);
  }

  ZLaurent& operator+=(const ZLaurent& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  ZLaurent& operator-=(const ZLaurent& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  ZLaurent& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [_, c] : terms_) c *= s;
    return *this;
  }
  friend ZLaurent operator+(ZLaurent a, const ZLaurent& b) { return a += b; }
  friend ZLaurent operator-(ZLaurent a, const ZLaurent& b) { return a -= b; }
  friend ZLaurent operator*(ZLaurent a, const Rational& s) { return a *= s; }

  friend ZLaurent operator*(const ZLaurent& a, const ZLaurent& b) {
    ZLaurent out(a.ring_);
    for (const auto& [i, ca] : a.terms_)
      for (const auto& [j, cb] : b.terms_) out.add_term(i + j, ca * cb);
    return out;
  }

  // Multiplies by z^shift.
  ZLaurent shifted(int shift) const {
    ZLaurent out(ring_);
    for (const auto& [k, c] : terms_) out.terms_.emplace(k + shift, c);
    return out;
  }

  ZLaurent clipped(const ZWindow& w, std::vector<int>* dropped = nullptr) const {
    ZLaurent out(ring_);
    for (const auto& [k, c] : terms_) {
      if (w.contains(k))
        out.terms_.emplace(k, c);
      else if (dropped)
        dropped->push_back(k);
    }
    return out;
  }

  friend bool operator==(const ZLaurent& a, const ZLaurent& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (const auto& [k, c] : a.terms_) {
      auto it = b.terms_.find(k);
      if (it == b.terms_.end() || !(it->second == c)) return false;
    }
    return true;
  }

 private:
  void add_term(int k, const RingElement& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  RingPtr ring_;
  std::map<int, RingElement> terms_;
};

// (D + c z)^{-1} = sum_k (-1)^k D^k / (c^{k+1} z^{k+1}); finite since D is nilpotent.
inline ZLaurent invert_linear_in_z(const RingElement& d, const Rational& c) {
  if (c == 0) throw std::domain_error("invert_linear_in_z: zero z-coefficient");
  ZLaurent out(d.ring_ptr());
  RingElement power = RingElement::one(d.ring_ptr());
  Rational denom = c;
  for (int k = 0; !power.is_zero(); ++k) {
    Rational s = (k % 2 == 0 ? Rational(1) : Rational(-1)) / denom;
    out += ZLaurent::monomial(power * s, -(k + 1));
    power = power * d;
    denom *= c;
    if (k > d.ring().max_degree()) break;
  }
  return out;
}

inline std::string to_string(const ZLaurent& z, std::span<const std::string> names) {
  std::ostringstream os;
  bool first = true;
  for (auto it = z.terms().rbegin(); it != z.terms().rend(); ++it) {
    for (const auto& [m, c] : it->second.to_polynomial()) {
      if (!first) os << " + ";
      first = false;
      os << to_string(c);
      if (monomial_degree(m) > 0) os << " " << monomial_to_string(m, names);
      if (it->first != 0) os << " z^" << it->first;
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace qtoric
