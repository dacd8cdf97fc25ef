#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qtoric {

using Integer = mpz_class;
using Rational = mpq_class;
using QVector = std::vector<Rational>;
using Subset = std::vector<int>;

// Malformed or inconsistent user input (model files, CLI arguments).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called outside its documented domain.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// Rationals

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer floor_q(const Rational& x) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

inline Integer ceil_q(const Rational& x) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

// Fractional part in [0, 1).
inline Rational frac_q(const Rational& x) { return x - Rational(floor_q(x)); }

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline long to_long(const Integer& x) {
  if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in long");
  return x.get_si();
}

// "p/q" in lowest terms, or "p" when the denominator is 1.
inline std::string to_string(const Rational& x) { return x.get_str(); }

// Accepts [-]digits[/digits] with a nonzero denominator.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) throw InputError("not a rational number: '" + std::string(text) + "'");
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  if (text.front() == '-') n = -n;
  return make_rational(n, d);
}

inline QVector to_rational(std::span<const Integer> v) { return QVector(v.begin(), v.end()); }

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// ---------------------------------------------------------------------------
// Integer matrices

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw InputError("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Integer> column(std::size_t j) const {
    std::vector<Integer> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<Integer> row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix select_columns(std::span<const int> cols) const {
    IntMatrix m(rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols.size(); ++k) m(i, k) = (*this)(i, static_cast<std::size_t>(cols[k]));
    return m;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// Bareiss fraction-free elimination. Square matrices only.
inline Integer determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

struct SnfResult {
  std::vector<Integer> diagonal;  // length min(rows, cols); d_k | d_{k+1}
  IntMatrix left;                 // U, rows x rows
  IntMatrix right;                // V, cols x cols
};

// U * M * V = diag(d_1, d_2, ...). Pivots on the entry of smallest absolute value.
inline SnfResult smith_normal_form(const IntMatrix& input) {
  IntMatrix m = input;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m(a, j), m(b, j));
    for (std::size_t j = 0; j < rows; ++j) std::swap(u(a, j), u(b, j));
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, a), m(i, b));
    for (std::size_t i = 0; i < cols; ++i) std::swap(v(i, a), v(i, b));
  };
  // row_dst += k * row_src
  auto add_row = [&](std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t j = 0; j < cols; ++j) m(dst, j) += k * m(src, j);
    for (std::size_t j = 0; j < rows; ++j) u(dst, j) += k * u(src, j);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t i = 0; i < rows; ++i) m(i, dst) += k * m(i, src);
    for (std::size_t i = 0; i < cols; ++i) v(i, dst) += k * v(i, src);
  };

  const std::size_t steps = std::min(rows, cols);
  std::vector<Integer> diag(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m(i, j) != 0 && (!best || abs(m(i, j)) < abs(m(best->first, best->second)))) best = {i, j};
      if (!best) break;  // remaining block is zero
      swap_rows(t, best->first);
      swap_cols(t, best->second);

      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), m(i, t).get_mpz_t(), m(t, t).get_mpz_t());
        add_row(i, t, -q);
        dirty = dirty || m(i, t) != 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), m(t, j).get_mpz_t(), m(t, t).get_mpz_t());
        add_col(j, t, -q);
        dirty = dirty || m(t, j) != 0;
      }
      if (dirty) continue;

      // Pivot must divide the rest of the block; fold an offending row in and retry.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < rows && !offender; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m(i, j) % m(t, t) != 0) {
            offender = i;
            break;
          }
      if (!offender) break;
      add_row(t, *offender, Integer(1));
    }
    if (m(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) m(t, j) = -m(t, j);
      for (std::size_t j = 0; j < rows; ++j) u(t, j) = -u(t, j);
    }
    diag[t] = m(t, t);
  }
  return {std::move(diag), std::move(u), std::move(v)};
}

// ---------------------------------------------------------------------------
// Rational linear algebra. Matrices are lists of rows.

inline std::size_t rank(std::vector<QVector> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

// Solves a * x = b for square nonsingular a; nullopt when singular.
inline std::optional<QVector> solve_square(std::vector<QVector> a, QVector b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("solve_square: dimension mismatch");
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[c], a[p]);
    std::swap(b[c], b[p]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
      b[i] -= f * b[c];
    }
  }
  QVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// Columns of the result are the given vectors.
inline std::vector<QVector> columns_to_rows(std::span<const QVector> columns, std::size_t dim) {
  std::vector<QVector> rows(dim, QVector(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) rows[i][j] = columns[j][i];
  return rows;
}

// ---------------------------------------------------------------------------
// Cone membership

struct ConeDecision {
  bool contains = false;
  QVector coefficients;  // when contains: target = sum c_j gen_j, c_j >= 0
  QVector separator;     // otherwise: l(gen_j) >= 0 for all j, l(target) < 0
};

// Exact phase-one simplex with Bland's rule on  G c = target, c >= 0.
// The Farkas certificate is read off the final basis inverse.
inline ConeDecision cone_contains(std::span<const QVector> generators, const QVector& target) {
  const std::size_t dim = target.size();
  const std::size_t n = generators.size();
  for (const auto& g : generators)
    if (g.size() != dim) throw std::invalid_argument("cone_contains: dimension mismatch");

  // Tableau columns: generators [0, n), artificials [n, n + dim), rhs.
  const std::size_t width = n + dim + 1;
  std::vector<QVector> tab(dim, QVector(width));
  std::vector<int> flip(dim, 1);
  for (std::size_t i = 0; i < dim; ++i) {
    if (target[i] < 0) flip[i] = -1;
    for (std::size_t j = 0; j < n; ++j) tab[i][j] = flip[i] * generators[j][i];
    tab[i][n + i] = 1;
    tab[i][width - 1] = flip[i] * target[i];
  }
  std::vector<std::size_t> basis(dim);
  for (std::size_t i = 0; i < dim; ++i) basis[i] = n + i;
  auto cost = [&](std::size_t j) { return j >= n ? Rational(1) : Rational(0); };

  for (;;) {
    std::optional<std::size_t> entering;
    for (std::size_t j = 0; j + 1 < width && !entering; ++j) {
      Rational reduced = cost(j);
      for (std::size_t i = 0; i < dim; ++i) reduced -= cost(basis[i]) * tab[i][j];
      if (reduced < 0) entering = j;
    }
    if (!entering) break;
    const std::size_t e = *entering;
    std::optional<std::size_t> leave;
    Rational best_ratio;
    for (std::size_t i = 0; i < dim; ++i) {
      if (tab[i][e] <= 0) continue;
      Rational ratio = tab[i][width - 1] / tab[i][e];
      if (!leave || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[*leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    // Phase one is bounded below, so a blocking row always exists.
    const std::size_t l = *leave;
    Rational piv = tab[l][e];
    for (auto& x : tab[l]) x /= piv;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i == l || tab[i][e] == 0) continue;
      Rational f = tab[i][e];
      for (std::size_t j = 0; j < width; ++j) tab[i][j] -= f * tab[l][j];
    }
    basis[l] = e;
  }

  Rational objective = 0;
  for (std::size_t i = 0; i < dim; ++i) objective += cost(basis[i]) * tab[i][width - 1];

  ConeDecision out;
  if (objective == 0) {
    out.contains = true;
    out.coefficients.assign(n, 0);
    for (std::size_t i = 0; i < dim; ++i)
      if (basis[i] < n) out.coefficients[basis[i]] = tab[i][width - 1];
    return out;
  }
  out.separator.assign(dim, 0);
  for (std::size_t k = 0; k < dim; ++k) {
    Rational y = 0;
    for (std::size_t i = 0; i < dim; ++i) y += cost(basis[i]) * tab[i][n + k];
    out.separator[k] = -flip[k] * y;
  }
  return out;
}

inline bool in_cone(std::span<const QVector> generators, const QVector& target) {
  return cone_contains(generators, target).contains;
}

// ---------------------------------------------------------------------------
// Subsets

// Visits all k-subsets of {0..n-1} in lexicographic order.
template <typename F>
void for_each_combination(int n, int k, F&& visit) {
  if (k < 0 || k > n) return;
  Subset s(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) s[static_cast<std::size_t>(i)] = i;
  for (;;) {
    visit(static_cast<const Subset&>(s));
    int i = k - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
  }
}

inline bool is_subset(const Subset& a, const Subset& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace qtoric
