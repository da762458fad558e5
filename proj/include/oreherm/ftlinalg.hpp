#pragma once

// Dense exact linear algebra over Q(t).

#include <cstddef>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "oreherm/field.hpp"

namespace oreherm {

class FtMatrix {
 public:
  FtMatrix() = default;
  FtMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {
    if (rows == 0 || cols == 0) throw ShapeError("matrix dimensions must be positive");
  }
  FtMatrix(const std::vector<std::vector<RatFun>>& rows) {  // NOLINT
    if (rows.empty() || rows[0].empty()) throw ShapeError("matrix dimensions must be positive");
    rows_ = rows.size();
    cols_ = rows[0].size();
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ShapeError("ragged matrix rows");
      entries_.insert(entries_.end(), r.begin(), r.end());
    }
  }

  static FtMatrix identity(std::size_t n) {
    FtMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = RatFun(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  RatFun& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const RatFun& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  FtMatrix transposed() const {
    FtMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<RatFun> apply(const std::vector<RatFun>& x) const {
    if (x.size() != cols_) throw ShapeError("vector length does not match column count");
    std::vector<RatFun> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero() && !x[j].is_zero()) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  Degree deg_t() const {
    Degree m = kMinusInfinity;
    for (const auto& e : entries_) m = std::max(m, e.deg_t());
    return m;
  }

  friend bool operator==(const FtMatrix&, const FtMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<RatFun> entries_;
};

struct SolveOutcome {
  bool consistent = false;
  std::optional<std::vector<RatFun>> solution;
  std::vector<std::size_t> pivot_columns;
};

namespace detail {

struct Pivot {
  std::size_t row;
  std::size_t col;
};

// Forward elimination with full pivoting on the entry of least t-degree
// (ties: sparsest column, then leftmost column, then topmost row). `rhs`, when given, receives
// the same row operations. Returns pivots in elimination order.
inline std::vector<Pivot> eliminate(FtMatrix& m, std::vector<RatFun>* rhs) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<bool> row_used(rows, false), col_used(cols, false);
  std::vector<Pivot> pivots;
  for (;;) {
    std::optional<Pivot> best;
    std::pair<Degree, std::size_t> best_key{0, 0};
    for (std::size_t c = 0; c < cols; ++c) {
      if (col_used[c]) continue;
      std::size_t count = 0;
      for (std::size_t r = 0; r < rows; ++r) count += !row_used[r] && !m(r, c).is_zero();
      for (std::size_t r = 0; r < rows; ++r) {
        if (row_used[r] || m(r, c).is_zero()) continue;
        const std::pair<Degree, std::size_t> key{m(r, c).deg_t(), count};
        if (!best || key < best_key) {
          best = Pivot{r, c};
          best_key = key;
        }
      }
    }
    if (!best) break;
    const auto [pr, pc] = *best;
    row_used[pr] = true;
    col_used[pc] = true;
    pivots.push_back(*best);
    const RatFun inv = m(pr, pc).inverse();
    std::vector<std::size_t> support;
    for (std::size_t c = 0; c < cols; ++c)
      if (!col_used[c] && !m(pr, c).is_zero()) support.push_back(c);
    for (std::size_t r = 0; r < rows; ++r) {
      if (row_used[r] || m(r, pc).is_zero()) continue;
      const RatFun factor = m(r, pc) * inv;
      for (std::size_t c : support) m(r, c) -= factor * m(pr, c);
      m(r, pc) = RatFun();
      if (rhs && !(*rhs)[pr].is_zero()) (*rhs)[r] -= factor * (*rhs)[pr];
    }
  }
  return pivots;
}

}  // namespace detail

/// One exact solution of m x = b with free variables set to zero, or
/// consistent = false when none exists.
inline SolveOutcome solve(const FtMatrix& m, const std::vector<RatFun>& b) {
  if (b.size() != m.rows()) throw ShapeError("right-hand side length does not match row count");
  FtMatrix work = m;
  std::vector<RatFun> rhs = b;
  const std::vector<detail::Pivot> pivots = detail::eliminate(work, &rhs);
  SolveOutcome out;
  std::vector<bool> pivot_row(m.rows(), false);
  for (const auto& p : pivots) {
    pivot_row[p.row] = true;
    out.pivot_columns.push_back(p.col);
  }
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!pivot_row[r] && !rhs[r].is_zero()) return out;
  out.consistent = true;
  std::vector<RatFun> x(m.cols());
  // Pivot row k is free of the columns of pivots 0..k-1.
  for (std::size_t k = pivots.size(); k-- > 0;) {
    const auto [pr, pc] = pivots[k];
    RatFun acc = rhs[pr];
    for (std::size_t l = k + 1; l < pivots.size(); ++l) {
      const std::size_t c = pivots[l].col;
      if (!work(pr, c).is_zero() && !x[c].is_zero()) acc -= work(pr, c) * x[c];
    }
    x[pc] = acc / work(pr, pc);
  }
  out.solution = std::move(x);
  return out;
}

inline std::size_t rank(const FtMatrix& m) {
  FtMatrix work = m;
  return detail::eliminate(work, nullptr).size();
}

namespace detail {

// Arithmetic on dense Z[t] polynomials, coefficient i of t^i.
inline ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  ztrim(r);
  return r;
}

// a*b - c*d
inline ZPoly zcross(const ZPoly& a, const ZPoly& b, const ZPoly& c, const ZPoly& d) {
  std::size_t len = 0;
  if (!a.empty() && !b.empty()) len = a.size() + b.size() - 1;
  if (!c.empty() && !d.empty()) len = std::max(len, c.size() + d.size() - 1);
  ZPoly r(len);
  if (!a.empty() && !b.empty())
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j)
        mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  if (!c.empty() && !d.empty())
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      for (std::size_t j = 0; j < d.size(); ++j)
        mpz_submul(r[i + j].get_mpz_t(), c[i].get_mpz_t(), d[j].get_mpz_t());
    }
  ztrim(r);
  return r;
}

// Quotient of a division in Z[t] known to be exact.
inline ZPoly zexact_div(ZPoly a, const ZPoly& b) {
  if (b.size() == 1) {
    if (b[0] == 1) return a;
    for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), b[0].get_mpz_t());
    return a;
  }
  if (a.empty()) return a;
  const std::size_t db = b.size() - 1;
  ZPoly q(a.size() - db);
  for (std::size_t k = q.size(); k-- > 0;) {
    BigInt& c = q[k];
    mpz_divexact(c.get_mpz_t(), a[k + db].get_mpz_t(), b.back().get_mpz_t());
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j)
      mpz_submul(a[k + j].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
  }
  return q;
}

inline TPoly to_tpoly(const ZPoly& p) {
  std::vector<BigRat> c;
  c.reserve(p.size());
  for (const auto& x : p) c.emplace_back(x);
  return TPoly(std::move(c));
}

// Scales a row of rational functions (and its right-hand side) to Z[t].
inline std::vector<ZPoly> integral_row(const FtMatrix& m, std::size_t r, const RatFun& b) {
  TPoly den(1);
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!m(r, c).is_polynomial()) den = poly_lcm(den, m(r, c).den());
  if (!b.is_polynomial()) den = poly_lcm(den, b.den());
  std::vector<TPoly> scaled;
  BigInt l = 1;
  auto take = [&](const RatFun& x) {
    TPoly p = den.is_one() ? x.num() : exact_div(x.num() * den, x.den());
    for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    scaled.push_back(std::move(p));
  };
  for (std::size_t c = 0; c < m.cols(); ++c) take(m(r, c));
  take(b);
  std::vector<ZPoly> out;
  out.reserve(scaled.size());
  for (const auto& p : scaled) {
    ZPoly z;
    z.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) z.push_back(BigInt(l / c.get_den()) * c.get_num());
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace detail

/// Same contract as solve(), computed without fractions: rows are scaled
/// into Z[t], columns with a single nonzero entry are set aside together
/// with their row, and the remaining core goes through Bareiss elimination
/// (every intermediate entry is a minor of the core, divisions are exact).
/// Pivoting follows solve(): least t-degree, then sparsest column, then
/// leftmost column and topmost row. When the system has several solutions
/// the one returned may differ from solve()'s.
inline SolveOutcome solve_fraction_free(const FtMatrix& m, const std::vector<RatFun>& b) {
  using detail::ZPoly;
  if (b.size() != m.rows()) throw ShapeError("right-hand side length does not match row count");
  const std::size_t rows = m.rows(), cols = m.cols();
  // a[r][cols] is the right-hand side.
  std::vector<std::vector<ZPoly>> a(rows);
  for (std::size_t r = 0; r < rows; ++r) a[r] = detail::integral_row(m, r, b[r]);

  std::vector<bool> row_live(rows, true), col_live(cols, true);
  std::vector<std::size_t> col_count(cols, 0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) col_count[c] += !a[r][c].empty();

  // Singleton columns: x_c is fixed afterwards by its only equation.
  std::vector<detail::Pivot> set_aside;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t c = 0; c < cols; ++c) {
      if (!col_live[c] || col_count[c] != 1) continue;
      std::size_t r = 0;
      while (!row_live[r] || a[r][c].empty()) ++r;
      set_aside.push_back({r, c});
      row_live[r] = false;
      col_live[c] = false;
      for (std::size_t k = 0; k < cols; ++k)
        if (!a[r][k].empty()) --col_count[k];
      changed = true;
    }
  }

  std::vector<detail::Pivot> pivots;
  ZPoly prev{BigInt(1)};
  for (;;) {
    std::optional<detail::Pivot> best;
    std::tuple<std::size_t, std::size_t> best_key{0, 0};
    for (std::size_t c = 0; c < cols; ++c) {
      if (!col_live[c]) continue;
      std::size_t count = 0;
      for (std::size_t r = 0; r < rows; ++r) count += row_live[r] && !a[r][c].empty();
      for (std::size_t r = 0; r < rows; ++r) {
        if (!row_live[r] || a[r][c].empty()) continue;
        const std::tuple<std::size_t, std::size_t> key{a[r][c].size(), count};
        if (!best || key < best_key) {
          best = detail::Pivot{r, c};
          best_key = key;
        }
      }
    }
    if (!best) break;
    const auto [pr, pc] = *best;
    row_live[pr] = false;
    col_live[pc] = false;
    pivots.push_back(*best);
    const ZPoly& p = a[pr][pc];
    for (std::size_t r = 0; r < rows; ++r) {
      if (!row_live[r]) continue;
      const ZPoly f = a[r][pc];
      for (std::size_t c = 0; c <= cols; ++c) {
        if (c < cols && !col_live[c]) continue;
        if (a[r][c].empty() && (f.empty() || a[pr][c].empty())) continue;
        a[r][c] = detail::zexact_div(detail::zcross(p, a[r][c], f, a[pr][c]), prev);
      }
      a[r][pc].clear();
    }
    prev = p;
  }

  SolveOutcome out;
  for (std::size_t r = 0; r < rows; ++r)
    if (row_live[r] && !a[r][cols].empty()) return out;
  out.consistent = true;
  for (const auto& pv : pivots) out.pivot_columns.push_back(pv.col);

  // Back substitution on y = det * x, which stays in Z[t] by Cramer's rule.
  const ZPoly& det = prev;
  std::vector<ZPoly> y(cols);
  for (std::size_t k = pivots.size(); k-- > 0;) {
    const auto [pr, pc] = pivots[k];
    ZPoly acc = detail::zmul(det, a[pr][cols]);
    for (std::size_t l = k + 1; l < pivots.size(); ++l) {
      const std::size_t c = pivots[l].col;
      if (!a[pr][c].empty() && !y[c].empty()) acc = detail::zcross(acc, {BigInt(1)}, a[pr][c], y[c]);
    }
    y[pc] = detail::zexact_div(std::move(acc), a[pr][pc]);
  }
  const TPoly det_t = detail::to_tpoly(det);
  std::vector<RatFun> x(cols);
  for (const auto& pv : pivots)
    if (!y[pv.col].empty()) x[pv.col] = RatFun(detail::to_tpoly(y[pv.col]), det_t);

  // Set-aside rows, latest first: every other unknown in them is known.
  for (std::size_t k = set_aside.size(); k-- > 0;) {
    const auto [r, c] = set_aside[k];
    RatFun acc = m(r, c).is_zero() ? RatFun() : b[r];
    for (std::size_t j = 0; j < cols; ++j)
      if (j != c && !m(r, j).is_zero() && !x[j].is_zero()) acc -= m(r, j) * x[j];
    x[c] = acc / m(r, c);
    out.pivot_columns.push_back(c);
  }
  out.solution = std::move(x);
  return out;
}

}  // namespace oreherm
