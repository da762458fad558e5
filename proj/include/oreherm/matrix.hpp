#pragma once

// Matrices over Q(t)[D; delta] and the constructive Hermite form by
// Euclidean row elimination.

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "oreherm/ore.hpp"

namespace oreherm {

class OreMatrix {
 public:
  OreMatrix() = default;
  OreMatrix(std::size_t rows, std::size_t cols, Derivation d = Derivation::standard)
      : rows_(rows), cols_(cols), derivation_(d), entries_(rows * cols, OrePoly(d)) {
    if (rows == 0 || cols == 0) throw ShapeError("matrix dimensions must be positive");
  }
  /// Row-major nested initialization; every entry must share one derivation.
  OreMatrix(const std::vector<std::vector<OrePoly>>& rows) {  // NOLINT
    if (rows.empty() || rows[0].empty()) throw ShapeError("matrix dimensions must be positive");
    rows_ = rows.size();
    cols_ = rows[0].size();
    derivation_ = rows[0][0].derivation();
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ShapeError("ragged matrix rows");
      for (const auto& e : r) {
        if (e.derivation() != derivation_) throw DerivationMismatch();
        entries_.push_back(e);
      }
    }
  }

  static OreMatrix identity(std::size_t n, Derivation d = Derivation::standard) {
    OreMatrix m(n, n, d);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = OrePoly::one(d);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  Derivation derivation() const { return derivation_; }

  OrePoly& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const OrePoly& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  /// Largest deg_D over all entries (minus infinity for the zero matrix).
  Degree deg_D() const {
    Degree m = kMinusInfinity;
    for (const auto& e : entries_) m = std::max(m, e.deg_D());
    return m;
  }
  Degree deg_t() const {
    Degree m = kMinusInfinity;
    for (const auto& e : entries_) m = std::max(m, e.deg_t());
    return m;
  }

  bool is_identity() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
    return true;
  }

  bool row_is_zero(std::size_t i) const {
    for (std::size_t j = 0; j < cols_; ++j)
      if (!(*this)(i, j).is_zero()) return false;
    return true;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  /// row_a <- c * row_a for a field element c
  void scale_row(std::size_t a, const RatFun& c) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) = (*this)(a, j).left_scaled(c);
  }

  /// row_a <- row_a + f * row_b
  void add_row_multiple(std::size_t a, const OrePoly& f, std::size_t b) {
    if (f.is_zero()) return;
    for (std::size_t j = 0; j < cols_; ++j)
      if (!(*this)(b, j).is_zero()) (*this)(a, j) += f * (*this)(b, j);
  }

  /// (row_a, row_b) <- W (row_a, row_b) for W = [[w00, w01], [w10, w11]]
  void combine_rows(std::size_t a, std::size_t b, const OrePoly& w00, const OrePoly& w01,
                    const OrePoly& w10, const OrePoly& w11) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const OrePoly x = (*this)(a, j);
      const OrePoly y = (*this)(b, j);
      (*this)(a, j) = w00 * x + w01 * y;
      (*this)(b, j) = w10 * x + w11 * y;
    }
  }

  friend bool operator==(const OreMatrix& a, const OreMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.derivation_ == b.derivation_ &&
           a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Derivation derivation_ = Derivation::standard;
  std::vector<OrePoly> entries_;
};

inline OreMatrix ore_mat_mul(const OreMatrix& a, const OreMatrix& b) {
  if (a.cols() != b.rows())
    throw ShapeError("inner dimensions differ: " + std::to_string(a.cols()) + " vs " +
                     std::to_string(b.rows()));
  if (a.derivation() != b.derivation()) throw DerivationMismatch();
  OreMatrix c(a.rows(), b.cols(), a.derivation());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const OrePoly& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline OreMatrix operator*(const OreMatrix& a, const OreMatrix& b) { return ore_mat_mul(a, b); }

/// Diagonal D-degrees (h_1, ..., h_n) of a triangular form.
struct DegreeProfile {
  std::vector<Degree> degs;

  std::size_t size() const { return degs.size(); }
  Degree operator[](std::size_t i) const { return degs[i]; }
  Degree& operator[](std::size_t i) { return degs[i]; }
  Degree max() const { return degs.empty() ? 0 : *std::max_element(degs.begin(), degs.end()); }
  friend bool operator==(const DegreeProfile&, const DegreeProfile&) = default;
};

struct HermiteResult {
  OreMatrix U;
  OreMatrix H;
  DegreeProfile diag_degrees;
};

struct Unimodular2x2 {
  OreMatrix W;
  OrePoly g;
};

/// W (a, b)^T = (gcrd(a, b), 0)^T. Row one holds the Euclidean cofactors,
/// row two the lclm cofactors (s a = -t b = lclm(a, b)).
inline Unimodular2x2 unimodular_2x2(const OrePoly& a, const OrePoly& b) {
  if (a.is_zero() && b.is_zero()) throw ZeroOperand("unimodular_2x2 of two zero entries");
  const Derivation der = a.derivation();
  GcrdResult e = gcrd_extended(a, b);
  OrePoly s = std::move(e.s), t = std::move(e.t);
  if (!a.is_zero() && !b.is_zero()) {
    const RatFun inv = (s * a).lc().inverse();
    s = s.left_scaled(inv);
    t = t.left_scaled(inv);
  }
  OreMatrix w(2, 2, der);
  w(0, 0) = std::move(e.u);
  w(0, 1) = std::move(e.v);
  w(1, 0) = std::move(s);
  w(1, 1) = std::move(t);
  return {std::move(w), std::move(e.g)};
}

/// Upper triangular, monic diagonal, and every entry above a diagonal
/// entry of strictly lower D-degree than it.
inline bool is_hermite(const OreMatrix& h) {
  if (!h.is_square()) return false;
  const std::size_t n = h.rows();
  for (std::size_t j = 0; j < n; ++j) {
    if (!h(j, j).is_monic()) return false;
    for (std::size_t i = j + 1; i < n; ++i)
      if (!h(i, j).is_zero()) return false;
    for (std::size_t i = 0; i < j; ++i)
      if (h(i, j).deg_D() >= h(j, j).deg_D()) return false;
  }
  return true;
}

/// Reduce every entry above the diagonal modulo the diagonal entry below it,
/// mirroring the row operations into u.
inline std::pair<OreMatrix, OreMatrix> off_diagonal_reduce(OreMatrix h, OreMatrix u) {
  const std::size_t n = h.rows();
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (h(i, j).is_zero() || h(i, j).deg_D() < h(j, j).deg_D()) continue;
      const OrePoly q = right_divrem(h(i, j), h(j, j)).quotient;
      h.add_row_multiple(i, -q, j);
      u.add_row_multiple(i, -q, j);
    }
  }
  return {std::move(h), std::move(u)};
}

namespace detail {

inline std::string join_indices(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + std::to_string(v[k]);
  return s;
}

}  // namespace detail

inline HermiteResult hermite_elimination(const OreMatrix& a) {
  if (!a.is_square()) throw ShapeError("Hermite form requires a square matrix");
  const std::size_t n = a.rows();
  OreMatrix h = a;
  OreMatrix u = OreMatrix::identity(n, a.derivation());
  std::size_t row = 0;
  std::vector<std::size_t> missing;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = n;
    for (std::size_t r = row; r < n; ++r) {
      if (h(r, col).is_zero()) continue;
      if (best == n ||
          std::pair(h(r, col).deg_D(), h(r, col).deg_t()) <
              std::pair(h(best, col).deg_D(), h(best, col).deg_t()))
        best = r;
    }
    if (best == n) {
      missing.push_back(col);
      continue;
    }
    h.swap_rows(row, best);
    u.swap_rows(row, best);
    for (std::size_t r = row + 1; r < n; ++r) {
      if (h(r, col).is_zero()) continue;
      const Unimodular2x2 w = unimodular_2x2(h(row, col), h(r, col));
      h.combine_rows(row, r, w.W(0, 0), w.W(0, 1), w.W(1, 0), w.W(1, 1));
      u.combine_rows(row, r, w.W(0, 0), w.W(0, 1), w.W(1, 0), w.W(1, 1));
    }
    if (!h(row, col).is_monic()) {
      const RatFun inv = h(row, col).lc().inverse();
      h.scale_row(row, inv);
      u.scale_row(row, inv);
    }
    ++row;
  }
  if (row < n) {
    // Rows row..n-1 of h vanish; the matching rows of u are left relations
    // among the input rows.
    std::set<std::size_t> dependent;
    for (std::size_t r = row; r < n; ++r)
      for (std::size_t j = 0; j < n; ++j)
        if (!u(r, j).is_zero()) dependent.insert(j);
    std::vector<std::size_t> rows(dependent.begin(), dependent.end());
    throw RankDeficient("matrix does not have full row rank: no pivot in column " +
                            std::to_string(missing.front()) + "; rows {" +
                            detail::join_indices(rows) + "} are left-linearly dependent",
                        rows);
  }
  auto [hr, ur] = off_diagonal_reduce(std::move(h), std::move(u));
  DegreeProfile degs;
  for (std::size_t i = 0; i < n; ++i) degs.degs.push_back(hr(i, i).deg_D());
  return {std::move(ur), std::move(hr), std::move(degs)};
}

/// Two-sided inverse of a unimodular matrix, read off as the transform that
/// brings it to its Hermite form (which must be the identity). Fine for small
/// inputs; inverse_unimodular in linsys.hpp scales to larger ones.
inline OreMatrix inverse_unimodular_elimination(const OreMatrix& u) {
  if (!u.is_square()) throw ShapeError("inverse_unimodular requires a square matrix");
  try {
    HermiteResult r = hermite_elimination(u);
    if (!r.H.is_identity()) throw NotUnimodular("Hermite form of the matrix is not the identity");
    return std::move(r.U);
  } catch (const RankDeficient& e) {
    throw NotUnimodular(std::string("matrix is not unimodular: ") + e.what());
  }
}

}  // namespace oreherm
