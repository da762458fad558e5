#pragma once

// Hermite form through linear systems over Q(t).
//
// For a candidate diagonal degree profile (d_1, ..., d_n) the matrix
// equation P A = G, with G upper triangular, monic of degree d_i on the
// diagonal and reduced above it, is linear in the D-coefficients of P and G.
// Row l of block (i, j) of Ahat is the coefficient vector of D^l A_ij, so
// the equation reads Phat Ahat = Ghat. The system is consistent exactly
// when d_i >= h_i for the true Hermite diagonal degrees h, and at d = h its
// solution is the Hermite pair itself.

#include <atomic>
#include <cmath>
#include <cstddef>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "oreherm/ftlinalg.hpp"
#include "oreherm/matrix.hpp"

namespace oreherm {

/// Per-row lcm of coefficient denominators, the left scalar that clears row i.
inline std::vector<TPoly> row_denominator_lcms(const OreMatrix& a) {
  std::vector<TPoly> out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    TPoly l(1);
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (const auto& c : a(i, j).coeffs())
        if (!c.is_polynomial()) l = poly_lcm(l, c.den());
    out.push_back(std::move(l));
  }
  return out;
}

/// Left-multiplies each row by the lcm of its denominators. The scaling is
/// a unit of the ring, so the Hermite form does not change.
inline OreMatrix clear_denominators(const OreMatrix& a) {
  OreMatrix out = a;
  const std::vector<TPoly> lcms = row_denominator_lcms(a);
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (!lcms[i].is_one()) out.scale_row(i, RatFun(lcms[i]));
  return out;
}

/// Slot of a Ghat coefficient.
enum class GSlot : int { zero = -1, one = -2 };

struct EncodedSystem {
  std::size_t n = 0;
  std::size_t d = 0;     ///< max deg_D of the entries of A
  std::size_t beta = 0;  ///< degree cap on the entries of P
  std::size_t mu = 0;    ///< beta + d, highest D-power in P A
  DegreeProfile profile;
  Derivation derivation = Derivation::standard;
  /// n(beta+1) x n(mu+1); row (j, l), column (k, m) holds the D^m
  /// coefficient of D^l A_jk.
  FtMatrix ahat;
  /// For each Ghat row i and column (k, m): pinned zero, pinned one, or
  /// the global index of an unknown.
  std::vector<std::vector<long>> g_layout;
  std::size_t p_unknowns = 0;  ///< n * n(beta+1), indices [0, p_unknowns)
  std::size_t g_unknowns = 0;  ///< indices [p_unknowns, p_unknowns + g_unknowns)

  std::size_t unknown_count() const { return p_unknowns + g_unknowns; }
  std::size_t equation_count() const { return n * ahat.cols(); }
  std::size_t p_index(std::size_t i, std::size_t j, std::size_t power) const {
    return (i * n + j) * (beta + 1) + power;
  }
  std::size_t ahat_row(std::size_t j, std::size_t power) const { return j * (beta + 1) + power; }
  std::size_t ahat_col(std::size_t k, std::size_t power) const { return k * (mu + 1) + power; }
};

/// Shape of Ahat for given n, d and profile maximum: n(beta+1) x n(beta+d+1).
inline std::pair<std::size_t, std::size_t> expected_ahat_shape(std::size_t n, std::size_t d,
                                                               std::size_t max_profile) {
  const std::size_t beta = (n - 1) * d + max_profile;
  return {n * (beta + 1), n * (beta + d + 1)};
}

namespace detail {

// Row (j, l), column (k, m): the D^m coefficient of D^l a_jk.
inline FtMatrix shift_matrix(const OreMatrix& a, std::size_t beta, std::size_t mu) {
  const std::size_t n = a.rows();
  FtMatrix out(n * (beta + 1), n * (mu + 1));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      if (a(j, k).is_zero()) continue;
      OrePoly shifted = a(j, k);
      for (std::size_t l = 0; l <= beta; ++l) {
        if (l > 0) shifted = shifted.shifted();
        const auto& cs = shifted.coeffs();
        for (std::size_t m = 0; m < cs.size(); ++m) out(j * (beta + 1) + l, k * (mu + 1) + m) = cs[m];
      }
    }
  return out;
}

}  // namespace detail

inline EncodedSystem build_system(const OreMatrix& a, const DegreeProfile& profile) {
  if (!a.is_square()) throw ShapeError("build_system requires a square matrix");
  const std::size_t n = a.rows();
  if (profile.size() != n) throw ShapeError("degree profile length differs from matrix size");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!a(i, j).has_polynomial_coeffs())
        throw NotCleared("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") has a non-polynomial coefficient");
  if (a.deg_D() == kMinusInfinity) throw RankDeficient("zero matrix");
  const auto d = std::size_t(a.deg_D());
  for (std::size_t i = 0; i < n; ++i)
    if (profile[i] < 0 || std::size_t(profile[i]) > n * d)
      throw Error("degree profile entry outside [0, n*d]");

  EncodedSystem s;
  s.n = n;
  s.d = d;
  s.profile = profile;
  s.derivation = a.derivation();
  s.beta = (n - 1) * d + std::size_t(profile.max());
  s.mu = s.beta + d;
  s.ahat = detail::shift_matrix(a, s.beta, s.mu);

  s.p_unknowns = n * n * (s.beta + 1);
  long next = long(s.p_unknowns);
  s.g_layout.assign(n, std::vector<long>(n * (s.mu + 1), long(GSlot::zero)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i; k < n; ++k) {
      // diagonal: monic of degree d_i; above it: degree below d_k
      const auto cap = std::size_t(profile[k]);
      for (std::size_t m = 0; m < cap; ++m) s.g_layout[i][s.ahat_col(k, m)] = next++;
      if (k == i) s.g_layout[i][s.ahat_col(k, cap)] = long(GSlot::one);
    }
  s.g_unknowns = std::size_t(next) - s.p_unknowns;
  return s;
}

/// The equations of row i of P A = G: unknowns are row i of Phat followed
/// by the unknown Ghat coefficients of row i.
struct RowSystem {
  FtMatrix matrix;
  std::vector<RatFun> rhs;
  std::vector<std::size_t> globals;  ///< local column -> global unknown index
};

inline RowSystem row_system(const EncodedSystem& s, std::size_t i) {
  const std::size_t width = s.n * (s.beta + 1);
  std::vector<std::size_t> globals;
  for (std::size_t c = 0; c < width; ++c) globals.push_back(s.p_index(i, 0, 0) + c);
  std::map<long, std::size_t> local_g;
  for (long slot : s.g_layout[i])
    if (slot >= 0) {
      local_g[slot] = globals.size();
      globals.push_back(std::size_t(slot));
    }
  RowSystem rs{FtMatrix(s.ahat.cols(), globals.size()), std::vector<RatFun>(s.ahat.cols()),
               std::move(globals)};
  for (std::size_t e = 0; e < s.ahat.cols(); ++e) {
    for (std::size_t c = 0; c < width; ++c) rs.matrix(e, c) = s.ahat(c, e);
    const long slot = s.g_layout[i][e];
    if (slot >= 0)
      rs.matrix(e, local_g[slot]) = RatFun(-1);
    else if (slot == long(GSlot::one))
      rs.rhs[e] = RatFun(1);
  }
  return rs;
}

/// Dimensions and solution size of one solved system, for logging.
struct SystemStats {
  std::size_t ahat_rows = 0;
  std::size_t ahat_cols = 0;
  std::size_t equations = 0;
  std::size_t unknowns = 0;
  Degree input_deg_t = 0;     ///< e, the largest t-degree in Ahat
  Degree solution_deg_t = 0;  ///< largest t-degree in the solution, if solved
  std::size_t max_row_unknowns = 0;
};

struct EncodedSolution {
  bool consistent = false;
  std::vector<RatFun> values;  ///< by global unknown index
  SystemStats stats;
};

inline EncodedSolution solve_system(const EncodedSystem& s, bool want_values) {
  EncodedSolution out;
  out.stats.ahat_rows = s.ahat.rows();
  out.stats.ahat_cols = s.ahat.cols();
  out.stats.equations = s.equation_count();
  out.stats.unknowns = s.unknown_count();
  out.stats.input_deg_t = std::max<Degree>(s.ahat.deg_t(), 0);
  out.stats.solution_deg_t = 0;
  if (want_values) out.values.assign(s.unknown_count(), RatFun());
  for (std::size_t i = 0; i < s.n; ++i) {
    const RowSystem rs = row_system(s, i);
    out.stats.max_row_unknowns = std::max(out.stats.max_row_unknowns, rs.globals.size());
    SolveOutcome r = solve_fraction_free(rs.matrix, rs.rhs);
    if (!r.consistent) return out;
    if (want_values)
      for (std::size_t c = 0; c < rs.globals.size(); ++c) {
        out.values[rs.globals[c]] = (*r.solution)[c];
        out.stats.solution_deg_t = std::max(out.stats.solution_deg_t, (*r.solution)[c].deg_t());
      }
  }
  out.consistent = true;
  return out;
}

inline bool probe_consistent(const OreMatrix& a, const DegreeProfile& profile) {
  return solve_system(build_system(a, profile), false).consistent;
}

struct LinsysStats {
  std::size_t probes = 0;
  std::size_t probe_budget = 0;
  DegreeProfile diag_degrees;
  SystemStats final_system;
  std::vector<SystemStats> probe_systems;
};

/// n (ceil(log2(nd + 1)) + 1)
inline std::size_t probe_budget(std::size_t n, std::size_t d) {
  std::size_t bits = 0;
  while ((std::size_t(1) << bits) < n * d + 1) ++bits;
  return n * (bits + 1);
}

/// Diagonal degrees of the Hermite form of a (polynomial coefficients, full
/// row rank). Each diagonal is found by binary search over [0, nd] with the
/// other diagonals held at nd. `jobs` > 1 runs the searches concurrently.
inline DegreeProfile search_degrees(const OreMatrix& a, LinsysStats* stats = nullptr,
                                    unsigned jobs = 1) {
  if (!a.is_square()) throw ShapeError("search_degrees requires a square matrix");
  if (a.deg_D() == kMinusInfinity) throw RankDeficient("zero matrix");
  const std::size_t n = a.rows();
  const auto d = std::size_t(a.deg_D());
  const auto cap = Degree(n * d);
  std::atomic<std::size_t> probes{0};
  std::mutex log_mutex;
  std::vector<SystemStats> logs;
  auto probe = [&](const DegreeProfile& p) {
    ++probes;
    EncodedSolution r = solve_system(build_system(a, p), false);
    std::lock_guard<std::mutex> lock(log_mutex);
    logs.push_back(r.stats);
    return r.consistent;
  };

  DegreeProfile top{std::vector<Degree>(n, cap)};
  if (!probe(top))
    throw RankDeficient("no consistent degree profile within the n*d bound; matrix is not of full row rank");

  auto search_one = [&](std::size_t i) {
    Degree lo = 0, hi = cap;
    DegreeProfile p = top;
    while (lo < hi) {
      const Degree mid = lo + (hi - lo) / 2;
      p[i] = mid;
      if (probe(p))
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  };

  DegreeProfile found{std::vector<Degree>(n, 0)};
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) found[i] = search_one(i);
  } else {
    for (std::size_t start = 0; start < n; start += jobs) {
      std::vector<std::future<Degree>> batch;
      for (std::size_t i = start; i < std::min(n, start + jobs); ++i)
        batch.push_back(std::async(std::launch::async, search_one, i));
      for (std::size_t k = 0; k < batch.size(); ++k) found[start + k] = batch[k].get();
    }
  }
  if (stats) {
    stats->probes = probes.load();
    stats->probe_budget = probe_budget(n, d);
    stats->diag_degrees = found;
    stats->probe_systems = std::move(logs);
  }
  return found;
}

/// Hermite form and transform of a square full-rank matrix via the linear
/// system at the minimal degree profile.
/// Solve P A = G at a fixed diagonal degree profile and decode (U, H).
/// Returns nothing when the system is inconsistent at that profile.
inline std::optional<HermiteResult> solve_at_profile(const OreMatrix& a, const DegreeProfile& h,
                                                     SystemStats* stats = nullptr) {
  const std::size_t n = a.rows();
  const Derivation der = a.derivation();
  const std::vector<TPoly> lcms = row_denominator_lcms(a);
  const EncodedSystem sys = build_system(clear_denominators(a), h);
  const EncodedSolution sol = solve_system(sys, true);
  if (stats) *stats = sol.stats;
  if (!sol.consistent) return std::nullopt;

  OreMatrix p(n, n, der), g(n, n, der);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<RatFun> pc(sys.beta + 1);
      for (std::size_t l = 0; l <= sys.beta; ++l) pc[l] = sol.values[sys.p_index(i, j, l)];
      p(i, j) = OrePoly(std::move(pc), der);
      std::vector<RatFun> gc(sys.mu + 1);
      for (std::size_t m = 0; m <= sys.mu; ++m) {
        const long slot = sys.g_layout[i][sys.ahat_col(j, m)];
        if (slot >= 0)
          gc[m] = sol.values[std::size_t(slot)];
        else if (slot == long(GSlot::one))
          gc[m] = RatFun(1);
      }
      g(i, j) = OrePoly(std::move(gc), der);
    }

  // P (C A) = G with C = diag(lcms), so U = P C.
  OreMatrix u = p;
  for (std::size_t j = 0; j < n; ++j) {
    if (lcms[j].is_one()) continue;
    const OrePoly c(RatFun(lcms[j]), der);
    for (std::size_t i = 0; i < n; ++i) u(i, j) = u(i, j) * c;
  }
  if (!(ore_mat_mul(u, a) == g)) throw Error("internal: decoded transform does not satisfy U A = H");
  if (!is_hermite(g)) throw Error("internal: decoded matrix is not in Hermite form");
  return HermiteResult{std::move(u), std::move(g), h};
}

/// Two-sided inverse of a unimodular matrix. Each row x of the inverse
/// solves x U = e_i; the degree cap on x grows from 0 until the row system
/// becomes consistent. A unimodular U of degree k has an inverse of degree
/// at most (n-1)k, so failing at that cap means U is not unimodular.
inline OreMatrix inverse_unimodular(const OreMatrix& u) {
  if (!u.is_square()) throw ShapeError("inverse_unimodular requires a square matrix");
  const std::size_t n = u.rows();
  const Derivation der = u.derivation();
  if (u.deg_D() == kMinusInfinity) throw NotUnimodular("zero matrix is not unimodular");
  const auto k = std::size_t(u.deg_D());
  const std::vector<TPoly> lcms = row_denominator_lcms(u);
  const OreMatrix cleared = clear_denominators(u);

  OreMatrix x(n, n, der);
  std::map<std::size_t, FtMatrix> shifts;
  for (std::size_t i = 0; i < n; ++i) {
    bool found = false;
    for (std::size_t beta = 0; beta <= (n - 1) * k && !found; ++beta) {
      const std::size_t mu = beta + k;
      auto it = shifts.find(beta);
      if (it == shifts.end()) it = shifts.emplace(beta, detail::shift_matrix(cleared, beta, mu)).first;
      const FtMatrix& s = it->second;
      std::vector<RatFun> rhs(s.cols());
      rhs[i * (mu + 1)] = RatFun(1);
      const SolveOutcome r = solve_fraction_free(s.transposed(), rhs);
      if (!r.consistent) continue;
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<RatFun> c(beta + 1);
        for (std::size_t l = 0; l <= beta; ++l) c[l] = (*r.solution)[j * (beta + 1) + l];
        // x (C U) = e_i gives the inverse row x C
        OrePoly e(std::move(c), der);
        if (!lcms[j].is_one()) e = e * OrePoly(RatFun(lcms[j]), der);
        x(i, j) = std::move(e);
      }
      found = true;
    }
    if (!found)
      throw NotUnimodular("row " + std::to_string(i) +
                          " has no left inverse within the degree bound; matrix is not unimodular");
  }
  if (!ore_mat_mul(u, x).is_identity())
    throw NotUnimodular("left inverse is not a right inverse; matrix is not unimodular");
  return x;
}

inline HermiteResult hermite_via_linsys(const OreMatrix& a, LinsysStats* stats = nullptr,
                                        unsigned jobs = 1) {
  if (!a.is_square()) throw ShapeError("Hermite form requires a square matrix");
  LinsysStats local;
  LinsysStats& st = stats ? *stats : local;
  const DegreeProfile h = search_degrees(clear_denominators(a), &st, jobs);
  auto r = solve_at_profile(a, h, &st.final_system);
  if (!r) throw Error("internal: system at the minimal degree profile is inconsistent");
  return std::move(*r);
}

}  // namespace oreherm
