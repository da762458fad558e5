#pragma once

// Seeded generators for test fixtures and the `random` CLI command. The
// mapping from generator output to values avoids std distributions so a
// seed yields the same matrix under every standard library.

#include <cstdint>
#include <random>

#include "oreherm/ftlinalg.hpp"
#include "oreherm/matrix.hpp"

namespace oreherm {

class FixtureRng {
 public:
  explicit FixtureRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(engine_() % span);
  }
  bool chance(unsigned percent) { return engine_() % 100 < percent; }

 private:
  std::mt19937_64 engine_;
};

/// Polynomial in t of degree <= deg_t with integer coefficients in
/// [-bound, bound]; each coefficient is nonzero with the given chance.
inline TPoly random_tpoly(FixtureRng& rng, int deg_t, long bound, unsigned density = 70) {
  std::vector<BigRat> c(std::size_t(deg_t) + 1);
  for (auto& x : c)
    if (rng.chance(density)) x = rng.uniform(-bound, bound);
  return TPoly(std::move(c));
}

inline OrePoly random_orepoly(FixtureRng& rng, int deg_d, int deg_t, long bound,
                              Derivation der = Derivation::standard, unsigned density = 70) {
  std::vector<RatFun> c(std::size_t(deg_d) + 1);
  for (auto& x : c) x = RatFun(random_tpoly(rng, deg_t, bound, density));
  return OrePoly(std::move(c), der);
}

/// Product of `steps` random elementary row operations applied to I_n.
inline OreMatrix random_unimodular(std::size_t n, std::size_t steps, std::uint64_t seed,
                                   Derivation der = Derivation::standard) {
  if (n == 0) throw ShapeError("random_unimodular: n must be positive");
  FixtureRng rng(seed);
  OreMatrix m = OreMatrix::identity(n, der);
  static const long kScales[][2] = {{-1, 1}, {2, 1}, {-1, 2}, {3, 1}, {1, 3}};
  for (std::size_t s = 0; s < steps; ++s) {
    const long kind = n == 1 ? 2 : rng.uniform(0, 5);
    if (kind <= 2 && n > 1) {
      // transvection row_i += f row_j, the most frequent step
      const auto i = std::size_t(rng.uniform(0, long(n) - 1));
      auto j = std::size_t(rng.uniform(0, long(n) - 2));
      if (j >= i) ++j;
      OrePoly f = random_orepoly(rng, 1, 1, 2, der);
      if (f.is_zero()) f = OrePoly::one(der);
      m.add_row_multiple(i, f, j);
    } else if (kind == 3) {
      const auto i = std::size_t(rng.uniform(0, long(n) - 1));
      const auto j = std::size_t(rng.uniform(0, long(n) - 1));
      m.swap_rows(i, j);
    } else {
      const auto i = std::size_t(rng.uniform(0, long(n) - 1));
      const auto& q = kScales[rng.uniform(0, 4)];
      RatFun c(BigRat(q[0]) / q[1]);
      if (rng.chance(25)) c *= RatFun(TPoly{rng.uniform(0, 2), 1});  // t + c is a unit too
      m.scale_row(i, c);
    }
  }
  return m;
}

/// True when the leading row-coefficient matrix is nonsingular over Q(t).
/// Such a matrix is row reduced and hence has full row rank.
inline bool is_row_reduced(const OreMatrix& a) {
  if (!a.is_square()) return false;
  const std::size_t n = a.rows();
  FtMatrix lead(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Degree r = kMinusInfinity;
    for (std::size_t j = 0; j < n; ++j) r = std::max(r, a(i, j).deg_D());
    if (r == kMinusInfinity) return false;
    for (std::size_t j = 0; j < n; ++j)
      if (a(i, j).deg_D() == r) lead(i, j) = a(i, j).lc();
  }
  return rank(lead) == n;
}

/// Random matrix with deg_D <= deg_d and polynomial coefficients of
/// deg_t <= deg_t. Candidates without full row rank are redrawn.
inline OreMatrix random_full_rank(std::size_t n, int deg_d, int deg_t, std::uint64_t seed,
                                  Derivation der = Derivation::standard, long bound = 3) {
  if (n == 0) throw ShapeError("random_full_rank: n must be positive");
  FixtureRng rng(seed);
  for (;;) {
    OreMatrix a(n, n, der);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = random_orepoly(rng, deg_d, deg_t, bound, der);
    if (is_row_reduced(a)) return a;
    try {
      hermite_elimination(a);
      return a;
    } catch (const RankDeficient&) {
    }
  }
}

}  // namespace oreherm
