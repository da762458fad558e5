#pragma once

// Fixtures and independent reference computations shared by the tests.

#include <string>
#include <vector>

#include "oreherm/oreherm.hpp"

namespace oreherm::testing {

inline OreMatrix example_matrix() {
  return parse_matrix(
      "3 3\n"
      "1 + (t+2)*D + D^2; 2 + (2*t+1)*D; 1 + (1+t)*D\n"
      "2*t + t^2 + t*D; 2 + 2*t + 2*t^2 + D; 4*t + t^2\n"
      "3 + t + (3+t)*D + D^2; 8 + 4*t + (5+3*t)*D + D^2; 7 + 8*t + (2+4*t)*D\n");
}

// Built coefficient by coefficient, without the parser.
inline OreMatrix example_hermite() {
  const auto t = RatFun::t();
  auto poly = [](std::vector<RatFun> c) { return OrePoly(std::move(c)); };
  const RatFun half(BigRat(1, 2));
  OreMatrix h(3, 3);
  h(0, 0) = poly({RatFun(2) + t, RatFun(1)});
  h(0, 1) = poly({RatFun(1) + RatFun(2) * t});
  h(0, 2) = poly({(RatFun(-2) + t + RatFun(2) * t * t) / (RatFun(2) * t),
                  -(RatFun(1) / (RatFun(2) * t))});
  h(1, 1) = poly({RatFun(2) + t, RatFun(1)});
  h(1, 2) = poly({RatFun(1) + RatFun(BigRat(7, 2)) * t, half});
  h(2, 2) = poly({RatFun(-2) / t, (RatFun(-1) + RatFun(2) * t + t * t) / t, RatFun(1)});
  return h;
}

inline RatFun random_ratfun(FixtureRng& rng, int deg = 2, long bound = 4) {
  TPoly num = random_tpoly(rng, int(rng.uniform(0, deg)), bound);
  TPoly den = random_tpoly(rng, int(rng.uniform(0, deg)), bound);
  if (den.is_zero()) den = TPoly(1);
  return RatFun(num, den);
}

inline RatFun random_nonzero_ratfun(FixtureRng& rng, int deg = 2, long bound = 4) {
  for (;;) {
    RatFun r = random_ratfun(rng, deg, bound);
    if (!r.is_zero()) return r;
  }
}

/// Ore polynomial with rational-function coefficients.
inline OrePoly random_rational_orepoly(FixtureRng& rng, int deg_d, Derivation der,
                                       int deg_t = 1) {
  std::vector<RatFun> c;
  for (int i = 0; i <= deg_d; ++i) c.push_back(random_ratfun(rng, deg_t, 3));
  if (c.back().is_zero()) c.back() = RatFun(1);
  return OrePoly(std::move(c), der);
}

/// Monic gcd by the textbook Euclidean algorithm over Q.
inline TPoly euclid_gcd(TPoly a, TPoly b) {
  while (!b.is_zero()) {
    TPoly r = divrem(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

/// f * g expanded from the commutation rule D^i c = sum_k binom(i, k) delta^k(c) D^(i-k).
inline OrePoly leibniz_product(const OrePoly& f, const OrePoly& g) {
  const Derivation der = f.derivation();
  std::vector<RatFun> out;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    for (std::size_t j = 0; j < g.coeffs().size(); ++j) {
      RatFun dk = g.coeffs()[j];
      BigInt binom = 1;
      for (std::size_t k = 0; k <= i; ++k) {
        const std::size_t power = i - k + j;
        if (out.size() <= power) out.resize(power + 1);
        out[power] += f.coeffs()[i] * RatFun(BigRat(binom)) * dk;
        dk = dk.derivative(der);
        binom = binom * BigInt(i - k) / BigInt(k + 1);
      }
    }
  }
  return OrePoly(std::move(out), der);
}

}  // namespace oreherm::testing
