#pragma once

// Independent checks of a claimed Hermite decomposition U A = H.

#include <string>
#include <vector>

#include "oreherm/linsys.hpp"
#include "oreherm/matrix.hpp"

namespace oreherm {

struct VerificationReport {
  bool product_ok = false;
  bool shape_ok = false;
  bool unimodular_ok = false;
  bool degree_bounds_ok = false;
  std::vector<std::string> details;

  bool passed() const { return product_ok && shape_ok && unimodular_ok && degree_bounds_ok; }
};

inline VerificationReport verify_hermite(const OreMatrix& a, const OreMatrix& u,
                                         const OreMatrix& h) {
  VerificationReport rep;
  const std::size_t n = a.rows();
  if (!a.is_square() || u.rows() != n || u.cols() != n || h.rows() != n || h.cols() != n) {
    rep.details.push_back("shape: A, U and H must all be n x n with the same n");
    return rep;
  }
  if (a.derivation() != u.derivation() || a.derivation() != h.derivation()) {
    rep.details.push_back("derivation: A, U and H use different derivations");
    return rep;
  }

  rep.product_ok = ore_mat_mul(u, a) == h;
  rep.details.push_back(rep.product_ok ? "product: U*A equals H" : "product: U*A differs from H");

  rep.shape_ok = is_hermite(h);
  rep.details.push_back(rep.shape_ok ? "shape: H is in Hermite form"
                                     : "shape: H is not in Hermite form");

  try {
    inverse_unimodular(u);
    rep.unimodular_ok = true;
    rep.details.push_back("unimodular: U has a two-sided inverse");
  } catch (const NotUnimodular& e) {
    rep.details.push_back(std::string("unimodular: ") + e.what());
  }

  // deg H <= n d and deg U <= (n - 1) d for d = deg_D A
  const Degree d = std::max<Degree>(a.deg_D(), 0);
  const Degree h_cap = Degree(n) * d, u_cap = Degree(n - 1) * d;
  rep.degree_bounds_ok = h.deg_D() <= h_cap && u.deg_D() <= u_cap;
  rep.details.push_back("degrees: deg H = " + std::to_string(std::max<Degree>(h.deg_D(), 0)) +
                        " (bound " + std::to_string(h_cap) + "), deg U = " +
                        std::to_string(std::max<Degree>(u.deg_D(), 0)) + " (bound " +
                        std::to_string(u_cap) + ")");
  return rep;
}

}  // namespace oreherm
