#pragma once

// The differential polynomial ring Q(t)[D; delta]. Elements are written with
// coefficients to the left of D and multiply through D a = a D + delta(a).

#include <cstddef>
#include <tuple>
#include <utility>
#include <vector>

#include "oreherm/field.hpp"

namespace oreherm {

class OrePoly {
 public:
  OrePoly() = default;
  explicit OrePoly(Derivation d) : derivation_(d) {}
  OrePoly(RatFun c, Derivation d = Derivation::standard) : derivation_(d) {  // NOLINT
    if (!c.is_zero()) coeffs_.push_back(std::move(c));
  }
  OrePoly(std::vector<RatFun> coeffs, Derivation d = Derivation::standard)
      : coeffs_(std::move(coeffs)), derivation_(d) {
    trim();
  }

  /// c * D^k
  static OrePoly term(RatFun c, std::size_t k, Derivation d = Derivation::standard) {
    if (c.is_zero()) return OrePoly(d);
    std::vector<RatFun> v(k + 1);
    v[k] = std::move(c);
    return OrePoly(std::move(v), d);
  }
  static OrePoly D(std::size_t k = 1, Derivation d = Derivation::standard) {
    return term(RatFun(1), k, d);
  }
  static OrePoly one(Derivation d = Derivation::standard) { return OrePoly(RatFun(1), d); }

  Derivation derivation() const { return derivation_; }
  const std::vector<RatFun>& coeffs() const { return coeffs_; }
  RatFun coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : RatFun(); }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back().is_one(); }
  /// Degree-0 nonzero elements are exactly the units of the ring.
  bool is_unit() const { return coeffs_.size() == 1; }
  const RatFun& lc() const { return coeffs_.back(); }

  Degree deg_D() const {
    return coeffs_.empty() ? kMinusInfinity : Degree(coeffs_.size() - 1);
  }
  Degree deg_t() const {
    Degree m = kMinusInfinity;
    for (const auto& c : coeffs_) m = std::max(m, c.deg_t());
    return m;
  }
  bool has_polynomial_coeffs() const {
    for (const auto& c : coeffs_)
      if (!c.is_polynomial()) return false;
    return true;
  }

  OrePoly operator-() const {
    OrePoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend OrePoly operator+(const OrePoly& a, const OrePoly& b) {
    check_same(a, b);
    OrePoly r = a.coeffs_.size() >= b.coeffs_.size() ? a : b;
    const OrePoly& s = a.coeffs_.size() >= b.coeffs_.size() ? b : a;
    for (std::size_t i = 0; i < s.coeffs_.size(); ++i) r.coeffs_[i] += s.coeffs_[i];
    r.trim();
    return r;
  }
  friend OrePoly operator-(const OrePoly& a, const OrePoly& b) { return a + (-b); }
  OrePoly& operator+=(const OrePoly& o) { return *this = *this + o; }
  OrePoly& operator-=(const OrePoly& o) { return *this = *this - o; }

  /// Left multiplication by a field element: c * sum f_i D^i = sum (c f_i) D^i.
  OrePoly left_scaled(const RatFun& c) const {
    if (c.is_zero()) return OrePoly(derivation_);
    OrePoly r = *this;
    for (auto& x : r.coeffs_) x = c * x;
    return r;
  }

  /// D * f = sum f_i D^{i+1} + sum delta(f_i) D^i
  OrePoly shifted() const {
    if (is_zero()) return *this;
    std::vector<RatFun> r(coeffs_.size() + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      r[i + 1] += coeffs_[i];
      r[i] += coeffs_[i].derivative(derivation_);
    }
    return OrePoly(std::move(r), derivation_);
  }

  /// c * D^k * this
  OrePoly shifted_by(const RatFun& c, std::size_t k) const {
    OrePoly r = *this;
    for (std::size_t i = 0; i < k; ++i) r = r.shifted();
    return r.left_scaled(c);
  }

  friend OrePoly operator*(const OrePoly& f, const OrePoly& g) {
    check_same(f, g);
    if (f.is_zero() || g.is_zero()) return OrePoly(f.derivation_);
    // Sum over i of f_i * (D^i g), reusing D^i g from the previous power.
    std::vector<RatFun> acc(f.coeffs_.size() + g.coeffs_.size() - 1);
    OrePoly power = g;
    for (std::size_t i = 0; i < f.coeffs_.size(); ++i) {
      if (i > 0) power = power.shifted();
      const RatFun& fi = f.coeffs_[i];
      if (fi.is_zero()) continue;
      for (std::size_t j = 0; j < power.coeffs_.size(); ++j)
        if (!power.coeffs_[j].is_zero()) acc[j] += fi * power.coeffs_[j];
    }
    return OrePoly(std::move(acc), f.derivation_);
  }
  OrePoly& operator*=(const OrePoly& o) { return *this = *this * o; }

  friend bool operator==(const OrePoly& a, const OrePoly& b) {
    return a.derivation_ == b.derivation_ && a.coeffs_ == b.coeffs_;
  }

  OrePoly monic() const {
    if (is_zero() || lc().is_one()) return *this;
    return left_scaled(lc().inverse());
  }

  static void check_same(const OrePoly& a, const OrePoly& b) {
    if (a.derivation_ != b.derivation_) throw DerivationMismatch();
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::vector<RatFun> coeffs_;
  Derivation derivation_ = Derivation::standard;
};

inline OrePoly ore_mul(const OrePoly& f, const OrePoly& g) { return f * g; }

inline std::pair<Degree, Degree> ore_deg(const OrePoly& f) { return {f.deg_D(), f.deg_t()}; }

/// [D f, D^2 f, ..., D^m f], each obtained from the previous by one shift.
inline std::vector<OrePoly> shift_powers(const OrePoly& f, std::size_t m) {
  if (m == 0) throw Error("shift_powers: m must be at least 1");
  std::vector<OrePoly> out;
  out.reserve(m);
  OrePoly cur = f;
  for (std::size_t k = 1; k <= m; ++k) {
    cur = cur.shifted();
    out.push_back(cur);
  }
  return out;
}

struct DivRem {
  OrePoly quotient;
  OrePoly remainder;
};

/// Right division f = q g + r with deg_D r < deg_D g.
inline DivRem right_divrem(const OrePoly& f, const OrePoly& g) {
  OrePoly::check_same(f, g);
  if (g.is_zero()) throw DivisionByZero();
  const Derivation der = f.derivation();
  const Degree dg = g.deg_D();
  const RatFun inv_lc = g.lc().inverse();
  std::vector<RatFun> q;
  OrePoly r = f;
  // D^k g keeps the leading coefficient of g, so each step cancels lc(r).
  std::vector<OrePoly> powers{g};
  while (!r.is_zero() && r.deg_D() >= dg) {
    const std::size_t k = std::size_t(r.deg_D() - dg);
    while (powers.size() <= k) powers.push_back(powers.back().shifted());
    const RatFun c = r.lc() * inv_lc;
    if (q.size() <= k) q.resize(k + 1);
    q[k] = c;
    r -= powers[k].left_scaled(c);
  }
  return {OrePoly(std::move(q), der), std::move(r)};
}

struct GcrdResult {
  OrePoly g;  ///< monic gcrd, or zero when both inputs are zero
  OrePoly u;
  OrePoly v;
  /// Cofactors of the final zero remainder: s f + t h = 0. They generate
  /// the annihilating relation used for the lclm.
  OrePoly s;
  OrePoly t;
};

/// Right extended Euclidean scheme: u f + v h = g with g = gcrd(f, h).
inline GcrdResult gcrd_extended(const OrePoly& f, const OrePoly& h) {
  OrePoly::check_same(f, h);
  const Derivation der = f.derivation();
  OrePoly r0 = f, r1 = h;
  OrePoly u0 = OrePoly::one(der), v0(der);
  OrePoly u1(der), v1 = OrePoly::one(der);
  while (!r1.is_zero()) {
    DivRem qr = right_divrem(r0, r1);
    OrePoly u2 = u0 - qr.quotient * u1;
    OrePoly v2 = v0 - qr.quotient * v1;
    if (!qr.remainder.is_zero() && !qr.remainder.is_monic()) {
      // Monic remainders keep the coefficients from swelling.
      const RatFun inv = qr.remainder.lc().inverse();
      qr.remainder = qr.remainder.left_scaled(inv);
      u2 = u2.left_scaled(inv);
      v2 = v2.left_scaled(inv);
    }
    r0 = std::move(r1);
    r1 = std::move(qr.remainder);
    u0 = std::move(u1);
    v0 = std::move(v1);
    u1 = std::move(u2);
    v1 = std::move(v2);
  }
  if (r0.is_zero()) return {r0, u0, v0, u1, v1};
  const RatFun inv = r0.lc().inverse();
  return {r0.left_scaled(inv), u0.left_scaled(inv), v0.left_scaled(inv), u1, v1};
}

inline OrePoly gcrd(const OrePoly& f, const OrePoly& h) { return gcrd_extended(f, h).g; }

struct LclmResult {
  OrePoly l;
  OrePoly s;
  OrePoly t;
};

/// Monic least common left multiple l = s f = -t h.
inline LclmResult lclm(const OrePoly& f, const OrePoly& h) {
  if (f.is_zero() || h.is_zero()) throw ZeroOperand("lclm of a zero operand");
  GcrdResult e = gcrd_extended(f, h);
  // e.s f + e.t h = 0, and e.s has degree deg h - deg gcrd.
  OrePoly l = e.s * f;
  const RatFun inv = l.lc().inverse();
  return {l.left_scaled(inv), e.s.left_scaled(inv), e.t.left_scaled(inv)};
}

}  // namespace oreherm
