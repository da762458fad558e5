#pragma once

// Exact arithmetic in Q[t] and the rational function field Q(t), together
// with the derivations used to twist the operator ring.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "oreherm/errors.hpp"

namespace oreherm {

using BigInt = mpz_class;
/// Arbitrary precision rational; GMP keeps it reduced with a positive
/// denominator after every arithmetic operation.
using BigRat = mpq_class;

/// Degree with a sentinel for the zero element, ordered below every integer.
using Degree = int;
inline constexpr Degree kMinusInfinity = std::numeric_limits<int>::min();

constexpr Degree degree_sum(Degree a, Degree b) {
  if (a == kMinusInfinity || b == kMinusInfinity) return kMinusInfinity;
  return a + b;
}

/// Dense univariate polynomial over Q; coeffs[i] multiplies t^i.
class TPoly {
 public:
  TPoly() = default;
  TPoly(long c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) coeffs_.emplace_back(c);
  }
  TPoly(const BigRat& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) coeffs_.push_back(c);
  }
  explicit TPoly(std::vector<BigRat> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
  }
  TPoly(std::initializer_list<long> coeffs) {
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
  }

  static TPoly monomial(const BigRat& c, std::size_t power) {
    if (c == 0) return {};
    std::vector<BigRat> v(power + 1);
    v[power] = c;
    return TPoly(std::move(v));
  }
  static TPoly t() { return monomial(1, 1); }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  bool is_constant() const { return coeffs_.size() <= 1; }
  Degree degree() const {
    return coeffs_.empty() ? kMinusInfinity : Degree(coeffs_.size() - 1);
  }
  const std::vector<BigRat>& coeffs() const { return coeffs_; }
  BigRat coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : BigRat(0);
  }
  const BigRat& lc() const { return coeffs_.back(); }

  TPoly operator-() const {
    TPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  TPoly& operator+=(const TPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  TPoly& operator-=(const TPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
  friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
  friend TPoly operator*(const TPoly& a, const TPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigRat> r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return TPoly(std::move(r));
  }
  TPoly& operator*=(const TPoly& o) { return *this = *this * o; }

  TPoly scaled(const BigRat& c) const {
    if (c == 0) return {};
    TPoly r = *this;
    for (auto& x : r.coeffs_) x *= c;
    return r;
  }

  TPoly monic() const {
    if (is_zero() || lc() == 1) return *this;
    return scaled(1 / lc());
  }

  /// Euclidean division over Q; throws on a zero divisor.
  friend std::pair<TPoly, TPoly> divrem(const TPoly& a, const TPoly& b) {
    if (b.is_zero()) throw DivisionByZero();
    if (a.degree() < b.degree()) return {TPoly{}, a};
    std::vector<BigRat> rem = a.coeffs_;
    std::vector<BigRat> quo(a.coeffs_.size() - b.coeffs_.size() + 1);
    const BigRat inv_lc = 1 / b.lc();
    const std::size_t db = b.coeffs_.size() - 1;
    for (std::size_t k = quo.size(); k-- > 0;) {
      const BigRat c = rem[k + db] * inv_lc;
      quo[k] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= c * b.coeffs_[j];
    }
    rem.resize(db);
    return {TPoly(std::move(quo)), TPoly(std::move(rem))};
  }

  /// Quotient of an exact division; the remainder is assumed to be zero.
  friend TPoly exact_div(const TPoly& a, const TPoly& b) {
    if (b.is_one()) return a;
    return divrem(a, b).first;
  }

  TPoly derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<BigRat> r(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) r[i - 1] = coeffs_[i] * long(i);
    return TPoly(std::move(r));
  }

  /// t * d/dt, the Euler derivation on Q[t].
  TPoly euler_derivative() const {
    std::vector<BigRat> r(coeffs_.size());
    for (std::size_t i = 1; i < coeffs_.size(); ++i) r[i] = coeffs_[i] * long(i);
    return TPoly(std::move(r));
  }

  friend bool operator==(const TPoly& a, const TPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<BigRat> coeffs_;
};

namespace detail {

using ZPoly = std::vector<BigInt>;

inline void ztrim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline BigInt zcontent(const ZPoly& p) {
  BigInt g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

inline void make_primitive(ZPoly& p) {
  const BigInt g = zcontent(p);
  if (g > 1)
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// Scale a Q[t] polynomial to a primitive Z[t] polynomial.
inline ZPoly primitive_integer(const TPoly& a) {
  BigInt l = 1;
  for (const auto& c : a.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  ZPoly r;
  r.reserve(a.coeffs().size());
  for (const auto& c : a.coeffs()) {
    BigInt v = l / c.get_den();
    r.push_back(v * c.get_num());
  }
  make_primitive(r);
  return r;
}

// Pseudo-remainder of a by b over Z: lc(b)^k a = q b + r.
// prem(a, b) = lc(b)^(deg a - deg b + 1) a mod b, computed exactly.
inline ZPoly pseudo_rem(ZPoly a, const ZPoly& b) {
  const std::size_t db = b.size() - 1;
  const BigInt& lb = b.back();
  if (a.size() - 1 < db) return a;
  std::size_t e = a.size() - db;
  while (!a.empty() && a.size() - 1 >= db) {
    const BigInt la = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (auto& c : a) c *= lb;
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] -= la * b[j];
    ztrim(a);
    --e;
  }
  if (e > 0 && !a.empty()) {
    BigInt m;
    mpz_pow_ui(m.get_mpz_t(), lb.get_mpz_t(), e);
    for (auto& c : a) c *= m;
  }
  return a;
}

// Arithmetic modulo the Mersenne prime 2^61 - 1.
inline constexpr std::uint64_t kGcdPrime = (std::uint64_t(1) << 61) - 1;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return std::uint64_t((unsigned __int128)a * b % kGcdPrime);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mulmod(a, a))
    if (e & 1) r = mulmod(r, a);
  return r;
}

// Degree of gcd(a mod p, b mod p); an upper bound on the degree of the
// gcd over Q whenever p divides neither leading coefficient.
inline std::size_t modular_gcd_degree(const ZPoly& a, const ZPoly& b) {
  auto reduce = [](const ZPoly& z) {
    std::vector<std::uint64_t> r(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) r[i] = mpz_fdiv_ui(z[i].get_mpz_t(), kGcdPrime);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  };
  std::vector<std::uint64_t> x = reduce(a), y = reduce(b);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    const std::uint64_t inv = powmod(y.back(), kGcdPrime - 2);
    while (x.size() >= y.size()) {
      const std::uint64_t c = mulmod(x.back(), inv);
      const std::size_t shift = x.size() - y.size();
      for (std::size_t j = 0; j < y.size(); ++j)
        x[shift + j] = (x[shift + j] + kGcdPrime - mulmod(c, y[j])) % kGcdPrime;
      while (!x.empty() && x.back() == 0) x.pop_back();
    }
    std::swap(x, y);
  }
  return x.empty() ? 0 : x.size() - 1;
}

}  // namespace detail

/// Monic gcd in Q[t]; gcd(0, 0) = 0. Runs a primitive remainder sequence
/// over Z[t] to keep coefficient growth in check.
inline TPoly poly_gcd(const TPoly& a, const TPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return TPoly(1);
  detail::ZPoly x = detail::primitive_integer(a);
  detail::ZPoly y = detail::primitive_integer(b);
  if (mpz_fdiv_ui(x.back().get_mpz_t(), detail::kGcdPrime) != 0 &&
      mpz_fdiv_ui(y.back().get_mpz_t(), detail::kGcdPrime) != 0 &&
      detail::modular_gcd_degree(x, y) == 0)
    return TPoly(1);
  if (x.size() < y.size()) std::swap(x, y);
  // Subresultant remainder sequence: every division below is exact.
  BigInt g = 1, h = 1;
  while (true) {
    const std::size_t delta = x.size() - y.size();
    detail::ZPoly r = detail::pseudo_rem(x, y);
    if (r.empty()) break;
    if (r.size() == 1) return TPoly(1);
    BigInt div;
    mpz_pow_ui(div.get_mpz_t(), h.get_mpz_t(), delta);
    div *= g;
    for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), div.get_mpz_t());
    x = std::move(y);
    y = std::move(r);
    g = x.back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      BigInt num, den;
      mpz_pow_ui(num.get_mpz_t(), g.get_mpz_t(), delta);
      mpz_pow_ui(den.get_mpz_t(), h.get_mpz_t(), delta - 1);
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
  }
  detail::make_primitive(y);
  std::vector<BigRat> q;
  q.reserve(y.size());
  for (const auto& c : y) q.emplace_back(c);
  return TPoly(std::move(q)).monic();
}

enum class Derivation { standard, euler };

inline const char* to_string(Derivation d) {
  return d == Derivation::standard ? "standard" : "euler";
}

/// Element of Q(t) kept as num/den with gcd(num, den) = 1 and den monic.
class RatFun {
 public:
  RatFun() : den_(1) {}
  RatFun(long c) : num_(c), den_(1) {}              // NOLINT
  RatFun(const BigRat& c) : num_(c), den_(1) {}     // NOLINT
  RatFun(TPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT
  RatFun(TPoly num, TPoly den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }

  static RatFun t() { return RatFun(TPoly::t()); }

  const TPoly& num() const { return num_; }
  const TPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }

  RatFun operator-() const {
    RatFun r = *this;
    r.num_ = -r.num_;
    return r;
  }

  RatFun inverse() const {
    if (is_zero()) throw DivisionByZero();
    return make_monic_den(den_, num_);
  }

  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_.is_one() && b.den_.is_one()) return RatFun::raw(a.num_ + b.num_, TPoly(1));
    if (a.den_ == b.den_) {
      TPoly n = a.num_ + b.num_;
      if (n.is_zero()) return {};
      const TPoly g = poly_gcd(n, a.den_);
      return RatFun::raw(exact_div(n, g), exact_div(a.den_, g));
    }
    // Henrici: only the common part of the denominators can cancel.
    const TPoly g = poly_gcd(a.den_, b.den_);
    const TPoly bd = exact_div(b.den_, g);
    const TPoly ad = exact_div(a.den_, g);
    TPoly n = a.num_ * bd + b.num_ * ad;
    if (n.is_zero()) return {};
    TPoly d = a.den_ * bd;
    if (!g.is_one()) {
      const TPoly h = poly_gcd(n, g);
      n = exact_div(n, h);
      d = exact_div(d, h);
    }
    return RatFun::raw(std::move(n), std::move(d));
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_.is_one() && b.den_.is_one()) return RatFun::raw(a.num_ * b.num_, TPoly(1));
    const TPoly g1 = poly_gcd(a.num_, b.den_);
    const TPoly g2 = poly_gcd(b.num_, a.den_);
    return RatFun::raw(exact_div(a.num_, g1) * exact_div(b.num_, g2),
                       exact_div(a.den_, g2) * exact_div(b.den_, g1));
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inverse(); }
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

  friend bool operator==(const RatFun& a, const RatFun& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// max(deg num, deg den); the zero function has degree minus infinity.
  Degree deg_t() const {
    if (is_zero()) return kMinusInfinity;
    return std::max(num_.degree(), den_.degree());
  }

  RatFun derivative(Derivation kind) const {
    if (is_zero()) return {};
    auto delta = [kind](const TPoly& p) {
      return kind == Derivation::standard ? p.derivative() : p.euler_derivative();
    };
    if (den_.is_one()) return RatFun::raw(delta(num_), TPoly(1));
    // With g = gcd(q, q'), (p/q)' = (p' q/g - p q'/g) / (q q/g) is already
    // reduced: every prime of q keeps exactly one more power in the
    // denominator than the numerator can absorb.
    const TPoly dq = den_.derivative();
    const TPoly g = poly_gcd(den_, dq);
    const TPoly qg = exact_div(den_, g);
    TPoly num = num_.derivative() * qg - num_ * exact_div(dq, g);
    TPoly den = den_ * qg;
    if (kind == Derivation::euler) {
      // t (p/q)': the only factor t can cancel is t itself.
      if (den.coeff(0) == 0)
        den = exact_div(den, TPoly::t());
      else
        num = num * TPoly::t();
    }
    return RatFun::raw(std::move(num), std::move(den));
  }

  /// True when the stored pair satisfies the canonical-form invariants.
  bool is_canonical() const {
    if (den_.is_zero() || den_.lc() != 1) return false;
    if (num_.is_zero()) return den_.is_one();
    return poly_gcd(num_, den_).is_one();
  }

 private:
  struct RawTag {};
  RatFun(RawTag, TPoly num, TPoly den) : num_(std::move(num)), den_(std::move(den)) {}

  // Coprime inputs; only the monic fix-up of the denominator remains.
  static RatFun raw(TPoly num, TPoly den) {
    if (num.is_zero()) return {};
    if (den.lc() != 1) {
      const BigRat inv = 1 / den.lc();
      return RatFun(RawTag{}, num.scaled(inv), den.scaled(inv));
    }
    return RatFun(RawTag{}, std::move(num), std::move(den));
  }
  static RatFun make_monic_den(TPoly num, TPoly den) { return raw(std::move(num), std::move(den)); }

  void normalize() {
    if (den_.is_zero()) throw DivisionByZero();
    if (num_.is_zero()) {
      den_ = TPoly(1);
      return;
    }
    const TPoly g = poly_gcd(num_, den_);
    *this = raw(exact_div(num_, g), exact_div(den_, g));
  }

  TPoly num_;
  TPoly den_;
};

inline RatFun rf_derivative(const RatFun& a, Derivation d) { return a.derivative(d); }
inline Degree rf_deg_t(const RatFun& a) { return a.deg_t(); }

/// Least common multiple, monic; lcm with zero is zero.
inline TPoly poly_lcm(const TPoly& a, const TPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return (exact_div(a, poly_gcd(a, b)) * b).monic();
}

}  // namespace oreherm
