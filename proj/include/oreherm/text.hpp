#pragma once

// Concrete syntax for differential polynomials and matrix instance files.
//
//   entry  := term (('+'|'-') term)*      e.g.  1 + (t+2)*D + D^2
//   coeffs := rational functions in t such as (-1 + 2*t + t^2)/(t)
//
// The parser accepts ordinary arithmetic over the ring (products are Ore
// products, so D*t reads as t*D + 1); division is only allowed by nonzero
// elements of Q(t). The printer emits ascending powers of D with every
// coefficient as a reduced fraction with monic denominator.

#include <cctype>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "oreherm/matrix.hpp"

namespace oreherm {

namespace detail {

class EntryParser {
 public:
  EntryParser(std::string_view text, Derivation der, std::size_t line, std::size_t column)
      : text_(text), der_(der), line_(line), col0_(column) {}

  OrePoly parse() {
    skip_ws();
    if (pos_ == text_.size()) fail("empty expression");
    OrePoly r = expr();
    skip_ws();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, col0_ + pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  OrePoly expr() {
    OrePoly acc(der_);
    bool first = true;
    for (;;) {
      bool negate = false;
      if (accept('-'))
        negate = true;
      else if (!accept('+') && !first)
        break;
      OrePoly t = term();
      acc = negate ? acc - t : acc + t;
      first = false;
    }
    return acc;
  }

  OrePoly term() {
    OrePoly acc = unary(true);
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * unary(true);
      } else if (c == '/') {
        ++pos_;
        const std::size_t at = pos_;
        const OrePoly den = unary(false);
        if (den.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        if (den.deg_D() > 0) {
          pos_ = at;
          fail("division by an expression containing D");
        }
        acc = acc * OrePoly(den.lc().inverse(), der_);
      } else if (c == 't' || c == 'D' || c == '(') {
        acc = acc * power(false);  // juxtaposition, as in 2t or 3(t+1)
      } else {
        return acc;
      }
    }
  }

  OrePoly unary(bool rational_literal) {
    if (accept('-')) return -unary(rational_literal);
    if (accept('+')) return unary(rational_literal);
    return power(rational_literal);
  }

  OrePoly power(bool rational_literal) {
    OrePoly base = primary(rational_literal);
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t at = pos_;
    const BigInt e = integer();
    if (e > 4096) {
      pos_ = at;
      fail("exponent too large");
    }
    OrePoly r = OrePoly::one(der_);
    for (long k = e.get_si(); k > 0; --k) r = r * base;
    return r;
  }

  BigInt integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  OrePoly primary(bool rational_literal) {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      OrePoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 't') {
      ++pos_;
      return OrePoly(RatFun::t(), der_);
    }
    if (c == 'D') {
      ++pos_;
      return OrePoly::D(1, der_);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      BigRat value(integer());
      // INT/INT directly at the start of a term is one rational literal.
      if (rational_literal) {
        const std::size_t save = pos_;
        if (accept('/') && std::isdigit(static_cast<unsigned char>(peek()))) {
          const std::size_t at = pos_;
          const BigInt den = integer();
          if (den == 0) {
            pos_ = at;
            fail("division by zero");
          }
          value /= BigRat(den);
        } else {
          pos_ = save;
        }
      }
      return OrePoly(RatFun(value), der_);
    }
    if (c == '\0') fail("unexpected end of expression");
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  Derivation der_;
  std::size_t line_;
  std::size_t col0_;
  std::size_t pos_ = 0;
};

inline std::string rational_text(const BigRat& q) { return q.get_str(); }

// coefficient * t^power with the sign folded into the coefficient
inline std::string monomial_text(const BigRat& c, std::size_t power) {
  if (power == 0) return rational_text(c);
  std::string tp = power == 1 ? "t" : "t^" + std::to_string(power);
  if (c == 1) return tp;
  if (c == -1) return "-" + tp;
  return rational_text(c) + "*" + tp;
}

inline std::string join_signed(const std::vector<std::string>& parts) {
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t k = 1; k < parts.size(); ++k) {
    if (parts[k][0] == '-')
      out += " - " + parts[k].substr(1);
    else
      out += " + " + parts[k];
  }
  return out;
}

inline std::size_t term_count(const TPoly& p) {
  std::size_t n = 0;
  for (const auto& c : p.coeffs()) n += c != 0;
  return n;
}

}  // namespace detail

/// Ascending powers of t, e.g. "-1 + 2*t + t^2".
inline std::string print_tpoly(const TPoly& p) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i)
    if (p.coeffs()[i] != 0) parts.push_back(detail::monomial_text(p.coeffs()[i], i));
  return detail::join_signed(parts);
}

inline std::string print_ratfun(const RatFun& r) {
  if (r.is_polynomial()) return print_tpoly(r.num());
  return "(" + print_tpoly(r.num()) + ")/(" + print_tpoly(r.den()) + ")";
}

inline std::string print_entry(const OrePoly& f) {
  std::vector<std::string> parts;
  for (std::size_t k = 0; k < f.coeffs().size(); ++k) {
    const RatFun& c = f.coeffs()[k];
    if (c.is_zero()) continue;
    if (k == 0) {
      parts.push_back(print_ratfun(c));
      continue;
    }
    const std::string dp = k == 1 ? "D" : "D^" + std::to_string(k);
    if (c.is_one()) {
      parts.push_back(dp);
    } else if (c == RatFun(-1)) {
      parts.push_back("-" + dp);
    } else if (c.is_polynomial() && detail::term_count(c.num()) == 1) {
      parts.push_back(print_tpoly(c.num()) + "*" + dp);
    } else if (c.is_polynomial()) {
      parts.push_back("(" + print_tpoly(c.num()) + ")*" + dp);
    } else {
      parts.push_back(print_ratfun(c) + "*" + dp);
    }
  }
  return detail::join_signed(parts);
}

inline OrePoly parse_entry(std::string_view text, Derivation d = Derivation::standard,
                           std::size_t line = 1, std::size_t column = 1) {
  return detail::EntryParser(text, d, line, column).parse();
}

inline std::string print_matrix(const OreMatrix& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols());
  if (m.derivation() == Derivation::euler) out += " euler";
  out += "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += "; ";
      out += print_entry(m(i, j));
    }
    out += "\n";
  }
  return out;
}

/// Reads one instance: a header "n m [euler|standard]" followed by n rows of
/// m ';'-separated entries. Blank lines and '#' comments are skipped.
inline OreMatrix parse_matrix(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, raw)) {
      ++line_no;
      const auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      out = raw;
      return true;
    }
    return false;
  };

  std::string header;
  if (!next_line(header)) throw ParseError("missing header line", line_no + 1, 1);
  std::istringstream hs(header);
  long n = 0, m = 0;
  std::string tag, extra;
  if (!(hs >> n >> m) || n <= 0 || m <= 0)
    throw ParseError("header must start with two positive integers", line_no, 1);
  Derivation der = Derivation::standard;
  if (hs >> tag) {
    if (tag == "euler")
      der = Derivation::euler;
    else if (tag != "standard")
      throw ParseError("unknown derivation '" + tag + "'", line_no, header.find(tag) + 1);
  }
  if (hs >> extra) throw ParseError("trailing text in header", line_no, header.find(extra) + 1);

  OreMatrix a(std::size_t(n), std::size_t(m), der);
  for (long i = 0; i < n; ++i) {
    std::string row;
    if (!next_line(row))
      throw ParseError("expected " + std::to_string(n) + " rows, found " + std::to_string(i),
                       line_no + 1, 1);
    std::size_t start = 0;
    for (long j = 0; j < m; ++j) {
      const std::size_t end = row.find(';', start);
      const bool last = j + 1 == m;
      if (!last && end == std::string::npos)
        throw ParseError("expected " + std::to_string(m) + " entries", line_no, row.size() + 1);
      if (last && end != std::string::npos)
        throw ParseError("too many entries in row", line_no, end + 1);
      const std::size_t stop = last ? row.size() : end;
      a(std::size_t(i), std::size_t(j)) =
          parse_entry(std::string_view(row).substr(start, stop - start), der, line_no, start + 1);
      start = stop + 1;
    }
  }
  std::string trailing;
  if (next_line(trailing)) throw ParseError("unexpected text after the last row", line_no, 1);
  return a;
}

inline OreMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix(in);
}

}  // namespace oreherm
