#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncdiff/scalar.hpp"

namespace ncdiff {

/// Commutative polynomial in named variables with exact coefficients.
class Poly {
 public:
  /// Variable name -> positive exponent.
  using Monomial = std::map<std::string, unsigned>;
  using TermMap = std::map<Monomial, Scalar>;

  Poly() = default;
  Poly(const Scalar& c) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
  }
  Poly(int c) : Poly(Scalar(c)) {}

  static Poly var(const std::string& name) {
    Poly p;
    p.terms_.emplace(Monomial{{name, 1}}, Scalar(1));
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of the given monomial.
  Scalar coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  /// Total degree; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
      int s = 0;
      for (const auto& [v, e] : m) s += static_cast<int>(e);
      d = std::max(d, s);
    }
    return d;
  }

  Poly operator-() const { return Scalar(-1) * *this; }

  friend Poly operator+(Poly a, const Poly& b) {
    for (const auto& [m, c] : b.terms_) a.accumulate(m, c);
    return a;
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Scalar& s, Poly a) {
    if (s.is_zero()) return {};
    for (auto& [m, c] : a.terms_) c *= s;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma;
        for (const auto& [v, e] : mb) m[v] += e;
        out.accumulate(m, ca * cb);
      }
    return out;
  }
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  friend bool operator==(const Poly&, const Poly&) = default;

  Poly pow(unsigned n) const {
    Poly out(1);
    for (unsigned i = 0; i < n; ++i) out *= *this;
    return out;
  }

  Poly derivative(const std::string& v) const {
    Poly out;
    for (const auto& [m, c] : terms_) {
      auto it = m.find(v);
      if (it == m.end()) continue;
      Monomial d = m;
      const unsigned e = it->second;
      if (e == 1)
        d.erase(v);
      else
        d[v] = e - 1;
      out.accumulate(d, c * Scalar(static_cast<long>(e)));
    }
    return out;
  }

  /// Replaces each listed variable by a polynomial; others stay symbolic.
  Poly compose(const std::map<std::string, Poly>& subst) const {
    Poly out;
    for (const auto& [m, c] : terms_) {
      Poly t(c);
      for (const auto& [v, e] : m) {
        auto it = subst.find(v);
        t *= it == subst.end() ? var(v).pow(e) : it->second.pow(e);
      }
      out += t;
    }
    return out;
  }

  /// Value at a point; every variable must be assigned.
  Scalar evaluate(const std::map<std::string, Scalar>& at) const {
    Scalar total;
    for (const auto& [m, c] : terms_) {
      Scalar t = c;
      for (const auto& [v, e] : m) {
        auto it = at.find(v);
        if (it == at.end()) throw std::invalid_argument("Poly::evaluate: no value for '" + v + "'");
        for (unsigned i = 0; i < e; ++i) t *= it->second;
      }
      total += t;
    }
    return total;
  }

  std::string str() const {
    std::vector<std::pair<Scalar, std::string>> parts;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      std::string body;
      for (const auto& [v, e] : it->first) {
        if (!body.empty()) body += "*";
        body += v;
        if (e > 1) body += "^" + std::to_string(e);
      }
      parts.emplace_back(it->second, body);
    }
    return format_linear_combination(parts);
  }

  /// Infix grammar: + - * / ^ (non-negative integer exponents), parentheses,
  /// rational literals and identifiers. Division is by constants only.
  static Poly parse(std::string_view text);

 private:
  void accumulate(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  TermMap terms_;
};

class PolyParseError : public std::invalid_argument {
 public:
  PolyParseError(const std::string& msg, std::size_t column)
      : std::invalid_argument(msg + " at column " + std::to_string(column)), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw PolyParseError(msg, pos_ + 1); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly p = term();
    while (true) {
      if (eat('+'))
        p += term();
      else if (eat('-'))
        p -= term();
      else
        return p;
    }
  }

  Poly term() {
    Poly p = unary();
    while (true) {
      if (eat('*')) {
        p *= unary();
      } else if (eat('/')) {
        const std::size_t at = pos_;
        Poly d = unary();
        if (d.degree() > 0 || d.is_zero()) {
          pos_ = at;
          fail("division by a non-constant or zero");
        }
        p = d.coeff({}).inverse() * p;
      } else {
        return p;
      }
    }
  }

  Poly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = primary();
    if (eat('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an exponent");
      return base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }

  Poly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Poly(Scalar::parse_literal(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return Poly::var(std::string(s_.substr(start, pos_ - start)));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly Poly::parse(std::string_view text) { return detail::PolyParser(text).parse(); }

}  // namespace ncdiff
