#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncdiff/leibniz.hpp"

namespace ncdiff {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        message_(msg),
        line_(line),
        column_(column) {}

  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_, column_;
};

/// Syntax tree of a Leibniz expression.
struct FormExpr {
  enum class Kind { scalar, symbol, sum, product, odot, delta, negate };

  Kind kind;
  Scalar value;
  std::string name;
  std::size_t power = 0;
  /// For sums: children with a sign each (+1 / -1).
  std::vector<FormExpr> children;
  std::vector<int> signs;
  std::size_t line = 1, column = 1;
};

namespace detail {

struct Token {
  enum class Kind { number, ident, delta, plus, minus, star, at, caret, lparen, rparen, end };
  Kind kind;
  std::string text;
  std::size_t power = 0;
  std::size_t line, column;
};

inline bool is_delta_name(std::string_view s, std::size_t& power) {
  if (s.empty() || s[0] != 'd') return false;
  if (s.size() == 1) {
    power = 1;
    return true;
  }
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  power = std::stoul(std::string(s.substr(1)));
  return true;
}

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip();
      Token t{Token::Kind::end, "", 0, line_, col_};
      if (pos_ >= s_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = s_[pos_];
      switch (c) {
        case '+': t.kind = Token::Kind::plus; break;
        case '-': t.kind = Token::Kind::minus; break;
        case '*': t.kind = Token::Kind::star; break;
        case '@': t.kind = Token::Kind::at; break;
        case '^': t.kind = Token::Kind::caret; break;
        case '(': t.kind = Token::Kind::lparen; break;
        case ')': t.kind = Token::Kind::rparen; break;
        default: break;
      }
      if (t.kind != Token::Kind::end) {
        t.text = std::string(1, c);
        advance();
        out.push_back(t);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Token::Kind::number;
        t.text = digits();
        if (peek() == '/') {
          advance();
          if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected a denominator", line_, col_);
          const std::size_t dl = line_, dc = col_;
          std::string den = digits();
          if (den.find_first_not_of('0') == std::string::npos) throw ParseError("zero denominator", dl, dc);
          t.text += "/" + den;
        }
        if (peek() == 'i' && !is_ident_char(peek(1))) {
          advance();
          t.text += "i";
        }
        out.push_back(t);
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string word;
        while (pos_ < s_.size() && is_ident_char(s_[pos_])) {
          word += s_[pos_];
          advance();
        }
        std::size_t power = 0;
        if (is_delta_name(word, power)) {
          if (power == 0) throw ParseError("differential power must be at least 1", t.line, t.column);
          t.kind = Token::Kind::delta;
          t.power = power;
        } else {
          t.kind = Token::Kind::ident;
        }
        t.text = word;
        out.push_back(t);
        continue;
      }
      throw ParseError("unexpected character '" + std::string(1, c) + "'", line_, col_);
    }
  }

 private:
  static bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  char peek(std::size_t k = 0) const { return pos_ + k < s_.size() ? s_[pos_ + k] : '\0'; }

  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
  }

  std::string digits() {
    std::string d;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      d += s_[pos_];
      advance();
    }
    return d;
  }

  std::string_view s_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

// expr  := ["+"|"-"] term (("+"|"-") term)*
// term  := prod ("@" prod)*
// prod  := unary ("*" unary)*
// unary := "-" unary | atom
// atom  := NUMBER | SYMBOL | DELTA ["^" INT] "(" expr ")" | "(" expr ")"
class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  FormExpr parse() {
    FormExpr e = expr();
    if (cur().kind != Token::Kind::end) error("unexpected '" + cur().text + "'");
    return e;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }

  [[noreturn]] void error(const std::string& msg) const {
    const Token& t = cur();
    throw ParseError(t.kind == Token::Kind::end ? msg + " (end of input)" : msg, t.line, t.column);
  }

  bool accept(Token::Kind k) {
    if (cur().kind != k) return false;
    ++pos_;
    return true;
  }

  void expect(Token::Kind k, const std::string& what) {
    if (!accept(k)) error("expected " + what);
  }

  static FormExpr node(FormExpr::Kind k, const Token& at) {
    FormExpr e{k, Scalar(0), "", 0, {}, {}, at.line, at.column};
    return e;
  }

  FormExpr expr() {
    const Token& start = cur();
    FormExpr sum = node(FormExpr::Kind::sum, start);
    int sign = 1;
    if (accept(Token::Kind::minus))
      sign = -1;
    else
      accept(Token::Kind::plus);
    sum.children.push_back(term());
    sum.signs.push_back(sign);
    while (true) {
      if (accept(Token::Kind::plus))
        sign = 1;
      else if (accept(Token::Kind::minus))
        sign = -1;
      else
        break;
      sum.children.push_back(term());
      sum.signs.push_back(sign);
    }
    if (sum.children.size() == 1 && sum.signs[0] == 1) return std::move(sum.children[0]);
    return sum;
  }

  FormExpr term() { return chain(Token::Kind::at, FormExpr::Kind::odot, [this] { return prod(); }); }
  FormExpr prod() { return chain(Token::Kind::star, FormExpr::Kind::product, [this] { return unary(); }); }

  template <typename Next>
  FormExpr chain(Token::Kind op, FormExpr::Kind kind, Next next) {
    const Token& start = cur();
    FormExpr first = next();
    if (cur().kind != op) return first;
    FormExpr n = node(kind, start);
    n.children.push_back(std::move(first));
    while (accept(op)) n.children.push_back(next());
    return n;
  }

  FormExpr unary() {
    const Token& start = cur();
    if (accept(Token::Kind::minus)) {
      FormExpr n = node(FormExpr::Kind::negate, start);
      n.children.push_back(unary());
      return n;
    }
    return atom();
  }

  FormExpr atom() {
    const Token t = cur();
    switch (t.kind) {
      case Token::Kind::number: {
        ++pos_;
        FormExpr n = node(FormExpr::Kind::scalar, t);
        n.value = Scalar::parse_literal(t.text);
        return n;
      }
      case Token::Kind::ident: {
        ++pos_;
        FormExpr n = node(FormExpr::Kind::symbol, t);
        n.name = t.text;
        return n;
      }
      case Token::Kind::delta: {
        ++pos_;
        FormExpr n = node(FormExpr::Kind::delta, t);
        n.power = t.power;
        if (cur().kind == Token::Kind::caret) {
          if (t.text != "d") error("'^' may only follow a plain 'd'");
          ++pos_;
          const Token& p = cur();
          if (p.kind != Token::Kind::number || p.text.find_first_not_of("0123456789") != std::string::npos)
            error("expected an integer power");
          n.power = std::stoul(p.text);
          if (n.power == 0) error("differential power must be at least 1");
          ++pos_;
        }
        expect(Token::Kind::lparen, "'(' after '" + t.text + "'");
        n.children.push_back(expr());
        expect(Token::Kind::rparen, "')'");
        return n;
      }
      case Token::Kind::lparen: {
        ++pos_;
        FormExpr e = expr();
        expect(Token::Kind::rparen, "')'");
        return e;
      }
      default: error(t.kind == Token::Kind::end ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline FormExpr parse(std::string_view input) {
  return detail::Parser(detail::Lexer(input).run()).parse();
}

/// Homogeneous parts of a lowered expression, keyed by order.
using Lowered = std::map<std::size_t, LeibnizForm>;

namespace detail {

class Lowerer {
 public:
  explicit Lowerer(AlgebraRef alg) : alg_(std::move(alg)) {}

  Lowered lower(const FormExpr& e) {
    switch (e.kind) {
      case FormExpr::Kind::scalar: return single(LeibnizForm::scalar_part(alg_->constant(e.value)));
      case FormExpr::Kind::symbol: {
        if (!alg_->symbol_index(e.name)) throw ParseError("unknown symbol '" + e.name + "'", e.line, e.column);
        return single(LeibnizForm::scalar_part(alg_->symbol(e.name)));
      }
      case FormExpr::Kind::negate: return scale(lower(e.children[0]), Scalar(-1));
      case FormExpr::Kind::sum: {
        Lowered out;
        for (std::size_t i = 0; i < e.children.size(); ++i) add_into(out, scale(lower(e.children[i]), Scalar(e.signs[i])));
        return out;
      }
      case FormExpr::Kind::product:
      case FormExpr::Kind::odot: {
        Lowered acc = lower(e.children[0]);
        for (std::size_t i = 1; i < e.children.size(); ++i) {
          Lowered rhs = lower(e.children[i]);
          Lowered next;
          for (const auto& [ou, u] : acc)
            for (const auto& [ov, v] : rhs) add_into(next, single(engine_.odot(u, v)));
          acc = std::move(next);
        }
        return acc;
      }
      case FormExpr::Kind::delta: {
        Lowered out;
        for (const auto& [o, w] : lower(e.children[0])) add_into(out, single(symbolic_delta(w, e.power)));
        return out;
      }
    }
    throw std::logic_error("unreachable expression kind");
  }

 private:
  static Lowered single(LeibnizForm w) {
    Lowered out;
    out.emplace(w.order(), std::move(w));
    return out;
  }

  static Lowered scale(Lowered l, const Scalar& s) {
    for (auto& [o, w] : l) w = s * w;
    return l;
  }

  static void add_into(Lowered& into, const Lowered& from) {
    for (const auto& [o, w] : from) {
      auto it = into.find(o);
      if (it == into.end())
        into.emplace(o, w);
      else
        it->second += w;
    }
  }

  AlgebraRef alg_;
  detail::OdotEngine engine_;
};

}  // namespace detail

/// Lowers an expression to its homogeneous parts. Parts that cancel to zero
/// are kept so the order of `d(1)` is still known.
inline Lowered lower(const FormExpr& e, const AlgebraRef& alg) { return detail::Lowerer(alg).lower(e); }

inline Lowered lower(std::string_view text, const AlgebraRef& alg) { return lower(parse(text), alg); }

/// Nonzero parts only; if every part is zero, the highest-order zero part.
inline std::vector<LeibnizForm> homogeneous_parts(const Lowered& l) {
  std::vector<LeibnizForm> out;
  for (const auto& [o, w] : l)
    if (!w.is_zero()) out.push_back(w);
  if (out.empty() && !l.empty()) out.push_back(l.rbegin()->second);
  return out;
}

// Printing -----------------------------------------------------------------------

namespace detail {

/// Joins coeff*body terms with signs; an empty body prints the bare coefficient.
inline std::string join_terms(const std::vector<std::pair<AlgElem, std::string>>& terms, const std::string& mul) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& [c, body] = terms[i];
    bool negative = false;
    std::string coeff;
    if (auto s = c.unit_multiple()) {
      Scalar mag = *s;
      if (mag.is_real() && sgn(mag.re()) < 0) {
        negative = true;
        mag = -mag;
      }
      if (!mag.is_one() || body.empty()) coeff = mag.is_real() ? mag.str() : "(" + mag.str() + ")";
    } else if (c.is_compound()) {
      coeff = "(" + c.str(WordStyle::explicit_star) + ")";
    } else {
      coeff = c.str(WordStyle::explicit_star);
      if (!coeff.empty() && coeff[0] == '-') {
        negative = true;
        coeff.erase(0, 1);
      }
    }
    std::string piece = coeff.empty() ? body : body.empty() ? coeff : coeff + mul + body;
    if (i == 0)
      out += negative ? "-" + piece : piece;
    else
      out += (negative ? " - " : " + ") + piece;
  }
  return out;
}

inline std::string delta_name(std::size_t k) { return k == 1 ? "d" : "d" + std::to_string(k); }

}  // namespace detail

/// Leibniz notation, e.g. "f*d2(g)@d(h) - 2*d(g)". Parsing the result with
/// the same algebra gives the form back.
inline std::string print_leibniz(const LeibnizForm& w) {
  std::vector<std::pair<AlgElem, std::string>> terms;
  for (const auto& [factors, c] : w.terms()) {
    std::string body;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) body += "@";
      body += detail::delta_name(factors[i].power) + "(" + factors[i].arg.str(WordStyle::explicit_star) + ")";
    }
    terms.emplace_back(c, body);
  }
  return detail::join_terms(terms, "*");
}

/// Generator notation with suppressed lifts, e.g. "f·d{1,0}(g)·d{0}(h)".
inline std::string print_generators(const GenSum& s) {
  std::vector<std::pair<AlgElem, std::string>> terms;
  for (const auto& [factors, c] : s.terms()) {
    std::string body;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) body += "·";
      const std::string arg = factors[i].arg.str(WordStyle::explicit_star);
      body += "d" + factors[i].index.str() + "(" + arg + ")";
    }
    terms.emplace_back(c, body);
  }
  return detail::join_terms(terms, "·");
}

}  // namespace ncdiff
