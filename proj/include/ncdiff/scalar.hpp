#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace ncdiff {

using json = nlohmann::json;

/// Exact Gaussian rational: re + im*i with both parts in Q.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : re_(v) {}
  Scalar(long v) : re_(v) {}
  Scalar(long long v) : re_(static_cast<long>(v)) {}
  explicit Scalar(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Scalar rational(long num, long den) {
    if (den == 0) throw std::domain_error("Scalar: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
  }
  static Scalar imaginary_unit() { return Scalar(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }

  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("Scalar: division by zero");
    mpq_class n = re_ * re_ + im_ * im_;
    return Scalar(re_ / n, -im_ / n);
  }

  Scalar operator-() const { return Scalar(-re_, -im_); }

  Scalar& operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

  // Lexicographic on (re, im); only used to fix a canonical term order.
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    int c = cmp(a.re_, b.re_);
    if (c == 0) c = cmp(a.im_, b.im_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  /// "3/2", "-1", "2i", "1i", "1/2-3i". The output is accepted by parse_literal
  /// when the real or the imaginary part is zero.
  std::string str() const {
    if (is_real()) return re_.get_str();
    const std::string im_part = im_.get_str() + "i";
    if (sgn(re_) == 0) return im_part;
    if (sgn(im_) > 0) return re_.get_str() + "+" + im_part;
    return re_.get_str() + im_part;
  }

  /// Parses a rational literal with optional trailing `i`: "7", "-3/4", "2i", "1i".
  static Scalar parse_literal(std::string_view text) {
    bool imaginary = false;
    if (!text.empty() && text.back() == 'i') {
      imaginary = true;
      text.remove_suffix(1);
    }
    mpq_class q;
    if (imaginary && (text.empty() || text == "+"))
      q = 1;
    else if (imaginary && text == "-")
      q = -1;
    else {
      std::string s(text);
      if (!s.empty() && s.front() == '+') s.erase(0, 1);
      if (q.set_str(s, 10) != 0) throw std::invalid_argument("Scalar: bad literal '" + std::string(text) + "'");
      if (q.get_den() == 0) throw std::domain_error("Scalar: zero denominator");
      q.canonicalize();
    }
    return imaginary ? Scalar(mpq_class(0), q) : Scalar(q);
  }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

namespace detail {

inline json integer_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return json(static_cast<std::int64_t>(z.get_si()));
  return json(z.get_str());
}

inline mpz_class integer_from_json(const json& j) {
  if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return mpz_class(j.get<std::string>());
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

inline json rational_to_json(const mpq_class& q) {
  return json::array({integer_to_json(q.get_num()), integer_to_json(q.get_den())});
}

inline mpq_class rational_from_json(const json& j) {
  if (j.is_number_integer()) return mpq_class(integer_from_json(j));
  if (j.is_number_float()) throw std::invalid_argument("floating-point values are not accepted: " + j.dump());
  if (j.is_string()) {
    mpq_class q;
    if (q.set_str(j.get<std::string>(), 10) != 0 || q.get_den() == 0)
      throw std::invalid_argument("bad rational string " + j.dump());
    q.canonicalize();
    return q;
  }
  if (j.is_array() && j.size() == 2) {
    mpz_class den = integer_from_json(j[1]);
    if (den == 0) throw std::domain_error("zero denominator in " + j.dump());
    mpq_class q(integer_from_json(j[0]), den);
    q.canonicalize();
    return q;
  }
  throw std::invalid_argument("expected a rational, got " + j.dump());
}

}  // namespace detail

/// Renders sum_k coeff_k * body_k as "a - 3/2*b + (1+2i)*c". An empty body
/// stands for the unit and prints the bare scalar.
inline std::string format_linear_combination(const std::vector<std::pair<Scalar, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [c, body] : terms) {
    Scalar mag = c;
    bool negative = false;
    if (c.is_real() && sgn(c.re()) < 0) {
      negative = true;
      mag = -c;
    }
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    std::string coeff = mag.is_real() ? mag.str() : "(" + mag.str() + ")";
    if (body.empty())
      out += coeff;
    else if (mag.is_one())
      out += body;
    else
      out += coeff + "*" + body;
  }
  return out;
}

/// `[[re_num, re_den], [im_num, im_den]]`.
inline json to_json(const Scalar& s) {
  return json::array({detail::rational_to_json(s.re()), detail::rational_to_json(s.im())});
}

/// Accepts the canonical `[[n,d],[n,d]]` layout, `[re, im]` with integer or
/// string parts, a bare integer, or a string literal such as "3/2".
inline Scalar scalar_from_json(const json& j) {
  if (j.is_number_integer()) return Scalar(mpq_class(detail::integer_from_json(j)));
  if (j.is_string()) return Scalar::parse_literal(j.get<std::string>());
  // A pair of plain integers is [re, im], never [num, den].
  if (j.is_array() && j.size() == 2)
    return Scalar(detail::rational_from_json(j[0]), detail::rational_from_json(j[1]));
  throw std::invalid_argument("expected a scalar, got " + j.dump());
}

}  // namespace ncdiff
