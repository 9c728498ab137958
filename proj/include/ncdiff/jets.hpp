#pragma once

#include <map>
#include <string>

#include "ncdiff/linalg.hpp"
#include "ncdiff/poly.hpp"

namespace ncdiff {

/// Value, first and second derivatives of a function of two coordinates at
/// a point. `fx`, `fy` refer to the first and second coordinate of whatever
/// pair the jet is taken in.
struct Jet2 {
  Scalar f, fx, fy, fxx, fxy, fyy;

  friend bool operator==(const Jet2&, const Jet2&) = default;
};

/// x(u,v) and y(u,v) as 2-jets in (u,v).
struct ChangeOfVars2 {
  Jet2 x, y;
};

/// First and second derivative of a function of one variable.
struct Jet1 {
  Scalar d1, d2;

  friend bool operator==(const Jet1&, const Jet1&) = default;
};

/// The 2x2 matrix ((u', u''), (0, u'^2)) of a 1D change u = u(v).
struct TransferMatrix1 {
  Matrix m;

  static TransferMatrix1 of(const Jet1& u) {
    Matrix m(2, 2);
    m(0, 0) = u.d1;
    m(0, 1) = u.d2;
    m(1, 1) = u.d1 * u.d1;
    return {m};
  }

  bool has_shape() const { return m(1, 0).is_zero() && m(1, 1) == m(0, 0) * m(0, 0); }

  friend bool operator==(const TransferMatrix1&, const TransferMatrix1&) = default;
};

/// 2-jet of a polynomial in the variables (a, b) at the given point.
inline Jet2 jet2_of(const Poly& p, const std::string& a, const std::string& b,
                    const std::map<std::string, Scalar>& at) {
  const Poly pa = p.derivative(a);
  const Poly pb = p.derivative(b);
  return {p.evaluate(at),
          pa.evaluate(at),
          pb.evaluate(at),
          pa.derivative(a).evaluate(at),
          pa.derivative(b).evaluate(at),
          pb.derivative(b).evaluate(at)};
}

inline Jet1 jet1_of(const Poly& p, const std::string& v, const std::map<std::string, Scalar>& at) {
  const Poly d = p.derivative(v);
  return {d.evaluate(at), d.derivative(v).evaluate(at)};
}

/// Jet of f(x(u,v), y(u,v)) in (u,v) from the jet of f in (x,y) taken at the
/// image point. The value field is carried over unchanged.
inline Jet2 transform_jet2(const Jet2& f, const ChangeOfVars2& cv) {
  const Jet2& x = cv.x;
  const Jet2& y = cv.y;
  Jet2 out;
  out.f = f.f;
  out.fx = x.fx * f.fx + y.fx * f.fy;
  out.fy = x.fy * f.fx + y.fy * f.fy;
  out.fxx = f.fxx * x.fx * x.fx + f.fyy * y.fx * y.fx + Scalar(2) * f.fxy * x.fx * y.fx + f.fx * x.fxx + f.fy * y.fxx;
  out.fyy = f.fxx * x.fy * x.fy + f.fyy * y.fy * y.fy + Scalar(2) * f.fxy * x.fy * y.fy + f.fx * x.fyy + f.fy * y.fyy;
  out.fxy = f.fxx * x.fx * x.fy + f.fyy * y.fx * y.fy + f.fxy * (x.fx * y.fy + x.fy * y.fx) + f.fx * x.fxy +
            f.fy * y.fxy;
  return out;
}

/// d²φ/dv² = φ''(u) (du/dv)² + φ'(u) d²u/dv², with dφ/dv = φ'(u) du/dv.
inline Jet1 chain2_1d(const Jet1& phi, const Jet1& u) {
  return {phi.d1 * u.d1, phi.d2 * u.d1 * u.d1 + phi.d1 * u.d2};
}

/// (φ_v, φ_vv) = (φ_u, φ_uu) · T, as a row vector times the matrix.
inline Jet1 apply_transfer(const Jet1& phi, const TransferMatrix1& t) {
  return {phi.d1 * t.m(0, 0) + phi.d2 * t.m(1, 0), phi.d1 * t.m(0, 1) + phi.d2 * t.m(1, 1)};
}

/// Transfer matrix of u in w from those of u in v and of v in w.
inline TransferMatrix1 transfer_compose(const TransferMatrix1& m1, const TransferMatrix1& m2) { return {m1.m * m2.m}; }

enum class Expansion {
  full,
  /// Drops f'_x δ²x + f'_y δ²y; only the second-derivative coefficients are
  /// then compared.
  drop_first_derivative_terms,
};

/// Substitutes the expansions of δx, δy, δ²x, δ²y into
/// f_xx δx² + f_yy δy² + 2 f_xy δxδy + f_x δ²x + f_y δ²y, collects the
/// coefficients of δu², δv², δuδv, δ²u, δ²v and compares them with
/// transform_jet2.
inline bool delta2_invariance_check(const Jet2& f, const ChangeOfVars2& cv, Expansion mode = Expansion::full) {
  const Poly du = Poly::var("du"), dv = Poly::var("dv"), d2u = Poly::var("d2u"), d2v = Poly::var("d2v");
  auto first = [&](const Jet2& j) { return j.fx * du + j.fy * dv; };
  auto second = [&](const Jet2& j) {
    return j.fxx * du * du + j.fyy * dv * dv + Scalar(2) * j.fxy * du * dv + j.fx * d2u + j.fy * d2v;
  };
  const Poly dx = first(cv.x), dy = first(cv.y);
  Poly d2f = f.fxx * dx * dx + f.fyy * dy * dy + Scalar(2) * f.fxy * dx * dy;
  if (mode == Expansion::full) d2f += f.fx * second(cv.x) + f.fy * second(cv.y);

  const Jet2 expected = transform_jet2(f, cv);
  bool ok = d2f.coeff({{"du", 2}}) == expected.fxx && d2f.coeff({{"dv", 2}}) == expected.fyy &&
            d2f.coeff({{"du", 1}, {"dv", 1}}) == Scalar(2) * expected.fxy;
  if (mode == Expansion::full) ok = ok && d2f.coeff({{"d2u", 1}}) == expected.fx && d2f.coeff({{"d2v", 1}}) == expected.fy;
  return ok;
}

}  // namespace ncdiff
