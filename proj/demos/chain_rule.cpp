// Second-order chain rule in one and two variables.
#include <iostream>

#include "ncdiff/jets.hpp"

using namespace ncdiff;

int main() {
  const Poly phi = Poly::parse("u^3 - 2*u"), U = Poly::parse("v^2 + v/2"), V = Poly::parse("3*w - w^2");
  const Scalar w0(1);
  const Scalar v0 = V.evaluate({{"w", w0}});
  const Scalar u0 = U.evaluate({{"v", v0}});

  const TransferMatrix1 t1 = TransferMatrix1::of(jet1_of(U, "v", {{"v", v0}}));
  const TransferMatrix1 t2 = TransferMatrix1::of(jet1_of(V, "w", {{"w", w0}}));
  const TransferMatrix1 t = transfer_compose(t1, t2);
  const Jet1 out = apply_transfer(jet1_of(phi, "u", {{"u", u0}}), t);
  std::cout << "phi(u(v(w))) at w = 1: phi_w = " << out.d1.str() << ", phi_ww = " << out.d2.str() << "\n";
  std::cout << "transfer matrix [[" << t.m(0, 0).str() << ", " << t.m(0, 1).str() << "], [0, " << t.m(1, 1).str()
            << "]]\n";

  const Poly f = Poly::parse("x^2*y - y^3"), x = Poly::parse("u*v"), y = Poly::parse("u + v^2");
  const std::map<std::string, Scalar> at{{"u", Scalar(2)}, {"v", Scalar(-1)}};
  const ChangeOfVars2 cv{jet2_of(x, "u", "v", at), jet2_of(y, "u", "v", at)};
  const Jet2 j = transform_jet2(jet2_of(f, "x", "y", {{"x", cv.x.f}, {"y", cv.y.f}}), cv);
  std::cout << "f(x(u,v), y(u,v)) at (2,-1): f_uu = " << j.fxx.str() << ", f_uv = " << j.fxy.str()
            << ", f_vv = " << j.fyy.str() << "\n";
  std::cout << "truncated second differential matches: "
            << (delta2_invariance_check(jet2_of(f, "x", "y", {{"x", cv.x.f}, {"y", cv.y.f}}), cv,
                                        Expansion::drop_first_derivative_terms)
                    ? "yes"
                    : "no")
            << "\n";
}
