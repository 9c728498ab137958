#include <gtest/gtest.h>

#include "ncdiff/parse.hpp"
#include "ncdiff/random.hpp"

using namespace ncdiff;

namespace {

AlgebraRef fgh() { return AlgebraSpec::free({"f", "g", "h"}); }

LeibnizForm only(const std::string& text, const AlgebraRef& A) {
  const auto parts = homogeneous_parts(lower(text, A));
  EXPECT_EQ(parts.size(), 1u) << text;
  return parts.at(0);
}

std::size_t error_column(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.column();
  }
  return 0;
}

}  // namespace

TEST(Parse, OdotWithOrderZeroFactorIsModuleProduct) {
  const AlgebraRef A = AlgebraSpec::free({"x"});
  const AlgElem x = A->symbol("x");
  EXPECT_EQ(only("x @ d(x)", A), module_mul(x, LeibnizForm::delta_power(x, 1)));
}

TEST(Parse, TreeShape) {
  const FormExpr e = parse("d2(f) @ d(g)");
  ASSERT_EQ(e.kind, FormExpr::Kind::odot);
  ASSERT_EQ(e.children.size(), 2u);
  EXPECT_EQ(e.children[0].kind, FormExpr::Kind::delta);
  EXPECT_EQ(e.children[0].power, 2u);
  EXPECT_EQ(e.children[1].power, 1u);
  EXPECT_EQ(e.children[1].children[0].name, "g");

  const FormExpr s = parse("f*d(g) - d(h)@d(g)");
  ASSERT_EQ(s.kind, FormExpr::Kind::sum);
  EXPECT_EQ(s.signs, (std::vector<int>{1, -1}));
  EXPECT_EQ(s.children[0].kind, FormExpr::Kind::product);
  EXPECT_EQ(s.children[1].kind, FormExpr::Kind::odot);
}

TEST(Parse, PowerSpellingsAgree) {
  const AlgebraRef A = fgh();
  EXPECT_EQ(only("d2(f)", A), only("d^2(f)", A));
  EXPECT_EQ(only("d3(f)", A), only("d(d(d(f)))", A));
  EXPECT_EQ(only("d^3(f) @ d(g)", A), only("d3(f)@d(g)", A));
}

TEST(Parse, PrecedenceOfStarOverOdotOverPlus) {
  const AlgebraRef A = fgh();
  EXPECT_EQ(only("f*d(g)@d(h) + d(g)@d(h)", A), only("(f*d(g))@d(h) + (d(g)@d(h))", A));
  EXPECT_EQ(only("2*f*d(g)", A), Scalar(2) * only("f*d(g)", A));
  EXPECT_EQ(only("-d(g) + 3/4*d(h)", A), only("3/4*d(h) - d(g)", A));
}

TEST(Parse, ScalarLiterals) {
  const AlgebraRef A = fgh();
  EXPECT_EQ(only("2i*d(f)", A), Scalar(mpq_class(0), mpq_class(2)) * only("d(f)", A));
  EXPECT_EQ(only("-1/3*f", A), Scalar::rational(-1, 3) * only("f", A));
  EXPECT_TRUE(only("d(3)", A).is_zero());
  EXPECT_EQ(only("d(3)", A).order(), 1u);
}

TEST(Parse, MixedOrdersSplitIntoParts) {
  const AlgebraRef A = fgh();
  const auto parts = homogeneous_parts(lower("f + d(g) - d2(h) + g", A));
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].order(), 0u);
  EXPECT_EQ(parts[1].order(), 1u);
  EXPECT_EQ(parts[2].order(), 2u);
}

TEST(Parse, SyntaxErrorsCarryPosition) {
  EXPECT_EQ(error_column("d("), 3u);
  EXPECT_EQ(error_column("f + "), 5u);
  EXPECT_EQ(error_column("f $ g"), 3u);
  EXPECT_EQ(error_column("d^0(f)"), 3u);
  EXPECT_EQ(error_column("d0(f)"), 1u);
  EXPECT_EQ(error_column("d2^2(f)"), 3u);
  EXPECT_EQ(error_column("(f"), 3u);
  EXPECT_EQ(error_column("f)"), 2u);
  EXPECT_EQ(error_column("1/0*f"), 3u);
  try {
    parse("f +\n  @ g");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
}

TEST(Parse, UnknownSymbolReportedAtLowering) {
  const AlgebraRef A = fgh();
  EXPECT_NO_THROW(parse("f*d(q)"));
  try {
    lower("f*d(q)", A);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 5u);
    EXPECT_NE(e.message().find("'q'"), std::string::npos);
  }
}

TEST(Print, LeibnizNotation) {
  const AlgebraRef A = fgh();
  EXPECT_EQ(print_leibniz(only("f*d2(g)@d(h)", A)), "f*d2(g)@d(h)");
  EXPECT_EQ(print_leibniz(only("d(f*g)", A)), "d(f*g)");
  EXPECT_EQ(print_leibniz(only("(f - 2*g)*d(h)", A)), "(f - 2*g)*d(h)");
  EXPECT_EQ(print_leibniz(only("-d(h) + 0*d(f)", A)), "-d(h)");
  EXPECT_EQ(print_leibniz(only("d(1)", A)), "0");
}

TEST(Print, RoundTripOnRandomForms) {
  RandomSource rnd(61);
  const std::vector<AlgebraRef> algebras = {fgh(), AlgebraSpec::free({"a1", "b2"})};
  for (const auto& A : algebras)
    for (int t = 0; t < 60; ++t) {
      const LeibnizForm w = rnd.leibniz_form(A, rnd.index(5), 3);
      const std::string text = print_leibniz(w);
      EXPECT_EQ(only(text, A), w) << text;
      EXPECT_EQ(print_leibniz(only(text, A)), text);
    }
}
