#include <gtest/gtest.h>

#include "ncdiff/random.hpp"
#include "ncdiff/scalar.hpp"

using namespace ncdiff;

namespace {

Scalar gaussian(RandomSource& rnd) { return Scalar(rnd.rational().re(), rnd.rational().re()); }

}  // namespace

TEST(Scalar, GaussianArithmetic) {
  const Scalar a(mpq_class(1, 2), mpq_class(1));
  EXPECT_EQ(a * a.conj(), Scalar::rational(5, 4));
  EXPECT_EQ(Scalar::imaginary_unit() * Scalar::imaginary_unit(), Scalar(-1));
  EXPECT_EQ(a / a, Scalar(1));
  EXPECT_THROW(Scalar(0).inverse(), std::domain_error);
  EXPECT_THROW(Scalar::rational(1, 0), std::domain_error);
}

TEST(Scalar, CanonicalFractions) {
  EXPECT_EQ(Scalar::rational(6, -4), Scalar::rational(-3, 2));
  EXPECT_EQ(Scalar::rational(6, -4).str(), "-3/2");
}

TEST(Scalar, LiteralRoundTrip) {
  for (const char* s : {"0", "7", "-3/4", "2i", "1i", "-1i", "5/3i"}) EXPECT_EQ(Scalar::parse_literal(s).str(), s) << s;
  EXPECT_EQ(Scalar::parse_literal("i"), Scalar::imaginary_unit());
  EXPECT_EQ(Scalar::parse_literal("+4"), Scalar(4));
  EXPECT_EQ(Scalar(mpq_class(1), mpq_class(-2)).str(), "1-2i");
  EXPECT_EQ(Scalar(mpq_class(1), mpq_class(2)).str(), "1+2i");
  EXPECT_THROW(Scalar::parse_literal("x"), std::invalid_argument);
  EXPECT_THROW(Scalar::parse_literal("1/0"), std::domain_error);
}

TEST(Scalar, JsonRoundTrip) {
  RandomSource rnd(11);
  for (int t = 0; t < 50; ++t) {
    const Scalar s = gaussian(rnd);
    EXPECT_EQ(scalar_from_json(to_json(s)), s);
  }
  EXPECT_EQ(scalar_from_json(json(3)), Scalar(3));
  EXPECT_EQ(scalar_from_json(json("-1/2")), Scalar::rational(-1, 2));
  EXPECT_EQ(scalar_from_json(json::array({1, 2})), Scalar(mpq_class(1), mpq_class(2)));
  EXPECT_THROW(scalar_from_json(json(0.5)), std::invalid_argument);
}

TEST(Scalar, BigValuesSerializeAsStrings) {
  Scalar big(1);
  for (int i = 0; i < 100; ++i) big *= Scalar(10);
  const json j = to_json(big);
  EXPECT_TRUE(j[0][0].is_string());
  EXPECT_EQ(scalar_from_json(j), big);
}

TEST(Scalar, FieldLawsOnRandomValues) {
  RandomSource rnd(12);
  for (int t = 0; t < 200; ++t) {
    const Scalar a = gaussian(rnd), b = gaussian(rnd), c = gaussian(rnd);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), Scalar(1));
  }
}

TEST(Scalar, LinearCombinationText) {
  EXPECT_EQ(format_linear_combination({}), "0");
  EXPECT_EQ(format_linear_combination({{Scalar(1), "a"}, {Scalar::rational(-3, 2), "b"}}), "a - 3/2*b");
  EXPECT_EQ(format_linear_combination({{Scalar(-1), "a"}, {Scalar(2), ""}}), "-a + 2");
  EXPECT_EQ(format_linear_combination({{Scalar(mpq_class(1), mpq_class(2)), "c"}}), "(1+2i)*c");
}
