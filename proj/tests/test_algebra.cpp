#include <gtest/gtest.h>

#include "ncdiff/algebra.hpp"
#include "ncdiff/random.hpp"

using namespace ncdiff;

namespace {

AlgebraRef two_point() {
  return AlgebraSpec::function({"L", "R"}, {"x", "y"}, {{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}});
}

Matrix mat(std::initializer_list<std::initializer_list<int>> rows) {
  Matrix m(rows.size(), rows.size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (int v : row) m(r, c++) = Scalar(v);
    ++r;
  }
  return m;
}

}  // namespace

TEST(FreeAlgebra, NoncommutativeProducts) {
  const AlgebraRef A = AlgebraSpec::free({"f", "g"});
  const AlgElem f = A->symbol("f"), g = A->symbol("g");
  EXPECT_NE(f * g, g * f);
  EXPECT_EQ((f + g) * (f + g), f * f + f * g + g * f + g * g);
  EXPECT_EQ(A->unit() * f, f);
  EXPECT_TRUE((f - f).is_zero());
  EXPECT_EQ((f * g).str(), "fg");
  EXPECT_EQ((f * g).str(WordStyle::explicit_star), "f*g");
  EXPECT_EQ((Scalar(2) * f - g * f + A->constant(Scalar(3))).str(), "3 + 2*f - gf");
}

TEST(FreeAlgebra, CommutativeMode) {
  const AlgebraRef C = AlgebraSpec::free({"f", "g"}, true);
  EXPECT_EQ(C->symbol("f") * C->symbol("g"), C->symbol("g") * C->symbol("f"));
}

TEST(FreeAlgebra, MultiLetterSymbolsPrintWithStars) {
  const AlgebraRef A = AlgebraSpec::free({"f11", "f12"});
  EXPECT_EQ((A->symbol("f11") * A->symbol("f12")).str(), "f11*f12");
}

TEST(AlgebraSpec, RejectsReservedAndDuplicateNames) {
  EXPECT_THROW(AlgebraSpec::free({"d"}), AlgebraError);
  EXPECT_THROW(AlgebraSpec::free({"d3"}), AlgebraError);
  EXPECT_THROW(AlgebraSpec::free({"f", "f"}), AlgebraError);
  EXPECT_NO_THROW(AlgebraSpec::free({"dx"}));
  EXPECT_THROW(AlgebraSpec::free({"f"})->symbol("g"), AlgebraError);
}

TEST(AlgebraSpec, MixingAlgebrasThrows) {
  const AlgebraRef A = AlgebraSpec::free({"f"}), B = AlgebraSpec::free({"f"});
  EXPECT_THROW((void)(A->symbol("f") == B->symbol("f")), AlgebraError);
  EXPECT_THROW((void)(A->symbol("f") + B->symbol("f")), AlgebraError);
}

TEST(FunctionAlgebra, TwoPointRelations) {
  const AlgebraRef A = two_point();
  const AlgElem x = A->symbol("x"), y = A->symbol("y");
  EXPECT_TRUE((x * y).is_zero());
  EXPECT_EQ(x * x, x);
  EXPECT_EQ(x + y, A->unit());
  EXPECT_EQ((Scalar(3) * x - y).str(), "3*x - y");
  EXPECT_EQ(func_as_diagonal(Scalar(3) * x - y).spec().to_matrix(func_as_diagonal(Scalar(3) * x - y)), mat({{3, 0}, {0, -1}}));
}

TEST(MatrixAlgebra, ProductIsMatrixProduct) {
  const AlgebraRef M = AlgebraSpec::matrix(2, {"a", "b"}, {mat({{1, 2}, {3, 4}}), mat({{0, 1}, {1, 0}})});
  const AlgElem a = M->symbol("a"), b = M->symbol("b");
  EXPECT_EQ(M->to_matrix(a * b), mat({{1, 2}, {3, 4}}) * mat({{0, 1}, {1, 0}}));
  EXPECT_NE(a * b, b * a);
  EXPECT_EQ(M->to_matrix(M->unit()), Matrix::identity(2));
  EXPECT_EQ((a + M->unit()).str(), "a + 1");
}

TEST(Algebra, BasisExpansionReconstructsElement) {
  RandomSource rnd(21);
  const std::vector<AlgebraRef> algebras = {AlgebraSpec::free({"f", "g"}), two_point(),
                                            AlgebraSpec::matrix(2, {"a"}, {mat({{1, 1}, {0, 1}})})};
  for (const auto& A : algebras)
    for (int t = 0; t < 30; ++t) {
      const AlgElem e = rnd.element(A);
      AlgElem sum = A->zero();
      for (const auto& [c, b] : e.expand_basis()) sum = sum + c * b;
      EXPECT_EQ(sum, e);
      AlgElem sum2 = A->zero();
      for (const auto& [c, b] : e.split()) sum2 = sum2 + c * b;
      EXPECT_EQ(sum2, e);
    }
}

TEST(Algebra, RingLawsOnRandomElements) {
  RandomSource rnd(22);
  const std::vector<AlgebraRef> algebras = {AlgebraSpec::free({"f", "g", "h"}), two_point(),
                                            AlgebraSpec::matrix(3, {"a"}, {Matrix::identity(3)})};
  for (const auto& A : algebras)
    for (int t = 0; t < 40; ++t) {
      const AlgElem a = rnd.element(A), b = rnd.element(A), c = rnd.element(A);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a + b) * c, a * c + b * c);
      EXPECT_EQ(A->unit() * a, a);
      EXPECT_EQ(a * A->unit(), a);
    }
}

TEST(Algebra, JsonRoundTrip) {
  RandomSource rnd(23);
  const std::vector<AlgebraRef> algebras = {AlgebraSpec::free({"f", "g"}, true), two_point(),
                                            AlgebraSpec::matrix(2, {"a"}, {mat({{1, 2}, {0, -1}})})};
  for (const auto& A : algebras) {
    const AlgebraRef B = AlgebraSpec::from_json(A->to_json());
    EXPECT_EQ(B->to_json(), A->to_json());
    for (int t = 0; t < 10; ++t) {
      const AlgElem e = rnd.element(A);
      EXPECT_EQ(alg_elem_from_json(A, to_json(e)), e);
    }
  }
}

TEST(Algebra, SpecJsonErrors) {
  EXPECT_THROW(AlgebraSpec::from_json(json{{"backend", "quantum"}}), AlgebraError);
  EXPECT_THROW(AlgebraSpec::from_json(json::parse(R"({"backend":"function","points":["L"],"symbols":["x"],"values":{}})")),
               AlgebraError);
  EXPECT_THROW(AlgebraSpec::from_json(json::parse(R"({"backend":"matrix","dim":2,"symbols":["a"],"matrices":{"a":[[1]]}})")),
               AlgebraError);
  EXPECT_THROW(AlgebraSpec::function({"L", "L"}, {"x"}, {{Scalar(1), Scalar(0)}}), AlgebraError);
}
