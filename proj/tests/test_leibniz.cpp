#include <gtest/gtest.h>

#include "ncdiff/parse.hpp"
#include "ncdiff/random.hpp"

using namespace ncdiff;

namespace {

AlgebraRef fghik() { return AlgebraSpec::free({"f", "g", "h", "i", "k"}); }

LeibnizForm form(const std::string& text, const AlgebraRef& A) { return homogeneous_parts(lower(text, A)).at(0); }

TensorPoly lit(const AlgebraRef& A, const std::vector<std::pair<int, std::string>>& terms) { return tensor_literal(A, terms); }

}  // namespace

TEST(LeibnizForm, OrderIsChecked) {
  const AlgebraRef A = fghik();
  LeibnizForm w(A, 2);
  EXPECT_THROW(w.add(A->unit(), {{1, A->symbol("f")}}), std::invalid_argument);
  EXPECT_THROW(w.add(A->unit(), {{0, A->symbol("f")}, {2, A->symbol("g")}}), std::invalid_argument);
  EXPECT_THROW((void)(LeibnizForm::delta_power(A->symbol("f"), 1) + LeibnizForm::delta_power(A->symbol("f"), 2)),
               std::invalid_argument);
}

TEST(LeibnizForm, DeltaOfConstantsVanishes) {
  const AlgebraRef A = fghik();
  EXPECT_TRUE(LeibnizForm::delta_power(A->unit(), 1).is_zero());
  EXPECT_TRUE(LeibnizForm::delta_power(A->constant(Scalar(7)), 3).is_zero());
  EXPECT_EQ(LeibnizForm::delta_power(A->symbol("f") + A->constant(Scalar(2)), 1), LeibnizForm::delta_power(A->symbol("f"), 1));
}

TEST(LeibnizForm, LinearInArguments) {
  const AlgebraRef A = fghik();
  const AlgElem f = A->symbol("f"), g = A->symbol("g");
  EXPECT_EQ(LeibnizForm::monomial(A->unit(), {{1, Scalar(2) * f - g}, {2, f}}),
            Scalar(2) * LeibnizForm::monomial(A->unit(), {{1, f}, {2, f}}) - LeibnizForm::monomial(A->unit(), {{1, g}, {2, f}}));
}

TEST(SymbolicDelta, DerivationRule) {
  const AlgebraRef A = fghik();
  EXPECT_EQ(symbolic_delta(form("f*d(g)", A)), form("d(f)@d(g) + f*d2(g)", A));
  EXPECT_EQ(symbolic_delta(form("f", A)), form("d(f)", A));
  EXPECT_EQ(symbolic_delta(form("d(g)", A), 2), form("d3(g)", A));
  EXPECT_EQ(symbolic_delta(form("d(g)@d(h)", A)), form("d2(g)@d(h) + d(g)@d2(h)", A));
}

TEST(Odot, OrderZeroFactorActsByModuleProduct) {
  const AlgebraRef A = fghik();
  const AlgElem f = A->symbol("f");
  const LeibnizForm s = form("d2(g)@d(h)", A);
  EXPECT_EQ(odot(LeibnizForm::scalar_part(f), s), module_mul(f, s));
  EXPECT_EQ(odot(form("d(g)", A), form("d(h)", A)).order(), 2u);
}

TEST(Odot, RecursiveDefinitionAtOrderTwoFactor) {
  // δ²g ⊙ σ = δ(δg ⊙ σ) - δg ⊙ δσ.
  const AlgebraRef A = fghik();
  const LeibnizForm sigma = form("d(h)", A);
  EXPECT_EQ(odot(form("d2(g)", A), sigma),
            symbolic_delta(odot(form("d(g)", A), sigma)) - odot(form("d(g)", A), symbolic_delta(sigma)));
}

TEST(Odot, AssociativeAndDeltaIsDerivation) {
  RandomSource rnd(51);
  const AlgebraRef A = AlgebraSpec::free({"f", "g", "h"});
  for (int t = 0; t < 25; ++t) {
    const LeibnizForm u = rnd.leibniz_form(A, rnd.index(2)), v = rnd.leibniz_form(A, rnd.index(2)),
                      w = rnd.leibniz_form(A, rnd.index(2));
    EXPECT_EQ(odot(odot(u, v), w), odot(u, odot(v, w)));
    EXPECT_EQ(symbolic_delta(odot(u, v)), odot(symbolic_delta(u), v) + odot(u, symbolic_delta(v)));
  }
}

TEST(Embed, BasicForms) {
  const AlgebraRef A = fghik();
  EXPECT_EQ(embed(form("d(f)", A)).body, lit(A, {{1, "1⊗f"}, {-1, "f⊗1"}}));
  EXPECT_EQ(embed(form("d3(f)", A)), delta_iter(A->symbol("f"), 3));
  EXPECT_EQ(embed(form("d(f)@d(g)", A)).body,
            lit(A, {{1, "1⊗1⊗f⊗g"}, {-1, "f⊗1⊗1⊗g"}, {-1, "1⊗1⊗fg⊗1"}, {1, "f⊗1⊗g⊗1"}}));
  EXPECT_EQ(embed(form("g*d(h)", A)).body, lit(A, {{1, "g⊗h"}, {-1, "gh⊗1"}}));
}

TEST(Embed, IntertwinesDelta) {
  RandomSource rnd(52);
  const AlgebraRef A = AlgebraSpec::free({"f", "g", "h"});
  for (int t = 0; t < 25; ++t) {
    const LeibnizForm w = rnd.leibniz_form(A, rnd.index(4));
    EXPECT_EQ(embed(symbolic_delta(w)), frame_delta(embed(w)));
  }
}

TEST(Embed, ModuleProductLiftsByRho) {
  RandomSource rnd(53);
  const AlgebraRef A = AlgebraSpec::free({"f", "g", "h"});
  for (int t = 0; t < 20; ++t) {
    const AlgElem a = rnd.free_element(A);
    const LeibnizForm w = rnd.leibniz_form(A, 1 + rnd.index(3));
    EXPECT_EQ(embed(module_mul(a, w)), lift_to(a, w.order()) * embed(w));
  }
}

TEST(Embed, WorksOnDenseBackends) {
  RandomSource rnd(54);
  Matrix m(2, 2);
  m(0, 1) = Scalar(1);
  m(1, 0) = Scalar(3);
  const AlgebraRef M = AlgebraSpec::matrix(2, {"a", "b"}, {m, Matrix::identity(2)});
  const AlgElem a = M->symbol("a");
  EXPECT_TRUE(embed(LeibnizForm::delta_power(M->symbol("b"), 2)).is_zero());
  EXPECT_EQ(embed(LeibnizForm::delta_power(a, 2)), delta_iter(a, 2));
  for (int t = 0; t < 10; ++t) {
    const AlgElem x = rnd.matrix_element(M), y = rnd.matrix_element(M);
    const LeibnizForm w = LeibnizForm::monomial(x, {{1, y}, {1, a}});
    EXPECT_EQ(embed(symbolic_delta(w)), frame_delta(embed(w)));
  }
}

TEST(Types, CompositionsInReverseLexOrder) {
  using T = std::vector<std::vector<std::size_t>>;
  EXPECT_EQ(enumerate_types(1), (T{{1}}));
  EXPECT_EQ(enumerate_types(2), (T{{2}, {1, 1}}));
  EXPECT_EQ(enumerate_types(3), (T{{3}, {2, 1}, {1, 2}, {1, 1, 1}}));
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto types = enumerate_types(n);
    EXPECT_EQ(types.size(), std::size_t{1} << (n - 1));
    for (const auto& t : types) {
      std::size_t sum = 0;
      for (auto k : t) sum += k;
      EXPECT_EQ(sum, n);
    }
  }
  EXPECT_THROW(enumerate_types(0), std::invalid_argument);
}

TEST(Generators, MonomialEvaluationUsesOwnerLifts) {
  const AlgebraRef A = fghik();
  const AlgElem g = A->symbol("g"), h = A->symbol("h");
  const std::vector<GenFactor> gh = {{SubsetIndex(2, {1}), g}, {SubsetIndex(2, {0}), h}};
  // δ_1 g lifted by ρ_0 first, δ_0 h lifted by λ_1 afterwards.
  const FrameElem expected = frame_delta(rho(FrameElem::of(g))) * lam(frame_delta(FrameElem::of(h)));
  EXPECT_EQ(generator_monomial_eval(gh, 2), expected);
  EXPECT_NE(generator_monomial_eval(gh, 2, std::nullopt, LiftRule::rho_only), expected);
  EXPECT_EQ(generator_monomial_eval(gh, 2, A->symbol("f")), lift_to(A->symbol("f"), 2) * expected);
}

TEST(Generators, OverlappingIndicesThrow) {
  const AlgebraRef A = fghik();
  const std::vector<GenFactor> bad = {{SubsetIndex(2, {1, 0}), A->symbol("g")}, {SubsetIndex(2, {0}), A->symbol("h")}};
  EXPECT_THROW(generator_monomial_eval(bad, 2), std::invalid_argument);
  EXPECT_THROW(generator_monomial_eval({{SubsetIndex(1, {0}), A->symbol("g")}}, 2), std::invalid_argument);
}

TEST(Generators, ExpansionPrintsAndEvaluatesToEmbedding) {
  const AlgebraRef A = fghik();
  EXPECT_EQ(print_generators(generator_expansion(form("d(g)@d(h)", A))), "d{1}(g)·d{0}(h)");
  EXPECT_EQ(print_generators(generator_expansion(form("f*d2(g)", A))), "f·d{1,0}(g)");
  EXPECT_EQ(print_generators(generator_expansion(form("d2(g)@d(h)", A))),
            "d{2,1}(g)·d{0}(h) - d{2}(g)·d{1,0}(h) + d{1}(g)·d{2,0}(h)");
  RandomSource rnd(55);
  const AlgebraRef B = AlgebraSpec::free({"f", "g", "h"});
  for (int t = 0; t < 25; ++t) {
    const LeibnizForm w = rnd.leibniz_form(B, 1 + rnd.index(4));
    EXPECT_EQ(generator_expansion(w).eval(), embed(w));
  }
}

TEST(Generators, GenSumDeltaMatchesFrameDelta) {
  RandomSource rnd(56);
  const AlgebraRef A = AlgebraSpec::free({"f", "g", "h"});
  for (int t = 0; t < 15; ++t) {
    const LeibnizForm w = rnd.leibniz_form(A, 1 + rnd.index(3));
    const GenSum s = generator_expansion(w);
    EXPECT_EQ(s.delta().eval(), frame_delta(s.eval()));
    EXPECT_EQ(s.lift().eval(), rho(s.eval()));
  }
}
