// Forms on the two-point space {L, R}: value tables and the matrix of δ²f.
#include <iostream>

#include "ncdiff/verify.hpp"

using namespace ncdiff;

int main() {
  const AlgebraRef A = two_point_algebra();
  for (const char* expr : {"x@d(x)", "x@d2(x)", "x@d(x)@d(x)"}) {
    const FrameElem e = embed(form_of(expr, A));
    std::cout << expr << " = " << e.str() << "\n";
    for (const auto& t : all_tuples(2, e.body.degree())) {
      const Scalar v = tensor_eval(e.body, t);
      if (v.is_zero()) continue;
      std::cout << "  (";
      for (std::size_t i = 0; i < t.size(); ++i) std::cout << (i ? "," : "") << A->points()[t[i]];
      std::cout << ") -> " << v.str() << "\n";
    }
  }

  const AlgElem f = Scalar(2) * A->symbol("x") + Scalar(5) * A->symbol("y");
  const Matrix m = kronecker_matrix(delta_iter(f, 2).body);
  std::cout << "diagonal of d2(f) for f = diag(2, 5):";
  for (std::size_t i = 0; i < m.rows(); ++i) std::cout << " " << m(i, i).str();
  std::cout << "\n";
}
