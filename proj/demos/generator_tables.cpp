// Every monomial type of orders 1 to 4, written in the generators d_I.
#include <iostream>

#include "ncdiff/verify.hpp"

using namespace ncdiff;

int main() {
  const AlgebraRef A = free_fghik();
  const char* names[] = {"f", "g", "h", "i"};
  for (std::size_t n = 1; n <= 4; ++n) {
    std::cout << "order " << n << "\n";
    for (const auto& type : enumerate_types(n)) {
      FactorList factors;
      for (std::size_t k = 0; k < type.size(); ++k) factors.push_back({type[k], A->symbol(names[k])});
      const LeibnizForm w = LeibnizForm::monomial(A->unit(), factors);
      const GenSum s = generator_expansion(w);
      std::cout << "  " << print_leibniz(w) << " = " << print_generators(s)
                << (s.eval() == embed(w) ? "" : "  (MISMATCH)") << "\n";
    }
  }
}
