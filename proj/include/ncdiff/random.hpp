#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ncdiff/leibniz.hpp"
#include "ncdiff/poly.hpp"

namespace ncdiff {

/// Seeded generators of random exact data for property checks.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& engine() { return rng_; }

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(integer(0, static_cast<long>(n) - 1)); }
  bool coin() { return integer(0, 1) == 1; }

  /// Small rational, never zero when `nonzero` is set.
  Scalar rational(bool nonzero = false) {
    while (true) {
      Scalar s = Scalar::rational(integer(-5, 5), integer(1, 4));
      if (!nonzero || !s.is_zero()) return s;
    }
  }

  /// A sum of up to `max_terms` words of length <= `max_len` over the symbols.
  AlgElem free_element(const AlgebraRef& alg, std::size_t max_terms = 2, std::size_t max_len = 2) {
    while (true) {
      WordMap w;
      const std::size_t terms = 1 + index(max_terms);
      for (std::size_t t = 0; t < terms; ++t) {
        Word word;
        const std::size_t len = index(max_len + 1);
        for (std::size_t i = 0; i < len; ++i) word.push_back(static_cast<int>(index(alg->symbols().size())));
        w[word] += Scalar(integer(-3, 3));
      }
      AlgElem e = alg->from_words(w);
      if (!e.is_zero()) return e;
    }
  }

  /// A non-constant element: a single symbol or a short word, scaled.
  AlgElem free_generator(const AlgebraRef& alg) {
    Word word{static_cast<int>(index(alg->symbols().size()))};
    if (coin()) word.push_back(static_cast<int>(index(alg->symbols().size())));
    return alg->from_words({{word, Scalar(integer(1, 3))}});
  }

  AlgElem function_element(const AlgebraRef& alg) {
    std::vector<Scalar> v;
    for (std::size_t i = 0; i < alg->points().size(); ++i) v.push_back(rational());
    return alg->function_element(std::move(v));
  }

  AlgElem matrix_element(const AlgebraRef& alg) {
    Matrix m(alg->dim(), alg->dim());
    for (std::size_t i = 0; i < alg->dim(); ++i)
      for (std::size_t j = 0; j < alg->dim(); ++j) m(i, j) = rational();
    return alg->matrix_element(m);
  }

  /// Any backend.
  AlgElem element(const AlgebraRef& alg) {
    switch (alg->backend()) {
      case Backend::free: return free_element(alg);
      case Backend::function: return function_element(alg);
      case Backend::matrix: return matrix_element(alg);
    }
    return alg->zero();
  }

  /// A random composition of n.
  std::vector<std::size_t> composition(std::size_t n) {
    std::vector<std::size_t> out;
    std::size_t part = 1;
    for (std::size_t i = 1; i < n; ++i) {
      if (coin()) {
        out.push_back(part);
        part = 1;
      } else {
        ++part;
      }
    }
    out.push_back(part);
    return out;
  }

  /// A sum of up to `max_terms` monomials of order n with random coefficients.
  LeibnizForm leibniz_form(const AlgebraRef& alg, std::size_t n, std::size_t max_terms = 2) {
    while (true) {
      LeibnizForm w(alg, n);
      const std::size_t terms = 1 + index(max_terms);
      for (std::size_t t = 0; t < terms; ++t) {
        AlgElem coeff = coin() ? alg->unit() : free_element(alg, 1, 1);
        if (n == 0) {
          w.add(free_element(alg), {});
          continue;
        }
        FactorList factors;
        for (auto k : composition(n)) factors.push_back({k, free_generator(alg)});
        w.add(coeff, factors);
      }
      if (!w.is_zero()) return w;
    }
  }

  /// A chain a_0 da_1 ... da_q of elements of F_pA (block 2^p).
  OmegaMonomial omega_monomial(const AlgebraRef& alg, std::size_t q, std::size_t p) {
    OmegaMonomial m;
    const std::size_t width = std::size_t{1} << p;
    for (std::size_t i = 0; i <= q; ++i) {
      TensorPoly t(alg, width);
      Factors key;
      for (std::size_t s = 0; s < width; ++s) key.push_back(coin() ? alg->unit() : free_element(alg, 1, 1));
      t.add_term(rational(true), key);
      m.chain.push_back(std::move(t));
    }
    return m;
  }

  /// Polynomial in the given variables with total degree <= max_degree.
  Poly polynomial(const std::vector<std::string>& vars, unsigned max_degree, std::size_t max_terms = 4) {
    Poly p;
    const std::size_t terms = 1 + index(max_terms);
    for (std::size_t t = 0; t < terms; ++t) {
      Poly m(Scalar(integer(-4, 4)));
      const unsigned deg = static_cast<unsigned>(integer(0, max_degree));
      for (unsigned d = 0; d < deg; ++d) m *= Poly::var(vars[index(vars.size())]);
      p += m;
    }
    return p;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace ncdiff
