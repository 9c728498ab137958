#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncdiff/algebra.hpp"

namespace ncdiff {

using Factors = std::vector<AlgElem>;

struct FactorsLess {
  bool operator()(const Factors& a, const Factors& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

/// A finite sum of p-fold elementary tensors over one algebra: an element of
/// A_p (slotwise product) or of T^{p-1}A (glued product), depending on which
/// product is applied.
///
/// Terms are stored with every factor normalized (split into words for the
/// free backend, made monic otherwise), so equal factor tuples merge. This is
/// a complete normal form for the free backend; for the other backends
/// equality goes through canonical(), which expands every slot in a fixed
/// basis containing the unit.
class TensorPoly {
 public:
  using TermMap = std::map<Factors, Scalar, FactorsLess>;

  TensorPoly(AlgebraRef alg, std::size_t degree) : alg_(std::move(alg)), degree_(degree) {
    if (degree_ == 0) throw std::invalid_argument("TensorPoly: degree must be at least 1");
  }

  static TensorPoly unit(const AlgebraRef& alg, std::size_t degree) {
    TensorPoly t(alg, degree);
    t.add_term(Scalar(1), Factors(degree, alg->unit()));
    return t;
  }

  static TensorPoly elementary(const Factors& factors, const Scalar& coeff = Scalar(1)) {
    if (factors.empty()) throw std::invalid_argument("TensorPoly: empty factor list");
    TensorPoly t(factors.front().spec_ref(), factors.size());
    t.add_term(coeff, factors);
    return t;
  }

  /// The degree-1 tensor holding a single algebra element.
  static TensorPoly of(const AlgElem& a) { return elementary({a}); }

  const AlgebraRef& algebra() const { return alg_; }
  std::size_t degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  /// Adds coeff * (f_0 ⊗ ... ⊗ f_{p-1}), normalizing each slot.
  void add_term(const Scalar& coeff, const Factors& factors) {
    if (factors.size() != degree_)
      throw std::invalid_argument("TensorPoly: term has " + std::to_string(factors.size()) + " factors, expected " +
                                  std::to_string(degree_));
    if (coeff.is_zero()) return;
    for (const auto& f : factors)
      if (f.spec_ref() != alg_) throw AlgebraError("TensorPoly: factor from a different algebra");
    std::vector<std::vector<std::pair<Scalar, AlgElem>>> pieces;
    pieces.reserve(factors.size());
    for (const auto& f : factors) {
      auto s = f.split();
      if (s.empty()) return;
      pieces.push_back(std::move(s));
    }
    distribute(coeff, pieces, [this](const Scalar& c, Factors&& key) { accumulate(c, std::move(key)); });
  }

  TensorPoly operator-() const { return Scalar(-1) * *this; }

  friend TensorPoly operator+(TensorPoly a, const TensorPoly& b) {
    a.check_compatible(b);
    for (const auto& [key, c] : b.terms_) a.accumulate(c, Factors(key));
    return a;
  }
  friend TensorPoly operator-(const TensorPoly& a, const TensorPoly& b) { return a + (-b); }
  TensorPoly& operator+=(const TensorPoly& b) { return *this = *this + b; }
  TensorPoly& operator-=(const TensorPoly& b) { return *this = *this - b; }

  friend TensorPoly operator*(const Scalar& s, TensorPoly a) {
    if (s.is_zero()) {
      a.terms_.clear();
      return a;
    }
    for (auto& [key, c] : a.terms_) c *= s;
    return a;
  }

  /// Every slot expanded in the backend's unit-containing basis.
  TensorPoly canonical() const {
    if (alg_->backend() == Backend::free) return *this;
    TensorPoly out(alg_, degree_);
    for (const auto& [key, c] : terms_) {
      std::vector<std::vector<std::pair<Scalar, AlgElem>>> pieces;
      bool zero = false;
      for (const auto& f : key) {
        auto e = f.expand_basis();
        if (e.empty()) {
          zero = true;
          break;
        }
        pieces.push_back(std::move(e));
      }
      if (zero) continue;
      distribute(c, pieces, [&out](const Scalar& s, Factors&& k) { out.accumulate(s, std::move(k)); });
    }
    return out;
  }

  bool is_zero() const { return canonical().terms_.empty(); }

  friend bool operator==(const TensorPoly& a, const TensorPoly& b) {
    a.check_compatible(b);
    return a.canonical().terms_ == b.canonical().terms_;
  }

  /// "1⊗f - f⊗1"; `sep` replaces the tensor sign.
  std::string str(const std::string& sep = "⊗", WordStyle style = WordStyle::compact) const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Scalar, std::string>> parts;
    for (const auto& [key, c] : terms_) {
      std::string body;
      for (std::size_t i = 0; i < key.size(); ++i) {
        if (i) body += sep;
        std::string s = key[i].str(style);
        body += key[i].is_compound() ? "(" + s + ")" : s;
      }
      parts.emplace_back(c, body);
    }
    return format_linear_combination(parts);
  }

  void check_compatible(const TensorPoly& o) const {
    if (alg_ != o.alg_) throw AlgebraError("TensorPoly: algebra mismatch");
    if (degree_ != o.degree_)
      throw std::invalid_argument("TensorPoly: degree mismatch (" + std::to_string(degree_) + " vs " +
                                  std::to_string(o.degree_) + ")");
  }

 private:
  template <typename Sink>
  static void distribute(const Scalar& coeff, const std::vector<std::vector<std::pair<Scalar, AlgElem>>>& pieces,
                         Sink&& sink) {
    std::vector<std::size_t> idx(pieces.size(), 0);
    while (true) {
      Scalar c = coeff;
      Factors key;
      key.reserve(pieces.size());
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        c *= pieces[i][idx[i]].first;
        key.push_back(pieces[i][idx[i]].second);
      }
      sink(c, std::move(key));
      std::size_t i = 0;
      for (; i < pieces.size(); ++i) {
        if (++idx[i] < pieces[i].size()) break;
        idx[i] = 0;
      }
      if (i == pieces.size()) return;
    }
  }

  void accumulate(const Scalar& c, Factors&& key) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(std::move(key), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  AlgebraRef alg_;
  std::size_t degree_;
  TermMap terms_;
};

/// u ⊗ v: concatenation of factor tuples.
inline TensorPoly tensor_concat(const TensorPoly& u, const TensorPoly& v) {
  if (u.algebra() != v.algebra()) throw AlgebraError("tensor_concat: algebra mismatch");
  TensorPoly out(u.algebra(), u.degree() + v.degree());
  for (const auto& [ku, cu] : u.terms())
    for (const auto& [kv, cv] : v.terms()) {
      Factors key = ku;
      key.insert(key.end(), kv.begin(), kv.end());
      out.add_term(cu * cv, key);
    }
  return out;
}

/// The product of A_p: (a_1 ⊗ b_1)(a_2 ⊗ b_2) = a_1 a_2 ⊗ b_1 b_2.
inline TensorPoly componentwise_product(const TensorPoly& u, const TensorPoly& v) {
  u.check_compatible(v);
  TensorPoly out(u.algebra(), u.degree());
  for (const auto& [ku, cu] : u.terms())
    for (const auto& [kv, cv] : v.terms()) {
      Factors key;
      key.reserve(ku.size());
      for (std::size_t i = 0; i < ku.size(); ++i) key.push_back(ku[i] * kv[i]);
      out.add_term(cu * cv, key);
    }
  return out;
}

inline TensorPoly operator*(const TensorPoly& u, const TensorPoly& v) { return componentwise_product(u, v); }

/// Glued product of the T-algebra: the last `block` slots of u are multiplied
/// slotwise with the first `block` slots of v. With block = 1 this is
/// (a_0 ⊗ a_1)(b_0 ⊗ b_1) = a_0 ⊗ a_1 b_0 ⊗ b_1; larger blocks give the
/// T-algebra over A_block.
inline TensorPoly t_algebra_product(const TensorPoly& u, const TensorPoly& v, std::size_t block = 1) {
  if (u.algebra() != v.algebra()) throw AlgebraError("t_algebra_product: algebra mismatch");
  if (block == 0 || u.degree() % block || v.degree() % block)
    throw std::invalid_argument("t_algebra_product: degrees are not multiples of the block size");
  TensorPoly out(u.algebra(), u.degree() + v.degree() - block);
  const std::size_t glue = u.degree() - block;
  for (const auto& [ku, cu] : u.terms())
    for (const auto& [kv, cv] : v.terms()) {
      Factors key(ku.begin(), ku.begin() + glue);
      for (std::size_t i = 0; i < block; ++i) key.push_back(ku[glue + i] * kv[i]);
      key.insert(key.end(), kv.begin() + block, kv.end());
      out.add_term(cu * cv, key);
    }
  return out;
}

/// m_p: reads u as an element of A_p ⊗ A_p and multiplies the halves slotwise.
inline TensorPoly mult_map(std::size_t p, const TensorPoly& u) {
  if (p == 0 || u.degree() != 2 * p)
    throw std::invalid_argument("mult_map: expected degree " + std::to_string(2 * p) + ", got " +
                                std::to_string(u.degree()));
  TensorPoly out(u.algebra(), p);
  for (const auto& [k, c] : u.terms()) {
    Factors key;
    key.reserve(p);
    for (std::size_t i = 0; i < p; ++i) key.push_back(k[i] * k[p + i]);
    out.add_term(c, key);
  }
  return out;
}

/// Value of a function-backend tensor at a tuple of point indices.
inline Scalar tensor_eval(const TensorPoly& u, const std::vector<std::size_t>& points) {
  if (u.algebra()->backend() != Backend::function) throw AlgebraError("tensor_eval needs the function backend");
  if (points.size() != u.degree())
    throw std::invalid_argument("tensor_eval: expected " + std::to_string(u.degree()) + " points, got " +
                                std::to_string(points.size()));
  const std::size_t n = u.algebra()->points().size();
  for (auto p : points)
    if (p >= n) throw std::out_of_range("tensor_eval: point index out of range");
  Scalar total;
  for (const auto& [k, c] : u.terms()) {
    Scalar v = c;
    for (std::size_t i = 0; i < k.size() && !v.is_zero(); ++i) v *= k[i].dense()[points[i]];
    total += v;
  }
  return total;
}

/// Same, with points given by name.
inline Scalar tensor_eval(const TensorPoly& u, const std::vector<std::string>& names) {
  std::vector<std::size_t> idx;
  for (const auto& n : names) {
    auto i = u.algebra()->point_index(n);
    if (!i) throw std::invalid_argument("tensor_eval: unknown point '" + n + "'");
    idx.push_back(*i);
  }
  return tensor_eval(u, idx);
}

inline constexpr std::size_t default_matrix_dim_cap = 256;

/// Which tensor slot becomes the outermost Kronecker factor.
enum class SlotOrder { first_innermost, first_outermost };

/// Dense matrix of a matrix-backend tensor (function-backend tensors use
/// their diagonal image). By default the matrix of a_0 ⊗ a_1 ⊗ ... ⊗ a_{N-1}
/// is kron(a_{N-1}, ..., a_1, a_0): slot 0 is the innermost (fastest varying)
/// index.

inline Matrix kronecker_matrix(const TensorPoly& u, std::size_t cap = default_matrix_dim_cap,
                               SlotOrder order = SlotOrder::first_innermost) {
  const AlgebraSpec& spec = *u.algebra();
  std::size_t k = 0;
  if (spec.backend() == Backend::matrix)
    k = spec.dim();
  else if (spec.backend() == Backend::function)
    k = spec.points().size();
  else
    throw AlgebraError("kronecker_matrix needs the matrix or function backend");
  std::size_t dim = 1;
  for (std::size_t i = 0; i < u.degree(); ++i) {
    dim *= k;
    if (dim > cap)
      throw std::length_error("kronecker_matrix: dimension exceeds the cap of " + std::to_string(cap));
  }
  auto as_matrix = [&](const AlgElem& a) {
    return spec.backend() == Backend::matrix ? spec.to_matrix(a) : spec.diagonal_image()->to_matrix(func_as_diagonal(a));
  };
  Matrix total(dim, dim);
  for (const auto& [key, c] : u.terms()) {
    Matrix m = as_matrix(key.back());
    if (order == SlotOrder::first_outermost) {
      m = as_matrix(key.front());
      for (std::size_t i = 1; i < key.size(); ++i) m = kron(m, as_matrix(key[i]));
    } else {
      for (std::size_t i = key.size() - 1; i-- > 0;) m = kron(m, as_matrix(key[i]));
    }
    total = total + c * m;
  }
  return total;
}

inline json to_json(const TensorPoly& u) {
  json terms = json::array();
  for (const auto& [key, c] : u.terms()) {
    json factors = json::array();
    for (const auto& f : key) factors.push_back(to_json(f));
    terms.push_back({{"coeff", to_json(c)}, {"factors", factors}});
  }
  return {{"degree", u.degree()}, {"terms", terms}};
}

inline TensorPoly tensor_from_json(const AlgebraRef& alg, const json& j) {
  TensorPoly out(alg, j.at("degree").get<std::size_t>());
  for (const auto& t : j.at("terms")) {
    Factors key;
    for (const auto& f : t.at("factors")) key.push_back(alg_elem_from_json(alg, f));
    out.add_term(scalar_from_json(t.at("coeff")), key);
  }
  return out;
}

// Universal forms -------------------------------------------------------------

/// a_0 d a_1 ... d a_q over the algebra A_block; each chain entry is a
/// TensorPoly of degree `block` (block = 1 for the base algebra, 2^p for
/// forms over F_pA).
struct OmegaMonomial {
  std::vector<TensorPoly> chain;

  static OmegaMonomial of(const std::vector<AlgElem>& elems) {
    OmegaMonomial m;
    for (const auto& e : elems) m.chain.push_back(TensorPoly::of(e));
    return m;
  }

  std::size_t degree() const { return chain.size() - 1; }
  std::size_t block() const { return chain.front().degree(); }
  const AlgebraRef& algebra() const { return chain.front().algebra(); }
};

using OmegaSum = std::vector<std::pair<Scalar, OmegaMonomial>>;

/// d(a_0 da_1 ... da_q) = 1 da_0 da_1 ... da_q.
inline OmegaMonomial universal_d(const OmegaMonomial& m) {
  OmegaMonomial out;
  out.chain.push_back(TensorPoly::unit(m.algebra(), m.block()));
  out.chain.insert(out.chain.end(), m.chain.begin(), m.chain.end());
  return out;
}

namespace detail {

inline OmegaMonomial append(OmegaMonomial m, const TensorPoly& b) {
  m.chain.push_back(b);
  return m;
}

// (a_0 da_1 ... da_p) * b, written with b moved into the chain:
// (... da_p) b = ... d(a_p b) - ... a_p db.
inline OmegaSum right_multiply(const OmegaMonomial& a, const TensorPoly& b) {
  if (a.degree() == 0) return {{Scalar(1), OmegaMonomial{{a.chain[0] * b}}}};
  OmegaMonomial head;
  head.chain.assign(a.chain.begin(), a.chain.end() - 1);
  OmegaSum out;
  out.emplace_back(Scalar(1), append(head, a.chain.back() * b));
  for (auto& [c, m] : right_multiply(head, a.chain.back())) out.emplace_back(-c, append(m, b));
  return out;
}

}  // namespace detail

/// Product in ΩA, returned as a sum of monomials of degree p + q.
inline OmegaSum omega_product(const OmegaMonomial& u, const OmegaMonomial& v) {
  if (u.algebra() != v.algebra()) throw AlgebraError("omega_product: algebra mismatch");
  OmegaSum out;
  for (auto& [c, m] : detail::right_multiply(u, v.chain.front())) {
    OmegaMonomial full = m;
    full.chain.insert(full.chain.end(), v.chain.begin() + 1, v.chain.end());
    out.emplace_back(c, std::move(full));
  }
  return out;
}

/// d b = 1 ⊗ b - b ⊗ 1 at block level.
inline TensorPoly universal_d_tensor(const TensorPoly& b) {
  const TensorPoly one = TensorPoly::unit(b.algebra(), b.degree());
  return tensor_concat(one, b) - tensor_concat(b, one);
}

/// Expands a_0 da_1 ... da_q into A_block^{⊗(q+1)}.
inline TensorPoly omega_to_tensor(const OmegaMonomial& m) {
  const std::size_t b = m.block();
  TensorPoly out = m.chain.front();
  for (std::size_t i = 1; i < m.chain.size(); ++i) out = t_algebra_product(out, universal_d_tensor(m.chain[i]), b);
  return out;
}

inline TensorPoly omega_to_tensor(const OmegaSum& s, const AlgebraRef& alg, std::size_t degree) {
  TensorPoly out(alg, degree);
  for (const auto& [c, m] : s) out += c * omega_to_tensor(m);
  return out;
}

/// The element named by a slot text: "1", a symbol, a product "f*g", or
/// for single-letter symbol tables a run of letters "fg".
inline AlgElem slot_literal(const AlgebraRef& alg, const std::string& text) {
  if (text == "1") return alg->unit();
  if (alg->symbol_index(text)) return alg->symbol(text);
  std::vector<std::string> names;
  if (text.find('*') != std::string::npos) {
    std::size_t start = 0;
    while (true) {
      const std::size_t star = text.find('*', start);
      names.push_back(text.substr(start, star - start));
      if (star == std::string::npos) break;
      start = star + 1;
    }
  } else {
    for (char c : text) names.emplace_back(1, c);
  }
  AlgElem out = alg->unit();
  for (const auto& n : names) out = out * (n == "1" ? alg->unit() : alg->symbol(n));
  return out;
}

/// Σ sign_k · (s_0 ⊗ s_1 ⊗ ...), each term written as "1⊗f⊗gh⊗1".
inline TensorPoly tensor_literal(const AlgebraRef& alg, const std::vector<std::pair<int, std::string>>& terms) {
  static const std::string sep = "⊗";
  std::optional<TensorPoly> out;
  for (const auto& [sign, text] : terms) {
    Factors key;
    std::size_t start = 0;
    while (true) {
      const std::size_t at = text.find(sep, start);
      key.push_back(slot_literal(alg, text.substr(start, at - start)));
      if (at == std::string::npos) break;
      start = at + sep.size();
    }
    if (!out) out.emplace(alg, key.size());
    out->add_term(Scalar(sign), key);
  }
  if (!out) throw std::invalid_argument("tensor_literal: no terms");
  return *out;
}

/// Dimension of the span of the given tensors (all of one degree).
inline std::size_t tensor_rank(const std::vector<TensorPoly>& ts) {
  std::map<Factors, std::size_t, FactorsLess> column;
  std::vector<TensorPoly> canon;
  for (const auto& t : ts) {
    canon.push_back(t.canonical());
    for (const auto& [k, c] : canon.back().terms()) column.emplace(k, column.size());
  }
  std::vector<std::vector<Scalar>> rows;
  for (const auto& t : canon) {
    std::vector<Scalar> row(column.size());
    for (const auto& [k, c] : t.terms()) row[column.at(k)] = c;
    rows.push_back(std::move(row));
  }
  return rank(rows);
}

}  // namespace ncdiff
