#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "ncdiff/frame.hpp"

namespace ncdiff {

/// δ^power (arg).
struct LeibnizFactor {
  std::size_t power;
  AlgElem arg;

  friend bool operator==(const LeibnizFactor& a, const LeibnizFactor& b) {
    return a.power == b.power && a.arg == b.arg;
  }
  friend bool operator<(const LeibnizFactor& a, const LeibnizFactor& b) {
    if (a.power != b.power) return a.power < b.power;
    return a.arg < b.arg;
  }
};

using FactorList = std::vector<LeibnizFactor>;

struct FactorListLess {
  bool operator()(const FactorList& a, const FactorList& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

inline std::size_t order_of(const FactorList& f) {
  std::size_t n = 0;
  for (const auto& x : f) n += x.power;
  return n;
}

/// A homogeneous element of D_nA: a sum of canonical monomials
/// a · δ^{k_1}g_1 ⊙ ... ⊙ δ^{k_r}g_r with the coefficient a at the far left.
/// Arguments g_i are normalized like tensor slots (words for the free
/// backend, monic elements otherwise) and never multiples of the unit; order
/// zero is the bare coefficient with an empty factor list.
class LeibnizForm {
 public:
  using TermMap = std::map<FactorList, AlgElem, FactorListLess>;

  LeibnizForm(AlgebraRef alg, std::size_t order) : alg_(std::move(alg)), order_(order) {}

  /// The order-0 form a.
  static LeibnizForm scalar_part(const AlgElem& a) {
    LeibnizForm w(a.spec_ref(), 0);
    w.add(a, {});
    return w;
  }

  /// a · δ^{k_1}g_1 ⊙ ... ⊙ δ^{k_r}g_r, normalized.
  static LeibnizForm monomial(const AlgElem& coeff, const FactorList& factors) {
    LeibnizForm w(coeff.spec_ref(), order_of(factors));
    w.add(coeff, factors);
    return w;
  }

  /// δ^k g.
  static LeibnizForm delta_power(const AlgElem& g, std::size_t k) {
    if (k == 0) return scalar_part(g);
    return monomial(g.spec().unit(), {{k, g}});
  }

  const AlgebraRef& algebra() const { return alg_; }
  std::size_t order() const { return order_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds coeff · factors, splitting each argument linearly. Terms with a
  /// unit-multiple argument vanish since δ1 = 0.
  void add(const AlgElem& coeff, const FactorList& factors) {
    if (coeff.spec_ref() != alg_) throw AlgebraError("LeibnizForm: coefficient from a different algebra");
    if (order_of(factors) != order_)
      throw std::invalid_argument("LeibnizForm: monomial of order " + std::to_string(order_of(factors)) +
                                  " added to a form of order " + std::to_string(order_));
    if (coeff.is_zero()) return;
    std::vector<std::vector<std::pair<Scalar, AlgElem>>> pieces;
    for (const auto& f : factors) {
      if (f.power == 0) throw std::invalid_argument("LeibnizForm: factor with power 0");
      if (f.arg.spec_ref() != alg_) throw AlgebraError("LeibnizForm: argument from a different algebra");
      std::vector<std::pair<Scalar, AlgElem>> p;
      for (auto& [c, e] : f.arg.split())
        if (!e.unit_multiple()) p.emplace_back(c, e);
      if (p.empty()) return;
      pieces.push_back(std::move(p));
    }
    std::vector<std::size_t> idx(pieces.size(), 0);
    while (true) {
      Scalar c(1);
      FactorList key;
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        c *= pieces[i][idx[i]].first;
        key.push_back({factors[i].power, pieces[i][idx[i]].second});
      }
      accumulate(c * coeff, std::move(key));
      std::size_t i = 0;
      for (; i < pieces.size(); ++i) {
        if (++idx[i] < pieces[i].size()) break;
        idx[i] = 0;
      }
      if (i == pieces.size()) return;
    }
  }

  LeibnizForm operator-() const { return Scalar(-1) * *this; }

  friend LeibnizForm operator+(LeibnizForm a, const LeibnizForm& b) {
    a.check_compatible(b);
    for (const auto& [k, c] : b.terms_) a.accumulate(c, FactorList(k));
    return a;
  }
  friend LeibnizForm operator-(const LeibnizForm& a, const LeibnizForm& b) { return a + (-b); }
  LeibnizForm& operator+=(const LeibnizForm& b) { return *this = *this + b; }
  LeibnizForm& operator-=(const LeibnizForm& b) { return *this = *this - b; }

  friend LeibnizForm operator*(const Scalar& s, LeibnizForm w) {
    LeibnizForm out(w.alg_, w.order_);
    for (const auto& [k, c] : w.terms_) out.accumulate(s * c, FactorList(k));
    return out;
  }

  /// Equality of normal forms. Complete for the free backend; for other
  /// backends compare embeddings instead.
  friend bool operator==(const LeibnizForm& a, const LeibnizForm& b) {
    return a.alg_ == b.alg_ && a.order_ == b.order_ && a.terms_ == b.terms_;
  }

  friend bool operator<(const LeibnizForm& a, const LeibnizForm& b) {
    if (a.order_ != b.order_) return a.order_ < b.order_;
    return std::lexicographical_compare(a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
                                        [](const auto& x, const auto& y) {
                                          if (x.first != y.first) return FactorListLess{}(x.first, y.first);
                                          return x.second < y.second;
                                        });
  }

  void check_compatible(const LeibnizForm& o) const {
    if (alg_ != o.alg_) throw AlgebraError("LeibnizForm: algebra mismatch");
    if (order_ != o.order_)
      throw std::invalid_argument("LeibnizForm: order mismatch (" + std::to_string(order_) + " vs " +
                                  std::to_string(o.order_) + ")");
  }

 private:
  void accumulate(const AlgElem& c, FactorList&& key) {
    if (c.is_zero()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(std::move(key), c);
      return;
    }
    AlgElem sum = it->second + c;
    if (sum.is_zero())
      terms_.erase(it);
    else
      it->second = sum;
  }

  AlgebraRef alg_;
  std::size_t order_;
  TermMap terms_;
};

/// a · w.
inline LeibnizForm module_mul(const AlgElem& a, const LeibnizForm& w) {
  LeibnizForm out(w.algebra(), w.order());
  for (const auto& [k, c] : w.terms()) out.add(a * c, k);
  return out;
}

/// δ(a · δ^{k_1}g_1 ⊙ ... ⊙ δ^{k_r}g_r)
///   = δa ⊙ δ^{k_1}g_1 ⊙ ... + Σ_i a · ... ⊙ δ^{k_i+1}g_i ⊙ ...
inline LeibnizForm symbolic_delta(const LeibnizForm& w) {
  LeibnizForm out(w.algebra(), w.order() + 1);
  const AlgElem one = w.algebra()->unit();
  for (const auto& [factors, a] : w.terms()) {
    FactorList head{{1, a}};
    head.insert(head.end(), factors.begin(), factors.end());
    out.add(one, head);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      FactorList raised = factors;
      ++raised[i].power;
      out.add(a, raised);
    }
  }
  return out;
}

inline LeibnizForm symbolic_delta(const LeibnizForm& w, std::size_t times) {
  LeibnizForm out = w;
  for (std::size_t i = 0; i < times; ++i) out = symbolic_delta(out);
  return out;
}

namespace detail {

using HeadKey = std::tuple<std::size_t, AlgElem, LeibnizForm>;

struct HeadKeyLess {
  bool operator()(const HeadKey& a, const HeadKey& b) const {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
    return std::get<2>(a) < std::get<2>(b);
  }
};

class OdotEngine {
 public:
  // δ^k g ⊙ σ.
  LeibnizForm head(std::size_t k, const AlgElem& g, const LeibnizForm& sigma) {
    HeadKey key{k, g, sigma};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    LeibnizForm out = compute(k, g, sigma);
    memo_.emplace(std::move(key), out);
    return out;
  }

  // (δ^{k_1}g_1 ⊙ ... ⊙ δ^{k_r}g_r) ⊙ σ = δ^{k_1}g_1 ⊙ (... ⊙ (δ^{k_r}g_r ⊙ σ)).
  LeibnizForm chain(const FactorList& factors, const LeibnizForm& sigma) {
    LeibnizForm acc = sigma;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) acc = head(it->power, it->arg, acc);
    return acc;
  }

  LeibnizForm odot(const LeibnizForm& u, const LeibnizForm& v) {
    if (u.algebra() != v.algebra()) throw AlgebraError("odot: algebra mismatch");
    LeibnizForm out(u.algebra(), u.order() + v.order());
    for (const auto& [factors, a] : u.terms()) out += module_mul(a, chain(factors, v));
    return out;
  }

 private:
  LeibnizForm compute(std::size_t k, const AlgElem& g, const LeibnizForm& sigma) {
    if (k == 1) return symbolic_delta(module_mul(g, sigma)) - module_mul(g, symbolic_delta(sigma));
    return symbolic_delta(head(k - 1, g, sigma)) - head(k - 1, g, symbolic_delta(sigma));
  }

  std::map<HeadKey, LeibnizForm, HeadKeyLess> memo_;
};

}  // namespace detail

/// The ⊙ product of D A.
inline LeibnizForm odot(const LeibnizForm& u, const LeibnizForm& v) {
  detail::OdotEngine engine;
  return engine.odot(u, v);
}

// Embedding into the frame algebra ---------------------------------------------

namespace detail {

class Embedder {
 public:
  FrameElem embed(const LeibnizForm& w) {
    FrameElem out = FrameElem::zero(w.algebra(), w.order());
    for (const auto& [factors, a] : w.terms()) out = out + lift_to(a, w.order()) * chain(factors, w.algebra());
    return out;
  }

  FrameElem chain(const FactorList& factors, const AlgebraRef& alg) {
    if (factors.empty()) return FrameElem::unit(alg, 0);
    FactorList rest(factors.begin() + 1, factors.end());
    LeibnizForm sigma(alg, order_of(rest));
    sigma.add(alg->unit(), rest);
    return head(factors.front().power, factors.front().arg, sigma);
  }

  // embed(δ^k g ⊙ σ) for an arbitrary form σ.
  FrameElem head(std::size_t k, const AlgElem& g, const LeibnizForm& sigma) {
    HeadKey key{k, g, sigma};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    FrameElem out = compute(k, g, sigma);
    memo_.emplace(std::move(key), out);
    return out;
  }

 private:
  FrameElem compute(std::size_t k, const AlgElem& g, const LeibnizForm& sigma) {
    if (k == 1) {
      const FrameElem e = embed(sigma);
      return frame_delta(lift_to(g, e.level) * e) - lift_to(g, e.level + 1) * frame_delta(e);
    }
    return frame_delta(head(k - 1, g, sigma)) - head(k - 1, g, symbolic_delta(sigma));
  }

  std::map<HeadKey, FrameElem, HeadKeyLess> memo_;
};

}  // namespace detail

/// The image of a Leibniz form of order n in F_nA.
inline FrameElem embed(const LeibnizForm& w) {
  detail::Embedder e;
  return e.embed(w);
}

/// Compositions of n (the monomial types of order n), ordered reverse
/// lexicographically: (n) first, (1, ..., 1) last.
inline std::vector<std::vector<std::size_t>> enumerate_types(std::size_t n) {
  if (n == 0) throw std::invalid_argument("enumerate_types: n must be at least 1");
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t remaining) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t k = remaining; k >= 1; --k) {
      cur.push_back(k);
      self(self, remaining - k);
      cur.pop_back();
    }
  };
  rec(rec, n);
  return out;
}

// Generator monomials -----------------------------------------------------------

/// δ_I g inside a product of generators.
struct GenFactor {
  SubsetIndex index;
  AlgElem arg;

  friend bool operator==(const GenFactor& a, const GenFactor& b) { return a.index == b.index && a.arg == b.arg; }
  friend bool operator<(const GenFactor& a, const GenFactor& b) {
    if (a.index != b.index) return b.index < a.index;
    return a.arg < b.arg;
  }
};

enum class LiftRule {
  /// At each level the differentiating factor owns the level: factors to its
  /// left are lifted by ρ, factors to its right by λ.
  owner,
  /// Every factor is the plain δ_I g, lifted by ρ at the levels outside I.
  rho_only,
};

inline std::string_view to_string(LiftRule r) { return r == LiftRule::owner ? "owner" : "rho_only"; }

/// Evaluates a product δ_{I_1}g_1 δ_{I_2}g_2 ... written without lifts, as in
/// "δ_2 g δ_{10} h". The index sets must be disjoint. Under the owner rule,
/// at each level s the factor whose index contains s applies δ_s; factors to
/// its left are lifted by ρ_s and factors to its right by λ_s. At a level no
/// index contains, every factor is lifted by ρ_s. The lifted factors are
/// multiplied in F_nA from left to right, and the coefficient is lifted by ρ.
inline FrameElem generator_monomial_eval(const std::vector<GenFactor>& factors, std::size_t n,
                                         const std::optional<AlgElem>& coeff = std::nullopt,
                                         LiftRule rule = LiftRule::owner) {
  if (factors.empty() && !coeff) throw std::invalid_argument("generator_monomial_eval: empty monomial");
  std::vector<std::optional<std::size_t>> owner(n);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].index.level() != n)
      throw std::invalid_argument("generator_monomial_eval: index " + factors[i].index.str() + " is at level " +
                                  std::to_string(factors[i].index.level()) + ", expected " + std::to_string(n));
    for (auto s : factors[i].index.members()) {
      if (owner[s])
        throw std::invalid_argument("generator_monomial_eval: level " + std::to_string(s) +
                                    " is differentiated by two factors");
      owner[s] = i;
    }
  }
  const AlgebraRef& alg = factors.empty() ? coeff->spec_ref() : factors.front().arg.spec_ref();
  FrameElem product = coeff ? lift_to(*coeff, n) : FrameElem::unit(alg, n);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    FrameElem x = FrameElem::of(factors[i].arg);
    for (std::size_t s = 0; s < n; ++s) {
      if (!owner[s] || i < *owner[s] || (rule == LiftRule::rho_only && i != *owner[s]))
        x = rho(x);
      else if (i == *owner[s])
        x = frame_delta(x);
      else
        x = lam(x);
    }
    product = product * x;
  }
  return product;
}

/// A sum of lead · δ_{I_1}g_1 ... δ_{I_r}g_r at level n, keyed by the
/// factor list; leads with the same factor list are added.
class GenSum {
 public:
  using Key = std::vector<GenFactor>;
  struct KeyLess {
    bool operator()(const Key& a, const Key& b) const {
      return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
  };
  using TermMap = std::map<Key, AlgElem, KeyLess>;

  GenSum(AlgebraRef alg, std::size_t level) : alg_(std::move(alg)), level_(level) {}

  const AlgebraRef& algebra() const { return alg_; }
  std::size_t level() const { return level_; }
  const TermMap& terms() const { return terms_; }

  void add(const AlgElem& lead, const Key& factors) {
    if (lead.is_zero()) return;
    std::vector<std::vector<std::pair<Scalar, AlgElem>>> pieces;
    for (const auto& f : factors) {
      std::vector<std::pair<Scalar, AlgElem>> p;
      for (auto& [c, e] : f.arg.split()) {
        // δ_I(c·1) vanishes unless I is empty.
        if (e.unit_multiple() && !f.index.members().empty()) continue;
        p.emplace_back(c, e);
      }
      if (p.empty()) return;
      pieces.push_back(std::move(p));
    }
    std::vector<std::size_t> idx(pieces.size(), 0);
    while (true) {
      Scalar c(1);
      Key key;
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        c *= pieces[i][idx[i]].first;
        key.push_back({factors[i].index, pieces[i][idx[i]].second});
      }
      accumulate(c * lead, std::move(key));
      std::size_t i = 0;
      for (; i < pieces.size(); ++i) {
        if (++idx[i] < pieces[i].size()) break;
        idx[i] = 0;
      }
      if (i == pieces.size()) return;
    }
  }

  friend GenSum operator+(GenSum a, const GenSum& b) {
    a.check_compatible(b);
    for (const auto& [k, c] : b.terms_) a.accumulate(c, Key(k));
    return a;
  }
  friend GenSum operator-(const GenSum& a, const GenSum& b) {
    GenSum neg(b.alg_, b.level_);
    for (const auto& [k, c] : b.terms_) neg.accumulate(-c, Key(k));
    return a + neg;
  }

  /// a · this: leads are multiplied on the left.
  GenSum left_mul(const AlgElem& a) const {
    GenSum out(alg_, level_);
    for (const auto& [k, c] : terms_) out.add(a * c, k);
    return out;
  }

  /// ρ to the next level: every index is reinterpreted one level up.
  GenSum lift() const {
    GenSum out(alg_, level_ + 1);
    for (const auto& [k, c] : terms_) out.add(c, reindex(k, level_ + 1));
    return out;
  }

  /// δ_level by the derivation rule: δ(ρ(a)·X) = δ_{level}(a)·λ(X) + ρ(a)·δX,
  /// with δX distributed over the factors of X.
  GenSum delta() const {
    const std::size_t n = level_;
    GenSum out(alg_, n + 1);
    const AlgElem one = alg_->unit();
    for (const auto& [k, a] : terms_) {
      Key lifted = reindex(k, n + 1);
      Key with_lead{{SubsetIndex(n + 1, {n}), a}};
      with_lead.insert(with_lead.end(), lifted.begin(), lifted.end());
      out.add(one, with_lead);
      for (std::size_t i = 0; i < lifted.size(); ++i) {
        Key raised = lifted;
        auto members = raised[i].index.members();
        members.insert(n);
        raised[i].index = SubsetIndex(n + 1, members);
        out.add(a, raised);
      }
    }
    return out;
  }

  FrameElem eval() const {
    FrameElem out = FrameElem::zero(alg_, level_);
    for (const auto& [k, a] : terms_) out = out + generator_monomial_eval(k, level_, a);
    return out;
  }

  void check_compatible(const GenSum& o) const {
    if (alg_ != o.alg_) throw AlgebraError("GenSum: algebra mismatch");
    if (level_ != o.level_) throw std::invalid_argument("GenSum: level mismatch");
  }

 private:
  static Key reindex(const Key& k, std::size_t level) {
    Key out;
    for (const auto& f : k) out.push_back({SubsetIndex(level, f.index.members()), f.arg});
    return out;
  }

  void accumulate(const AlgElem& c, Key&& key) {
    if (c.is_zero()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(std::move(key), c);
      return;
    }
    AlgElem sum = it->second + c;
    if (sum.is_zero())
      terms_.erase(it);
    else
      it->second = sum;
  }

  AlgebraRef alg_;
  std::size_t level_;
  TermMap terms_;
};

namespace detail {

class GeneratorExpander {
 public:
  GenSum expand(const LeibnizForm& w) {
    GenSum out(w.algebra(), w.order());
    for (const auto& [factors, a] : w.terms()) out = out + chain(factors, w.algebra()).left_mul(a);
    return out;
  }

 private:
  GenSum chain(const FactorList& factors, const AlgebraRef& alg) {
    if (factors.empty()) {
      GenSum one(alg, 0);
      one.add(alg->unit(), {});
      return one;
    }
    FactorList rest(factors.begin() + 1, factors.end());
    LeibnizForm sigma(alg, order_of(rest));
    sigma.add(alg->unit(), rest);
    return head(factors.front().power, factors.front().arg, sigma);
  }

  GenSum head(std::size_t k, const AlgElem& g, const LeibnizForm& sigma) {
    HeadKey key{k, g, sigma};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    GenSum out = compute(k, g, sigma);
    memo_.emplace(std::move(key), out);
    return out;
  }

  GenSum compute(std::size_t k, const AlgElem& g, const LeibnizForm& sigma) {
    if (k == 1) {
      const GenSum e = expand(sigma);
      return e.left_mul(g).delta() - e.delta().left_mul(g);
    }
    return head(k - 1, g, sigma).delta() - head(k - 1, g, symbolic_delta(sigma));
  }

  std::map<HeadKey, GenSum, HeadKeyLess> memo_;
};

}  // namespace detail

/// A Leibniz form written in the generators δ_I with lifts suppressed;
/// generator_monomial_eval of every term sums to embed(w).
inline GenSum generator_expansion(const LeibnizForm& w) {
  detail::GeneratorExpander e;
  return e.expand(w);
}

}  // namespace ncdiff
