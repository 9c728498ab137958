#pragma once

#include <algorithm>
#include <cstddef>
#include <iostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncdiff/tensor.hpp"

namespace ncdiff {

/// Levels above this are legal but expand into 2^level slots; callers may
/// warn when they exceed it.
inline constexpr std::size_t default_level_cap = 4;

/// An element of the frame algebra F_pA = A_{2^p}.
struct FrameElem {
  std::size_t level = 0;
  TensorPoly body;

  FrameElem(std::size_t lvl, TensorPoly b) : level(lvl), body(std::move(b)) {
    if (body.degree() != (std::size_t{1} << level))
      throw std::invalid_argument("FrameElem: body degree " + std::to_string(body.degree()) + " does not match level " +
                                  std::to_string(level));
  }

  static FrameElem of(const AlgElem& a) { return {0, TensorPoly::of(a)}; }
  static FrameElem unit(const AlgebraRef& alg, std::size_t level) {
    return {level, TensorPoly::unit(alg, std::size_t{1} << level)};
  }
  static FrameElem zero(const AlgebraRef& alg, std::size_t level) { return {level, TensorPoly(alg, std::size_t{1} << level)}; }

  const AlgebraRef& algebra() const { return body.algebra(); }
  bool is_zero() const { return body.is_zero(); }
  std::string str() const { return body.str(); }

  friend FrameElem operator+(const FrameElem& a, const FrameElem& b) {
    check_level(a, b);
    return {a.level, a.body + b.body};
  }
  friend FrameElem operator-(const FrameElem& a, const FrameElem& b) {
    check_level(a, b);
    return {a.level, a.body - b.body};
  }
  friend FrameElem operator*(const Scalar& s, const FrameElem& a) { return {a.level, s * a.body}; }
  /// Product of F_pA.
  friend FrameElem operator*(const FrameElem& a, const FrameElem& b) {
    check_level(a, b);
    return {a.level, componentwise_product(a.body, b.body)};
  }
  friend bool operator==(const FrameElem& a, const FrameElem& b) { return a.level == b.level && a.body == b.body; }

  static void check_level(const FrameElem& a, const FrameElem& b) {
    if (a.level != b.level)
      throw std::invalid_argument("FrameElem: level mismatch (" + std::to_string(a.level) + " vs " +
                                  std::to_string(b.level) + ")");
  }
};

inline json to_json(const FrameElem& a) {
  json j = to_json(a.body);
  j["level"] = a.level;
  return j;
}

/// ρ_s α = α ⊗ 1_s.
inline FrameElem rho(const FrameElem& a) {
  return {a.level + 1, tensor_concat(a.body, TensorPoly::unit(a.algebra(), a.body.degree()))};
}

/// λ_s α = 1_s ⊗ α.
inline FrameElem lam(const FrameElem& a) {
  return {a.level + 1, tensor_concat(TensorPoly::unit(a.algebra(), a.body.degree()), a.body)};
}

inline FrameElem lift_to(const FrameElem& a, std::size_t level) {
  if (level < a.level)
    throw std::invalid_argument("lift_to: cannot lower level " + std::to_string(a.level) + " to " + std::to_string(level));
  FrameElem out = a;
  while (out.level < level) out = rho(out);
  return out;
}

inline FrameElem lift_to(const AlgElem& a, std::size_t level) { return lift_to(FrameElem::of(a), level); }

/// Iterated λ; the lift used by the right action of A on F_nA.
inline FrameElem lam_to(const FrameElem& a, std::size_t level) {
  if (level < a.level)
    throw std::invalid_argument("lam_to: cannot lower level " + std::to_string(a.level) + " to " + std::to_string(level));
  FrameElem out = a;
  while (out.level < level) out = lam(out);
  return out;
}

inline FrameElem lam_to(const AlgElem& a, std::size_t level) { return lam_to(FrameElem::of(a), level); }

/// δ_p ω = λ(ω) - ρ(ω) = 1_p ⊗ ω - ω ⊗ 1_p.
inline FrameElem frame_delta(const FrameElem& w) { return lam(w) - rho(w); }

/// δ^n f = δ_{n-1} ... δ_1 δ_0 f.
inline FrameElem delta_iter(const AlgElem& f, std::size_t n) {
  if (n == 0) throw std::invalid_argument("delta_iter: n must be at least 1");
  FrameElem out = FrameElem::of(f);
  for (std::size_t i = 0; i < n; ++i) out = frame_delta(out);
  return out;
}

/// A subset I of E_p = {p-1, ..., 1, 0}.
class SubsetIndex {
 public:
  SubsetIndex(std::size_t p, std::set<std::size_t> members) : p_(p), members_(std::move(members)) {
    for (auto m : members_)
      if (m >= p_)
        throw std::invalid_argument("SubsetIndex: member " + std::to_string(m) + " is not below level " +
                                    std::to_string(p_));
  }

  /// The subset whose members are the set bits of `mask`.
  static SubsetIndex from_bits(std::size_t p, std::size_t mask) {
    std::set<std::size_t> m;
    for (std::size_t s = 0; s < p; ++s)
      if (mask >> s & 1U) m.insert(s);
    return {p, m};
  }

  static SubsetIndex full(std::size_t p) { return from_bits(p, (std::size_t{1} << p) - 1); }

  std::size_t level() const { return p_; }
  const std::set<std::size_t>& members() const { return members_; }
  bool contains(std::size_t s) const { return members_.count(s) != 0; }

  std::size_t bits() const {
    std::size_t m = 0;
    for (auto s : members_) m |= std::size_t{1} << s;
    return m;
  }

  /// Members in decreasing order.
  std::vector<std::size_t> decreasing() const { return {members_.rbegin(), members_.rend()}; }

  /// "{3,1,0}", "{}" for the empty set.
  std::string str() const {
    std::string s = "{";
    bool first = true;
    for (auto m : decreasing()) {
      if (!first) s += ",";
      first = false;
      s += std::to_string(m);
    }
    return s + "}";
  }

  friend bool operator==(const SubsetIndex&, const SubsetIndex&) = default;
  friend auto operator<=>(const SubsetIndex& a, const SubsetIndex& b) {
    if (a.p_ != b.p_) return a.p_ <=> b.p_;
    return a.decreasing() <=> b.decreasing();
  }

 private:
  std::size_t p_;
  std::set<std::size_t> members_;
};

/// δ_I f: scans levels 0..p-1 upward applying δ_s for s ∈ I and ρ_s otherwise.
inline FrameElem delta_I(const AlgElem& f, const SubsetIndex& I) {
  FrameElem out = FrameElem::of(f);
  for (std::size_t s = 0; s < I.level(); ++s) out = I.contains(s) ? frame_delta(out) : rho(out);
  return out;
}

/// f in slot j of F_pA, units elsewhere.
inline FrameElem slot_embed(const AlgElem& f, std::size_t j, std::size_t p) {
  const std::size_t width = std::size_t{1} << p;
  if (j >= width)
    throw std::out_of_range("slot_embed: slot " + std::to_string(j) + " out of range for level " + std::to_string(p));
  Factors key(width, f.spec().unit());
  key[j] = f;
  return {p, TensorPoly::elementary(key)};
}

struct GeneratorTerm {
  Scalar coeff;
  SubsetIndex index;
};

/// Writes slot_embed(f, j, p) in the generators: the sum of δ_I f over all
/// I ⊆ bits(j), each with coefficient 1.
inline std::vector<GeneratorTerm> slot_in_generators(std::size_t j, std::size_t p) {
  const std::size_t width = std::size_t{1} << p;
  if (j >= width)
    throw std::out_of_range("slot_in_generators: slot " + std::to_string(j) + " out of range for level " +
                            std::to_string(p));
  std::vector<GeneratorTerm> out;
  for (std::size_t sub = j;; sub = (sub - 1) & j) {
    out.push_back({Scalar(1), SubsetIndex::from_bits(p, sub)});
    if (sub == 0) break;
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return b.index < a.index; });
  return out;
}

inline FrameElem eval_generators(const AlgElem& f, const std::vector<GeneratorTerm>& terms, std::size_t p) {
  FrameElem out = FrameElem::zero(f.spec_ref(), p);
  for (const auto& t : terms) out = out + t.coeff * delta_I(f, t.index);
  return out;
}

/// True when ω ∈ F_{p+1}A = F_pA ⊗ F_pA lies in Ω¹F_pA = ker m.
inline bool is_universal_one_form(const FrameElem& w) {
  if (w.level == 0) throw std::invalid_argument("is_universal_one_form: level 0 has no one-forms");
  return mult_map(w.body.degree() / 2, w.body).is_zero();
}

inline void warn_if_above_cap(std::size_t level, std::ostream& os = std::cerr) {
  if (level > default_level_cap)
    os << "warning: level " << level << " expands into " << (std::size_t{1} << level) << " tensor slots\n";
}

}  // namespace ncdiff
