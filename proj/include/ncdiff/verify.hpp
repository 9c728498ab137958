#pragma once

#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ncdiff/jets.hpp"
#include "ncdiff/parse.hpp"
#include "ncdiff/random.hpp"
#include "ncdiff/tables.hpp"

namespace ncdiff {

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;

  void add(std::string name, bool pass, std::string detail = "") {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }

  std::size_t failed() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.pass ? 0 : 1;
    return n;
  }
  bool ok() const { return failed() == 0; }

  json to_json() const {
    json arr = json::array();
    for (const auto& c : checks) {
      json j = {{"name", c.name}, {"pass", c.pass}};
      if (!c.detail.empty()) j["detail"] = c.detail;
      arr.push_back(j);
    }
    return {{"suite", suite}, {"checks", arr}, {"passed", checks.size() - failed()}, {"failed", failed()}};
  }
};

// Standard algebras ---------------------------------------------------------------

inline AlgebraRef free_fghik() { return AlgebraSpec::free({"f", "g", "h", "i", "k"}); }

/// Functions on {L, R} with the coordinate functions x = (1, 0), y = (0, 1).
inline AlgebraRef two_point_algebra() {
  return AlgebraSpec::function({"L", "R"}, {"x", "y"}, {{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}});
}

/// Tuples of point indices of the given arity, first slot varying slowest.
inline std::vector<std::vector<std::size_t>> all_tuples(std::size_t points, std::size_t arity) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> t(arity, 0);
  while (true) {
    out.push_back(t);
    std::size_t i = arity;
    while (i > 0) {
      --i;
      if (++t[i] < points) break;
      t[i] = 0;
      if (i == 0) return out;
    }
    if (arity == 0) return out;
  }
}

/// The single homogeneous form an expression lowers to.
inline LeibnizForm form_of(const std::string& text, const AlgebraRef& alg) {
  auto parts = homogeneous_parts(lower(text, alg));
  if (parts.size() != 1) throw std::invalid_argument("expression '" + text + "' is not homogeneous");
  return parts.front();
}

namespace detail {

inline FrameElem frame_literal(const AlgebraRef& alg, std::size_t level,
                               const std::vector<std::pair<int, std::string>>& terms) {
  return {level, tensor_literal(alg, terms)};
}

// Applies a word of lifts and differentials such as "rho2 delta1 rho0",
// read right to left as operators.
inline FrameElem apply_ops(const AlgElem& f, const std::string& ops) {
  std::vector<std::string> words;
  std::istringstream in(ops);
  for (std::string w; in >> w;) words.push_back(w);
  FrameElem out = FrameElem::of(f);
  for (auto it = words.rbegin(); it != words.rend(); ++it) {
    const bool is_delta = it->rfind("delta", 0) == 0;
    const std::size_t level = std::stoul(it->substr(is_delta ? 5 : 3));
    if (level != out.level) throw std::logic_error("apply_ops: operator " + *it + " applied at level " + std::to_string(out.level));
    out = is_delta ? frame_delta(out) : rho(out);
  }
  return out;
}

}  // namespace detail

// Suites --------------------------------------------------------------------------

inline Report verify_generators() {
  Report r{"generators", {}};
  const AlgebraRef A = free_fghik();
  const AlgElem f = A->symbol("f");
  using detail::frame_literal;

  const std::vector<std::pair<std::string, std::vector<std::pair<int, std::string>>>> f2 = {
      {"{}", {{1, "f⊗1⊗1⊗1"}}},
      {"{0}", {{1, "1⊗f⊗1⊗1"}, {-1, "f⊗1⊗1⊗1"}}},
      {"{1}", {{1, "1⊗1⊗f⊗1"}, {-1, "f⊗1⊗1⊗1"}}},
      {"{1,0}", {{1, "1⊗1⊗1⊗f"}, {-1, "1⊗1⊗f⊗1"}, {-1, "1⊗f⊗1⊗1"}, {1, "f⊗1⊗1⊗1"}}},
  };
  for (std::size_t mask = 0; mask < 4; ++mask) {
    const SubsetIndex I = SubsetIndex::from_bits(2, mask);
    const auto& [label, terms] = f2[mask];
    const FrameElem got = delta_I(f, I);
    r.add("f2.delta" + label, label == I.str() && got == frame_literal(A, 2, terms), got.str());
  }

  const std::vector<std::vector<std::string>> inversion = {{"{}"}, {"{0}", "{}"}, {"{1}", "{}"}, {"{1,0}", "{1}", "{0}", "{}"}};
  for (std::size_t j = 0; j < 4; ++j) {
    const auto gens = slot_in_generators(j, 2);
    std::vector<std::string> names;
    for (const auto& g : gens) names.push_back(g.index.str());
    const bool same = eval_generators(f, gens, 2) == slot_embed(f, j, 2);
    r.add("f2.inversion.slot" + std::to_string(j), same && names == inversion[j], slot_embed(f, j, 2).str());
  }

  const std::vector<std::pair<std::string, std::string>> f3 = {
      {"{}", "rho2 rho1 rho0"},         {"{0}", "rho2 rho1 delta0"},     {"{1}", "rho2 delta1 rho0"},
      {"{2}", "delta2 rho1 rho0"},      {"{1,0}", "rho2 delta1 delta0"}, {"{2,0}", "delta2 rho1 delta0"},
      {"{2,1}", "delta2 delta1 rho0"},  {"{2,1,0}", "delta2 delta1 delta0"},
  };
  for (const auto& [label, ops] : f3) {
    std::set<std::size_t> members;
    for (char c : label)
      if (c >= '0' && c <= '9') members.insert(static_cast<std::size_t>(c - '0'));
    const FrameElem got = delta_I(f, SubsetIndex(3, members));
    r.add("f3.delta" + label, got.level == 3 && !got.is_zero() && got == detail::apply_ops(f, ops),
          std::to_string(got.body.size()) + " terms");
  }
  for (std::size_t j = 0; j < 8; ++j)
    r.add("f3.roundtrip.slot" + std::to_string(j), eval_generators(f, slot_in_generators(j, 3), 3) == slot_embed(f, j, 3));

  for (std::size_t n = 1; n <= 4; ++n)
    r.add("scan.full_set.n" + std::to_string(n), delta_I(f, SubsetIndex::full(n)) == delta_iter(f, n));

  std::vector<TensorPoly> gens, slots, both;
  for (std::size_t m = 0; m < 4; ++m) {
    gens.push_back(delta_I(f, SubsetIndex::from_bits(2, m)).body);
    slots.push_back(slot_embed(f, m, 2).body);
  }
  both = gens;
  both.insert(both.end(), slots.begin(), slots.end());
  r.add("f2.span", tensor_rank(gens) == 4 && tensor_rank(slots) == 4 && tensor_rank(both) == 4);
  return r;
}

inline Report verify_leibniz() {
  Report r{"leibniz", {}};
  const AlgebraRef A = free_fghik();
  const AlgElem g = A->symbol("g"), h = A->symbol("h");
  using detail::frame_literal;

  const FrameElem d0h = frame_delta(FrameElem::of(h));
  const FrameElem g_d0h = lift_to(g, 1) * d0h;
  r.add("g_x_d0h", g_d0h == frame_literal(A, 1, {{1, "g⊗h"}, {-1, "gh⊗1"}}), g_d0h.str());

  const FrameElem lhs = frame_delta(g_d0h);
  r.add("d1(g_x_d0h)",
        lhs == frame_literal(A, 2, {{1, "1⊗1⊗g⊗h"}, {-1, "1⊗1⊗gh⊗1"}, {-1, "g⊗h⊗1⊗1"}, {1, "gh⊗1⊗1⊗1"}}), lhs.str());

  const FrameElem d1d0h = frame_delta(d0h);
  r.add("d1d0h", d1d0h == frame_literal(A, 2, {{1, "1⊗1⊗1⊗h"}, {-1, "1⊗1⊗h⊗1"}, {-1, "1⊗h⊗1⊗1"}, {1, "h⊗1⊗1⊗1"}}),
        d1d0h.str());

  const FrameElem g_d1d0h = lift_to(g, 2) * d1d0h;
  r.add("g_x_d1d0h",
        g_d1d0h == frame_literal(A, 2, {{1, "g⊗1⊗1⊗h"}, {-1, "g⊗1⊗h⊗1"}, {-1, "g⊗h⊗1⊗1"}, {1, "gh⊗1⊗1⊗1"}}),
        g_d1d0h.str());

  // The right module product lifts δ_0 h by λ_1.
  const FrameElem d1g_d0h = frame_delta(rho(FrameElem::of(g))) * lam(d0h);
  r.add("d1g_x_d0h",
        d1g_d0h == frame_literal(A, 2, {{1, "1⊗1⊗g⊗h"}, {-1, "g⊗1⊗1⊗h"}, {-1, "1⊗1⊗gh⊗1"}, {1, "g⊗1⊗h⊗1"}}),
        d1g_d0h.str());
  r.add("leibniz_rule", lhs == d1g_d0h + g_d1d0h);
  const FrameElem naive = frame_delta(rho(FrameElem::of(g))) * rho(d0h);
  r.add("rho_lift_breaks_rule", !(lhs == naive + g_d1d0h));

  r.add("lambda1_d0h.symbol", lam(d0h) == delta_I(h, SubsetIndex(2, {1, 0})) + delta_I(h, SubsetIndex(2, {0})));
  RandomSource rnd(0x5eed0001);
  bool all = true;
  for (int t = 0; t < 20; ++t) {
    const AlgElem x = rnd.free_element(A, 3, 2);
    const FrameElem d0x = frame_delta(FrameElem::of(x));
    all = all && lam(d0x) == delta_I(x, SubsetIndex(2, {1, 0})) + delta_I(x, SubsetIndex(2, {0})) &&
          lam(d0x) == frame_delta(d0x) + rho(d0x);
  }
  r.add("lambda1_d0h.random", all, "20 random elements");
  r.add("embed.dg_odot_dh", embed(form_of("d(g)@d(h)", A)) == d1g_d0h);
  r.add("embed.g_d2h", embed(form_of("g*d2(h)", A)) == g_d1d0h);
  return r;
}

inline Report verify_d2() {
  Report r{"d2", {}};
  const AlgebraRef A = AlgebraSpec::free({"f", "g", "h"});
  RandomSource rnd(0x5eed0002);
  for (std::size_t p = 0; p <= 2; ++p) {
    const int count = p == 0 ? 34 : 33;
    int zero = 0;
    for (int t = 0; t < count; ++t) {
      const OmegaMonomial m = rnd.omega_monomial(A, rnd.index(3), p);
      if (omega_to_tensor(universal_d(universal_d(m))).is_zero()) ++zero;
    }
    r.add("dd_zero.level" + std::to_string(p), zero == count,
          std::to_string(zero) + "/" + std::to_string(count) + " random monomials");
  }
  const AlgElem f = A->symbol("f");
  const FrameElem d2f = delta_iter(f, 2);
  r.add("delta_squared_nonzero", !d2f.is_zero(), d2f.str());
  r.add("delta_p_squared_zero", omega_to_tensor(universal_d(universal_d(OmegaMonomial{{delta_iter(f, 1).body}}))).is_zero());
  for (std::size_t p = 0; p <= 3; ++p) {
    bool all = true;
    for (int t = 0; t < 5; ++t) {
      FrameElem w = FrameElem::of(rnd.free_element(A));
      for (std::size_t s = 0; s < p; ++s) w = rnd.coin() ? frame_delta(w) : rho(w) + lam_to(rnd.free_element(A), s + 1);
      all = all && is_universal_one_form(frame_delta(w)) && mult_map(w.body.degree(), frame_delta(w).body).is_zero();
    }
    r.add("kernel.level" + std::to_string(p), all);
  }
  return r;
}

inline Report verify_tables() {
  Report r{"tables", {}};
  const AlgebraRef A = free_fghik();
  for (const auto& row : leibniz_table()) {
    const FrameElem lhs = embed(form_of(row.lhs, A));
    const bool owner = lhs == eval_table_rhs(row, A, LiftRule::owner);
    const bool rho_only = lhs == eval_table_rhs(row, A, LiftRule::rho_only);
    std::string rules;
    if (owner) rules += "owner";
    if (rho_only) rules += rules.empty() ? "rho_only" : ", rho_only";
    r.add(row.name, owner, row.lhs + "; lift_rule: " + (rules.empty() ? "none" : rules));
  }
  for (const auto& row : leibniz_table()) {
    const LeibnizForm w = form_of(row.lhs, A);
    r.add(row.name + ".expansion", generator_expansion(w).eval() == embed(w), print_generators(generator_expansion(w)));
  }
  return r;
}

inline Report verify_odot() {
  Report r{"odot", {}};
  const AlgebraRef A = AlgebraSpec::free({"f", "g", "h"});
  const AlgElem f = A->symbol("f");
  RandomSource rnd(0x5eed0003);
  int assoc = 0, assoc_embed = 0, deriv = 0, rule = 0;
  const int trials = 50;
  for (int t = 0; t < trials; ++t) {
    std::size_t a = rnd.index(3), b = rnd.index(3), c = rnd.index(3);
    while (a + b + c > 4) {
      if (a) --a;
      else if (b) --b;
      else --c;
    }
    const LeibnizForm u = rnd.leibniz_form(A, a), v = rnd.leibniz_form(A, b), w = rnd.leibniz_form(A, c);
    const LeibnizForm left = odot(odot(u, v), w), right = odot(u, odot(v, w));
    if (left == right) ++assoc;
    if (embed(left) == embed(right)) ++assoc_embed;
    const LeibnizForm x = rnd.leibniz_form(A, rnd.index(4));
    if (embed(symbolic_delta(x)) == frame_delta(embed(x))) ++deriv;
    const LeibnizForm p = rnd.leibniz_form(A, rnd.index(2)), q = rnd.leibniz_form(A, rnd.index(2));
    if (symbolic_delta(odot(p, q)) == odot(symbolic_delta(p), q) + odot(p, symbolic_delta(q))) ++rule;
  }
  auto frac = [&](int n) { return std::to_string(n) + "/" + std::to_string(trials); };
  r.add("associativity.symbolic", assoc == trials, frac(assoc));
  r.add("associativity.embedded", assoc_embed == trials, frac(assoc_embed));
  r.add("embed_intertwines_delta", deriv == trials, frac(deriv));
  r.add("delta_is_derivation", rule == trials, frac(rule));
  r.add("order0_is_module_product", form_of("f@d(g)@d(h)", A) == module_mul(f, form_of("d(g)@d(h)", A)));
  r.add("example.df_dg_dh", odot(form_of("d(f)@d(g)", A), form_of("d(h)", A)) == odot(form_of("d(f)", A), form_of("d(g)@d(h)", A)));
  r.add("example.d2g_dh",
        odot(form_of("d2(g)", A), form_of("d(h)", A)) ==
            symbolic_delta(form_of("d(g)@d(h)", A)) - odot(form_of("d(g)", A), form_of("d2(h)", A)));
  return r;
}

inline Report verify_eval() {
  Report r{"eval", {}};
  RandomSource rnd(0x5eed0004);
  std::vector<std::vector<Scalar>> values(4, std::vector<Scalar>(3));
  for (auto& v : values)
    for (auto& s : v) s = rnd.rational();
  const AlgebraRef A = AlgebraSpec::function({"a", "b", "c"}, {"f", "g", "h", "k"}, values);
  auto F = [&](std::size_t sym, std::size_t pt) { return values[sym][pt]; };
  const std::size_t f = 0, g = 1, h = 2, k = 3;

  const TensorPoly fdg = embed(form_of("f*d(g)", A)).body;
  const TensorPoly fd2g = embed(form_of("f*d2(g)", A)).body;
  const TensorPoly fdgdh = embed(form_of("f*d(g)@d(h)", A)).body;
  const TensorPoly omega3 = omega_to_tensor(OmegaMonomial::of({A->symbol("f"), A->symbol("g"), A->symbol("h"), A->symbol("k")}));

  bool ok1 = true, vanish1 = true;
  for (const auto& t : all_tuples(3, 2)) {
    const Scalar v = tensor_eval(fdg, t);
    ok1 = ok1 && v == F(f, t[0]) * (F(g, t[1]) - F(g, t[0]));
    if (t[0] == t[1]) vanish1 = vanish1 && v.is_zero();
  }
  r.add("f_dg.closed_form", ok1, "9 tuples");
  r.add("f_dg.vanishes_on_diagonal", vanish1);

  bool ok2 = true, ok3 = true, ok4 = true, vanish2 = true, vanish3 = true;
  for (const auto& t : all_tuples(3, 4)) {
    const auto [x, y, z, w] = std::tuple{t[0], t[1], t[2], t[3]};
    const Scalar v2 = tensor_eval(fd2g, t);
    const Scalar v3 = tensor_eval(fdgdh, t);
    ok2 = ok2 && v2 == F(f, x) * ((F(g, w) - F(g, z)) - (F(g, y) - F(g, x)));
    ok3 = ok3 && v3 == F(f, x) * (F(g, z) - F(g, x)) * (F(h, w) - F(h, z));
    ok4 = ok4 && tensor_eval(omega3, t) == F(f, x) * (F(g, y) - F(g, x)) * (F(h, z) - F(h, y)) * (F(k, w) - F(k, z));
    if ((x == y && z == w) || (x == z && y == w)) vanish2 = vanish2 && v2.is_zero();
    if (x == z && z == w) vanish3 = vanish3 && v3.is_zero();
  }
  r.add("f_d2g.closed_form", ok2, "81 tuples");
  r.add("f_dg_dh.closed_form", ok3, "81 tuples");
  r.add("omega3.closed_form", ok4, "81 tuples");
  r.add("f_d2g.vanishing", vanish2);
  r.add("f_dg_dh.vanishing", vanish3);
  return r;
}

inline Report verify_twopoint() {
  Report r{"twopoint", {}};
  const AlgebraRef A = two_point_algebra();
  const AlgElem x = A->symbol("x"), y = A->symbol("y");
  r.add("relations", x * y == A->zero() && y * x == A->zero() && x * x == x && y * y == y && x + y == A->unit());

  const TensorPoly xdx = embed(form_of("x*d(x)", A)).body, ydy = embed(form_of("y*d(y)", A)).body;
  const std::vector<std::tuple<std::string, std::string, int, int>> table1 = {
      {"L", "L", 0, 0}, {"L", "R", -1, 0}, {"R", "L", 0, -1}, {"R", "R", 0, 0}};
  for (const auto& [p, q, vx, vy] : table1) {
    r.add("x_d0x(" + p + "," + q + ")", tensor_eval(xdx, std::vector<std::string>{p, q}) == Scalar(vx));
    r.add("y_d0y(" + p + "," + q + ")", tensor_eval(ydy, std::vector<std::string>{p, q}) == Scalar(vy));
  }

  // f(x)((g(t)-g(z)) - (g(y)-g(x))) with f = g = x.
  const std::map<std::string, int> nonzero = {{"LLLR", -1}, {"LLRL", 1}, {"LRLL", 1}, {"LRRR", 1}, {"LRRL", 2}};
  const TensorPoly xd2x = embed(form_of("x@d2(x)", A)).body;
  std::size_t nz = 0;
  bool table_ok = true;
  for (const auto& t : all_tuples(2, 4)) {
    std::string key;
    std::vector<std::string> names;
    for (auto i : t) {
      key += A->points()[i];
      names.push_back(A->points()[i]);
    }
    const Scalar v = tensor_eval(xd2x, names);
    auto it = nonzero.find(key);
    const Scalar expected = it == nonzero.end() ? Scalar(0) : Scalar(it->second);
    if (!v.is_zero()) ++nz;
    table_ok = table_ok && v == expected;
  }
  r.add("x_d2x.table", table_ok && nz == 5, std::to_string(nz) + " nonzero values");
  r.add("x_d2x(L,R,R,L)", tensor_eval(xd2x, std::vector<std::string>{"L", "R", "R", "L"}) == Scalar(2));

  r.add("x_d2x.expansion",
        xd2x == tensor_literal(A, {{1, "x⊗1⊗1⊗x"}, {-1, "x⊗1⊗x⊗1"}, {-1, "x⊗x⊗1⊗1"}, {1, "x⊗1⊗1⊗1"}}), xd2x.str());
  const TensorPoly xdxdx = embed(form_of("x@d(x)@d(x)", A)).body;
  r.add("x_dx_dx.expansion", xdxdx == tensor_literal(A, {{1, "x⊗1⊗x⊗x"}, {-1, "x⊗1⊗1⊗x"}}), xdxdx.str());

  // f = diag(λ, μ), ε = μ - λ.
  const Scalar lambda = Scalar::rational(3, 2), mu = Scalar(-2), eps = mu - lambda;
  const AlgElem fdiag = lambda * x + mu * y;
  r.add("f_as_diagonal", A->diagonal_image()->to_matrix(func_as_diagonal(fdiag)) == [&] {
    Matrix m(2, 2);
    m(0, 0) = lambda;
    m(1, 1) = mu;
    return m;
  }());
  const Matrix df = kronecker_matrix(delta_iter(fdiag, 1).body);
  const std::vector<int> df_pattern = {0, -1, 1, 0};
  bool df_ok = df.rows() == 4;
  for (std::size_t i = 0; i < 4 && df_ok; ++i)
    for (std::size_t j = 0; j < 4; ++j) df_ok = df_ok && df(i, j) == (i == j ? Scalar(df_pattern[i]) * eps : Scalar(0));
  r.add("delta_f.diagonal", df_ok);
  const Matrix d2f = kronecker_matrix(delta_iter(fdiag, 2).body);
  const std::vector<int> pattern = {0, 1, -1, 0, -1, 0, -2, -1, 1, 2, 0, 1, 0, 1, -1, 0};
  bool d2_ok = d2f.rows() == 16;
  for (std::size_t i = 0; i < 16 && d2_ok; ++i)
    for (std::size_t j = 0; j < 16; ++j) d2_ok = d2_ok && d2f(i, j) == (i == j ? Scalar(pattern[i]) * eps : Scalar(0));
  r.add("delta2_f.diagonal", d2_ok, "diag(0,e,-e,0,-e,0,-2e,-e,e,2e,0,e,0,e,-e,0)");

  std::vector<TensorPoly> stated2, all2;
  for (const char* s : {"x@d2(x)", "y@d2(y)", "x@d(x)@d(x)", "y@d(y)@d(y)"}) stated2.push_back(embed(form_of(s, A)).body);
  for (const char* a : {"x", "y"})
    for (const char* b : {"x", "y"}) {
      all2.push_back(embed(form_of(std::string(a) + "*d2(" + b + ")", A)).body);
      for (const char* c : {"x", "y"})
        all2.push_back(embed(form_of(std::string(a) + "*d(" + b + ")@d(" + c + ")", A)).body);
    }
  std::vector<TensorPoly> joined2 = all2;
  joined2.insert(joined2.end(), stated2.begin(), stated2.end());
  r.add("D2.spanned_by_four", tensor_rank(stated2) == 4 && tensor_rank(all2) == 4 && tensor_rank(joined2) == 4,
        "dim D2 = " + std::to_string(tensor_rank(all2)));

  const auto types3 = enumerate_types(3);
  std::vector<TensorPoly> stated3;
  for (const auto& type : types3)
    for (const char* s : {"x", "y"}) {
      std::string expr = s;
      for (auto k : type) expr += "@" + detail::delta_name(k) + "(" + s + ")";
      stated3.push_back(embed(form_of(expr, A)).body);
    }
  r.add("D3.eight_types", types3.size() == 4 && stated3.size() == 8 && tensor_rank(stated3) == 8);
  return r;
}

/// Matrix of the given expression for a symbolic k x k element f, by
/// linearity in f: entry (r, c) is a commutative polynomial in f_i_j.
inline std::vector<std::vector<AlgElem>> symbolic_matrix(const std::string& expr, std::size_t k,
                                                         const AlgebraRef& entries) {
  std::vector<std::vector<AlgElem>> out;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Matrix unit(k, k);
      unit(i, j) = Scalar(1);
      const AlgebraRef M = AlgebraSpec::matrix(k, {"f"}, {unit});
      const Matrix m = kronecker_matrix(embed(form_of(expr, M)).body);
      if (out.empty()) out.assign(m.rows(), std::vector<AlgElem>(m.cols(), entries->zero()));
      const AlgElem sym = entries->symbol("f" + std::to_string(i + 1) + std::to_string(j + 1));
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = out[r][c] + m(r, c) * sym;
    }
  return out;
}

inline Report verify_matrix() {
  Report r{"matrix", {}};
  const AlgebraRef E = AlgebraSpec::free({"f11", "f12", "f21", "f22"}, true);
  auto e = [&](const std::string& s) { return s == "0" ? E->zero() : slot_literal(E, s); };
  auto lin = [&](std::initializer_list<std::pair<int, const char*>> terms) {
    AlgElem out = E->zero();
    for (const auto& [c, s] : terms) out = out + Scalar(c) * e(s);
    return out;
  };
  const std::vector<std::vector<AlgElem>> expected = {
      {E->zero(), lin({{-1, "f12"}}), lin({{1, "f12"}}), E->zero()},
      {lin({{-1, "f21"}}), lin({{1, "f11"}, {-1, "f22"}}), E->zero(), lin({{1, "f12"}})},
      {lin({{1, "f21"}}), E->zero(), lin({{1, "f22"}, {-1, "f11"}}), lin({{-1, "f12"}})},
      {E->zero(), lin({{1, "f21"}}), lin({{-1, "f21"}}), E->zero()},
  };
  const auto got = symbolic_matrix("d(f)", 2, E);
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) mismatches += got[i][j] == expected[i][j] ? 0 : 1;
  r.add("delta_f.symbolic_4x4", mismatches == 0, std::to_string(mismatches) + " mismatched entries");
  r.add("delta_f.entry_3_1_is_f21", got[3][1] == e("f21"), got[3][1].str());

  RandomSource rnd(0x5eed0005);
  bool all = true;
  for (int t = 0; t < 10; ++t) {
    const AlgebraRef M = AlgebraSpec::matrix(2, {"f"}, {Matrix(2, 2)});
    const AlgElem f = rnd.matrix_element(M);
    const Matrix df = kronecker_matrix(delta_iter(f, 1).body);
    const Matrix d2f = kronecker_matrix(delta_iter(f, 2).body);
    const Matrix I4 = Matrix::identity(4);
    const Matrix fm = M->to_matrix(f);
    all = all && df == kron(fm, Matrix::identity(2)) - kron(Matrix::identity(2), fm) &&
          d2f == kron(df, I4) - kron(I4, df);
    const Matrix df_out = kronecker_matrix(delta_iter(f, 1).body, default_matrix_dim_cap, SlotOrder::first_outermost);
    const Matrix d2f_out = kronecker_matrix(delta_iter(f, 2).body, default_matrix_dim_cap, SlotOrder::first_outermost);
    all = all && d2f_out == kron(I4, df_out) - kron(df_out, I4);
  }
  r.add("delta2_f.kronecker", all, "10 random rational 2x2 matrices");
  const AlgebraRef M = AlgebraSpec::matrix(2, {"f"}, {Matrix::identity(2)});
  r.add("delta_1.zero", kronecker_matrix(embed(form_of("d(1)", M)).body).is_zero());
  return r;
}

inline Report verify_jets() {
  Report r{"jets", {}};
  RandomSource rnd(0x5eed0006);
  auto point = [&](const std::string& a, const std::string& b) {
    return std::map<std::string, Scalar>{{a, rnd.rational()}, {b, rnd.rational()}};
  };
  int ok = 0, inv = 0;
  for (int t = 0; t < 100; ++t) {
    const Poly f = rnd.polynomial({"x", "y"}, 3);
    const Poly X = rnd.polynomial({"u", "v"}, 2), Y = rnd.polynomial({"u", "v"}, 2);
    const auto at = point("u", "v");
    const std::map<std::string, Scalar> image{{"x", X.evaluate(at)}, {"y", Y.evaluate(at)}};
    const Jet2 fj = jet2_of(f, "x", "y", image);
    const ChangeOfVars2 cv{jet2_of(X, "u", "v", at), jet2_of(Y, "u", "v", at)};
    const Jet2 oracle = jet2_of(f.compose({{"x", X}, {"y", Y}}), "u", "v", at);
    if (transform_jet2(fj, cv) == oracle) ++ok;
    if (delta2_invariance_check(fj, cv)) ++inv;
  }
  r.add("transform.oracle", ok == 100, std::to_string(ok) + "/100");
  r.add("invariance.full_expansion", inv == 100, std::to_string(inv) + "/100");

  int chain = 0, matrix_eq = 0, multiplicative = 0, shape = 0;
  for (int t = 0; t < 100; ++t) {
    const Poly phi = rnd.polynomial({"u"}, 3), U = rnd.polynomial({"v"}, 3), V = rnd.polynomial({"w"}, 2);
    const Scalar w0 = rnd.rational();
    const Scalar v0 = V.evaluate({{"w", w0}});
    const Scalar u0 = U.evaluate({{"v", v0}});
    const Jet1 phij = jet1_of(phi, "u", {{"u", u0}});
    const Jet1 uj = jet1_of(U, "v", {{"v", v0}});
    const Jet1 direct = jet1_of(phi.compose({{"u", U}}), "v", {{"v", v0}});
    if (chain2_1d(phij, uj) == direct) ++chain;
    if (apply_transfer(phij, TransferMatrix1::of(uj)) == direct) ++matrix_eq;
    const TransferMatrix1 m = transfer_compose(TransferMatrix1::of(uj), TransferMatrix1::of(jet1_of(V, "w", {{"w", w0}})));
    if (m == TransferMatrix1::of(jet1_of(U.compose({{"v", V}}), "w", {{"w", w0}}))) ++multiplicative;
    if (m.has_shape()) ++shape;
  }
  r.add("chain2_1d.oracle", chain == 100, std::to_string(chain) + "/100");
  r.add("transfer.matrix_equation", matrix_eq == 100, std::to_string(matrix_eq) + "/100");
  r.add("transfer.multiplicative", multiplicative == 100, std::to_string(multiplicative) + "/100");
  r.add("transfer.shape", shape == 100, std::to_string(shape) + "/100");

  int linear = 0, linear_trunc = 0, detected = 0, nonlinear = 0;
  for (int t = 0; t < 50; ++t) {
    const Poly X = rnd.polynomial({"u", "v"}, 1), Y = rnd.polynomial({"u", "v"}, 1);
    const ChangeOfVars2 cv{jet2_of(X, "u", "v", {{"u", 0}, {"v", 0}}), jet2_of(Y, "u", "v", {{"u", 0}, {"v", 0}})};
    Jet2 fj{rnd.rational(), rnd.rational(), rnd.rational(), rnd.rational(), rnd.rational(), rnd.rational()};
    Jet2 other = fj;
    other.fx = rnd.rational();
    other.fy = rnd.rational();
    const Jet2 a = transform_jet2(fj, cv), b = transform_jet2(other, cv);
    if (a.fxx == b.fxx && a.fxy == b.fxy && a.fyy == b.fyy) ++linear;
    if (delta2_invariance_check(fj, cv, Expansion::drop_first_derivative_terms)) ++linear_trunc;

    const Poly Xn = X + Poly::var("u") * Poly::var("u"), Yn = Y + Poly::var("u") * Poly::var("v");
    const ChangeOfVars2 cn{jet2_of(Xn, "u", "v", {{"u", 1}, {"v", 1}}), jet2_of(Yn, "u", "v", {{"u", 1}, {"v", 1}})};
    Jet2 fn = fj;
    fn.fx = rnd.rational(true);
    fn.fy = Scalar(0);
    ++nonlinear;
    if (!delta2_invariance_check(fn, cn, Expansion::drop_first_derivative_terms) && delta2_invariance_check(fn, cn))
      ++detected;
  }
  r.add("linear_change.no_first_derivative_terms", linear == 50 && linear_trunc == 50,
        std::to_string(linear) + "/50, truncated check " + std::to_string(linear_trunc) + "/50");
  r.add("nonlinear_change.truncation_detected", detected == nonlinear,
        std::to_string(detected) + "/" + std::to_string(nonlinear));
  return r;
}

inline Report verify_types() {
  Report r{"types", {}};
  for (std::size_t n = 1; n <= 8; ++n)
    r.add("count.n" + std::to_string(n), enumerate_types(n).size() == (std::size_t{1} << (n - 1)));
  using T = std::vector<std::size_t>;
  const std::map<std::size_t, std::set<T>> listed = {
      {1, {{1}}},
      {2, {{2}, {1, 1}}},
      {3, {{3}, {1, 2}, {2, 1}, {1, 1, 1}}},
      {4, {{4}, {1, 3}, {1, 2, 1}, {1, 1, 2}, {1, 1, 1, 1}, {2, 2}, {2, 1, 1}, {3, 1}}},
  };
  for (const auto& [n, types] : listed) {
    const auto got = enumerate_types(n);
    r.add("listing.n" + std::to_string(n), std::set<T>(got.begin(), got.end()) == types && got.size() == types.size());
  }

  const AlgebraRef A = AlgebraSpec::free({"f", "g", "h"});
  for (std::size_t n = 2; n <= 3; ++n) {
    std::vector<TensorPoly> same, weighted;
    for (const auto& type : enumerate_types(n)) {
      FactorList factors;
      for (auto k : type) factors.push_back({k, A->symbol("f")});
      const FrameElem e = embed(LeibnizForm::monomial(A->unit(), factors));
      same.push_back(e.body);
      for (const char* c : {"1", "f", "g"}) weighted.push_back((lift_to(slot_literal(A, c), n) * e).body);
    }
    const std::size_t expected = std::size_t{1} << (n - 1);
    r.add("rank.n" + std::to_string(n), tensor_rank(same) == expected && tensor_rank(weighted) == 3 * expected,
          std::to_string(tensor_rank(same)) + " types, " + std::to_string(tensor_rank(weighted)) + " with coefficients");
  }
  return r;
}

inline const std::map<std::string, std::function<Report()>>& verify_suites() {
  static const std::map<std::string, std::function<Report()>> suites = {
      {"generators", verify_generators}, {"leibniz", verify_leibniz}, {"d2", verify_d2},
      {"tables", verify_tables},         {"odot", verify_odot},       {"eval", verify_eval},
      {"twopoint", verify_twopoint},     {"matrix", verify_matrix},   {"jets", verify_jets},
      {"types", verify_types},
  };
  return suites;
}

}  // namespace ncdiff
