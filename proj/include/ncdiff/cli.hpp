#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ncdiff/verify.hpp"

namespace ncdiff {

/// Thrown for bad command-line input; maps to exit status 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "free", "two-point", or a path to an algebra spec JSON file.
inline AlgebraRef load_algebra(const std::string& source) {
  if (source == "free") return free_fghik();
  if (source == "two-point") return two_point_algebra();
  std::ifstream in(source);
  if (!in) throw UsageError("cannot open algebra spec '" + source + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("algebra spec '" + source + "' is not valid JSON: " + e.what());
  }
  return AlgebraSpec::from_json(j);
}

/// "u=1,v=3/2" -> {u: 1, v: 3/2}.
inline std::map<std::string, Scalar> parse_point(const std::string& text) {
  std::map<std::string, Scalar> out;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("expected name=value in '" + item + "'");
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(' '));
      s.erase(s.find_last_not_of(' ') + 1);
      return s;
    };
    out[trim(item.substr(0, eq))] = Scalar::parse_literal(trim(item.substr(eq + 1)));
  }
  return out;
}

inline std::vector<std::string> split_tuple(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    out.push_back(item);
  }
  return out;
}

inline json jet2_json(const Jet2& j) {
  return {{"f", j.f.str()},     {"f_u", j.fx.str()},  {"f_v", j.fy.str()},
          {"f_uu", j.fxx.str()}, {"f_uv", j.fxy.str()}, {"f_vv", j.fyy.str()}};
}

struct CliOptions {
  std::string algebra = "free";
  std::string expr;
  std::string out = "json";
  std::string basis = "tensors";
  bool split = false;
  std::vector<std::string> tuples;
  bool all = false;
  bool nonzero = false;
  std::size_t cap = default_matrix_dim_cap;
  std::string slot_order = "first-innermost";
  std::size_t level = 2;
  std::string suite;
  std::string f, x, y, phi, u, at;
};

namespace detail {

inline std::vector<LeibnizForm> parts_of(const CliOptions& o, const AlgebraRef& alg) {
  auto parts = homogeneous_parts(lower(o.expr, alg));
  if (parts.empty()) parts.push_back(LeibnizForm(alg, 0));
  if (parts.size() > 1 && !o.split)
    throw UsageError("expression mixes orders; pass --split to expand each homogeneous part");
  return parts;
}

inline LeibnizForm single_part(const CliOptions& o, const AlgebraRef& alg) {
  auto parts = homogeneous_parts(lower(o.expr, alg));
  if (parts.size() > 1) throw UsageError("expression mixes orders");
  return parts.empty() ? LeibnizForm(alg, 0) : parts.front();
}

inline int cmd_expand(const CliOptions& o, std::ostream& out) {
  const AlgebraRef alg = load_algebra(o.algebra);
  json results = json::array();
  std::ostringstream pretty;
  for (const auto& w : parts_of(o, alg)) {
    warn_if_above_cap(w.order());
    const FrameElem e = embed(w);
    json j = {{"order", w.order()}, {"level", e.level}, {"form", print_leibniz(w)},
              {"text", e.str()},    {"tensor", to_json(e.body)}};
    pretty << "order " << w.order() << ": " << print_leibniz(w) << "\n  tensor: " << e.str() << "\n";
    if (o.basis == "generators") {
      const GenSum g = generator_expansion(w);
      j["generators"] = print_generators(g);
      pretty << "  generators: " << print_generators(g) << "\n";
    }
    results.push_back(j);
  }
  if (o.out == "pretty")
    out << pretty.str();
  else
    out << (o.split ? json{{"parts", results}} : results.front()).dump(2) << "\n";
  return 0;
}

inline int cmd_eval(const CliOptions& o, std::ostream& out) {
  const AlgebraRef alg = load_algebra(o.algebra);
  if (alg->backend() != Backend::function) throw UsageError("eval needs a function-algebra spec");
  const LeibnizForm w = single_part(o, alg);
  const FrameElem e = embed(w);
  const std::size_t arity = e.body.degree();
  std::vector<std::vector<std::string>> tuples;
  if (o.all) {
    for (const auto& t : all_tuples(alg->points().size(), arity)) {
      std::vector<std::string> names;
      for (auto i : t) names.push_back(alg->points()[i]);
      tuples.push_back(std::move(names));
    }
  }
  for (const auto& t : o.tuples) tuples.push_back(split_tuple(t));
  if (tuples.empty()) throw UsageError("eval needs --tuples or --all");
  json values = json::array();
  std::ostringstream pretty;
  for (const auto& t : tuples) {
    if (t.size() != arity)
      throw UsageError("tuple arity " + std::to_string(t.size()) + " does not match 2^order = " + std::to_string(arity));
    const Scalar v = tensor_eval(e.body, t);
    if (o.nonzero && v.is_zero()) continue;
    values.push_back({{"tuple", t}, {"value", to_json(v)}, {"text", v.str()}});
    std::string key;
    for (std::size_t i = 0; i < t.size(); ++i) key += (i ? "," : "") + t[i];
    pretty << "(" << key << ") = " << v.str() << "\n";
  }
  if (o.out == "pretty")
    out << pretty.str();
  else
    out << json{{"form", print_leibniz(w)}, {"order", w.order()}, {"arity", arity}, {"values", values}}.dump(2) << "\n";
  return 0;
}

inline int cmd_matrix(const CliOptions& o, std::ostream& out) {
  const AlgebraRef alg = load_algebra(o.algebra);
  if (alg->backend() != Backend::matrix && alg->backend() != Backend::function)
    throw UsageError("matrix needs a matrix or function algebra spec");
  SlotOrder order;
  if (o.slot_order == "first-innermost")
    order = SlotOrder::first_innermost;
  else if (o.slot_order == "first-outermost")
    order = SlotOrder::first_outermost;
  else
    throw UsageError("unknown slot order '" + o.slot_order + "'");
  const LeibnizForm w = single_part(o, alg);
  const Matrix m = kronecker_matrix(embed(w).body, o.cap, order);
  if (o.out == "pretty") {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m(r, c).str();
      out << "\n";
    }
  } else {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
      rows.push_back(row);
    }
    out << json{{"form", print_leibniz(w)}, {"dim", m.rows()}, {"matrix", to_json(m)}, {"text", rows}}.dump(2) << "\n";
  }
  return 0;
}

inline int cmd_generators(const CliOptions& o, std::ostream& out) {
  const AlgebraRef alg = load_algebra(o.algebra);
  const LeibnizForm w = single_part(o, alg);
  if (w.order() != 0) throw UsageError("generators needs an algebra element, got a form of order " + std::to_string(w.order()));
  AlgElem f = alg->zero();
  for (const auto& [factors, c] : w.terms()) f = f + c;
  warn_if_above_cap(o.level);
  json gens = json::array(), inversion = json::array();
  std::ostringstream pretty;
  for (std::size_t mask = 0; mask < (std::size_t{1} << o.level); ++mask) {
    const SubsetIndex I = SubsetIndex::from_bits(o.level, mask);
    const FrameElem g = delta_I(f, I);
    gens.push_back({{"index", I.str()}, {"text", g.str()}, {"tensor", to_json(g.body)}});
    pretty << "d" << I.str() << ": " << g.str() << "\n";
  }
  for (std::size_t j = 0; j < (std::size_t{1} << o.level); ++j) {
    json terms = json::array();
    std::vector<std::pair<Scalar, std::string>> lin;
    for (const auto& t : slot_in_generators(j, o.level)) {
      terms.push_back({{"coeff", t.coeff.str()}, {"index", t.index.str()}});
      lin.push_back({t.coeff, "d" + t.index.str()});
    }
    inversion.push_back({{"slot", j}, {"terms", terms}, {"text", slot_embed(f, j, o.level).str()}});
    pretty << "slot " << j << " = " << format_linear_combination(lin) << "\n";
  }
  if (o.out == "pretty")
    out << pretty.str();
  else
    out << json{{"element", f.str()}, {"level", o.level}, {"generators", gens}, {"inversion", inversion}}.dump(2) << "\n";
  return 0;
}

inline int cmd_verify(const CliOptions& o, std::ostream& out) {
  const auto& suites = verify_suites();
  std::vector<std::string> names;
  if (o.suite == "all") {
    for (const auto& [name, fn] : suites) names.push_back(name);
  } else if (suites.count(o.suite)) {
    names.push_back(o.suite);
  } else {
    throw UsageError("unknown suite '" + o.suite + "'");
  }
  bool ok = true;
  json reports = json::array();
  std::ostringstream pretty;
  for (const auto& name : names) {
    const Report r = suites.at(name)();
    ok = ok && r.ok();
    reports.push_back(r.to_json());
    for (const auto& c : r.checks)
      pretty << (c.pass ? "PASS " : "FAIL ") << name << "/" << c.name << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
  }
  if (o.out == "pretty")
    out << pretty.str();
  else
    out << (names.size() == 1 ? reports.front() : json{{"suites", reports}}).dump(2) << "\n";
  return ok ? 0 : 1;
}

inline Poly parse_poly(const std::string& text, const std::string& what) {
  try {
    return Poly::parse(text);
  } catch (const PolyParseError& e) {
    throw UsageError(what + ": " + e.what());
  }
}

inline int cmd_jet(const CliOptions& o, std::ostream& out) {
  if (o.at.empty()) throw UsageError("jet needs --at");
  const auto at = parse_point(o.at);
  if (!o.phi.empty() || !o.u.empty()) {
    if (o.phi.empty() || o.u.empty()) throw UsageError("1D jets need both --phi and --u");
    if (!at.count("v")) throw UsageError("1D jets need --at v=...");
    const Poly phi = parse_poly(o.phi, "--phi"), u = parse_poly(o.u, "--u");
    const Jet1 uj = jet1_of(u, "v", at);
    const Jet1 pj = jet1_of(phi, "u", {{"u", u.evaluate(at)}});
    const TransferMatrix1 t = TransferMatrix1::of(uj);
    const Jet1 r = apply_transfer(pj, t);
    if (o.out == "pretty") {
      out << "phi_v = " << r.d1.str() << "\nphi_vv = " << r.d2.str() << "\ntransfer = [[" << t.m(0, 0).str() << ", "
          << t.m(0, 1).str() << "], [0, " << t.m(1, 1).str() << "]]\n";
    } else {
      json m = json::array({json::array({t.m(0, 0).str(), t.m(0, 1).str()}), json::array({t.m(1, 0).str(), t.m(1, 1).str()})});
      out << json{{"phi_v", r.d1.str()}, {"phi_vv", r.d2.str()}, {"transfer", m}}.dump(2) << "\n";
    }
    return 0;
  }
  if (o.f.empty() || o.x.empty() || o.y.empty()) throw UsageError("2D jets need --f, --x and --y");
  if (!at.count("u") || !at.count("v")) throw UsageError("2D jets need --at u=...,v=...");
  const Poly f = parse_poly(o.f, "--f"), x = parse_poly(o.x, "--x"), y = parse_poly(o.y, "--y");
  const ChangeOfVars2 cv{jet2_of(x, "u", "v", at), jet2_of(y, "u", "v", at)};
  const Jet2 fj = jet2_of(f, "x", "y", {{"x", cv.x.f}, {"y", cv.y.f}});
  const Jet2 r = transform_jet2(fj, cv);
  const bool invariant = delta2_invariance_check(fj, cv);
  if (o.out == "pretty") {
    const json j = jet2_json(r);
    for (const char* k : {"f", "f_u", "f_v", "f_uu", "f_uv", "f_vv"}) out << k << " = " << j.at(k).get<std::string>() << "\n";
    out << "second differential invariant: " << (invariant ? "yes" : "no") << "\n";
  } else {
    out << json{{"point", {{"u", at.at("u").str()}, {"v", at.at("v").str()}}},
                {"image", {{"x", cv.x.f.str()}, {"y", cv.y.f.str()}}},
                {"jet", jet2_json(r)},
                {"second_differential_invariant", invariant}}
                   .dump(2)
        << "\n";
  }
  return 0;
}

}  // namespace detail

/// Runs the command line; returns the process exit status.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Exact higher-order noncommutative differentials"};
  app.require_subcommand(1);
  CliOptions o;

  auto common = [&](CLI::App* c, bool needs_expr) {
    c->add_option("--algebra", o.algebra, "algebra spec JSON file, or 'free' / 'two-point'");
    auto* e = c->add_option("--expr", o.expr, "form expression, e.g. \"x@d2(x)\"");
    if (needs_expr) e->required();
    c->add_option("--out", o.out, "output format")->check(CLI::IsMember({"json", "pretty"}));
  };

  auto* expand = app.add_subcommand("expand", "tensor expansion of a form");
  common(expand, true);
  expand->add_option("--basis", o.basis)->check(CLI::IsMember({"tensors", "generators"}));
  expand->add_flag("--split", o.split, "expand each homogeneous part of a mixed expression");

  auto* eval = app.add_subcommand("eval", "values of a form on a function algebra");
  common(eval, true);
  eval->add_option("--tuples", o.tuples, "comma-separated point names, repeatable");
  eval->add_flag("--all", o.all, "all tuples of points");
  eval->add_flag("--nonzero", o.nonzero, "omit zero values");

  auto* matrix = app.add_subcommand("matrix", "Kronecker matrix of a form");
  common(matrix, true);
  matrix->add_option("--cap", o.cap, "largest allowed matrix dimension");
  matrix->add_option("--slot-order", o.slot_order)->check(CLI::IsMember({"first-innermost", "first-outermost"}));

  auto* gens = app.add_subcommand("generators", "the generators d_I of an element and the slot inversion");
  common(gens, true);
  gens->add_option("--level", o.level, "frame level p")->check(CLI::Range(0, 16));

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suites_help = "all";
  for (const auto& [name, fn] : verify_suites()) suites_help += ", " + name;
  verify->add_option("suite", o.suite, suites_help)->required();
  verify->add_option("--out", o.out)->check(CLI::IsMember({"json", "pretty"}));

  auto* jet = app.add_subcommand("jet", "second-order chain rule at a point");
  jet->add_option("--f", o.f, "f(x, y)");
  jet->add_option("--x", o.x, "x(u, v)");
  jet->add_option("--y", o.y, "y(u, v)");
  jet->add_option("--phi", o.phi, "phi(u)");
  jet->add_option("--u", o.u, "u(v)");
  jet->add_option("--at", o.at, "point, e.g. u=1,v=2")->required();
  jet->add_option("--out", o.out)->check(CLI::IsMember({"json", "pretty"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (expand->parsed()) return detail::cmd_expand(o, out);
    if (eval->parsed()) return detail::cmd_eval(o, out);
    if (matrix->parsed()) return detail::cmd_matrix(o, out);
    if (gens->parsed()) return detail::cmd_generators(o, out);
    if (verify->parsed()) return detail::cmd_verify(o, out);
    if (jet->parsed()) return detail::cmd_jet(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.line() << ":" << e.column() << ": " << e.message() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace ncdiff
