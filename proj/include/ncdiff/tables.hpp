#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncdiff/leibniz.hpp"

namespace ncdiff {

/// One generator monomial of a table row: sign and (index digits, symbol)
/// pairs, e.g. {-1, {{"2", "g"}, {"10", "h"}}} for -δ_2 g δ_{10} h.
struct TableTerm {
  int sign;
  std::vector<std::pair<std::string, std::string>> factors;
};

struct TableRow {
  std::string name;
  std::string lhs;
  std::size_t order;
  std::vector<TableTerm> rhs;
};

/// Expansions of the monomial types of orders 1 to 4 in the generators δ_I,
/// written with suppressed lifts. Repeated terms are kept as printed.
inline const std::vector<TableRow>& leibniz_table() {
  static const std::vector<TableRow> rows = {
      {"order1.row1", "d(g)", 1, {{+1, {{"0", "g"}}}}},

      {"order2.row1", "d2(g)", 2, {{+1, {{"10", "g"}}}}},
      {"order2.row2", "d(g)@d(h)", 2, {{+1, {{"1", "g"}, {"0", "h"}}}}},

      {"order3.row1", "d3(g)", 3, {{+1, {{"210", "g"}}}}},
      {"order3.row2", "d(g)@d2(h)", 3, {{+1, {{"2", "g"}, {"10", "h"}}}}},
      {"order3.row3",
       "d2(g)@d(h)",
       3,
       {{+1, {{"21", "g"}, {"0", "h"}}}, {+1, {{"1", "g"}, {"20", "h"}}}, {-1, {{"2", "g"}, {"10", "h"}}}}},
      {"order3.row4", "d(g)@d(h)@d(i)", 3, {{+1, {{"2", "g"}, {"1", "h"}, {"0", "i"}}}}},

      {"order4.row1", "d4(f)", 4, {{+1, {{"3210", "f"}}}}},
      {"order4.row2", "d(f)@d3(g)", 4, {{+1, {{"3", "f"}, {"210", "g"}}}}},
      {"order4.row3",
       "d(f)@d2(g)@d(h)",
       4,
       {{+1, {{"3", "f"}, {"21", "g"}, {"0", "h"}}},
        {+1, {{"3", "f"}, {"1", "g"}, {"20", "h"}}},
        {-1, {{"3", "f"}, {"2", "g"}, {"10", "h"}}}}},
      {"order4.row4", "d(f)@d(g)@d2(h)", 4, {{+1, {{"3", "f"}, {"2", "g"}, {"10", "h"}}}}},
      {"order4.row5", "d(f)@d(g)@d(h)@d(i)", 4, {{+1, {{"3", "f"}, {"2", "g"}, {"1", "h"}, {"0", "i"}}}}},
      {"order4.row6",
       "d2(f)@d2(g)",
       4,
       {{+1, {{"32", "f"}, {"10", "g"}}}, {+1, {{"2", "f"}, {"310", "g"}}}, {-1, {{"3", "f"}, {"210", "g"}}}}},
      {"order4.row7",
       "d2(f)@d(g)@d(h)",
       4,
       {{+1, {{"32", "f"}, {"1", "g"}, {"0", "h"}}},
        {+1, {{"2", "f"}, {"31", "g"}, {"0", "h"}}},
        {+1, {{"2", "f"}, {"1", "g"}, {"30", "h"}}},
        {-1, {{"3", "f"}, {"21", "g"}, {"0", "h"}}},
        {-1, {{"3", "f"}, {"1", "g"}, {"20", "h"}}},
        {+1, {{"3", "f"}, {"2", "g"}, {"10", "h"}}},
        {-1, {{"3", "f"}, {"2", "g"}, {"10", "h"}}}}},
      {"order4.row8",
       "d3(f)@d(g)",
       4,
       {{+1, {{"321", "f"}, {"0", "g"}}},
        {+1, {{"21", "f"}, {"30", "g"}}},
        {+1, {{"31", "f"}, {"20", "g"}}},
        {+1, {{"1", "f"}, {"320", "g"}}},
        {-1, {{"32", "f"}, {"10", "g"}}},
        {-1, {{"2", "f"}, {"310", "g"}}},
        {-1, {{"32", "f"}, {"10", "g"}}},
        {-1, {{"2", "f"}, {"310", "g"}}},
        {+1, {{"3", "f"}, {"210", "g"}}}}},
  };
  return rows;
}

/// "310" -> {3,1,0} at the given level.
inline SubsetIndex subset_from_digits(const std::string& digits, std::size_t level) {
  std::set<std::size_t> m;
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::invalid_argument("subset_from_digits: bad digit in '" + digits + "'");
    if (!m.insert(static_cast<std::size_t>(c - '0')).second)
      throw std::invalid_argument("subset_from_digits: repeated level in '" + digits + "'");
  }
  return {level, m};
}

/// Sum of the right-hand side of a row under the given lift rule.
inline FrameElem eval_table_rhs(const TableRow& row, const AlgebraRef& alg, LiftRule rule = LiftRule::owner) {
  FrameElem out = FrameElem::zero(alg, row.order);
  for (const auto& t : row.rhs) {
    std::vector<GenFactor> factors;
    for (const auto& [digits, sym] : t.factors) factors.push_back({subset_from_digits(digits, row.order), alg->symbol(sym)});
    out = out + Scalar(t.sign) * generator_monomial_eval(factors, row.order, std::nullopt, rule);
  }
  return out;
}

}  // namespace ncdiff
