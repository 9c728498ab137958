#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncdiff/linalg.hpp"
#include "ncdiff/scalar.hpp"

namespace ncdiff {

enum class Backend { free, function, matrix };

inline std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::free: return "free";
    case Backend::function: return "function";
    case Backend::matrix: return "matrix";
  }
  return "?";
}

/// Raised on operations mixing elements of different algebras, and on
/// requests a backend cannot serve.
class AlgebraError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A word over the symbol table of a free algebra; letters are symbol indices.
using Word = std::vector<int>;

/// Shortlex: the empty word (the unit) sorts first.
struct ShortLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

using WordMap = std::map<Word, Scalar, ShortLex>;

class AlgebraSpec;
using AlgebraRef = std::shared_ptr<const AlgebraSpec>;

/// How words are rendered: `fg` when every symbol is one letter, or always `f*g`.
enum class WordStyle { compact, explicit_star };

/// An element of one of the backend algebras. Values are immutable and
/// always held in canonical form: no zero coefficients in the free backend,
/// letter-sorted words in commutative mode, dense vectors otherwise.
class AlgElem {
 public:
  const AlgebraRef& spec_ref() const { return spec_; }
  const AlgebraSpec& spec() const { return *spec_; }
  Backend backend() const;

  /// Free backend payload.
  const WordMap& words() const { return words_; }
  /// Function values (point order) or matrix entries (row-major).
  const std::vector<Scalar>& dense() const { return dense_; }

  bool is_zero() const {
    if (!words_.empty()) return false;
    return std::all_of(dense_.begin(), dense_.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  /// If the element is c * 1, returns c.
  std::optional<Scalar> unit_multiple() const;

  bool is_unit() const {
    auto c = unit_multiple();
    return c && c->is_one();
  }

  AlgElem operator-() const { return Scalar(-1) * *this; }

  friend AlgElem operator+(const AlgElem& a, const AlgElem& b);
  friend AlgElem operator-(const AlgElem& a, const AlgElem& b) { return a + (-b); }
  friend AlgElem operator*(const AlgElem& a, const AlgElem& b);
  friend AlgElem operator*(const Scalar& s, const AlgElem& a);

  /// Canonical equality; throws AlgebraError when the algebras differ.
  friend bool operator==(const AlgElem& a, const AlgElem& b) {
    check_same_algebra(a, b);
    return a.words_ == b.words_ && a.dense_ == b.dense_;
  }

  /// Total order on canonical forms within one algebra.
  friend bool operator<(const AlgElem& a, const AlgElem& b) {
    if (a.words_ != b.words_)
      return std::lexicographical_compare(a.words_.begin(), a.words_.end(), b.words_.begin(), b.words_.end(),
                                          [](const auto& x, const auto& y) {
                                            if (x.first != y.first) return ShortLex{}(x.first, y.first);
                                            return x.second < y.second;
                                          });
    return a.dense_ < b.dense_;
  }

  /// First nonzero coefficient in canonical order; zero for the zero element.
  Scalar leading_coefficient() const {
    if (!words_.empty()) return words_.begin()->second;
    for (const auto& s : dense_)
      if (!s.is_zero()) return s;
    return Scalar(0);
  }

  /// Splits the element into scalar multiples of normalized pieces. The free
  /// backend yields one piece per word; other backends yield a single piece
  /// scaled so that its leading coefficient is 1.
  std::vector<std::pair<Scalar, AlgElem>> split() const;

  /// Coordinates in a basis that contains the unit: words for the free
  /// backend, {1, e_1, ..., e_{n-1}} for functions (e_i the indicator of
  /// point i), {I} and the matrix units E_ij with (i,j) != (0,0) for matrices.
  std::vector<std::pair<Scalar, AlgElem>> expand_basis() const;

  /// Human-readable form, e.g. "fg - 2h", "x", "1".
  std::string str(WordStyle style = WordStyle::compact) const;

  /// True when str() would need parentheses inside a product.
  bool is_compound() const;

  static void check_same_algebra(const AlgElem& a, const AlgElem& b);

 private:
  friend class AlgebraSpec;
  AlgElem(AlgebraRef spec, WordMap words, std::vector<Scalar> dense)
      : spec_(std::move(spec)), words_(std::move(words)), dense_(std::move(dense)) {}

  AlgebraRef spec_;
  WordMap words_;
  std::vector<Scalar> dense_;
};

/// Describes a backend algebra: its kind, symbol table and the data that
/// realizes each symbol (value tables for functions, matrices for the
/// matrix backend).
class AlgebraSpec : public std::enable_shared_from_this<AlgebraSpec> {
  struct Token {};

 public:
  AlgebraSpec(Token, Backend backend, bool commutative, std::vector<std::string> symbols)
      : backend_(backend), commutative_(commutative), symbols_(std::move(symbols)) {}

  static AlgebraRef free(std::vector<std::string> symbols, bool commutative = false) {
    auto spec = std::make_shared<AlgebraSpec>(Token{}, Backend::free, commutative, std::move(symbols));
    spec->validate_symbols();
    return spec;
  }

  /// `values[s]` lists the value of symbol s at each point, in point order.
  static AlgebraRef function(std::vector<std::string> points, std::vector<std::string> symbols,
                             std::vector<std::vector<Scalar>> values) {
    if (points.empty()) throw AlgebraError("function algebra needs at least one point");
    if (std::set<std::string>(points.begin(), points.end()).size() != points.size())
      throw AlgebraError("duplicate point name");
    if (values.size() != symbols.size()) throw AlgebraError("one value table per symbol is required");
    for (std::size_t s = 0; s < values.size(); ++s)
      if (values[s].size() != points.size())
        throw AlgebraError("value table of '" + symbols[s] + "' does not cover every point");
    auto spec = std::make_shared<AlgebraSpec>(Token{}, Backend::function, true, symbols);
    spec->validate_symbols();
    spec->points_ = points;
    spec->dense_symbols_ = values;

    std::vector<Matrix> diagonals;
    for (const auto& v : values) {
      Matrix m(points.size(), points.size());
      for (std::size_t i = 0; i < v.size(); ++i) m(i, i) = v[i];
      diagonals.push_back(std::move(m));
    }
    spec->diagonal_image_ = matrix(points.size(), std::move(symbols), std::move(diagonals));
    return spec;
  }

  static AlgebraRef matrix(std::size_t dim, std::vector<std::string> symbols, std::vector<Matrix> matrices) {
    if (dim == 0) throw AlgebraError("matrix algebra needs dimension >= 1");
    if (matrices.size() != symbols.size()) throw AlgebraError("one matrix per symbol is required");
    auto spec = std::make_shared<AlgebraSpec>(Token{}, Backend::matrix, false, std::move(symbols));
    spec->validate_symbols();
    spec->dim_ = dim;
    for (std::size_t s = 0; s < matrices.size(); ++s) {
      const Matrix& m = matrices[s];
      if (m.rows() != dim || m.cols() != dim)
        throw AlgebraError("matrix of '" + spec->symbols_[s] + "' is not " + std::to_string(dim) + "x" +
                           std::to_string(dim));
      std::vector<Scalar> entries;
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) entries.push_back(m(i, j));
      spec->dense_symbols_.push_back(std::move(entries));
    }
    return spec;
  }

  /// Loads `{"backend": "free"|"function"|"matrix", "commutative": bool,
  /// "symbols": [...], "points": [...], "values": {sym: {point: scalar}},
  /// "dim": k, "matrices": {sym: [[scalar, ...], ...]}}`.
  static AlgebraRef from_json(const json& j) {
    const std::string backend = j.at("backend").get<std::string>();
    std::vector<std::string> symbols = j.value("symbols", std::vector<std::string>{});
    if (backend == "free") return free(symbols, j.value("commutative", false));
    if (backend == "function") {
      auto points = j.at("points").get<std::vector<std::string>>();
      const json& values = j.at("values");
      std::vector<std::vector<Scalar>> tables;
      for (const auto& s : symbols) {
        if (!values.contains(s)) throw AlgebraError("no value table for symbol '" + s + "'");
        const json& table = values.at(s);
        std::vector<Scalar> row;
        for (const auto& p : points) {
          if (!table.contains(p)) throw AlgebraError("value table of '" + s + "' misses point '" + p + "'");
          row.push_back(scalar_from_json(table.at(p)));
        }
        tables.push_back(std::move(row));
      }
      return function(std::move(points), std::move(symbols), std::move(tables));
    }
    if (backend == "matrix") {
      const auto dim = j.at("dim").get<std::size_t>();
      const json& mats = j.at("matrices");
      std::vector<Matrix> matrices;
      for (const auto& s : symbols) {
        if (!mats.contains(s)) throw AlgebraError("no matrix for symbol '" + s + "'");
        const json& rows = mats.at(s);
        if (!rows.is_array() || rows.size() != dim) throw AlgebraError("matrix of '" + s + "' has wrong row count");
        Matrix m(dim, dim);
        for (std::size_t r = 0; r < dim; ++r) {
          if (!rows[r].is_array() || rows[r].size() != dim)
            throw AlgebraError("matrix of '" + s + "' is not square of size " + std::to_string(dim));
          for (std::size_t c = 0; c < dim; ++c) m(r, c) = scalar_from_json(rows[r][c]);
        }
        matrices.push_back(std::move(m));
      }
      return matrix(dim, std::move(symbols), std::move(matrices));
    }
    throw AlgebraError("unknown backend '" + backend + "'");
  }

  json to_json() const {
    json j;
    j["backend"] = std::string(ncdiff::to_string(backend_));
    j["commutative"] = commutative_;
    j["symbols"] = symbols_;
    if (backend_ == Backend::function) {
      j["points"] = points_;
      json values = json::object();
      for (std::size_t s = 0; s < symbols_.size(); ++s)
        for (std::size_t p = 0; p < points_.size(); ++p) values[symbols_[s]][points_[p]] = ncdiff::to_json(dense_symbols_[s][p]);
      j["values"] = values;
    }
    if (backend_ == Backend::matrix) {
      j["dim"] = dim_;
      json mats = json::object();
      for (std::size_t s = 0; s < symbols_.size(); ++s) mats[symbols_[s]] = ncdiff::to_json(to_matrix(symbol(symbols_[s])));
      j["matrices"] = mats;
    }
    return j;
  }

  Backend backend() const { return backend_; }
  bool commutative() const { return commutative_; }
  const std::vector<std::string>& symbols() const { return symbols_; }
  const std::vector<std::string>& points() const { return points_; }
  std::size_t dim() const { return dim_; }

  std::optional<int> symbol_index(std::string_view name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      if (symbols_[i] == name) return static_cast<int>(i);
    return std::nullopt;
  }

  std::optional<std::size_t> point_index(std::string_view name) const {
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (points_[i] == name) return i;
    return std::nullopt;
  }

  bool single_letter_symbols() const {
    return std::all_of(symbols_.begin(), symbols_.end(), [](const std::string& s) { return s.size() == 1; });
  }

  AlgElem symbol(std::string_view name) const {
    auto idx = symbol_index(name);
    if (!idx) throw AlgebraError("unknown symbol '" + std::string(name) + "'");
    if (backend_ == Backend::free) return make_free(WordMap{{Word{*idx}, Scalar(1)}});
    return make_dense(dense_symbols_[*idx]);
  }

  AlgElem unit() const { return constant(Scalar(1)); }
  AlgElem zero() const { return constant(Scalar(0)); }

  AlgElem constant(const Scalar& c) const {
    if (backend_ == Backend::free) {
      WordMap w;
      if (!c.is_zero()) w.emplace(Word{}, c);
      return make_free(std::move(w));
    }
    if (backend_ == Backend::function) return make_dense(std::vector<Scalar>(points_.size(), c));
    std::vector<Scalar> e(dim_ * dim_);
    for (std::size_t i = 0; i < dim_; ++i) e[i * dim_ + i] = c;
    return make_dense(std::move(e));
  }

  /// Free backend: the element sum_w coeff_w * w (normalized here).
  AlgElem from_words(const WordMap& words) const {
    if (backend_ != Backend::free) throw AlgebraError("from_words needs the free backend");
    WordMap out;
    for (const auto& [w, c] : words) {
      for (int letter : w)
        if (letter < 0 || letter >= static_cast<int>(symbols_.size())) throw AlgebraError("letter out of range");
      Word key = w;
      if (commutative_) std::sort(key.begin(), key.end());
      out[key] += c;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return make_free(std::move(out));
  }

  /// Function backend: the function with the given values in point order.
  AlgElem function_element(std::vector<Scalar> values) const {
    if (backend_ != Backend::function) throw AlgebraError("function_element needs the function backend");
    if (values.size() != points_.size()) throw AlgebraError("value count does not match point count");
    return make_dense(std::move(values));
  }

  AlgElem matrix_element(const Matrix& m) const {
    if (backend_ != Backend::matrix) throw AlgebraError("matrix_element needs the matrix backend");
    if (m.rows() != dim_ || m.cols() != dim_) throw AlgebraError("matrix has the wrong shape");
    std::vector<Scalar> e;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) e.push_back(m(i, j));
    return make_dense(std::move(e));
  }

  Matrix to_matrix(const AlgElem& a) const {
    if (backend_ != Backend::matrix) throw AlgebraError("to_matrix needs the matrix backend");
    Matrix m(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) m(i, j) = a.dense()[i * dim_ + j];
    return m;
  }

  /// The matrix algebra of diagonal |X| x |X| matrices realizing a function
  /// algebra; symbols carry over.
  const AlgebraRef& diagonal_image() const {
    if (backend_ != Backend::function) throw AlgebraError("diagonal_image needs the function backend");
    return diagonal_image_;
  }

  /// Values of the symbols (function backend) or their row-major entries.
  const std::vector<std::vector<Scalar>>& symbol_data() const { return dense_symbols_; }

  AlgElem make_free(WordMap words) const { return AlgElem(shared_from_this(), std::move(words), {}); }
  AlgElem make_dense(std::vector<Scalar> values) const { return AlgElem(shared_from_this(), {}, std::move(values)); }

 private:
  // Names the parser reserves: d, d2, d3, ... introduce differentials.
  static bool reserved_name(const std::string& s) {
    if (s.empty() || s[0] != 'd') return false;
    return std::all_of(s.begin() + 1, s.end(), [](unsigned char c) { return std::isdigit(c); });
  }

  void validate_symbols() const {
    std::set<std::string> seen;
    for (const auto& s : symbols_) {
      if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        throw AlgebraError("symbol '" + s + "' is not an identifier");
      for (unsigned char c : s)
        if (!(std::isalnum(c) || c == '_')) throw AlgebraError("symbol '" + s + "' is not an identifier");
      if (reserved_name(s)) throw AlgebraError("symbol name '" + s + "' is reserved for differentials");
      if (!seen.insert(s).second) throw AlgebraError("duplicate symbol '" + s + "'");
    }
  }

  Backend backend_;
  bool commutative_;
  std::vector<std::string> symbols_;
  std::vector<std::string> points_;
  std::size_t dim_ = 0;
  std::vector<std::vector<Scalar>> dense_symbols_;
  AlgebraRef diagonal_image_;
};

// ---------------------------------------------------------------------------

inline Backend AlgElem::backend() const { return spec_->backend(); }

inline void AlgElem::check_same_algebra(const AlgElem& a, const AlgElem& b) {
  if (a.spec_ != b.spec_) {
    if (!a.spec_ || !b.spec_ || a.spec_->backend() != b.spec_->backend())
      throw AlgebraError("backend mismatch");
    throw AlgebraError("elements belong to different algebras");
  }
}

inline AlgElem operator+(const AlgElem& a, const AlgElem& b) {
  AlgElem::check_same_algebra(a, b);
  if (a.backend() == Backend::free) {
    WordMap w = a.words_;
    for (const auto& [word, c] : b.words_) {
      auto [it, inserted] = w.emplace(word, c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) w.erase(it);
      }
    }
    return a.spec_->make_free(std::move(w));
  }
  std::vector<Scalar> d = a.dense_;
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += b.dense_[i];
  return a.spec_->make_dense(std::move(d));
}

inline AlgElem operator*(const Scalar& s, const AlgElem& a) {
  if (a.backend() == Backend::free) {
    WordMap w;
    if (!s.is_zero())
      for (const auto& [word, c] : a.words_) w.emplace(word, s * c);
    return a.spec_->make_free(std::move(w));
  }
  std::vector<Scalar> d = a.dense_;
  for (auto& x : d) x *= s;
  return a.spec_->make_dense(std::move(d));
}

inline AlgElem operator*(const AlgElem& a, const AlgElem& b) {
  AlgElem::check_same_algebra(a, b);
  const AlgebraSpec& spec = *a.spec_;
  switch (spec.backend()) {
    case Backend::free: {
      WordMap w;
      for (const auto& [wa, ca] : a.words_)
        for (const auto& [wb, cb] : b.words_) {
          Word word = wa;
          word.insert(word.end(), wb.begin(), wb.end());
          if (spec.commutative()) std::sort(word.begin(), word.end());
          w[word] += ca * cb;
        }
      std::erase_if(w, [](const auto& kv) { return kv.second.is_zero(); });
      return spec.make_free(std::move(w));
    }
    case Backend::function: {
      std::vector<Scalar> d(a.dense_.size());
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.dense_[i] * b.dense_[i];
      return spec.make_dense(std::move(d));
    }
    case Backend::matrix: {
      const std::size_t k = spec.dim();
      std::vector<Scalar> d(k * k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t l = 0; l < k; ++l) {
          const Scalar& x = a.dense_[i * k + l];
          if (x.is_zero()) continue;
          for (std::size_t j = 0; j < k; ++j) d[i * k + j] += x * b.dense_[l * k + j];
        }
      return spec.make_dense(std::move(d));
    }
  }
  throw AlgebraError("unreachable backend");
}

inline std::optional<Scalar> AlgElem::unit_multiple() const {
  if (backend() == Backend::free) {
    if (words_.empty()) return Scalar(0);
    if (words_.size() == 1 && words_.begin()->first.empty()) return words_.begin()->second;
    return std::nullopt;
  }
  const AlgElem candidate = spec_->constant(dense_.empty() ? Scalar(0) : leading_coefficient());
  if (candidate.dense_ == dense_) return leading_coefficient();
  return std::nullopt;
}

inline std::vector<std::pair<Scalar, AlgElem>> AlgElem::split() const {
  std::vector<std::pair<Scalar, AlgElem>> out;
  if (backend() == Backend::free) {
    for (const auto& [w, c] : words_) out.emplace_back(c, spec_->make_free(WordMap{{w, Scalar(1)}}));
    return out;
  }
  if (is_zero()) return out;
  const Scalar lead = leading_coefficient();
  out.emplace_back(lead, lead.inverse() * *this);
  return out;
}

inline std::vector<std::pair<Scalar, AlgElem>> AlgElem::expand_basis() const {
  if (backend() == Backend::free) return split();
  std::vector<std::pair<Scalar, AlgElem>> out;
  const std::size_t n = dense_.size();
  if (backend() == Backend::function) {
    const Scalar base = dense_[0];
    if (!base.is_zero()) out.emplace_back(base, spec_->unit());
    for (std::size_t i = 1; i < n; ++i) {
      Scalar c = dense_[i] - base;
      if (c.is_zero()) continue;
      std::vector<Scalar> e(n);
      e[i] = Scalar(1);
      out.emplace_back(c, spec_->make_dense(std::move(e)));
    }
    return out;
  }
  const std::size_t k = spec_->dim();
  const Scalar base = dense_[0];
  if (!base.is_zero()) out.emplace_back(base, spec_->unit());
  for (std::size_t idx = 1; idx < n; ++idx) {
    const bool diagonal = (idx / k) == (idx % k);
    Scalar c = diagonal ? dense_[idx] - base : dense_[idx];
    if (c.is_zero()) continue;
    std::vector<Scalar> e(n);
    e[idx] = Scalar(1);
    out.emplace_back(c, spec_->make_dense(std::move(e)));
  }
  return out;
}

inline bool AlgElem::is_compound() const {
  if (backend() == Backend::free) {
    if (words_.size() > 1) return true;
    if (words_.size() == 1) {
      const Scalar& c = words_.begin()->second;
      return !(c.is_one() || c == Scalar(-1)) && !words_.begin()->first.empty();
    }
    return false;
  }
  const std::string s = str();
  return s.find_first_of(" *") != std::string::npos;
}

inline std::string AlgElem::str(WordStyle style) const {
  const AlgebraSpec& spec = *spec_;
  const auto& names = spec.symbols();
  if (backend() == Backend::free) {
    const bool compact = style == WordStyle::compact && spec.single_letter_symbols();
    std::vector<std::pair<Scalar, std::string>> terms;
    for (const auto& [w, c] : words_) {
      std::string body;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0 && !compact) body += "*";
        body += names[w[i]];
      }
      terms.emplace_back(c, body);
    }
    return format_linear_combination(terms);
  }
  if (is_zero()) return "0";
  if (auto c = unit_multiple()) return format_linear_combination({{*c, ""}});

  // Try a combination of the symbols, then of the symbols and the unit.
  const auto& data = spec.symbol_data();
  for (int with_unit = 0; with_unit < 2; ++with_unit) {
    std::vector<std::vector<Scalar>> columns(data.begin(), data.end());
    if (with_unit) columns.push_back(spec.unit().dense());
    auto sol = solve_combination(columns, dense_);
    if (!sol) continue;
    std::vector<std::pair<Scalar, std::string>> terms;
    for (std::size_t s = 0; s < sol->size(); ++s) {
      if ((*sol)[s].is_zero()) continue;
      terms.emplace_back((*sol)[s], s < names.size() ? names[s] : std::string());
    }
    return format_linear_combination(terms);
  }

  std::string out = "{";
  if (backend() == Backend::function) {
    for (std::size_t p = 0; p < dense_.size(); ++p) {
      if (p) out += ",";
      out += spec.points()[p] + ":" + dense_[p].str();
    }
  } else {
    const std::size_t k = spec.dim();
    for (std::size_t i = 0; i < k; ++i) {
      if (i) out += ";";
      for (std::size_t j = 0; j < k; ++j) {
        if (j) out += ",";
        out += dense_[i * k + j].str();
      }
    }
  }
  return out + "}";
}

// Named operations -----------------------------------------------------------

inline AlgElem alg_mul(const AlgElem& a, const AlgElem& b) { return a * b; }
inline AlgElem alg_add(const AlgElem& a, const AlgElem& b) { return a + b; }
inline AlgElem alg_scale(const Scalar& s, const AlgElem& a) { return s * a; }
inline bool alg_eq(const AlgElem& a, const AlgElem& b) { return a == b; }

/// The diagonal matrix carrying a function's values in point order.
inline AlgElem func_as_diagonal(const AlgElem& a) {
  if (a.backend() != Backend::function) throw AlgebraError("func_as_diagonal needs the function backend");
  const AlgebraRef& target = a.spec().diagonal_image();
  const std::size_t n = a.dense().size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = a.dense()[i];
  return target->matrix_element(m);
}

/// JSON form of an element: free `[{"word": [...], "coeff": S}]`, function
/// `{"values": {point: S}}`, matrix `{"matrix": [[S, ...], ...]}`.
inline json to_json(const AlgElem& a) {
  const AlgebraSpec& spec = a.spec();
  switch (a.backend()) {
    case Backend::free: {
      json arr = json::array();
      for (const auto& [w, c] : a.words()) {
        json word = json::array();
        for (int letter : w) word.push_back(spec.symbols()[letter]);
        arr.push_back({{"word", word}, {"coeff", to_json(c)}});
      }
      return arr;
    }
    case Backend::function: {
      json values = json::object();
      for (std::size_t p = 0; p < a.dense().size(); ++p) values[spec.points()[p]] = to_json(a.dense()[p]);
      return {{"values", values}};
    }
    case Backend::matrix: return {{"matrix", to_json(spec.to_matrix(a))}};
  }
  return nullptr;
}

inline AlgElem alg_elem_from_json(const AlgebraRef& spec, const json& j) {
  switch (spec->backend()) {
    case Backend::free: {
      WordMap words;
      for (const auto& t : j) {
        Word w;
        for (const auto& name : t.at("word")) {
          auto idx = spec->symbol_index(name.get<std::string>());
          if (!idx) throw AlgebraError("unknown symbol " + name.dump());
          w.push_back(*idx);
        }
        words[w] += scalar_from_json(t.at("coeff"));
      }
      return spec->from_words(words);
    }
    case Backend::function: {
      const json& values = j.at("values");
      std::vector<Scalar> v;
      for (const auto& p : spec->points()) v.push_back(scalar_from_json(values.at(p)));
      return spec->function_element(std::move(v));
    }
    case Backend::matrix: {
      const json& rows = j.at("matrix");
      const std::size_t k = spec->dim();
      Matrix m(k, k);
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) m(r, c) = scalar_from_json(rows.at(r).at(c));
      return spec->matrix_element(m);
    }
  }
  throw AlgebraError("unreachable backend");
}

}  // namespace ncdiff
