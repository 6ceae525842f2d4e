#pragma once

// Exact Laurent polynomials over Q in the moduli variables u_j = |z_j|^2,
// monomial changes of variables, and weighted-homogeneity analysis.

#include "reinhardt/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace reinhardt {

using Exponent = std::vector<int>;
using IntMatrix = std::vector<std::vector<long long>>;

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Raised by the text parsers; carries a 1-based line and column.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) +
              ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

inline int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Graded lexicographic: lower total degree first, then u1 before u2 before ...
struct GradedOrder {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

class MonomialMap;

class ModuliPolynomial {
 public:
  using Terms = std::map<Exponent, Rational, GradedOrder>;

  explicit ModuliPolynomial(std::size_t num_vars = 1) : num_vars_(num_vars) {
    if (num_vars == 0) throw DimensionError("polynomial needs at least one variable");
  }

  /// Zero coefficients are dropped; every exponent must have length num_vars.
  ModuliPolynomial(std::size_t num_vars, Terms terms) : ModuliPolynomial(num_vars) {
    for (auto& [e, c] : terms) {
      if (e.size() != num_vars)
        throw DimensionError("exponent length " + std::to_string(e.size()) +
                             " does not match " + std::to_string(num_vars) + " variables");
      if (c != 0) terms_.emplace(e, std::move(c));
    }
  }

  static ModuliPolynomial constant(std::size_t num_vars, const Rational& c) {
    return monomial(num_vars, Exponent(num_vars, 0), c);
  }

  /// u_{index+1}; index is 0-based.
  static ModuliPolynomial variable(std::size_t num_vars, std::size_t index) {
    if (index >= num_vars) throw DimensionError("variable index out of range");
    Exponent e(num_vars, 0);
    e[index] = 1;
    return monomial(num_vars, e, Rational(1));
  }

  static ModuliPolynomial monomial(std::size_t num_vars, Exponent e, const Rational& c) {
    Terms t;
    t.emplace(std::move(e), c);
    return {num_vars, std::move(t)};
  }

  std::size_t num_vars() const { return num_vars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_ordinary() const {
    for (const auto& [e, c] : terms_)
      for (int k : e)
        if (k < 0) return false;
    return true;
  }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0 &&
                              std::all_of(terms_.begin()->first.begin(),
                                          terms_.begin()->first.end(),
                                          [](int k) { return k == 0; }));
  }

  Rational coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coefficient(Exponent(num_vars_, 0)); }

  /// Largest total degree among the terms; 0 for the zero polynomial.
  int degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  /// Largest power of u_{index+1} appearing in any term.
  int degree_in(std::size_t index) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.at(index));
    return d;
  }

  friend ModuliPolynomial operator+(const ModuliPolynomial& a, const ModuliPolynomial& b) {
    check_same(a, b);
    Terms t = a.terms_;
    for (const auto& [e, c] : b.terms_) t[e] += c;
    return {a.num_vars_, std::move(t)};
  }

  friend ModuliPolynomial operator-(const ModuliPolynomial& a, const ModuliPolynomial& b) {
    check_same(a, b);
    Terms t = a.terms_;
    for (const auto& [e, c] : b.terms_) t[e] -= c;
    return {a.num_vars_, std::move(t)};
  }

  ModuliPolynomial operator-() const {
    Terms t = terms_;
    for (auto& [e, c] : t) c = -c;
    return {num_vars_, std::move(t)};
  }

  friend ModuliPolynomial operator*(const ModuliPolynomial& a, const ModuliPolynomial& b) {
    check_same(a, b);
    Terms t;
    Exponent sum(a.num_vars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = ea[k] + eb[k];
        t[sum] += ca * cb;
      }
    }
    return {a.num_vars_, std::move(t)};
  }

  friend ModuliPolynomial operator*(const Rational& s, const ModuliPolynomial& p) {
    Terms t = p.terms_;
    for (auto& [e, c] : t) c *= s;
    return {p.num_vars_, std::move(t)};
  }

  friend bool operator==(const ModuliPolynomial& a, const ModuliPolynomial& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

  ModuliPolynomial pow(unsigned k) const {
    ModuliPolynomial result = constant(num_vars_, Rational(1));
    ModuliPolynomial base = *this;
    while (k != 0) {
      if (k & 1u) result = result * base;
      k >>= 1u;
      if (k != 0) base = base * base;
    }
    return result;
  }

  /// Exact evaluation. Throws Error on 0 raised to a negative power.
  Rational evaluate(std::span<const Rational> u) const {
    check_point(u.size());
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
      Rational term = c;
      for (std::size_t k = 0; k < e.size() && term != 0; ++k)
        if (e[k] != 0) term *= reinhardt::pow(u[k], e[k]);
      sum += term;
    }
    return sum;
  }

  double evaluate(std::span<const double> u) const {
    check_point(u.size());
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
      double term = to_double(c);
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        if (e[k] < 0 && u[k] == 0.0) throw Error("zero raised to a negative power");
        term *= std::pow(u[k], e[k]);
      }
      sum += term;
    }
    return sum;
  }

  /// d/du_{index+1}.
  ModuliPolynomial derivative(std::size_t index) const {
    if (index >= num_vars_) throw DimensionError("derivative index out of range");
    Terms t;
    for (const auto& [e, c] : terms_) {
      if (e[index] == 0) continue;
      Exponent d = e;
      d[index] -= 1;
      t[d] += c * e[index];
    }
    return {num_vars_, std::move(t)};
  }

  std::vector<ModuliPolynomial> gradient() const {
    std::vector<ModuliPolynomial> g;
    g.reserve(num_vars_);
    for (std::size_t j = 0; j < num_vars_; ++j) g.push_back(derivative(j));
    return g;
  }

  /// p∘m: every u_i becomes scalars_i * prod_j u_j^{a_ij}.
  ModuliPolynomial substitute(const MonomialMap& m) const;

  /// Sets u_i = 0 for i in zero_indices (0-based). The result keeps num_vars.
  /// Throws Error when a zeroed variable carries a negative exponent.
  ModuliPolynomial restrict_to_subspace(const std::set<std::size_t>& zero_indices) const {
    Terms t;
    for (const auto& [e, c] : terms_) {
      bool vanishes = false;
      for (std::size_t i : zero_indices) {
        if (i >= num_vars_) throw DimensionError("slice index out of range");
        if (e[i] < 0)
          throw Error("u" + std::to_string(i + 1) +
                      " has a negative exponent; the slice is undefined");
        if (e[i] > 0) vanishes = true;
      }
      if (!vanishes) t[e] += c;
    }
    return {num_vars_, std::move(t)};
  }

  /// Moves u_{i+1} to u_{target[i]+1} in a ring with new_num_vars variables.
  /// Variables mapped to the same target multiply together.
  ModuliPolynomial remap(std::size_t new_num_vars, std::span<const std::size_t> target) const {
    if (target.size() != num_vars_) throw DimensionError("remap table has wrong length");
    Terms t;
    for (const auto& [e, c] : terms_) {
      Exponent ne(new_num_vars, 0);
      for (std::size_t i = 0; i < num_vars_; ++i) {
        if (e[i] == 0) continue;
        if (target[i] >= new_num_vars) throw DimensionError("remap target out of range");
        ne[target[i]] += e[i];
      }
      t[ne] += c;
    }
    return {new_num_vars, std::move(t)};
  }

  /// Replaces u_{i+1} by images[i]; all images share one ring. Ordinary only.
  ModuliPolynomial compose(std::span<const ModuliPolynomial> images) const {
    if (images.size() != num_vars_) throw DimensionError("compose needs one image per variable");
    if (!is_ordinary()) throw Error("compose requires an ordinary polynomial");
    const std::size_t m = images.front().num_vars();
    std::vector<std::vector<ModuliPolynomial>> powers(num_vars_);
    ModuliPolynomial result(m);
    for (const auto& [e, c] : terms_) {
      ModuliPolynomial term = constant(m, c);
      for (std::size_t i = 0; i < num_vars_; ++i) {
        if (e[i] == 0) continue;
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(constant(m, Rational(1)));
        while (static_cast<int>(cache.size()) <= e[i]) cache.push_back(cache.back() * images[i]);
        term = term * cache[e[i]];
      }
      result = result + term;
    }
    return result;
  }

  /// Canonical text in the input grammar, e.g. "u1 + u2^2 - u2*u3 + u3^2".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      const bool negative = c < 0;
      const Rational mag = negative ? Rational(-c) : c;
      if (first)
        out += negative ? "-" : "";
      else
        out += negative ? " - " : " + ";
      first = false;
      std::string mono;
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += "u" + std::to_string(k + 1);
        if (e[k] != 1) mono += "^" + std::to_string(e[k]);
      }
      if (mono.empty())
        out += to_string(mag);
      else if (mag == 1)
        out += mono;
      else
        out += to_string(mag) + "*" + mono;
    }
    return out;
  }

 private:
  static void check_same(const ModuliPolynomial& a, const ModuliPolynomial& b) {
    if (a.num_vars_ != b.num_vars_)
      throw DimensionError("polynomials over " + std::to_string(a.num_vars_) + " and " +
                           std::to_string(b.num_vars_) + " variables");
  }
  void check_point(std::size_t n) const {
    if (n != num_vars_) throw DimensionError("point has wrong dimension");
  }

  std::size_t num_vars_;
  Terms terms_;
};

/// Positive rational weights w_j; a monomial u^l has weight sum_j l_j w_j.
class WeightVector {
 public:
  explicit WeightVector(std::vector<Rational> weights) : weights_(std::move(weights)) {
    for (const auto& w : weights_)
      if (w <= 0) throw Error("weights must be strictly positive");
  }

  /// w_j = 1/m_j.
  static WeightVector from_exponents(std::span<const int> m) {
    std::vector<Rational> w;
    for (int mj : m) {
      if (mj <= 0) throw Error("exponents m_j must be positive");
      w.emplace_back(1, mj);
    }
    return WeightVector(std::move(w));
  }

  std::size_t size() const { return weights_.size(); }
  const Rational& operator[](std::size_t j) const { return weights_[j]; }
  const std::vector<Rational>& values() const { return weights_; }

  Rational weight_of(const Exponent& e) const {
    if (e.size() != weights_.size()) throw DimensionError("weight vector length mismatch");
    Rational s = 0;
    for (std::size_t j = 0; j < e.size(); ++j) s += weights_[j] * e[j];
    return s;
  }

  /// Least common multiple of the weight denominators.
  long long denominator_lcm() const {
    long long l = 1;
    for (const auto& w : weights_) l = std::lcm(l, denominator_of(w).convert_to<long long>());
    return l;
  }

 private:
  std::vector<Rational> weights_;
};

struct WeightedParts {
  ModuliPolynomial homogeneous;
  ModuliPolynomial remainder;
};

inline WeightedParts weighted_decompose(const ModuliPolynomial& p, const WeightVector& w) {
  if (!p.is_ordinary()) throw Error("weighted decomposition requires an ordinary polynomial");
  if (w.size() != p.num_vars()) throw DimensionError("weight vector length mismatch");
  ModuliPolynomial::Terms hom;
  ModuliPolynomial::Terms rest;
  for (const auto& [e, c] : p.terms()) (w.weight_of(e) == 1 ? hom : rest).emplace(e, c);
  return {ModuliPolynomial(p.num_vars(), std::move(hom)),
          ModuliPolynomial(p.num_vars(), std::move(rest))};
}

/// True iff every monomial has weight exactly 1.
inline bool is_weighted_homogeneous(const ModuliPolynomial& p, const WeightVector& w) {
  if (!p.is_ordinary()) throw Error("weighted homogeneity requires an ordinary polynomial");
  if (w.size() != p.num_vars()) throw DimensionError("weight vector length mismatch");
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [&](const auto& t) { return w.weight_of(t.first) == 1; });
}

// ---------------------------------------------------------------------------
// Integer matrices

inline Integer determinant(const IntMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw DimensionError("matrix is not square");
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
  }
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

inline IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

/// Inverse of a unimodular matrix (integer by Cramer's rule).
inline IntMatrix unimodular_inverse(const IntMatrix& a) {
  const std::size_t n = a.size();
  const Integer det = determinant(a);
  if (det != 1 && det != -1) throw Error("matrix is not unimodular");
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
    m[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (m[piv][col] == 0) ++piv;
    std::swap(m[piv], m[col]);
    const Rational inv = Rational(1) / m[col][col];
    for (auto& v : m[col]) v *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t j = 0; j < 2 * n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  IntMatrix out(n, std::vector<long long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = numerator_of(m[i][n + j]).convert_to<long long>();
  return out;
}

/// The monomial change of variables z_i -> lambda_i prod_j z_j^{a_ij} with
/// det(a) = ±1, acting on moduli as u_i -> scalars_i prod_j u_j^{a_ij},
/// scalars_i = |lambda_i|^2 > 0.
class MonomialMap {
 public:
  MonomialMap(std::vector<Rational> scalars, IntMatrix exponents)
      : scalars_(std::move(scalars)), exponents_(std::move(exponents)) {
    const std::size_t n = scalars_.size();
    if (n == 0) throw DimensionError("monomial map needs at least one coordinate");
    if (exponents_.size() != n) throw DimensionError("exponent matrix has wrong size");
    for (const auto& row : exponents_)
      if (row.size() != n) throw DimensionError("exponent matrix is not square");
    for (const auto& s : scalars_)
      if (s <= 0) throw Error("monomial map scalars must be positive");
    const Integer det = determinant(exponents_);
    if (det != 1 && det != -1) throw Error("exponent matrix determinant is " + det.str() + ", not ±1");
  }

  static MonomialMap identity(std::size_t n) {
    return {std::vector<Rational>(n, Rational(1)), identity_matrix(n)};
  }

  /// u_i -> scalars_i * u_{perm[i]} (0-based).
  static MonomialMap permutation(std::span<const std::size_t> perm,
                                 std::vector<Rational> scalars = {}) {
    const std::size_t n = perm.size();
    if (scalars.empty()) scalars.assign(n, Rational(1));
    IntMatrix a(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      if (perm[i] >= n) throw DimensionError("permutation entry out of range");
      a[i][perm[i]] = 1;
    }
    return {std::move(scalars), std::move(a)};
  }

  std::size_t dim() const { return scalars_.size(); }
  const std::vector<Rational>& scalars() const { return scalars_; }
  const IntMatrix& exponents() const { return exponents_; }
  Integer det() const { return determinant(exponents_); }

  bool is_identity() const {
    return exponents_ == identity_matrix(dim()) &&
           std::all_of(scalars_.begin(), scalars_.end(), [](const Rational& s) { return s == 1; });
  }

  /// (this ∘ other)(u) = this(other(u)).
  MonomialMap compose(const MonomialMap& other) const {
    if (other.dim() != dim()) throw DimensionError("composing maps of different dimension");
    std::vector<Rational> s(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      s[i] = scalars_[i];
      for (std::size_t j = 0; j < dim(); ++j)
        if (exponents_[i][j] != 0) s[i] *= reinhardt::pow(other.scalars_[j], exponents_[i][j]);
    }
    return {std::move(s), multiply(exponents_, other.exponents_)};
  }

  MonomialMap inverse() const {
    IntMatrix inv = unimodular_inverse(exponents_);
    std::vector<Rational> s(dim(), Rational(1));
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        if (inv[i][j] != 0) s[i] *= reinhardt::pow(scalars_[j], -inv[i][j]);
    return {std::move(s), std::move(inv)};
  }

  /// Image of a moduli point; entries hit by negative powers must be nonzero.
  std::vector<double> apply_moduli(std::span<const double> u) const {
    if (u.size() != dim()) throw DimensionError("point has wrong dimension");
    std::vector<double> out(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      double v = to_double(scalars_[i]);
      for (std::size_t j = 0; j < dim(); ++j) {
        const long long a = exponents_[i][j];
        if (a == 0) continue;
        if (a < 0 && u[j] == 0.0) throw Error("zero raised to a negative power");
        v *= std::pow(u[j], static_cast<double>(a));
      }
      out[i] = v;
    }
    return out;
  }

  friend bool operator==(const MonomialMap& a, const MonomialMap& b) {
    return a.scalars_ == b.scalars_ && a.exponents_ == b.exponents_;
  }
  friend bool operator<(const MonomialMap& a, const MonomialMap& b) {
    if (a.exponents_ != b.exponents_) return a.exponents_ < b.exponents_;
    return a.scalars_ < b.scalars_;
  }

 private:
  std::vector<Rational> scalars_;
  IntMatrix exponents_;
};

inline ModuliPolynomial ModuliPolynomial::substitute(const MonomialMap& m) const {
  if (m.dim() != num_vars_) throw DimensionError("map and polynomial dimensions differ");
  const auto& a = m.exponents();
  Terms t;
  Exponent image(num_vars_);
  for (const auto& [e, c] : terms_) {
    Rational coeff = c;
    std::fill(image.begin(), image.end(), 0);
    for (std::size_t i = 0; i < num_vars_; ++i) {
      if (e[i] == 0) continue;
      coeff *= reinhardt::pow(m.scalars()[i], e[i]);
      for (std::size_t j = 0; j < num_vars_; ++j)
        image[j] += static_cast<int>(e[i] * a[i][j]);
    }
    t[image] += coeff;
  }
  return {num_vars_, std::move(t)};
}

// ---------------------------------------------------------------------------
// Text grammar:
//   poly := ['+'|'-'] term (('+'|'-') term)*
//   term := coeff | coeff '*' mono | mono
//   mono := factor ('*' factor)*,  factor := 'u' <int> ['^' ['-'] <int>]
//   coeff := <int> | <int> '/' <int>

namespace detail {

class PolynomialLexer {
 public:
  PolynomialLexer(std::string_view text, std::size_t line, std::size_t column_offset)
      : text_(text), line_(line), offset_(column_offset) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string digits() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(text_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& what) const {
    std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
    throw ParseError(what + ", found " + found, line_, offset_ + pos_ + 1);
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the polynomial grammar over num_vars variables. Positions in errors
/// are reported relative to (line, column_offset).
inline ModuliPolynomial parse_polynomial(std::string_view text, std::size_t num_vars,
                                         std::size_t line = 1, std::size_t column_offset = 0) {
  detail::PolynomialLexer lex(text, line, column_offset);
  ModuliPolynomial::Terms terms;
  if (lex.at_end()) lex.fail("expected a polynomial");
  bool first = true;
  while (true) {
    Rational sign = 1;
    if (lex.accept('-'))
      sign = -1;
    else if (!lex.accept('+') && !first)
      lex.fail("expected '+' or '-'");
    first = false;

    Rational coeff = 1;
    Exponent e(num_vars, 0);
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(lex.peek()))) {
      Integer num(lex.digits());
      Integer den = 1;
      if (lex.accept('/')) {
        den = Integer(lex.digits());
        if (den == 0) lex.fail("zero denominator");
      }
      coeff = Rational(num, den);
      have_coeff = true;
    }
    bool need_factor = !have_coeff || lex.accept('*');
    while (need_factor) {
      if (!lex.accept('u')) lex.fail("expected a variable u<i>");
      const std::string idx = lex.digits();
      const unsigned long index = std::stoul(idx);
      if (index == 0 || index > num_vars)
        lex.fail("variable u" + idx + " outside 1.." + std::to_string(num_vars));
      int power = 1;
      if (lex.accept('^')) {
        const bool neg = lex.accept('-');
        power = std::stoi(lex.digits());
        if (neg) power = -power;
      }
      e[index - 1] += power;
      need_factor = lex.accept('*');
    }
    terms[e] += sign * coeff;
    if (lex.at_end()) break;
    if (lex.peek() != '+' && lex.peek() != '-') lex.fail("expected '+' or '-'");
  }
  return {num_vars, std::move(terms)};
}

}  // namespace reinhardt
