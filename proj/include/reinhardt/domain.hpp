#pragma once

// Reinhardt domains {z : Q(|z_1|^2, ..., |z_n|^2) < 1}: ingestion, membership,
// boundary solving, coordinate slices, boundedness and regularity checks.

#include "reinhardt/moduli_poly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace reinhardt {

using Complex = std::complex<double>;
using ComplexMatrix = std::vector<std::vector<Complex>>;

/// A point z = (z_1, ..., z_n) of C^n.
class ComplexPoint {
 public:
  ComplexPoint() = default;
  explicit ComplexPoint(std::size_t n) : coords_(n) {}
  ComplexPoint(std::initializer_list<Complex> z) : coords_(z) {}
  explicit ComplexPoint(std::vector<Complex> z) : coords_(std::move(z)) {}

  std::size_t size() const { return coords_.size(); }
  Complex& operator[](std::size_t i) { return coords_[i]; }
  const Complex& operator[](std::size_t i) const { return coords_[i]; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }
  const std::vector<Complex>& coords() const { return coords_; }

  /// (|z_1|^2, ..., |z_n|^2)
  std::vector<double> moduli() const {
    std::vector<double> u(coords_.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::norm(coords_[i]);
    return u;
  }

  double norm() const {
    double s = 0;
    for (const auto& c : coords_) s += std::norm(c);
    return std::sqrt(s);
  }

  bool is_finite() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Complex& c) {
      return std::isfinite(c.real()) && std::isfinite(c.imag());
    });
  }

  /// this + t * direction
  ComplexPoint along(const ComplexPoint& direction, double t) const {
    ComplexPoint out(*this);
    for (std::size_t i = 0; i < size(); ++i) out.coords_[i] += t * direction.coords_[i];
    return out;
  }

  friend double distance(const ComplexPoint& a, const ComplexPoint& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
  }

 private:
  std::vector<Complex> coords_;
};

/// Ordered partition of {0..n-1} (printed 1-based) into nonempty groups.
class BlockStructure {
 public:
  BlockStructure() = default;
  BlockStructure(std::vector<std::vector<std::size_t>> blocks, std::size_t n)
      : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw Error("block structure needs at least one block");
    std::vector<bool> seen(n, false);
    for (const auto& b : blocks_) {
      if (b.empty()) throw Error("empty block");
      for (std::size_t i : b) {
        if (i >= n) throw Error("block index " + std::to_string(i + 1) + " out of range 1.." + std::to_string(n));
        if (seen[i]) throw Error("block index " + std::to_string(i + 1) + " repeated");
        seen[i] = true;
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      if (!seen[i]) throw Error("coordinate " + std::to_string(i + 1) + " is in no block");
  }

  static BlockStructure singletons(std::size_t n) {
    std::vector<std::vector<std::size_t>> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = {i};
    return {std::move(b), n};
  }

  std::size_t count() const { return blocks_.size(); }
  const std::vector<std::size_t>& operator[](std::size_t k) const { return blocks_[k]; }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  std::size_t dimension() const {
    std::size_t n = 0;
    for (const auto& b : blocks_) n += b.size();
    return n;
  }

  /// "[[1],[2,3]]"
  std::string str() const {
    std::string out = "[";
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      if (k) out += ",";
      out += "[";
      for (std::size_t j = 0; j < blocks_[k].size(); ++j) {
        if (j) out += ",";
        out += std::to_string(blocks_[k][j] + 1);
      }
      out += "]";
    }
    return out + "]";
  }

  friend bool operator==(const BlockStructure&, const BlockStructure&) = default;

 private:
  std::vector<std::vector<std::size_t>> blocks_;
};

/// Double-precision copy of a polynomial for fast repeated evaluation.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const ModuliPolynomial& p) : n_(p.num_vars()) {
    for (const auto& [e, c] : p.terms()) terms_.push_back({to_double(c), e});
  }

  double operator()(std::span<const double> u) const {
    double sum = 0.0;
    for (const auto& t : terms_) {
      double v = t.coeff;
      for (std::size_t k = 0; k < n_; ++k)
        for (int p = 0; p < t.exponent[k]; ++p) v *= u[k];
      sum += v;
    }
    return sum;
  }

  /// Sum of |terms|; scale for rounding error estimates.
  double magnitude(std::span<const double> u) const {
    double sum = 0.0;
    for (const auto& t : terms_) {
      double v = std::abs(t.coeff);
      for (std::size_t k = 0; k < n_; ++k)
        for (int p = 0; p < t.exponent[k]; ++p) v *= u[k];
      sum += v;
    }
    return sum;
  }

 private:
  struct Term {
    double coeff;
    Exponent exponent;
  };
  std::size_t n_ = 0;
  std::vector<Term> terms_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// {z in C^n : Q(|z_1|^2, ..., |z_n|^2) < 1}. Immutable.
class DomainSpec {
 public:
  DomainSpec(std::size_t n, ModuliPolynomial q, std::optional<BlockStructure> blocks = std::nullopt,
             std::string name = "")
      : n_(n), q_(std::move(q)), blocks_(std::move(blocks)), name_(std::move(name)) {
    if (n_ == 0) throw DomainError("dimension must be positive");
    if (q_.num_vars() != n_) throw DimensionError("Q is not a polynomial in n variables");
    if (!q_.is_ordinary()) throw DomainError("Q has negative exponents");
    if (q_.is_constant()) throw DomainError("Q is constant; it does not define a domain");
    if (blocks_ && blocks_->dimension() != n_) throw DomainError("blocks do not cover 1..n");
    auto c = std::make_shared<Cache>();
    c->q = CompiledPolynomial(q_);
    const auto grad = q_.gradient();
    for (std::size_t j = 0; j < n_; ++j) {
      c->grad.emplace_back(grad[j]);
      for (std::size_t k = 0; k < n_; ++k) c->hess.emplace_back(grad[j].derivative(k));
    }
    cache_ = std::move(c);
  }

  std::size_t dim() const { return n_; }
  const ModuliPolynomial& q() const { return q_; }
  const std::optional<BlockStructure>& declared_blocks() const { return blocks_; }
  /// Declared blocks, or singletons when none were given.
  BlockStructure blocks_or_singletons() const {
    return blocks_ ? *blocks_ : BlockStructure::singletons(n_);
  }
  const std::string& name() const { return name_; }

  DomainSpec with_name(std::string name) const { return {n_, q_, blocks_, std::move(name)}; }

  double q_at(std::span<const double> u) const { return cache_->q(u); }
  double q_magnitude(std::span<const double> u) const { return cache_->q.magnitude(u); }
  /// dQ/du_j
  double q_partial(std::size_t j, std::span<const double> u) const { return cache_->grad[j](u); }
  /// d^2Q/du_j du_k
  double q_second(std::size_t j, std::size_t k, std::span<const double> u) const {
    return cache_->hess[j * n_ + k](u);
  }

  /// rho(z) = Q(moduli(z)) - 1
  double rho(const ComplexPoint& z) const {
    check(z);
    const auto u = z.moduli();
    return q_at(u) - 1.0;
  }

  /// d rho / d z_j = Q_j(u) * conj(z_j)
  std::vector<Complex> rho_gradient(const ComplexPoint& z) const {
    check(z);
    const auto u = z.moduli();
    std::vector<Complex> g(n_);
    for (std::size_t j = 0; j < n_; ++j) g[j] = q_partial(j, u) * std::conj(z[j]);
    return g;
  }

  void check(const ComplexPoint& z) const {
    if (z.size() != n_) throw DimensionError("point dimension " + std::to_string(z.size()) +
                                             " does not match domain dimension " + std::to_string(n_));
  }

 private:
  struct Cache {
    CompiledPolynomial q;
    std::vector<CompiledPolynomial> grad;
    std::vector<CompiledPolynomial> hess;
  };
  std::size_t n_;
  ModuliPolynomial q_;
  std::optional<BlockStructure> blocks_;
  std::string name_;
  std::shared_ptr<const Cache> cache_;
};

// ---------------------------------------------------------------------------
// Spec file ingestion

namespace detail {

inline std::string_view trim(std::string_view s, std::size_t* lead = nullptr) {
  std::size_t a = 0;
  while (a < s.size() && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  std::size_t b = s.size();
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  if (lead) *lead = a;
  return s.substr(a, b - a);
}

inline std::vector<std::vector<std::size_t>> parse_blocks(std::string_view text, std::size_t line,
                                                          std::size_t col0) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> void { throw ParseError(what, line, col0 + pos + 1); };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    skip();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  };
  std::vector<std::vector<std::size_t>> out;
  expect('[');
  while (true) {
    expect('[');
    std::vector<std::size_t> group;
    while (true) {
      skip();
      const std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) fail("expected a coordinate index");
      const auto idx = std::stoul(std::string(text.substr(start, pos - start)));
      if (idx == 0) {
        pos = start;
        fail("coordinate indices start at 1");
      }
      group.push_back(idx - 1);
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
    expect(']');
    out.push_back(std::move(group));
    skip();
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    break;
  }
  expect(']');
  skip();
  if (pos != text.size()) fail("trailing characters after block list");
  return out;
}

}  // namespace detail

/// Line-oriented spec: `n = <int>`, `Q = <poly>`, optional `blocks = [[..],..]`,
/// optional `name = <string>`; statements may also be separated by ';';
/// `#` starts a comment.
inline DomainSpec parse_spec(std::string_view text) {
  struct Statement {
    std::string key;
    std::string_view value;
    std::size_t line;
    std::size_t value_col;  // 0-based column of the value start
    std::size_t key_col;
  };
  std::vector<Statement> statements;
  std::size_t line_no = 0;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    ++line_no;
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t stmt_start = 0;
    while (stmt_start <= line.size()) {
      std::size_t stmt_end = line.find(';', stmt_start);
      if (stmt_end == std::string_view::npos) stmt_end = line.size();
      std::string_view stmt = line.substr(stmt_start, stmt_end - stmt_start);
      std::size_t lead = 0;
      std::string_view trimmed = detail::trim(stmt, &lead);
      if (!trimmed.empty()) {
        const std::size_t col = stmt_start + lead;
        const auto eq = trimmed.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected '<key> = <value>'", line_no, col + 1);
        std::string key(detail::trim(trimmed.substr(0, eq)));
        std::size_t vlead = 0;
        std::string_view raw_value = trimmed.substr(eq + 1);
        std::string_view value = detail::trim(raw_value, &vlead);
        statements.push_back({key, value, line_no, col + eq + 1 + vlead, col});
      }
      stmt_start = stmt_end + 1;
    }
    line_start = line_end + 1;
  }

  std::optional<std::size_t> n;
  const Statement* q_stmt = nullptr;
  std::optional<std::vector<std::vector<std::size_t>>> blocks;
  const Statement* blocks_stmt = nullptr;
  std::string name;
  std::set<std::string> seen;
  for (const auto& s : statements) {
    if (!seen.insert(s.key).second)
      throw ParseError("duplicate key '" + s.key + "'", s.line, s.key_col + 1);
    if (s.key == "n") {
      const std::string v(s.value);
      if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("n must be a positive integer", s.line, s.value_col + 1);
      n = std::stoul(v);
      if (*n == 0) throw ParseError("n must be a positive integer", s.line, s.value_col + 1);
    } else if (s.key == "Q") {
      q_stmt = &s;
    } else if (s.key == "blocks") {
      blocks = detail::parse_blocks(s.value, s.line, s.value_col);
      blocks_stmt = &s;
    } else if (s.key == "name") {
      name = std::string(s.value);
    } else {
      throw ParseError("unknown key '" + s.key + "'", s.line, s.key_col + 1);
    }
  }
  if (!n) throw ParseError("missing 'n = <int>'", line_no, 1);
  if (!q_stmt) throw ParseError("missing 'Q = <polynomial>'", line_no, 1);
  ModuliPolynomial q = parse_polynomial(q_stmt->value, *n, q_stmt->line, q_stmt->value_col);
  if (!q.is_ordinary()) throw ParseError("Q has a negative exponent", q_stmt->line, q_stmt->value_col + 1);
  if (q.is_constant()) throw ParseError("Q is constant; it does not define a domain", q_stmt->line, q_stmt->value_col + 1);
  std::optional<BlockStructure> bs;
  if (blocks) {
    try {
      bs = BlockStructure(*blocks, *n);
    } catch (const Error& e) {
      throw ParseError(e.what(), blocks_stmt->line, blocks_stmt->value_col + 1);
    }
  }
  return {*n, std::move(q), std::move(bs), std::move(name)};
}

/// Writes a spec back in the file format.
inline std::string format_spec(const DomainSpec& spec) {
  std::string out;
  if (!spec.name().empty()) out += "name = " + spec.name() + "\n";
  out += "n = " + std::to_string(spec.dim()) + "\n";
  out += "Q = " + spec.q().str() + "\n";
  if (spec.declared_blocks()) out += "blocks = " + spec.declared_blocks()->str() + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Membership and boundary solving

inline constexpr double kDefaultBand = 1e-12;

enum class Membership { inside, boundary, outside };

inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::inside: return "inside";
    case Membership::boundary: return "boundary";
    case Membership::outside: return "outside";
  }
  return "?";
}

struct MembershipResult {
  Membership verdict;
  double margin;  // Q(moduli(z)) - 1
};

inline MembershipResult contains(const DomainSpec& spec, const ComplexPoint& z, double band = kDefaultBand) {
  const double margin = spec.rho(z);
  if (margin < -band) return {Membership::inside, margin};
  if (margin > band) return {Membership::outside, margin};
  return {Membership::boundary, margin};
}

struct BoundarySolveOptions {
  double t_max = 1e6;
  double band = kDefaultBand;
  int max_bisections = 80;
};

/// First exit of the ray interior + t * direction, t > 0, from the domain.
/// Throws DomainError if the ray stays inside up to t_max.
inline ComplexPoint boundary_solve(const DomainSpec& spec, const ComplexPoint& interior,
                                   const ComplexPoint& direction,
                                   const BoundarySolveOptions& opt = {}) {
  spec.check(interior);
  spec.check(direction);
  auto f = [&](double t) { return spec.rho(interior.along(direction, t)); };
  if (f(0.0) >= 0.0) throw DomainError("boundary_solve: start point is not inside the domain");
  if (direction.norm() == 0.0) throw DomainError("boundary_solve: zero direction");

  // Bracket: fine linear march near the start, then geometric growth.
  double lo = 0.0;
  double hi = -1.0;
  constexpr int kLinearSteps = 256;
  constexpr double kStep = 1.0 / 64.0;
  for (int k = 1; k <= kLinearSteps && hi < 0; ++k) {
    const double t = k * kStep;
    if (t > opt.t_max) break;
    if (f(t) >= 0.0) hi = t;
    else lo = t;
  }
  for (double t = kLinearSteps * kStep * 1.25; hi < 0 && t <= opt.t_max * 1.25; t *= 1.25) {
    const double tt = std::min(t, opt.t_max);
    if (f(tt) >= 0.0) hi = tt;
    else lo = tt;
    if (tt == opt.t_max) break;
  }
  if (hi < 0) throw DomainError("boundary_solve: ray does not leave the domain within t_max");

  double f_lo = f(lo);
  double f_hi = f(hi);
  for (int it = 0; it < opt.max_bisections && hi - lo > 0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm < 0.0) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
      f_hi = fm;
    }
    if (std::abs(fm) <= 1e-3 * opt.band) break;
  }
  return interior.along(direction, std::abs(f_lo) <= std::abs(f_hi) ? lo : hi);
}

// ---------------------------------------------------------------------------
// Slices

/// D ∩ {z_i = 0, i in zero_indices} as a domain in the remaining coordinates
/// (kept in ascending order). Blocks are pruned of removed coordinates.
inline DomainSpec coordinate_slice(const DomainSpec& spec, const std::set<std::size_t>& zero_indices) {
  const std::size_t n = spec.dim();
  for (std::size_t i : zero_indices)
    if (i >= n) throw DimensionError("slice index out of range");
  if (zero_indices.size() >= n) throw DomainError("slice must keep at least one coordinate");
  const ModuliPolynomial restricted = spec.q().restrict_to_subspace(zero_indices);
  std::vector<std::size_t> target(n, 0);
  std::vector<std::size_t> new_index(n, n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (zero_indices.count(i)) continue;
    new_index[i] = next;
    target[i] = next++;
  }
  const std::size_t m = n - zero_indices.size();
  ModuliPolynomial q = restricted.remap(m, target);
  std::optional<BlockStructure> blocks;
  if (spec.declared_blocks()) {
    std::vector<std::vector<std::size_t>> pruned;
    for (const auto& b : spec.declared_blocks()->blocks()) {
      std::vector<std::size_t> kept;
      for (std::size_t i : b)
        if (new_index[i] < n) kept.push_back(new_index[i]);
      if (!kept.empty()) pruned.push_back(std::move(kept));
    }
    blocks = BlockStructure(std::move(pruned), m);
  }
  return {m, std::move(q), std::move(blocks), spec.name().empty() ? "" : spec.name() + "|slice"};
}

// ---------------------------------------------------------------------------
// Sampling helpers

using Rng = std::mt19937_64;

inline ComplexPoint random_direction(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexPoint d(n);
  double norm = 0;
  while (norm < 1e-8) {
    for (std::size_t i = 0; i < n; ++i) d[i] = Complex(g(rng), g(rng));
    norm = d.norm();
  }
  for (std::size_t i = 0; i < n; ++i) d[i] /= norm;
  return d;
}

/// Point with the given moduli and uniformly random phases.
inline ComplexPoint point_from_moduli(std::span<const double> u, Rng& rng) {
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::acos(-1.0));
  ComplexPoint z(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) z[i] = std::polar(std::sqrt(std::max(0.0, u[i])), phase(rng));
  return z;
}

/// A point strictly inside the domain: the origin when Q(0) < 1, otherwise
/// the best of a randomized search over moduli boxes of several scales.
inline ComplexPoint find_interior_point(const DomainSpec& spec, Rng& rng, double band = kDefaultBand) {
  const std::size_t n = spec.dim();
  const std::vector<double> zero(n, 0.0);
  if (spec.q_at(zero) - 1.0 < -band) return ComplexPoint(n);
  std::vector<double> best;
  double best_q = std::numeric_limits<double>::infinity();
  std::vector<double> u(n);
  for (double scale = 1e-3; scale <= 1e3; scale *= std::sqrt(10.0)) {
    std::uniform_real_distribution<double> dist(0.0, scale);
    for (int trial = 0; trial < 400; ++trial) {
      for (auto& x : u) x = dist(rng);
      const double v = spec.q_at(u);
      if (v < best_q) {
        best_q = v;
        best = u;
      }
    }
  }
  // Coordinate polish of the best sample.
  for (int round = 0; round < 40 && best_q >= 1.0 - 1e-6; ++round) {
    for (std::size_t k = 0; k < n; ++k) {
      double step = std::max(1e-3, best[k] * 0.5);
      for (int it = 0; it < 60; ++it) {
        bool improved = false;
        for (double sgn : {1.0, -1.0}) {
          auto trial = best;
          trial[k] = std::max(0.0, trial[k] + sgn * step);
          const double v = spec.q_at(trial);
          if (v < best_q) {
            best_q = v;
            best = trial;
            improved = true;
          }
        }
        if (!improved) step *= 0.5;
      }
    }
  }
  if (best.empty() || best_q - 1.0 >= -band) throw DomainError("no interior point found; the domain looks empty");
  ComplexPoint z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = std::sqrt(best[i]);
  return z;
}

/// Boundary points along random rays from a fixed interior base point.
class BoundarySampler {
 public:
  BoundarySampler(const DomainSpec& spec, std::uint64_t seed)
      : spec_(spec), rng_(seed), base_(find_interior_point(spec, rng_)) {}

  const ComplexPoint& base() const { return base_; }
  Rng& rng() { return rng_; }

  /// Boundary point along a random ray; nullopt if the ray never exits.
  std::optional<ComplexPoint> boundary_point(ComplexPoint* direction_out = nullptr) {
    const ComplexPoint d = random_direction(spec_.dim(), rng_);
    if (direction_out) *direction_out = d;
    try {
      return boundary_solve(spec_, base_, d);
    } catch (const DomainError&) {
      return std::nullopt;
    }
  }

  /// Interior point on a random ray: half uniform in the ray's segment,
  /// half in its outer 10% (but at least 0.1% inside).
  std::optional<ComplexPoint> interior_point() {
    ComplexPoint d;
    auto b = boundary_point(&d);
    if (!b) return std::nullopt;
    const double t_star = distance(*b, base_) / d.norm();
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    const double s = near_ ? 0.9 + 0.099 * frac(rng_) : 0.999 * frac(rng_);
    near_ = !near_;
    return base_.along(d, s * t_star);
  }

 private:
  const DomainSpec& spec_;
  Rng rng_;
  ComplexPoint base_;
  bool near_ = false;
};

// ---------------------------------------------------------------------------
// Boundedness

enum class BoundednessKind { bounded_certified, unbounded_witness, unknown };

inline const char* to_string(BoundednessKind k) {
  switch (k) {
    case BoundednessKind::bounded_certified: return "bounded_certified";
    case BoundednessKind::unbounded_witness: return "unbounded_witness";
    case BoundednessKind::unknown: return "unknown";
  }
  return "?";
}

struct BoundednessCertificate {
  BoundednessKind kind = BoundednessKind::unknown;
  /// Moduli degrees d_i of the dominating pure powers (0 where none).
  std::vector<int> pure_degrees;
  /// unbounded_witness: a moduli direction along which Q stays below 1
  /// (witness_is_ray), or a moduli point of D with sup-norm >= 1e6.
  std::vector<double> witness;
  bool witness_is_ray = false;
  std::string detail;
};

struct BoundednessOptions {
  int radial_probes = 10000;
  double probe_radius = 1e6;
  int ascent_starts = 8;
  std::uint64_t seed = 0;
};

namespace detail {

// Exact sufficient condition: Q >= sum_i (c_i - load_i) u_i^{d_i} + lower order,
// where the loads collect negative weight-1 cross terms via weighted AM-GM.
inline bool certify_bounded(const ModuliPolynomial& q, std::vector<int>& degrees, std::string& why) {
  const std::size_t n = q.num_vars();
  degrees.assign(n, 0);
  std::vector<Rational> pure(n, Rational(0));
  for (const auto& [e, c] : q.terms()) {
    std::size_t support = 0, idx = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (e[i] != 0) {
        ++support;
        idx = i;
      }
    if (support == 1 && e[idx] > degrees[idx]) {
      degrees[idx] = e[idx];
      pure[idx] = c;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (degrees[i] == 0 || pure[i] <= 0) {
      why = "u" + std::to_string(i + 1) + " has no dominating pure power with positive coefficient";
      return false;
    }
  }
  std::vector<Rational> load(n, Rational(0));
  for (const auto& [e, c] : q.terms()) {
    if (c >= 0) continue;
    Rational weight = 0;
    for (std::size_t i = 0; i < n; ++i) weight += Rational(e[i], degrees[i]);
    if (weight > 1) {
      why = "negative term of weighted degree " + to_string(weight) + " > 1";
      return false;
    }
    if (weight == 1) {
      bool is_pure = std::count_if(e.begin(), e.end(), [](int k) { return k != 0; }) == 1;
      if (is_pure) continue;  // only the dominating pure power has weight 1 and it is positive
      for (std::size_t i = 0; i < n; ++i) load[i] += -c * Rational(e[i], degrees[i]);
    }
  }
  bool exact = true;
  for (std::size_t i = 0; i < n; ++i) exact = exact && load[i] < pure[i];
  if (exact) {
    why = "pure powers dominate all negative cross terms (weighted AM-GM)";
    return true;
  }
  // Same bound with each term split in proportion to the pure coefficients:
  // |a| u^e <= sum_i |a| (e_i/d_i) (c_i/G) u_i^{d_i}, G = prod_i c_i^{e_i/d_i}.
  // Evaluated in floating point with a margin.
  std::vector<double> scaled(n, 0.0);
  for (const auto& [e, c] : q.terms()) {
    if (c >= 0) continue;
    Rational weight = 0;
    for (std::size_t i = 0; i < n; ++i) weight += Rational(e[i], degrees[i]);
    if (weight != 1) continue;
    double log_g = 0;
    for (std::size_t i = 0; i < n; ++i)
      log_g += static_cast<double>(e[i]) / degrees[i] * std::log(to_double(pure[i]));
    for (std::size_t i = 0; i < n; ++i)
      scaled[i] += to_double(-c) * e[i] / degrees[i] * std::exp(-log_g);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (scaled[i] >= 1.0 - 1e-9) {
      why = "negative cross terms are not dominated by the pure power of u" + std::to_string(i + 1);
      return false;
    }
  }
  why = "pure powers dominate all negative cross terms (weighted AM-GM, rescaled)";
  return true;
}

// Largest s >= u[k] reachable from u along e_k while Q stays below 1;
// returns +inf if Q < 1 up to `limit`.
inline double coordinate_exit(const DomainSpec& spec, std::vector<double> u, std::size_t k, double limit) {
  const double start = u[k];
  auto inside = [&](double s) {
    u[k] = s;
    return spec.q_at(u) < 1.0;
  };
  double lo = start;
  double step = std::max(1e-3, 0.05 * start);
  double hi = -1;
  while (lo < limit) {
    const double t = lo + step;
    if (!inside(t)) {
      hi = t;
      break;
    }
    lo = t;
    step *= 1.5;
  }
  if (hi < 0) return std::numeric_limits<double>::infinity();
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (inside(mid)) lo = mid;
    else hi = mid;
  }
  return lo;
}

}  // namespace detail

/// Bounded if the exact domination test passes; otherwise searches for an
/// unbounded witness by radial rays in moduli space and coordinate ascent.
inline BoundednessCertificate boundedness_certificate(const DomainSpec& spec, const BoundednessOptions& opt = {}) {
  BoundednessCertificate cert;
  std::string why;
  if (detail::certify_bounded(spec.q(), cert.pure_degrees, why)) {
    cert.kind = BoundednessKind::bounded_certified;
    cert.detail = why;
    return cert;
  }
  const std::size_t n = spec.dim();
  Rng rng(opt.seed);
  std::vector<double> base(n, 0.0);
  bool have_base = spec.q_at(base) < 1.0;
  if (!have_base) {
    try {
      base = find_interior_point(spec, rng).moduli();
      have_base = true;
    } catch (const DomainError&) {
      cert.detail = why + "; no interior point found";
      return cert;
    }
  }

  // Radial rays u = base + r v, v >= 0 on the simplex (faces included).
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> v(n), u(n);
  auto ray_stays_inside = [&](const std::vector<double>& dir) {
    for (double r = 1.0; r <= opt.probe_radius * 1.0001; r *= 1.25) {
      for (std::size_t i = 0; i < n; ++i) u[i] = base[i] + r * dir[i];
      if (spec.q_at(u) >= 1.0) return false;
    }
    return true;
  };
  for (int probe = 0; probe < opt.radial_probes; ++probe) {
    double sum = 0;
    if (probe < static_cast<int>(n)) {
      std::fill(v.begin(), v.end(), 0.0);
      v[probe] = 1.0;
      sum = 1.0;
    } else {
      // Random face: each coordinate kept with probability 1/2.
      while (sum == 0) {
        for (std::size_t i = 0; i < n; ++i) {
          v[i] = unif(rng) < 0.5 ? -std::log(1.0 - unif(rng)) : 0.0;
          sum += v[i];
        }
      }
    }
    for (auto& x : v) x /= sum;
    if (ray_stays_inside(v)) {
      cert.kind = BoundednessKind::unbounded_witness;
      cert.witness = v;
      cert.witness_is_ray = true;
      cert.detail = why + "; moduli ray stays inside up to radius " + std::to_string(opt.probe_radius);
      return cert;
    }
  }

  // Coordinate ascent: move each u_k 90% of the way to its exit, repeatedly.
  for (int start = 0; start < opt.ascent_starts; ++start) {
    std::vector<double> p = base;
    if (start > 0) {
      // Shrink a random perturbation until it lies inside.
      std::vector<double> trial(n);
      double scale = 1.0;
      for (int k = 0; k < 60; ++k, scale *= 0.5) {
        for (std::size_t i = 0; i < n; ++i) trial[i] = base[i] + scale * unif(rng);
        if (spec.q_at(trial) < 1.0) {
          p = trial;
          break;
        }
      }
    }
    for (int round = 0; round < 400; ++round) {
      for (std::size_t k = 0; k < n; ++k) {
        const double exit = detail::coordinate_exit(spec, p, k, 10.0 * opt.probe_radius);
        if (std::isinf(exit)) {
          cert.kind = BoundednessKind::unbounded_witness;
          cert.witness = p;
          cert.witness[k] = 10.0 * opt.probe_radius;
          cert.detail = why + "; coordinate ray u" + std::to_string(k + 1) + " stays inside";
          return cert;
        }
        p[k] += 0.9 * (exit - p[k]);
      }
      if (*std::max_element(p.begin(), p.end()) >= opt.probe_radius) {
        cert.kind = BoundednessKind::unbounded_witness;
        cert.witness = p;
        cert.detail = why + "; coordinate ascent reached a point of D with a modulus >= " +
                      std::to_string(opt.probe_radius);
        return cert;
      }
    }
  }
  cert.detail = why + "; no unbounded direction found";
  return cert;
}

// ---------------------------------------------------------------------------
// Boundary regularity

struct RegularityReport {
  std::size_t sampled_points = 0;
  double threshold = 0;
  double min_gradient_norm = std::numeric_limits<double>::infinity();
  std::vector<ComplexPoint> failures;  // at most max_failures stored
  std::size_t failure_count = 0;
  std::string statement;

  bool regular() const { return failure_count == 0; }
};

/// Samples boundary points along random rays and records |d rho/dz| there.
/// Throws DomainError when fewer than half of the rays reach the boundary.
inline RegularityReport boundary_regularity_sample(const DomainSpec& spec, std::size_t samples,
                                                   double threshold, std::uint64_t seed,
                                                   std::size_t max_failures = 100) {
  BoundarySampler sampler(spec, seed);
  RegularityReport report;
  report.threshold = threshold;
  std::size_t misses = 0;
  while (report.sampled_points < samples) {
    auto b = sampler.boundary_point();
    if (!b) {
      if (++misses > samples / 2 + 10) throw DomainError("regularity sampling: rays do not reach the boundary");
      continue;
    }
    ++report.sampled_points;
    double s = 0;
    for (const auto& g : spec.rho_gradient(*b)) s += std::norm(g);
    const double norm = std::sqrt(s);
    report.min_gradient_norm = std::min(report.min_gradient_norm, norm);
    if (norm < threshold) {
      ++report.failure_count;
      if (report.failures.size() < max_failures) report.failures.push_back(*b);
    }
  }
  report.statement =
      report.failure_count == 0
          ? "no boundary irregularity detected at resolution " + std::to_string(samples) + " samples"
          : std::to_string(report.failure_count) + " of " + std::to_string(samples) +
                " sampled boundary points have gradient norm below threshold";
  return report;
}

}  // namespace reinhardt
