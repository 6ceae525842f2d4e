#pragma once

// Order of contact of holomorphic polynomial curves with the boundary, and a
// bounded search for the curve of highest contact (a lower bound for type).

#include "reinhardt/domain.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace reinhardt {

struct GaussianRational {
  Rational re = 0;
  Rational im = 0;

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}  // NOLINT
  GaussianRational(long long r) : re(r) {}                                               // NOLINT

  bool is_zero() const { return re == 0 && im == 0; }
  GaussianRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }
  Complex to_complex() const { return {to_double(re), to_double(im)}; }
  std::string str() const {
    if (im == 0) return to_string(re);
    if (re == 0) return to_string(im) + "i";
    return to_string(re) + (im > 0 ? "+" : "") + to_string(im) + "i";
  }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianRational& operator+=(const GaussianRational& b) {
    re += b.re;
    im += b.im;
    return *this;
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) { return a.re == b.re && a.im == b.im; }
};

using ExactPoint = std::vector<GaussianRational>;

inline ComplexPoint to_complex_point(const ExactPoint& p) {
  ComplexPoint z(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) z[j] = p[j].to_complex();
  return z;
}

/// gamma_j(t) = sum_k coefficients[j][k] t^k
struct ExactCurve {
  std::vector<std::vector<GaussianRational>> coefficients;

  std::size_t dim() const { return coefficients.size(); }
  ExactPoint origin() const {
    ExactPoint p;
    for (const auto& c : coefficients) p.push_back(c.empty() ? GaussianRational() : c[0]);
    return p;
  }
  /// Vanishing order of gamma - gamma(0); 0 if gamma is constant.
  int order() const {
    int best = 0;
    for (const auto& c : coefficients)
      for (std::size_t k = 1; k < c.size(); ++k)
        if (!c[k].is_zero()) {
          if (best == 0 || static_cast<int>(k) < best) best = static_cast<int>(k);
          break;
        }
    return best;
  }
  std::string str() const {
    std::string out = "(";
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
      if (j) out += ", ";
      std::string comp;
      for (std::size_t k = 0; k < coefficients[j].size(); ++k) {
        const auto& c = coefficients[j][k];
        if (c.is_zero()) continue;
        std::string coeff = c.str();
        if (c.re != 0 && c.im != 0) coeff = "(" + coeff + ")";
        std::string term = k == 0 ? coeff : (coeff == "1" ? "" : coeff + "*") + "t" + (k == 1 ? "" : "^" + std::to_string(k));
        comp += comp.empty() ? term : " + " + term;
      }
      out += comp.empty() ? "0" : comp;
    }
    return out + ")";
  }
};

/// Polynomial in (t, conj t): (a, b) -> coefficient of t^a conj(t)^b.
using Bivariate = std::map<std::pair<int, int>, GaussianRational>;

namespace detail {

inline Bivariate bivariate_mul(const Bivariate& x, const Bivariate& y) {
  Bivariate out;
  for (const auto& [kx, cx] : x)
    for (const auto& [ky, cy] : y) out[{kx.first + ky.first, kx.second + ky.second}] += cx * cy;
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace detail

/// rho(gamma(t)) expanded exactly in t and conj(t).
inline Bivariate expand_rho_along(const DomainSpec& spec, const ExactCurve& gamma) {
  const std::size_t n = spec.dim();
  if (gamma.dim() != n) throw DimensionError("curve dimension does not match the domain");
  std::vector<std::vector<Bivariate>> powers(n);  // powers[j][e] = u_j^e
  for (std::size_t j = 0; j < n; ++j) {
    Bivariate u;
    const auto& c = gamma.coefficients[j];
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = 0; b < c.size(); ++b) {
        if (c[a].is_zero() || c[b].is_zero()) continue;
        u[{static_cast<int>(a), static_cast<int>(b)}] += c[a] * c[b].conj();
      }
    powers[j] = {Bivariate{{{0, 0}, GaussianRational(1)}}, u};
  }
  Bivariate out;
  for (const auto& [e, c] : spec.q().terms()) {
    Bivariate term{{{0, 0}, GaussianRational(c)}};
    for (std::size_t j = 0; j < n; ++j) {
      auto& pw = powers[j];
      while (pw.size() <= static_cast<std::size_t>(e[j])) pw.push_back(detail::bivariate_mul(pw.back(), pw[1]));
      if (e[j] > 0) term = detail::bivariate_mul(term, pw[static_cast<std::size_t>(e[j])]);
    }
    for (const auto& [k, v] : term) out[k] += v;
  }
  out[{0, 0}] += GaussianRational(-1);
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

struct ContactOrder {
  bool infinite = false;
  Rational value = 0;  // ord(rho o gamma) / ord(gamma - q) when finite
  int rho_order = 0;
  int curve_order = 0;
  bool exact = true;
  std::string certificate;

  friend bool operator<(const ContactOrder& a, const ContactOrder& b) {
    if (a.infinite != b.infinite) return b.infinite;
    return !a.infinite && a.value < b.value;
  }
  std::string str() const { return infinite ? "infinite" : to_string(value); }
};

/// Exact contact order of gamma with the boundary at gamma(0).
inline ContactOrder contact_order(const DomainSpec& spec, const ExactCurve& gamma) {
  ContactOrder out;
  out.curve_order = gamma.order();
  if (out.curve_order == 0) throw Error("contact order: the curve is constant");
  const Bivariate rho = expand_rho_along(spec, gamma);
  if (rho.count({0, 0})) throw DomainError("contact order: the curve does not start on the boundary");
  if (rho.empty()) {
    out.infinite = true;
    out.certificate = "rho(gamma(t)) expands to the zero polynomial in t and conj(t)";
    return out;
  }
  int low = -1;
  for (const auto& [k, c] : rho) low = low < 0 ? k.first + k.second : std::min(low, k.first + k.second);
  out.rho_order = low;
  out.value = Rational(low, out.curve_order);
  return out;
}

/// gamma_j(t) = sum_k coefficients[j][k] t^k with floating-point coefficients.
struct NumericCurve {
  std::vector<std::vector<Complex>> coefficients;

  ComplexPoint at(Complex t) const {
    ComplexPoint z(coefficients.size());
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
      Complex v = 0;
      for (std::size_t k = coefficients[j].size(); k-- > 0;) v = v * t + coefficients[j][k];
      z[j] = v;
    }
    return z;
  }
  int order() const {
    int best = 0;
    for (const auto& c : coefficients)
      for (std::size_t k = 1; k < c.size(); ++k)
        if (std::abs(c[k]) > 0) {
          if (best == 0 || static_cast<int>(k) < best) best = static_cast<int>(k);
          break;
        }
    return best;
  }
};

inline NumericCurve to_numeric(const ExactCurve& c) {
  NumericCurve out;
  for (const auto& comp : c.coefficients) {
    std::vector<Complex> v;
    for (const auto& x : comp) v.push_back(x.to_complex());
    out.coefficients.push_back(std::move(v));
  }
  return out;
}

/// Contact order from the log-log slope of |rho(gamma(r e^{i theta}))|
/// against r: the smallest-r window (up to 2 decades) above the noise floor,
/// slope rounded to the nearest integer, minimised over 8 angles.
inline ContactOrder contact_order_numeric(const DomainSpec& spec, const NumericCurve& gamma,
                                          double noise_floor = 1e-13) {
  ContactOrder out;
  out.exact = false;
  out.curve_order = gamma.order();
  if (out.curve_order == 0) throw Error("contact order: the curve is constant");
  if (std::abs(spec.rho(gamma.at(0.0))) > 1e-12)
    throw DomainError("contact order: the curve does not start on the boundary");
  constexpr int kPerDecade = 4;
  constexpr int kAngles = 8;
  int best = -1;
  bool reliable = true;
  for (int a = 0; a < kAngles; ++a) {
    const Complex dir = std::polar(1.0, 2.0 * M_PI * (a + 0.25) / kAngles);
    std::vector<std::pair<double, double>> pts;
    for (int k = 2; k <= 14 * kPerDecade; ++k) {
      const double r = std::pow(10.0, -static_cast<double>(k) / kPerDecade);
      const double v = std::abs(spec.rho(gamma.at(r * dir)));
      if (v > noise_floor) pts.emplace_back(std::log10(r), std::log10(v));
    }
    if (pts.size() > 2 * kPerDecade + 1) pts.erase(pts.begin(), pts.end() - (2 * kPerDecade + 1));
    if (pts.size() < 5) continue;  // flat at this angle
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double m = static_cast<double>(pts.size());
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double icept = (sy - slope * sx) / m;
    double rss = 0;
    for (const auto& [x, y] : pts) rss += (y - slope * x - icept) * (y - slope * x - icept);
    if (std::sqrt(rss / m) >= 0.05) reliable = false;
    const int rounded = static_cast<int>(std::lround(slope));
    best = best < 0 ? rounded : std::min(best, rounded);
  }
  if (best < 0) {
    out.infinite = true;
    out.certificate = "|rho(gamma(t))| below " + std::to_string(noise_floor) + " at every sampled t (numeric)";
    return out;
  }
  out.rho_order = best;
  out.value = Rational(best, out.curve_order);
  if (!reliable) out.certificate = "log-log fit residual above 0.05";
  return out;
}

struct TypeProbe {
  ComplexPoint point;
  int degree_bound = 0;
  int coefficient_grid = 0;
  std::size_t curves_tested = 0;
  ContactOrder best;
  std::optional<ExactCurve> best_curve;
  std::optional<NumericCurve> best_numeric_curve;
};

struct TypeProbeOptions {
  int degree_bound = 3;
  /// Dyadic magnitudes per coefficient: 1 -> {1}, 2 -> {1, 2}, 3 -> {1/2, 1, 2}, ...
  int coefficient_grid = 3;
  int random_trials = 64;
  std::uint64_t seed = 0;
};

/// Grid of curve coefficients: {1, i, -1, -i} times dyadic magnitudes.
inline std::vector<GaussianRational> coefficient_grid_values(int grid) {
  std::vector<GaussianRational> out;
  const int lo = -((grid - 1) / 2);
  for (int k = lo; k < lo + grid; ++k) {
    const Rational mag = pow(Rational(2), k);
    for (const GaussianRational& unit : {GaussianRational(1), GaussianRational(0, 1), GaussianRational(-1),
                                        GaussianRational(0, -1)})
      out.push_back(unit * GaussianRational(mag));
  }
  return out;
}

/// Highest contact order found over the curves q_j + c_j t^{k_j} (each
/// component fixed or moved by one grid monomial of degree <= degree_bound)
/// and over random exact polynomial curves. Stops early at infinite order.
inline TypeProbe type_probe(const DomainSpec& spec, const ExactPoint& q, const TypeProbeOptions& opt = {}) {
  const std::size_t n = spec.dim();
  if (q.size() != n) throw DimensionError("point dimension does not match the domain");
  if (opt.degree_bound < 1) throw Error("degree bound must be positive");
  TypeProbe probe;
  probe.point = to_complex_point(q);
  probe.degree_bound = opt.degree_bound;
  probe.coefficient_grid = opt.coefficient_grid;
  {
    std::vector<Rational> u;
    for (const auto& x : q) u.push_back(x.norm());
    if (spec.q().evaluate(std::span<const Rational>(u)) != 1)
      throw DomainError("type probe: the point is not on the boundary");
  }
  auto consider = [&](const ExactCurve& c) {
    ++probe.curves_tested;
    const ContactOrder o = contact_order(spec, c);
    if (!probe.best_curve || probe.best < o) {
      probe.best = o;
      probe.best_curve = c;
    }
    return o.infinite;
  };

  const auto grid = coefficient_grid_values(opt.coefficient_grid);
  const std::size_t per = 1 + grid.size() * static_cast<std::size_t>(opt.degree_bound);
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::size_t k = 0;
    while (k < n && ++idx[k] == per) idx[k++] = 0;
    if (k == n) break;
    ExactCurve c;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<GaussianRational> comp{q[j]};
      if (idx[j] != 0) {
        const std::size_t choice = idx[j] - 1;
        const std::size_t degree = 1 + choice / grid.size();
        comp.resize(degree + 1);
        comp[degree] = grid[choice % grid.size()];
      }
      c.coefficients.push_back(std::move(comp));
    }
    if (consider(c)) return probe;
  }

  Rng rng(opt.seed);
  std::uniform_int_distribution<int> num(-3, 3), den(1, 2), coin(0, 1);
  for (int trial = 0; trial < opt.random_trials; ++trial) {
    ExactCurve c;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<GaussianRational> comp{q[j]};
      for (int d = 1; d <= opt.degree_bound; ++d)
        comp.push_back(coin(rng) ? GaussianRational(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)))
                                 : GaussianRational());
      c.coefficients.push_back(std::move(comp));
    }
    if (c.order() == 0) continue;
    if (consider(c)) return probe;
  }
  return probe;
}

/// Same search with floating-point contact orders, for points with
/// irrational coordinates.
inline TypeProbe type_probe_numeric(const DomainSpec& spec, const ComplexPoint& q, const TypeProbeOptions& opt = {}) {
  const std::size_t n = spec.dim();
  spec.check(q);
  if (opt.degree_bound < 1) throw Error("degree bound must be positive");
  if (std::abs(spec.rho(q)) > 1e-12) throw DomainError("type probe: the point is not on the boundary");
  TypeProbe probe;
  probe.point = q;
  probe.degree_bound = opt.degree_bound;
  probe.coefficient_grid = opt.coefficient_grid;
  auto consider = [&](const NumericCurve& c) {
    ++probe.curves_tested;
    const ContactOrder o = contact_order_numeric(spec, c);
    if (!probe.best_numeric_curve || probe.best < o) {
      probe.best = o;
      probe.best_numeric_curve = c;
    }
    return o.infinite;
  };
  const auto grid = coefficient_grid_values(opt.coefficient_grid);
  const std::size_t per = 1 + grid.size() * static_cast<std::size_t>(opt.degree_bound);
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::size_t k = 0;
    while (k < n && ++idx[k] == per) idx[k++] = 0;
    if (k == n) break;
    NumericCurve c;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Complex> comp{q[j]};
      if (idx[j] != 0) {
        const std::size_t choice = idx[j] - 1;
        const std::size_t degree = 1 + choice / grid.size();
        comp.resize(degree + 1);
        comp[degree] = grid[choice % grid.size()].to_complex();
      }
      c.coefficients.push_back(std::move(comp));
    }
    if (consider(c)) return probe;
  }
  return probe;
}

}  // namespace reinhardt
