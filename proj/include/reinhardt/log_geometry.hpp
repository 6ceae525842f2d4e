#pragma once

// Logarithmic image of a domain, incidence with the coordinate hyperplanes,
// and exhaustive search for algebraic (monomial) symmetries.

#include "reinhardt/domain.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace reinhardt {

struct HyperplaneIncidence {
  std::vector<std::size_t> meets;   // D ∩ {z_i = 0} nonempty
  std::vector<std::size_t> avoids;  // D ∩ {z_i = 0} empty
  /// Estimated inf |z_i| over D for each avoided index.
  std::map<std::size_t, double> distances;

  bool full() const { return avoids.empty(); }
};

namespace detail {

// Walks u_k from its current value in direction sign (+1 up, -1 down) while
// Q stays below 1; returns the last inside value (0 if the walk reaches 0,
// +inf if it passes `limit`).
inline double walk_coordinate(const DomainSpec& spec, std::vector<double> u, std::size_t k, int sign,
                              double limit) {
  const double start = u[k];
  auto inside = [&](double s) {
    u[k] = s;
    return spec.q_at(u) < 1.0;
  };
  double lo = start;  // last inside value
  double hi = -1;     // first outside value
  double step = std::max(1e-6, 0.01 * start);
  while (true) {
    double t = lo + sign * step;
    if (sign < 0 && t <= 0.0) {
      if (inside(0.0)) return 0.0;
      hi = 0.0;
      break;
    }
    if (sign > 0 && t > limit) return std::numeric_limits<double>::infinity();
    if (!inside(t)) {
      hi = t;
      break;
    }
    lo = t;
    step *= 1.5;
  }
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (inside(mid)) lo = mid;
    else hi = mid;
  }
  return lo;
}

// Lowers Q by moving u_k (k != skip) within [0, 2 u_k + 1] on a grid.
inline void relax_other_coordinates(const DomainSpec& spec, std::vector<double>& u, std::size_t skip) {
  double best = spec.q_at(u);
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (k == skip) continue;
    const double hi = 2.0 * u[k] + 1.0;
    std::vector<double> trial = u;
    for (int g = 0; g <= 64; ++g) {
      trial[k] = hi * g / 64.0;
      const double v = spec.q_at(trial);
      if (v < best) {
        best = v;
        u[k] = trial[k];
      }
    }
    double step = hi / 64.0;
    for (int it = 0; it < 50; ++it) {
      bool improved = false;
      for (double s : {step, -step}) {
        trial = u;
        trial[k] = std::max(0.0, u[k] + s);
        const double v = spec.q_at(trial);
        if (v < best) {
          best = v;
          u[k] = trial[k];
          improved = true;
        }
      }
      if (!improved) step *= 0.5;
    }
  }
}

}  // namespace detail

/// Estimated inf (sign = -1) or sup (sign = +1) of u_i over D: best of
/// sampled interior points, then alternating slack maximisation in the other
/// moduli and a walk in u_i.
inline double moduli_extent(const DomainSpec& spec, std::size_t i, int sign, std::uint64_t seed,
                            int samples = 400) {
  BoundarySampler sampler(spec, seed);
  std::vector<std::vector<double>> candidates{sampler.base().moduli()};
  for (int s = 0; s < samples; ++s)
    if (auto p = sampler.interior_point()) candidates.push_back(p->moduli());
  std::sort(candidates.begin(), candidates.end(),
            [&](const auto& a, const auto& b) { return sign < 0 ? a[i] < b[i] : a[i] > b[i]; });
  candidates.resize(std::min<std::size_t>(candidates.size(), 8));
  double best = sign < 0 ? std::numeric_limits<double>::infinity() : 0.0;
  for (auto u : candidates) {
    for (int round = 0; round < 30; ++round) {
      const double before = u[i];
      detail::relax_other_coordinates(spec, u, i);
      const double moved = detail::walk_coordinate(spec, u, i, sign, 1e12);
      if (std::isinf(moved)) return moved;
      // Stay a hair inside so the next relaxation starts from an interior point.
      u[i] = moved;
      if (std::abs(moved - before) <= 1e-14 * std::max(1.0, std::abs(before))) break;
    }
    best = sign < 0 ? std::min(best, u[i]) : std::max(best, u[i]);
  }
  return best;
}

/// Which coordinate hyperplanes meet D, with distances for the others.
inline HyperplaneIncidence hyperplane_incidence(const DomainSpec& spec, std::uint64_t seed = 0) {
  HyperplaneIncidence inc;
  const std::size_t n = spec.dim();
  const std::vector<double> zero(n, 0.0);
  const bool origin_inside = spec.q_at(zero) < 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    bool meets = origin_inside;
    if (!meets) {
      const ModuliPolynomial r = spec.q().restrict_to_subspace({i});
      if (r.is_constant()) {
        meets = r.constant_term() < 1;
      } else {
        try {
          Rng rng(seed + i);
          find_interior_point(DomainSpec(n, r), rng);
          meets = true;
        } catch (const DomainError&) {
          meets = false;
        }
      }
    }
    if (meets) {
      inc.meets.push_back(i);
    } else {
      inc.avoids.push_back(i);
      inc.distances[i] = std::sqrt(std::max(0.0, moduli_extent(spec, i, -1, seed + 17 * (i + 1))));
    }
  }
  return inc;
}

struct LogImageSample {
  std::vector<std::vector<double>> points;  // (log|z_1/R_1|, ..., log|z_n/R_n|)
  std::vector<double> scale;                // R_i; z_i -> z_i / R_i puts D in the unit polydisk
  std::size_t attempts = 0;
};

/// Interior samples pushed through z -> (log|z_i / R_i|)_i, where R_i bounds
/// |z_i| on all sampled points so that every coordinate is negative.
inline LogImageSample log_image_sample(const DomainSpec& spec, std::size_t count, std::uint64_t seed,
                                       double min_acceptance = 0.5) {
  BoundarySampler sampler(spec, seed);
  const std::size_t n = spec.dim();
  LogImageSample out;
  out.scale.assign(n, 0.0);
  std::vector<ComplexPoint> interior;
  const std::size_t boundary_probes = std::max<std::size_t>(count, 2000);
  for (std::size_t s = 0; s < boundary_probes; ++s)
    if (auto b = sampler.boundary_point())
      for (std::size_t i = 0; i < n; ++i) out.scale[i] = std::max(out.scale[i], std::abs((*b)[i]));
  while (interior.size() < count) {
    ++out.attempts;
    if (out.attempts > 4 * count + 100 && interior.size() < min_acceptance * out.attempts)
      throw DomainError("log image: acceptance rate below floor");
    auto p = sampler.interior_point();
    if (!p) continue;
    if (contains(spec, *p).verdict != Membership::inside) continue;
    bool off_axes = true;
    for (std::size_t i = 0; i < n; ++i) off_axes = off_axes && std::abs((*p)[i]) > 1e-300;
    if (!off_axes) continue;
    for (std::size_t i = 0; i < n; ++i) out.scale[i] = std::max(out.scale[i], std::abs((*p)[i]));
    interior.push_back(*p);
  }
  for (auto& r : out.scale) r *= 1.0 + 1e-9;
  for (const auto& p : interior) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::log(std::abs(p[i]) / out.scale[i]);
    out.points.push_back(std::move(x));
  }
  return out;
}

/// Q∘m == Q exactly.
inline bool is_exact_symmetry(const DomainSpec& spec, const MonomialMap& m) {
  return spec.q().substitute(m) == spec.q();
}

/// A monomial map seen in logarithmic coordinates:
/// x_i -> x_{sigma(i)} + sum_j a_ij x_j + mu_i (i meets), x_i -> sum_j b_ij x_j + mu_i (i avoids).
struct AffineLatticeMap {
  std::vector<std::size_t> meets;
  std::vector<std::size_t> avoids;
  std::vector<std::size_t> sigma;  // sigma[r] = column (in meets order) of row r
  IntMatrix a;                     // |meets| x |avoids|
  IntMatrix b;                     // |avoids| x |avoids|, det ±1
  std::vector<double> mu;          // log|lambda_i| = log(scalars_i)/2
};

/// Splits a map of the enumerated shape into its lattice data; throws if the shape is wrong.
inline AffineLatticeMap to_affine(const MonomialMap& m, const HyperplaneIncidence& inc) {
  AffineLatticeMap out;
  out.meets = inc.meets;
  out.avoids = inc.avoids;
  const auto& e = m.exponents();
  for (std::size_t r = 0; r < inc.meets.size(); ++r) {
    const std::size_t i = inc.meets[r];
    std::size_t col = inc.meets.size();
    for (std::size_t c = 0; c < inc.meets.size(); ++c) {
      const long long v = e[i][inc.meets[c]];
      if (v == 1 && col == inc.meets.size()) col = c;
      else if (v != 0) throw Error("map does not permute the coordinates meeting D");
    }
    if (col == inc.meets.size()) throw Error("map does not permute the coordinates meeting D");
    out.sigma.push_back(col);
    std::vector<long long> row;
    for (std::size_t j : inc.avoids) row.push_back(e[i][j]);
    out.a.push_back(row);
  }
  for (std::size_t i : inc.avoids) {
    for (std::size_t j : inc.meets)
      if (e[i][j] != 0) throw Error("avoided coordinates may only depend on avoided coordinates");
    std::vector<long long> row;
    for (std::size_t j : inc.avoids) row.push_back(e[i][j]);
    out.b.push_back(row);
  }
  for (const auto& s : m.scalars()) out.mu.push_back(0.5 * std::log(to_double(s)));
  return out;
}

struct SymmetryEnumeration {
  std::vector<MonomialMap> maps;  // sorted, identity included
  HyperplaneIncidence incidence;
  int entry_bound = 0;
  std::size_t candidates_tested = 0;
  /// Lattice data admitting only irrational scalars (dilations by radicals).
  std::size_t irrational_skipped = 0;
  bool closed = true;
  std::vector<std::string> warnings;
};

namespace detail {

// Solves E nu = rhs exactly (rows of E: exponent vectors). Returns false if
// inconsistent; free variables are set to 0 and `underdetermined` is raised.
inline bool solve_rational(std::vector<std::vector<Rational>> m, std::size_t cols,
                           std::vector<Rational>& x, bool& underdetermined) {
  const std::size_t rows = m.size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rational inv = Rational(1) / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t q = 0; q < rows; ++q) {
      if (q == r || m[q][c] == 0) continue;
      const Rational f = m[q][c];
      for (std::size_t k = c; k <= cols; ++k) m[q][k] -= f * m[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t q = r; q < rows; ++q)
    if (m[q][cols] != 0) return false;
  underdetermined = pivot_col.size() < cols;
  x.assign(cols, Rational(0));
  for (std::size_t q = 0; q < pivot_col.size(); ++q) x[pivot_col[q]] = m[q][cols];
  return true;
}

// Positive scalars s with c_e s^e = c_{A^T e} for every support monomial e,
// as per-base rational exponents.
struct ScalarSolution {
  bool exists = false;
  bool rational = false;
  bool underdetermined = false;
  std::vector<Rational> scalars;
};

inline ScalarSolution solve_scalars(const ModuliPolynomial& q, const IntMatrix& a) {
  ScalarSolution sol;
  const std::size_t n = q.num_vars();
  std::vector<std::pair<Exponent, Radical>> rows;  // (e, c_{A^T e} / c_e)
  std::set<Integer> bases;
  for (const auto& [e, c] : q.terms()) {
    Exponent img(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) img[j] += static_cast<int>(e[i] * a[i][j]);
    const Rational target = q.coefficient(img);
    if (target == 0 || target.sign() != c.sign()) return sol;
    Radical ratio = Radical(target) / Radical(c);
    for (const auto& [b, ex] : ratio.factors()) bases.insert(b);
    rows.emplace_back(e, std::move(ratio));
  }
  std::vector<std::vector<Rational>> nu(bases.size());
  std::size_t bi = 0;
  for (const Integer& base : bases) {
    std::vector<std::vector<Rational>> m;
    for (const auto& [e, ratio] : rows) {
      std::vector<Rational> row(n + 1);
      for (std::size_t i = 0; i < n; ++i) row[i] = e[i];
      auto it = ratio.factors().find(base);
      row[n] = it == ratio.factors().end() ? Rational(0) : it->second;
      m.push_back(std::move(row));
    }
    bool under = false;
    if (!solve_rational(std::move(m), n, nu[bi], under)) return sol;
    sol.underdetermined = sol.underdetermined || under;
    ++bi;
  }
  if (bases.empty() && !rows.empty()) {
    // All ratios are 1; still record whether the system pins the scalars down.
    std::vector<std::vector<Rational>> m;
    for (const auto& [e, ratio] : rows) {
      std::vector<Rational> row(n + 1, Rational(0));
      for (std::size_t i = 0; i < n; ++i) row[i] = e[i];
      m.push_back(std::move(row));
    }
    std::vector<Rational> x;
    bool under = false;
    solve_rational(std::move(m), n, x, under);
    sol.underdetermined = under;
  }
  sol.exists = true;
  sol.rational = true;
  sol.scalars.assign(n, Rational(1));
  bi = 0;
  for (const Integer& base : bases) {
    for (std::size_t i = 0; i < n; ++i) {
      const Rational& ex = nu[bi][i];
      if (denominator_of(ex) != 1) {
        sol.rational = false;
        continue;
      }
      sol.scalars[i] *= pow(Rational(base), numerator_of(ex).convert_to<long long>());
    }
    ++bi;
  }
  return sol;
}

inline void for_each_matrix(std::size_t rows, std::size_t cols, int bound,
                            const std::function<void(const IntMatrix&)>& fn) {
  IntMatrix m(rows, std::vector<long long>(cols, -bound));
  const std::size_t cells = rows * cols;
  if (cells == 0) {
    fn(m);
    return;
  }
  while (true) {
    fn(m);
    std::size_t k = 0;
    while (k < cells) {
      auto& v = m[k / cols][k % cols];
      if (v < bound) {
        ++v;
        break;
      }
      v = -bound;
      ++k;
    }
    if (k == cells) return;
  }
}

}  // namespace detail

/// All maps of the shape z_i -> lambda_i z_{sigma(i)} prod_{j avoids} z_j^{a_ij}
/// (i meets), z_i -> lambda_i prod_{j avoids} z_j^{b_ij} (i avoids), with
/// integer entries in [-entry_bound, entry_bound], that satisfy Q∘m == Q for
/// rational positive moduli scalars. Phases are quotiented out.
inline SymmetryEnumeration enumerate_algebraic_symmetries(const DomainSpec& spec, int entry_bound = 3,
                                                         std::uint64_t seed = 0) {
  if (entry_bound < 0) throw Error("entry_bound must be nonnegative");
  SymmetryEnumeration out;
  out.entry_bound = entry_bound;
  out.incidence = hyperplane_incidence(spec, seed);
  const auto& meets = out.incidence.meets;
  const auto& avoids = out.incidence.avoids;
  const std::size_t n = spec.dim();
  const std::size_t k = meets.size();
  const std::size_t r = avoids.size();

  const double width = 2.0 * entry_bound + 1.0;
  double space = std::pow(width, static_cast<double>(k * r + r * r));
  for (std::size_t i = 2; i <= k; ++i) space *= static_cast<double>(i);
  if (space > 5e7) throw Error("symmetry search space too large; lower entry_bound");

  std::vector<Exponent> support;
  for (const auto& [e, c] : spec.q().terms()) support.push_back(e);
  std::set<MonomialMap> found;
  bool underdetermined = false;

  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<IntMatrix> lattice_b;
  detail::for_each_matrix(r, r, entry_bound, [&](const IntMatrix& b) {
    const Integer d = determinant(b);
    if (d == 1 || d == -1) lattice_b.push_back(b);
  });
  do {
    for (const auto& b : lattice_b) {
      detail::for_each_matrix(k, r, entry_bound, [&](const IntMatrix& a) {
        IntMatrix full(n, std::vector<long long>(n, 0));
        for (std::size_t row = 0; row < k; ++row) {
          full[meets[row]][meets[perm[row]]] = 1;
          for (std::size_t c = 0; c < r; ++c) full[meets[row]][avoids[c]] = a[row][c];
        }
        for (std::size_t row = 0; row < r; ++row)
          for (std::size_t c = 0; c < r; ++c) full[avoids[row]][avoids[c]] = b[row][c];
        ++out.candidates_tested;
        const auto sol = detail::solve_scalars(spec.q(), full);
        if (!sol.exists) return;
        if (!sol.rational) {
          ++out.irrational_skipped;
          return;
        }
        underdetermined = underdetermined || sol.underdetermined;
        MonomialMap m(sol.scalars, full);
        if (is_exact_symmetry(spec, m)) found.insert(std::move(m));
      });
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  out.maps.assign(found.begin(), found.end());
  if (underdetermined)
    out.warnings.push_back("scalar equations are underdetermined; one representative per lattice datum is listed");
  if (out.irrational_skipped)
    out.warnings.push_back(std::to_string(out.irrational_skipped) +
                           " lattice candidates preserve Q only with irrational scalars and are not listed");

  // Group closure within the bound.
  auto max_entry = [](const MonomialMap& m) {
    long long v = 0;
    for (const auto& row : m.exponents())
      for (long long x : row) v = std::max(v, std::abs(x));
    return v;
  };
  bool escaped = false;
  auto check = [&](const MonomialMap& m) {
    if (found.count(m)) return;
    if (max_entry(m) > entry_bound) escaped = true;
    else out.closed = false;
  };
  for (const auto& m1 : out.maps) {
    check(m1.inverse());
    for (const auto& m2 : out.maps) check(m1.compose(m2));
  }
  if (escaped) out.warnings.push_back("group closure leaves the entry bound " + std::to_string(entry_bound));
  if (!out.closed) out.warnings.push_back("the listed maps are not closed under composition and inverse");
  return out;
}

/// Fraction of sampled points (inside and just outside D) whose membership
/// changes under the map acting on moduli.
inline double membership_flip_rate(const DomainSpec& spec, const MonomialMap& m, std::size_t samples,
                                   std::uint64_t seed) {
  BoundarySampler sampler(spec, seed);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  std::size_t tested = 0, flips = 0, attempts = 0;
  while (tested < samples && attempts < 20 * samples) {
    ++attempts;
    ComplexPoint d;
    auto b = sampler.boundary_point(&d);
    if (!b) continue;
    const double t_star = distance(*b, sampler.base()) / d.norm();
    const bool outside = tested % 2 == 1;
    const double s = outside ? 1.001 + 0.5 * frac(sampler.rng()) : 0.999 * frac(sampler.rng());
    const ComplexPoint z = sampler.base().along(d, s * t_star);
    const auto before = contains(spec, z);
    if (before.verdict == Membership::boundary) continue;
    const auto u = z.moduli();
    bool zero_hit = false;
    for (std::size_t i = 0; i < u.size(); ++i) zero_hit = zero_hit || u[i] == 0.0;
    if (zero_hit) continue;
    const auto image = m.apply_moduli(u);
    const double after = spec.q_at(image) - 1.0;
    const Membership av = after < -kDefaultBand ? Membership::inside
                          : after > kDefaultBand ? Membership::outside
                                                 : Membership::boundary;
    ++tested;
    if (av != before.verdict) ++flips;
  }
  return tested == 0 ? 0.0 : static_cast<double>(flips) / static_cast<double>(tested);
}

struct ProjectionReport {
  bool trivial = false;  // every hyperplane meets D
  std::vector<std::size_t> avoids;
  std::vector<double> lower;  // inf log|z_i| over D, avoided i
  std::vector<double> upper;  // sup log|z_i| over D
};

/// Extent of the projection of the log image onto the avoided coordinates.
/// Throws DomainError if it is unbounded below (the closure of D meets an
/// avoided hyperplane, so D cannot be smoothly bounded).
inline ProjectionReport projection_compactness_check(const DomainSpec& spec, const HyperplaneIncidence& inc,
                                                     std::uint64_t seed = 0, double floor = 1e-10) {
  ProjectionReport rep;
  rep.avoids = inc.avoids;
  rep.trivial = inc.avoids.empty();
  for (std::size_t i : inc.avoids) {
    const double lo = moduli_extent(spec, i, -1, seed + 31 * (i + 1));
    const double hi = moduli_extent(spec, i, +1, seed + 37 * (i + 1));
    if (lo <= floor)
      throw DomainError("projection of the log image is unbounded: the closure of D meets {z_" +
                        std::to_string(i + 1) + " = 0}");
    if (std::isinf(hi)) throw DomainError("projection of the log image is unbounded above");
    rep.lower.push_back(0.5 * std::log(lo));
    rep.upper.push_back(0.5 * std::log(hi));
  }
  return rep;
}

}  // namespace reinhardt
