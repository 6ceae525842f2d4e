// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "reinhardt/reinhardt.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace reinhardt;

namespace {

constexpr double kClassifySeconds = 1.0;
constexpr double kLeviEigenTol = 1e-5;
constexpr double kOrthogonalityTol = 1e-9;
constexpr double kOrbitTol = 1e-6;
constexpr std::size_t kFlipSamples = 1000;
constexpr int kHomogeneityChecks = 200;
constexpr int kOraclePoints = 20;
constexpr std::size_t kMoebiusSamples = 10000;
constexpr double kBoundaryResidualTol = 1e-8;
constexpr double kGroupLawTol = 1e-9;
constexpr std::size_t kBallLeviSamples = 1000;
constexpr double kTypeSeconds = 60.0;

const char* kQuartic = "n = 3\nQ = u1 + u2^2 + u3^2 - u2*u3\nblocks = [[1],[2],[3]]\n";

struct Result {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(const char* id, const char* title, const std::function<Result()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Result r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (!r.pass) ++failures;
  std::printf("%s %s  %s  [%s] (%.0f ms)\n", id, r.pass ? "PASS" : "FAIL", title, r.detail.c_str(), ms);
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// |gamma(t)|^2 per coordinate with t Gaussian rational, then Q - 1 exactly.
Rational exact_rho(const DomainSpec& d, const std::vector<std::vector<GaussianRational>>& curve,
                   const GaussianRational& t) {
  std::vector<Rational> u;
  for (const auto& comp : curve) {
    GaussianRational v, power(1);
    for (const auto& c : comp) {
      v += c * power;
      power = power * t;
    }
    u.push_back(v.norm());
  }
  return d.q().evaluate(std::span<const Rational>(u)) - 1;
}

// Order of rho along the curve from ratios at eps and eps/2, minimised over
// a few directions; -1 when rho vanishes identically at the probes.
int oracle_rho_order(const DomainSpec& d, const std::vector<std::vector<GaussianRational>>& curve) {
  const Rational eps = pow(Rational(2), -24);
  const std::vector<GaussianRational> dirs{GaussianRational(1), GaussianRational(0, 1),
                                           GaussianRational(Rational(3, 5), Rational(4, 5))};
  int best = -1;
  for (const auto& z : dirs) {
    const Rational a = exact_rho(d, curve, GaussianRational(eps) * z);
    const Rational b = exact_rho(d, curve, GaussianRational(eps / 2) * z);
    if (a == 0 || b == 0) continue;
    const int k = static_cast<int>(std::lround(std::log2(std::abs(to_double(a / b)))));
    best = best < 0 ? k : std::min(best, k);
  }
  return best;
}

}  // namespace

int main() {
  const DomainSpec quartic = parse_spec(kQuartic);

  criterion("AC1", "quartic cross classifies as a model", [&]() -> Result {
    const auto t0 = std::chrono::steady_clock::now();
    const auto v = classify(quartic);
    const double s = seconds_since(t0);
    if (v.kind != VerdictKind::model) return {false, std::string("verdict ") + to_string(v.kind)};
    const auto& mf = *v.model;
    const bool shape = mf.m == std::vector<int>{2, 2} && mf.r == std::vector<Rational>{1, 1} &&
                       mf.cross_terms.size() == 1 && mf.cross_terms.count(Exponent{1, 1}) &&
                       mf.cross_terms.at(Exponent{1, 1}) == -1;
    return {shape && s < kClassifySeconds, "m=(2,2) r=(1,1) a_(1,1)=-1 exact: " + std::string(shape ? "yes" : "no") +
                                               ", " + fmt(s) + " s"};
  });

  criterion("AC2", "Levi eigenvalues at the cross point", [&]() -> Result {
    const ComplexPoint q{std::pow(2.0, -0.5), 0.0, std::pow(2.0, -0.25)};
    const auto rep = levi_form(quartic, q);
    const std::vector<double> want{-0.707107, 5.656854};
    double err = 0;
    for (std::size_t i = 0; i < 2; ++i) err = std::max(err, std::abs(rep.eigenvalues.at(i) - want[i]));
    double ortho = 0;
    for (const auto& v : rep.tangent_basis) {
      Complex dg = 0;
      for (std::size_t j = 0; j < 3; ++j) dg += rep.gradient[j] * v[j];
      ortho = std::max(ortho, std::abs(dg));
    }
    return {err < kLeviEigenTol && ortho < kOrthogonalityTol && rep.verdict == LeviVerdict::indefinite,
            "eigs (" + fmt(rep.eigenvalues[0]) + ", " + fmt(rep.eigenvalues[1]) + ") err " + fmt(err) +
                ", tangency " + fmt(ortho) + ", " + to_string(rep.verdict)};
  });

  criterion("AC3", "Moebius orbit of the origin reaches (1,0,0)", [&]() -> Result {
    const auto v = classify(quartic);
    const auto rec = orbit(quartic, moebius_family(*v.model), ComplexPoint(3), geometric_schedule(40));
    bool inside = true;
    for (const auto& p : rec.points) inside = inside && quartic.rho(p) < 0;
    const double dist = distance(rec.points.at(39), ComplexPoint{1.0, 0.0, 0.0});
    return {inside && dist < kOrbitTol, "|F_a40(0) - (1,0,0)| = " + fmt(dist) + ", all inside: " + (inside ? "yes" : "no")};
  });

  const DomainSpec twisted = twisted_disk_spec();

  criterion("AC4", "twisted disk has infinite contact along (1, t)", [&]() -> Result {
    const auto o = contact_order(twisted, ExactCurve{{{1}, {0, 1}}});
    return {o.infinite && o.exact, o.str() + "; " + o.certificate};
  });

  criterion("AC5", "twisted disk orbit and invariance", [&]() -> Result {
    const auto rec = orbit(twisted, twisted_disk_family(), ComplexPoint(2), geometric_schedule(40));
    const double dist = distance(rec.points.back(), ComplexPoint{1.0, 0.0});
    const auto inv = invariance_check(twisted, TwistedDiskAutomorphism(0.5), kFlipSamples, 5);
    return {dist < kOrbitTol && inv.flips == 0 && inv.interior_samples == kFlipSamples,
            "orbit end distance " + fmt(dist) + ", flips " + std::to_string(inv.flips) + "/" +
                std::to_string(inv.interior_samples)};
  });

  criterion("AC6", "weighted homogeneity agrees with the scaling oracle", [&]() -> Result {
    std::mt19937_64 rng(20);
    std::uniform_int_distribution<int> mexp(1, 4), coin(0, 1), num(-9, 9), den(1, 7);
    int agree = 0, homogeneous = 0;
    for (int trial = 0; trial < kHomogeneityChecks; ++trial) {
      const std::size_t n = 2 + trial % 2;
      std::vector<int> m(n);
      for (auto& x : m) x = mexp(rng);
      const WeightVector w = WeightVector::from_exponents(m);
      ModuliPolynomial p(n);
      Exponent e(n, 0);
      std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (i == n) {
          if (w.weight_of(e) == 1 && coin(rng)) p = p + ModuliPolynomial::monomial(n, e, Rational(num(rng) | 1));
          return;
        }
        for (int a = 0; a <= 4; ++a) {
          e[i] = a;
          walk(i + 1);
        }
        e[i] = 0;
      };
      walk(0);
      if (coin(rng)) {
        Exponent stray(n, 0);
        for (auto& x : stray) x = mexp(rng) - 1;
        p = p + ModuliPolynomial::monomial(n, stray, Rational(num(rng) | 1));
      }
      const long long l = w.denominator_lcm();
      bool oracle = true;
      for (int k = 0; k < kOraclePoints && oracle; ++k) {
        std::vector<Rational> u(n), scaled(n);
        for (std::size_t j = 0; j < n; ++j) {
          u[j] = Rational(num(rng), den(rng));
          scaled[j] = u[j] * pow(Rational(2), static_cast<int>(l / m[j]));
        }
        oracle = p.evaluate(std::span<const Rational>(scaled)) ==
                 pow(Rational(2), static_cast<int>(l)) * p.evaluate(std::span<const Rational>(u));
      }
      const bool got = is_weighted_homogeneous(p, w);
      homogeneous += got;
      agree += got == oracle;
    }
    return {agree == kHomogeneityChecks, std::to_string(agree) + "/" + std::to_string(kHomogeneityChecks) +
                                            " agree (" + std::to_string(homogeneous) + " homogeneous)"};
  });

  criterion("AC7", "algebraic symmetries", [&]() -> Result {
    const auto e = enumerate_algebraic_symmetries(quartic, 2);
    const std::vector<std::size_t> swap{0, 2, 1};
    const std::set<MonomialMap> want{MonomialMap::identity(3), MonomialMap::permutation(swap)};
    const bool quartic_ok = std::set<MonomialMap>(e.maps.begin(), e.maps.end()) == want;
    const auto trivial = enumerate_algebraic_symmetries(parse_spec("n = 2; Q = u1 + u2^2"), 2);
    const bool trivial_ok = trivial.maps.size() == 1 && trivial.maps[0].is_identity();
    double worst = 0;
    for (const auto& m : e.maps) worst = std::max(worst, membership_flip_rate(quartic, m, kFlipSamples, 7));
    return {quartic_ok && trivial_ok && worst == 0.0,
            std::to_string(e.maps.size()) + " maps for the quartic cross, " + std::to_string(trivial.maps.size()) +
                " for u1 + u2^2, max flip rate " + fmt(worst)};
  });

  criterion("AC8", "Moebius maps preserve the boundary and compose", [&]() -> Result {
    const auto mf = *classify(quartic).model;
    double worst = 0;
    std::size_t flips = 0;
    for (double a : {0.1, 0.5, 0.9}) {
      const auto rep = invariance_check(quartic, moebius(mf, a), kMoebiusSamples, 3);
      worst = std::max(worst, rep.max_boundary_residual);
      flips += rep.flips;
    }
    BoundarySampler s(quartic, 4);
    double group = 0;
    for (int k = 0; k < 1000; ++k) {
      const auto z = s.interior_point();
      if (!z) continue;
      for (double a : {0.1, 0.5, 0.9})
        group = std::max(group, distance(moebius(mf, a)(moebius(mf, -a)(*z)), *z));
    }
    return {worst < kBoundaryResidualTol && group < kGroupLawTol && flips == 0,
            "max |rho(F_a(q))| " + fmt(worst) + ", max |F_a F_-a z - z| " + fmt(group) + ", flips " +
                std::to_string(flips)};
  });

  criterion("AC9", "unit ball", [&]() -> Result {
    const DomainSpec ball = parse_spec("n = 3; Q = u1 + u2 + u3");
    const auto v = classify(ball);
    if (v.kind != VerdictKind::ball) return {false, std::string("verdict ") + to_string(v.kind)};
    BoundarySampler s(ball, 9);
    std::size_t definite = 0;
    for (std::size_t k = 0; k < kBallLeviSamples; ++k)
      definite += levi_form(ball, *s.boundary_point()).verdict == LeviVerdict::positive_definite;
    const int dim = accumulation_set(*v.model).dimension;
    return {definite == kBallLeviSamples && dim == 5,
            "Ball; positive definite at " + std::to_string(definite) + "/" + std::to_string(kBallLeviSamples) +
                " boundary points; accumulation set dimension " + std::to_string(dim)};
  });

  criterion("AC10", "type 4 at (1,0,0)", [&]() -> Result {
    const auto t0 = std::chrono::steady_clock::now();
    const auto probe = type_probe(quartic, ExactPoint{1, 0, 0}, {.degree_bound = 3, .coefficient_grid = 3});
    const double s = seconds_since(t0);
    // Brute force over the same family of curves with ratio-based orders.
    std::vector<GaussianRational> coeffs;
    for (const auto& unit : {GaussianRational(1), GaussianRational(0, 1), GaussianRational(-1),
                                        GaussianRational(0, -1)})
      for (const auto& mag : {Rational(1, 2), Rational(1), Rational(2)}) coeffs.push_back(unit * GaussianRational(mag));
    std::vector<std::vector<GaussianRational>> moves{{}};
    for (int k = 1; k <= 3; ++k)
      for (const auto& c : coeffs) {
        std::vector<GaussianRational> m(k + 1);
        m[k] = c;
        moves.push_back(m);
      }
    const std::vector<GaussianRational> q{1, 0, 0};
    Rational best = 0;
    for (const auto& m1 : moves)
      for (const auto& m2 : moves)
        for (const auto& m3 : moves) {
          std::vector<std::vector<GaussianRational>> curve{m1, m2, m3};
          int order = 0;
          for (std::size_t j = 0; j < 3; ++j) {
            if (curve[j].empty()) curve[j] = {q[j]};
            else {
              curve[j][0] = q[j];
              const int k = static_cast<int>(curve[j].size()) - 1;
              order = order == 0 ? k : std::min(order, k);
            }
          }
          if (order == 0) continue;
          const int r = oracle_rho_order(quartic, curve);
          if (r < 0) return {false, "oracle found a curve with vanishing rho"};
          best = std::max(best, Rational(r, order));
        }
    const bool ok = !probe.best.infinite && probe.best.value == 4 && best == 4 && s < kTypeSeconds;
    return {ok, "probe " + probe.best.str() + " over " + std::to_string(probe.curves_tested) + " curves in " + fmt(s) +
                    " s; oracle " + to_string(best)};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
