#pragma once

// Explicit automorphisms: torus rotations, the real-parameter Moebius family
// of a model domain, and the fixed family of the twisted disk
// {|z1|^2 + (1 - |z1|^2)^2 |z2|^2 < 1}.

#include "reinhardt/classification.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace reinhardt {

using PointMap = std::function<ComplexPoint(const ComplexPoint&)>;
/// a -> F_a
using AutomorphismFamily = std::function<ComplexPoint(double, const ComplexPoint&)>;

class TorusAction {
 public:
  explicit TorusAction(std::vector<double> phi) : phi_(std::move(phi)) {}

  const std::vector<double>& angles() const { return phi_; }

  ComplexPoint operator()(const ComplexPoint& z) const {
    if (z.size() != phi_.size()) throw DimensionError("torus action dimension mismatch");
    ComplexPoint out(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) out[j] = std::polar(1.0, phi_[j]) * z[j];
    return out;
  }

  TorusAction compose(const TorusAction& other) const {
    if (other.phi_.size() != phi_.size()) throw DimensionError("torus action dimension mismatch");
    std::vector<double> sum(phi_.size());
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] = phi_[j] + other.phi_[j];
    return TorusAction(std::move(sum));
  }
  TorusAction inverse() const {
    std::vector<double> neg(phi_.size());
    for (std::size_t j = 0; j < neg.size(); ++j) neg[j] = -phi_[j];
    return TorusAction(std::move(neg));
  }

 private:
  std::vector<double> phi_;
};

/// z1 -> (z1 - a)/(1 - a z1), z_i -> sqrt(1 - a^2) z_i / (1 - a z1) on the
/// rest of the first block, z^j -> (1 - a^2)^{1/(2 m_j)} z^j / (1 - a z1)^{1/m_j},
/// followed by optional unitaries on the blocks. First block coefficients
/// c_i are absorbed by working in sqrt(c_i) z_i.
class MoebiusAutomorphism {
 public:
  MoebiusAutomorphism(ModelForm model, double a, std::map<std::size_t, ComplexMatrix> unitaries = {},
                      double band = kDefaultBand)
      : model_(std::move(model)), a_(a), unitaries_(std::move(unitaries)), band_(band) {
    if (!(std::abs(a_) < 1.0)) throw Error("Moebius parameter must satisfy |a| < 1");
    if (model_.blocks.count() == 0 || model_.blocks[0].empty()) throw Error("model has no first block");
    for (const auto& [b, u] : unitaries_) {
      if (b >= model_.blocks.count()) throw Error("unitary given for a missing block");
      const std::size_t k = model_.blocks[b].size();
      if (u.size() != k) throw DimensionError("unitary size does not match its block");
      for (const auto& row : u)
        if (row.size() != k) throw DimensionError("unitary is not square");
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
          Complex s = 0;
          for (std::size_t l = 0; l < k; ++l) s += std::conj(u[l][i]) * u[l][j];
          if (std::abs(s - (i == j ? 1.0 : 0.0)) > 1e-12) throw Error("block matrix is not unitary to 1e-12");
        }
    }
    for (const auto& c : model_.first_coefficients) root_c_.push_back(std::sqrt(to_double(c)));
  }

  double parameter() const { return a_; }
  const ModelForm& model() const { return model_; }

  ComplexPoint operator()(const ComplexPoint& z) const {
    const auto& first = model_.blocks[0];
    if (z.size() != model_.blocks.dimension()) throw DimensionError("point dimension does not match the model");
    const Complex z1 = root_c_[0] * z[first[0]];
    if (std::abs(z1) >= 1.0 + band_) throw DomainError("Moebius map: |z1| >= 1 leaves the principal branch");
    const Complex w = 1.0 - a_ * z1;
    const double s = std::sqrt(1.0 - a_ * a_);
    ComplexPoint out(z.size());
    out[first[0]] = (z1 - a_) / w / root_c_[0];
    for (std::size_t t = 1; t < first.size(); ++t) out[first[t]] = s * z[first[t]] / w;
    for (std::size_t b = 1; b < model_.blocks.count(); ++b) {
      const double inv_m = 1.0 / model_.m[b - 1];
      const Complex factor = std::pow(1.0 - a_ * a_, 0.5 * inv_m) / std::pow(w, inv_m);
      for (std::size_t i : model_.blocks[b]) out[i] = factor * z[i];
    }
    for (const auto& [b, u] : unitaries_) {
      const auto& block = model_.blocks[b];
      std::vector<Complex> v(block.size());
      for (std::size_t r = 0; r < block.size(); ++r)
        for (std::size_t c = 0; c < block.size(); ++c) v[r] += u[r][c] * out[block[c]];
      for (std::size_t r = 0; r < block.size(); ++r) out[block[r]] = v[r];
    }
    return out;
  }

 private:
  ModelForm model_;
  double a_;
  std::map<std::size_t, ComplexMatrix> unitaries_;
  double band_;
  std::vector<double> root_c_;
};

inline MoebiusAutomorphism moebius(const ModelForm& model, double a) { return {model, a}; }

inline AutomorphismFamily moebius_family(const ModelForm& model) {
  return [model](double a, const ComplexPoint& z) { return MoebiusAutomorphism(model, a)(z); };
}

/// Q = u1 + (1 - u1)^2 u2: smooth and hyperbolic but unbounded, with
/// non-compact automorphism group.
inline DomainSpec twisted_disk_spec() {
  return parse_spec("n = 2\nQ = u1 + u2 - 2*u1*u2 + u1^2*u2\nname = twisted_disk");
}

/// z1 -> (z1 - a)/(1 - a z1), z2 -> (1 - a z1) z2 / sqrt(1 - a^2).
class TwistedDiskAutomorphism {
 public:
  explicit TwistedDiskAutomorphism(double a) : a_(a) {
    if (!(std::abs(a_) < 1.0)) throw Error("parameter must satisfy |a| < 1");
  }
  double parameter() const { return a_; }
  ComplexPoint operator()(const ComplexPoint& z) const {
    if (z.size() != 2) throw DimensionError("twisted disk map acts on C^2");
    const Complex w = 1.0 - a_ * z[0];
    ComplexPoint out(2);
    out[0] = (z[0] - a_) / w;
    out[1] = w * z[1] / std::sqrt(1.0 - a_ * a_);
    return out;
  }

 private:
  double a_;
};

inline AutomorphismFamily twisted_disk_family() {
  return [](double a, const ComplexPoint& z) { return TwistedDiskAutomorphism(a)(z); };
}

struct InvarianceReport {
  std::size_t interior_samples = 0;
  std::size_t flips = 0;  // interior points mapped outside (or not mapped at all)
  double flip_fraction = 0;
  std::size_t boundary_samples = 0;
  double max_boundary_residual = 0;  // max |rho(F(z))| over boundary samples z
};

/// Samples interior and boundary points of spec and measures how well F
/// preserves each.
inline InvarianceReport invariance_check(const DomainSpec& spec, const PointMap& f, std::size_t samples,
                                         std::uint64_t seed, double band = kDefaultBand) {
  InvarianceReport rep;
  BoundarySampler sampler(spec, seed);
  std::size_t attempts = 0;
  while ((rep.interior_samples < samples || rep.boundary_samples < samples) && attempts < 20 * samples + 100) {
    ++attempts;
    ComplexPoint d;
    auto b = sampler.boundary_point(&d);
    if (!b) continue;
    if (rep.boundary_samples < samples) {
      ++rep.boundary_samples;
      try {
        rep.max_boundary_residual = std::max(rep.max_boundary_residual, std::abs(spec.rho(f(*b))));
      } catch (const DomainError&) {
        rep.max_boundary_residual = std::numeric_limits<double>::infinity();
      }
    }
    if (rep.interior_samples < samples) {
      const double t_star = distance(*b, sampler.base()) / d.norm();
      std::uniform_real_distribution<double> frac(0.0, 1.0);
      const double s = rep.interior_samples % 2 ? 0.9 + 0.099 * frac(sampler.rng()) : 0.999 * frac(sampler.rng());
      const ComplexPoint z = sampler.base().along(d, s * t_star);
      if (contains(spec, z, band).verdict != Membership::inside) continue;
      ++rep.interior_samples;
      try {
        if (contains(spec, f(z), band).verdict != Membership::inside) ++rep.flips;
      } catch (const DomainError&) {
        ++rep.flips;
      }
    }
  }
  rep.flip_fraction = rep.interior_samples ? static_cast<double>(rep.flips) / rep.interior_samples : 0.0;
  return rep;
}

struct OrbitRecord {
  std::vector<double> parameters;
  std::vector<ComplexPoint> points;
  std::vector<double> boundary_distance;
  std::optional<ComplexPoint> limit;
};

/// a_i = -1 + 2^{-i}, i = 1..count
inline std::vector<double> geometric_schedule(int count) {
  std::vector<double> a;
  for (int i = 1; i <= count; ++i) a.push_back(-1.0 + std::ldexp(1.0, -i));
  return a;
}

/// F_{a_i}(p) for each a_i, with the distance to the boundary along the ray
/// through the point (or along e_1 from the origin).
inline OrbitRecord orbit(const DomainSpec& spec, const AutomorphismFamily& family, const ComplexPoint& p,
                         const std::vector<double>& schedule, double band = kDefaultBand,
                         double cauchy_tol = 1e-8) {
  if (contains(spec, p, band).verdict != Membership::inside) throw DomainError("orbit start is not inside");
  OrbitRecord rec;
  for (double a : schedule) {
    if (!(std::abs(a) < 1.0)) throw Error("orbit parameter outside (-1, 1)");
    ComplexPoint z = family(a, p);
    const auto m = contains(spec, z, band);
    if (m.verdict == Membership::outside || !z.is_finite())
      throw DomainError("orbit point escapes the closed domain at a = " + std::to_string(a));
    double dist = 0.0;
    if (m.verdict == Membership::inside) {
      ComplexPoint dir(z.size());
      if (z.norm() > 0) {
        for (std::size_t j = 0; j < z.size(); ++j) dir[j] = z[j] / z.norm();
      } else {
        dir[0] = 1.0;
      }
      dist = distance(boundary_solve(spec, z, dir, {.band = band}), z);
    }
    rec.parameters.push_back(a);
    rec.points.push_back(std::move(z));
    rec.boundary_distance.push_back(dist);
  }
  const std::size_t k = rec.points.size();
  if (k >= 2 && distance(rec.points[k - 1], rec.points[k - 2]) < cauchy_tol) rec.limit = rec.points[k - 1];
  return rec;
}

}  // namespace reinhardt
