#include "reinhardt/automorphisms.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace reinhardt;

namespace {

DomainSpec load(const std::string& name) {
  std::ifstream in(std::string(REINHARDT_DATA_DIR) + "/" + name + ".dom");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

ModelForm model_of(const DomainSpec& d) { return *classify(d).model; }

}  // namespace

TEST(Torus, RotationsPreserveRhoAndFormAGroup) {
  const auto d = load("quartic_cross");
  const TorusAction t({0.3, -1.2, 2.5});
  const TorusAction s({1.0, 0.5, -0.25});
  Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    const auto z = random_direction(3, rng);
    EXPECT_NEAR(d.rho(t(z)), d.rho(z), 1e-14);
    EXPECT_LT(distance(t.compose(s)(z), t(s(z))), 1e-14);
    EXPECT_LT(distance(t.inverse()(t(z)), z), 1e-14);
  }
  EXPECT_THROW(t(ComplexPoint(2)), DimensionError);
}

TEST(Moebius, PreservesModelDomains) {
  for (const char* name : {"quartic_cross", "scaled_model", "two_block_model", "ball3"}) {
    const auto d = load(name);
    const auto mf = model_of(d);
    for (double a : {-0.7, 0.3, 0.9}) {
      const auto rep = invariance_check(d, moebius(mf, a), 2000, 11);
      EXPECT_EQ(rep.flips, 0u) << name << " a=" << a;
      EXPECT_LT(rep.max_boundary_residual, 1e-8) << name << " a=" << a;
      EXPECT_EQ(rep.interior_samples, 2000u);
    }
  }
}

TEST(Moebius, SendsTheAxisPointToTheOrigin) {
  const auto mf = model_of(load("quartic_cross"));
  const auto z = moebius(mf, 0.4)(ComplexPoint{0.4, 0.0, 0.0});
  EXPECT_LT(z.norm(), 1e-15);
  const auto sc = model_of(load("scaled_model"));
  // first coefficient 4: the axis point is at z1 = a / 2
  EXPECT_LT(moebius(sc, 0.4)(ComplexPoint{0.2, 0.0}).norm(), 1e-15);
}

// Oracle: real Moebius maps of the disk compose as
// phi_a o phi_b = phi_{(a + b) / (1 + a b)}, and the model family inherits it.
TEST(MoebiusProperty, OneParameterGroupLaw) {
  const auto d = load("quartic_cross");
  const auto mf = model_of(d);
  BoundarySampler s(d, 5);
  const std::vector<double> params{-0.9, -0.5, 0.0, 0.2, 0.6, 0.95};
  for (int k = 0; k < 100; ++k) {
    const auto z = s.interior_point();
    ASSERT_TRUE(z);
    const double a = params[k % params.size()], b = params[(k / 6) % params.size()];
    const double c = (a + b) / (1 + a * b);
    EXPECT_LT(distance(moebius(mf, a)(moebius(mf, b)(*z)), moebius(mf, c)(*z)), 1e-9);
    EXPECT_LT(distance(moebius(mf, a)(moebius(mf, -a)(*z)), *z), 1e-9);
  }
}

TEST(Moebius, UnitaryBlocks) {
  const auto d = load("two_block_model");
  const auto mf = model_of(d);
  const double c = std::cos(0.7), s = std::sin(0.7);
  std::map<std::size_t, ComplexMatrix> u{{1, {{Complex(c, 0), Complex(0, s)}, {Complex(0, s), Complex(c, 0)}}}};
  const MoebiusAutomorphism f(mf, 0.5, u);
  const auto rep = invariance_check(d, f, 1000, 2);
  EXPECT_EQ(rep.flips, 0u);
  EXPECT_LT(rep.max_boundary_residual, 1e-8);
  std::map<std::size_t, ComplexMatrix> bad{{1, {{1.0, 1.0}, {0.0, 1.0}}}};
  EXPECT_THROW(MoebiusAutomorphism(mf, 0.5, bad), Error);
  EXPECT_THROW(moebius(mf, 1.0), Error);
}

TEST(Moebius, WrongWeightIsDetected) {
  const auto d = load("quartic_cross");
  auto mf = model_of(d);
  mf.m = {3, 3};
  const auto rep = invariance_check(d, moebius(mf, 0.5), 2000, 11);
  EXPECT_GT(rep.flip_fraction, 0.0);
  EXPECT_GT(rep.max_boundary_residual, 1e-3);
}

TEST(Orbits, ModelOrbitTendsToTheAxisPoint) {
  const auto d = load("quartic_cross");
  const auto rec = orbit(d, moebius_family(model_of(d)), ComplexPoint(3), geometric_schedule(40));
  ASSERT_EQ(rec.points.size(), 40u);
  EXPECT_LT(distance(rec.points.back(), ComplexPoint{1.0, 0.0, 0.0}), 1e-6);
  ASSERT_TRUE(rec.limit);
  for (std::size_t i = 1; i < rec.boundary_distance.size(); ++i)
    EXPECT_LE(rec.boundary_distance[i], rec.boundary_distance[i - 1] + 1e-15);
  EXPECT_THROW(orbit(d, moebius_family(model_of(d)), ComplexPoint{2.0, 0.0, 0.0}, geometric_schedule(3)),
               DomainError);
}

TEST(Orbits, GeometricSchedule) {
  const auto a = geometric_schedule(3);
  EXPECT_EQ(a, (std::vector<double>{-0.5, -0.75, -0.875}));
}

TEST(TwistedDisk, FamilyPreservesTheDomain) {
  const auto d = twisted_disk_spec();
  EXPECT_EQ(d.q(), load("twisted_disk").q());
  for (double a : {-0.8, 0.5}) {
    const auto rep = invariance_check(d, TwistedDiskAutomorphism(a), 2000, 4);
    EXPECT_EQ(rep.flips, 0u);
    EXPECT_LT(rep.max_boundary_residual, 1e-8);
  }
  const auto rec = orbit(d, twisted_disk_family(), ComplexPoint(2), geometric_schedule(40));
  EXPECT_LT(distance(rec.points.back(), ComplexPoint{1.0, 0.0}), 1e-6);
}
