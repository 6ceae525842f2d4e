#include "reinhardt/log_geometry.hpp"

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

MonomialMap swap23() {
  const std::vector<std::size_t> p{0, 2, 1};
  return MonomialMap::permutation(p);
}

}  // namespace

TEST(Incidence, OriginInsideMeetsEverything) {
  const auto inc = hyperplane_incidence(load("quartic_cross"));
  EXPECT_TRUE(inc.full());
  EXPECT_EQ(inc.meets.size(), 3u);
}

TEST(Incidence, ShellAvoidsFirstAxis) {
  const auto d = load("shell");
  const auto inc = hyperplane_incidence(d, 1);
  ASSERT_EQ(inc.avoids, std::vector<std::size_t>{0});
  EXPECT_EQ(inc.meets, std::vector<std::size_t>{1});
  // (u1 - 2)^2 + u2 < 1 gives 1 < |z1|^2 < 3
  EXPECT_NEAR(inc.distances.at(0), 1.0, 1e-6);
  const auto proj = projection_compactness_check(d, inc, 1);
  ASSERT_EQ(proj.lower.size(), 1u);
  EXPECT_NEAR(proj.lower[0], 0.0, 1e-6);
  EXPECT_NEAR(proj.upper[0], 0.5 * std::log(3.0), 1e-6);
}

TEST(LogImage, PointsLieInNegativeOrthantAndInD) {
  const auto d = load("quartic_cross");
  const auto s = log_image_sample(d, 300, 5);
  ASSERT_EQ(s.points.size(), 300u);
  for (const auto& x : s.points) {
    std::vector<double> u(3);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_LT(x[i], 0.0);
      u[i] = std::exp(2 * x[i]) * s.scale[i] * s.scale[i];
    }
    EXPECT_LT(d.q_at(u), 1.0);
  }
  // sup |z_1| = 1 is reached along the z_1 axis
  EXPECT_NEAR(s.scale[0], 1.0, 1e-3);
}

TEST(Symmetries, QuarticCrossHasTheSwap) {
  const auto d = load("quartic_cross");
  const auto e = enumerate_algebraic_symmetries(d, 2);
  ASSERT_EQ(e.maps.size(), 2u);
  EXPECT_TRUE(std::count_if(e.maps.begin(), e.maps.end(), [](const auto& m) { return m.is_identity(); }) == 1);
  EXPECT_TRUE(std::find(e.maps.begin(), e.maps.end(), swap23()) != e.maps.end());
  EXPECT_TRUE(e.closed);
  for (const auto& m : e.maps) EXPECT_EQ(membership_flip_rate(d, m, 1000, 3), 0.0);
}

TEST(Symmetries, TrivialWhenNoCoordinatesMatch) {
  const auto e = enumerate_algebraic_symmetries(parse_spec("n = 2; Q = u1 + u2^2"), 3);
  ASSERT_EQ(e.maps.size(), 1u);
  EXPECT_TRUE(e.maps[0].is_identity());
}

// Oracle: for a diagonal quadric every coordinate permutation is a symmetry.
TEST(Symmetries, BallMatchesPermutationOracle) {
  const auto d = load("ball3");
  const auto e = enumerate_algebraic_symmetries(d, 3);
  std::vector<std::size_t> p{0, 1, 2};
  std::set<MonomialMap> oracle;
  do oracle.insert(MonomialMap::permutation(p));
  while (std::next_permutation(p.begin(), p.end()));
  EXPECT_EQ(std::set<MonomialMap>(e.maps.begin(), e.maps.end()), oracle);
}

TEST(Symmetries, DilationsWithRationalScalars) {
  // u2 <-> u3 preserves Q only after rescaling by 2 and 1/2
  const auto d = parse_spec("n = 3; Q = u1 + u2^2 + 4*u3^2");
  const auto e = enumerate_algebraic_symmetries(d, 1);
  ASSERT_EQ(e.maps.size(), 2u);
  for (const auto& m : e.maps) EXPECT_TRUE(is_exact_symmetry(d, m));
  const auto& m = e.maps[0].is_identity() ? e.maps[1] : e.maps[0];
  EXPECT_EQ(m.scalars()[1], Rational(2));
  EXPECT_EQ(m.scalars()[2], Rational(1, 2));
}

TEST(Symmetries, AvoidedCoordinatesUseTheLattice) {
  const auto d = load("shell");
  const auto e = enumerate_algebraic_symmetries(d, 2, 1);
  EXPECT_EQ(e.incidence.avoids, std::vector<std::size_t>{0});
  for (const auto& m : e.maps) {
    EXPECT_TRUE(is_exact_symmetry(d, m));
    const auto aff = to_affine(m, e.incidence);
    EXPECT_EQ(aff.b.size(), 1u);
  }
  // a in [-2, 2], b = +-1
  EXPECT_EQ(e.candidates_tested, 10u);
}

TEST(Symmetries, SearchSpaceGuard) {
  EXPECT_THROW(enumerate_algebraic_symmetries(load("ball3"), -1), Error);
  // 12! permutations exceed the guard even at bound 0
  const auto big = parse_spec("n = 12; Q = u1 + u2 + u3 + u4 + u5 + u6 + u7 + u8 + u9 + u10 + u11 + u12");
  EXPECT_THROW(enumerate_algebraic_symmetries(big, 0), Error);
}

TEST(Symmetries, TamperedMapFlipsMembership) {
  const auto d = load("quartic_cross");
  const auto bad = MonomialMap({Rational(1), Rational(2), Rational(1, 2)}, identity_matrix(3));
  EXPECT_FALSE(is_exact_symmetry(d, bad));
  EXPECT_GT(membership_flip_rate(d, bad, 1000, 3), 0.0);
}

TEST(Affine, SplitsLatticeData) {
  const auto inc = hyperplane_incidence(load("quartic_cross"));
  const auto a = to_affine(swap23(), inc);
  EXPECT_EQ(a.sigma, (std::vector<std::size_t>{0, 2, 1}));
  EXPECT_TRUE(a.b.empty());
  for (double mu : a.mu) EXPECT_EQ(mu, 0.0);
  const auto mixed = MonomialMap({Rational(1), Rational(1)}, {{1, 1}, {0, 1}});
  EXPECT_THROW(to_affine(mixed, hyperplane_incidence(parse_spec("n = 2; Q = u1 + u2"))), Error);
}
