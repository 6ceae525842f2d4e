#include "reinhardt/domain.hpp"

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

DomainSpec quartic() { return load("quartic_cross"); }

}  // namespace

TEST(SpecParsing, ReadsAllKeys) {
  const auto d = quartic();
  EXPECT_EQ(d.dim(), 3u);
  EXPECT_EQ(d.name(), "quartic_cross");
  ASSERT_TRUE(d.declared_blocks());
  EXPECT_EQ(d.declared_blocks()->blocks().size(), 3u);
  EXPECT_EQ(parse_spec(format_spec(d)).q(), d.q());
  const auto e = parse_spec("n = 2; Q = u1 + u2^2");
  EXPECT_FALSE(e.declared_blocks());
  EXPECT_EQ(e.blocks_or_singletons().blocks().size(), 2u);
}

TEST(SpecParsing, ErrorsPointAtTheProblem) {
  auto position = [](const char* text) {
    try {
      parse_spec(text);
    } catch (const ParseError& e) {
      return std::make_pair(e.line(), e.column());
    }
    return std::make_pair(std::size_t(0), std::size_t(0));
  };
  EXPECT_EQ(position("n = 2\nQ = u1 + u3\n").first, 2u);
  EXPECT_EQ(position("n = 0\nQ = u1\n"), std::make_pair(std::size_t(1), std::size_t(5)));
  EXPECT_EQ(position("n = 2\nfoo = 1\nQ = u1\n").first, 2u);
  EXPECT_EQ(position("n = 2\nQ = 3\n").first, 2u);
  EXPECT_EQ(position("n = 2\nQ = u1\nblocks = [[1],[1]]\n").first, 3u);
  EXPECT_EQ(position("n = 2\nQ = u1^-1 + u2\n").first, 2u);
  EXPECT_EQ(position("n = 2\nn = 2\nQ = u1\n").first, 2u);
  EXPECT_THROW(parse_spec("Q = u1\n"), ParseError);
}

TEST(Membership, OriginAndBoundary) {
  const auto d = quartic();
  EXPECT_EQ(contains(d, ComplexPoint(3)).verdict, Membership::inside);
  EXPECT_EQ(contains(d, ComplexPoint{1.0, 0.0, 0.0}).verdict, Membership::boundary);
  EXPECT_EQ(contains(d, ComplexPoint{Complex(0, 1.01), 0.0, 0.0}).verdict, Membership::outside);
  // u = (0, 1/2, 1/2): Q = 1/4 + 1/4 - 1/4
  const double r = std::sqrt(0.5);
  EXPECT_NEAR(contains(d, ComplexPoint{0.0, r, Complex(0, r)}).margin, -0.75, 1e-15);
  EXPECT_THROW(contains(d, ComplexPoint{1.0, 0.0}), DimensionError);
}

TEST(Membership, GradientMatchesFiniteDifferences) {
  const auto d = quartic();
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexPoint p = random_direction(3, rng);
    const auto g = d.rho_gradient(p);
    const double h = 1e-6;
    for (std::size_t j = 0; j < 3; ++j) {
      ComplexPoint a = p, b = p, c = p, e = p;
      a[j] += h;
      b[j] -= h;
      c[j] += Complex(0, h);
      e[j] -= Complex(0, h);
      const double dx = (d.rho(a) - d.rho(b)) / (2 * h);
      const double dy = (d.rho(c) - d.rho(e)) / (2 * h);
      // d/dz = (d/dx - i d/dy) / 2
      EXPECT_NEAR(g[j].real(), dx / 2, 1e-7);
      EXPECT_NEAR(g[j].imag(), -dy / 2, 1e-7);
    }
  }
}

TEST(Boundary, SolveLandsOnLevelSet) {
  const auto d = quartic();
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto dir = random_direction(3, rng);
    const auto b = boundary_solve(d, ComplexPoint(3), dir);
    EXPECT_LE(std::abs(d.rho(b)), 1e-10);
    // the exit is the first one: slightly before it is inside
    EXPECT_LT(d.rho(ComplexPoint(3).along(dir, 0.999 * b.norm())), 0.0);
  }
  EXPECT_THROW(boundary_solve(d, ComplexPoint{2.0, 0.0, 0.0}, ComplexPoint{1.0, 0.0, 0.0}), DomainError);
}

TEST(Boundary, UnboundedRayThrows) {
  const auto d = parse_spec("n = 2; Q = u1*u2");
  EXPECT_THROW(boundary_solve(d, ComplexPoint(2), ComplexPoint{1.0, 0.0}), DomainError);
}

TEST(Boundary, SamplerPointsAreInside) {
  const auto d = load("two_block_model");
  BoundarySampler s(d, 7);
  for (int k = 0; k < 500; ++k) {
    auto p = s.interior_point();
    ASSERT_TRUE(p);
    EXPECT_EQ(contains(d, *p).verdict, Membership::inside);
  }
}

TEST(Boundary, InteriorPointWithoutOrigin) {
  const auto d = load("shell");
  Rng rng(2);
  const auto z = find_interior_point(d, rng);
  EXPECT_EQ(contains(d, z).verdict, Membership::inside);
  EXPECT_EQ(contains(d, ComplexPoint(2)).verdict, Membership::outside);
}

TEST(Slices, ZeroingCoordinates) {
  const auto s = coordinate_slice(quartic(), {2});
  EXPECT_EQ(s.dim(), 2u);
  EXPECT_EQ(s.q(), parse_polynomial("u1 + u2^2", 2));
  ASSERT_TRUE(s.declared_blocks());
  EXPECT_EQ(s.declared_blocks()->blocks().size(), 2u);
  EXPECT_THROW(coordinate_slice(quartic(), {0, 1, 2}), DomainError);
}

TEST(Boundedness, CertificatesAndWitnesses) {
  EXPECT_EQ(boundedness_certificate(quartic()).kind, BoundednessKind::bounded_certified);
  EXPECT_EQ(boundedness_certificate(load("fermat")).kind, BoundednessKind::bounded_certified);
  EXPECT_EQ(boundedness_certificate(parse_spec("n = 3; Q = u1 + u2^2 - 3*u2*u3 + 9*u3^2")).kind,
            BoundednessKind::bounded_certified);
  const auto product = boundedness_certificate(load("product"));
  EXPECT_EQ(product.kind, BoundednessKind::unbounded_witness);
  const auto twisted = boundedness_certificate(load("twisted_disk"));
  ASSERT_EQ(twisted.kind, BoundednessKind::unbounded_witness);
  // the witness is genuinely in the domain or is a ray along which Q stays below 1
  const auto t = load("twisted_disk");
  if (twisted.witness_is_ray) {
    for (double s : {1.0, 1e3, 1e6}) {
      std::vector<double> u = twisted.witness;
      for (auto& x : u) x *= s;
      EXPECT_LT(t.q_at(u), 1.0);
    }
  } else {
    EXPECT_LT(t.q_at(twisted.witness), 1.0);
  }
}

TEST(Regularity, SmoothBoundariesPass) {
  const auto ball = boundary_regularity_sample(load("ball2"), 500, 1e-8, 3);
  EXPECT_TRUE(ball.regular());
  EXPECT_EQ(ball.sampled_points, 500u);
  EXPECT_NE(ball.statement.find("no boundary irregularity detected"), std::string::npos);
  // on the unit ball |grad rho| = |z| = 1
  EXPECT_NEAR(ball.min_gradient_norm, 1.0, 1e-9);
  const auto q = boundary_regularity_sample(quartic(), 500, 1e-8, 3);
  EXPECT_TRUE(q.regular());
  EXPECT_GT(q.min_gradient_norm, 0.1);
}
