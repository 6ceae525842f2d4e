#include "reinhardt/classification.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace reinhardt;

namespace {

DomainSpec load(const std::string& name) {
  std::ifstream in(std::string(REINHARDT_DATA_DIR) + "/" + name + ".dom");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

DomainSpec spec(std::size_t n, const char* q) { return DomainSpec(n, parse_polynomial(q, n)); }

// Q(W(u')) evaluated in the original coordinates.
double original_at_witness(const DomainSpec& d, const DilationWitness& w, const std::vector<double>& up) {
  std::vector<double> u(d.dim());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = w.moduli_scalars[i].to_double() * up[w.target[i]];
  return d.q_at(u);
}

}  // namespace

TEST(Blocks, DetectsCoarsestPartition) {
  const auto b = detect_block_structure(load("two_block_model"));
  EXPECT_EQ(b.str(), "[[1,2],[3,4]]");
  EXPECT_EQ(detect_block_structure(load("quartic_cross")).count(), 3u);
  EXPECT_EQ(detect_block_structure(load("ball3")).count(), 1u);
  EXPECT_EQ(detect_block_structure(spec(3, "u1 + u2^2 + u3^2")).count(), 3u);
  EXPECT_EQ(detect_block_structure(spec(3, "u1 + u2^2 + 2*u2*u3 + u3^2")).count(), 2u);
}

TEST(Classify, QuarticCrossIsAModel) {
  const auto v = classify(load("quartic_cross"));
  ASSERT_EQ(v.kind, VerdictKind::model);
  const auto& mf = *v.model;
  EXPECT_EQ(mf.m, (std::vector<int>{2, 2}));
  EXPECT_EQ(mf.r, (std::vector<Rational>{1, 1}));
  ASSERT_EQ(mf.cross_terms.size(), 1u);
  EXPECT_EQ(mf.cross_terms.at(Exponent{1, 1}), -1);
  EXPECT_TRUE(mf.witness.is_identity());
  EXPECT_EQ(mf.blocks[0], std::vector<std::size_t>{0});
  for (std::size_t j = 2; j <= mf.block_count(); ++j) EXPECT_TRUE(verify_slice_form(load("quartic_cross"), mf, j));
}

TEST(Classify, Ball) {
  const auto v = classify(load("ball3"));
  EXPECT_EQ(v.kind, VerdictKind::ball);
  ASSERT_TRUE(v.model);
  EXPECT_TRUE(v.model->is_ball());
  const auto acc = accumulation_set(*v.model);
  EXPECT_EQ(acc.dimension, 5);
  EXPECT_EQ(acc.description, "{|z1|^2 + |z2|^2 + |z3|^2 = 1}");
}

TEST(Classify, NotModelReasons) {
  const auto cubic = classify(load("cubic"));
  EXPECT_EQ(cubic.kind, VerdictKind::not_model);
  EXPECT_NE(cubic.reason.find("weight"), std::string::npos);
  const auto fermat = classify(load("fermat"));
  EXPECT_EQ(fermat.kind, VerdictKind::not_model);
  EXPECT_NE(fermat.reason.find("positive linear"), std::string::npos);
  const auto neg = classify(spec(2, "u1 - u2^2 + 2*u2^4"));
  EXPECT_EQ(neg.kind, VerdictKind::not_model);
  RegularityReport smooth;
  smooth.sampled_points = 10;
  const auto with_reg = classify(load("cubic"), &smooth);
  EXPECT_NE(with_reg.reason.find("compact automorphism group"), std::string::npos);
}

TEST(Classify, Errors) {
  EXPECT_THROW(classify(load("twisted_disk")), DomainError);
  EXPECT_THROW(classify(load("product")), DomainError);
  EXPECT_THROW(classify(spec(2, "u1 + u2 + 1")), DomainError);
}

TEST(Classify, DeclaredBlocksThatDoNotFit) {
  const auto d = parse_spec("n = 3; Q = u1 + u2^2 + u3; blocks = [[1,2],[3]]");
  EXPECT_EQ(classify(d).kind, VerdictKind::unknown);
}

TEST(Classify, ConstantTermIsNormalised) {
  const auto v = classify(spec(2, "1/2 + 1/2*u1 + 1/2*u2^2"));
  ASSERT_EQ(v.kind, VerdictKind::model);
  EXPECT_EQ(v.model->constant_shift, Rational(1, 2));
  EXPECT_EQ(v.model->first_coefficients, std::vector<Rational>{1});
  EXPECT_EQ(v.model->r, std::vector<Rational>{1});
}

TEST(Classify, TwoBlockModelAndSlices) {
  const auto d = load("two_block_model");
  const auto v = classify(d);
  ASSERT_EQ(v.kind, VerdictKind::model);
  EXPECT_EQ(v.model->blocks.str(), "[[1,2],[3,4]]");
  EXPECT_EQ(v.model->m, std::vector<int>{2});
  EXPECT_TRUE(verify_slice_form(d, *v.model, 2));
  EXPECT_FALSE(verify_slice_form(d, *v.model, 3));
  EXPECT_EQ(accumulation_set(*v.model).dimension, 3);
}

TEST(Canonical, DilationWitnessIsExact) {
  const auto d = load("scaled_model");
  const auto cf = canonical_form(d);
  const auto z = cf.witness.z_scalars();
  EXPECT_EQ(z[0], Radical(Rational(1, 2)));
  EXPECT_EQ(z[1], Radical(Rational(1, 2)));
  ASSERT_TRUE(cf.spec);
  EXPECT_EQ(cf.spec->q(), parse_polynomial("u1 + u2^2", 2));
  EXPECT_EQ(cf.q_text, "u1 + u2^2");
}

TEST(Canonical, IrrationalCrossCoefficient) {
  const auto cf = canonical_form(spec(3, "u1 + 2*u2^2 + u3^2 - u2*u3"));
  ASSERT_EQ(cf.cross_terms.size(), 1u);
  EXPECT_EQ(cf.cross_terms.begin()->second, -Radical(Rational(1, 2)).pow(Rational(1, 2)));
  EXPECT_FALSE(cf.spec);
  EXPECT_NE(cf.q_text.find("(1/2)^(1/2)"), std::string::npos);
}

TEST(Canonical, WitnessMapsCanonicalToOriginal) {
  const std::vector<const char*> qs{"u1 + u2^2 + u3^2 - u2*u3", "4*u1 + 16*u2^2", "u1 + u2 + u3^2 + 2*u3*u4 + u4^2",
                                    "u1 + 2*u2^2 + u3^2 - u2*u3", "3*u2 + u1^3 + u3^2"};
  const std::vector<std::size_t> dims{3, 2, 4, 3, 3};
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(0.0, 0.3);
  for (std::size_t k = 0; k < qs.size(); ++k) {
    const auto d = spec(dims[k], qs[k]);
    const auto v = classify(d);
    ASSERT_TRUE(v.model) << qs[k];
    const auto cf = canonical_form(d, v);
    if (!cf.spec) continue;
    for (int t = 0; t < 50; ++t) {
      std::vector<double> up(dims[k]);
      for (auto& x : up) x = U(rng);
      EXPECT_NEAR(original_at_witness(d, cf.witness, up), cf.spec->q_at(up), 1e-12) << qs[k];
    }
  }
}

// Invariance: dilating and permuting the coordinates of a model does not
// change its canonical form.
TEST(CanonicalProperty, InvariantUnderDilationAndPermutation) {
  const auto base = parse_polynomial("u1 + u2^2 + u3^2 - u2*u3 + u4^3", 4);
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> num(1, 5);
  const auto ref = canonical_form(DomainSpec(4, base));
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::size_t> perm{0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Rational> s;
    for (int i = 0; i < 4; ++i) s.emplace_back(num(rng), num(rng));
    const auto q = base.substitute(MonomialMap::permutation(perm, s));
    const auto cf = canonical_form(DomainSpec(4, q));
    EXPECT_EQ(cf.m, ref.m);
    EXPECT_EQ(cf.cross_terms, ref.cross_terms) << q.str();
    EXPECT_EQ(cf.q_text, ref.q_text);
  }
}

TEST(CanonicalProperty, CanonicalSpecIsAFixedPoint) {
  for (const char* name : {"quartic_cross", "two_block_model", "scaled_model", "ball3"}) {
    const auto cf = canonical_form(load(name));
    ASSERT_TRUE(cf.spec) << name;
    const auto again = canonical_form(*cf.spec);
    EXPECT_TRUE(again.witness.is_identity()) << name;
    EXPECT_EQ(again.q_text, cf.q_text) << name;
  }
}
