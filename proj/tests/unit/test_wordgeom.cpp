#include <cmath>
#include <cstdlib>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "undistort/undistort.hpp"

namespace {

using namespace undistort;

const ExactAngle kSqrt2Minus1 = ExactAngle::symbol(Irrational::Sqrt2) - ExactAngle(Rational(1));

// Two PL maps supported on [0,1/2] and [1/2,1]; they commute and generate Z^2.
GenSet disjoint_pl() {
  const Homeo p = Homeo::pl(PLCircleMap::from_lift_nodes({{Rational(0), Rational(0)},
                                                          {Rational(1, 4), Rational(1, 8)},
                                                          {Rational(1, 2), Rational(1, 2)}}));
  const Homeo q = Homeo::pl(PLCircleMap::from_lift_nodes({{Rational(0), Rational(0)},
                                                          {Rational(1, 2), Rational(1, 2)},
                                                          {Rational(3, 4), Rational(5, 8)}}));
  return GenSet({{"p", p}, {"q", q}});
}

Homeo half_twist() { return Homeo::annulus_twist(ExactAngle(Rational(0)), ExactAngle(Rational(1, 2))); }

TEST(GenSet, AppendsInverses) {
  const GenSet s({{"r", Homeo::rigid_rotation(ExactAngle(Rational(1, 3)))}});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.generators()[1].name, "r^-1");
  EXPECT_EQ(s.spell({}), "e");
  EXPECT_EQ(s.spell({0, 1, 0}), "r.r^-1.r");
  EXPECT_NEAR(s.c(), 0.0, 1e-12);

  // The half rotation is an involution.
  const GenSet inv({{"h", Homeo::rigid_rotation(ExactAngle(Rational(1, 2)))}});
  EXPECT_EQ(inv.size(), 1u);

  EXPECT_NEAR(GenSet({{"T", half_twist()}}).c(), 0.5, 1e-12);
  EXPECT_THROW(GenSet({{"g", Homeo::sampled(Homeo::gradient_time_one(), 64)}}),
               UnsupportedFlavorError);
}

TEST(Ball, CyclicGroupOfOrderThree) {
  const GenSet s({{"r", Homeo::rigid_rotation(ExactAngle(Rational(1, 3)))}});
  const BallResult b = ball(s, 5);
  for (std::int64_t r = 0; r <= 5; ++r) {
    EXPECT_EQ(b.ball_sizes[static_cast<std::size_t>(r)], oracle::cyclic_ball(3, r));
  }
  EXPECT_FALSE(b.truncated);
}

TEST(Ball, IrrationalRotationIsFree) {
  const GenSet s({{"r", Homeo::rigid_rotation(kSqrt2Minus1)}});
  const BallResult b = ball(s, 4);
  EXPECT_EQ(b.ball_sizes, (std::vector<std::size_t>{1, 3, 5, 7, 9}));
  EXPECT_EQ(b.sphere_sizes, (std::vector<std::size_t>{1, 2, 2, 2, 2}));
}

TEST(Ball, CommutingPLMapsGiveTaxicabBall) {
  const BallResult b = ball(disjoint_pl(), 3);
  for (std::int64_t r = 0; r <= 3; ++r) {
    EXPECT_EQ(b.ball_sizes[static_cast<std::size_t>(r)], oracle::taxicab_ball(r));
  }
  EXPECT_EQ(b.ball_sizes, (std::vector<std::size_t>{1, 5, 13, 25}));
}

TEST(Ball, WitnessesSpellTheirElements) {
  const GenSet s = disjoint_pl();
  const BallResult b = ball(s, 3);
  for (const BallNode& node : b.nodes) {
    ExactElement e = exact_identity(s.space().kind());
    for (std::uint32_t i : node.witness) e = exact_compose(e, s.generators()[i].element);
    EXPECT_EQ(canonical_key(e), node.key) << s.spell(node.witness);
    EXPECT_EQ(node.witness.size(), node.length);
  }
}

TEST(Ball, Truncation) {
  const GenSet s({{"r", Homeo::rigid_rotation(kSqrt2Minus1)}});
  const BallResult b = ball(s, 20, 10);
  EXPECT_TRUE(b.truncated);
  EXPECT_LE(b.nodes.size(), 10u);
  EXPECT_LT(b.radius, 20u);
  EXPECT_EQ(b.ball_sizes.size(), b.radius + 1u);
}

TEST(Ball, NodeCapFromEnvironment) {
  ::setenv("UNDISTORT_MAX_NODES", "123", 1);
  EXPECT_EQ(max_nodes_from_env(), 123u);
  ::setenv("UNDISTORT_MAX_NODES", "junk", 1);
  EXPECT_EQ(max_nodes_from_env(), kDefaultMaxNodes);
  ::unsetenv("UNDISTORT_MAX_NODES");
  EXPECT_EQ(max_nodes_from_env(), kDefaultMaxNodes);
}

TEST(BallProperty, Monotone) {
  const GenSet s = disjoint_pl();
  BallResult prev = ball(s, 0);
  for (std::uint32_t r = 1; r <= 4; ++r) {
    const BallResult next = ball(s, r);
    for (const BallNode& node : prev.nodes) {
      const auto idx = next.find(node.key);
      ASSERT_TRUE(idx.has_value());
      EXPECT_EQ(next.nodes[*idx].length, node.length);
      EXPECT_EQ(next.nodes[*idx].witness, node.witness);
    }
    prev = next;
  }
}

TEST(BallProperty, Subadditive) {
  const GenSet s = disjoint_pl();
  const BallResult small = ball(s, 2);
  const BallResult big = ball(s, 4);
  for (const BallNode& a : small.nodes) {
    for (const BallNode& b : small.nodes) {
      const auto idx = big.find(canonical_key(exact_compose(a.element, b.element)));
      ASSERT_TRUE(idx.has_value());
      EXPECT_LE(big.nodes[*idx].length, a.length + b.length);
    }
  }
}

TEST(BallProperty, SeminormBoundedByWordLength) {
  for (const GenSet& s : {disjoint_pl(), GenSet({{"T", half_twist()}}),
                          GenSet({{"a", Homeo::torus_twist(Rational(1, 2))},
                                  {"b", Homeo::torus_twist(Rational(1, 3))}})}) {
    const BallResult b = ball(s, 3);
    for (const BallNode& node : b.nodes) {
      const Homeo g = Homeo::from_exact(s.space(), node.element);
      EXPECT_LE(seminorm(g).value, s.c() * node.length + 1e-9) << s.spell(node.witness);
    }
  }
}

TEST(WordNorm, Examples) {
  const GenSet s = disjoint_pl();
  const Homeo p = s.generators()[0].map;
  const WordNorm one = word_norm(p, s, 3);
  ASSERT_TRUE(one.exact.has_value());
  EXPECT_EQ(*one.exact, 1u);

  const WordNorm zero = word_norm(Homeo::identity(s.space()), s, 3);
  EXPECT_EQ(*zero.exact, 0u);
  EXPECT_EQ(zero.lower_bound, 0.0);

  const Homeo far = p.power(5);
  const WordNorm miss = word_norm(far, s, 3);
  EXPECT_FALSE(miss.exact.has_value());
}

TEST(WordNorm, TwistPowersMatchSeminormBound) {
  const Homeo t = half_twist();
  const GenSet s({{"T", t}});
  for (int n = 1; n <= 6; ++n) {
    const WordNorm w = word_norm(t.power(n), s, 8);
    ASSERT_TRUE(w.exact.has_value());
    EXPECT_EQ(*w.exact, static_cast<std::uint32_t>(n));
    EXPECT_NEAR(w.lower_bound, n, 1e-9);
  }
}

TEST(WordNormProperty, PowerLowerBoundFromCertificate) {
  const Homeo t = half_twist();
  const GenSet s({{"T", t}});
  const Space a = Space::annulus();
  const Certificate c = certify_two_measures(Measure::circle(a, named_circle(a, "boundary:0")),
                                             Measure::circle(a, named_circle(a, "boundary:1")), t,
                                             s.c());
  ASSERT_EQ(c.verdict, Verdict::Undistorted);
  for (int n = 1; n <= 6; ++n) {
    const WordNorm w = word_norm(t.power(n), s, 8);
    EXPECT_GE(static_cast<double>(*w.exact), n * c.invariant / s.c() - 1e-9);
  }
}

TEST(Translation, IrrationalRotationGenerator) {
  const Homeo r = Homeo::rigid_rotation(kSqrt2Minus1);
  const GenSet s({{"r", r}});
  const TranslationLength tl = translation_length(r, s, 4, 8);
  ASSERT_TRUE(tl.upper.has_value());
  EXPECT_NEAR(*tl.upper, 1.0, 1e-12);
  EXPECT_NEAR(tl.lower(), 1.0, 1e-12);
}

TEST(Translation, TorsionElement) {
  const Homeo r = Homeo::rigid_rotation(ExactAngle(Rational(1, 3)));
  const TranslationLength tl = translation_length(r, GenSet({{"r", r}}), 6, 6);
  ASSERT_TRUE(tl.upper.has_value());
  EXPECT_EQ(*tl.upper, 0.0);
  EXPECT_EQ(tl.lower(), 0.0);
}

TEST(Translation, AnnulusTwistSandwich) {
  const Homeo t = half_twist();
  const GenSet s({{"T", t}});
  const Space a = Space::annulus();
  const Certificate c = certify_two_measures(Measure::circle(a, named_circle(a, "boundary:0")),
                                             Measure::circle(a, named_circle(a, "boundary:1")), t,
                                             s.c());
  const TranslationLength tl = translation_length(t, s, 6, 8, {c});
  EXPECT_NEAR(tl.certificate_lower, 1.0, 1e-9);
  EXPECT_NEAR(*tl.upper, 1.0, 1e-12);
  EXPECT_LE(tl.lower(), *tl.upper + 1e-9);
  EXPECT_EQ(tl.power_norms.size(), 6u);
}

TEST(Translation, DisjointPLGenerator) {
  const GenSet s = disjoint_pl();
  const TranslationLength tl = translation_length(s.generators()[0].map, s, 4, 6);
  ASSERT_TRUE(tl.upper.has_value());
  EXPECT_NEAR(*tl.upper, 1.0, 1e-12);
}

}  // namespace
