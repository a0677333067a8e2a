#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "undistort/undistort.hpp"

namespace {

using namespace undistort;

const ExactAngle kSqrt2Minus1 = ExactAngle::symbol(Irrational::Sqrt2) - ExactAngle(Rational(1));

// h has lift nodes (0,0), (1/2,1/4); g = h^-1 R_{2/5} h.
Homeo conjugated_rotation() {
  const PLCircleMap h =
      PLCircleMap::from_lift_nodes({{Rational(0), Rational(0)}, {Rational(1, 2), Rational(1, 4)}});
  return compose(Homeo::pl(h.inverse()),
                 compose(Homeo::rigid_rotation(ExactAngle(Rational(2, 5))), Homeo::pl(h)));
}

TEST(Rotation, BValueExamples) {
  const Homeo id = Homeo::identity(Space::circle());
  for (int n = -5; n <= 5; ++n) EXPECT_EQ(b_value({0.25, 0.0}, id, n), 0.0);

  const double rho = std::sqrt(2.0) - 1.0;
  const Homeo r = Homeo::rigid_rotation(kSqrt2Minus1);
  for (int n = -5; n <= 5; ++n) EXPECT_NEAR(b_value({0.1, 0.0}, r, n), -n * rho, 1e-12);

  const Homeo shear = Homeo::torus_shear();
  for (int n = -10; n <= 10; ++n) {
    EXPECT_NEAR(b_value({0.0, 0.0}, shear, n), -static_cast<double>(std::abs(n)), 1e-12);
  }
}

TEST(Rotation, FixedPointsHaveZeroRotation) {
  const Homeo grad = Homeo::gradient_time_one();
  for (double u : {0.0, 0.5}) {
    const auto est = local_rotation_number({u, 0.0}, grad, 4096);
    EXPECT_EQ(est.rot, 0.0);
    EXPECT_EQ(est.verdict, BoundedVerdict::Bounded);
  }
  const Homeo shear = Homeo::torus_shear();
  for (double t : {0.0, 0.3, 0.75}) {
    const auto est = local_rotation_number({t, kInfinity}, shear, 100000);
    EXPECT_EQ(est.rot, 0.0);
    EXPECT_EQ(est.verdict, BoundedVerdict::Bounded);
    EXPECT_EQ(est.diagnostic.sup, 0.0);
  }
}

TEST(Rotation, IrrationalRotation) {
  const double rho = std::sqrt(2.0) - 1.0;
  const Homeo r = Homeo::rigid_rotation(kSqrt2Minus1);
  const auto est = local_rotation_number({0.3, 0.0}, r, 1'000'000);
  EXPECT_NEAR(est.r, -rho, 1e-12);
  EXPECT_LE(est.residual_band, 1e-9);
  EXPECT_NEAR(est.classical, rho, 1e-12);
  EXPECT_NEAR(est.rot, 1.0 - rho, 1e-12);
  EXPECT_EQ(est.verdict, BoundedVerdict::Bounded);
  EXPECT_LE(est.diagnostic.sup, 1e-12);
}

TEST(Rotation, ShearDiagnosticMatchesOracle) {
  const auto diag = boundedness_diagnostic({0.0, 0.0}, Homeo::torus_shear(), 20);
  EXPECT_NEAR(diag.sup, oracle::shear_g_sup(20), 1e-12);
  EXPECT_NEAR(diag.sup, 40.0, 1e-12);
  EXPECT_EQ(diag.verdict, BoundedVerdict::UnboundedSuspected);
  ASSERT_EQ(diag.running_sup.size(), 21u);
  for (std::size_t k = 0; k < diag.running_sup.size(); ++k) {
    EXPECT_NEAR(diag.running_sup[k], oracle::shear_g_sup(static_cast<std::int64_t>(k)), 1e-12);
  }
}

TEST(Rotation, ShearGTableMatchesClosedForm) {
  const auto table = g_table({0.0, 0.0}, Homeo::torus_shear(), 20);
  EXPECT_EQ(table.size(), 41u * 41u);
  for (const auto& [mn, value] : table) {
    EXPECT_NEAR(value, oracle::shear_g_origin(mn.first, mn.second), 1e-12);
  }
}

TEST(Rotation, RunningSupIsMonotone) {
  std::mt19937_64 rng(11);
  for (const Space& s : gen::all_spaces()) {
    for (int i = 0; i < 4; ++i) {
      const Homeo g = gen::random_family_member(rng, s);
      const auto diag = boundedness_diagnostic(s.random_point(rng), g, 16);
      for (std::size_t k = 1; k < diag.running_sup.size(); ++k) {
        EXPECT_GE(diag.running_sup[k], diag.running_sup[k - 1]);
      }
      EXPECT_EQ(diag.sup, diag.running_sup.back());
    }
  }
}

TEST(RotationProperty, CoboundaryResidualVanishes) {
  std::mt19937_64 rng(12);
  for (const Space& s : gen::all_spaces()) {
    for (int i = 0; i < 6; ++i) {
      const Homeo g = gen::random_family_member(rng, s);
      const auto diag = boundedness_diagnostic(s.random_point(rng), g, 16);
      EXPECT_LE(diag.coboundary_residual, 1e-9) << g.describe();
    }
  }
}

TEST(RotationProperty, CircleMapsHaveGBelowOne) {
  std::mt19937_64 rng(13);
  const Space s = Space::circle();
  for (int i = 0; i < 20; ++i) {
    const Homeo g = gen::random_family_member(rng, s);
    const auto diag = boundedness_diagnostic(s.random_point(rng), g, 32);
    EXPECT_LT(diag.sup, 1.0) << g.describe();
  }
}

TEST(RotationProperty, PowerScalesRotation) {
  std::mt19937_64 rng(14);
  for (const Space& s : {Space::circle(), Space::annulus()}) {
    for (int i = 0; i < 10; ++i) {
      const Homeo g = gen::random_family_member(rng, s);
      const BasePoint x = s.random_point(rng);
      const std::int64_t budget = g.closed_powers() ? 100000 : 4096;
      // |D_n - n rho| < 1 on the circle, so each estimate is within 2/N.
      const double tol = 4.0 / static_cast<double>(budget);
      const double base = local_rotation_number(x, g, budget).rot;
      for (int k = 2; k <= 4; ++k) {
        const double powered = local_rotation_number(x, g.power(k), budget).rot;
        EXPECT_LE(circular_gap(powered, k * base), k * tol) << g.describe() << " k=" << k;
      }
    }
  }
}

TEST(Rotation, ConjugatedRotationMatchesClassicalOracle) {
  const Homeo g = conjugated_rotation();
  const oracle::PLLift h{{0.0, 0.5}, {0.0, 0.25}};
  const oracle::PLLift hinv{{0.0, 0.25}, {0.0, 0.5}};
  const auto lift = [&](double x) { return hinv(h(x) + 0.4); };
  for (double x0 : {0.0, 0.2, 0.7}) {
    const double expected = oracle::classical_rotation(lift, x0, 10000);
    const auto est = local_rotation_number({x0, 0.0}, g, 10000);
    EXPECT_NEAR(est.classical, expected, 1e-3);
    EXPECT_NEAR(est.classical, 0.4, 1e-3);
  }
}

TEST(Rotation, SampledMapRunsForwardOnly) {
  const Homeo g = Homeo::sampled(Homeo::gradient_time_one(Rational(1, 2)), 512);
  const auto est = local_rotation_number({0.25, 0.0}, g, 2048);
  EXPECT_TRUE(est.diagnostic.forward_only);
  EXPECT_TRUE(std::isfinite(est.r));
  EXPECT_NEAR(est.rot, 0.0, 1e-2);
}

TEST(Rotation, VerdictNames) {
  EXPECT_EQ(to_string(BoundedVerdict::Bounded), "bounded");
  EXPECT_EQ(to_string(BoundedVerdict::UnboundedSuspected), "unbounded-suspected");
  EXPECT_EQ(to_string(BoundedVerdict::Inconclusive), "inconclusive");
}

}  // namespace
