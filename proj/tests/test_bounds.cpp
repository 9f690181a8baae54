#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "support.hpp"
#include "vpmcf/bounds.hpp"
#include "vpmcf/errors.hpp"

using namespace vpmcf;
using vpmcf::test::kPi;

TEST(SphereVolume, LowDimensions) {
  EXPECT_NEAR(sphere_volume(2), 2 * kPi, 1e-14);
  EXPECT_NEAR(sphere_volume(3), 4 * kPi, 1e-14);
  EXPECT_NEAR(sphere_volume(4), 2 * kPi * kPi, 1e-13);
}

TEST(BetaDelta, ClosedForms) {
  const AmbientSpace e = AmbientSpace::euclidean(2), h = AmbientSpace::hyperbolic(-1.0, 2);
  for (double r : {0.1, 0.5, 1.0, 2.0, 3.5}) {
    EXPECT_NEAR(beta(e, r), r * r / 2, 1e-12 * r * r);
    EXPECT_NEAR(delta(e, r), r * r / 2, 1e-12 * r * r);
    EXPECT_NEAR(beta(h, r), std::sinh(r) * std::sinh(r) / 2, 1e-12 * std::sinh(r) * std::sinh(r));
    EXPECT_NEAR(delta(h, r), std::cosh(r) - 1, 1e-12 * (std::cosh(r) - 1));
  }
  EXPECT_NEAR(beta(AmbientSpace::euclidean(3), 2.0), 8.0 / 3, 1e-12);
  EXPECT_EQ(beta(e, 0.0), 0.0);
  EXPECT_EQ(delta(h, 0.0), 0.0);
}

TEST(BetaDelta, BeyondDomainThrows) {
  EXPECT_THROW(beta(AmbientSpace::spherical(1.0, 2), 2.0), DomainError);
  EXPECT_THROW(delta(AmbientSpace::euclidean(2), -1.0), DomainError);
}

TEST(BetaIncrement, MatchesDifferenceAndIsAntisymmetric) {
  const AmbientSpace h = AmbientSpace::hyperbolic(-1.0, 3);
  EXPECT_NEAR(beta_increment(h, 0.4, 1.1), beta(h, 1.1) - beta(h, 0.4), 1e-13);
  EXPECT_NEAR(beta_increment(h, 1.1, 0.4), -beta_increment(h, 0.4, 1.1), 1e-15);
  EXPECT_EQ(beta_increment(h, 0.7, 0.7), 0.0);
}

TEST(InvertIncreasing, Examples) {
  const AmbientSpace e = AmbientSpace::euclidean(2), h = AmbientSpace::hyperbolic(-1.0, 2);
  EXPECT_NEAR(invert_increasing([&](double r) { return beta(e, r); }, 0.5), 1.0, 1e-12);
  EXPECT_EQ(invert_increasing([&](double r) { return beta(e, r); }, 0.0), 0.0);
  EXPECT_NEAR(invert_increasing([&](double r) { return delta(h, r); }, std::cosh(2.0) - 1), 2.0, 1e-10);
  auto cube = [](double x) { return x * x * x + 1.0; };
  EXPECT_EQ(invert_increasing(cube, 1.0), 0.0);
  EXPECT_THROW(invert_increasing(cube, 0.5), std::invalid_argument);
}

TEST(InvertIncreasing, UnreachableInSphericalCap) {
  const AmbientSpace s = AmbientSpace::spherical(1.0, 2);
  const double cap = beta(s, 0.999 * kPi / 2);
  EXPECT_THROW(invert_increasing([&](double r) { return beta(s, r); }, 2 * cap, s.r_max_domain()), DomainError);
}

TEST(InvertIncreasing, RoundTripRandom) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> y_dist(1e-4, 50.0);
  for (const AmbientSpace& s : {AmbientSpace::euclidean(2), AmbientSpace::hyperbolic(-1.0, 2), AmbientSpace::euclidean(4)}) {
    auto g = [&](double r) { return beta(s, r); };
    for (int i = 0; i < 100; ++i) {
      const double y = y_dist(rng);
      EXPECT_NEAR(g(invert_increasing(g, y)), y, 1e-10 * std::max(1.0, y));
    }
  }
}

TEST(ComputeBounds, EuclideanUnitVolume) {
  const BoundsReport b = compute_bounds(AmbientSpace::euclidean(2), 0, 1, kPi, 2 * kPi);
  EXPECT_NEAR(b.r1, 1.0, 1e-12);
  EXPECT_NEAR(b.small_volume_threshold, kPi, 1e-12);
  // delta(r2) = area / sigma + delta(r1) = 1 + 1/2
  EXPECT_NEAR(b.r2, std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(b.r3, std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(b.sigma, 2 * kPi, 1e-14);
  // the unit cylinder has area 2 pi, above the threshold pi
  EXPECT_FALSE(b.criterion_met);
  EXPECT_TRUE(compute_bounds(AmbientSpace::euclidean(2), 0, 1, kPi, 0.9 * kPi).criterion_met);
}

TEST(ComputeBounds, HyperbolicUnitSlabValue) {
  const BoundsReport b = compute_bounds(AmbientSpace::hyperbolic(-1.0, 2), 0, 1, kPi, 1.0);
  EXPECT_NEAR(b.small_volume_threshold, 2 * kPi * (std::sqrt(2.0) - 1), 1e-10);
}

TEST(ComputeBounds, ClosedFormThresholdGrid) {
  for (double lambda : {-0.5, -1.0, -2.0}) {
    for (double V : {0.1, 1.0, 10.0}) {
      const double a = 0.0, b = 1.5;
      const BoundsReport r = compute_bounds(AmbientSpace::hyperbolic(lambda, 2), a, b, V, 1.0);
      const double closed = 2 * kPi / (-lambda) * (-1 + std::sqrt(1 - lambda * V / (kPi * (b - a))));
      EXPECT_NEAR(r.small_volume_threshold, closed, 1e-10) << "lambda=" << lambda << " V=" << V;
      EXPECT_LE(r.small_volume_threshold, V / (b - a));
    }
  }
}

TEST(ComputeBounds, FlatThresholdIsVolumeOverLength) {
  for (int n : {2, 3, 4}) {
    for (double V : {0.3, 2.0, 40.0}) {
      const BoundsReport r = compute_bounds(AmbientSpace::euclidean(n), -1.0, 2.0, V, 1.0);
      EXPECT_NEAR(r.small_volume_threshold, V / 3.0, 1e-12 * V);
    }
  }
}

TEST(ComputeBounds, RadiiOrdered) {
  for (const AmbientSpace& s : {AmbientSpace::euclidean(2), AmbientSpace::hyperbolic(-1.0, 2),
                                AmbientSpace::hyperbolic(-2.0, 3), AmbientSpace::euclidean(3)}) {
    for (double V : {0.05, 1.0, 20.0}) {
      for (double area : {0.01, 1.0, 50.0}) {
        const BoundsReport r = compute_bounds(s, 0, 2, V, area);
        EXPECT_GT(r.r3, 0.0);
        EXPECT_LT(r.r3, r.r1);
        EXPECT_LT(r.r1, r.r2);
      }
    }
  }
}

TEST(CurveLengthBound, Formula) {
  const AmbientSpace h = AmbientSpace::hyperbolic(-1.0, 2);
  EXPECT_NEAR(curve_length_bound(h, 0, 2, 1.5, 3), std::cosh(1.5) * 2 + 2 * 1.5, 1e-13);
  EXPECT_NEAR(curve_length_bound(AmbientSpace::euclidean(2), 0, 1, 1.4, 2), 1.0 + 1.4, 1e-15);
}
