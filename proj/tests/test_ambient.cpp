#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "support.hpp"
#include "vpmcf/ambient.hpp"
#include "vpmcf/errors.hpp"

using namespace vpmcf;
using vpmcf::test::kPi;

TEST(MakePreset, EuclideanIsFlat) {
  const AmbientSpace e = make_preset(Preset::Euclidean, 0.0, 2);
  for (double r : {0.0, 0.3, 1.0, 17.0}) {
    const WarpValues w = e.warp(r);
    EXPECT_EQ(w.f, 1.0);
    EXPECT_EQ(w.h, r);
    EXPECT_EQ(w.dh, 1.0);
    EXPECT_EQ(w.df, 0.0);
  }
  EXPECT_TRUE(std::isinf(e.r_max_domain()));
}

TEST(MakePreset, HyperbolicWarpAtOne) {
  const AmbientSpace h = make_preset(Preset::Hyperbolic, -1.0, 2);
  const WarpValues w = h.warp(1.0);
  EXPECT_NEAR(w.f, 1.5430806, 1e-7);
  EXPECT_NEAR(w.h, 1.1752012, 1e-7);
  EXPECT_DOUBLE_EQ(w.f, std::cosh(1.0));
  EXPECT_DOUBLE_EQ(w.h, std::sinh(1.0));
}

TEST(MakePreset, HyperbolicScalesWithCurvature) {
  const double lambda = -4.0, k = 2.0, r = 0.4;
  const WarpValues w = make_preset(Preset::Hyperbolic, lambda, 3).warp(r);
  EXPECT_DOUBLE_EQ(w.f, std::cosh(k * r));
  EXPECT_DOUBLE_EQ(w.h, std::sinh(k * r) / k);
  EXPECT_DOUBLE_EQ(w.d2f, k * k * std::cosh(k * r));
  EXPECT_DOUBLE_EQ(w.d2h, k * std::sinh(k * r));
}

TEST(MakePreset, SphericalDomain) {
  EXPECT_DOUBLE_EQ(make_preset(Preset::Spherical, 1.0, 2).r_max_domain(), kPi / 2);
  EXPECT_DOUBLE_EQ(make_preset(Preset::Spherical, 4.0, 2).r_max_domain(), kPi / 4);
}

TEST(MakePreset, RejectsSignMismatchAndSmallDimension) {
  EXPECT_THROW(make_preset(Preset::Hyperbolic, 1.0, 2), std::invalid_argument);
  EXPECT_THROW(make_preset(Preset::Spherical, -1.0, 2), std::invalid_argument);
  EXPECT_THROW(make_preset(Preset::Hyperbolic, 0.0, 2), std::invalid_argument);
  EXPECT_THROW(make_preset(Preset::Euclidean, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(make_preset(Preset::Custom, 0.0, 2), std::invalid_argument);
}

TEST(Warp, OutsideDomainThrows) {
  const AmbientSpace s = AmbientSpace::spherical(1.0, 2);
  EXPECT_THROW(s.warp(-0.1), DomainError);
  EXPECT_THROW(s.warp(kPi / 2), DomainError);
  EXPECT_NO_THROW(s.warp(1.5));
}

TEST(SectionalCurvatures, EuclideanVanish) {
  const auto s = sectional_curvatures(AmbientSpace::euclidean(2), 1.7);
  EXPECT_EQ(s.rz, 0.0);
  EXPECT_EQ(s.ri, 0.0);
  EXPECT_EQ(s.zi, 0.0);
  EXPECT_EQ(s.ij, 0.0);
}

TEST(SectionalCurvatures, HyperbolicAtOne) {
  const auto s = sectional_curvatures(AmbientSpace::hyperbolic(-1.0, 2), 1.0);
  // -f''/f = -cosh/cosh, -h''/h = -sinh/sinh, -h'f'/(hf) = -cosh sinh/(sinh cosh), (1-cosh^2)/sinh^2
  EXPECT_NEAR(s.rz, -1.0, 1e-15);
  EXPECT_NEAR(s.ri, -1.0, 1e-15);
  EXPECT_NEAR(s.zi, -1.0, 1e-15);
  EXPECT_NEAR(s.ij, -1.0, 1e-14);
}

TEST(SectionalCurvatures, SphericalAtHalf) {
  const auto s = sectional_curvatures(AmbientSpace::spherical(1.0, 2), 0.5);
  EXPECT_NEAR(s.rz, 1.0, 1e-15);
  EXPECT_NEAR(s.ri, 1.0, 1e-15);
  EXPECT_NEAR(s.zi, 1.0, 1e-15);
  EXPECT_NEAR(s.ij, 1.0, 1e-14);
}

TEST(SectionalCurvatures, ConstantCurvaturePresetsEqualLambda) {
  for (double lambda : {-2.0, -1.0, -0.25, 0.25, 1.0, 3.0}) {
    const AmbientSpace s = lambda < 0 ? AmbientSpace::hyperbolic(lambda, 3) : AmbientSpace::spherical(lambda, 3);
    const double top = std::isinf(s.r_max_domain()) ? 3.0 : 0.98 * s.r_max_domain();
    for (int i = 1; i <= 50; ++i) {
      const auto k = sectional_curvatures(s, top * i / 50.0);
      EXPECT_NEAR(k.rz, lambda, 1e-12);
      EXPECT_NEAR(k.ri, lambda, 1e-12);
      EXPECT_NEAR(k.zi, lambda, 1e-12);
      EXPECT_NEAR(k.ij, lambda, 1e-12);
    }
  }
}

TEST(SectionalCurvatures, OutsideDomainThrows) {
  EXPECT_THROW(sectional_curvatures(AmbientSpace::euclidean(2), 0.0), DomainError);
  EXPECT_THROW(sectional_curvatures(AmbientSpace::spherical(1.0, 2), 2.0), DomainError);
}

TEST(WarpMonotonicity, HyperbolicAndEuclidean) {
  for (const AmbientSpace& s : {AmbientSpace::euclidean(2), AmbientSpace::hyperbolic(-1.0, 2),
                                AmbientSpace::hyperbolic(-0.3, 4)}) {
    WarpValues prev = s.warp(0.0);
    for (int i = 1; i <= 400; ++i) {
      const WarpValues w = s.warp(0.01 * i);
      EXPECT_GT(w.h, prev.h);
      EXPECT_GE(w.dh, prev.dh);
      if (s.preset() == Preset::Hyperbolic) {
        EXPECT_GT(w.f, prev.f);
        EXPECT_GE(w.f, 1.0);
      }
      prev = w;
    }
  }
}

TEST(ValidateSpace, EuclideanBranchB) {
  const ValidationReport r = validate_space(AmbientSpace::euclidean(2), 3.0, 100);
  EXPECT_TRUE(r.rss_ok);
  EXPECT_EQ(r.rss2_branch, Rss2Branch::Euclidean);
  EXPECT_EQ(to_string(r.rss2_branch), "b");
  EXPECT_TRUE(r.violations.empty());
}

TEST(ValidateSpace, HyperbolicBranchA) {
  const ValidationReport r = validate_space(AmbientSpace::hyperbolic(-1.0, 2), 3.0, 100);
  EXPECT_TRUE(r.rss_ok);
  EXPECT_EQ(r.rss2_branch, Rss2Branch::CurvatureSigns);
  EXPECT_EQ(to_string(r.rss2_branch), "a");
  EXPECT_NEAR(r.f0, 1.0, 1e-10);
  EXPECT_NEAR(r.df0, 0.0, 1e-10);
  EXPECT_NEAR(r.h0, 0.0, 1e-10);
  EXPECT_NEAR(r.dh0, 1.0, 1e-10);
}

TEST(ValidateSpace, SphericalHasNoRss2Branch) {
  const ValidationReport r = validate_space(AmbientSpace::spherical(1.0, 2), 1.5, 100);
  EXPECT_TRUE(r.rss_ok);
  EXPECT_EQ(r.rss2_branch, Rss2Branch::None);
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_LT(r.probe_radius, kPi / 2);
}

TEST(ValidateSpace, CustomCoshSinhMatchesHyperbolicPreset) {
  const AmbientSpace custom(2, [](double r) {
    return WarpValues{std::cosh(r), std::sinh(r), std::cosh(r), std::sinh(r), std::cosh(r), std::sinh(r)};
  });
  const AmbientSpace preset = AmbientSpace::hyperbolic(-1.0, 2);
  const ValidationReport a = validate_space(custom, 2.5, 60);
  const ValidationReport b = validate_space(preset, 2.5, 60);
  EXPECT_TRUE(a.rss_ok);
  EXPECT_EQ(a.rss2_branch, Rss2Branch::CurvatureSigns);
  EXPECT_EQ(a.rss2_branch, b.rss2_branch);
  for (int i = 1; i <= 60; ++i) {
    const double r = 2.5 * i / 60.0;
    const auto x = sectional_curvatures(custom, r), y = sectional_curvatures(preset, r);
    EXPECT_DOUBLE_EQ(x.rz, y.rz);
    EXPECT_DOUBLE_EQ(x.ri, y.ri);
    EXPECT_DOUBLE_EQ(x.zi, y.zi);
    EXPECT_NEAR(x.ij, y.ij, 1e-13);
  }
}

TEST(ValidateSpace, QuadraticHFailsAxisCondition) {
  const AmbientSpace bad(2, [](double r) { return WarpValues{1.0, 0.0, 0.0, r * r, 2 * r, 2.0}; });
  const ValidationReport r = validate_space(bad, 2.0, 50);
  EXPECT_FALSE(r.rss_ok);
  bool cited = false;
  for (const auto& v : r.violations) cited = cited || v.find("h'(0)=1") != std::string::npos;
  EXPECT_TRUE(cited);
}
