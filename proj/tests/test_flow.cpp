#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"
#include "vpmcf/bounds.hpp"
#include "vpmcf/flow.hpp"

using namespace vpmcf;
using vpmcf::test::kPi;

namespace {

ProfileGrid bump(int m, double base = 1.0, double amp = 0.1) {
  return ProfileGrid::sample(0, 1, m, [=](double z) { return base + amp * std::cos(kPi * z); });
}

double max_abs_diff(const ProfileGrid& p, const ProfileGrid& q) {
  double d = 0;
  for (std::size_t i = 0; i < p.size(); ++i) d = std::max(d, std::fabs(p.r(i) - q.r(i)));
  return d;
}

}  // namespace

TEST(Rhs, EuclideanCylinderEquilibrium) {
  for (double v : rhs(ProfileGrid::constant(0, 1, 21, 2.0), AmbientSpace::euclidean(2), 0.5)) EXPECT_EQ(v, 0.0);
}

TEST(Rhs, EuclideanCylinderExcessHbar) {
  for (double v : rhs(ProfileGrid::constant(0, 1, 21, 2.0), AmbientSpace::euclidean(2), 0.6)) EXPECT_NEAR(v, 0.1, 1e-15);
}

TEST(Rhs, CylinderEquilibriumInCurvedSpaces) {
  const double rc = 0.7;
  for (int n : {2, 3}) {
    const AmbientSpace h = AmbientSpace::hyperbolic(-1.0, n);
    const WarpValues w = h.warp(rc);
    const double H = w.df / w.f + (n - 1) * w.dh / w.h;
    for (double v : rhs(ProfileGrid::constant(0, 1, 21, rc), h, H)) EXPECT_NEAR(v, 0.0, 1e-14);
  }
}

TEST(Rhs, MatchesNormalSpeedForm) {
  // rhs = (Hbar - H) sqrt(r'^2 + f^2) / f
  const AmbientSpace h = AmbientSpace::hyperbolic(-1.0, 2);
  const ProfileGrid p = bump(81, 0.8, 0.2);
  const NodalGeometry g = nodal_geometry(p, h);
  const std::vector<double> v = rhs(p, h, 1.7);
  for (std::size_t i = 0; i < p.size(); ++i)
    EXPECT_NEAR(v[i], (1.7 - g.curvature.H[i]) * g.speed[i] / g.warp[i].f, 1e-12);
}

TEST(Step, CylinderUnchanged) {
  const AmbientSpace e = AmbientSpace::euclidean(2);
  const ProfileGrid p = ProfileGrid::constant(0, 1, 51, 1.3);
  FlowConfig cfg;
  cfg = resolve_defaults(cfg, p, e);
  const StepOutcome out = step(initial_state(p, e), e, cfg);
  ASSERT_FALSE(out.stop);
  EXPECT_LE(max_abs_diff(out.state.profile, p), 1e-14);
  EXPECT_GT(out.state.t, 0.0);
  EXPECT_EQ(out.state.step, 1);
}

TEST(Step, TimeStepFollowsDiffusionBound) {
  const AmbientSpace h = AmbientSpace::hyperbolic(-1.0, 2);
  const ProfileGrid p = bump(41, 0.5, 0.1);
  const FlowState s = initial_state(p, h);
  FlowConfig cfg = resolve_defaults(FlowConfig{}, p, h);
  double qmin = INFINITY;
  for (double s2 : s.geometry.speed) qmin = std::min(qmin, s2 * s2);
  const StepOutcome out = step(s, h, cfg);
  EXPECT_NEAR(out.state.t, 0.4 * p.dz() * p.dz() * qmin / 2, 1e-18);
}

TEST(Step, ProjectionHoldsVolumePerStep) {
  const AmbientSpace e = AmbientSpace::euclidean(2);
  const ProfileGrid p = bump(101);
  FlowConfig cfg = resolve_defaults(FlowConfig{}, p, e);
  FlowState s = initial_state(p, e);
  const double V0 = enclosed_volume(p, e);
  for (int k = 0; k < 300; ++k) {
    const double before = s.cached.V;
    StepOutcome out = step(s, e, cfg);
    ASSERT_FALSE(out.stop);
    s = std::move(out.state);
    EXPECT_LE(std::fabs(s.cached.V - before) / before, 1e-12);
  }
  const double fresh = enclosed_volume(s.profile, e);
  EXPECT_LE(std::fabs(s.cached.V - fresh) / fresh, 1e-14);
  EXPECT_LE(std::fabs(fresh - V0) / V0, 1e-12);
}

TEST(Step, CachedVolumeTracksFreshVolumeInHyperbolicSpace) {
  const AmbientSpace h = AmbientSpace::hyperbolic(-1.0, 3);
  const ProfileGrid p = bump(61, 0.9, 0.15);
  FlowConfig cfg = resolve_defaults(FlowConfig{}, p, h);
  cfg.volume_projection = false;
  FlowState s = initial_state(p, h);
  for (int k = 0; k < 500; ++k) s = step(s, h, cfg).state;
  const double fresh = enclosed_volume(s.profile, h);
  EXPECT_LE(std::fabs(s.cached.V - fresh) / fresh, 1e-14);
}

TEST(Run, DriftWithoutProjectionOverUnitTime) {
  const AmbientSpace e = AmbientSpace::euclidean(2);
  FlowConfig cfg;
  cfg.volume_projection = false;
  cfg.max_t = 1.0;
  cfg.conv_tol = 1e-300;
  cfg.record_every = 10000;
  const RunResult res = run(bump(201), e, cfg);
  EXPECT_EQ(res.reason.tag, StopTag::MaxTime);
  const double V0 = res.history.front().V, V1 = res.history.back().V;
  EXPECT_LE(std::fabs(V1 - V0) / V0 / res.final_state.t, 1e-3);
}

TEST(Run, PerturbedCylinderConvergesToVolumeRadius) {
  const AmbientSpace e = AmbientSpace::euclidean(2);
  const ProfileGrid p = bump(101);
  FlowConfig cfg;
  cfg.record_every = 50;
  const RunResult res = run(p, e, cfg);
  ASSERT_EQ(res.reason.tag, StopTag::Converged) << res.reason.detail;
  const BoundsReport b = compute_bounds(e, 0, 1, enclosed_volume(p, e), lateral_area(p, e));
  // V = pi (1 + 0.1^2 / 2) on the grid to rounding, so r1 = sqrt(1.005)
  EXPECT_NEAR(b.r1, std::sqrt(1.005), 1e-12);
  for (double r : res.final_state.profile.radii()) EXPECT_NEAR(r, b.r1, 1e-4);
  EXPECT_LT(res.final_state.cmc_deviation, *res.config.conv_tol);

  AuditContext ctx;
  ctx.bounds = b;
  ctx.initial_critical_points = res.history.front().N;
  ctx.rss2 = true;
  for (const InvariantCheck& c : audit_history(res.history, e, ctx)) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(Run, DumbbellPinchesAtTheNeck) {
  const AmbientSpace e = AmbientSpace::euclidean(2);
  const ProfileGrid p = ProfileGrid::sample(0, 1, 101, [](double z) { return 0.5 + 0.47 * std::cos(2 * kPi * z); });
  const RunResult res = run(p, e, FlowConfig{});
  ASSERT_EQ(res.reason.tag, StopTag::Singularity);
  ASSERT_TRUE(res.reason.location);
  EXPECT_NEAR(*res.reason.location, 0.5, 2 * p.dz());
  EXPECT_EQ(res.history.front().N, 3);
}

TEST(Run, CylinderConvergesImmediately) {
  const RunResult res = run(ProfileGrid::constant(0, 1, 51, 0.8), AmbientSpace::hyperbolic(-1.0, 2), FlowConfig{});
  EXPECT_EQ(res.reason.tag, StopTag::Converged);
  EXPECT_EQ(res.steps, 0);
  EXPECT_EQ(res.final_state.t, 0.0);
  EXPECT_EQ(res.history.size(), 1u);
}

TEST(Run, StopsAtMaxTime) {
  FlowConfig cfg;
  cfg.max_t = 1e-3;
  cfg.record_every = 7;
  const RunResult res = run(bump(41), AmbientSpace::euclidean(2), cfg);
  EXPECT_EQ(res.reason.tag, StopTag::MaxTime);
  EXPECT_GE(res.final_state.t, 1e-3);
  EXPECT_EQ(res.history.front().t, 0.0);
  EXPECT_EQ(res.history.back().t, res.final_state.t);
  for (std::size_t k = 1; k + 1 < res.history.size(); ++k) EXPECT_GT(res.history[k].t, res.history[k - 1].t);
}

TEST(Run, StopsOnGraphFailureThreshold) {
  FlowConfig cfg;
  cfg.v_max_stop = 1.01;
  const RunResult res = run(bump(41, 1.0, 0.2), AmbientSpace::euclidean(2), cfg);
  EXPECT_EQ(res.reason.tag, StopTag::GraphFailure);
  EXPECT_TRUE(res.reason.location);
}

TEST(Run, SphericalCapEdgeIsInstability) {
  const AmbientSpace s = AmbientSpace::spherical(1.0, 2);
  const ProfileGrid p = ProfileGrid::sample(0, 1, 41, [](double z) { return 1.56 + 0.005 * std::cos(kPi * z); });
  const RunResult res = run(p, s, FlowConfig{});
  EXPECT_EQ(res.reason.tag, StopTag::Instability);
}

TEST(Run, DefaultsAreResolvedFromInitialProfile) {
  const AmbientSpace e = AmbientSpace::euclidean(2);
  const ProfileGrid p = bump(41);
  const FlowConfig cfg = resolve_defaults(FlowConfig{}, p, e);
  EXPECT_NEAR(*cfg.r_min_stop, 1e-3 * 0.9, 1e-15);
  EXPECT_NEAR(*cfg.conv_tol, 1e-6 * averaged_mean_curvature(p, e).Hbar, 1e-18);
  FlowConfig fixed;
  fixed.conv_tol = 0.5;
  EXPECT_EQ(*resolve_defaults(fixed, p, e).conv_tol, 0.5);
}

TEST(Run, SnapshotsFollowConfiguredStride) {
  FlowConfig cfg;
  cfg.max_t = 1e-2;
  cfg.snapshot_every = 25;
  const RunResult res = run(bump(41), AmbientSpace::euclidean(2), cfg);
  ASSERT_GE(res.snapshots.size(), 3u);
  EXPECT_EQ(res.snapshots.front().step, 0);
  EXPECT_EQ(res.snapshots[1].step, 25);
  EXPECT_EQ(res.snapshots.back().step, res.final_state.step);
}

TEST(Audit, FlagsViolations) {
  const AmbientSpace e = AmbientSpace::euclidean(2);
  std::vector<DiagnosticsRecord> h(3);
  for (int k = 0; k < 3; ++k) {
    h[k].t = k;
    h[k].V = kPi;
    h[k].area = 6.0 - k;
    h[k].Hbar = 1.0;
    h[k].I1 = 0.1;
    h[k].I2 = 0.9;
    h[k].min_r = 0.9;
    h[k].max_r = 1.1;
    h[k].max_v = 1.01;
    h[k].N = 2;
    h[k].curve_len = 1.01;
  }
  AuditContext ctx;
  ctx.bounds = compute_bounds(e, 0, 1, kPi, 6.0);
  ctx.rss2 = true;
  for (const auto& c : audit_history(h, e, ctx)) EXPECT_TRUE(c.passed) << c.name;

  h[2].area = 7.0;  // area increase
  h[2].N = 3;       // more critical points
  h[2].V = kPi * (1 + 1e-6);
  int failed = 0;
  for (const auto& c : audit_history(h, e, ctx)) failed += c.passed ? 0 : 1;
  EXPECT_EQ(failed, 3);
}
