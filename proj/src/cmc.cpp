#include "vpmcf/cmc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <sstream>

#include "vpmcf/bounds.hpp"
#include "vpmcf/errors.hpp"
#include "vpmcf/hypersurface.hpp"

namespace vpmcf {

namespace {

double max_residual(const ProfileGrid& profile, const AmbientSpace& space, double H) {
  const CurvatureField c = curvature_field(profile, space);
  double worst = 0.0;
  for (double Hi : c.H) worst = std::max(worst, std::fabs(Hi - H));
  return worst;
}

using State = std::array<double, 2>;  // (r, r')

// r'' from k1 + (n-1) k2 = H for a graph r(z).
State cmc_ode(const AmbientSpace& space, double H, const State& y) {
  const WarpValues w = space.warp(y[0]);
  const int n = space.dim();
  const double p = y[1];
  const double q = p * p + w.f * w.f;
  const double rdd = (p * p * w.df + q * (w.df + (n - 1) * w.f * w.dh / w.h - H * std::sqrt(q))) / w.f;
  return {p, rdd};
}

struct Trajectory {
  std::vector<double> radii;
  double end_slope;
};

std::optional<Trajectory> integrate(const AmbientSpace& space, double a, double b, double H, double r0,
                                    const ShootOptions& opts) {
  const int intervals = opts.m - 1;
  const double h = (b - a) / (static_cast<double>(intervals) * opts.substeps);
  State y{r0, 0.0};
  Trajectory out;
  out.radii.reserve(static_cast<std::size_t>(opts.m));
  out.radii.push_back(r0);
  try {
    for (int k = 0; k < intervals; ++k) {
      for (int s = 0; s < opts.substeps; ++s) {
        const State k1 = cmc_ode(space, H, y);
        const State k2 = cmc_ode(space, H, {y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
        const State k3 = cmc_ode(space, H, {y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
        const State k4 = cmc_ode(space, H, {y[0] + h * k3[0], y[1] + h * k3[1]});
        for (int j = 0; j < 2; ++j) y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        if (!std::isfinite(y[0]) || !std::isfinite(y[1]) || !(y[0] > 0.0)) return std::nullopt;
      }
      out.radii.push_back(y[0]);
    }
  } catch (const DomainError&) {
    return std::nullopt;
  }
  out.end_slope = y[1];
  return out;
}

}  // namespace

CMCProfile cylinder_for_volume(const AmbientSpace& space, double a, double b, double volume, int m) {
  if (!(volume > 0.0)) throw std::invalid_argument("cylinder_for_volume needs V > 0");
  if (!(b > a)) throw std::invalid_argument("cylinder_for_volume needs b > a");
  const double sigma = sphere_volume(space.dim());
  const double r1 = invert_increasing([&space](double r) { return beta(space, r); },
                                      volume / ((b - a) * sigma), space.r_max_domain());
  const WarpValues w = space.warp(r1);
  const double H = w.df / w.f + (space.dim() - 1) * w.dh / w.h;
  ProfileGrid profile = ProfileGrid::constant(a, b, m, r1);
  return CMCProfile{H, profile, 0.0, enclosed_volume(profile, space), "cylinder", 0};
}

CMCProfile shoot_cmc(const AmbientSpace& space, double a, double b, double H_target, double r_guess,
                     const ShootOptions& opts) {
  if (!std::isfinite(H_target)) throw std::invalid_argument("shoot_cmc needs a finite target");
  if (!(r_guess > 0.0) || !space.in_domain(r_guess)) throw DomainError("shoot_cmc guess outside the metric domain");
  if (opts.m < 3 || opts.substeps < 1) throw std::invalid_argument("shoot_cmc needs m >= 3 and substeps >= 1");

  auto shoot = [&](double r0) { return integrate(space, a, b, H_target, r0, opts); };

  double x0 = r_guess;
  auto t0 = shoot(x0);
  if (!t0) throw DomainError("shoot_cmc: trajectory from the initial guess leaves the domain");
  double x1 = r_guess * (1.0 + 1e-3);
  auto t1 = shoot(x1);
  if (!t1) {
    x1 = r_guess * (1.0 - 1e-3);
    t1 = shoot(x1);
    if (!t1) throw DomainError("shoot_cmc: no admissible trajectory near the guess");
  }

  int iter = 0;
  Trajectory* best = std::fabs(t1->end_slope) < std::fabs(t0->end_slope) ? &*t1 : &*t0;
  double best_x = best == &*t1 ? x1 : x0;
  while (std::fabs(best->end_slope) > opts.slope_tol) {
    if (++iter > opts.max_iterations) {
      std::ostringstream msg;
      msg << "shoot_cmc: no convergence after " << opts.max_iterations << " secant iterations (|r'(b)| = "
          << std::fabs(best->end_slope) << ")";
      throw NumericalError(msg.str());
    }
    const double g0 = t0->end_slope;
    const double g1 = t1->end_slope;
    if (g1 == g0) throw NumericalError("shoot_cmc: secant slope vanished");
    double x2 = x1 - g1 * (x1 - x0) / (g1 - g0);
    auto t2 = shoot(x2);
    for (int halvings = 0; !t2 && halvings < 40; ++halvings) {
      x2 = 0.5 * (x1 + x2);
      t2 = shoot(x2);
    }
    if (!t2) throw DomainError("shoot_cmc: secant update left the admissible region");
    x0 = x1;
    t0 = std::move(t1);
    x1 = x2;
    t1 = std::move(t2);
    best = &*t1;
    best_x = x1;
  }

  ProfileGrid profile(a, b, best->radii);
  double spread = 0.0;
  for (double r : best->radii) spread = std::max(spread, std::fabs(r - best_x));
  const std::string branch = spread <= 1e-8 * best_x ? "cylinder" : "unduloid";
  return CMCProfile{H_target, profile, max_residual(profile, space, H_target), enclosed_volume(profile, space),
                    branch, iter};
}

CmcDistance distance_to_cmc(const ProfileGrid& profile, const AmbientSpace& space) {
  const MeanCurvatureAverage avg = averaged_mean_curvature(profile, space);
  return {avg.Hbar, max_residual(profile, space, avg.Hbar)};
}

}  // namespace vpmcf
