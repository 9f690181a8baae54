#include "vpmcf/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "vpmcf/errors.hpp"
#include "vpmcf/quadrature.hpp"

namespace vpmcf {

double sphere_volume(int n) {
  const double half = 0.5 * n;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

namespace {

double ipow(double x, int k) {
  double result = 1.0;
  for (int i = 0; i < k; ++i) result *= x;
  return result;
}

void check_radius(const AmbientSpace& space, double r) {
  if (!(r >= 0.0)) throw DomainError("radial integrals need r >= 0");
  if (r > space.r_max_domain()) throw DomainError("radius beyond the metric domain");
}

}  // namespace

double beta_increment(const AmbientSpace& space, double lo, double hi, double rel_tol) {
  check_radius(space, lo);
  check_radius(space, hi);
  const int n = space.dim();
  auto integrand = [&space, n](double s) {
    const WarpValues w = space.warp(s);
    return w.f * ipow(w.h, n - 1);
  };
  return adaptive_simpson(integrand, lo, hi, rel_tol);
}

double beta(const AmbientSpace& space, double r, double rel_tol) {
  return beta_increment(space, 0.0, r, rel_tol);
}

double delta(const AmbientSpace& space, double r, double rel_tol) {
  check_radius(space, r);
  const int n = space.dim();
  auto integrand = [&space, n](double s) { return ipow(space.warp(s).h, n - 1); };
  return adaptive_simpson(integrand, 0.0, r, rel_tol);
}

double invert_increasing(const std::function<double(double)>& g, double y, double x_max) {
  const double g0 = g(0.0);
  if (y < g0) throw std::invalid_argument("invert_increasing: target below g(0)");
  if (y == g0) return 0.0;

  // The domain end itself may be singular, so stay strictly inside it.
  const double cap = std::isfinite(x_max) ? x_max * (1.0 - 1e-12) : x_max;
  double lo = 0.0;
  double hi = std::isfinite(cap) ? std::min(1.0, 0.5 * cap) : 1.0;
  while (g(hi) < y) {
    lo = hi;
    if (std::isfinite(cap)) {
      if (hi >= cap) {
        std::ostringstream msg;
        msg << "invert_increasing: target " << y << " not reached inside the domain";
        throw DomainError(msg.str());
      }
      hi = std::min(2.0 * hi, cap);
    } else {
      hi *= 2.0;
      if (!std::isfinite(hi)) throw DomainError("invert_increasing: bracket expansion overflowed");
    }
  }
  while (hi - lo > 1e-14 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) < y) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

BoundsReport compute_bounds(const AmbientSpace& space, double a, double b, double volume, double area) {
  if (!(volume > 0.0)) throw std::invalid_argument("compute_bounds needs V > 0");
  if (!(area > 0.0)) throw std::invalid_argument("compute_bounds needs a positive area");
  if (!(b > a)) throw std::invalid_argument("compute_bounds needs b > a");
  BoundsReport rep;
  rep.sigma = sphere_volume(space.dim());
  const double length = b - a;
  const double rmax = space.r_max_domain();
  auto beta_fn = [&space](double r) { return beta(space, r); };
  auto delta_fn = [&space](double r) { return delta(space, r); };

  rep.r1 = invert_increasing(beta_fn, volume / (length * rep.sigma), rmax);
  const double delta_r1 = delta(space, rep.r1);
  const double beta_r1 = beta(space, rep.r1);
  rep.r2 = invert_increasing(delta_fn, area / rep.sigma + delta_r1, rmax);
  rep.r3 = invert_increasing(beta_fn, volume / (2.0 * length * rep.sigma), rmax);
  rep.small_volume_threshold = (volume / length) * (delta_r1 / beta_r1);
  rep.criterion_met = area <= rep.small_volume_threshold;
  return rep;
}

double curve_length_bound(const AmbientSpace& space, double a, double b, double r2, int initial_critical_points) {
  return space.warp(r2).f * (b - a) + (initial_critical_points - 1) * r2;
}

}  // namespace vpmcf
