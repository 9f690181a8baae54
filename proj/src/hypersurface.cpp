#include "vpmcf/hypersurface.hpp"

#include <algorithm>
#include <cmath>

#include "vpmcf/bounds.hpp"
#include "vpmcf/quadrature.hpp"

namespace vpmcf {

namespace {

double ipow(double x, int k) {
  double result = 1.0;
  for (int i = 0; i < k; ++i) result *= x;
  return result;
}

}  // namespace

SpatialDerivatives spatial_derivatives(const ProfileGrid& profile) {
  const std::size_t m = profile.size();
  const double dz = profile.dz();
  const double inv_2dz = 1.0 / (2.0 * dz);
  const double inv_dz2 = 1.0 / (dz * dz);
  auto r = profile.radii();
  SpatialDerivatives d{std::vector<double>(m), std::vector<double>(m)};
  d.slope[0] = 0.0;
  d.curvature[0] = 2.0 * (r[1] - r[0]) * inv_dz2;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    d.slope[i] = (r[i + 1] - r[i - 1]) * inv_2dz;
    d.curvature[i] = (r[i + 1] - 2.0 * r[i] + r[i - 1]) * inv_dz2;
  }
  d.slope[m - 1] = 0.0;
  d.curvature[m - 1] = 2.0 * (r[m - 2] - r[m - 1]) * inv_dz2;
  return d;
}

NodalGeometry nodal_geometry(const ProfileGrid& profile, const AmbientSpace& space) {
  const std::size_t m = profile.size();
  const int n = space.dim();
  const double sigma = sphere_volume(n);
  NodalGeometry g;
  g.derivatives = spatial_derivatives(profile);
  g.warp.resize(m);
  g.speed.resize(m);
  g.area_density.resize(m);
  CurvatureField& c = g.curvature;
  c.k1.resize(m);
  c.k2.resize(m);
  c.H.resize(m);
  c.v.resize(m);
  c.L2.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const WarpValues w = space.warp(profile.r(i));
    g.warp[i] = w;
    const double rd = g.derivatives.slope[i];
    const double rdd = g.derivatives.curvature[i];
    const double q = rd * rd + w.f * w.f;
    const double s = std::sqrt(q);
    g.speed[i] = s;
    g.area_density[i] = sigma * s * ipow(w.h, n - 1);
    c.k1[i] = ((-rdd * w.f + rd * rd * w.df) / q + w.df) / s;
    c.k2[i] = w.f * w.dh / (w.h * s);
    c.H[i] = c.k1[i] + (n - 1) * c.k2[i];
    c.v[i] = s / w.f;
    c.L2[i] = c.k1[i] * c.k1[i] + (n - 1) * c.k2[i] * c.k2[i];
  }
  return g;
}

CurvatureField curvature_field(const ProfileGrid& profile, const AmbientSpace& space) {
  return nodal_geometry(profile, space).curvature;
}

double enclosed_volume(const ProfileGrid& profile, const AmbientSpace& space) {
  std::vector<double> b(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) b[i] = beta(space, profile.r(i), 1e-10);
  return sphere_volume(space.dim()) * trapezoid(b, profile.dz());
}

double lateral_area(const ProfileGrid& profile, const AmbientSpace& space) {
  const auto slope = spatial_derivatives(profile).slope;
  const int n = space.dim();
  std::vector<double> density(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const WarpValues w = space.warp(profile.r(i));
    density[i] = std::sqrt(slope[i] * slope[i] + w.f * w.f) * ipow(w.h, n - 1);
  }
  return sphere_volume(n) * trapezoid(density, profile.dz());
}

MeanCurvatureAverage averaged_mean_curvature(const ProfileGrid& profile, const AmbientSpace& space) {
  const NodalGeometry g = nodal_geometry(profile, space);
  const std::size_t m = profile.size();
  const int n = space.dim();
  const double dz = profile.dz();
  const double sigma = sphere_volume(n);

  std::vector<double> weighted_H(m), meridian(m), rotational(m);
  for (std::size_t i = 0; i < m; ++i) {
    const WarpValues& w = g.warp[i];
    const double rd = g.derivatives.slope[i];
    const double h_pow = ipow(w.h, n - 2);
    weighted_H[i] = g.curvature.H[i] * g.area_density[i];
    // arctan(r'/f) (h^{n-1})' r'
    meridian[i] = std::atan(rd / w.f) * (n - 1) * h_pow * w.dh * rd;
    rotational[i] = ((n - 1) * w.dh * w.f + w.df * w.h) * h_pow;
  }
  const double area = trapezoid(g.area_density, dz);
  return {trapezoid(weighted_H, dz) / area, sigma * trapezoid(meridian, dz) / area,
          sigma * trapezoid(rotational, dz) / area};
}

double curve_length(const ProfileGrid& profile, const AmbientSpace& space) {
  const auto slope = spatial_derivatives(profile).slope;
  std::vector<double> speed(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double f = space.warp(profile.r(i)).f;
    speed[i] = std::sqrt(slope[i] * slope[i] + f * f);
  }
  return trapezoid(speed, profile.dz());
}

int critical_point_count(const ProfileGrid& profile, double slope_tol) {
  const auto slope = spatial_derivatives(profile).slope;
  const std::size_t m = slope.size();
  if (slope_tol < 0.0) {
    double max_abs = 0.0;
    for (double s : slope) max_abs = std::max(max_abs, std::fabs(s));
    slope_tol = 1e-9 * max_abs;
  }
  auto sign = [&](std::size_t i) {
    if (std::fabs(slope[i]) < slope_tol || slope[i] == 0.0) return 0;
    return slope[i] > 0.0 ? 1 : -1;
  };

  int count = 2;
  std::size_t i = 1;
  const std::size_t last = m - 1;  // exclusive bound on interior nodes
  while (i < last && sign(i) == 0) ++i;  // zeros touching z = a merge with that end
  if (i >= last) return count;
  int previous = sign(i);
  for (++i; i < last; ++i) {
    const int s = sign(i);
    if (s == 0) {
      std::size_t j = i;
      while (j < last && sign(j) == 0) ++j;
      if (j >= last) break;  // zeros touching z = b merge with that end
      ++count;
      previous = sign(j);
      i = j;
    } else if (s != previous) {
      ++count;
      previous = s;
    }
  }
  return count;
}

}  // namespace vpmcf
