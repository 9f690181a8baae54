#include "vpmcf/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <sstream>

#include "vpmcf/errors.hpp"
#include "vpmcf/quadrature.hpp"

namespace vpmcf {

std::string to_string(StopTag tag) {
  switch (tag) {
    case StopTag::Converged: return "converged";
    case StopTag::Singularity: return "singularity";
    case StopTag::GraphFailure: return "graph_failure";
    case StopTag::MaxTime: return "max_time";
    case StopTag::Instability: return "instability";
  }
  return "instability";
}

namespace {

constexpr double kBetaTol = 1e-10;

double ipow(double x, int k) {
  double result = 1.0;
  for (int i = 0; i < k; ++i) result *= x;
  return result;
}

// Neumaier two-sum into (sum, carry).
void accumulate(double& sum, double& carry, double x) {
  const double t = sum + x;
  if (std::fabs(sum) >= std::fabs(x)) carry += (sum - t) + x;
  else carry += (x - t) + sum;
  sum = t;
}

double volume_from_cache(const std::vector<double>& beta_nodes, const std::vector<double>& carry,
                         double dz, int n) {
  std::vector<double> b(beta_nodes.size());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = beta_nodes[i] + carry[i];
  return sphere_volume(n) * trapezoid(b, dz);
}

double averaged_H(const NodalGeometry& g, double dz) {
  std::vector<double> weighted(g.area_density.size());
  for (std::size_t i = 0; i < weighted.size(); ++i) weighted[i] = g.curvature.H[i] * g.area_density[i];
  return trapezoid(weighted, dz) / trapezoid(g.area_density, dz);
}

std::vector<double> rhs_from_geometry(const NodalGeometry& g, int n, double Hbar) {
  const std::size_t m = g.warp.size();
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    const WarpValues& w = g.warp[i];
    const double rd = g.derivatives.slope[i];
    const double rdd = g.derivatives.curvature[i];
    const double q = rd * rd + w.f * w.f;
    out[i] = rdd / q - (w.df / w.f) * (1.0 + rd * rd / q) - (n - 1) * w.dh / w.h +
             Hbar * std::sqrt(1.0 + rd * rd / (w.f * w.f));
  }
  return out;
}

std::size_t argmin(std::span<const double> r) {
  return static_cast<std::size_t>(std::min_element(r.begin(), r.end()) - r.begin());
}

// Fills geometry, diagnostics and the CMC deviation of `s` from its profile and beta cache.
void refresh(FlowState& s, const AmbientSpace& space) {
  const int n = space.dim();
  const double dz = s.profile.dz();
  const double sigma = sphere_volume(n);
  s.geometry = nodal_geometry(s.profile, space);
  const NodalGeometry& g = s.geometry;
  const std::size_t m = s.profile.size();

  DiagnosticsRecord& d = s.cached;
  d.t = s.t;
  d.V = volume_from_cache(s.beta_nodes, s.beta_carry, dz, n);
  d.area = trapezoid(g.area_density, dz);
  d.Hbar = averaged_H(g, dz);

  std::vector<double> meridian(m), rotational(m);
  for (std::size_t i = 0; i < m; ++i) {
    const WarpValues& w = g.warp[i];
    const double rd = g.derivatives.slope[i];
    const double h_pow = ipow(w.h, n - 2);
    meridian[i] = std::atan(rd / w.f) * (n - 1) * h_pow * w.dh * rd;
    rotational[i] = ((n - 1) * w.dh * w.f + w.df * w.h) * h_pow;
  }
  d.I1 = sigma * trapezoid(meridian, dz) / d.area;
  d.I2 = sigma * trapezoid(rotational, dz) / d.area;

  auto r = s.profile.radii();
  auto [lo, hi] = std::minmax_element(r.begin(), r.end());
  d.min_r = *lo;
  d.max_r = *hi;
  d.max_v = *std::max_element(g.curvature.v.begin(), g.curvature.v.end());
  d.N = critical_point_count(s.profile, s.slope_tol);
  d.curve_len = trapezoid(g.speed, dz);
  d.max_L2 = *std::max_element(g.curvature.L2.begin(), g.curvature.L2.end());

  s.cmc_deviation = 0.0;
  for (double H : g.curvature.H) s.cmc_deviation = std::max(s.cmc_deviation, std::fabs(H - d.Hbar));
}

StopReason stop_at_min(StopTag tag, const ProfileGrid& grid, std::span<const double> r, std::string detail) {
  return StopReason{tag, grid.z(argmin(r)), std::move(detail)};
}

}  // namespace

FlowConfig resolve_defaults(FlowConfig cfg, const ProfileGrid& initial, const AmbientSpace& space) {
  if (!cfg.r_min_stop) {
    auto r = initial.radii();
    cfg.r_min_stop = 1e-3 * *std::min_element(r.begin(), r.end());
  }
  if (!cfg.conv_tol) cfg.conv_tol = 1e-6 * std::fabs(averaged_mean_curvature(initial, space).Hbar);
  return cfg;
}

FlowState initial_state(const ProfileGrid& profile, const AmbientSpace& space, double slope_tol) {
  FlowState s{profile};
  s.slope_tol = slope_tol;
  s.beta_nodes.resize(profile.size());
  s.beta_carry.assign(profile.size(), 0.0);
  for (std::size_t i = 0; i < profile.size(); ++i) s.beta_nodes[i] = beta(space, profile.r(i), kBetaTol);
  s.target_volume = volume_from_cache(s.beta_nodes, s.beta_carry, profile.dz(), space.dim());
  refresh(s, space);
  return s;
}

std::vector<double> rhs(const ProfileGrid& profile, const AmbientSpace& space, double Hbar) {
  return rhs_from_geometry(nodal_geometry(profile, space), space.dim(), Hbar);
}

double stable_time_step(const NodalGeometry& geometry, double dz, double dt_safety) {
  double qmin = std::numeric_limits<double>::infinity();
  for (double s : geometry.speed) qmin = std::min(qmin, s * s);
  return dt_safety * dz * dz * qmin / 2.0;
}

StepOutcome step(const FlowState& state, const AmbientSpace& space, const FlowConfig& cfg) {
  const int n = space.dim();
  const ProfileGrid& p = state.profile;
  const std::size_t m = p.size();
  const double dz = p.dz();
  const double sigma = sphere_volume(n);
  const double r_floor = std::max(cfg.r_min_stop.value_or(0.0), 0.0);

  const double Hbar = state.cached.Hbar;
  const std::vector<double> velocity = rhs_from_geometry(state.geometry, n, Hbar);
  const double dt = stable_time_step(state.geometry, dz, cfg.dt_safety);

  std::vector<double> moved(m);
  for (std::size_t i = 0; i < m; ++i) {
    moved[i] = p.r(i) + dt * velocity[i];
    if (!std::isfinite(moved[i]) || !std::isfinite(dt))
      return {state, StopReason{StopTag::Instability, p.z(i), "non-finite radius after Euler update"}};
  }
  const double r_low = *std::min_element(moved.begin(), moved.end());
  if (r_low < r_floor || r_low <= 0.0)
    return {state, stop_at_min(StopTag::Singularity, p, moved, "minimum radius fell below r_min_stop")};
  const double r_high = *std::max_element(moved.begin(), moved.end());
  if (std::isfinite(space.r_max_domain()) && r_high >= 0.99 * space.r_max_domain())
    return {state, StopReason{StopTag::Instability, std::nullopt, "profile reached 0.99 of the metric domain"}};

  std::vector<double> beta_nodes = state.beta_nodes;
  std::vector<double> carry = state.beta_carry;
  try {
    for (std::size_t i = 0; i < m; ++i)
      accumulate(beta_nodes[i], carry[i], beta_increment(space, p.r(i), moved[i], kBetaTol));

    if (cfg.volume_projection) {
      const double target = state.target_volume;
      auto residual_at = [&](double c, std::vector<double>* increments) {
        std::vector<double> b(m);
        for (std::size_t i = 0; i < m; ++i) {
          const double inc = c == 0.0 ? 0.0 : beta_increment(space, moved[i], moved[i] + c, kBetaTol);
          if (increments) (*increments)[i] = inc;
          b[i] = beta_nodes[i] + carry[i] + inc;
        }
        return sigma * trapezoid(b, dz) - target;
      };
      auto slope_at = [&](double c) {
        std::vector<double> d(m);
        for (std::size_t i = 0; i < m; ++i) {
          const WarpValues w = space.warp(moved[i] + c);
          d[i] = w.f * ipow(w.h, n - 1);
        }
        return sigma * trapezoid(d, dz);
      };

      double c = 0.0;
      std::vector<double> increments(m, 0.0);
      double F = residual_at(c, &increments);
      for (int iter = 0; iter < 5 && std::fabs(F) > 1e-12 * target; ++iter) {
        double dc = -F / slope_at(c);
        // keep every node inside (r_floor, domain)
        while (r_low + c + dc <= r_floor || !space.in_domain(r_high + c + dc)) dc *= 0.5;
        c += dc;
        F = residual_at(c, &increments);
      }
      if (c != 0.0) {
        for (std::size_t i = 0; i < m; ++i) {
          moved[i] += c;
          accumulate(beta_nodes[i], carry[i], increments[i]);
        }
      }
    }
  } catch (const DomainError& e) {
    return {state, StopReason{StopTag::Instability, std::nullopt, e.what()}};
  }

  FlowState next{p.with_radii(std::move(moved))};
  next.t = state.t + dt;
  next.step = state.step + 1;
  next.target_volume = state.target_volume;
  next.beta_nodes = std::move(beta_nodes);
  next.beta_carry = std::move(carry);
  next.slope_tol = state.slope_tol;
  refresh(next, space);
  for (double H : next.geometry.curvature.H) {
    if (!std::isfinite(H))
      return {state, StopReason{StopTag::Instability, std::nullopt, "non-finite mean curvature"}};
  }
  return {std::move(next), std::nullopt};
}

RunResult run(const ProfileGrid& initial, const AmbientSpace& space, const FlowConfig& cfg_in) {
  RunResult result{initial_state(initial, space, cfg_in.slope_tol)};
  result.config = resolve_defaults(cfg_in, initial, space);
  const FlowConfig& cfg = result.config;
  const int record_every = std::max(cfg.record_every, 1);

  FlowState& s = result.final_state;
  result.history.push_back(s.cached);
  result.snapshots.push_back({s.t, s.step, s.profile});

  std::optional<StopReason> stop;
  while (!stop) {
    const DiagnosticsRecord& d = s.cached;
    if (!std::isfinite(d.Hbar) || !std::isfinite(d.V)) {
      stop = StopReason{StopTag::Instability, std::nullopt, "non-finite diagnostics"};
    } else if (d.min_r < *cfg.r_min_stop) {
      stop = stop_at_min(StopTag::Singularity, s.profile, s.profile.radii(), "minimum radius below r_min_stop");
    } else if (d.max_v > cfg.v_max_stop) {
      auto v = s.geometry.curvature.v;
      std::size_t i = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
      stop = StopReason{StopTag::GraphFailure, s.profile.z(i), "max v exceeded v_max_stop"};
    } else if (s.cmc_deviation < *cfg.conv_tol) {
      stop = StopReason{StopTag::Converged, std::nullopt, "max|H - Hbar| below conv_tol"};
    } else if (s.t >= cfg.max_t) {
      stop = StopReason{StopTag::MaxTime, std::nullopt, "reached max_t"};
    }
    if (stop) break;

    StepOutcome out = step(s, space, cfg);
    if (out.stop) {
      stop = out.stop;
      break;
    }
    s = std::move(out.state);
    ++result.steps;
    if (s.step % record_every == 0) result.history.push_back(s.cached);
    if (cfg.snapshot_every > 0 && s.step % cfg.snapshot_every == 0)
      result.snapshots.push_back({s.t, s.step, s.profile});
  }
  result.reason = *stop;
  if (result.history.back().t != s.t) result.history.push_back(s.cached);
  if (result.snapshots.back().step != s.step) result.snapshots.push_back({s.t, s.step, s.profile});
  return result;
}

std::vector<InvariantCheck> audit_history(const std::vector<DiagnosticsRecord>& history,
                                          const AmbientSpace& space, const AuditContext& ctx) {
  std::vector<InvariantCheck> checks;
  if (history.empty()) return checks;
  auto add = [&](std::string name, bool ok, std::string detail) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  };
  auto fmt = [](auto... parts) {
    std::ostringstream o;
    o.precision(6);
    (o << ... << parts);
    return o.str();
  };

  const double V0 = history.front().V;
  double worst_dv = 0.0;
  for (const auto& d : history) worst_dv = std::max(worst_dv, std::fabs(d.V - V0) / V0);
  if (ctx.volume_projection) add("volume conservation", worst_dv <= 1e-10, fmt("max |dV|/V = ", worst_dv));

  double worst_area_rise = 0.0;
  for (std::size_t k = 1; k < history.size(); ++k)
    worst_area_rise = std::max(worst_area_rise, (history[k].area - history[k - 1].area) / history[k - 1].area);
  add("area non-increasing", worst_area_rise <= 1e-8, fmt("largest relative rise = ", worst_area_rise));

  double top = 0.0;
  for (const auto& d : history) top = std::max(top, d.max_r);
  add("max r < r2", top < ctx.bounds.r2, fmt("max r = ", top, ", r2 = ", ctx.bounds.r2));

  const double length_bound = curve_length_bound(space, ctx.a, ctx.b, ctx.bounds.r2, ctx.initial_critical_points);
  double longest = 0.0;
  for (const auto& d : history) longest = std::max(longest, d.curve_len);
  add("curve length bound", longest <= length_bound, fmt("max length = ", longest, ", bound = ", length_bound));

  bool monotone_N = true;
  for (std::size_t k = 1; k < history.size(); ++k) monotone_N = monotone_N && history[k].N <= history[k - 1].N;
  add("N(t) non-increasing", monotone_N,
      fmt("N(0) = ", history.front().N, ", N(end) = ", history.back().N));

  add("0 < r3 < r1 < r2", 0.0 < ctx.bounds.r3 && ctx.bounds.r3 < ctx.bounds.r1 && ctx.bounds.r1 < ctx.bounds.r2,
      fmt("r3 = ", ctx.bounds.r3, ", r1 = ", ctx.bounds.r1, ", r2 = ", ctx.bounds.r2));

  if (ctx.rss2) {
    double min_H = history.front().Hbar, min_I1 = history.front().I1, min_I2 = history.front().I2;
    for (const auto& d : history) {
      min_H = std::min(min_H, d.Hbar);
      min_I1 = std::min(min_I1, d.I1);
      min_I2 = std::min(min_I2, d.I2);
    }
    add("Hbar > 0", min_H > 0.0, fmt("min Hbar = ", min_H));
    add("I1 >= 0", min_I1 >= 0.0, fmt("min I1 = ", min_I1));
    add("I2 > 0", min_I2 > 0.0, fmt("min I2 = ", min_I2));

    if (!ctx.ended_in_singularity) {
      const double t_end = history.back().t;
      double early = 0.0, overall = 0.0;
      for (const auto& d : history) {
        if (d.t <= 0.01 * t_end) early = std::max(early, d.max_v);
        overall = std::max(overall, d.max_v);
      }
      add("max v bounded", overall <= 10.0 * early, fmt("max v = ", overall, ", early max v = ", early));
    }
  }
  return checks;
}

}  // namespace vpmcf
