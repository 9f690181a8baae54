#include "vpmcf/commands.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <mutex>
#include <thread>

#include "vpmcf/bounds.hpp"
#include "vpmcf/cmc.hpp"
#include "vpmcf/errors.hpp"
#include "vpmcf/hypersurface.hpp"
#include "vpmcf/report.hpp"

namespace vpmcf {

namespace {

double default_probe_radius(const RunConfig& cfg) {
  if (cfg.space.probe_radius > 0.0) return cfg.space.probe_radius;
  try {
    const ProfileGrid p = build_initial_profile(cfg);
    auto r = p.radii();
    return 2.0 * *std::max_element(r.begin(), r.end());
  } catch (const ConfigError&) {
    return 2.0;
  }
}

void write_json(const nlohmann::json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
}

nlohmann::json optional_number(const std::optional<double>& x) {
  return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
}

}  // namespace

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const AmbientSpace space = build_space(cfg.space);
  const ValidationReport report = validate_space(space, default_probe_radius(cfg), cfg.space.probe_samples);
  out << to_json(report).dump(2) << '\n';
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  if (report.rss_ok && report.rss2_branch == Rss2Branch::None)
    err << "warning: space satisfies RSS but neither RSS2 branch; convergence results do not apply\n";
  for (const auto& v : report.violations) err << "violation: " << v << '\n';
  return report.rss_ok ? kExitOk : kExitNumericalFailure;
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  const AmbientSpace space = build_space(cfg.space);
  double volume = 0, area = 0;
  if (!cfg.bounds.volume || !cfg.bounds.area) {
    const ProfileGrid p = build_initial_profile(cfg);
    volume = enclosed_volume(p, space);
    area = lateral_area(p, space);
  }
  volume = cfg.bounds.volume.value_or(volume);
  area = cfg.bounds.area.value_or(area);
  const double a = cfg.a, b = cfg.b;
  if (!(b > a)) throw ConfigError("[domain] b: need a < b");
  if (!(volume > 0.0)) throw ConfigError("[bounds] volume: must be positive");
  if (!(area > 0.0)) throw ConfigError("[bounds] area: must be positive");
  out << std::setprecision(17) << to_json(compute_bounds(space, a, b, volume, area)).dump(2) << '\n';
  return kExitOk;
}

RunArtifacts execute_run(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  const AmbientSpace space = build_space(cfg.space);
  const ProfileGrid initial = build_initial_profile(cfg);
  std::filesystem::create_directories(out_dir);

  RunArtifacts art{run(initial, space, cfg.flow)};
  const RunResult& res = art.result;

  RunConfig echo = cfg;
  echo.flow = res.config;
  echo.output_dir = out_dir.string();

  const DiagnosticsRecord& first = res.history.front();
  std::optional<BoundsReport> bounds;
  try {
    bounds = compute_bounds(space, cfg.a, cfg.b, first.V, first.area);
  } catch (const std::exception&) {
  }
  const double probe = std::max(default_probe_radius(cfg), bounds ? bounds->r2 : 0.0);
  const ValidationReport validation = validate_space(space, probe, cfg.space.probe_samples);

  nlohmann::json invariants = nlohmann::json::array();
  if (bounds) {
    AuditContext ctx;
    ctx.bounds = *bounds;
    ctx.a = cfg.a;
    ctx.b = cfg.b;
    ctx.initial_critical_points = first.N;
    ctx.rss2 = validation.rss2_branch != Rss2Branch::None;
    ctx.volume_projection = res.config.volume_projection;
    ctx.ended_in_singularity = res.reason.tag == StopTag::Singularity;
    for (const auto& c : audit_history(res.history, space, ctx))
      invariants.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }

  nlohmann::json& s = art.summary;
  s["reason"] = to_string(res.reason.tag);
  s["location"] = optional_number(res.reason.location);
  s["detail"] = res.reason.detail;
  s["steps"] = res.steps;
  s["t_final"] = res.final_state.t;
  s["cmc_deviation"] = res.final_state.cmc_deviation;
  s["initial"] = to_json(first);
  s["final"] = to_json(res.final_state.cached);
  s["bounds"] = bounds ? to_json(*bounds) : nlohmann::json(nullptr);
  s["validation"] = to_json(validation);
  s["invariants"] = invariants;
  s["config"] = to_json(echo);

  write_history_csv(res.history, out_dir / "history.csv");
  for (std::size_t k = 0; k < res.snapshots.size(); ++k)
    write_profile_csv(res.snapshots[k].profile, out_dir / ("profile_" + std::to_string(k) + ".csv"));
  write_json(s, out_dir / "summary.json");
  write_history_svg(res.history, out_dir / "history.svg");
  return art;
}

int cmd_run(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& out) {
  const RunArtifacts art = execute_run(cfg, out_dir);
  const RunResult& res = art.result;
  out << "reason: " << to_string(res.reason.tag);
  if (res.reason.location) out << " at z = " << *res.reason.location;
  out << "\nsteps: " << res.steps << ", t = " << res.final_state.t << "\n";
  out << "outputs: " << out_dir.string() << "\n";
  return res.reason.tag == StopTag::Instability ? kExitNumericalFailure : kExitOk;
}

int cmd_cmc(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& out) {
  const AmbientSpace space = build_space(cfg.space);
  if (cfg.cmc.m < 3) throw ConfigError("[cmc] m: need m >= 3");
  CMCProfile result = [&] {
    if (cfg.cmc.mode == "shoot") {
      if (!cfg.cmc.H) throw ConfigError("[cmc] H: required for mode = shoot");
      ShootOptions opts;
      opts.m = cfg.cmc.m;
      opts.substeps = cfg.cmc.substeps;
      return shoot_cmc(space, cfg.a, cfg.b, *cfg.cmc.H, cfg.cmc.guess.value_or(cfg.initial.radius), opts);
    }
    double volume = cfg.cmc.volume ? *cfg.cmc.volume : enclosed_volume(build_initial_profile(cfg), space);
    return cylinder_for_volume(space, cfg.a, cfg.b, volume, cfg.cmc.m);
  }();
  std::filesystem::create_directories(out_dir);
  write_profile_csv(result.profile, out_dir / "cmc_profile.csv");
  nlohmann::json j = {{"H_const", result.H_const},     {"residual", result.residual},
                      {"volume", result.volume},        {"branch", result.branch},
                      {"iterations", result.iterations}, {"r_start", result.profile.r(0)}};
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, const std::filesystem::path& out_dir, int jobs, std::ostream& out) {
  std::vector<std::string> keys;
  std::vector<std::vector<std::string>> axes;
  bool empty = cfg.sweep.empty();
  for (const auto& [key, values] : cfg.sweep) {
    keys.push_back(key);
    axes.push_back(values);
    empty = empty || values.empty();
  }
  std::vector<std::vector<std::string>> tuples;
  if (!empty) {
    tuples.emplace_back();
    for (const auto& axis : axes) {
      std::vector<std::vector<std::string>> grown;
      for (const auto& prefix : tuples) {
        for (const auto& v : axis) {
          grown.push_back(prefix);
          grown.back().push_back(v);
        }
      }
      tuples = std::move(grown);
    }
  }

  struct Row {
    nlohmann::json summary;
    std::string error;
  };
  std::vector<Row> rows(tuples.size());
  std::filesystem::create_directories(out_dir);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < tuples.size(); k = next++) {
      try {
        RunConfig run_cfg = cfg;
        run_cfg.sweep.clear();
        for (std::size_t j = 0; j < keys.size(); ++j) {
          auto dot = keys[j].find('.');
          set_config_value(run_cfg, keys[j].substr(0, dot), keys[j].substr(dot + 1), tuples[k][j], "sweep");
        }
        rows[k].summary = execute_run(run_cfg, out_dir / ("run_" + std::to_string(k))).summary;
      } catch (const std::exception& e) {
        rows[k].error = e.what();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(tuples.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ofstream table(out_dir / "sweep.csv");
  if (!table) throw std::runtime_error("cannot write sweep.csv");
  table << std::setprecision(std::numeric_limits<double>::max_digits10);
  table << "run";
  for (const auto& k : keys) table << ',' << k;
  table << ",reason,location,t,V,area,Hbar,min_r,max_r,max_v,N,steps,error\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    table << k;
    for (const auto& v : tuples[k]) table << ',' << v;
    const auto& s = rows[k].summary;
    if (rows[k].error.empty()) {
      const auto& f = s.at("final");
      table << ',' << s.at("reason").get<std::string>() << ',';
      if (!s.at("location").is_null()) table << s.at("location").get<double>();
      for (const char* field : {"t", "V", "area", "Hbar", "min_r", "max_r", "max_v"})
        table << ',' << f.at(field).get<double>();
      table << ',' << f.at("N").get<int>() << ',' << s.at("steps").get<long>() << ",\n";
    } else {
      std::string msg = rows[k].error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      std::replace(msg.begin(), msg.end(), '\n', ' ');
      table << ",error,,,,,,,,,,," << msg << '\n';
    }
  }
  out << "sweep: " << rows.size() << " runs, table at " << (out_dir / "sweep.csv").string() << '\n';
  return kExitOk;
}

}  // namespace vpmcf
