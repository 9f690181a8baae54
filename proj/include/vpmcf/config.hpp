#pragma once

#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vpmcf/ambient.hpp"
#include "vpmcf/flow.hpp"
#include "json.hpp"
#include "vpmcf/profile.hpp"

namespace vpmcf {

struct SpaceConfig {
  Preset preset = Preset::Euclidean;
  double lambda = 0.0;
  int n = 2;
  // closed-form warp expressions in r, custom spaces only
  std::string f, df, ddf, h, dh, ddh;
  double r_max = std::numeric_limits<double>::infinity();
  /// Largest radius probed by validation; 0 picks twice the largest initial radius.
  double probe_radius = 0.0;
  int probe_samples = 200;
};

enum class InitialKind { Expression, Csv, Cylinder };

struct InitialConfig {
  InitialKind kind = InitialKind::Cylinder;
  std::string expr;  ///< in z
  std::string path;
  /// cylinder: radius + amplitude * cos(mode * pi * (z - a) / (b - a))
  double radius = 1.0;
  double amplitude = 0.0;
  int mode = 1;
};

struct CmcConfig {
  std::string mode = "cylinder";  ///< cylinder | shoot
  std::optional<double> H;
  std::optional<double> volume;
  std::optional<double> guess;
  int substeps = 4;
  int m = 401;
};

struct BoundsInput {
  std::optional<double> volume;
  std::optional<double> area;
};

struct RunConfig {
  SpaceConfig space;
  double a = 0.0, b = 1.0;
  int m = 201;
  InitialConfig initial;
  FlowConfig flow;
  std::string output_dir = "out";
  BoundsInput bounds;
  CmcConfig cmc;
  /// "section.key" -> candidate values, expanded as a cartesian product by `sweep`.
  std::map<std::string, std::vector<std::string>> sweep;
};

/// Parses `key = value` lines grouped under `[section]` headers. `#` and `;`
/// start comments. Errors name the origin, line, section and key.
RunConfig parse_config(const std::string& text, const std::string& origin = "<config>");
/// INI file, or JSON (a bare config object or a summary.json carrying "config").
RunConfig load_config(const std::filesystem::path& path);

/// Sets one field from its textual value; `where` prefixes error messages.
void set_config_value(RunConfig& cfg, const std::string& section, const std::string& key,
                      const std::string& value, const std::string& where = "");

nlohmann::json to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

AmbientSpace build_space(const SpaceConfig& cfg);
/// Samples the initial profile on the configured grid; enforces m >= 11, a < b and r > 0.
ProfileGrid build_initial_profile(const RunConfig& cfg);

}  // namespace vpmcf
