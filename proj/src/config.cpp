#include "vpmcf/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "vpmcf/errors.hpp"
#include "vpmcf/expression.hpp"

namespace vpmcf {

namespace {

std::string trim(const std::string& s) {
  auto begin = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
  auto end = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); }).base();
  return begin < end ? std::string(begin, end) : std::string();
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

[[noreturn]] void bad(const std::string& where, const std::string& section, const std::string& key,
                      const std::string& what) {
  std::string prefix = where.empty() ? "" : where + ": ";
  throw ConfigError(prefix + "[" + section + "] " + key + ": " + what);
}

double parse_double(const std::string& v, const std::string& where, const std::string& section,
                    const std::string& key) {
  const std::string s = lower(trim(v));
  if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    double x = std::stod(s, &used);
    if (used != s.size()) bad(where, section, key, "trailing characters in number '" + v + "'");
    return x;
  } catch (const std::logic_error&) {
    bad(where, section, key, "expected a number, got '" + v + "'");
  }
}

int parse_int(const std::string& v, const std::string& where, const std::string& section, const std::string& key) {
  const std::string s = trim(v);
  try {
    std::size_t used = 0;
    long x = std::stol(s, &used);
    if (used != s.size()) bad(where, section, key, "expected an integer, got '" + v + "'");
    return static_cast<int>(x);
  } catch (const std::logic_error&) {
    bad(where, section, key, "expected an integer, got '" + v + "'");
  }
}

bool parse_bool(const std::string& v, const std::string& where, const std::string& section, const std::string& key) {
  const std::string s = lower(trim(v));
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  bad(where, section, key, "expected true/false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string initial_kind_name(InitialKind k) {
  switch (k) {
    case InitialKind::Expression: return "expression";
    case InitialKind::Csv: return "csv";
    case InitialKind::Cylinder: return "cylinder";
  }
  return "cylinder";
}

}  // namespace

void set_config_value(RunConfig& cfg, const std::string& section_in, const std::string& key_in,
                      const std::string& value, const std::string& where) {
  const std::string section = lower(section_in);
  const std::string key = lower(key_in);
  auto num = [&] { return parse_double(value, where, section, key); };
  auto integer = [&] { return parse_int(value, where, section, key); };
  auto text = [&] { return trim(value); };
  auto unknown = [&] { bad(where, section, key, "unknown key"); };

  if (section == "space") {
    SpaceConfig& s = cfg.space;
    if (key == "preset") {
      try {
        s.preset = preset_from_string(lower(text()));
      } catch (const ConfigError& e) {
        bad(where, section, key, e.what());
      }
    } else if (key == "lambda") s.lambda = num();
    else if (key == "n") s.n = integer();
    else if (key == "f") s.f = text();
    else if (key == "df") s.df = text();
    else if (key == "ddf") s.ddf = text();
    else if (key == "h") s.h = text();
    else if (key == "dh") s.dh = text();
    else if (key == "ddh") s.ddh = text();
    else if (key == "r_max") s.r_max = num();
    else if (key == "probe_radius") s.probe_radius = num();
    else if (key == "probe_samples") s.probe_samples = integer();
    else unknown();
    if (key == "f" || key == "df" || key == "ddf" || key == "h" || key == "dh" || key == "ddh") {
      try {
        Expression(text(), "r");
      } catch (const ConfigError& e) {
        bad(where, section, key, e.what());
      }
    }
  } else if (section == "domain") {
    if (key == "a") cfg.a = num();
    else if (key == "b") cfg.b = num();
    else if (key == "m") cfg.m = integer();
    else unknown();
  } else if (section == "initial") {
    InitialConfig& i = cfg.initial;
    if (key == "kind") {
      const std::string k = lower(text());
      if (k == "expression") i.kind = InitialKind::Expression;
      else if (k == "csv") i.kind = InitialKind::Csv;
      else if (k == "cylinder") i.kind = InitialKind::Cylinder;
      else bad(where, section, key, "expected expression, csv or cylinder");
    } else if (key == "expr") {
      i.expr = text();
      try {
        Expression(i.expr, "z");
      } catch (const ConfigError& e) {
        bad(where, section, key, e.what());
      }
    } else if (key == "path") i.path = text();
    else if (key == "radius") i.radius = num();
    else if (key == "amplitude") i.amplitude = num();
    else if (key == "mode") i.mode = integer();
    else unknown();
  } else if (section == "flow") {
    FlowConfig& f = cfg.flow;
    if (key == "dt_safety") f.dt_safety = num();
    else if (key == "max_t") f.max_t = num();
    else if (key == "r_min_stop") f.r_min_stop = num();
    else if (key == "v_max_stop") f.v_max_stop = num();
    else if (key == "conv_tol") f.conv_tol = num();
    else if (key == "record_every") f.record_every = integer();
    else if (key == "volume_projection") f.volume_projection = parse_bool(value, where, section, key);
    else if (key == "snapshot_every") f.snapshot_every = integer();
    else if (key == "slope_tol") f.slope_tol = num();
    else unknown();
    if ((key == "dt_safety") && !(f.dt_safety > 0.0 && f.dt_safety < 1.0))
      bad(where, section, key, "must lie in (0, 1)");
    if ((key == "max_t" && !(f.max_t > 0.0)) || (key == "v_max_stop" && !(f.v_max_stop > 0.0)) ||
        (key == "r_min_stop" && !(*f.r_min_stop > 0.0)) || (key == "conv_tol" && !(*f.conv_tol > 0.0)) ||
        (key == "record_every" && f.record_every < 1))
      bad(where, section, key, "must be positive");
  } else if (section == "output") {
    if (key == "dir") cfg.output_dir = text();
    else unknown();
  } else if (section == "bounds") {
    if (key == "volume") cfg.bounds.volume = num();
    else if (key == "area") cfg.bounds.area = num();
    else unknown();
  } else if (section == "cmc") {
    if (key == "mode") {
      cfg.cmc.mode = lower(text());
      if (cfg.cmc.mode != "cylinder" && cfg.cmc.mode != "shoot") bad(where, section, key, "expected cylinder or shoot");
    } else if (key == "h") cfg.cmc.H = num();
    else if (key == "volume") cfg.cmc.volume = num();
    else if (key == "guess") cfg.cmc.guess = num();
    else if (key == "substeps") cfg.cmc.substeps = integer();
    else if (key == "m") cfg.cmc.m = integer();
    else unknown();
  } else if (section == "sweep") {
    auto dot = key.find('.');
    if (dot == std::string::npos) bad(where, section, key, "sweep keys have the form section.key");
    std::vector<std::string> values = split_list(value);
    // validate every candidate against a scratch copy
    for (const auto& v : values) {
      RunConfig scratch = cfg;
      set_config_value(scratch, key.substr(0, dot), key.substr(dot + 1), v, where);
    }
    cfg.sweep[key] = std::move(values);
  } else {
    bad(where, section, key, "unknown section");
  }
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno);
    auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
      section = lower(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    if (section.empty()) throw ConfigError(where + ": key outside of any [section]");
    set_config_value(cfg, section, trim(line.substr(0, eq)), line.substr(eq + 1), where);
  }
  return cfg;
}

RunConfig config_from_json(const nlohmann::json& j_in) {
  const nlohmann::json& j = j_in.contains("config") ? j_in.at("config") : j_in;
  if (!j.is_object()) throw ConfigError("JSON config must be an object");
  RunConfig cfg;
  for (const auto& [section, body] : j.items()) {
    if (!body.is_object()) throw ConfigError("JSON config section '" + section + "' must be an object");
    for (const auto& [key, value] : body.items()) {
      if (value.is_null()) continue;
      std::string text;
      if (value.is_string()) text = value.get<std::string>();
      else if (value.is_array()) {
        for (const auto& item : value) {
          if (!text.empty()) text += ",";
          text += item.is_string() ? item.get<std::string>() : item.dump();
        }
      } else text = value.dump();
      set_config_value(cfg, section, key, text, "json");
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (path.extension() == ".json") {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
    return config_from_json(j);
  }
  return parse_config(buffer.str(), path.string());
}

nlohmann::json to_json(const RunConfig& cfg) {
  using nlohmann::json;
  auto number = [](double x) -> json {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
  };
  json space = {{"preset", to_string(cfg.space.preset)},
                {"lambda", cfg.space.lambda},
                {"n", cfg.space.n},
                {"r_max", number(cfg.space.r_max)},
                {"probe_radius", cfg.space.probe_radius},
                {"probe_samples", cfg.space.probe_samples}};
  if (cfg.space.preset == Preset::Custom) {
    space["f"] = cfg.space.f;
    space["df"] = cfg.space.df;
    space["ddf"] = cfg.space.ddf;
    space["h"] = cfg.space.h;
    space["dh"] = cfg.space.dh;
    space["ddh"] = cfg.space.ddh;
  }
  json initial = {{"kind", initial_kind_name(cfg.initial.kind)},
                  {"radius", cfg.initial.radius},
                  {"amplitude", cfg.initial.amplitude},
                  {"mode", cfg.initial.mode}};
  if (!cfg.initial.expr.empty()) initial["expr"] = cfg.initial.expr;
  if (!cfg.initial.path.empty()) initial["path"] = cfg.initial.path;

  const FlowConfig& f = cfg.flow;
  json flow = {{"dt_safety", f.dt_safety},       {"max_t", number(f.max_t)},
               {"v_max_stop", number(f.v_max_stop)}, {"record_every", f.record_every},
               {"volume_projection", f.volume_projection}, {"snapshot_every", f.snapshot_every},
               {"slope_tol", f.slope_tol}};
  if (f.r_min_stop) flow["r_min_stop"] = *f.r_min_stop;
  if (f.conv_tol) flow["conv_tol"] = *f.conv_tol;

  json out = {{"space", space},
              {"domain", {{"a", cfg.a}, {"b", cfg.b}, {"m", cfg.m}}},
              {"initial", initial},
              {"flow", flow},
              {"output", {{"dir", cfg.output_dir}}}};
  json bounds = json::object();
  if (cfg.bounds.volume) bounds["volume"] = *cfg.bounds.volume;
  if (cfg.bounds.area) bounds["area"] = *cfg.bounds.area;
  if (!bounds.empty()) out["bounds"] = bounds;
  json cmc = {{"mode", cfg.cmc.mode}, {"substeps", cfg.cmc.substeps}, {"m", cfg.cmc.m}};
  if (cfg.cmc.H) cmc["h"] = *cfg.cmc.H;
  if (cfg.cmc.volume) cmc["volume"] = *cfg.cmc.volume;
  if (cfg.cmc.guess) cmc["guess"] = *cfg.cmc.guess;
  out["cmc"] = cmc;
  if (!cfg.sweep.empty()) out["sweep"] = cfg.sweep;
  return out;
}

AmbientSpace build_space(const SpaceConfig& cfg) {
  if (cfg.n < 2) throw ConfigError("[space] n: must be >= 2");
  if (cfg.preset != Preset::Custom) {
    try {
      return make_preset(cfg.preset, cfg.lambda, cfg.n);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("[space] lambda: ") + e.what());
    }
  }
  const std::pair<const char*, const std::string*> fields[] = {{"f", &cfg.f},   {"df", &cfg.df}, {"ddf", &cfg.ddf},
                                                               {"h", &cfg.h},   {"dh", &cfg.dh}, {"ddh", &cfg.ddh}};
  std::vector<Expression> e;
  for (const auto& [name, src] : fields) {
    if (src->empty()) throw ConfigError(std::string("[space] ") + name + ": required for a custom space");
    e.emplace_back(*src, "r");
  }
  auto warp = [e](double r) { return WarpValues{e[0](r), e[1](r), e[2](r), e[3](r), e[4](r), e[5](r)}; };
  return AmbientSpace(cfg.n, warp, cfg.r_max, "custom(f=" + cfg.f + ", h=" + cfg.h + ")");
}

ProfileGrid build_initial_profile(const RunConfig& cfg) {
  if (!(cfg.a < cfg.b)) throw ConfigError("[domain] b: need a < b");
  if (cfg.m < 11) throw ConfigError("[domain] m: need m >= 11");
  const InitialConfig& init = cfg.initial;
  std::function<double(double)> radius;
  switch (init.kind) {
    case InitialKind::Expression: {
      if (init.expr.empty()) throw ConfigError("[initial] expr: required for kind = expression");
      Expression e(init.expr, "z");
      radius = e;
      break;
    }
    case InitialKind::Cylinder: {
      const double a = cfg.a, len = cfg.b - cfg.a;
      radius = [init, a, len](double z) {
        return init.radius + init.amplitude * std::cos(init.mode * std::numbers::pi * (z - a) / len);
      };
      break;
    }
    case InitialKind::Csv: {
      if (init.path.empty()) throw ConfigError("[initial] path: required for kind = csv");
      ProfileGrid p = read_profile_csv(init.path);
      if (p.size() < 11) throw ConfigError("[initial] path: profile needs at least 11 nodes");
      return p;
    }
  }
  try {
    return ProfileGrid::sample(cfg.a, cfg.b, cfg.m, radius);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("[initial] ") + e.what());
  }
}

}  // namespace vpmcf
