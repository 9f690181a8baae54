#include "vpmcf/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "vpmcf/errors.hpp"

namespace vpmcf {

void write_history_csv(const std::vector<DiagnosticsRecord>& history, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << kHistoryHeader << '\n';
  for (const auto& d : history) {
    out << d.t << ',' << d.V << ',' << d.area << ',' << d.Hbar << ',' << d.I1 << ',' << d.I2 << ',' << d.min_r
        << ',' << d.max_r << ',' << d.max_v << ',' << d.N << ',' << d.curve_len << ',' << d.max_L2 << '\n';
  }
}

std::vector<DiagnosticsRecord> read_history_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kHistoryHeader)
    throw ConfigError(path.string() + ":1: unexpected history header");
  std::vector<DiagnosticsRecord> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::array<double, 12> v{};
    std::stringstream ss(line);
    std::string cell;
    std::size_t k = 0;
    while (std::getline(ss, cell, ',')) {
      if (k >= v.size()) throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": too many columns");
      try {
        v[k++] = std::stod(cell);
      } catch (const std::logic_error&) {
        throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": unparseable cell '" + cell + "'");
      }
    }
    if (k != v.size()) throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected 12 columns");
    out.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], static_cast<int>(v[9]), v[10], v[11]});
  }
  return out;
}

nlohmann::json to_json(const DiagnosticsRecord& d) {
  return {{"t", d.t},         {"V", d.V},         {"area", d.area},   {"Hbar", d.Hbar},
          {"I1", d.I1},       {"I2", d.I2},       {"min_r", d.min_r}, {"max_r", d.max_r},
          {"max_v", d.max_v}, {"N", d.N},         {"curve_len", d.curve_len}, {"max_L2", d.max_L2}};
}

nlohmann::json to_json(const BoundsReport& b) {
  return {{"r1", b.r1},
          {"r2", b.r2},
          {"r3", b.r3},
          {"small_volume_threshold", b.small_volume_threshold},
          {"criterion_met", b.criterion_met},
          {"sigma", b.sigma}};
}

nlohmann::json to_json(const ValidationReport& v) {
  return {{"rss_ok", v.rss_ok},
          {"rss2_branch", to_string(v.rss2_branch)},
          {"violations", v.violations},
          {"warnings", v.warnings},
          {"probe_radius", v.probe_radius},
          {"samples", v.samples},
          {"axis_limits", {{"f0", v.f0}, {"df0", v.df0}, {"h0", v.h0}, {"dh0", v.dh0}}}};
}

void write_history_svg(const std::vector<DiagnosticsRecord>& history, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  constexpr double width = 640, panel_h = 180, margin = 50, gap = 30;
  const std::array<std::pair<const char*, double DiagnosticsRecord::*>, 4> series = {
      {{"V", &DiagnosticsRecord::V},
       {"area", &DiagnosticsRecord::area},
       {"Hbar", &DiagnosticsRecord::Hbar},
       {"min_r", &DiagnosticsRecord::min_r}}};
  const double height = series.size() * (panel_h + gap) + gap;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  double t0 = 0, t1 = 1;
  if (!history.empty()) {
    t0 = history.front().t;
    t1 = history.back().t;
  }
  if (t1 <= t0) t1 = t0 + 1;
  const double plot_w = width - 2 * margin;

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& [name, field] = series[k];
    const double top = gap + k * (panel_h + gap);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& d : history) {
      lo = std::min(lo, d.*field);
      hi = std::max(hi, d.*field);
    }
    if (!(hi > lo)) {
      const double pad = std::isfinite(lo) ? std::max(1e-12, std::fabs(lo) * 1e-6) : 1.0;
      if (!std::isfinite(lo)) lo = 0;
      hi = lo + pad;
      lo -= pad;
    }
    out << "<rect x=\"" << margin << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << panel_h
        << "\" fill=\"none\" stroke=\"#888\"/>\n";
    out << "<text x=\"" << margin << "\" y=\"" << top - 6 << "\">" << name << "  [" << std::setprecision(6) << lo
        << ", " << hi << "]  vs t in [" << t0 << ", " << t1 << "]</text>\n";
    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    out << std::setprecision(8);
    for (const auto& d : history) {
      const double x = margin + plot_w * (d.t - t0) / (t1 - t0);
      const double y = top + panel_h * (1.0 - (d.*field - lo) / (hi - lo));
      out << x << ',' << y << ' ';
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace vpmcf
