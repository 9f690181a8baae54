#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vpmcf/ambient.hpp"
#include "vpmcf/bounds.hpp"
#include "vpmcf/flow.hpp"

namespace vpmcf {

/// Column order of history.csv.
inline constexpr const char* kHistoryHeader = "t,V,area,Hbar,I1,I2,min_r,max_r,max_v,N,curve_len,max_L2";

void write_history_csv(const std::vector<DiagnosticsRecord>& history, const std::filesystem::path& path);
std::vector<DiagnosticsRecord> read_history_csv(const std::filesystem::path& path);

nlohmann::json to_json(const DiagnosticsRecord& d);
nlohmann::json to_json(const BoundsReport& b);
nlohmann::json to_json(const ValidationReport& v);

/// Line plot of V, area, Hbar and min_r against t, one panel each.
void write_history_svg(const std::vector<DiagnosticsRecord>& history, const std::filesystem::path& path);

}  // namespace vpmcf
