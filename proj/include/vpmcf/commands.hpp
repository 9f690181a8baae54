#pragma once

#include <filesystem>
#include <iosfwd>

#include "json.hpp"
#include "vpmcf/config.hpp"
#include "vpmcf/flow.hpp"

namespace vpmcf {

enum ExitCode : int { kExitOk = 0, kExitConfigError = 1, kExitNumericalFailure = 2 };

/// Prints the validation report as JSON; returns kExitOk iff the RSS conditions hold.
int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Prints the BoundsReport for the configured (or overridden) V and area as JSON.
int cmd_bounds(const RunConfig& cfg, std::ostream& out);

struct RunArtifacts {
  RunResult result;
  nlohmann::json summary;
};

/// Runs the flow and writes history.csv, profile_<k>.csv, summary.json and history.svg into `out_dir`.
RunArtifacts execute_run(const RunConfig& cfg, const std::filesystem::path& out_dir);

int cmd_run(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& out);

/// Cylinder or shooting CMC profile written to `out_dir`/cmc_profile.csv.
int cmd_cmc(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& out);

/// One run per tuple of the cartesian product in cfg.sweep, `jobs` at a time,
/// each in `out_dir`/run_<k>; the table goes to `out_dir`/sweep.csv.
int cmd_sweep(const RunConfig& cfg, const std::filesystem::path& out_dir, int jobs, std::ostream& out);

}  // namespace vpmcf
