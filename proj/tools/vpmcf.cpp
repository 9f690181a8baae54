#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "vpmcf/commands.hpp"
#include "vpmcf/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Volume-preserving mean curvature flow of revolution hypersurfaces"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  unsigned long long seed = 0;
  app.add_option("--seed", seed, "Seed reserved for randomized property checks");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Config file (INI, or JSON such as a summary.json)")->required();
    sub->add_option("--out", out_dir, "Output directory (overrides [output] dir)");
  };
  CLI::App* validate = app.add_subcommand("validate", "Check the ambient-space hypotheses");
  CLI::App* bounds = app.add_subcommand("bounds", "Print the reference radii and small-volume criterion");
  CLI::App* run = app.add_subcommand("run", "Evolve the initial profile");
  CLI::App* cmc = app.add_subcommand("cmc", "Compute a constant-mean-curvature profile");
  CLI::App* sweep = app.add_subcommand("sweep", "Run the cartesian product of [sweep] values");
  for (CLI::App* sub : {validate, bounds, run, cmc, sweep}) add_common(sub);
  sweep->add_option("--jobs", jobs, "Parallel runs")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : vpmcf::kExitConfigError;
  }

  try {
    const vpmcf::RunConfig cfg = vpmcf::load_config(config_path);
    const std::string dir = out_dir.empty() ? cfg.output_dir : out_dir;
    if (*validate) return vpmcf::cmd_validate(cfg, std::cout, std::cerr);
    if (*bounds) return vpmcf::cmd_bounds(cfg, std::cout);
    if (*run) return vpmcf::cmd_run(cfg, dir, std::cout);
    if (*cmc) return vpmcf::cmd_cmc(cfg, dir, std::cout);
    if (*sweep) return vpmcf::cmd_sweep(cfg, dir, jobs, std::cout);
  } catch (const vpmcf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return vpmcf::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return vpmcf::kExitNumericalFailure;
  }
  return vpmcf::kExitConfigError;
}
