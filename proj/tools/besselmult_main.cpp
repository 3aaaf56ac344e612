#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "besselmult/jobs.hpp"

namespace bm = besselmult;

int main(int argc, char** argv) {
  CLI::App app{"(p,q)-Bessel multiplier toolbox: certified frame bounds, multiplier "
               "construction and inversion, nuclear certificates, perturbation sweeps, "
               "and Gabor masking"};
  app.require_subcommand(1);

  std::string config_path;
  double p_override = 0.0;
  std::uint64_t seed_override = 0;
  std::string out_override;
  bool has_p = false, has_seed = false, has_out = false;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON job configuration")->required();
    sub->add_option("--p", p_override, "override the coefficient exponent p")
        ->each([&](const std::string&) { has_p = true; });
    sub->add_option("--seed", seed_override, "override the estimator seed")
        ->each([&](const std::string&) { has_seed = true; });
    sub->add_option("--out", out_override, "override the output directory")
        ->each([&](const std::string&) { has_out = true; });
  };

  for (const char* name : {"bounds", "multiplier", "invert", "nuclear", "perturb", "gabor"})
    add_common(app.add_subcommand(name));

  CLI11_PARSE(app, argc, argv);

  const std::string command_name = app.get_subcommands().front()->get_name();
  bm::JobConfig config;
  try {
    config = bm::load_job_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bm::kExitInputError;
  }
  try {
    const bm::Command requested = bm::command_from_string(command_name);
    if (config.command != requested) config.command = requested;
    if (has_p) config.p = p_override;
    if (has_seed) config.estimator.seed = seed_override;
    if (has_out) config.output = out_override;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bm::kExitInputError;
  }

  std::string message;
  const int status = bm::run(config, &message);
  if (status != bm::kExitPass) {
    std::cerr << "error: " << (message.empty() ? "a check failed; see report.json" : message)
              << "\n";
  } else {
    std::cout << "ok: report written to " << config.output << "\n";
  }
  return status;
}
