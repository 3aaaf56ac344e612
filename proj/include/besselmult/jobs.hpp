#pragma once

#include <map>
#include <optional>
#include <string>

#include "besselmult/norms.hpp"
#include "besselmult/reports.hpp"

namespace besselmult {

enum class Command { bounds, multiplier, invert, nuclear, perturb, gabor };

Command command_from_string(const std::string& name);
std::string to_string(Command c);

/// One batch job. Mirrors the JSON config verbatim; file-path overrides from
/// the command line are applied before `run`.
struct JobConfig {
  Command command = Command::bounds;
  std::map<std::string, std::string> inputs;  // role -> file path
  double p = 2.0;                             // analysis coefficient exponent
  std::optional<double> s;                    // X1 norm exponent (default p)
  std::optional<double> t;                    // X2 norm exponent (default p)
  EstimatorOptions estimator;
  std::string output = ".";

  double r = 1.0;                     // nuclear certificate exponent
  double semi_normalized_tol = 1e-12;
  std::string sweep = "symbol";       // perturb: symbol|analysis|synthesis|joint|bessel
  int steps = 20;
  double amplitude = 0.1;             // perturb: size of the leading step
  int signal_length = 0;              // gabor lattice
  int time_step = 1;
  int freq_step = 1;

  double space_exponent_source() const { return s.value_or(p); }
  double space_exponent_target() const { return t.value_or(p); }
};

JobConfig parse_job_config(const Json& j);
JobConfig load_job_config(const std::string& path);

/// Exit status contract: 0 all checks passed, 1 a mathematical check or
/// precondition failed, 2 malformed input. Reports land in config.output.
inline constexpr int kExitPass = 0;
inline constexpr int kExitMathFailure = 1;
inline constexpr int kExitInputError = 2;

/// Runs one job, writing report.json (plus any CSV tables) into the output
/// directory. Never throws; errors are mapped onto the exit contract and the
/// message is returned through `error_message` when given.
int run(const JobConfig& config, std::string* error_message = nullptr);

}  // namespace besselmult
