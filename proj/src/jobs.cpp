#include "besselmult/jobs.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "besselmult/csv.hpp"
#include "besselmult/duality.hpp"
#include "besselmult/gabor.hpp"
#include "besselmult/perturbation.hpp"

namespace besselmult {

namespace fs = std::filesystem;

namespace {

struct LoadedInputs {
  std::map<std::string, Mat> matrices;
  Field field = Field::real;
};

// Fail fast: every referenced file must exist and parse before any
// computation starts.
LoadedInputs load_inputs(const JobConfig& config) {
  LoadedInputs loaded;
  for (const auto& [role, path] : config.inputs) {
    if (!fs::exists(path)) throw ParseError(path, 0, "input file for role '" + role + "' not found");
    loaded.matrices[role] = read_matrix_csv(path);
    if (detect_field(loaded.matrices[role]) == Field::complex_scalars)
      loaded.field = Field::complex_scalars;
  }
  return loaded;
}

const Mat& require_input(const LoadedInputs& in, const std::string& role) {
  const auto it = in.matrices.find(role);
  if (it == in.matrices.end())
    throw InvalidArgument("missing required input '" + role + "' in the job config");
  return it->second;
}

struct MultiplierInputs {
  Symbol symbol;
  FunctionalSequence psi;
  VectorSequence phi;
};

MultiplierInputs assemble_multiplier(const JobConfig& config, const LoadedInputs& in) {
  const Mat& sym = require_input(in, "symbol");
  if (sym.cols() != 1)
    throw InvalidArgument("symbol input must be a single column; got " +
                          std::to_string(sym.cols()) + " columns");
  const Mat& psi_m = require_input(in, "psi");
  const Mat& phi_m = require_input(in, "phi");
  const CoefficientExponent p(config.p);
  const Space x1(static_cast<int>(psi_m.cols()), config.space_exponent_source(), in.field);
  const Space x2(static_cast<int>(phi_m.cols()), config.space_exponent_target(), in.field);
  return MultiplierInputs{Symbol(sym.col(0)), FunctionalSequence(x1, psi_m, p),
                          VectorSequence(x2, phi_m, p.conjugate())};
}

void ensure_output_dir(const std::string& dir) {
  if (!dir.empty()) fs::create_directories(dir);
}

std::string out_path(const JobConfig& config, const std::string& name) {
  return (fs::path(config.output) / name).string();
}

int finish(const JobConfig& config, Json report, bool all_pass) {
  report["command"] = to_string(config.command);
  report["pass"] = all_pass;
  write_json(out_path(config, "report.json"), report);
  return all_pass ? kExitPass : kExitMathFailure;
}

int run_bounds(const JobConfig& config, const LoadedInputs& in) {
  const Mat& seq_m = require_input(in, "sequence");
  const CoefficientExponent p(config.p);
  const Space host(static_cast<int>(seq_m.cols()), config.space_exponent_source(), in.field);
  const FunctionalSequence seq(host, seq_m, p);

  Json report;
  report["bessel"] = to_json(bessel_bound(seq, config.estimator), in.field);
  report["frame"] = to_json(frame_bounds(seq, config.estimator), in.field);
  report["riesz"] = to_json(riesz_bounds(seq, config.estimator), in.field);
  return finish(config, std::move(report), true);
}

int run_multiplier(const JobConfig& config, const LoadedInputs& in) {
  const MultiplierInputs mi = assemble_multiplier(config, in);
  const Multiplier M = build_multiplier(mi.symbol, mi.phi, mi.psi);
  const NormEstimate B1 = bessel_bound(M.analysis, config.estimator);
  const NormEstimate B2 = bessel_bound(M.synthesis, config.estimator);
  const CheckReport check = norm_bound_check(M, B1, B2, config.estimator);

  write_matrix_csv(out_path(config, "multiplier.csv"), M.matrix, in.field);
  Json report;
  report["B1"] = to_json(B1, in.field);
  report["B2"] = to_json(B2, in.field);
  report["norm_bound_check"] = to_json(check);
  report["symbol"] = to_json(symbol_classify(M.symbol, config.semi_normalized_tol));
  return finish(config, std::move(report), check.pass);
}

int run_invert(const JobConfig& config, const LoadedInputs& in) {
  const MultiplierInputs mi = assemble_multiplier(config, in);
  const Multiplier M = build_multiplier(mi.symbol, mi.phi, mi.psi);
  const Multiplier inverse = invert_multiplier(M, config.semi_normalized_tol, config.estimator);

  const Mat eye = Mat::Identity(M.matrix.rows(), M.matrix.cols());
  const double residual = std::max(
      (inverse.matrix * M.matrix - eye).cwiseAbs().maxCoeff(),
      (M.matrix * inverse.matrix - eye).cwiseAbs().maxCoeff());
  write_matrix_csv(out_path(config, "inverse.csv"), inverse.matrix, in.field);
  Json report;
  report["composition_residual"] = residual;
  report["semi_normalized_tol"] = config.semi_normalized_tol;
  return finish(config, std::move(report), residual <= 1e-8);
}

int run_nuclear(const JobConfig& config, const LoadedInputs& in) {
  const MultiplierInputs mi = assemble_multiplier(config, in);
  const Multiplier M = build_multiplier(mi.symbol, mi.phi, mi.psi);
  const NuclearCertificate cert = nuclear_upper_bound(M, config.r, config.estimator);

  Json report;
  report["certificate"] = to_json(cert);
  bool pass = true;
  const bool hilbert_case = config.p == 2.0 && config.space_exponent_source() == 2.0 &&
                            config.space_exponent_target() == 2.0 && config.r == 1.0;
  if (hilbert_case) {
    const double trace = trace_norm_hilbert(M.matrix);
    const CheckReport check =
        make_inequality_report("trace norm <= nuclear certificate", trace, cert.upper);
    report["trace_norm_check"] = to_json(check);
    pass = check.pass;
  }
  return finish(config, std::move(report), pass);
}

int run_perturb(const JobConfig& config, const LoadedInputs& in) {
  const MultiplierInputs mi = assemble_multiplier(config, in);
  const Multiplier M = build_multiplier(mi.symbol, mi.phi, mi.psi);
  const int L = config.steps;
  if (L < 1) throw InvalidArgument("perturbation sweep needs at least one step");
  const double q1 = conjugate_exponent(config.p);

  Json report;
  bool pass = true;
  if (config.sweep == "bessel") {
    // Shift every analysis element by amplitude/step and check the perturbed
    // Bessel bound chain at each step.
    const NormEstimate B = bessel_bound(M.analysis, config.estimator);
    Json checks = Json::array();
    for (int l = 1; l <= L; ++l) {
      Mat bumped = M.analysis.elements;
      bumped.col(0).array() += config.amplitude / l;
      const FunctionalSequence phi(M.analysis.host, bumped, M.analysis.coeff);
      for (const CheckReport& rep :
           perturbed_bessel_bound_check(M.analysis, phi, B, config.p, config.estimator)) {
        pass = pass && rep.pass;
        checks.push_back(to_json(rep));
      }
    }
    report["checks"] = checks;
  } else {
    ConvergenceTable table;
    if (config.sweep == "symbol") {
      std::vector<Symbol> family;
      for (int l = 1; l <= L; ++l) {
        Vec v = M.symbol.values;
        v[0] += config.amplitude / l;
        family.emplace_back(v);
      }
      table = continuity_symbol(M, family, config.p, config.estimator);
    } else if (config.sweep == "analysis") {
      std::vector<FunctionalSequence> family;
      for (int l = 1; l <= L; ++l) {
        Mat bumped = M.analysis.elements;
        bumped(0, 0) += config.amplitude / l;
        family.emplace_back(M.analysis.host, bumped, M.analysis.coeff);
      }
      table = continuity_analysis(M, family, q1, config.estimator);
    } else if (config.sweep == "synthesis") {
      std::vector<VectorSequence> family;
      for (int l = 1; l <= L; ++l) {
        Mat bumped = M.synthesis.elements;
        bumped(0, 0) += config.amplitude / l;
        family.emplace_back(M.synthesis.host, bumped, M.synthesis.coeff);
      }
      table = continuity_synthesis(M, family, q1, config.estimator);
    } else if (config.sweep == "joint") {
      std::vector<Symbol> symbols;
      std::vector<FunctionalSequence> analyses;
      std::vector<VectorSequence> syntheses;
      for (int l = 1; l <= L; ++l) {
        Vec v = M.symbol.values;
        v[0] += config.amplitude / l;
        symbols.emplace_back(v);
        Mat psi_b = M.analysis.elements;
        psi_b(0, 0) += config.amplitude / l;
        analyses.emplace_back(M.analysis.host, psi_b, M.analysis.coeff);
        Mat phi_b = M.synthesis.elements;
        phi_b(0, 0) += config.amplitude / l;
        syntheses.emplace_back(M.synthesis.host, phi_b, M.synthesis.coeff);
      }
      table = continuity_joint(M, symbols, analyses, syntheses, config.p, q1, config.estimator);
    } else {
      throw InvalidArgument("unknown sweep '" + config.sweep +
                            "'; expected symbol|analysis|synthesis|joint|bessel");
    }
    write_table_csv(out_path(config, "sweep.csv"), table);
    report["table"] = to_json(table);
    pass = table.all_pass();
  }
  return finish(config, std::move(report), pass);
}

int run_gabor(const JobConfig& config, const LoadedInputs& in) {
  if (config.signal_length < 1)
    throw InvalidArgument("gabor job needs a positive signal_length");
  const int L = config.signal_length;
  Vec window;
  if (in.matrices.count("window")) {
    const Mat& w = in.matrices.at("window");
    if (w.cols() != 1) throw InvalidArgument("window input must be a single column");
    window = w.col(0);
  } else {
    window = Vec::Zero(L);  // unit impulse by default
    window[0] = 1.0;
  }
  const GaborFramePair pair = gabor_generate(L, window, config.time_step, config.freq_step);
  const BoundsCertificate bounds = frame_bounds(pair.analysis, config.estimator);

  Json report;
  report["system_size"] = pair.system.size();
  report["bounds"] = to_json(bounds, Field::complex_scalars);
  bool pass = true;
  if (config.time_step == 1 && config.freq_step == 1 && window.squaredNorm() > 0.0) {
    const double expected = std::sqrt(pair.system.tight_constant());
    CheckReport tight;
    tight.claim = "full lattice is tight: A = B = sqrt(L * |w|^2)";
    tight.lhs = std::max(std::abs(bounds.A_est.upper - expected),
                         std::abs(bounds.B_est.lower - expected));
    tight.rhs = 1e-6 * std::max(1.0, expected);
    tight.slack = tight.rhs - tight.lhs;
    tight.pass = tight.lhs <= tight.rhs;
    report["tight_check"] = to_json(tight);
    pass = pass && tight.pass;
  }

  if (in.matrices.count("signal")) {
    const Mat& sig = in.matrices.at("signal");
    if (sig.cols() != 1) throw InvalidArgument("signal input must be a single column");
    Vec mask_values = Vec::Ones(pair.system.size());
    if (in.matrices.count("mask")) {
      const Mat& mk = in.matrices.at("mask");
      if (mk.cols() != 1) throw InvalidArgument("mask input must be a single column");
      mask_values = mk.col(0);
    }
    const Vec out = apply_mask(pair, Symbol(mask_values), sig.col(0));
    write_column_csv(out_path(config, "masked_signal.csv"), out, Field::complex_scalars);
  }
  return finish(config, std::move(report), pass);
}

}  // namespace

Command command_from_string(const std::string& name) {
  if (name == "bounds") return Command::bounds;
  if (name == "multiplier") return Command::multiplier;
  if (name == "invert") return Command::invert;
  if (name == "nuclear") return Command::nuclear;
  if (name == "perturb") return Command::perturb;
  if (name == "gabor") return Command::gabor;
  throw InvalidArgument("unknown command '" + name + "'");
}

std::string to_string(Command c) {
  switch (c) {
    case Command::bounds: return "bounds";
    case Command::multiplier: return "multiplier";
    case Command::invert: return "invert";
    case Command::nuclear: return "nuclear";
    case Command::perturb: return "perturb";
    case Command::gabor: return "gabor";
  }
  return "unknown";
}

JobConfig parse_job_config(const Json& j) {
  JobConfig config;
  if (!j.is_object()) throw InvalidArgument("job config must be a JSON object");
  if (j.contains("command")) config.command = command_from_string(j.at("command").get<std::string>());
  if (j.contains("inputs")) {
    if (!j.at("inputs").is_object()) throw InvalidArgument("config field 'inputs' must be an object");
    for (const auto& [role, path] : j.at("inputs").items())
      config.inputs[role] = path.get<std::string>();
  }
  if (j.contains("p")) config.p = j.at("p").get<double>();
  if (j.contains("s")) config.s = j.at("s").get<double>();
  if (j.contains("t")) config.t = j.at("t").get<double>();
  if (j.contains("estimator")) {
    const Json& e = j.at("estimator");
    if (e.contains("restarts")) config.estimator.restarts = e.at("restarts").get<int>();
    if (e.contains("max_iter")) config.estimator.max_iter = e.at("max_iter").get<int>();
    if (e.contains("tol")) config.estimator.tol = e.at("tol").get<double>();
    if (e.contains("seed")) config.estimator.seed = e.at("seed").get<std::uint64_t>();
  }
  if (j.contains("output")) config.output = j.at("output").get<std::string>();
  if (j.contains("r")) config.r = j.at("r").get<double>();
  if (j.contains("semi_normalized_tol"))
    config.semi_normalized_tol = j.at("semi_normalized_tol").get<double>();
  if (j.contains("sweep")) config.sweep = j.at("sweep").get<std::string>();
  if (j.contains("steps")) config.steps = j.at("steps").get<int>();
  if (j.contains("amplitude")) config.amplitude = j.at("amplitude").get<double>();
  if (j.contains("signal_length")) config.signal_length = j.at("signal_length").get<int>();
  if (j.contains("time_step")) config.time_step = j.at("time_step").get<int>();
  if (j.contains("freq_step")) config.freq_step = j.at("freq_step").get<int>();
  if (!(config.p > 1.0) || std::isinf(config.p))
    throw InvalidArgument("config field 'p' must lie in (1, inf)");
  return config;
}

JobConfig load_job_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open config file");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ParseError(path, 0, std::string("invalid JSON: ") + e.what());
  }
  return parse_job_config(j);
}

int run(const JobConfig& config, std::string* error_message) {
  try {
    ensure_output_dir(config.output);
    const LoadedInputs in = load_inputs(config);
    switch (config.command) {
      case Command::bounds: return run_bounds(config, in);
      case Command::multiplier: return run_multiplier(config, in);
      case Command::invert: return run_invert(config, in);
      case Command::nuclear: return run_nuclear(config, in);
      case Command::perturb: return run_perturb(config, in);
      case Command::gabor: return run_gabor(config, in);
    }
    throw InternalError("unhandled command");
  } catch (const ParseError& e) {
    if (error_message) *error_message = e.what();
    return kExitInputError;
  } catch (const PreconditionError& e) {
    if (error_message) *error_message = e.what();
    return kExitMathFailure;
  } catch (const InternalError& e) {
    if (error_message) *error_message = e.what();
    return kExitMathFailure;
  } catch (const Error& e) {
    if (error_message) *error_message = e.what();
    return kExitInputError;
  } catch (const std::exception& e) {
    if (error_message) *error_message = e.what();
    return kExitInputError;
  }
}

}  // namespace besselmult
