// Command-line front end: simulate, fit, conditions, verify, profile.
//
// Exit codes: 0 ok, 2 configuration or input error, 3 numerical failure,
// 4 verification counterexample. Errors are printed to stderr as one JSON
// object. FPNP_OUTPUT_DIR overrides the directory that simulate and profile
// write to.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <json.hpp>

#include "fpnp/config.hpp"
#include "fpnp/diagnostics.hpp"
#include "fpnp/errors.hpp"
#include "fpnp/inequality_lab.hpp"
#include "fpnp/io.hpp"
#include "fpnp/simulation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericalFailure = 3;
constexpr int kCounterexample = 4;

constexpr const char* kOutputEnv = "FPNP_OUTPUT_DIR";

int report_error(int code, const std::string& kind, const std::string& message,
                 json extra = json::object()) {
  json doc = {{"error", kind}, {"message", message}, {"exit_code", code}};
  doc.update(extra);
  std::cerr << doc.dump() << std::endl;
  return code;
}

fs::path output_dir(const std::string& fallback) {
  if (const char* env = std::getenv(kOutputEnv); env != nullptr && *env != '\0') return env;
  return fallback;
}

void print(const json& doc) { std::cout << doc.dump(2) << std::endl; }

int run_simulate(const std::string& config_path) {
  const fpnp::RunConfig config = fpnp::load_config(config_path);
  const fs::path dir = output_dir(config.output_dir);
  fs::create_directories(dir);

  std::vector<std::string> files;
  auto sink = [&](const fpnp::SimState& state, int index) {
    for (auto& f : fpnp::write_checkpoint(dir, state, config.solver.exps, index)) {
      files.push_back(std::move(f));
    }
  };
  const fpnp::SimulationResult result =
      fpnp::simulate(config.init, config.grid, config.solver, config.diagnostics, sink);

  fpnp::write_series_csv(dir / "series.csv", result.series);
  files.insert(files.begin(), "series.csv");

  const json predictions = fpnp::to_json(fpnp::predicted_exponents(
      config.grid.d, config.solver.exps, config.diagnostics.p_list, config.diagnostics.s_list));
  fpnp::write_json(dir / "predictions.json",
                   {{"schema_version", fpnp::kSchemaVersion}, {"predictions", predictions}});
  files.push_back("predictions.json");

  fpnp::write_json(dir / "manifest.json", fpnp::make_manifest(dir, config, result, files));
  print({{"schema_version", fpnp::kSchemaVersion},
         {"output_dir", dir.string()},
         {"manifest", (dir / "manifest.json").string()},
         {"steps", result.steps},
         {"rows", result.series.rows.size()},
         {"saturation_time", result.series.saturation_time},
         {"monitors", fpnp::to_json(result.monitors)}});
  return kOk;
}

/// Saturation cut recorded in a manifest next to the series, if any.
double recorded_saturation(const fs::path& series_path) {
  const fs::path manifest = series_path.parent_path() / "manifest.json";
  if (!fs::exists(manifest)) return NAN;
  const json doc = fpnp::read_json(manifest);
  if (doc.contains("saturation_time") && doc["saturation_time"].is_number()) {
    return doc["saturation_time"].get<double>();
  }
  return NAN;
}

int run_fit(const std::string& series_path, const std::vector<std::string>& columns,
            const std::string& window_text) {
  fpnp::NormSeries series = fpnp::read_series_csv(series_path);
  series.saturation_time = recorded_saturation(series_path);
  std::optional<fpnp::FitWindow> window;
  if (!window_text.empty() && window_text != "auto") window = fpnp::parse_window(window_text);
  json fits = json::array();
  for (const auto& column : columns) {
    if (std::find(series.columns.begin(), series.columns.end(), column) == series.columns.end()) {
      throw fpnp::ConfigError("column '" + column + "' not in series");
    }
    fits.push_back(fpnp::to_json(fpnp::fit_decay(series, column, window)));
  }
  print(fits.size() == 1 ? fits[0] : json{{"schema_version", fpnp::kSchemaVersion}, {"fits", fits}});
  return kOk;
}

int run_conditions(int d, double alpha, double beta) {
  if (d < 1) throw fpnp::ConfigError("dimension must be >= 1");
  const fpnp::FracExponents exps{alpha, beta};
  try {
    fpnp::validate(exps);
  } catch (const fpnp::ContractViolation& e) {
    throw fpnp::ConfigError(e.what());
  }
  print(fpnp::to_json(fpnp::check_conditions(d, exps)));
  return kOk;
}

int run_verify(const std::string& suite, std::uint64_t seed) {
  const auto names = fpnp::suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    std::string known;
    for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
    throw fpnp::ConfigError("unknown suite '" + suite + "' (known: " + known + ")");
  }
  const fpnp::SuiteReport report = fpnp::run_suite(suite, seed);
  print(fpnp::to_json(report));
  if (report.counterexamples() > 0) {
    return report_error(kCounterexample, "verification_counterexample",
                        std::to_string(report.counterexamples()) + " counterexample(s) in suite " + suite);
  }
  return kOk;
}

int run_profile(const std::string& run_dir) {
  const fs::path dir = run_dir;
  const json manifest = fpnp::read_json(dir / "manifest.json");
  const fpnp::RunConfig config = fpnp::parse_config(manifest.at("config").get<std::string>());
  const auto checkpoints = fpnp::list_checkpoints(dir);
  if (checkpoints.size() < 2) {
    throw fpnp::ConfigError("profile needs at least two checkpoints in '" + dir.string() + "'");
  }
  const fpnp::SimState initial = fpnp::read_checkpoint(checkpoints.front());
  if (initial.t != 0.0) throw fpnp::ConfigError("first checkpoint is not the initial state");

  fpnp::NormSeries series;
  series.columns = {"t", "u_profile_L2", "v_profile_L2"};
  for (const auto& cp : checkpoints) {
    const fpnp::SimState state = fpnp::read_checkpoint(cp);
    const auto [du, dv] = fpnp::profile_difference(state, initial.u, initial.v, config.solver.exps);
    series.rows.push_back({state.t, du, dv});
  }
  if (manifest.contains("saturation_time") && manifest["saturation_time"].is_number()) {
    series.saturation_time = manifest["saturation_time"].get<double>();
  }

  const fs::path out = output_dir(dir.string());
  fs::create_directories(out);
  fpnp::write_series_csv(out / "profile.csv", series);

  const double M = config.solver.exps.max();
  const double predicted = (config.grid.d - 1) / M - 1.0;
  json fits = json::array();
  json skipped = nullptr;
  if (predicted > 0.0) {
    for (const char* column : {"u_profile_L2", "v_profile_L2"}) {
      try {
        fits.push_back(fpnp::to_json(fpnp::fit_decay(series, column, config.fit_window)));
      } catch (const fpnp::FitError& e) {
        skipped = e.what();
      }
    }
  } else {
    skipped = "predicted exponent is not positive; no decay to fit";
  }
  double max_diff = 0.0;
  for (const auto& row : series.rows) max_diff = std::max({max_diff, row[1], row[2]});
  print({{"schema_version", fpnp::kSchemaVersion},
         {"series", (out / "profile.csv").string()},
         {"checkpoints", checkpoints.size()},
         {"predicted_exponent", predicted},
         {"max_difference", max_diff},
         {"fits", fits},
         {"note", skipped}});
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional drift-diffusion solver and inequality checks"};
  app.require_subcommand(1);

  std::string config_path;
  auto* simulate = app.add_subcommand("simulate", "Run the solver from a config file");
  simulate->add_option("--config", config_path, "key = value config file")->required();

  std::string series_path, window;
  std::vector<std::string> columns;
  auto* fit = app.add_subcommand("fit", "Fit a power law to a norm series column");
  fit->add_option("--series", series_path, "series CSV")->required();
  fit->add_option("--column", columns, "column name (repeatable)")->required();
  fit->add_option("--window", window, "t0:t1 (default: t_end/8 to the saturation cut)");

  int d = 0;
  double alpha = 0.0, beta = 0.0;
  auto* conditions = app.add_subcommand("conditions", "Evaluate the H^2 decay conditions");
  conditions->add_option("--d", d, "dimension")->required();
  conditions->add_option("--alpha", alpha, "electron order")->required();
  conditions->add_option("--beta", beta, "hole order")->required();

  std::string suite;
  std::uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify", "Run a randomized inequality suite");
  verify->add_option("--suite", suite, "lemma_a, wiener, commutator, kato_ponce, interpolation, oracle, all")
      ->required();
  verify->add_option("--seed", seed, "corpus seed")->required();

  std::string run_dir;
  auto* profile = app.add_subcommand("profile", "Difference to the linear evolution from checkpoints");
  profile->add_option("--run", run_dir, "run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error(kConfigError, "usage_error", e.what());
  }

  try {
    if (*simulate) return run_simulate(config_path);
    if (*fit) return run_fit(series_path, columns, window);
    if (*conditions) return run_conditions(d, alpha, beta);
    if (*verify) return run_verify(suite, seed);
    if (*profile) return run_profile(run_dir);
  } catch (const fpnp::ConfigError& e) {
    return report_error(kConfigError, "config_error", e.what(), {{"line", e.line()}});
  } catch (const fpnp::ContractViolation& e) {
    return report_error(kConfigError, "invalid_input", e.what());
  } catch (const fpnp::NumericalFailure& e) {
    return report_error(kNumericalFailure, "numerical_failure", e.what(),
                        {{"kind", fpnp::to_string(e.kind())}, {"last_good_time", e.last_good_time()}});
  } catch (const fpnp::QuadratureFailure& e) {
    return report_error(kNumericalFailure, "quadrature_failure", e.what(),
                        {{"achieved_error", e.achieved_error()}});
  } catch (const fpnp::FitError& e) {
    return report_error(kNumericalFailure, "fit_failure", e.what());
  } catch (const fpnp::VerificationFailure& e) {
    return report_error(kCounterexample, "verification_counterexample", e.what());
  } catch (const nlohmann::json::exception& e) {
    return report_error(kConfigError, "config_error", e.what());
  } catch (const fs::filesystem_error& e) {
    return report_error(kConfigError, "io_error", e.what());
  }
  return kOk;
}
