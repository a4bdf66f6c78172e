#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "fpnp/diagnostics.hpp"
#include "fpnp/grid.hpp"
#include "fpnp/pnp_solver.hpp"

namespace fpnp {

/// Everything a `simulate` run needs. Text form: one `key = value` per line,
/// `#` starts a comment. Keys and defaults:
///
///   grid.d = 1                  grid.n = 1024             grid.half_length = 100
///   exponents.alpha = 1.5       exponents.beta = 1.5
///   init.family = gaussian_mixture | band_limited_positive
///   init.u = 0.5 2              init.v = 0.5 2            (components "amp width [center...]"
///                                                          separated by ';', center defaults to 0)
///   init.seed = 0               init.modes = 4            init.ripple = 0.3
///   solver.dt = 0.05            solver.t_end = 1          solver.dealias_fraction = 0.666...
///   solver.output_stride = 10   solver.pos_tol = 1e-08    solver.tail_tol = 1e-06
///   solver.boundary_tol = 1e-06 solver.cfl = 0.5          solver.checkpoint_stride = 0
///   diagnostics.p_list = 1 2 4  diagnostics.s_list = 0.5 1 1.5 2
///   diagnostics.fit_window = auto | t0:t1
///   output.dir = fpnp_out
struct RunConfig {
  GridSpec grid{1, 1024, 100.0};
  InitialData init;
  SolverParams solver;
  DiagnosticsSpec diagnostics;
  std::optional<FitWindow> fit_window;  // empty: [t_end/8, saturation cut]
  std::string output_dir = "fpnp_out";

  RunConfig();

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses and validates. Throws ConfigError (with the offending line where
/// there is one) for malformed lines, unknown or repeated keys and values
/// out of range.
RunConfig parse_config(std::string_view text);

/// Canonical text listing every key; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// Reads a file and parses it; unreadable files are a ConfigError.
RunConfig load_config(const std::string& path);

/// Cross-field checks (grid, exponents, solver, component dimensions).
void validate(const RunConfig& config);

/// Parses "t0:t1" with 0 <= t0 < t1; throws ConfigError otherwise.
FitWindow parse_window(std::string_view text);

}  // namespace fpnp
