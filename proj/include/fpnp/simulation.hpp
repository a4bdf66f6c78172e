#pragma once

#include <functional>

#include "fpnp/diagnostics.hpp"
#include "fpnp/pnp_solver.hpp"

namespace fpnp {

/// Worst values seen by the run monitors.
struct MonitorSummary {
  double max_tail_fraction = 0.0;
  double max_boundary_fraction = 0.0;
  double min_relative_density = 0.0;  // min over run of min(f)/max|f|, both species
  double max_mass_drift = 0.0;        // relative drift of int u and int v
  double min_dt = 0.0;
  double max_dt = 0.0;
};

struct SimulationResult {
  NormSeries series;
  SimState final_state;
  MonitorSummary monitors;
  long steps = 0;
};

/// Called with the state and a running checkpoint index.
using CheckpointSink = std::function<void(const SimState&, int)>;

/// Advances the initial data to params.t_end, recording a norm row at t=0,
/// every output_stride steps and at t_end. The step size is
/// min(dt, cfl h / max(1, ||grad psi||_inf)), re-evaluated at each output.
///
/// Aborts with NumericalFailure when a step goes non-finite or negative
/// beyond pos_tol, when the boundary density exceeds boundary_tol * max
/// ("domain saturation: increase L") or when the spectral tail exceeds
/// tail_tol (under-resolution). Throws ContractViolation for unresolved or
/// negative initial data.
SimulationResult simulate(const InitialData& init, const GridSpec& grid,
                          const SolverParams& params, const DiagnosticsSpec& spec = {},
                          const CheckpointSink& checkpoint = {});

/// Same, starting from explicit fields.
SimulationResult simulate(const RealField& u0, const RealField& v0, const SolverParams& params,
                          const DiagnosticsSpec& spec = {},
                          const CheckpointSink& checkpoint = {});

}  // namespace fpnp
