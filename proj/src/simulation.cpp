#include "fpnp/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fpnp/errors.hpp"
#include "fpnp/semigroup.hpp"
#include "fpnp/spectral.hpp"

namespace fpnp {
namespace {

void check_initial(const RealField& f, const char* name, const SolverParams& params) {
  if (!f.all_finite()) throw ContractViolation(std::string("initial ") + name + " is not finite");
  const double peak = f.values.abs().maxCoeff();
  if (f.min() < -params.pos_tol * peak) {
    throw ContractViolation(std::string("initial ") + name + " must be nonnegative");
  }
  const double tail = tail_fraction(f);
  if (tail > params.tail_tol) {
    std::ostringstream os;
    os << "initial " << name << " is not spectrally resolved (tail fraction " << tail << ")";
    throw ContractViolation(os.str());
  }
}

}  // namespace

SimulationResult simulate(const InitialData& init, const GridSpec& grid,
                          const SolverParams& params, const DiagnosticsSpec& spec,
                          const CheckpointSink& checkpoint) {
  auto [u0, v0] = build_initial_fields(init, grid);
  return simulate(u0, v0, params, spec, checkpoint);
}

SimulationResult simulate(const RealField& u0, const RealField& v0, const SolverParams& params,
                          const DiagnosticsSpec& spec, const CheckpointSink& checkpoint) {
  validate(params);
  validate(u0.grid);
  require_same_grid(u0.grid, v0.grid);
  check_initial(u0, "u", params);
  check_initial(v0, "v", params);
  const GridSpec grid = u0.grid;

  SimulationResult result;
  result.series.columns = norm_series_columns(spec);
  MonitorSummary& mon = result.monitors;
  mon.min_dt = INFINITY;
  mon.min_relative_density = 1.0;

  SpectralField u = forward(u0);
  SpectralField v = forward(v0);
  const SpectralField u0_hat = u;
  const SpectralField v0_hat = v;
  const double mass_u = u0_hat.coeffs[0].real();
  const double mass_v = v0_hat.coeffs[0].real();
  const double saturation_level = kSaturationFactor * (std::abs(mass_u) + std::abs(mass_v));

  Etdrk2Stepper stepper(grid, params.exps, params.dealias_fraction);
  const double h = grid.spacing();

  double t = 0.0;
  double last_good = 0.0;
  long steps = 0;
  int outputs = 0;
  int checkpoints = 0;
  bool saturated = false;

  auto record = [&](const SimState& state) {
    auto row = norm_row(state, u0_hat, v0_hat, params.exps, spec);
    const ResolutionMonitors rm = resolution_monitors(state);
    mon.max_tail_fraction = std::max(mon.max_tail_fraction, rm.tail_fraction);
    mon.max_boundary_fraction = std::max(mon.max_boundary_fraction, rm.boundary_fraction);
    if (rm.boundary_fraction > params.boundary_tol) {
      std::ostringstream os;
      os << "domain saturation: increase L (boundary fraction " << rm.boundary_fraction
         << " > " << params.boundary_tol << " at t=" << state.t << ")";
      throw NumericalFailure(NumericalFailure::Kind::Saturation, os.str(), last_good);
    }
    if (rm.tail_fraction > params.tail_tol) {
      std::ostringstream os;
      os << "under-resolution: spectral tail fraction " << rm.tail_fraction << " > "
         << params.tail_tol << " at t=" << state.t;
      throw NumericalFailure(NumericalFailure::Kind::Resolution, os.str(), last_good);
    }
    const double f_inf = row[result.series.index_of("F_inf")];
    if (!saturated && f_inf <= saturation_level) {
      saturated = true;
      result.series.saturation_time = state.t;
    }
    result.series.rows.push_back(std::move(row));
    ++outputs;
    const bool final_row = state.t >= params.t_end;
    if (checkpoint &&
        (outputs == 1 || final_row ||
         (params.checkpoint_stride > 0 && (outputs - 1) % params.checkpoint_stride == 0))) {
      checkpoint(state, checkpoints++);
    }
  };

  auto physical_state = [&](double time) { return make_state(time, inverse(u), inverse(v)); };

  SimState state = physical_state(0.0);
  record(state);
  double grad_inf = grad_psi_inf(state);

  while (t < params.t_end) {
    const double dt_bound = params.cfl * h / std::max(1.0, grad_inf);
    const double dt_base = std::min(params.dt, dt_bound);
    for (int k = 0; k < params.output_stride && t < params.t_end; ++k) {
      double dt = dt_base;
      // Land exactly on t_end; absorb a tiny remainder into this step.
      if (t + dt >= params.t_end * (1.0 - 1e-12) || params.t_end - (t + dt) < 1e-9 * dt) {
        dt = params.t_end - t;
      }
      stepper.advance(u, v, dt);
      const double t_next = (dt == params.t_end - t) ? params.t_end : t + dt;
      RealField up = inverse(u);
      RealField vp = inverse(v);
      check_state(up, vp, params.pos_tol, t_next, last_good);
      for (const RealField* f : {&up, &vp}) {
        const double peak = f->values.abs().maxCoeff();
        if (peak > 0.0) mon.min_relative_density = std::min(mon.min_relative_density, f->min() / peak);
      }
      mon.min_dt = std::min(mon.min_dt, dt);
      mon.max_dt = std::max(mon.max_dt, dt);
      t = t_next;
      last_good = t;
      ++steps;
      if (k + 1 == params.output_stride || t >= params.t_end) {
        state = make_state(t, std::move(up), std::move(vp));
      }
    }
    record(state);
    grad_inf = grad_psi_inf(state);
    if (mass_u != 0.0) {
      mon.max_mass_drift = std::max(mon.max_mass_drift, std::abs(u.coeffs[0].real() - mass_u) / std::abs(mass_u));
    }
    if (mass_v != 0.0) {
      mon.max_mass_drift = std::max(mon.max_mass_drift, std::abs(v.coeffs[0].real() - mass_v) / std::abs(mass_v));
    }
  }
  if (!saturated) result.series.saturation_time = t;
  if (steps == 0) mon.min_dt = 0.0;
  result.final_state = std::move(state);
  result.steps = steps;
  return result;
}

}  // namespace fpnp
