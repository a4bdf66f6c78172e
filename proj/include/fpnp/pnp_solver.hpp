#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fpnp/field.hpp"

namespace fpnp {

struct SolverParams {
  FracExponents exps;
  double dt = 0.05;
  double t_end = 1.0;
  double dealias_fraction = 2.0 / 3.0;
  int output_stride = 10;
  double pos_tol = 1e-8;
  double tail_tol = 1e-6;
  double boundary_tol = 1e-6;
  /// Advective step bound dt <= cfl * h / max(1, ||grad psi||_inf).
  double cfl = 0.5;
  /// Number of output rows between checkpoints; 0 keeps only the initial and
  /// final states.
  int checkpoint_stride = 0;

  friend bool operator==(const SolverParams&, const SolverParams&) = default;
};

void validate(const SolverParams& params);

/// Electron density u, hole density v and the potential psi solving
/// Lap psi = u - v (zero-mean gauge) at time t.
struct SimState {
  double t = 0.0;
  RealField u;
  RealField v;
  RealField psi;
};

/// Builds a state and computes its potential.
SimState make_state(double t, RealField u, RealField v);

enum class InitialFamily { GaussianMixture, BandLimitedPositive };

/// amplitude * exp(-|x - center|^2 / width^2)
struct Bump {
  double amplitude = 1.0;
  double width = 1.0;
  std::vector<double> center;

  friend bool operator==(const Bump&, const Bump&) = default;
};

struct InitialData {
  InitialFamily family = InitialFamily::GaussianMixture;
  std::vector<Bump> u;
  std::vector<Bump> v;
  /// band_limited_positive only: the Gaussian envelope is modulated by
  /// 1 + ripple * sum_j a_j cos(k_j . x + phi_j) with sum |a_j| = 1 and
  /// `modes` random low lattice modes drawn from `seed`.
  std::uint64_t seed = 0;
  int modes = 4;
  double ripple = 0.3;

  friend bool operator==(const InitialData&, const InitialData&) = default;
};

/// Throws ContractViolation for empty component lists, nonpositive
/// amplitudes or widths, centers of the wrong dimension or bad band-limited
/// settings.
void validate(const InitialData& init, int d);

/// Samples (u0, v0). Throws ContractViolation for empty component lists,
/// nonpositive amplitudes or widths, or centers of the wrong dimension.
std::pair<RealField, RealField> build_initial_fields(const InitialData& init, const GridSpec& grid);

/// (-div(u grad psi), +div(v grad psi)) with psi = inv_laplacian(u - v).
/// Products are formed in physical space from dealiased inputs and the
/// result is dealiased; both outputs have an exactly zero mean.
std::pair<RealField, RealField> nonlinear_rhs(const SimState& state,
                                              double dealias_fraction = 2.0 / 3.0);

/// Second-order exponential time differencing (ETDRK2) for the coupled pair
/// in spectral variables. The fractional diffusion is integrated exactly;
/// the drift is explicit.
class Etdrk2Stepper {
 public:
  Etdrk2Stepper(const GridSpec& grid, const FracExponents& exps, double dealias_fraction);

  /// Advances (u, v) by dt in place.
  void advance(SpectralField& u, SpectralField& v, double dt);

  /// Spectral nonlinear terms; also records ||grad psi||_inf of the
  /// dealiased potential.
  std::pair<SpectralField, SpectralField> nonlinear(const SpectralField& u, const SpectralField& v);

  double last_grad_psi_inf() const { return last_grad_psi_inf_; }

 private:
  struct Coefficients {
    Eigen::ArrayXd decay, phi1, phi2;  // e^z, dt*phi1(z), dt*phi2(z)
  };
  void prepare(double dt);

  GridSpec grid_;
  FracExponents exps_;
  double dealias_fraction_;
  Eigen::ArrayXd mask_;
  double cached_dt_ = -1.0;
  Coefficients cu_, cv_;
  double last_grad_psi_inf_ = 0.0;
};

/// phi1(z) = (e^z - 1)/z and phi2(z) = (e^z - 1 - z)/z^2, by series for |z| < 1e-4.
double phi1(double z);
double phi2(double z);

/// One ETDRK2 step of size params.dt. Throws NumericalFailure for non-finite
/// values (instability) or densities below -pos_tol * max (positivity).
SimState step(const SimState& state, const SolverParams& params);

/// Positivity and finiteness test applied after every step.
void check_state(const RealField& u, const RealField& v, double pos_tol, double t,
                 double last_good_time);

}  // namespace fpnp
