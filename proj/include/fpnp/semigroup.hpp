#pragma once

#include <vector>

#include "fpnp/field.hpp"

namespace fpnp {

/// e^{-t Lambda^a} f. Requires 0 < a <= 2 and t >= 0.
RealField heat_propagate(const RealField& f, double a, double t);
SpectralField heat_propagate(const SpectralField& F, double a, double t);

/// Geometric time grid t_j = t0 * rho^j, j = 0..count-1, ending at t1.
std::vector<double> geometric_times(double t0, double t1, int count);

/// Saturation level of a propagated field on the torus: fits must stop once
/// ||e^{-t Lambda^a} f||_inf <= kSaturationFactor * |mean(f)|.
inline constexpr double kSaturationFactor = 10.0;

/// First time on `times` at which the propagated field reaches the
/// saturation level (the last time on the grid when it never does).
double saturation_time(const RealField& f, double a, const std::vector<double>& times);

struct HypercontractivitySample {
  double t;
  double ratio;  // ||e^{-t Lambda^a} f||_2 t^{d/(2a)} / ||f||_1
};

std::vector<HypercontractivitySample> hypercontractivity_probe(const RealField& f, double a,
                                                               const std::vector<double>& times);

struct LinfDecayReport {
  double a = 0.0;
  double p = 1.0;
  double predicted_exponent = 0.0;  // -d/(a p)
  double fitted_exponent = 0.0;     // slope of log ||.||_inf against log(1+t)
  double fitted_amplitude = 0.0;
  double r_squared = 0.0;
  /// Smallest C with ||e^{-t Lambda^a} f||_inf <= C max(||f||_p, ||f||_inf) / (1+t)^{d/(ap)}
  /// over the sampled times.
  double bound_constant = 0.0;
  double saturation_time = 0.0;
  std::vector<double> times;
  std::vector<double> linf;
};

/// Samples the L^inf decay of the propagated nonnegative f on `times` and
/// fits the power law. Throws NumericalFailure(Saturation) if a sampled time
/// lies past the saturation cut and FitError for degenerate series.
LinfDecayReport semigroup_linf_decay_check(const RealField& f, double a, double p,
                                           const std::vector<double>& times);

}  // namespace fpnp
