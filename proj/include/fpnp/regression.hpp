#pragma once

#include <span>

namespace fpnp {

struct PowerLawFit {
  double exponent = 0.0;   // slope of log(value) against log(1+t)
  double amplitude = 0.0;  // exp(intercept)
  double r_squared = 0.0;
};

/// Ordinary least squares of log(values) on log(1+times). Needs at least
/// `min_samples` points and strictly positive values; throws FitError
/// otherwise.
PowerLawFit fit_power_law(std::span<const double> times, std::span<const double> values,
                          int min_samples = 8);

}  // namespace fpnp
