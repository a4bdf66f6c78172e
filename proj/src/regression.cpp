#include "fpnp/regression.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "fpnp/errors.hpp"

namespace fpnp {

PowerLawFit fit_power_law(std::span<const double> times, std::span<const double> values,
                          int min_samples) {
  if (times.size() != values.size()) throw FitError("unfittable series: length mismatch");
  const auto count = static_cast<Eigen::Index>(times.size());
  if (count < min_samples || count < 2) {
    throw FitError("unfittable series: " + std::to_string(count) + " samples, need " +
                   std::to_string(min_samples));
  }
  Eigen::MatrixXd design(count, 2);
  Eigen::VectorXd y(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    const double v = values[static_cast<std::size_t>(i)];
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw FitError("unfittable series: nonpositive or non-finite value");
    }
    design(i, 0) = 1.0;
    design(i, 1) = std::log1p(times[static_cast<std::size_t>(i)]);
    y[i] = std::log(v);
  }
  if (design.col(1).maxCoeff() - design.col(1).minCoeff() <= 0.0) {
    throw FitError("unfittable series: window has zero extent");
  }
  const Eigen::Vector2d beta = design.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd residual = y - design * beta;
  const double ss_res = residual.squaredNorm();
  const double ss_tot = (y.array() - y.mean()).matrix().squaredNorm();

  PowerLawFit fit;
  fit.exponent = beta[1];
  fit.amplitude = std::exp(beta[0]);
  // A constant series is fitted exactly.
  fit.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
  return fit;
}

}  // namespace fpnp
