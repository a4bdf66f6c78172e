#include "fpnp/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fpnp/errors.hpp"
#include "fpnp/regression.hpp"
#include "fpnp/spectral.hpp"

namespace fpnp {
namespace {

void require_order(double a) {
  if (!(a > 0.0 && a <= 2.0)) throw ContractViolation("propagator order must lie in (0, 2]");
}

}  // namespace

SpectralField heat_propagate(const SpectralField& F, double a, double t) {
  require_order(a);
  if (!(t >= 0.0)) throw ContractViolation("propagation time must be >= 0");
  if (t == 0.0) return F;
  return apply_radial(F, [a, t](double k) { return std::exp(-t * std::pow(k, a)); });
}

RealField heat_propagate(const RealField& f, double a, double t) {
  require_order(a);
  if (t == 0.0) return f;
  return inverse(heat_propagate(forward(f), a, t));
}

std::vector<double> geometric_times(double t0, double t1, int count) {
  if (!(t0 > 0.0) || !(t1 > t0) || count < 2) {
    throw ContractViolation("geometric time grid needs 0 < t0 < t1 and count >= 2");
  }
  std::vector<double> times(static_cast<std::size_t>(count));
  const double ratio = std::pow(t1 / t0, 1.0 / (count - 1));
  for (int j = 0; j < count; ++j) times[static_cast<std::size_t>(j)] = t0 * std::pow(ratio, j);
  times.back() = t1;
  return times;
}

double saturation_time(const RealField& f, double a, const std::vector<double>& times) {
  if (times.empty()) throw ContractViolation("empty time grid");
  const SpectralField F = forward(f);
  const double level = kSaturationFactor * std::abs(F.coeffs[0].real());
  for (double t : times) {
    if (norm_lp(inverse(heat_propagate(F, a, t)), INFINITY) <= level) return t;
  }
  return times.back();
}

std::vector<HypercontractivitySample> hypercontractivity_probe(const RealField& f, double a,
                                                               const std::vector<double>& times) {
  const double mass = norm_lp(f, 1.0);
  if (!(mass > 0.0)) throw ContractViolation("hypercontractivity probe needs ||f||_1 > 0");
  const SpectralField F = forward(f);
  const double power = f.grid.d / (2.0 * a);
  std::vector<HypercontractivitySample> out;
  out.reserve(times.size());
  for (double t : times) {
    if (!(t > 0.0)) throw ContractViolation("probe times must be positive");
    // ||.||_2 is evaluated on the coefficients (Parseval).
    const double l2 = coefficient_norm(heat_propagate(F, a, t));
    out.push_back({t, l2 * std::pow(t, power) / mass});
  }
  return out;
}

LinfDecayReport semigroup_linf_decay_check(const RealField& f, double a, double p,
                                           const std::vector<double>& times) {
  require_order(a);
  if (!(p >= 1.0)) throw ContractViolation("Lebesgue exponent must be >= 1");
  if (f.min() < 0.0) throw ContractViolation("L^inf decay check needs nonnegative data");
  if (times.empty()) throw ContractViolation("empty time grid");

  LinfDecayReport report;
  report.a = a;
  report.p = p;
  report.predicted_exponent = -f.grid.d / (a * p);
  report.times = times;

  const SpectralField F = forward(f);
  const double level = kSaturationFactor * std::abs(F.coeffs[0].real());
  const double data_norm = std::max(norm_lp(f, p), norm_lp(f, INFINITY));
  report.saturation_time = times.back();
  for (double t : times) {
    const double value = norm_lp(inverse(heat_propagate(F, a, t)), INFINITY);
    if (value <= level && level > 0.0) {
      std::ostringstream os;
      os << "saturation window violated at t=" << t << ": ||.||_inf=" << value
         << " <= " << kSaturationFactor << "*|mean|";
      throw NumericalFailure(NumericalFailure::Kind::Saturation, os.str(), t);
    }
    report.linf.push_back(value);
  }
  PowerLawFit fit;
  try {
    fit = fit_power_law(report.times, report.linf);
  } catch (const FitError&) {
    throw FitError("degenerate series: L^inf decay cannot be fitted");
  }
  report.fitted_exponent = fit.exponent;
  report.fitted_amplitude = fit.amplitude;
  report.r_squared = fit.r_squared;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double c = report.linf[i] * std::pow(1.0 + times[i], f.grid.d / (a * p)) / data_norm;
    report.bound_constant = std::max(report.bound_constant, c);
  }
  return report;
}

}  // namespace fpnp
