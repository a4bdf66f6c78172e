#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fpnp/pnp_solver.hpp"
#include "fpnp/spectral.hpp"

namespace fpnp {

/// Which norms a run records.
struct DiagnosticsSpec {
  std::vector<double> p_list{1.0, 2.0, 4.0};
  std::vector<double> s_list{0.5, 1.0, 1.5, 2.0};

  friend bool operator==(const DiagnosticsSpec&, const DiagnosticsSpec&) = default;
};

/// Shortest round-trip text for an exponent; infinity prints as "inf".
std::string format_number(double value);

/// Column names of the norm time series, in CSV order:
///   t, u_L1, u_L2, u_Linf, v_L1, v_L2, v_Linf, F_<p>..., F_inf,
///   u_Hdot_<s>..., v_Hdot_<s>..., grad_psi_Linf, u_profile_L2,
///   v_profile_L2, wiener_uv
std::vector<std::string> norm_series_columns(const DiagnosticsSpec& spec);

struct NormSeries {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// First recorded time at which F_inf fell to the saturation level, or the
  /// last time when it never did. NaN when unknown.
  double saturation_time = std::numeric_limits<double>::quiet_NaN();

  std::size_t index_of(std::string_view column) const;
  std::vector<double> column(std::string_view name) const;
  std::vector<double> times() const { return column("t"); }
  /// Throws ContractViolation unless t increases strictly and all entries
  /// are finite and >= 0.
  void validate() const;
};

/// One row of the series for `state`; u0_hat/v0_hat are the initial spectra.
std::vector<double> norm_row(const SimState& state, const SpectralField& u0_hat,
                             const SpectralField& v0_hat, const FracExponents& exps,
                             const DiagnosticsSpec& spec);

/// F_p = ||u||_p^p + ||v||_p^p; for p = infinity the sum of sup norms.
double lyapunov(const SimState& state, double p);

struct FitWindow {
  double t0 = 0.0;
  double t1 = 0.0;

  friend bool operator==(const FitWindow&, const FitWindow&) = default;
};

struct DecayFit {
  std::string column;
  FitWindow window;
  double exponent = 0.0;
  double amplitude = 0.0;
  double r_squared = 0.0;
  int samples = 0;
};

/// [t_end/8, t_cut] with t_cut the recorded saturation time (t_end if none).
FitWindow default_window(const NormSeries& series);

DecayFit fit_decay(const NormSeries& series, std::string_view column,
                   std::optional<FitWindow> window = std::nullopt);

struct RatePrediction {
  std::string tag;       // lp_decay, sobolev_low, sobolev_mid, sobolev_high, profile, potential
  double parameter = 0;  // p, s or r (NaN when not applicable)
  double exponent = 0;   // predicted decay rate (positive = decaying)
};

/// Decay rates asserted for the pair: L^p norms d/M (1 - 1/p); Hdot^s for
/// s <= 1, d/M (1-s)/2; Hdot^s for s <= 2, d/M (2-s)/4; Hdot^r below the
/// data regularity, d/M (reg - r)/(2 reg); the profile difference (d-1)/M - 1;
/// ||grad psi||_inf, (d-1)/M. M = max(alpha, beta).
std::vector<RatePrediction> predicted_exponents(int d, const FracExponents& exps,
                                                const std::vector<double>& p_list,
                                                const std::vector<double>& s_list,
                                                double regularity = 4.0);

/// Algebraic constraints on (d, alpha, beta) for the second-order Sobolev
/// decay. Degenerate denominators are reported as failed conditions.
struct ConditionReport {
  int d = 0;
  double alpha = 0.0;
  double beta = 0.0;
  bool dimension_bound = false;  // 2d / (4 + 3 min) < 1
  bool ratio_bound = false;      // min/max d/4 (2 + 2d/(4 + 3 max - 2d)) > 1
  bool gamma_bound = false;      // Gamma <= 2
  bool closeness = false;        // (4 + 3 max)/(4 + 3 min) < 1 + d/(4 + 3 max - d)
  bool ratio_floor = false;      // min/max d/2 >= 1
  double gamma = 0.0;
  bool eligible = false;
  std::vector<std::string> notes;
};

ConditionReport check_conditions(int d, const FracExponents& exps);

/// (||u - e^{-t Lambda^alpha} u0||_2, ||v - e^{-t Lambda^beta} v0||_2).
std::pair<double, double> profile_difference(const SimState& state, const RealField& u0,
                                             const RealField& v0, const FracExponents& exps);

/// max over the grid of |grad psi|.
double grad_psi_inf(const SimState& state);

/// Spectral energy in modes with max_j |index_j| > 7n/16 (the top eighth of
/// each axis) over the total energy; 0 for the zero field.
double tail_fraction(const SpectralField& F);
double tail_fraction(const RealField& f);

/// max |f| on the boundary shell (any index 0 coordinate, i.e. x_j = -L)
/// over max |f|; 0 for the zero field.
double boundary_fraction(const RealField& f);

struct ResolutionMonitors {
  double tail_fraction = 0.0;
  double boundary_fraction = 0.0;
};

/// Worst of the two species.
ResolutionMonitors resolution_monitors(const SimState& state);

}  // namespace fpnp
