#include "fpnp/diagnostics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "fpnp/errors.hpp"
#include "fpnp/regression.hpp"
#include "fpnp/semigroup.hpp"

namespace fpnp {

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  (void)ec;
  return std::string(buffer, end);
}

std::vector<std::string> norm_series_columns(const DiagnosticsSpec& spec) {
  std::vector<std::string> cols{"t", "u_L1", "u_L2", "u_Linf", "v_L1", "v_L2", "v_Linf"};
  for (double p : spec.p_list) {
    if (!std::isinf(p)) cols.push_back("F_" + format_number(p));
  }
  cols.push_back("F_inf");
  for (double s : spec.s_list) cols.push_back("u_Hdot_" + format_number(s));
  for (double s : spec.s_list) cols.push_back("v_Hdot_" + format_number(s));
  for (const char* c : {"grad_psi_Linf", "u_profile_L2", "v_profile_L2", "wiener_uv"}) {
    cols.emplace_back(c);
  }
  return cols;
}

std::size_t NormSeries::index_of(std::string_view name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw ContractViolation("unknown series column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> NormSeries::column(std::string_view name) const {
  const std::size_t j = index_of(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.at(j));
  return out;
}

void NormSeries::validate() const {
  const std::size_t tcol = index_of("t");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != columns.size()) throw ContractViolation("ragged norm series row");
    for (double x : rows[i]) {
      if (!std::isfinite(x) || x < 0.0) throw ContractViolation("norm series entries must be finite and >= 0");
    }
    if (i > 0 && !(rows[i][tcol] > rows[i - 1][tcol])) {
      throw ContractViolation("norm series times must increase strictly");
    }
  }
}

double lyapunov(const SimState& state, double p) {
  if (!(p >= 1.0)) throw ContractViolation("Lyapunov functional needs p >= 1");
  if (std::isinf(p)) return norm_lp(state.u, p) + norm_lp(state.v, p);
  return std::pow(norm_lp(state.u, p), p) + std::pow(norm_lp(state.v, p), p);
}

std::vector<double> norm_row(const SimState& state, const SpectralField& u0_hat,
                             const SpectralField& v0_hat, const FracExponents& exps,
                             const DiagnosticsSpec& spec) {
  const SpectralField uh = forward(state.u);
  const SpectralField vh = forward(state.v);
  std::vector<double> row{state.t};
  for (const RealField* f : {&state.u, &state.v}) {
    row.push_back(norm_lp(*f, 1.0));
    row.push_back(norm_lp(*f, 2.0));
    row.push_back(norm_lp(*f, INFINITY));
  }
  for (double p : spec.p_list) {
    if (!std::isinf(p)) row.push_back(lyapunov(state, p));
  }
  row.push_back(lyapunov(state, INFINITY));
  for (double s : spec.s_list) row.push_back(norm_hs_dot(uh, s));
  for (double s : spec.s_list) row.push_back(norm_hs_dot(vh, s));
  row.push_back(grad_psi_inf(state));
  const SpectralField du(uh.grid, uh.coeffs - heat_propagate(u0_hat, exps.alpha, state.t).coeffs);
  const SpectralField dv(vh.grid, vh.coeffs - heat_propagate(v0_hat, exps.beta, state.t).coeffs);
  row.push_back(coefficient_norm(du));
  row.push_back(coefficient_norm(dv));
  row.push_back(wiener_norm(uh) + wiener_norm(vh));
  return row;
}

FitWindow default_window(const NormSeries& series) {
  const auto t = series.times();
  if (t.empty()) throw FitError("unfittable series: no rows");
  const double t_end = t.back();
  double t_cut = std::isnan(series.saturation_time) ? t_end : series.saturation_time;
  return {t_end / 8.0, std::min(t_cut, t_end)};
}

DecayFit fit_decay(const NormSeries& series, std::string_view column,
                   std::optional<FitWindow> window) {
  const FitWindow w = window.value_or(default_window(series));
  if (!(w.t1 > w.t0)) throw FitError("unfittable series: empty fit window");
  const auto t = series.times();
  const auto y = series.column(column);
  std::vector<double> ts, ys;
  const double slack = 1e-12 * std::max(1.0, std::abs(w.t1));
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= w.t0 - slack && t[i] <= w.t1 + slack) {
      ts.push_back(t[i]);
      ys.push_back(y[i]);
    }
  }
  const PowerLawFit fit = fit_power_law(ts, ys);
  DecayFit out;
  out.column = std::string(column);
  out.window = w;
  out.exponent = fit.exponent;
  out.amplitude = fit.amplitude;
  out.r_squared = fit.r_squared;
  out.samples = static_cast<int>(ts.size());
  return out;
}

std::vector<RatePrediction> predicted_exponents(int d, const FracExponents& exps,
                                                const std::vector<double>& p_list,
                                                const std::vector<double>& s_list,
                                                double regularity) {
  validate(exps);
  if (d < 1 || d > 3) throw ContractViolation("dimension must be 1, 2 or 3");
  const double rate = d / exps.max();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<RatePrediction> out;
  for (double p : p_list) {
    if (!(p >= 1.0)) throw ContractViolation("Lebesgue exponent must be >= 1");
    out.push_back({"lp_decay", p, std::isinf(p) ? rate : rate * (1.0 - 1.0 / p)});
  }
  for (double s : s_list) {
    if (s >= 0.0 && s <= 1.0) out.push_back({"sobolev_low", s, rate * (1.0 - s) / 2.0});
  }
  for (double s : s_list) {
    if (s >= 0.0 && s <= 2.0) out.push_back({"sobolev_mid", s, rate * (2.0 - s) / 4.0});
  }
  for (double r : s_list) {
    if (r >= 0.0 && r <= regularity) {
      out.push_back({"sobolev_high", r, rate * (regularity - r) / (2.0 * regularity)});
    }
  }
  out.push_back({"profile", nan, (d - 1) / exps.max() - 1.0});
  out.push_back({"potential", nan, (d - 1) / exps.max()});
  return out;
}

ConditionReport check_conditions(int d, const FracExponents& exps) {
  validate(exps);
  if (d < 1 || d > 3) throw ContractViolation("dimension must be 1, 2 or 3");
  ConditionReport r;
  r.d = d;
  r.alpha = exps.alpha;
  r.beta = exps.beta;
  const double lo = exps.min();
  const double hi = exps.max();

  r.dimension_bound = 2.0 * d / (4.0 + 3.0 * lo) < 1.0;

  const double ratio_den = 4.0 + 3.0 * hi - 2.0 * d;
  if (ratio_den > 0.0) {
    r.ratio_bound = (lo / hi) * (d / 4.0) * (2.0 + 2.0 * d / ratio_den) > 1.0;
  } else {
    r.notes.push_back("4+3max-2d <= 0: ratio condition undefined");
  }

  const double gamma_den = 4.0 + 3.0 * lo - d;
  if (gamma_den > 0.0) {
    r.gamma = d / gamma_den * (2.0 + 4.0 * std::abs(exps.alpha - exps.beta) / (4.0 + 3.0 * lo));
    r.gamma_bound = r.gamma <= 2.0;
  } else {
    r.gamma = std::numeric_limits<double>::infinity();
    r.notes.push_back("4+3min-d <= 0: Gamma undefined");
  }

  const double close_den = 4.0 + 3.0 * hi - d;
  if (close_den > 0.0) {
    r.closeness = (4.0 + 3.0 * hi) / (4.0 + 3.0 * lo) < 1.0 + d / close_den;
  } else {
    r.notes.push_back("4+3max-d <= 0: closeness condition undefined");
  }
  r.ratio_floor = (lo / hi) * (d / 2.0) >= 1.0;

  const bool gamma_is_two = std::abs(r.gamma - 2.0) <= 1e-12;
  r.eligible = r.dimension_bound && r.ratio_bound && r.gamma_bound &&
               (gamma_is_two || (r.closeness && r.ratio_floor));
  if (!r.dimension_bound) r.notes.push_back("dimension bound 2d/(4+3min) < 1 fails");
  if (!r.ratio_bound) r.notes.push_back("ratio condition fails");
  if (!r.gamma_bound) r.notes.push_back("Gamma <= 2 fails");
  if (!gamma_is_two && r.gamma_bound) {
    if (!r.closeness) r.notes.push_back("closeness condition (needed for Gamma < 2) fails");
    if (!r.ratio_floor) r.notes.push_back("min/max d/2 >= 1 (needed for Gamma < 2) fails");
  }
  return r;
}

std::pair<double, double> profile_difference(const SimState& state, const RealField& u0,
                                             const RealField& v0, const FracExponents& exps) {
  require_same_grid(state.u.grid, u0.grid);
  require_same_grid(state.v.grid, v0.grid);
  const RealField du = state.u - heat_propagate(u0, exps.alpha, state.t);
  const RealField dv = state.v - heat_propagate(v0, exps.beta, state.t);
  return {norm_lp(du, 2.0), norm_lp(dv, 2.0)};
}

double grad_psi_inf(const SimState& state) {
  const auto grad = gradient(forward(state.psi));
  Eigen::ArrayXd mag2 = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(state.psi.grid.size()));
  for (const auto& g : grad) mag2 += inverse(g).values.square();
  return std::sqrt(mag2.maxCoeff());
}

double tail_fraction(const SpectralField& F) {
  auto table = wave_table(F.grid);
  const Eigen::ArrayXd energy = table->weight * F.coeffs.abs2();
  const double total = energy.sum();
  if (!(total > 0.0)) return 0.0;
  const double threshold = 7.0 * F.grid.n / 16.0;
  const double tail = (table->max_index.cast<double>() > threshold).select(energy, 0.0).sum();
  return tail / total;
}

double tail_fraction(const RealField& f) { return tail_fraction(forward(f)); }

double boundary_fraction(const RealField& f) {
  const double peak = f.values.abs().maxCoeff();
  if (!(peak > 0.0)) return 0.0;
  const GridSpec& g = f.grid;
  double edge = 0.0;
  const std::size_t total = g.size();
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rest = i;
    bool on_shell = false;
    for (int j = 0; j < g.d; ++j) {
      if (rest % static_cast<std::size_t>(g.n) == 0) on_shell = true;
      rest /= static_cast<std::size_t>(g.n);
    }
    if (on_shell) edge = std::max(edge, std::abs(f.values[static_cast<Eigen::Index>(i)]));
  }
  return edge / peak;
}

ResolutionMonitors resolution_monitors(const SimState& state) {
  return {std::max(tail_fraction(state.u), tail_fraction(state.v)),
          std::max(boundary_fraction(state.u), boundary_fraction(state.v))};
}

}  // namespace fpnp
