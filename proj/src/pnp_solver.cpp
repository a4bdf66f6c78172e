#include "fpnp/pnp_solver.hpp"

#include <cmath>
#include <sstream>

#include "fpnp/errors.hpp"
#include "fpnp/rng.hpp"
#include "fpnp/spectral.hpp"

namespace fpnp {

void validate(const SolverParams& params) {
  validate(params.exps);
  if (!(params.dt > 0.0) || !std::isfinite(params.dt)) {
    throw ContractViolation("time step must be positive");
  }
  if (!(params.t_end >= 0.0) || !std::isfinite(params.t_end)) {
    throw ContractViolation("final time must be >= 0");
  }
  if (!(params.dealias_fraction > 0.0 && params.dealias_fraction <= 1.0)) {
    throw ContractViolation("dealias fraction must lie in (0, 1]");
  }
  if (params.output_stride < 1) throw ContractViolation("output stride must be >= 1");
  if (!(params.pos_tol > 0.0) || !(params.tail_tol > 0.0) || !(params.boundary_tol > 0.0)) {
    throw ContractViolation("tolerances must be positive");
  }
  if (!(params.cfl > 0.0)) throw ContractViolation("CFL number must be positive");
  if (params.checkpoint_stride < 0) throw ContractViolation("checkpoint stride must be >= 0");
}

SimState make_state(double t, RealField u, RealField v) {
  require_same_grid(u.grid, v.grid);
  SimState state;
  state.t = t;
  state.psi = inv_laplacian(u - v);
  state.u = std::move(u);
  state.v = std::move(v);
  return state;
}

namespace {

void check_bumps(const std::vector<Bump>& bumps, int d, const char* species) {
  if (bumps.empty()) {
    throw ContractViolation(std::string("initial data for ") + species + " has no components");
  }
  for (const auto& b : bumps) {
    if (!(b.amplitude > 0.0) || !(b.width > 0.0)) {
      throw ContractViolation("initial components need positive amplitude and width");
    }
    if (static_cast<int>(b.center.size()) != d) {
      throw ContractViolation("initial component center must have d coordinates");
    }
  }
}

double mixture(const std::vector<Bump>& bumps, const Eigen::VectorXd& x) {
  double value = 0.0;
  for (const auto& b : bumps) {
    double r2 = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      const double dx = x[j] - b.center[static_cast<std::size_t>(j)];
      r2 += dx * dx;
    }
    value += b.amplitude * std::exp(-r2 / (b.width * b.width));
  }
  return value;
}

struct Ripple {
  std::vector<Eigen::VectorXd> wavevectors;
  std::vector<double> weights;
  std::vector<double> phases;
};

Ripple draw_ripple(const InitialData& init, const GridSpec& grid, std::uint64_t stream) {
  Ripple r;
  auto rng = make_rng(init.seed, stream);
  double narrowest = INFINITY;
  for (const auto& b : init.u) narrowest = std::min(narrowest, b.width);
  for (const auto& b : init.v) narrowest = std::min(narrowest, b.width);
  const double dk = grid.wavenumber_step();
  const int max_index = std::max(1, static_cast<int>(std::floor(1.0 / (narrowest * dk))));
  std::uniform_int_distribution<int> index(-max_index, max_index);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double total = 0.0;
  for (int m = 0; m < init.modes; ++m) {
    Eigen::VectorXd k(grid.d);
    do {
      for (int j = 0; j < grid.d; ++j) k[j] = dk * index(rng);
    } while (k.norm() == 0.0);
    r.wavevectors.push_back(k);
    r.weights.push_back(unit(rng) + 0.1);
    r.phases.push_back(2.0 * M_PI * unit(rng));
    total += r.weights.back();
  }
  for (auto& w : r.weights) w /= total;
  return r;
}

RealField sample_species(const InitialData& init, const std::vector<Bump>& bumps,
                         const GridSpec& grid, std::uint64_t stream) {
  if (init.family == InitialFamily::GaussianMixture) {
    return sample(grid, [&](const Eigen::VectorXd& x) { return mixture(bumps, x); });
  }
  const Ripple ripple = draw_ripple(init, grid, stream);
  return sample(grid, [&](const Eigen::VectorXd& x) {
    double modulation = 0.0;
    for (std::size_t m = 0; m < ripple.weights.size(); ++m) {
      modulation += ripple.weights[m] * std::cos(ripple.wavevectors[m].dot(x) + ripple.phases[m]);
    }
    return mixture(bumps, x) * (1.0 + init.ripple * modulation);
  });
}

}  // namespace

void validate(const InitialData& init, int d) {
  check_bumps(init.u, d, "u");
  check_bumps(init.v, d, "v");
  if (init.family == InitialFamily::BandLimitedPositive) {
    if (init.modes < 1) throw ContractViolation("band-limited data needs at least one mode");
    if (!(init.ripple >= 0.0 && init.ripple < 1.0)) {
      throw ContractViolation("ripple amplitude must lie in [0, 1) to keep the data positive");
    }
  }
}

std::pair<RealField, RealField> build_initial_fields(const InitialData& init, const GridSpec& grid) {
  validate(grid);
  validate(init, grid.d);
  return {sample_species(init, init.u, grid, 0), sample_species(init, init.v, grid, 1)};
}

double phi1(double z) {
  if (std::abs(z) < 1e-4) return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
  return std::expm1(z) / z;
}

double phi2(double z) {
  if (std::abs(z) < 1e-4) return 0.5 + z / 6.0 + z * z / 24.0 + z * z * z / 120.0;
  return (std::expm1(z) - z) / (z * z);
}

Etdrk2Stepper::Etdrk2Stepper(const GridSpec& grid, const FracExponents& exps,
                             double dealias_fraction)
    : grid_(grid), exps_(exps), dealias_fraction_(dealias_fraction) {
  validate(grid);
  validate(exps);
  auto table = wave_table(grid);
  const double cutoff = dealias_fraction * (grid.n / 2) * (1.0 + 1e-12);
  mask_ = (table->max_index.cast<double>() <= cutoff).cast<double>();
}

void Etdrk2Stepper::prepare(double dt) {
  if (dt == cached_dt_) return;
  auto table = wave_table(grid_);
  auto build = [&](double order) {
    Coefficients c;
    const auto size = table->magnitude.size();
    c.decay.resize(size);
    c.phi1.resize(size);
    c.phi2.resize(size);
    for (Eigen::Index i = 0; i < size; ++i) {
      const double k = table->magnitude[i];
      const double z = k > 0.0 ? -std::pow(k, order) * dt : 0.0;
      c.decay[i] = std::exp(z);
      c.phi1[i] = dt * phi1(z);
      c.phi2[i] = dt * phi2(z);
    }
    return c;
  };
  cu_ = build(exps_.alpha);
  cv_ = build(exps_.beta);
  cached_dt_ = dt;
}

std::pair<SpectralField, SpectralField> Etdrk2Stepper::nonlinear(const SpectralField& u,
                                                                 const SpectralField& v) {
  auto table = wave_table(grid_);
  const std::complex<double> I(0.0, 1.0);
  const Eigen::ArrayXcd psi_hat =
      (u.coeffs - v.coeffs) * mask_ *
      table->magnitude.unaryExpr([](double k) { return k > 0.0 ? -1.0 / (k * k) : 0.0; });

  const RealField ud = inverse(SpectralField(grid_, u.coeffs * mask_));
  const RealField vd = inverse(SpectralField(grid_, v.coeffs * mask_));

  SpectralField nu = SpectralField::zeros(grid_);
  SpectralField nv = SpectralField::zeros(grid_);
  Eigen::ArrayXd grad2 = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(grid_.size()));
  for (int j = 0; j < grid_.d; ++j) {
    const auto& kj = table->derivative[static_cast<std::size_t>(j)];
    const RealField g = inverse(SpectralField(grid_, I * psi_hat * kj));
    grad2 += g.values.square();
    const SpectralField flux_u = forward(RealField(grid_, ud.values * g.values));
    const SpectralField flux_v = forward(RealField(grid_, vd.values * g.values));
    nu.coeffs -= I * kj * flux_u.coeffs * mask_;
    nv.coeffs += I * kj * flux_v.coeffs * mask_;
  }
  // Divergence form: the mean mode is identically zero.
  nu.coeffs[0] = 0.0;
  nv.coeffs[0] = 0.0;
  last_grad_psi_inf_ = std::sqrt(grad2.maxCoeff());
  return {std::move(nu), std::move(nv)};
}

void Etdrk2Stepper::advance(SpectralField& u, SpectralField& v, double dt) {
  prepare(dt);
  auto [nu, nv] = nonlinear(u, v);
  SpectralField ua(grid_, cu_.decay * u.coeffs + cu_.phi1 * nu.coeffs);
  SpectralField va(grid_, cv_.decay * v.coeffs + cv_.phi1 * nv.coeffs);
  auto [nua, nva] = nonlinear(ua, va);
  u.coeffs = ua.coeffs + cu_.phi2 * (nua.coeffs - nu.coeffs);
  v.coeffs = va.coeffs + cv_.phi2 * (nva.coeffs - nv.coeffs);
}

std::pair<RealField, RealField> nonlinear_rhs(const SimState& state, double dealias_fraction) {
  require_same_grid(state.u.grid, state.v.grid);
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0)) {
    throw ContractViolation("dealias fraction must lie in (0, 1]");
  }
  // The exponents do not enter the drift term.
  Etdrk2Stepper stepper(state.u.grid, FracExponents{1.0, 1.0}, dealias_fraction);
  auto [nu, nv] = stepper.nonlinear(forward(state.u), forward(state.v));
  return {inverse(nu), inverse(nv)};
}

void check_state(const RealField& u, const RealField& v, double pos_tol, double t,
                 double last_good_time) {
  if (!u.all_finite() || !v.all_finite()) {
    std::ostringstream os;
    os << "blow-up or instability at t=" << t << " (last good time " << last_good_time << ")";
    throw NumericalFailure(NumericalFailure::Kind::Instability, os.str(), last_good_time);
  }
  auto check = [&](const RealField& f, const char* name) {
    const double scale = f.values.abs().maxCoeff();
    if (f.min() < -pos_tol * scale) {
      std::ostringstream os;
      os << "positivity violation in " << name << " at t=" << t << ": min=" << f.min()
         << " below -pos_tol*max=" << -pos_tol * scale;
      throw NumericalFailure(NumericalFailure::Kind::Positivity, os.str(), last_good_time);
    }
  };
  check(u, "u");
  check(v, "v");
}

SimState step(const SimState& state, const SolverParams& params) {
  validate(params);
  require_same_grid(state.u.grid, state.v.grid);
  Etdrk2Stepper stepper(state.u.grid, params.exps, params.dealias_fraction);
  SpectralField u = forward(state.u);
  SpectralField v = forward(state.v);
  stepper.advance(u, v, params.dt);
  RealField un = inverse(u);
  RealField vn = inverse(v);
  const double t = state.t + params.dt;
  check_state(un, vn, params.pos_tol, t, state.t);
  return make_state(t, std::move(un), std::move(vn));
}

}  // namespace fpnp
