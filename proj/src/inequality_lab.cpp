#include "fpnp/inequality_lab.hpp"

#include <algorithm>
#include <Eigen/Cholesky>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#include "fpnp/errors.hpp"
#include "fpnp/rng.hpp"
#include "fpnp/spectral.hpp"

namespace fpnp {
namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kPi = 3.141592653589793238462643383279502884;

/// -h, used for the minimum-side bound.
class Negated final : public TestFunction {
 public:
  explicit Negated(const TestFunction& h) : h_(h) {}
  int dim() const override { return h_.dim(); }
  double value(const Eigen::VectorXd& x) const override { return -h_.value(x); }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override { return -h_.gradient(x); }
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override { return -h_.hessian(x); }
  double length_scale() const override { return h_.length_scale(); }
  double support_radius() const override { return h_.support_radius(); }
  std::string describe() const override { return "-" + h_.describe(); }
  double shell_difference(const Eigen::VectorXd& x, double r) const override {
    return -h_.shell_difference(x, r);
  }
  const TestFunction& inner() const { return h_; }

 private:
  const TestFunction& h_;
};

const TestFunction& unwrap(const TestFunction& h, double& sign) {
  sign = 1.0;
  const TestFunction* p = &h;
  while (auto n = dynamic_cast<const Negated*>(p)) {
    sign = -sign;
    p = &n->inner();
  }
  return *p;
}

struct FarField {
  double radius = 0.0;
  double value = 0.0;  // int_{|eta|>R} (h(x) - h(x - eta)) |eta|^{-d-a}
  double bound = 0.0;  // bound on the neglected remainder
};

FarField far_field(const TestFunction& h, const Eigen::VectorXd& x, double hx, double a,
                   const OracleParams& params) {
  FarField far;
  const double area = unit_sphere_area(h.dim());
  if (std::isfinite(h.support_radius())) {
    far.radius = params.outer_radius > 0.0 ? params.outer_radius
                                            : x.norm() + h.support_radius();
    far.value = area * hx * std::pow(far.radius, -a) / a;
    return far;
  }
  double sign = 1.0;
  const auto* cos_sum = dynamic_cast<const CosineSum*>(&unwrap(h, sign));
  if (cos_sum == nullptr || h.dim() != 1) {
    throw ContractViolation("non-decaying test functions are supported for cosine sums in d = 1");
  }
  double amp = 0.0;
  for (const auto& m : cos_sum->modes()) amp += std::abs(m.amplitude);
  const double kmin = cos_sum->min_wavenumber();
  // Remainder after one integration by parts: 4 (1+a) sum|a_j| / (k^2 R^{2+a}).
  const double target = 1e-11;
  far.radius = params.outer_radius > 0.0
                   ? params.outer_radius
                   : std::max(40.0 / kmin, std::pow(4.0 * (1.0 + a) / (kmin * kmin * target),
                                                    1.0 / (2.0 + a)));
  const double R = far.radius;
  double oscillatory = 0.0;
  for (const auto& m : cos_sum->modes()) {
    const double k = std::abs(m.wavevector[0]);
    const double c = m.wavevector[0] * x[0] + m.phase;
    if (k == 0.0) {
      oscillatory -= 2.0 * m.amplitude * std::cos(m.phase) * std::pow(R, -a) / a;
      continue;
    }
    oscillatory += m.amplitude * (std::sin(k * R + c) + std::sin(k * R - c)) *
                   std::pow(R, -1.0 - a) / k;
  }
  far.value = area * hx * std::pow(R, -a) / a + sign * oscillatory;
  far.bound = 4.0 * (1.0 + a) * amp / (kmin * kmin * std::pow(R, 2.0 + a));
  return far;
}

struct RawIntegral {
  double value = 0.0;
  double error = 0.0;
};

/// Kernel integral without the constant for a given inner cutoff.
RawIntegral raw_integral(const TestFunction& h, const Eigen::VectorXd& x, double lap,
                         double a, double eps, const FarField& far, const OracleParams& params) {
  const int d = h.dim();
  const double area = unit_sphere_area(d);
  RawIntegral out;
  out.value = -(area / (2.0 * d)) * lap * std::pow(eps, 2.0 - a) / (2.0 - a);

  const double scale = h.length_scale();
  const double R = far.radius;
  const double r_switch = std::min(R, 4.0 * scale);

  // Log panels: s = log r, integrand r^{-a} A(r).
  auto log_integrand = [&](double s) {
    const double r = std::exp(s);
    return std::pow(r, -a) * h.shell_difference(x, r);
  };
  const double s0 = std::log(eps);
  const double s1 = std::log(r_switch);
  const int log_panels = std::max(1, static_cast<int>(std::ceil(s1 - s0)));
  for (int i = 0; i < log_panels; ++i) {
    const double lo = s0 + (s1 - s0) * i / log_panels;
    const double hi = s0 + (s1 - s0) * (i + 1) / log_panels;
    double err = 0.0;
    out.value += gauss_kronrod<double, 15>::integrate(log_integrand, lo, hi, params.max_depth,
                                                      params.panel_tolerance, &err);
    out.error += std::abs(err);
  }

  // Linear panels of width 2 * scale out to R.
  auto lin_integrand = [&](double r) {
    return std::pow(r, -1.0 - a) * h.shell_difference(x, r);
  };
  if (R > r_switch) {
    // Far out, rounding in r k sets a noise floor near 1e-12 relative on
    // oscillatory integrands, so these panels get a bounded depth.
    const double lin_tol = std::max(params.panel_tolerance, 1e-10);
    const int lin_depth = std::min(params.max_depth, 6);
    const double width = 2.0 * scale;
    const auto panels = static_cast<long>(std::ceil((R - r_switch) / width));
    for (long i = 0; i < panels; ++i) {
      const double lo = r_switch + width * static_cast<double>(i);
      const double hi = std::min(R, lo + width);
      double err = 0.0;
      out.value += gauss_kronrod<double, 15>::integrate(lin_integrand, lo, hi, lin_depth, lin_tol,
                                                        &err);
      out.error += std::abs(err);
    }
  }
  out.value += far.value;
  out.error += far.bound;
  return out;
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

/// Multiplier |k|^a with the zero mode mapped to 0 (to 1 when a = 0);
/// negative a allowed.
RealField riesz_power(const RealField& f, double a) {
  SpectralField F = forward(f);
  F = apply_radial(std::move(F), [a](double k) {
    if (k == 0.0) return a == 0.0 ? 1.0 : 0.0;
    return std::pow(k, a);
  });
  return inverse(F);
}

/// Region scanned for extrema.
std::pair<Eigen::VectorXd, Eigen::VectorXd> scan_box(const TestFunction& h) {
  double sign = 1.0;
  const TestFunction& base = unwrap(h, sign);
  const int d = h.dim();
  Eigen::VectorXd lo(d), hi(d);
  if (auto mix = dynamic_cast<const GaussianMixture*>(&base)) {
    lo.setConstant(std::numeric_limits<double>::infinity());
    hi.setConstant(-std::numeric_limits<double>::infinity());
    for (const auto& t : mix->terms()) {
      lo = lo.cwiseMin((t.center.array() - 3.0 * t.width).matrix());
      hi = hi.cwiseMax((t.center.array() + 3.0 * t.width).matrix());
    }
    return {lo, hi};
  }
  if (auto cs = dynamic_cast<const CosineSum*>(&base)) {
    const double half = kPi / cs->min_wavenumber();
    lo.setConstant(-half);
    hi.setConstant(half);
    return {lo, hi};
  }
  throw ContractViolation("no scan region known for " + h.describe());
}

}  // namespace

double unit_ball_volume(int d) { return std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0 + 1.0); }

double unit_sphere_area(int d) { return 2.0 * std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0); }

QuadratureResult frac_lap_quadrature_detail(const TestFunction& h, const Eigen::VectorXd& x,
                                            double a, const OracleParams& params) {
  if (!(a > 0.0 && a < 2.0)) throw ContractViolation("quadrature order must lie in (0, 2)");
  if (h.dim() != 1 && h.dim() != 2) throw ContractViolation("quadrature supports d = 1, 2");
  if (x.size() != h.dim()) throw ContractViolation("evaluation point has wrong dimension");
  if (!(params.inner_radius > 0.0)) throw ContractViolation("inner cutoff must be positive");
  const double c = params.kernel_constant > 0.0 ? params.kernel_constant
                                                : calibrate_kernel_constant(a, h.dim());
  const double hx = h.value(x);
  const double lap = h.laplacian(x);
  const FarField far = far_field(h, x, hx, a, params);
  const double eps = params.inner_radius * h.length_scale();
  if (!(far.radius > eps)) throw ContractViolation("outer cutoff must exceed the inner cutoff");

  const RawIntegral fine = raw_integral(h, x, lap, a, 0.5 * eps, far, params);
  const RawIntegral coarse = raw_integral(h, x, lap, a, eps, far, params);
  const double change = std::abs(fine.value - coarse.value);
  const double level = std::abs(hx) * std::pow(h.length_scale(), -a);
  const double allowed = params.refinement_tolerance * std::max(std::abs(fine.value), 1e-3 * level);
  if (!(change <= allowed) || !std::isfinite(fine.value)) {
    throw QuadratureFailure("quadrature failure: refinement changed the result by " + fmt(change),
                            c * (change + fine.error));
  }
  QuadratureResult out;
  out.value = c * fine.value;
  out.error_estimate = c * (change + fine.error);
  out.outer_radius = far.radius;
  return out;
}

double frac_lap_quadrature(const TestFunction& h, const Eigen::VectorXd& x, double a,
                           const OracleParams& params) {
  return frac_lap_quadrature_detail(h, x, a, params).value;
}

double reference_gaussian_value(int d, double a) {
  return std::pow(2.0 * kPi, -d) * std::pow(kPi, d / 2.0) * unit_sphere_area(d) *
         std::pow(2.0, a + d - 1.0) * std::tgamma((a + d) / 2.0);
}

double standard_kernel_constant(int d, double a) {
  return std::pow(2.0, a) * std::tgamma((d + a) / 2.0) /
         (std::pow(kPi, d / 2.0) * std::abs(std::tgamma(-a / 2.0)));
}

double printed_kernel_constant(int d, double a) {
  const double g = std::tgamma(-a);
  return std::pow(4.0, a / 2.0) * std::tgamma(d / 2.0 + a) / (std::pow(kPi, d / 2.0) * std::abs(g));
}

KernelCalibration kernel_calibration(int d, double a) {
  if (!(a > 0.0 && a < 2.0)) {
    throw ContractViolation("calibration rejected: order must lie in (0, 2)");
  }
  static std::mutex mutex;
  static std::map<std::pair<int, double>, KernelCalibration> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({d, a});
    if (it != cache.end()) return it->second;
  }
  OracleParams unit;
  unit.kernel_constant = 1.0;
  const GaussianMixture reference = GaussianMixture::single(d);
  const double raw = frac_lap_quadrature(reference, Eigen::VectorXd::Zero(d), a, unit);

  KernelCalibration cal;
  cal.d = d;
  cal.a = a;
  cal.calibrated = reference_gaussian_value(d, a) / raw;
  cal.standard = standard_kernel_constant(d, a);
  cal.printed = printed_kernel_constant(d, a);
  cal.relative_mismatch = std::abs(cal.calibrated - cal.standard) / cal.standard;
  if (!(cal.relative_mismatch <= 1e-6)) {
    throw VerificationFailure("kernel constant calibration failure: relative mismatch " +
                              fmt(cal.relative_mismatch));
  }
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(std::make_pair(d, a), cal);
  return cal;
}

double calibrate_kernel_constant(double a, int d) { return kernel_calibration(d, a).calibrated; }

ExtremumLocation locate_extremum(const TestFunction& h, bool minimum) {
  const int d = h.dim();
  if (d != 1 && d != 2) throw ContractViolation("extremum search supports d = 1, 2");
  const double sign = minimum ? -1.0 : 1.0;
  auto [lo, hi] = scan_box(h);
  const double spacing = h.length_scale() / 8.0;
  std::vector<int> counts(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    counts[static_cast<std::size_t>(j)] =
        std::min(d == 1 ? 4000 : 600, static_cast<int>(std::ceil((hi[j] - lo[j]) / spacing)) + 1);
  }

  // Keep the best few scan points as Newton starts.
  constexpr std::size_t kStarts = 8;
  std::vector<std::pair<double, Eigen::VectorXd>> best;
  Eigen::VectorXd x(d);
  const long total = d == 1 ? counts[0] : static_cast<long>(counts[0]) * counts[1];
  for (long i = 0; i < total; ++i) {
    long rest = i;
    for (int j = d - 1; j >= 0; --j) {
      const int c = counts[static_cast<std::size_t>(j)];
      const long idx = rest % c;
      rest /= c;
      x[j] = c > 1 ? lo[j] + (hi[j] - lo[j]) * static_cast<double>(idx) / (c - 1) : lo[j];
    }
    const double v = sign * h.value(x);
    if (best.size() < kStarts || v > best.back().first) {
      best.emplace_back(v, x);
      std::sort(best.begin(), best.end(),
                [](const auto& p, const auto& q) { return p.first > q.first; });
      if (best.size() > kStarts) best.pop_back();
    }
  }

  ExtremumLocation result;
  double best_value = -std::numeric_limits<double>::infinity();
  for (auto& start : best) {
    Eigen::VectorXd y = start.second;
    double fy = sign * h.value(y);
    for (int iter = 0; iter < 100; ++iter) {
      const Eigen::VectorXd g = sign * h.gradient(y);
      const Eigen::MatrixXd H = sign * h.hessian(y);
      Eigen::VectorXd step;
      Eigen::LLT<Eigen::MatrixXd> llt(-H);
      if (llt.info() == Eigen::Success) {
        step = llt.solve(g);
      } else {
        step = spacing * g / std::max(g.norm(), 1e-300);
      }
      double t = 1.0;
      Eigen::VectorXd trial = y + step;
      double ft = sign * h.value(trial);
      int halvings = 0;
      while (ft < fy - 1e-15 * std::abs(fy) && halvings < 40) {
        t *= 0.5;
        trial = y + t * step;
        ft = sign * h.value(trial);
        ++halvings;
      }
      const double moved = (trial - y).norm();
      y = trial;
      fy = std::max(fy, ft);
      if (moved < 1e-12) break;
    }
    if (fy > best_value) {
      best_value = fy;
      result.point = y;
      result.value = h.value(y);
      result.gradient_norm = h.gradient(y).norm();
    }
  }
  return result;
}

double lebesgue_norm(const TestFunction& h, double p) {
  if (!(p >= 1.0)) throw ContractViolation("Lebesgue exponent must be >= 1");
  double sign = 1.0;
  const auto* mix = dynamic_cast<const GaussianMixture*>(&unwrap(h, sign));
  if (mix == nullptr) throw ContractViolation("L^p norm needs a decaying Gaussian mixture");
  const int d = h.dim();
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(d, std::numeric_limits<double>::infinity());
  Eigen::VectorXd hi = -lo;
  double wmax = 0.0;
  for (const auto& t : mix->terms()) wmax = std::max(wmax, t.width);
  for (const auto& t : mix->terms()) {
    lo = lo.cwiseMin((t.center.array() - 10.0 * wmax).matrix());
    hi = hi.cwiseMax((t.center.array() + 10.0 * wmax).matrix());
  }
  const double spacing = h.length_scale() / 6.0;
  std::vector<int> counts(static_cast<std::size_t>(d));
  double cell = 1.0;
  for (int j = 0; j < d; ++j) {
    const int c = static_cast<int>(std::ceil((hi[j] - lo[j]) / spacing)) + 1;
    counts[static_cast<std::size_t>(j)] = c;
    cell *= (hi[j] - lo[j]) / (c - 1);
  }
  long total = 1;
  for (int c : counts) total *= c;
  double sum = 0.0;
  Eigen::VectorXd x(d);
  for (long i = 0; i < total; ++i) {
    long rest = i;
    for (int j = d - 1; j >= 0; --j) {
      const int c = counts[static_cast<std::size_t>(j)];
      x[j] = lo[j] + (hi[j] - lo[j]) * static_cast<double>(rest % c) / (c - 1);
      rest /= c;
    }
    sum += std::pow(std::abs(h.value(x)), p);
  }
  return std::pow(cell * sum, 1.0 / p);
}

double lemma_a_constant(int d, double a, double p, double kernel_constant) {
  const double omega = unit_ball_volume(d);
  return kernel_constant * (omega / 4.0) * std::pow(omega / std::pow(2.0, p + 1.0), a / d);
}

LemmaAReport lemma_a_bound(const TestFunction& h, double a, double p, const OracleParams& params) {
  if (!(p >= 1.0)) throw ContractViolation("Lebesgue exponent must be >= 1");
  const ExtremumLocation top = locate_extremum(h, false);
  if (!(top.value > 0.0)) throw ContractViolation("pointwise bound needs a positive maximum");
  const int d = h.dim();
  const double c = params.kernel_constant > 0.0 ? params.kernel_constant
                                                : calibrate_kernel_constant(a, d);
  OracleParams with_c = params;
  with_c.kernel_constant = c;

  LemmaAReport r;
  r.d = d;
  r.a = a;
  r.p = p;
  r.x_star = top.point;
  r.h_star = top.value;
  r.lp_norm = lebesgue_norm(h, p);
  const double omega = unit_ball_volume(d);
  // Chebyshev: |{h >= h*/2}| <= B; the ball of volume 2B keeps half its
  // volume where h* - h >= h*/2.
  const double B = std::pow(2.0 * r.lp_norm / r.h_star, p);
  r.radius = std::pow(2.0 * B / omega, 1.0 / d);
  r.rhs = c * r.h_star * (omega * std::pow(r.radius, d) - B) / (2.0 * std::pow(r.radius, d + a));
  r.constant = lemma_a_constant(d, a, p, c);
  r.lhs = frac_lap_quadrature(h, r.x_star, a, with_c);
  r.holds = r.lhs >= r.rhs * (1.0 - 1e-6);
  return r;
}

LemmaAReport lemma_a_bound_min(const TestFunction& h, double a, double p,
                               const OracleParams& params) {
  const Negated neg(h);
  LemmaAReport r = lemma_a_bound(neg, a, p, params);
  r.minimum_side = true;
  r.h_star = -r.h_star;
  r.lhs = -r.lhs;
  r.rhs = -r.rhs;
  r.holds = r.lhs <= r.rhs * (1.0 - 1e-6);
  return r;
}

WienerReport wiener_interp_check(const RealField& u, double delta) {
  if (!(delta > 0.0)) throw ContractViolation("interpolation offset delta must be positive");
  const SpectralField U = forward(u);
  if (!(coefficient_norm(U) > 0.0)) throw ContractViolation("Wiener check needs a nonzero field");
  const int d = u.grid.d;
  const double omega = unit_ball_volume(d);
  const double c_delta = 1.0 / std::sqrt(2.0 * delta);
  const double xi_side = std::pow(2.0 * kPi, d / 2.0);

  WienerReport r;
  r.delta = delta;
  r.lhs = wiener_norm(U);
  r.l1_norm = norm_lp(u, 1.0);
  r.l2_norm_hat = xi_side * coefficient_norm(U);
  r.hdot_norm = xi_side * norm_hs_dot(U, d / 2.0 + delta);

  r.radius_l1 = std::pow(r.hdot_norm / r.l1_norm, 1.0 / (d + delta));
  r.rhs_l1 = omega * std::pow(r.radius_l1, d) * r.l1_norm +
             c_delta * std::pow(r.radius_l1, -delta) * r.hdot_norm;
  r.radius_l2 = std::pow(r.hdot_norm / r.l2_norm_hat, 1.0 / (d / 2.0 + delta));
  r.rhs_l2 = std::sqrt(omega * std::pow(r.radius_l2, d)) * r.l2_norm_hat +
             c_delta * std::pow(r.radius_l2, -delta) * r.hdot_norm;
  r.ratio_l1 = r.lhs / r.rhs_l1;
  r.ratio_l2 = r.lhs / r.rhs_l2;
  r.holds = r.ratio_l1 <= 1.0 + 1e-12 && r.ratio_l2 <= 1.0 + 1e-12;
  return r;
}

CommutatorB1Report commutator_check_b1(const FourierSum& f, const FourierSum& g, double s) {
  if (!(s >= 1.0)) throw ContractViolation("commutator order s must be >= 1");
  if (f.dim() != g.dim() || f.half_length() != g.half_length()) {
    throw ContractViolation("commutator inputs must live on the same box");
  }
  const int d = f.dim();
  using Key = std::vector<int>;
  auto merge = [](const FourierSum& sum) {
    std::map<Key, std::complex<double>> out;
    for (const auto& t : sum.terms()) out[Key(t.index.data(), t.index.data() + t.index.size())] += t.coeff;
    return out;
  };
  const auto fm = merge(f);
  const auto gm = merge(g);
  auto wave = [&](const Key& k) {
    Eigen::VectorXd v(d);
    for (int j = 0; j < d; ++j) v[j] = (kPi / f.half_length()) * k[static_cast<std::size_t>(j)];
    return v;
  };
  auto symbol = [&](const Key& k) {
    const Eigen::VectorXd v = wave(k);
    const double m = v.norm();
    return Eigen::VectorXd(m > 0.0 ? std::pow(m, s) * v : v);
  };

  std::map<Key, Eigen::VectorXcd> comm;
  for (const auto& [xi, gc] : gm) {
    for (const auto& [eta, fc] : fm) {
      Key chi(static_cast<std::size_t>(d));
      for (int j = 0; j < d; ++j) {
        chi[static_cast<std::size_t>(j)] = xi[static_cast<std::size_t>(j)] + eta[static_cast<std::size_t>(j)];
      }
      const Eigen::VectorXd diff = symbol(chi) - symbol(eta);
      auto it = comm.try_emplace(chi, Eigen::VectorXcd::Zero(d)).first;
      it->second += (std::complex<double>(0.0, 1.0) * gc * fc) * diff.cast<std::complex<double>>();
    }
  }

  const double box = std::pow(2.0 * f.half_length(), d);
  const double hat = std::pow(2.0 * kPi, d);
  double lhs2 = 0.0;
  for (const auto& [chi, c] : comm) lhs2 += c.squaredNorm();

  double f_hs = 0.0, f_l1 = 0.0, g_lambda_l1 = 0.0, g_hs = 0.0;
  for (const auto& [k, c] : fm) {
    const double m = wave(k).norm();
    f_hs += std::pow(m, 2.0 * s) * std::norm(c);
    f_l1 += std::abs(c);
  }
  for (const auto& [k, c] : gm) {
    const double m = wave(k).norm();
    g_lambda_l1 += m * std::abs(c);
    g_hs += std::pow(m, 2.0 * (s + 1.0)) * std::norm(c);
  }

  CommutatorB1Report r;
  r.s = s;
  r.lhs = std::sqrt(box * lhs2);
  r.term_f = std::sqrt(box * f_hs) * hat * g_lambda_l1;
  r.term_g = std::sqrt(box * g_hs) * hat * f_l1;
  r.constant = std::pow(2.0, std::max(s - 1.0, 0.0));
  r.rhs = r.constant * (r.term_f + r.term_g);
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
  r.holds = r.ratio <= 1.0 + 1e-10;
  return r;
}

CommutatorB2Report commutator_check_b2(const RealField& f, const RealField& g, double s,
                                       const HolderExponents& e) {
  require_same_grid(f.grid, g.grid);
  if (!(s > 0.0)) throw ContractViolation("commutator order s must be positive");
  if (!(e.p > 1.0 && std::isfinite(e.p))) throw ContractViolation("p must lie in (1, infinity)");
  if (!(e.p1 > 1.0 && e.p2 > 1.0 && e.p3 > 1.0 && e.p4 > 1.0) || !std::isfinite(e.p2) ||
      !std::isfinite(e.p3)) {
    throw ContractViolation("Hölder exponents out of range");
  }
  if (std::abs(1.0 / e.p - 1.0 / e.p1 - 1.0 / e.p2) > 1e-12 ||
      std::abs(1.0 / e.p - 1.0 / e.p3 - 1.0 / e.p4) > 1e-12) {
    throw ContractViolation("exponents are not Hölder-compatible: need 1/p = 1/p1 + 1/p2 = 1/p3 + 1/p4");
  }
  const RealField gf{f.grid, g.values * f.values};
  const RealField comm{f.grid, riesz_power(gf, s).values - g.values * riesz_power(f, s).values};
  Eigen::ArrayXd grad2 = Eigen::ArrayXd::Zero(g.values.size());
  for (const auto& c : gradient(g)) grad2 += c.values.square();
  const RealField grad_mag{g.grid, grad2.sqrt()};

  CommutatorB2Report r;
  r.s = s;
  r.exponents = e;
  r.lhs = norm_lp(comm, e.p);
  r.term_1 = norm_lp(grad_mag, e.p1) * norm_lp(riesz_power(f, s - 1.0), e.p2);
  r.term_2 = norm_lp(riesz_power(g, s), e.p3) * norm_lp(f, e.p4);
  const double denom = r.term_1 + r.term_2;
  r.ratio = denom > 0.0 ? r.lhs / denom : 0.0;
  return r;
}

RealField dilate(const RealField& f, double lambda) {
  if (!(lambda > 0.0)) throw ContractViolation("dilation factor must be positive");
  return {make_grid(f.grid.d, f.grid.n, lambda * f.grid.half_length), f.values};
}

InterpolationReport interpolation_sum_check(const RealField& f, double r, double s) {
  if (!(r >= 0.0 && s >= 0.0)) throw ContractViolation("interpolation orders must be >= 0");
  const SpectralField F = forward(f);
  InterpolationReport rep;
  rep.lhs = std::pow(norm_hs_dot(F, r), 2);
  rep.rhs = std::pow(norm_hs_dot(F, 0.0), 2) + std::pow(norm_hs_dot(F, r + s), 2);
  rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
  rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-12);
  return rep;
}

InterpolationReport interpolation_holder_check(const RealField& f, double s, double r) {
  if (!(r > 0.0 && s >= 0.0 && s <= r)) throw ContractViolation("need 0 <= s <= r and r > 0");
  const SpectralField F = forward(f);
  InterpolationReport rep;
  rep.lhs = norm_hs_dot(F, s);
  rep.rhs = std::pow(norm_hs_dot(F, 0.0), 1.0 - s / r) * std::pow(norm_hs_dot(F, r), s / r);
  rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
  rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-12);
  return rep;
}

int SuiteReport::counterexamples() const {
  return static_cast<int>(
      std::count_if(records.begin(), records.end(), [](const CheckRecord& c) { return !c.holds; }));
}

}  // namespace fpnp
