#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fpnp/field.hpp"
#include "fpnp/test_functions.hpp"

namespace fpnp {

/// Settings of the singular-integral quadrature for Lambda^a h(x).
struct OracleParams {
  /// Kernel constant; 0 means "calibrate for (a, d)" on first use.
  double kernel_constant = 0.0;
  /// Inner cutoff as a multiple of the test function's length scale.
  double inner_radius = 1e-5;
  /// Outer cutoff; 0 picks a radius past which the far field is negligible.
  double outer_radius = 0.0;
  /// Relative tolerance of every adaptive panel.
  double panel_tolerance = 1e-12;
  /// Allowed relative change when the inner cutoff is halved.
  double refinement_tolerance = 1e-8;
  int max_depth = 15;
};

/// Volume of the unit ball, pi^{d/2} / Gamma(d/2 + 1).
double unit_ball_volume(int d);
/// Area of the unit sphere S^{d-1}.
double unit_sphere_area(int d);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // refinement difference plus far-field bound
  double outer_radius = 0.0;
};

/// c P.V. int (h(x) - h(x - eta)) / |eta|^{d+a} deta. The ball |eta| < eps
/// uses the second-order Taylor expansion, eps < |eta| < R adaptive
/// Gauss-Kronrod panels, and the far field the analytic h(x) term with the
/// remainder bounded. d in {1, 2}; a in (0, 2). Throws QuadratureFailure
/// when halving eps moves the result by more than the tolerance.
QuadratureResult frac_lap_quadrature_detail(const TestFunction& h, const Eigen::VectorXd& x,
                                            double a, const OracleParams& params = {});
double frac_lap_quadrature(const TestFunction& h, const Eigen::VectorXd& x, double a,
                           const OracleParams& params = {});

/// Exact Lambda^a exp(-|x|^2) at the origin from the multiplier definition.
double reference_gaussian_value(int d, double a);

/// 2^a Gamma((d+a)/2) / (pi^{d/2} |Gamma(-a/2)|).
double standard_kernel_constant(int d, double a);

/// The alternative normalization 4^s Gamma(d/2 + a) / (pi^{d/2} |Gamma(-a)|)
/// read with s = a/2. Not finite at a = 1.
double printed_kernel_constant(int d, double a);

struct KernelCalibration {
  int d = 1;
  double a = 0.0;
  double calibrated = 0.0;
  double standard = 0.0;
  double printed = 0.0;
  double relative_mismatch = 0.0;  // |calibrated - standard| / standard
};

/// c such that the quadrature with constant c reproduces the multiplier
/// value on exp(-|x|^2) at 0. Throws ContractViolation for a outside (0, 2)
/// and VerificationFailure ("kernel constant calibration failure") when the
/// result differs from the standard closed form by more than 1e-6.
KernelCalibration kernel_calibration(int d, double a);
double calibrate_kernel_constant(double a, int d);

struct ExtremumLocation {
  Eigen::VectorXd point;
  double value = 0.0;
  double gradient_norm = 0.0;
};

/// Global maximum (or minimum with `minimum`) of h: dense scan over the
/// region holding the function's features, then Newton refinement to 1e-10
/// in position.
ExtremumLocation locate_extremum(const TestFunction& h, bool minimum = false);

/// ||h||_{L^p(R^d)} by the trapezoid rule on a box covering h (spectrally
/// accurate for Gaussian mixtures). Decaying functions only.
double lebesgue_norm(const TestFunction& h, double p);

struct LemmaAReport {
  bool minimum_side = false;
  int d = 1;
  double a = 0.0;
  double p = 1.0;
  Eigen::VectorXd x_star;
  double h_star = 0.0;
  double lp_norm = 0.0;
  double radius = 0.0;    // r with omega_d r^d = 2 (2 ||h||_p / |h*|)^p
  double constant = 0.0;  // c(d, a, p)
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// Lambda^a h(x*) >= c(d,a,p) h(x*)^{1+ap/d} / ||h||_p^{ap/d} at the global
/// maximum x*. The constant follows the chain: restrict the P.V. integral
/// to the ball of radius r, where at least half of the volume has
/// h <= h(x*)/2 by Chebyshev, giving c_{a,d} h* (omega_d r^d - B)/(2 r^{d+a})
/// with B = (2 ||h||_p / h*)^p. Throws ContractViolation when max h <= 0.
LemmaAReport lemma_a_bound(const TestFunction& h, double a, double p,
                           const OracleParams& params = {});

/// Lambda^a h(x_*) <= c h(x_*) |h(x_*)|^{ap/d} / ||h||_p^{ap/d} at the global
/// minimum. Throws ContractViolation when min h >= 0.
LemmaAReport lemma_a_bound_min(const TestFunction& h, double a, double p,
                               const OracleParams& params = {});

/// c(d, a, p) = c_{a,d} (omega_d / 4) (omega_d / 2^{p+1})^{a/d}.
double lemma_a_constant(int d, double a, double p, double kernel_constant);

struct WienerReport {
  double delta = 0.0;
  double lhs = 0.0;         // int |u^(xi)| dxi
  double l1_norm = 0.0;     // ||u||_1
  double l2_norm_hat = 0.0; // ||u^||_{L^2(dxi)} = (2 pi)^{d/2} ||u||_2
  double hdot_norm = 0.0;   // ||xi|^{d/2+delta} u^||_{L^2(dxi)}
  double radius_l1 = 0.0;
  double radius_l2 = 0.0;
  double rhs_l1 = 0.0;      // omega_d R^d ||u||_1 + C_delta R^-delta H
  double rhs_l2 = 0.0;      // sqrt(omega_d R^d) ||u^||_2 + C_delta R^-delta H
  double ratio_l1 = 0.0;    // lhs / rhs
  double ratio_l2 = 0.0;
  bool holds = false;
};

/// Splits int |u^| at |xi| = R: the ball part is bounded by
/// omega_d R^d ||u||_1 (or by Cauchy-Schwarz against ||u^||_2), the
/// exterior by C_delta R^-delta ||u||_{Hdot^{d/2+delta}} with
/// C_delta = (2 delta)^{-1/2}. R balances the two terms. Throws
/// ContractViolation for the zero field or delta <= 0.
WienerReport wiener_interp_check(const RealField& u, double delta);

struct CommutatorB1Report {
  double s = 1.0;
  double lhs = 0.0;  // ||[Lambda^s grad, g] f||_2
  double term_f = 0.0;  // ||Lambda^s f||_2 ||(Lambda g)^||_1
  double term_g = 0.0;  // ||Lambda^{s+1} g||_2 ||f^||_1
  double constant = 1.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool holds = false;
};

/// Exact mode arithmetic on finite Fourier sums over the same box. Hat
/// norms use the continuum transform, so ||f^||_1 = (2 pi)^d sum |c_k|.
CommutatorB1Report commutator_check_b1(const FourierSum& f, const FourierSum& g, double s);

struct HolderExponents {
  double p = 2.0;
  double p1 = INFINITY;
  double p2 = 2.0;
  double p3 = 2.0;
  double p4 = INFINITY;
};

struct CommutatorB2Report {
  double s = 1.0;
  HolderExponents exponents;
  double lhs = 0.0;  // ||Lambda^s(g f) - g Lambda^s f||_p
  double term_1 = 0.0;  // ||grad g||_{p1} ||Lambda^{s-1} f||_{p2}
  double term_2 = 0.0;  // ||Lambda^s g||_{p3} ||f||_{p4}
  double ratio = 0.0;   // lhs / (term_1 + term_2)
};

/// Grid evaluation of the Kato-Ponce ratio. Throws ContractViolation for
/// Hölder-incompatible exponents, s <= 0 or p outside (1, infinity).
CommutatorB2Report commutator_check_b2(const RealField& f, const RealField& g, double s,
                                       const HolderExponents& exponents = {});

/// Same samples on the grid dilated by `lambda` (L -> lambda L).
RealField dilate(const RealField& f, double lambda);

struct InterpolationReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool holds = false;
};

/// ||Lambda^r f||_2^2 <= ||f||_2^2 + ||f||_{Hdot^{r+s}}^2; r, s >= 0.
InterpolationReport interpolation_sum_check(const RealField& f, double r, double s);
/// ||f||_{Hdot^s} <= ||f||_2^{1-s/r} ||f||_{Hdot^r}^{s/r}; 0 <= s <= r, r > 0.
InterpolationReport interpolation_holder_check(const RealField& f, double s, double r);

/// One line of a verification report.
struct CheckRecord {
  std::string id;          // unique within a suite; reports are sorted by id
  std::string inequality;  // lemma_a, lemma_a_min, wiener_l1, wiener_l2, commutator_b1, ...
  std::string inputs;      // descriptor of the inputs
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool holds = true;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> records;
  std::map<std::string, double> metrics;
  std::vector<KernelCalibration> calibrations;

  int counterexamples() const;
};

/// Suite names accepted by run_suite.
std::vector<std::string> suite_names();

/// Runs a randomized corpus. Suites: lemma_a, wiener, commutator,
/// kato_ponce, interpolation, oracle, all. Corpus members are drawn from
/// independent streams of `seed`. Throws ContractViolation for unknown names.
SuiteReport run_suite(const std::string& name, std::uint64_t seed);

}  // namespace fpnp
