#include <doctest.h>

#include "fpnp/errors.hpp"
#include "fpnp/inequality_lab.hpp"
#include "fpnp/rng.hpp"
#include "fpnp/test_functions.hpp"
#include "support.hpp"

using namespace fpnp;
using namespace fpnp::testing;

namespace {

/// Lambda^a exp(-|x|^2) at the origin: (2 pi)^-d int |xi|^a pi^{d/2} e^{-|xi|^2/4} dxi.
double gaussian_at_origin(int d, double a) {
  return d == 1 ? std::pow(2.0, a) * std::tgamma((a + 1) / 2) / std::sqrt(kPi)
                : std::pow(2.0, a) * std::tgamma(1 + a / 2);
}

Eigen::VectorXd point(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("ball and sphere measures") {
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
  CHECK(unit_ball_volume(2) == doctest::Approx(kPi));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0));
  CHECK(unit_sphere_area(1) == doctest::Approx(2.0));
  CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * kPi));
}

TEST_CASE("test functions") {
  const GaussianMixture g(2, {{1.0, 1.5, point({0.5, -0.5})}, {-0.3, 0.7, point({0.0, 1.0})}});
  const Eigen::VectorXd x = point({0.2, 0.4});
  const double h = 1e-5;
  for (int j = 0; j < 2; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(2);
    e[j] = h;
    CHECK(g.gradient(x)[j] == doctest::Approx((g.value(x + e) - g.value(x - e)) / (2 * h)).epsilon(1e-8));
    const Eigen::VectorXd hess_col = (g.gradient(x + e) - g.gradient(x - e)) / (2 * h);
    CHECK((g.hessian(x).col(j) - hess_col).norm() < 1e-8);
  }
  SUBCASE("closed-form shell differences match direct evaluation") {
    for (double r : {1e-3, 0.1, 1.0, 4.0}) {
      const double want = [&] {
        // Half-circle average of 2h(x) - h(x + r e) - h(x - r e) by the trapezoid rule.
        const int n = 4000;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
          const double th = kPi * (i + 0.5) / n;
          const Eigen::VectorXd e = point({std::cos(th), std::sin(th)});
          sum += 2 * g.value(x) - g.value(x + r * e) - g.value(x - r * e);
        }
        return sum * kPi / n;
      }();
      CHECK(g.shell_difference(x, r) == doctest::Approx(want).epsilon(1e-9).scale(1e-12));
    }
    const GaussianMixture g1(1, {{0.8, 1.2, point({0.3})}});
    for (double r : {1e-4, 0.5, 3.0}) {
      const Eigen::VectorXd y = point({-0.4});
      const double want = 2 * g1.value(y) - g1.value(y + point({r})) - g1.value(y - point({r}));
      // The direct second difference loses digits to cancellation at small r.
      CHECK(g1.shell_difference(y, r) == doctest::Approx(want).epsilon(1e-6));
    }
  }
  SUBCASE("dilation") {
    const GaussianMixture g1 = GaussianMixture::single(1, 1.0);
    const GaussianMixture wide = g1.dilated(3.0);
    CHECK(wide.value(point({3.0})) == doctest::Approx(g1.value(point({1.0}))));
  }
  CHECK_THROWS_AS(GaussianMixture(1, {}), ContractViolation);
  CHECK_THROWS_AS(GaussianMixture(1, {{1.0, 0.0, point({0.0})}}), ContractViolation);
}

TEST_CASE("kernel constant calibration") {
  auto standard = [](int d, double a) {
    return std::pow(2.0, a) * std::tgamma((d + a) / 2) /
           (std::pow(kPi, d / 2.0) * std::abs(std::tgamma(-a / 2)));
  };
  CHECK(calibrate_kernel_constant(1.0, 1) == doctest::Approx(1.0 / kPi).epsilon(1e-6));
  for (int d : {1, 2}) {
    for (double a : {0.5, 1.0, 1.5}) {
      const KernelCalibration k = kernel_calibration(d, a);
      CHECK(rel_err(k.calibrated, standard(d, a)) < 1e-6);
      CHECK(rel_err(k.standard, standard(d, a)) < 1e-13);
      CHECK(k.relative_mismatch < 1e-6);
    }
  }
  // The printed formula is a different number; it is reported, not used.
  // At a = 1 it is undefined because Gamma(-1) is a pole.
  CHECK(rel_err(printed_kernel_constant(1, 0.5), standard(1, 0.5)) > 0.1);
  CHECK_FALSE(std::isfinite(printed_kernel_constant(1, 1.0)));
  CHECK_THROWS_AS(calibrate_kernel_constant(2.0, 1), ContractViolation);
  CHECK_THROWS_AS(calibrate_kernel_constant(2.5, 2), ContractViolation);
  CHECK_THROWS_AS(calibrate_kernel_constant(0.0, 1), ContractViolation);
}

TEST_CASE("singular integral quadrature") {
  SUBCASE("Gaussian at the origin against the closed form") {
    for (int d : {1, 2}) {
      const GaussianMixture g = GaussianMixture::single(d, 1.0);
      for (double a : {0.3, 0.5, 1.0, 1.5, 1.9}) {
        const double q = frac_lap_quadrature(g, Eigen::VectorXd::Zero(d), a);
        CHECK(rel_err(q, gaussian_at_origin(d, a)) < 1e-6);
        CHECK(rel_err(reference_gaussian_value(d, a), gaussian_at_origin(d, a)) < 1e-12);
      }
    }
  }
  SUBCASE("plane waves are eigenfunctions") {
    for (double k : {0.5, 2.0}) {
      const CosineSum c(1, {{point({k}), 1.0, 0.3}});
      for (double x : {0.0, 0.3, -1.1}) {
        for (double a : {0.5, 1.0, 1.7}) {
          const double want = std::pow(k, a) * std::cos(k * x + 0.3);
          CHECK(std::abs(frac_lap_quadrature(c, point({x}), a) - want) <= 1e-4 * std::pow(k, a));
        }
      }
    }
  }
  SUBCASE("even point with zero gradient gives a finite result") {
    const GaussianMixture g = GaussianMixture::single(1, 2.0);
    const auto res = frac_lap_quadrature_detail(g, point({0.0}), 1.2);
    CHECK(std::isfinite(res.value));
    CHECK(res.value > 0.0);
    CHECK(res.error_estimate < 1e-8 * res.value);
  }
  SUBCASE("contract checks") {
    const GaussianMixture g = GaussianMixture::single(1);
    CHECK_THROWS_AS(frac_lap_quadrature(g, point({0.0}), 2.0), ContractViolation);
    CHECK_THROWS_AS(frac_lap_quadrature(g, point({0.0, 0.0}), 1.0), ContractViolation);
    OracleParams bad;
    bad.inner_radius = 0.0;
    CHECK_THROWS_AS(frac_lap_quadrature(g, point({0.0}), 1.0, bad), ContractViolation);
  }
}

TEST_CASE("extremum search and Lebesgue norms") {
  for (int seed = 0; seed < 10; ++seed) {
    auto rng = make_rng(401, static_cast<std::uint64_t>(seed));
    const int d = 1 + seed % 2;
    const GaussianMixture g = GaussianMixture::random(d, rng, false);
    const ExtremumLocation top = locate_extremum(g);
    CHECK(top.gradient_norm < 1e-8);
    // No sample of a coarse scan exceeds the located maximum.
    std::uniform_real_distribution<double> U(-5.0, 5.0);
    for (int i = 0; i < 500; ++i) {
      Eigen::VectorXd x(d);
      for (int j = 0; j < d; ++j) x[j] = U(rng);
      CHECK(g.value(x) <= top.value + 1e-12);
    }
  }
  const GaussianMixture g = GaussianMixture::single(1, 1.5, 2.0);
  CHECK(rel_err(lebesgue_norm(g, 1.0), 2.0 * 1.5 * std::sqrt(kPi)) < 1e-10);
  CHECK(rel_err(lebesgue_norm(g, 2.0), 2.0 * std::sqrt(1.5 * std::sqrt(kPi / 2))) < 1e-10);
  const GaussianMixture g2 = GaussianMixture::single(2, 1.0);
  CHECK(rel_err(lebesgue_norm(g2, 1.0), kPi) < 1e-10);
}

TEST_CASE("pointwise lower bound at the maximum") {
  const GaussianMixture g = GaussianMixture::single(1, 1.0);
  const LemmaAReport r = lemma_a_bound(g, 1.0, 1.0);
  CHECK(r.holds);
  CHECK(std::abs(r.x_star[0]) < 1e-10);
  CHECK(r.h_star == doctest::Approx(1.0));
  CHECK(rel_err(r.lhs, gaussian_at_origin(1, 1.0)) < 1e-6);
  // The proof's radius choice and the assembled constant give the same bound.
  CHECK(rel_err(r.rhs, r.constant * std::pow(r.h_star, 1 + r.a * r.p) / std::pow(r.lp_norm, r.a * r.p)) < 1e-12);

  SUBCASE("verdict and ratio survive dilation") {
    double first = 0.0;
    for (double lambda : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const GaussianMixture gl = g.dilated(lambda);
      const LemmaAReport rl = lemma_a_bound(gl, 1.5, 2.0);
      CHECK(rl.holds);
      const double ratio = rl.lhs / rl.rhs;
      if (first == 0.0) first = ratio;
      CHECK(rel_err(ratio, first) < 1e-6);
    }
  }
  SUBCASE("random mixtures in one and two dimensions") {
    for (int seed = 0; seed < 6; ++seed) {
      auto rng = make_rng(403, static_cast<std::uint64_t>(seed));
      const int d = 1 + seed % 2;
      const GaussianMixture m = GaussianMixture::random(d, rng, false);
      for (double a : {0.5, 1.5}) CHECK(lemma_a_bound(m, a, 1.0).holds);
    }
  }
  SUBCASE("minimum side") {
    const GaussianMixture m(1, {{1.0, 1.0, point({-1.5})}, {-0.8, 0.8, point({1.0})}});
    const LemmaAReport r = lemma_a_bound_min(m, 1.0, 1.0);
    CHECK(r.minimum_side);
    CHECK(r.h_star < 0.0);
    CHECK(r.lhs < 0.0);
    CHECK(r.holds);
  }
  CHECK_THROWS_AS(lemma_a_bound(GaussianMixture(1, {{-1.0, 1.0, point({0.0})}}), 1.0, 1.0),
                  ContractViolation);
}

TEST_CASE("Wiener interpolation") {
  const GridSpec unit = make_grid(1, 64, kPi);
  const RealField c3 = sample(unit, [](const Eigen::VectorXd& x) { return std::cos(3 * x[0]); });
  const WienerReport r = wiener_interp_check(c3, 0.5);
  CHECK(r.holds);
  CHECK(r.ratio_l1 < 1.0);
  CHECK(r.ratio_l2 < 1.0);
  CHECK(rel_err(r.lhs, 2 * kPi) < 1e-12);
  CHECK(rel_err(r.l1_norm, 4.0) < 1e-3);
  CHECK_THROWS_AS(wiener_interp_check(RealField::zeros(unit), 0.5), ContractViolation);
  CHECK_THROWS_AS(wiener_interp_check(c3, 0.0), ContractViolation);

  SUBCASE("random zero-mean band-limited fields") {
    const GridSpec grid = make_grid(1, 256, kPi);
    for (int seed = 0; seed < 30; ++seed) {
      auto rng = make_rng(405, static_cast<std::uint64_t>(seed));
      const RealField f = sample_waves(grid, random_waves(grid, rng, 16, 40));
      const RealField centered{grid, f.values - f.mean()};
      CHECK(wiener_interp_check(centered, 1.5).holds);
    }
  }
  SUBCASE("dilation leaves the ratios unchanged") {
    const GridSpec grid = make_grid(1, 512, 20.0);
    const RealField g = gaussian(grid, 1.0);
    const WienerReport base = wiener_interp_check(g, 1.5);
    for (double lambda : {0.5, 2.0, 4.0}) {
      const WienerReport w = wiener_interp_check(dilate(g, lambda), 1.5);
      CHECK(rel_err(w.ratio_l1, base.ratio_l1) < 1e-6);
      CHECK(rel_err(w.ratio_l2, base.ratio_l2) < 1e-6);
    }
  }
}

TEST_CASE("commutator with the gradient") {
  SUBCASE("hand computation for cos 2x and cos x") {
    // [Lambda grad, cos x] cos 2x = 1.5 sin x - 2.5 sin 3x on [-pi, pi).
    const auto f = FourierSum::cosine(1, kPi, Eigen::VectorXi::Constant(1, 2));
    const auto g = FourierSum::cosine(1, kPi, Eigen::VectorXi::Constant(1, 1));
    const CommutatorB1Report r = commutator_check_b1(f, g, 1.0);
    CHECK(rel_err(r.lhs, std::sqrt(8.5 * kPi)) < 1e-12);
    CHECK(rel_err(r.term_f, 2 * std::sqrt(kPi) * 2 * kPi) < 1e-12);
    CHECK(rel_err(r.term_g, std::sqrt(kPi) * 2 * kPi) < 1e-12);
    CHECK(r.constant == 1.0);
    CHECK(rel_err(r.ratio, std::sqrt(8.5) / (6 * kPi)) < 1e-12);
    CHECK(r.holds);
  }
  SUBCASE("constant multiplier commutes") {
    auto rng = make_rng(407, 0);
    const auto f = FourierSum::random(1, 2.0, 16, 12, rng);
    const auto r = commutator_check_b1(f, FourierSum::constant(1, 2.0, 3.0), 1.5);
    CHECK(r.lhs < 1e-12);
    CHECK(r.ratio < 1e-12);
  }
  SUBCASE("random sums stay below the explicit constant") {
    for (int seed = 0; seed < 30; ++seed) {
      auto rng = make_rng(409, static_cast<std::uint64_t>(seed));
      const int d = 1 + seed % 2;
      const auto f = FourierSum::random(d, 3.0, 16, 8, rng);
      const auto g = FourierSum::random(d, 3.0, 16, 8, rng);
      for (double s : {1.0, 1.5, 2.0}) {
        const auto r = commutator_check_b1(f, g, s);
        CHECK(r.constant == doctest::Approx(std::pow(2.0, s - 1)));
        CHECK(r.holds);
      }
    }
  }
  const auto f = FourierSum::cosine(1, kPi, Eigen::VectorXi::Constant(1, 2));
  CHECK_THROWS_AS(commutator_check_b1(f, f, 0.5), ContractViolation);
  CHECK_THROWS_AS(commutator_check_b1(f, FourierSum::cosine(1, 2.0, Eigen::VectorXi::Constant(1, 1)), 1.0),
                  ContractViolation);
}

TEST_CASE("Kato-Ponce commutator") {
  const GridSpec grid = make_grid(1, 1024, 20.0);
  const RealField f = gaussian(grid, 1.0, 1.0, 0.5);
  const RealField g = gaussian(grid, 1.5, 0.7, -0.3);
  CHECK(commutator_check_b2(f, RealField::constant(grid, 2.0), 1.0).ratio < 1e-12);

  const double base = commutator_check_b2(f, g, 1.0).ratio;
  CHECK(base > 0.0);
  CHECK(std::isfinite(base));
  for (double lambda : {2.0, 4.0, 8.0}) {
    CHECK(rel_err(commutator_check_b2(dilate(f, lambda), dilate(g, lambda), 1.0).ratio, base) < 1e-6);
  }
  HolderExponents bad;
  bad.p2 = 3.0;
  CHECK_THROWS_AS(commutator_check_b2(f, g, 1.0, bad), ContractViolation);
  HolderExponents other{4.0, 8.0, 8.0, 8.0, 8.0};
  CHECK_NOTHROW(commutator_check_b2(f, g, 1.5, other));
}

TEST_CASE("interpolation inequalities with constant one") {
  const GridSpec grid = make_grid(1, 128, kPi);
  for (int seed = 0; seed < 40; ++seed) {
    auto rng = make_rng(411, static_cast<std::uint64_t>(seed));
    const RealField f = random_field(grid, rng);
    std::uniform_real_distribution<double> U(0.0, 2.0);
    const double r = U(rng), s = U(rng);
    CHECK(interpolation_sum_check(f, r, s).holds);
    const double hi = std::max(r, s) + 0.01, lo = std::min(r, s);
    CHECK(interpolation_holder_check(f, lo, hi).holds);
  }
  CHECK_THROWS_AS(interpolation_holder_check(RealField::zeros(grid), 2.0, 1.0), ContractViolation);
}

TEST_CASE("suites") {
  const auto names = suite_names();
  CHECK(std::find(names.begin(), names.end(), "wiener") != names.end());
  CHECK_THROWS_AS(run_suite("nope", 1), ContractViolation);

  const SuiteReport a = run_suite("interpolation", 5);
  const SuiteReport b = run_suite("interpolation", 5);
  CHECK(a.counterexamples() == 0);
  REQUIRE(a.records.size() == b.records.size());
  CHECK(a.records.size() >= 400);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].id == b.records[i].id);
    CHECK(a.records[i].ratio == b.records[i].ratio);
    if (i > 0) CHECK(a.records[i - 1].id < a.records[i].id);
  }
}
