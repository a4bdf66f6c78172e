#include <doctest.h>

#include "fpnp/errors.hpp"
#include "fpnp/inequality_lab.hpp"
#include "fpnp/rng.hpp"
#include "fpnp/spectral.hpp"
#include "fpnp/test_functions.hpp"
#include "support.hpp"

using namespace fpnp;
using namespace fpnp::testing;

namespace {

const GridSpec kUnit1 = make_grid(1, 32, kPi);

}  // namespace

TEST_CASE("grid validation rejects bad shapes") {
  CHECK_THROWS_AS(make_grid(4, 16, 1.0), ContractViolation);
  CHECK_THROWS_AS(make_grid(1, 15, 1.0), ContractViolation);
  CHECK_THROWS_AS(make_grid(1, 6, 1.0), ContractViolation);
  CHECK_THROWS_AS(make_grid(1, 16, 0.0), ContractViolation);
  CHECK_NOTHROW(make_grid(1, 1000, 1.0));
  CHECK_THROWS_AS(validate(FracExponents{2.0, 1.0}), ContractViolation);
  CHECK_THROWS_AS(validate(FracExponents{1.0, 0.0}), ContractViolation);
}

TEST_CASE("forward matches the naive transform") {
  for (int d : {1, 2}) {
    const GridSpec grid = make_grid(d, d == 1 ? 16 : 8, 2.5);
    auto table = wave_table(grid);
    for (int seed = 0; seed < 5; ++seed) {
      auto rng = make_rng(11, static_cast<std::uint64_t>(seed + 10 * d));
      const RealField f = random_field(grid, rng);
      const SpectralField F = forward(f);
      double worst = 0.0;
      for (Eigen::Index i = 0; i < F.coeffs.size(); ++i) {
        Eigen::VectorXd k(d);
        for (int a = 0; a < d; ++a) k[a] = table->component[a][i];
        worst = std::max(worst, std::abs(F.coeffs[i] - naive_coefficient(f, k)));
      }
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("cos x has coefficient one half at k = 1") {
  const RealField f = sample(kUnit1, [](const Eigen::VectorXd& x) { return std::cos(x[0]); });
  const SpectralField F = forward(f);
  for (Eigen::Index m = 0; m < F.coeffs.size(); ++m) {
    const double want = m == 1 ? 0.5 : 0.0;
    CHECK(std::abs(F.coeffs[m] - want) < 1e-14);
  }
  CHECK(forward(RealField::zeros(kUnit1)).coeffs.abs().maxCoeff() == 0.0);
}

TEST_CASE("zero mode is the mean") {
  auto rng = make_rng(3, 0);
  const RealField f = random_field(make_grid(2, 16, 4.0), rng);
  CHECK(std::abs(forward(f).coeffs[0].real() - f.mean()) < 1e-14);
}

TEST_CASE("round trip reproduces the samples") {
  for (int d : {1, 2, 3}) {
    const GridSpec grid = make_grid(d, d == 3 ? 16 : 64, 3.0);
    for (int seed = 0; seed < 4; ++seed) {
      auto rng = make_rng(5, static_cast<std::uint64_t>(seed));
      const RealField f = random_field(grid, rng);
      CHECK(rel_diff(inverse(forward(f)), f) < 1e-12);
    }
  }
}

TEST_CASE("operations reject mismatched grids") {
  const RealField a = RealField::zeros(make_grid(1, 16, 1.0));
  const RealField b = RealField::zeros(make_grid(1, 32, 1.0));
  CHECK_THROWS_AS(a + b, ContractViolation);
  CHECK_THROWS_AS(RealField(make_grid(1, 16, 1.0), Eigen::ArrayXd::Zero(8)), ContractViolation);
}

TEST_CASE("fractional Laplacian on plane waves") {
  SUBCASE("cos 3x at order 1.5") {
    const RealField f = sample(kUnit1, [](const Eigen::VectorXd& x) { return std::cos(3 * x[0]); });
    CHECK(max_abs_diff(frac_laplacian(f, 1.5), std::pow(3.0, 1.5) * f) < 1e-12);
  }
  SUBCASE("constants map to zero") {
    for (double a : {0.3, 1.0, 1.9}) {
      CHECK(max_abs(frac_laplacian(RealField::constant(kUnit1, 2.5), a).values) < 1e-14);
    }
  }
  SUBCASE("every lattice mode below Nyquist is an eigenfunction") {
    const GridSpec grid = make_grid(2, 16, 1.7);
    for (int m0 = -7; m0 <= 7; m0 += 2) {
      for (int m1 = -7; m1 <= 7; ++m1) {
        Wave w{Eigen::Vector2i(m0, m1), 1.0, 0.4};
        const RealField f = sample_waves(grid, {w});
        const double k = wavevector(grid, w.index).norm();
        for (double a : {0.5, 1.3}) {
          CHECK(max_abs_diff(frac_laplacian(f, a), std::pow(k, a) * f) <=
                1e-10 * std::max(1.0, std::pow(k, a)));
        }
      }
    }
  }
  SUBCASE("random trigonometric sums") {
    const GridSpec grid = make_grid(1, 64, 5.0);
    for (int seed = 0; seed < 20; ++seed) {
      auto rng = make_rng(17, static_cast<std::uint64_t>(seed));
      auto waves = random_waves(grid, rng, 6, 32);
      const double a = 0.1 + 1.8 * std::uniform_real_distribution<double>(0, 1)(rng);
      auto scaled = waves;
      for (auto& w : scaled) w.amplitude *= std::pow(wavevector(grid, w.index).norm(), a);
      CHECK(rel_diff(frac_laplacian(sample_waves(grid, waves), a), sample_waves(grid, scaled)) < 1e-10);
    }
  }
  CHECK_THROWS_AS(frac_laplacian(RealField::zeros(kUnit1), -0.5), ContractViolation);
}

TEST_CASE("fractional Laplacian of a Gaussian agrees with the singular integral") {
  const GridSpec grid = make_grid(1, 4096, 200.0);
  const RealField g = gaussian(grid, 1.0);
  const GaussianMixture h = GaussianMixture::single(1, 1.0);
  for (double a : {1.0, 1.5}) {
    const RealField L = frac_laplacian(g, a);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); i += 5) {
      const double x = coordinate(grid, i, 0);
      if (std::abs(x) > 3.0) continue;
      const double q = frac_lap_quadrature(h, Eigen::VectorXd::Constant(1, x), a);
      worst = std::max(worst, std::abs(L.values[static_cast<Eigen::Index>(i)] - q));
    }
    CHECK(worst / max_abs(L.values) < 1e-4);
  }
}

TEST_CASE("composition of multipliers") {
  const GridSpec grid = make_grid(2, 32, 3.0);
  for (int seed = 0; seed < 10; ++seed) {
    auto rng = make_rng(23, static_cast<std::uint64_t>(seed));
    const RealField f = sample_waves(grid, random_waves(grid, rng, 5, 12));
    std::uniform_real_distribution<double> U(0.0, 1.5);
    const double a = U(rng), b = U(rng);
    CHECK(rel_diff(frac_laplacian(frac_laplacian(f, a), b), frac_laplacian(f, a + b)) < 1e-10);
  }
}

TEST_CASE("inverse Laplacian") {
  const RealField c = sample(kUnit1, [](const Eigen::VectorXd& x) { return std::cos(x[0]); });
  CHECK(max_abs_diff(inv_laplacian(c), -c) < 1e-14);
  const RealField s2 = sample(kUnit1, [](const Eigen::VectorXd& x) { return std::sin(2 * x[0]); });
  CHECK(max_abs_diff(inv_laplacian(s2), -0.25 * s2) < 1e-14);
  CHECK(max_abs(inv_laplacian(RealField::constant(kUnit1, 3.0)).values) == 0.0);

  SUBCASE("Laplacian of the solution recovers the centered source") {
    const GridSpec grid = make_grid(2, 32, 2.0);
    for (int seed = 0; seed < 5; ++seed) {
      auto rng = make_rng(29, static_cast<std::uint64_t>(seed));
      const RealField f = sample_waves(grid, random_waves(grid, rng, 4, 10));
      const RealField psi = inv_laplacian(f);
      const RealField centered{grid, f.values - f.mean()};
      CHECK(rel_diff(-frac_laplacian(psi, 2.0), centered) < 1e-12);
      CHECK(std::abs(psi.mean()) < 1e-14);
    }
  }
}

TEST_CASE("gradient") {
  const RealField s = sample(kUnit1, [](const Eigen::VectorXd& x) { return std::sin(x[0]); });
  const auto g = gradient(s);
  REQUIRE(g.size() == 1);
  CHECK(max_abs_diff(g[0], sample(kUnit1, [](const Eigen::VectorXd& x) { return std::cos(x[0]); })) <
        1e-13);

  const auto gc = gradient(RealField::constant(kUnit1, 4.0));
  CHECK(max_abs(gc[0].values) == 0.0);

  const GridSpec g2 = make_grid(2, 16, kPi);
  const RealField f = sample(g2, [](const Eigen::VectorXd& x) { return std::cos(2 * x[1]); });
  const auto grad = gradient(f);
  REQUIRE(grad.size() == 2);
  CHECK(max_abs(grad[0].values) < 1e-13);
  CHECK(max_abs_diff(grad[1], sample(g2, [](const Eigen::VectorXd& x) { return -2 * std::sin(2 * x[1]); })) <
        1e-12);

  SUBCASE("the Nyquist mode has zero derivative") {
    const RealField nyq = sample(kUnit1, [](const Eigen::VectorXd& x) { return std::cos(16 * x[0]); });
    CHECK(max_abs(gradient(nyq)[0].values) < 1e-12);
  }
}

TEST_CASE("divergence of a gradient is the Laplacian") {
  const GridSpec grid = make_grid(2, 32, 2.0);
  auto rng = make_rng(31, 0);
  const RealField f = sample_waves(grid, random_waves(grid, rng, 5, 10));
  const RealField lap = inverse(divergence(gradient(forward(f))));
  CHECK(rel_diff(lap, -frac_laplacian(f, 2.0)) < 1e-11);
}

TEST_CASE("dealiasing") {
  const GridSpec grid = make_grid(2, 32, kPi);
  auto rng = make_rng(37, 0);
  const SpectralField F = forward(random_field(grid, rng));
  CHECK((dealias(F, 1.0).coeffs - F.coeffs).abs().maxCoeff() == 0.0);
  const SpectralField once = dealias(F, 2.0 / 3.0);
  CHECK((dealias(once, 2.0 / 3.0).coeffs - once.coeffs).abs().maxCoeff() == 0.0);

  const RealField high = sample(grid, [](const Eigen::VectorXd& x) { return std::cos(12 * x[0]); });
  CHECK(max_abs(inverse(dealias(forward(high), 2.0 / 3.0)).values) < 1e-14);
  const RealField low = sample(grid, [](const Eigen::VectorXd& x) { return std::cos(10 * x[1]); });
  CHECK(max_abs_diff(inverse(dealias(forward(low), 2.0 / 3.0)), low) < 1e-13);
  CHECK_THROWS_AS(dealias(F, 0.0), ContractViolation);
  CHECK_THROWS_AS(dealias(F, 1.5), ContractViolation);
}

TEST_CASE("Lebesgue norms") {
  const RealField c = sample(kUnit1, [](const Eigen::VectorXd& x) { return std::cos(x[0]); });
  CHECK(rel_err(norm_lp(c, 2.0), std::sqrt(kPi)) < 1e-13);
  CHECK(rel_err(norm_lp(RealField::constant(kUnit1, 1.0), 1.0), 2 * kPi) < 1e-14);
  CHECK(norm_lp(c, INFINITY) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rel_err(norm_lp(gaussian(make_grid(1, 1024, 20.0), 1.0), 1.0), std::sqrt(kPi)) < 1e-8);
  CHECK_THROWS_AS(norm_lp(c, 0.5), ContractViolation);
}

TEST_CASE("homogeneous Sobolev norms") {
  for (int k : {1, 3, 7}) {
    const RealField c = sample(kUnit1, [k](const Eigen::VectorXd& x) { return std::cos(k * x[0]); });
    for (double s : {0.0, 0.5, 1.0, 2.5}) {
      CHECK(rel_err(norm_hs_dot(c, s), std::pow(k, s) * std::sqrt(kPi)) < 1e-12);
    }
  }
  CHECK(norm_hs_dot(RealField::constant(kUnit1, 2.0), 1.0) == 0.0);

  SUBCASE("Parseval on random fields") {
    for (int d : {1, 2, 3}) {
      const GridSpec grid = make_grid(d, d == 3 ? 16 : 32, 1.3);
      for (int seed = 0; seed < 5; ++seed) {
        auto rng = make_rng(41, static_cast<std::uint64_t>(seed + 10 * d));
        const RealField f = random_field(grid, rng);
        CHECK(rel_err(norm_hs_dot(f, 0.0), norm_lp(f, 2.0)) < 1e-12);
        CHECK(rel_err(coefficient_norm(forward(f)), norm_lp(f, 2.0)) < 1e-12);
      }
    }
  }

  SUBCASE("Fourier-side interpolation bounds with constant one") {
    const GridSpec grid = make_grid(1, 64, 2.0);
    for (int seed = 0; seed < 50; ++seed) {
      auto rng = make_rng(43, static_cast<std::uint64_t>(seed));
      const RealField f = random_field(grid, rng);
      std::uniform_real_distribution<double> U(0.0, 3.0);
      const double r = U(rng), s = U(rng);
      const double l2 = norm_lp(f, 2.0);
      CHECK(std::pow(norm_hs_dot(f, r), 2) <= (l2 * l2 + std::pow(norm_hs_dot(f, r + s), 2)) * (1 + 1e-12));
      const double lo = std::min(r, s), hi = std::max(r, s);
      if (hi > 0) {
        CHECK(norm_hs_dot(f, lo) <=
              std::pow(l2, 1 - lo / hi) * std::pow(norm_hs_dot(f, hi), lo / hi) * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("Wiener norm") {
  CHECK(wiener_norm(RealField::zeros(kUnit1)) == 0.0);
  const RealField c = sample(kUnit1, [](const Eigen::VectorXd& x) { return std::cos(x[0]); });
  // Coefficients 1/2 at k = +-1, stored once with lattice weight 2.
  CHECK(rel_err(wiener_norm(c), 2 * kPi * (0.5 * 2)) < 1e-13);
  // The transform of exp(-x^2) is sqrt(pi) exp(-xi^2/4), whose integral is 2 pi.
  CHECK(rel_err(wiener_norm(gaussian(make_grid(1, 1024, 20.0), 1.0)), 2 * kPi) < 1e-6);
  // The sup norm is bounded by the Wiener norm over (2 pi)^d.
  auto rng = make_rng(47, 0);
  const RealField f = random_field(make_grid(2, 16, 1.0), rng);
  CHECK(norm_lp(f, INFINITY) <= wiener_norm(f) / std::pow(2 * kPi, 2) * (1 + 1e-12));
}
