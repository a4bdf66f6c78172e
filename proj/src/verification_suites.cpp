#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "fpnp/errors.hpp"
#include "fpnp/inequality_lab.hpp"
#include "fpnp/rng.hpp"
#include "fpnp/spectral.hpp"

namespace fpnp {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string tag(const char* prefix, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%g", prefix, v);
  return buf;
}

std::string index_tag(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03d", i);
  return buf;
}

double spread(const std::vector<double>& ratios) {
  double worst = 0.0;
  for (double r : ratios) worst = std::max(worst, std::abs(r / ratios.front() - 1.0));
  return worst;
}

/// Zero-mean real field on the 2 pi box: `modes` random integer
/// wavenumbers in [1, max_index] with Gaussian coefficients.
RealField random_band_limited(const GridSpec& grid, int modes, int max_index, double decay,
                              double offset, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(1, max_index);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::tuple<int, double, double>> terms;
  for (int j = 0; j < modes; ++j) {
    const int m = pick(rng);
    const double scale = std::pow(1.0 + m, -decay);
    terms.emplace_back(m, scale * normal(rng), scale * normal(rng));
  }
  const double dk = grid.wavenumber_step();
  return sample(grid, [&](const Eigen::VectorXd& x) {
    double v = offset;
    for (const auto& [m, c, s] : terms) v += c * std::cos(dk * m * x[0]) + s * std::sin(dk * m * x[0]);
    return v;
  });
}

const double kLemmaOrders[] = {0.5, 1.0, 1.5};
const double kLemmaExponents[] = {1.0, 2.0};

CheckRecord lemma_record(const std::string& id, const std::string& ineq, const TestFunction& h,
                         const LemmaAReport& r) {
  return {id, ineq, h.describe(), r.lhs, r.rhs, r.rhs != 0.0 ? r.lhs / r.rhs : 0.0, r.holds};
}

void lemma_a_suite(std::uint64_t seed, SuiteReport& report) {
  for (int d : {1, 2}) {
    for (int i = 0; i < 50; ++i) {
      auto rng = make_rng(seed, static_cast<std::uint64_t>(1000 * d + i));
      const GaussianMixture h = GaussianMixture::random(d, rng, false);
      for (double a : kLemmaOrders) {
        for (double p : kLemmaExponents) {
          const std::string id = "lemma_a/d" + std::to_string(d) + "/" + index_tag(i) +
                                 tag("/a", a) + tag("/p", p);
          report.records.push_back(lemma_record(id, "lemma_a", h, lemma_a_bound(h, a, p)));
        }
      }
    }

    // Minimum side on mixtures with a negative dip.
    int found = 0;
    for (int i = 0; found < 10 && i < 500; ++i) {
      auto rng = make_rng(seed, static_cast<std::uint64_t>(5000 + 1000 * d + i));
      const GaussianMixture h = GaussianMixture::random(d, rng, true);
      if (!(locate_extremum(h, true).value < 0.0)) continue;
      for (double a : kLemmaOrders) {
        const std::string id = "lemma_a_min/d" + std::to_string(d) + "/" + index_tag(found) +
                               tag("/a", a);
        report.records.push_back(lemma_record(id, "lemma_a_min", h, lemma_a_bound_min(h, a, 1.0)));
      }
      ++found;
    }

    // Dilation sweep of one mixture.
    auto rng = make_rng(seed, static_cast<std::uint64_t>(9000 + d));
    const GaussianMixture base = GaussianMixture::random(d, rng, false);
    std::vector<double> ratios;
    for (double lambda : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const GaussianMixture h = base.dilated(lambda);
      const LemmaAReport r = lemma_a_bound(h, 1.0, 1.0);
      ratios.push_back(r.lhs / r.rhs);
      report.records.push_back(lemma_record("lemma_a_dilation/d" + std::to_string(d) +
                                                tag("/lambda", lambda),
                                            "lemma_a", h, r));
    }
    report.metrics["lemma_a.dilation_spread_d" + std::to_string(d)] = spread(ratios);
  }
}

void wiener_suite(std::uint64_t seed, SuiteReport& report) {
  const GridSpec grid = make_grid(1, 256, kPi);
  auto add = [&](const std::string& id, const std::string& inputs, const WienerReport& w) {
    report.records.push_back({"wiener_l1/" + id, "wiener_l1", inputs, w.lhs, w.rhs_l1, w.ratio_l1,
                              w.ratio_l1 <= 1.0 + 1e-12});
    report.records.push_back({"wiener_l2/" + id, "wiener_l2", inputs, w.lhs, w.rhs_l2, w.ratio_l2,
                              w.ratio_l2 <= 1.0 + 1e-12});
  };
  double worst = 0.0;
  for (double delta : {0.5, 1.5}) {
    for (int i = 0; i < 100; ++i) {
      auto rng = make_rng(seed, static_cast<std::uint64_t>(20000 + i));
      const RealField u = random_band_limited(grid, 16, 16, 0.0, 0.0, rng);
      const WienerReport w = wiener_interp_check(u, delta);
      worst = std::max({worst, w.ratio_l1, w.ratio_l2});
      add(tag("delta", delta) + "/" + index_tag(i), "band_limited(seed stream " +
          std::to_string(20000 + i) + ", 16 modes)", w);
    }
    const RealField single = sample(grid, [](const Eigen::VectorXd& x) { return std::cos(3.0 * x[0]); });
    add(tag("delta", delta) + "/single_mode", "cos(3x)", wiener_interp_check(single, delta));
  }
  report.metrics["wiener.max_ratio"] = worst;

  const RealField gauss =
      sample(make_grid(1, 512, 20.0), [](const Eigen::VectorXd& x) { return std::exp(-x[0] * x[0]); });
  std::vector<double> r1, r2;
  for (double lambda : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const WienerReport w = wiener_interp_check(dilate(gauss, lambda), 1.5);
    r1.push_back(w.ratio_l1);
    r2.push_back(w.ratio_l2);
    add(tag("dilation/lambda", lambda), "exp(-x^2) dilated", w);
  }
  report.metrics["wiener.dilation_spread"] = std::max(spread(r1), spread(r2));
}

void commutator_suite(std::uint64_t seed, SuiteReport& report) {
  double worst = 0.0;
  auto add = [&](const std::string& id, const std::string& inputs, const CommutatorB1Report& r) {
    worst = std::max(worst, r.ratio);
    report.records.push_back({id, "commutator_b1", inputs, r.lhs, r.rhs, r.ratio, r.holds});
  };
  for (double s : {1.0, 1.5, 2.0}) {
    for (int i = 0; i < 100; ++i) {
      auto rng = make_rng(seed, static_cast<std::uint64_t>(30000 + i));
      const FourierSum f = FourierSum::random(1, kPi, 16, 16, rng);
      const FourierSum g = FourierSum::random(1, kPi, 16, 16, rng);
      add("commutator_b1/d1" + tag("/s", s) + "/" + index_tag(i),
          "random 16-mode sums (stream " + std::to_string(30000 + i) + ")",
          commutator_check_b1(f, g, s));
    }
    for (int i = 0; i < 20; ++i) {
      auto rng = make_rng(seed, static_cast<std::uint64_t>(31000 + i));
      const FourierSum f = FourierSum::random(2, kPi, 8, 6, rng);
      const FourierSum g = FourierSum::random(2, kPi, 8, 6, rng);
      add("commutator_b1/d2" + tag("/s", s) + "/" + index_tag(i),
          "random 8-mode sums (stream " + std::to_string(31000 + i) + ")",
          commutator_check_b1(f, g, s));
    }
    auto rng = make_rng(seed, 32000);
    const FourierSum f = FourierSum::random(1, kPi, 16, 16, rng);
    add("commutator_b1/constant_g" + tag("/s", s), "g constant",
        commutator_check_b1(f, FourierSum::constant(1, kPi, 2.0), s));
  }
  report.metrics["commutator_b1.max_ratio"] = worst;

  auto rng = make_rng(seed, 33000);
  const FourierSum f = FourierSum::random(1, kPi, 16, 16, rng);
  const FourierSum g = FourierSum::random(1, kPi, 16, 16, rng);
  std::vector<double> ratios;
  for (double lambda : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const FourierSum fl(1, lambda * kPi, f.terms());
    const FourierSum gl(1, lambda * kPi, g.terms());
    ratios.push_back(commutator_check_b1(fl, gl, 1.5).ratio);
  }
  report.metrics["commutator_b1.dilation_spread"] = spread(ratios);
}

void kato_ponce_suite(std::uint64_t seed, SuiteReport& report) {
  for (double s : {1.0, 2.0}) {
    double constant[2] = {0.0, 0.0};
    const int sizes[2] = {1024, 2048};
    for (int level = 0; level < 2; ++level) {
      const GridSpec grid = make_grid(1, sizes[level], 20.0);
      for (int i = 0; i < 100; ++i) {
        auto rng = make_rng(seed, static_cast<std::uint64_t>(40000 + i));
        const GaussianMixture fh = GaussianMixture::random(1, rng, false);
        const GaussianMixture gh = GaussianMixture::random(1, rng, true);
        const RealField f = sample(grid, [&](const Eigen::VectorXd& x) { return fh.value(x); });
        const RealField g = sample(grid, [&](const Eigen::VectorXd& x) { return gh.value(x); });
        constant[level] = std::max(constant[level], commutator_check_b2(f, g, s).ratio);
      }
    }
    const double change = std::abs(constant[0] / constant[1] - 1.0);
    report.records.push_back({"kato_ponce/refinement" + tag("/s", s), "kato_ponce_refinement",
                              "100 mixture pairs, n=1024 vs n=2048, L=20", constant[0],
                              constant[1], change, change <= 0.1});
    report.metrics["kato_ponce.empirical_constant" + tag("_s", s)] = constant[1];

    const GridSpec grid = make_grid(1, 2048, 20.0);
    const RealField f = sample(grid, [](const Eigen::VectorXd& x) { return std::exp(-x[0] * x[0]); });
    const RealField g = sample(grid, [](const Eigen::VectorXd& x) {
      return std::exp(-(x[0] - 0.5) * (x[0] - 0.5) / 2.0);
    });
    std::vector<double> ratios;
    for (int j = 0; j < 5; ++j) {
      const double lambda = std::pow(2.0, j);
      ratios.push_back(commutator_check_b2(dilate(f, lambda), dilate(g, lambda), s).ratio);
    }
    const double dev = spread(ratios);
    report.records.push_back({"kato_ponce/dilation" + tag("/s", s), "kato_ponce_dilation",
                              "exp(-x^2), exp(-(x-0.5)^2/2), lambda = 1..16", ratios.front(),
                              ratios.back(), dev, dev <= 1e-6});
    report.metrics["kato_ponce.dilation_spread" + tag("_s", s)] = dev;

    const RealField c = RealField::constant(grid, 3.0);
    const CommutatorB2Report zero = commutator_check_b2(f, c, s);
    report.records.push_back({"kato_ponce/constant_g" + tag("/s", s), "kato_ponce", "g constant",
                              zero.lhs, zero.term_1 + zero.term_2, zero.ratio, zero.ratio == 0.0});
  }
}

void interpolation_suite(std::uint64_t seed, SuiteReport& report) {
  const GridSpec grid = make_grid(1, 128, kPi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_sum = 0.0, worst_holder = 0.0;
  for (int i = 0; i < 200; ++i) {
    auto rng = make_rng(seed, static_cast<std::uint64_t>(50000 + i));
    const double decay = 3.0 * unit(rng);
    const double offset = unit(rng) - 0.5;
    const RealField f = random_band_limited(grid, 12, 40, decay, offset, rng);
    const double r = 0.05 + 2.95 * unit(rng);
    const double s = 2.0 * unit(rng);
    const double s_low = r * unit(rng);
    const std::string inputs = "band_limited(stream " + std::to_string(50000 + i) + ")";
    const InterpolationReport a = interpolation_sum_check(f, r, s);
    const InterpolationReport b = interpolation_holder_check(f, s_low, r);
    worst_sum = std::max(worst_sum, a.ratio);
    worst_holder = std::max(worst_holder, b.ratio);
    report.records.push_back({"interpolation_sum/" + index_tag(i), "interpolation_sum",
                              inputs + tag(" r=", r) + tag(" s=", s), a.lhs, a.rhs, a.ratio,
                              a.holds});
    report.records.push_back({"interpolation_holder/" + index_tag(i), "interpolation_holder",
                              inputs + tag(" s=", s_low) + tag(" r=", r), b.lhs, b.rhs, b.ratio,
                              b.holds});
  }
  report.metrics["interpolation_sum.max_ratio"] = worst_sum;
  report.metrics["interpolation_holder.max_ratio"] = worst_holder;

  auto rng = make_rng(seed, 51000);
  const RealField f = random_band_limited(grid, 12, 40, 1.0, 0.0, rng);
  std::vector<double> ratios;
  for (double lambda : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    ratios.push_back(interpolation_holder_check(dilate(f, lambda), 0.7, 1.9).ratio);
  }
  report.metrics["interpolation_holder.dilation_spread"] = spread(ratios);
}

void oracle_suite(std::uint64_t, SuiteReport& report) {
  for (int d : {1, 2}) {
    for (double a : kLemmaOrders) {
      const std::string id = "calibration/d" + std::to_string(d) + tag("/a", a);
      try {
        const KernelCalibration cal = kernel_calibration(d, a);
        report.calibrations.push_back(cal);
        report.records.push_back({id, "kernel_constant", "exp(-|x|^2) at 0", cal.calibrated,
                                  cal.standard, cal.relative_mismatch, true});
      } catch (const VerificationFailure& e) {
        report.records.push_back({id, "kernel_constant", e.what(), 0.0, standard_kernel_constant(d, a),
                                  1.0, false});
      }
    }
  }

  // Multiplier on a wide box against the quadrature on |x| <= 3.
  const GridSpec grid = make_grid(1, 1 << 15, 2000.0);
  const GaussianMixture h = GaussianMixture::single(1);
  const RealField field = sample(grid, [&](const Eigen::VectorXd& x) { return h.value(x); });
  for (double a : {0.3, 0.5, 1.0, 1.5, 1.9}) {
    const RealField spectral = frac_laplacian(field, a);
    double err = 0.0, scale = 0.0;
    Eigen::VectorXd x(1);
    for (int m = -24; m <= 24; ++m) {
      const auto i = static_cast<Eigen::Index>(grid.n / 2 + 4 * m);
      x[0] = coordinate(grid, static_cast<std::size_t>(i), 0);
      if (std::abs(x[0]) > 3.0) continue;
      const double q = frac_lap_quadrature(h, x, a);
      err = std::max(err, std::abs(q - spectral.values[i]));
      scale = std::max(scale, std::abs(spectral.values[i]));
    }
    const double rel = err / scale;
    report.records.push_back({"oracle/gaussian" + tag("/a", a), "oracle_equivalence",
                              "exp(-x^2), n=32768, L=2000, |x|<=3", rel, 1e-4, rel / 1e-4,
                              rel < 1e-4});
    report.metrics["oracle.max_relative_error" + tag("_a", a)] = rel;
  }

  const CosineSum wave(1, {{Eigen::VectorXd::Constant(1, 2.0), 1.0, 0.0}});
  for (double a : {0.5, 1.0, 1.5}) {
    Eigen::VectorXd x = Eigen::VectorXd::Constant(1, 0.3);
    const double q = frac_lap_quadrature(wave, x, a);
    const double exact = std::pow(2.0, a) * std::cos(0.6);
    const double rel = std::abs(q - exact) / std::abs(exact);
    report.records.push_back({"oracle/cosine" + tag("/a", a), "oracle_eigenfunction",
                              wave.describe(), rel, 1e-4, rel / 1e-4, rel < 1e-4});
  }
}

using SuiteFn = void (*)(std::uint64_t, SuiteReport&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"commutator", commutator_suite},       {"interpolation", interpolation_suite},
      {"kato_ponce", kato_ponce_suite},       {"lemma_a", lemma_a_suite},
      {"oracle", oracle_suite},               {"wiener", wiener_suite},
  };
  return table;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : suites()) names.push_back(name);
  names.push_back("all");
  return names;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed) {
  SuiteReport report;
  report.suite = name;
  report.seed = seed;
  bool matched = false;
  for (const auto& [suite, fn] : suites()) {
    if (name == suite || name == "all") {
      fn(seed, report);
      matched = true;
    }
  }
  if (!matched) {
    std::string known;
    for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
    throw ContractViolation("unknown suite '" + name + "' (known: " + known + ")");
  }
  std::sort(report.records.begin(), report.records.end(),
            [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
  return report;
}

}  // namespace fpnp
