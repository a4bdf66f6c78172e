#pragma once

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "fpnp/field.hpp"
#include "fpnp/spectral.hpp"

namespace fpnp::testing {

inline constexpr double kPi = std::numbers::pi;

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline double max_abs(const Eigen::ArrayXd& a) { return a.abs().maxCoeff(); }

inline double max_abs_diff(const RealField& a, const RealField& b) {
  return (a.values - b.values).abs().maxCoeff();
}

/// Relative sup-norm distance, scaled by the larger field.
inline double rel_diff(const RealField& a, const RealField& b) {
  const double scale = std::max(max_abs(a.values), max_abs(b.values));
  return scale == 0.0 ? 0.0 : max_abs_diff(a, b) / scale;
}

/// One plane wave a cos(k.x + phase) with k = (pi/L) m.
struct Wave {
  Eigen::VectorXi index;
  double amplitude = 1.0;
  double phase = 0.0;
};

inline Eigen::VectorXd wavevector(const GridSpec& grid, const Eigen::VectorXi& m) {
  return m.cast<double>() * (kPi / grid.half_length);
}

inline RealField sample_waves(const GridSpec& grid, const std::vector<Wave>& waves) {
  return sample(grid, [&](const Eigen::VectorXd& x) {
    double s = 0.0;
    for (const auto& w : waves) s += w.amplitude * std::cos(wavevector(grid, w.index).dot(x) + w.phase);
    return s;
  });
}

/// Random trigonometric polynomial with lattice indices strictly below
/// `max_index` per axis (so below Nyquist when max_index <= n/2).
inline std::vector<Wave> random_waves(const GridSpec& grid, std::mt19937_64& rng, int count,
                                      int max_index) {
  std::uniform_int_distribution<int> idx(-max_index + 1, max_index - 1);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
  std::vector<Wave> out;
  for (int j = 0; j < count; ++j) {
    Wave w;
    w.index.resize(grid.d);
    for (int a = 0; a < grid.d; ++a) w.index[a] = idx(rng);
    w.amplitude = amp(rng);
    w.phase = ph(rng);
    out.push_back(w);
  }
  return out;
}

/// White noise samples.
inline RealField random_field(const GridSpec& grid, std::mt19937_64& rng) {
  std::normal_distribution<double> N(0.0, 1.0);
  RealField f = RealField::zeros(grid);
  for (Eigen::Index i = 0; i < f.values.size(); ++i) f.values[i] = N(rng);
  return f;
}

/// exp(-|x - c|^2 / w^2) with center c = offset * (1, ..., 1).
inline RealField gaussian(const GridSpec& grid, double width, double amplitude = 1.0,
                          double offset = 0.0) {
  return sample(grid, [&](const Eigen::VectorXd& x) {
    return amplitude * std::exp(-(x.array() - offset).square().sum() / (width * width));
  });
}

/// O(N^2) transform: (1/n^d) sum_j f(x_j) e^{-i k.x_j} at one wavevector.
inline std::complex<double> naive_coefficient(const RealField& f, const Eigen::VectorXd& k) {
  std::complex<double> acc = 0.0;
  Eigen::VectorXd x(f.grid.d);
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    for (int a = 0; a < f.grid.d; ++a) x[a] = coordinate(f.grid, i, a);
    acc += f.values[static_cast<Eigen::Index>(i)] * std::polar(1.0, -k.dot(x));
  }
  return acc / static_cast<double>(f.grid.size());
}

}  // namespace fpnp::testing
