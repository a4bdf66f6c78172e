#pragma once

#include <Eigen/Core>
#include <complex>
#include <utility>

#include "fpnp/grid.hpp"

namespace fpnp {

/// Point samples of a real function on a GridSpec.
struct RealField {
  GridSpec grid;
  Eigen::ArrayXd values;

  RealField() = default;
  RealField(GridSpec g, Eigen::ArrayXd v);

  static RealField zeros(const GridSpec& grid);
  static RealField constant(const GridSpec& grid, double value);

  double mean() const { return values.mean(); }
  double max() const { return values.maxCoeff(); }
  double min() const { return values.minCoeff(); }
  bool all_finite() const { return values.isFinite().all(); }
};

/// Fourier coefficients of a real field in Hermitian half-spectrum layout:
/// shape n x ... x (n/2+1), last axis fastest. Normalized so that
/// coeffs[0] is the mean of the field and coeff(k) ~ (2L)^-d int f e^{-ikx}.
struct SpectralField {
  GridSpec grid;
  Eigen::ArrayXcd coeffs;

  SpectralField() = default;
  SpectralField(GridSpec g, Eigen::ArrayXcd c);

  static SpectralField zeros(const GridSpec& grid);
};

/// Coordinates of grid point `index` along `axis`.
double coordinate(const GridSpec& grid, std::size_t index, int axis);

/// Samples f(x) at every grid point; `f` receives an Eigen::VectorXd of
/// length d.
template <class F>
RealField sample(const GridSpec& grid, F&& f) {
  RealField out = RealField::zeros(grid);
  Eigen::VectorXd x(grid.d);
  const std::size_t total = grid.size();
  for (std::size_t i = 0; i < total; ++i) {
    for (int j = 0; j < grid.d; ++j) x[j] = coordinate(grid, i, j);
    out.values[static_cast<Eigen::Index>(i)] = f(x);
  }
  return out;
}

/// Throws ContractViolation unless both fields live on the same grid.
void require_same_grid(const GridSpec& a, const GridSpec& b);

inline RealField operator+(const RealField& a, const RealField& b) {
  require_same_grid(a.grid, b.grid);
  return {a.grid, a.values + b.values};
}

inline RealField operator-(const RealField& a, const RealField& b) {
  require_same_grid(a.grid, b.grid);
  return {a.grid, a.values - b.values};
}

inline RealField operator*(double s, const RealField& a) { return {a.grid, s * a.values}; }

inline RealField operator-(const RealField& a) { return {a.grid, -a.values}; }

}  // namespace fpnp
