#pragma once

#include <cstddef>
#include <string>

namespace fpnp {

/// Uniform periodic grid on the box [-L, L)^d with n points per axis.
///
/// Samples are stored row-major with axis 0 slowest. The associated
/// wavenumber lattice is (pi/L) * {-n/2, ..., n/2-1}^d.
struct GridSpec {
  int d = 1;
  int n = 64;
  double half_length = 3.141592653589793;

  /// Upper bound on n^d accepted by validate().
  static constexpr std::size_t kMaxPoints = std::size_t{1} << 27;

  std::size_t size() const;
  /// Number of stored coefficients in the Hermitian half spectrum,
  /// n^(d-1) * (n/2 + 1).
  std::size_t spectral_size() const;
  double spacing() const { return 2.0 * half_length / n; }
  double cell_volume() const;
  double box_volume() const;
  /// Lattice spacing pi/L of the wavenumbers.
  double wavenumber_step() const;
  double nyquist() const { return wavenumber_step() * (n / 2); }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Throws ContractViolation unless d in {1,2,3}, n even and >= 8, L > 0
/// and n^d within kMaxPoints.
void validate(const GridSpec& grid);

GridSpec make_grid(int d, int n, double half_length);

std::string describe(const GridSpec& grid);

/// Fractional orders of the electron (alpha) and hole (beta) diffusions.
struct FracExponents {
  double alpha = 1.5;
  double beta = 1.5;

  double max() const { return alpha > beta ? alpha : beta; }
  double min() const { return alpha < beta ? alpha : beta; }

  friend bool operator==(const FracExponents&, const FracExponents&) = default;
};

/// Throws ContractViolation unless 0 < alpha, beta < 2.
void validate(const FracExponents& exps);

}  // namespace fpnp
