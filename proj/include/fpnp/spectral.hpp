#pragma once

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "fpnp/field.hpp"

namespace fpnp {

/// Wavenumber data for the half-spectrum layout of one grid.
struct WaveTable {
  GridSpec grid;
  Eigen::ArrayXd magnitude;                  // |k|
  std::vector<Eigen::ArrayXd> component;     // k_j
  std::vector<Eigen::ArrayXd> derivative;    // k_j with the axis-j Nyquist mode zeroed
  Eigen::ArrayXd weight;                     // multiplicity in the full spectrum (1 or 2)
  Eigen::ArrayXi max_index;                  // max_j |integer index j|
  Eigen::ArrayXd shift;                      // (-1)^{sum idx}, recenters FFTW phases on x=0
};

/// Cached, immutable wavenumber table for `grid`.
std::shared_ptr<const WaveTable> wave_table(const GridSpec& grid);

SpectralField forward(const RealField& f);
RealField inverse(const SpectralField& F);

/// Multiplies every coefficient by a real symbol evaluated on |k|.
template <class Symbol>
SpectralField apply_radial(SpectralField F, Symbol&& symbol) {
  auto table = wave_table(F.grid);
  for (Eigen::Index i = 0; i < F.coeffs.size(); ++i) F.coeffs[i] *= symbol(table->magnitude[i]);
  return F;
}

/// Lambda^a: multiplication by |k|^a, zero mode mapped to 0. Requires a >= 0.
RealField frac_laplacian(const RealField& f, double a);
SpectralField frac_laplacian(const SpectralField& F, double a);

/// Solves Lap psi = rhs - mean(rhs) with zero-mean psi.
RealField inv_laplacian(const RealField& rhs);
SpectralField inv_laplacian(const SpectralField& rhs);

/// Spectral gradient; the Nyquist mode of each derivative is zeroed.
std::vector<RealField> gradient(const RealField& f);
std::vector<SpectralField> gradient(const SpectralField& F);

/// Divergence of a vector field given in spectral form.
SpectralField divergence(const std::vector<SpectralField>& components);

/// Zeroes coefficients with any |k_j| > fraction * k_nyquist. 0 < fraction <= 1.
SpectralField dealias(const SpectralField& F, double fraction);

/// (h^d sum |f|^p)^{1/p}; p = infinity gives max |f|. Requires p >= 1.
double norm_lp(const RealField& f, double p);

/// Homogeneous Sobolev norm ||Lambda^s f||_{L^2} evaluated on the
/// coefficients. s = 0 reproduces the L^2 norm.
double norm_hs_dot(const RealField& f, double s);
double norm_hs_dot(const SpectralField& F, double s);

/// Discrete analogue of int |f^(xi)| dxi with f^(xi) = int f e^{-ix.xi} dx,
/// i.e. (2 pi)^d sum_k |coeff(k)|. Bounds (2 pi)^d max|f|.
double wiener_norm(const RealField& f);
double wiener_norm(const SpectralField& F);

/// sqrt((2L)^d sum_k |coeff(k)|^2), the coefficient side of Parseval.
double coefficient_norm(const SpectralField& F);

}  // namespace fpnp
