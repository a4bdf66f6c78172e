#pragma once

#include <complex>

#include "fpnp/grid.hpp"

namespace fpnp::detail {

// Unnormalized multidimensional real<->complex transforms in FFTW layout.
// Plans are cached per (d, n) and shared across threads.
void r2c(const GridSpec& grid, const double* in, std::complex<double>* out);

// `in` is left untouched (the transform runs on an internal copy).
void c2r(const GridSpec& grid, const std::complex<double>* in, double* out);

}  // namespace fpnp::detail
