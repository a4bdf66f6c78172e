#include "fpnp/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace fpnp::detail {
namespace {

struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const Plans& plans_for(const GridSpec& grid) {
  static std::map<std::pair<int, int>, Plans> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto key = std::make_pair(grid.d, grid.n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<int> dims(static_cast<std::size_t>(grid.d), grid.n);
  double* real = fftw_alloc_real(grid.size());
  fftw_complex* cplx = fftw_alloc_complex(grid.spectral_size());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  Plans p;
  p.forward = fftw_plan_dft_r2c(grid.d, dims.data(), real, cplx, flags);
  p.backward = fftw_plan_dft_c2r(grid.d, dims.data(), cplx, real, flags);
  fftw_free(real);
  fftw_free(cplx);
  return cache.emplace(key, p).first->second;
}

}  // namespace

void r2c(const GridSpec& grid, const double* in, std::complex<double>* out) {
  const Plans& p = plans_for(grid);
  fftw_execute_dft_r2c(p.forward, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void c2r(const GridSpec& grid, const std::complex<double>* in, double* out) {
  const Plans& p = plans_for(grid);
  std::vector<std::complex<double>> scratch(in, in + grid.spectral_size());
  fftw_execute_dft_c2r(p.backward, reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

}  // namespace fpnp::detail
