#include "fpnp/grid.hpp"

#include <cmath>
#include <sstream>

#include "fpnp/errors.hpp"

namespace fpnp {

const char* to_string(NumericalFailure::Kind kind) {
  switch (kind) {
    case NumericalFailure::Kind::Instability: return "instability";
    case NumericalFailure::Kind::Positivity: return "positivity";
    case NumericalFailure::Kind::Saturation: return "saturation";
    case NumericalFailure::Kind::Resolution: return "resolution";
  }
  return "unknown";
}

std::size_t GridSpec::size() const {
  std::size_t total = 1;
  for (int j = 0; j < d; ++j) total *= static_cast<std::size_t>(n);
  return total;
}

std::size_t GridSpec::spectral_size() const {
  std::size_t total = static_cast<std::size_t>(n / 2 + 1);
  for (int j = 1; j < d; ++j) total *= static_cast<std::size_t>(n);
  return total;
}

double GridSpec::cell_volume() const { return std::pow(spacing(), d); }

double GridSpec::box_volume() const { return std::pow(2.0 * half_length, d); }

double GridSpec::wavenumber_step() const { return M_PI / half_length; }

void validate(const GridSpec& grid) {
  if (grid.d < 1 || grid.d > 3) {
    throw ContractViolation("grid dimension must be 1, 2 or 3, got " + std::to_string(grid.d));
  }
  if (grid.n < 8 || grid.n % 2 != 0) {
    throw ContractViolation("points per axis must be even and >= 8, got " + std::to_string(grid.n));
  }
  if (!(grid.half_length > 0.0) || !std::isfinite(grid.half_length)) {
    throw ContractViolation("box half-length must be positive");
  }
  double points = std::pow(static_cast<double>(grid.n), grid.d);
  if (points > static_cast<double>(GridSpec::kMaxPoints)) {
    throw ContractViolation("grid " + describe(grid) + " exceeds the memory budget");
  }
}

GridSpec make_grid(int d, int n, double half_length) {
  GridSpec grid{d, n, half_length};
  validate(grid);
  return grid;
}

std::string describe(const GridSpec& grid) {
  std::ostringstream os;
  os << "d=" << grid.d << " n=" << grid.n << " L=" << grid.half_length;
  return os.str();
}

void validate(const FracExponents& exps) {
  auto in_range = [](double a) { return a > 0.0 && a < 2.0; };
  if (!in_range(exps.alpha) || !in_range(exps.beta)) {
    throw ContractViolation("fractional orders must satisfy 0<alpha,beta<2");
  }
}

}  // namespace fpnp
