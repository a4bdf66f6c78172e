#include "fpnp/spectral.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>

#include "fpnp/errors.hpp"
#include "fpnp/fft.hpp"

namespace fpnp {

RealField::RealField(GridSpec g, Eigen::ArrayXd v) : grid(g), values(std::move(v)) {
  if (static_cast<std::size_t>(values.size()) != grid.size()) {
    throw ContractViolation("field size does not match grid " + describe(grid));
  }
}

RealField RealField::zeros(const GridSpec& grid) {
  return {grid, Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(grid.size()))};
}

RealField RealField::constant(const GridSpec& grid, double value) {
  return {grid, Eigen::ArrayXd::Constant(static_cast<Eigen::Index>(grid.size()), value)};
}

SpectralField::SpectralField(GridSpec g, Eigen::ArrayXcd c) : grid(g), coeffs(std::move(c)) {
  if (static_cast<std::size_t>(coeffs.size()) != grid.spectral_size()) {
    throw ContractViolation("spectrum size does not match grid " + describe(grid));
  }
}

SpectralField SpectralField::zeros(const GridSpec& grid) {
  return {grid, Eigen::ArrayXcd::Zero(static_cast<Eigen::Index>(grid.spectral_size()))};
}

double coordinate(const GridSpec& grid, std::size_t index, int axis) {
  std::size_t stride = 1;
  for (int j = axis + 1; j < grid.d; ++j) stride *= static_cast<std::size_t>(grid.n);
  std::size_t i = (index / stride) % static_cast<std::size_t>(grid.n);
  return -grid.half_length + grid.spacing() * static_cast<double>(i);
}

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) {
    throw ContractViolation("grid mismatch: " + describe(a) + " vs " + describe(b));
  }
}

namespace {

std::shared_ptr<const WaveTable> build_table(const GridSpec& grid) {
  auto table = std::make_shared<WaveTable>();
  table->grid = grid;
  const auto size = static_cast<Eigen::Index>(grid.spectral_size());
  const int n = grid.n;
  const int half = n / 2 + 1;
  const double dk = grid.wavenumber_step();

  table->magnitude.resize(size);
  table->weight.resize(size);
  table->max_index.resize(size);
  table->shift.resize(size);
  table->component.assign(static_cast<std::size_t>(grid.d), Eigen::ArrayXd(size));
  table->derivative.assign(static_cast<std::size_t>(grid.d), Eigen::ArrayXd(size));

  std::vector<int> idx(static_cast<std::size_t>(grid.d));
  for (Eigen::Index s = 0; s < size; ++s) {
    auto rest = static_cast<std::size_t>(s);
    const int last = static_cast<int>(rest % static_cast<std::size_t>(half));
    rest /= static_cast<std::size_t>(half);
    idx[static_cast<std::size_t>(grid.d - 1)] = (last == n / 2) ? -n / 2 : last;
    for (int j = grid.d - 2; j >= 0; --j) {
      const int i = static_cast<int>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
      idx[static_cast<std::size_t>(j)] = (i < n / 2) ? i : i - n;
    }
    double k2 = 0.0;
    int max_abs = 0;
    int parity = 0;
    for (int j = 0; j < grid.d; ++j) {
      const int m = idx[static_cast<std::size_t>(j)];
      const double k = dk * m;
      k2 += k * k;
      max_abs = std::max(max_abs, std::abs(m));
      parity += std::abs(m);
      table->component[static_cast<std::size_t>(j)][s] = k;
      table->derivative[static_cast<std::size_t>(j)][s] = (std::abs(m) == n / 2) ? 0.0 : k;
    }
    table->magnitude[s] = std::sqrt(k2);
    table->max_index[s] = max_abs;
    table->weight[s] = (last == 0 || last == n / 2) ? 1.0 : 2.0;
    table->shift[s] = (parity % 2 == 0) ? 1.0 : -1.0;
  }
  return table;
}

}  // namespace

std::shared_ptr<const WaveTable> wave_table(const GridSpec& grid) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, double>, std::shared_ptr<const WaveTable>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_tuple(grid.d, grid.n, grid.half_length);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  // Bounded cache: dilation sweeps create many distinct grids.
  if (cache.size() > 64) cache.clear();
  auto table = build_table(grid);
  cache.emplace(key, table);
  return table;
}

SpectralField forward(const RealField& f) {
  validate(f.grid);
  SpectralField out = SpectralField::zeros(f.grid);
  detail::r2c(f.grid, f.values.data(), out.coeffs.data());
  auto table = wave_table(f.grid);
  out.coeffs *= table->shift / static_cast<double>(f.grid.size());
  return out;
}

RealField inverse(const SpectralField& F) {
  validate(F.grid);
  auto table = wave_table(F.grid);
  Eigen::ArrayXcd shifted = F.coeffs * table->shift;
  RealField out = RealField::zeros(F.grid);
  detail::c2r(F.grid, shifted.data(), out.values.data());
  return out;
}

SpectralField frac_laplacian(const SpectralField& F, double a) {
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw ContractViolation("fractional Laplacian order must be >= 0");
  }
  SpectralField out = apply_radial(F, [a](double k) { return k > 0.0 ? std::pow(k, a) : 0.0; });
  return out;
}

RealField frac_laplacian(const RealField& f, double a) {
  return inverse(frac_laplacian(forward(f), a));
}

SpectralField inv_laplacian(const SpectralField& rhs) {
  return apply_radial(rhs, [](double k) { return k > 0.0 ? -1.0 / (k * k) : 0.0; });
}

RealField inv_laplacian(const RealField& rhs) { return inverse(inv_laplacian(forward(rhs))); }

std::vector<SpectralField> gradient(const SpectralField& F) {
  auto table = wave_table(F.grid);
  std::vector<SpectralField> out;
  out.reserve(static_cast<std::size_t>(F.grid.d));
  const std::complex<double> I(0.0, 1.0);
  for (int j = 0; j < F.grid.d; ++j) {
    out.emplace_back(F.grid, (I * F.coeffs) * table->derivative[static_cast<std::size_t>(j)]);
  }
  return out;
}

std::vector<RealField> gradient(const RealField& f) {
  std::vector<RealField> out;
  for (const auto& component : gradient(forward(f))) out.push_back(inverse(component));
  return out;
}

SpectralField divergence(const std::vector<SpectralField>& components) {
  if (components.empty()) throw ContractViolation("divergence of an empty vector field");
  const GridSpec& grid = components.front().grid;
  if (static_cast<int>(components.size()) != grid.d) {
    throw ContractViolation("divergence needs d components");
  }
  auto table = wave_table(grid);
  const std::complex<double> I(0.0, 1.0);
  SpectralField out = SpectralField::zeros(grid);
  for (int j = 0; j < grid.d; ++j) {
    require_same_grid(grid, components[static_cast<std::size_t>(j)].grid);
    out.coeffs += (I * components[static_cast<std::size_t>(j)].coeffs) *
                  table->derivative[static_cast<std::size_t>(j)];
  }
  return out;
}

SpectralField dealias(const SpectralField& F, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ContractViolation("dealias fraction must lie in (0, 1]");
  }
  auto table = wave_table(F.grid);
  const double cutoff = fraction * (F.grid.n / 2) * (1.0 + 1e-12);
  SpectralField out = F;
  for (Eigen::Index i = 0; i < out.coeffs.size(); ++i) {
    if (table->max_index[i] > cutoff) out.coeffs[i] = 0.0;
  }
  return out;
}

double norm_lp(const RealField& f, double p) {
  if (!(p >= 1.0)) throw ContractViolation("L^p norm needs p >= 1");
  if (std::isinf(p)) return f.values.abs().maxCoeff();
  const double sum = f.values.abs().pow(p).sum();
  return std::pow(f.grid.cell_volume() * sum, 1.0 / p);
}

double norm_hs_dot(const SpectralField& F, double s) {
  if (!(s >= 0.0)) throw ContractViolation("Sobolev order must be >= 0");
  auto table = wave_table(F.grid);
  const Eigen::ArrayXd symbol =
      s == 0.0 ? Eigen::ArrayXd(Eigen::ArrayXd::Ones(table->magnitude.size()))
               : Eigen::ArrayXd(table->magnitude.pow(2.0 * s));
  const double sum = (table->weight * symbol * F.coeffs.abs2()).sum();
  return std::sqrt(F.grid.box_volume() * sum);
}

double norm_hs_dot(const RealField& f, double s) { return norm_hs_dot(forward(f), s); }

double coefficient_norm(const SpectralField& F) { return norm_hs_dot(F, 0.0); }

double wiener_norm(const SpectralField& F) {
  auto table = wave_table(F.grid);
  const double sum = (table->weight * F.coeffs.abs()).sum();
  return std::pow(2.0 * M_PI, F.grid.d) * sum;
}

double wiener_norm(const RealField& f) { return wiener_norm(forward(f)); }

}  // namespace fpnp
