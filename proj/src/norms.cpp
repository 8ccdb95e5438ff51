#include "qzak/norms.hpp"

#include <cmath>

#include "qzak/error.hpp"
#include "qzak/fft.hpp"
#include "qzak/kernels.hpp"
#include "qzak/multipliers.hpp"

namespace qzak {

double l2_norm(const Field& f) {
  const double sum = kernels::norm_squared(f.values());
  return std::sqrt(f.is_spectral() ? sum : sum * f.grid().cell_measure());
}

double sobolev_norm(const Field& f, int m) {
  if (m < 0) throw Error(ErrorCode::invalid_parameter, "Sobolev index must be >= 0");
  const Field spec = f.is_spectral() ? f : to_spectral(f);
  const auto k2 = f.grid().wavenumber_squared();
  std::vector<double> weight(k2.size());
  for (std::size_t i = 0; i < k2.size(); ++i) weight[i] = std::pow(1.0 + k2[i], m);
  return std::sqrt(kernels::weighted_norm_squared(spec.values(), weight));
}

std::vector<Field> derivative_power(const Field& f, int k) {
  if (k < 0) throw Error(ErrorCode::invalid_parameter, "derivative order must be >= 0");
  const Grid& grid = f.grid();
  const FftEngine fft(grid);
  const Field spec = f.is_spectral() ? f : fft.to_spectral(f);
  const auto k2 = grid.wavenumber_squared();
  // Delta^(floor(k/2)) has symbol (-|xi|^2)^(k/2).
  std::vector<double> lap_power(k2.size());
  for (std::size_t i = 0; i < k2.size(); ++i) lap_power[i] = std::pow(-k2[i], k / 2);

  std::vector<Field> out;
  const int components = (k % 2 == 1) ? grid.dimension() : 1;
  for (int c = 0; c < components; ++c) {
    Field d = spec;
    kernels::multiply(d.values(), lap_power);
    if (k % 2 == 1) {
      kernels::multiply(d.values(), symbol_table(grid, Multiplier::gradient(c)));
    }
    d.set_hermitian(spec.is_real_valued());
    out.push_back(f.is_spectral() ? std::move(d) : fft.to_physical(d));
  }
  return out;
}

double weighted_norm(const Field& f, int l, int k) {
  if (l < 0) throw Error(ErrorCode::invalid_parameter, "weight exponent must be >= 0");
  const Grid& grid = f.grid();
  const auto r = grid.radius();
  std::vector<double> weight(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) weight[i] = std::pow(r[i], 2 * l);
  double total = 0.0;
  for (const Field& component : derivative_power(f, k)) {
    const Field phys = component.is_spectral() ? to_physical(component) : component;
    total += kernels::weighted_norm_squared(phys.values(), weight);
  }
  return std::sqrt(total * grid.cell_measure());
}

cplx mean(const Field& f) {
  const Grid& grid = f.grid();
  const double volume = std::pow(grid.length(), grid.dimension());
  if (f.is_spectral()) return f[0] / std::sqrt(volume);
  cplx total = 0.0;
  for (const auto& v : f.values()) total += v;
  return total / double(f.size());
}

std::vector<unsigned char> dealias_mask(const Grid& grid) {
  const int n = grid.points();
  std::vector<unsigned char> mask(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto [a, b] = grid.unflatten(i);
    const bool keep_a = 3 * std::abs(grid.signed_index(a)) <= n;
    const bool keep_b = grid.dimension() == 1 || 3 * std::abs(grid.signed_index(b)) <= n;
    mask[i] = (keep_a && keep_b) ? 1 : 0;
  }
  return mask;
}

Field dealias(const Field& f) {
  if (!f.is_spectral()) throw Error(ErrorCode::representation_mismatch, "dealias expects a spectral field");
  Field out = f;
  kernels::apply_mask(out.values(), dealias_mask(f.grid()));
  return out;
}

}  // namespace qzak
