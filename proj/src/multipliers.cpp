#include "qzak/multipliers.hpp"

#include <cmath>
#include <string>

#include "qzak/error.hpp"
#include "qzak/fft.hpp"
#include "qzak/kernels.hpp"
#include "qzak/norms.hpp"

namespace qzak {

namespace {

bool needs_eps(MultiplierKind k) {
  switch (k) {
    case MultiplierKind::delta_eps:
    case MultiplierKind::i_eps:
    case MultiplierKind::i_eps_inverse:
    case MultiplierKind::omega_eps:
    case MultiplierKind::sqrt_ieps_neglap:
    case MultiplierKind::schrodinger_group:
    case MultiplierKind::wave_cos:
    case MultiplierKind::wave_sinc:
      return true;
    default:
      return false;
  }
}

bool kills_zero_mode(MultiplierKind k) {
  return k == MultiplierKind::inv_grad || k == MultiplierKind::homogeneous_weight;
}

void invalid(const std::string& what) { throw Error(ErrorCode::invalid_parameter, what); }

}  // namespace

void validate(const Multiplier& m, const Grid& grid) {
  if (needs_eps(m.kind) && !(m.eps > 0.0 && m.eps <= 1.0)) invalid("eps must lie in (0, 1]");
  if ((m.kind == MultiplierKind::wave_cos || m.kind == MultiplierKind::wave_sinc) && !(m.lambda >= 1.0)) {
    invalid("lambda must be >= 1");
  }
  if (!std::isfinite(m.t)) invalid("time must be finite");
  if (m.kind == MultiplierKind::sobolev_weight && !(m.m >= 0.0)) invalid("Sobolev index must be >= 0");
  if (m.kind == MultiplierKind::homogeneous_weight && !(std::abs(m.sigma) > 0.0 && std::abs(m.sigma) < 2.0)) {
    invalid("homogeneous weight order must satisfy 0 < |sigma| < 2");
  }
  if ((m.kind == MultiplierKind::inv_grad || m.kind == MultiplierKind::gradient) &&
      (m.axis < 0 || m.axis >= grid.dimension())) {
    invalid("axis out of range");
  }
}

cplx symbol(const Multiplier& m, std::span<const double> xi, bool nyquist) {
  double k2 = 0.0;
  for (double c : xi) k2 += c * c;
  const double k = std::sqrt(k2);
  const double e2 = m.eps * m.eps;
  const double omega = k * std::sqrt(1.0 + e2 * k2);
  switch (m.kind) {
    case MultiplierKind::laplacian:
      return -k2;
    case MultiplierKind::delta_eps:
      return -(k2 + e2 * k2 * k2);
    case MultiplierKind::i_eps:
      return 1.0 / (1.0 + e2 * k2);
    case MultiplierKind::i_eps_inverse:
      return 1.0 + e2 * k2;
    case MultiplierKind::omega_eps:
      return omega;
    case MultiplierKind::sqrt_ieps_neglap:
      return k / std::sqrt(1.0 + e2 * k2);
    case MultiplierKind::inv_grad:
      if (k2 == 0.0 || nyquist) return 0.0;
      return cplx(0.0, -xi[m.axis] / k2);
    case MultiplierKind::gradient:
      if (nyquist) return 0.0;
      return cplx(0.0, xi[m.axis]);
    case MultiplierKind::schrodinger_group: {
      const double phase = -m.t * (k2 + e2 * k2 * k2);
      return cplx(std::cos(phase), std::sin(phase));
    }
    case MultiplierKind::wave_cos:
      return std::cos(m.lambda * m.t * omega);
    case MultiplierKind::wave_sinc:
      if (omega == 0.0) return m.t;
      return std::sin(m.lambda * m.t * omega) / (m.lambda * omega);
    case MultiplierKind::sobolev_weight:
      return std::pow(1.0 + k2, 0.5 * m.m);
    case MultiplierKind::homogeneous_weight:
      if (k2 == 0.0) return 0.0;
      return std::pow(k, m.sigma);
  }
  return 0.0;
}

bool preserves_real(const Multiplier& m) { return m.kind != MultiplierKind::schrodinger_group; }

std::vector<cplx> symbol_table(const Grid& grid, const Multiplier& m) {
  validate(m, grid);
  const auto xi = grid.axis_wavenumbers();
  const int half = grid.points() / 2;
  std::vector<cplx> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto [a, b] = grid.unflatten(i);
    const int axis_index = m.axis == 0 ? a : b;
    const bool nyquist = grid.signed_index(axis_index) == -half;
    if (grid.dimension() == 1) {
      const double v[1] = {xi[a]};
      out[i] = symbol(m, v, nyquist);
    } else {
      const double v[2] = {xi[a], xi[b]};
      out[i] = symbol(m, v, nyquist);
    }
  }
  return out;
}

std::vector<double> real_symbol_table(const Grid& grid, const Multiplier& m) {
  if (m.kind == MultiplierKind::inv_grad || m.kind == MultiplierKind::gradient ||
      m.kind == MultiplierKind::schrodinger_group) {
    invalid("multiplier has a complex symbol");
  }
  const auto table = symbol_table(grid, m);
  std::vector<double> out(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) out[i] = table[i].real();
  return out;
}

Field apply_multiplier(const Field& f, const Multiplier& m) {
  const Grid& grid = f.grid();
  validate(m, grid);
  const FftEngine fft(grid);
  Field spec = f.is_spectral() ? f : fft.to_spectral(f);
  if (kills_zero_mode(m.kind)) {
    const double total = std::sqrt(kernels::norm_squared(spec.values()));
    if (std::abs(spec[0]) > 1e-10 * total) {
      throw Error(ErrorCode::zero_mode_violation, "operator requires a zero-mean input");
    }
  }
  kernels::multiply(spec.values(), symbol_table(grid, m));
  spec.set_hermitian(spec.is_real_valued() && preserves_real(m));
  if (f.is_spectral()) return spec;
  return fft.to_physical(spec);
}

}  // namespace qzak
