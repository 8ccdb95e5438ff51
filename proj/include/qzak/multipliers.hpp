#pragma once

#include <span>
#include <vector>

#include "qzak/field.hpp"

namespace qzak {

/// Fourier multipliers used by the solvers. Each kind maps a wave vector xi
/// to one scalar symbol (see `symbol`).
enum class MultiplierKind {
  laplacian,          // -|xi|^2
  delta_eps,          // -(|xi|^2 + eps^2 |xi|^4)
  i_eps,              // 1 / (1 + eps^2 |xi|^2)
  i_eps_inverse,      // 1 + eps^2 |xi|^2
  omega_eps,          // |xi| sqrt(1 + eps^2 |xi|^2)
  sqrt_ieps_neglap,   // |xi| / sqrt(1 + eps^2 |xi|^2)
  inv_grad,           // -i xi_axis / |xi|^2, zero mode 0
  gradient,           // i xi_axis
  schrodinger_group,  // exp(-i t (|xi|^2 + eps^2 |xi|^4))
  wave_cos,           // cos(lambda t omega_eps)
  wave_sinc,          // sin(lambda t omega_eps) / (lambda omega_eps), t at xi = 0
  sobolev_weight,     // (1 + |xi|^2)^(m/2)
  homogeneous_weight, // |xi|^(-sigma), zero mode 0
};

struct Multiplier {
  MultiplierKind kind = MultiplierKind::laplacian;
  double eps = 1.0;
  double lambda = 1.0;
  double t = 0.0;
  double m = 0.0;
  double sigma = 0.0;
  int axis = 0;

  static Multiplier laplacian() { return {MultiplierKind::laplacian}; }
  static Multiplier delta_eps(double eps) { return {MultiplierKind::delta_eps, eps}; }
  static Multiplier i_eps(double eps) { return {MultiplierKind::i_eps, eps}; }
  static Multiplier i_eps_inverse(double eps) { return {MultiplierKind::i_eps_inverse, eps}; }
  static Multiplier omega_eps(double eps) { return {MultiplierKind::omega_eps, eps}; }
  static Multiplier sqrt_ieps_neglap(double eps) { return {MultiplierKind::sqrt_ieps_neglap, eps}; }
  static Multiplier inv_grad(int axis = 0) { return {.kind = MultiplierKind::inv_grad, .axis = axis}; }
  static Multiplier gradient(int axis = 0) { return {.kind = MultiplierKind::gradient, .axis = axis}; }
  static Multiplier schrodinger_group(double eps, double t) {
    return {.kind = MultiplierKind::schrodinger_group, .eps = eps, .t = t};
  }
  static Multiplier wave_cos(double eps, double lambda, double t) {
    return {MultiplierKind::wave_cos, eps, lambda, t};
  }
  static Multiplier wave_sinc(double eps, double lambda, double t) {
    return {MultiplierKind::wave_sinc, eps, lambda, t};
  }
  static Multiplier sobolev_weight(double m) { return {.kind = MultiplierKind::sobolev_weight, .m = m}; }
  /// |xi|^s; the operator of the homogeneous space of order -sigma uses s = -sigma.
  static Multiplier homogeneous_weight(double s) {
    return {.kind = MultiplierKind::homogeneous_weight, .sigma = s};
  }
};

/// Throws invalid_parameter when the multiplier's parameters are out of range
/// (eps in (0,1], lambda >= 1, m >= 0, 0 < |sigma| < 2, axis < d).
void validate(const Multiplier& m, const Grid& grid);

/// Symbol at a wave vector given by its components (1 or 2 of them).
/// `nyquist` marks modes whose partner -xi aliases onto themselves; odd
/// symbols vanish there so real fields stay real.
cplx symbol(const Multiplier& m, std::span<const double> xi, bool nyquist = false);

/// True when the symbol satisfies s(-xi) = conj(s(xi)), i.e. it maps real
/// fields to real fields.
bool preserves_real(const Multiplier& m);

/// Symbol for every mode of the grid in flat storage order.
std::vector<cplx> symbol_table(const Grid& grid, const Multiplier& m);
/// Same as `symbol_table` for real-valued symbols (throws otherwise).
std::vector<double> real_symbol_table(const Grid& grid, const Multiplier& m);

/// Multiplies the spectral coefficients of `f` by the symbol. Physical input
/// is transformed, multiplied and transformed back.
Field apply_multiplier(const Field& f, const Multiplier& m);

}  // namespace qzak
