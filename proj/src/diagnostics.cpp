#include "qzak/diagnostics.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "qzak/error.hpp"
#include "qzak/fft.hpp"
#include "qzak/kernels.hpp"
#include "qzak/multipliers.hpp"
#include "qzak/norms.hpp"

namespace qzak {

namespace {

Field spectral_of(const FftEngine& fft, const Field& f) { return f.is_spectral() ? f : fft.to_spectral(f); }

// Zero-mode guard for grad^-1 style operations.
void require_zero_mean(const Field& spec, const char* what) {
  const double total = std::sqrt(kernels::norm_squared(spec.values()));
  if (std::abs(spec[0]) > 1e-10 * total) {
    throw Error(ErrorCode::zero_mode_violation, std::string(what) + " has nonzero mean");
  }
}

// Spectrum of |E|^2, optionally 2/3 truncated.
Field intensity(const FftEngine& fft, const Field& E, bool dealias_product) {
  Field s = fft.to_spectral(abs_squared(E.is_spectral() ? fft.to_physical(E) : E));
  return dealias_product ? dealias(s) : s;
}

}  // namespace

double mass(const Field& E) {
  if (E.is_spectral()) return kernels::norm_squared(E.values());
  return kernels::norm_squared(E.values()) * E.grid().cell_measure();
}

double hamiltonian_qz(const ZakharovState& s, double eps, double lambda, bool dealias_product) {
  require_compatible(s.n, s.nt);
  const Grid& grid = s.E.grid();
  const FftEngine fft(grid);
  const Field e = spectral_of(fft, s.E);
  const Field n = spectral_of(fft, s.n);
  const Field nt = spectral_of(fft, s.nt);
  require_zero_mean(nt, "n_t");
  const Field src = intensity(fft, s.E, dealias_product);

  const auto k2 = grid.wavenumber_squared();
  const double e2 = eps * eps;
  double grad_e = 0.0, lap_e = 0.0, wave = 0.0, pot = 0.0, grad_n = 0.0, coupling = 0.0;
  for (std::size_t i = 0; i < k2.size(); ++i) {
    const double ae = std::norm(e[i]);
    const double an = std::norm(n[i]);
    grad_e += k2[i] * ae;
    lap_e += k2[i] * k2[i] * ae;
    if (k2[i] > 0.0) wave += std::norm(nt[i]) / k2[i];
    pot += an;
    grad_n += k2[i] * an;
    coupling += (std::conj(n[i]) * src[i]).real();
  }
  return grad_e + e2 * lap_e + 0.5 * wave / (lambda * lambda) + 0.5 * pot + 0.5 * e2 * grad_n + coupling;
}

double hamiltonian_qmnls(const Field& E, double eps, bool dealias_product) {
  const Grid& grid = E.grid();
  const FftEngine fft(grid);
  const Field e = spectral_of(fft, E);
  const Field src = intensity(fft, E, dealias_product);
  const auto k2 = grid.wavenumber_squared();
  const auto ieps = real_symbol_table(grid, Multiplier::i_eps(eps));
  const double e2 = eps * eps;
  double kinetic = 0.0, quartic = 0.0;
  for (std::size_t i = 0; i < k2.size(); ++i) {
    const double ae = std::norm(e[i]);
    kinetic += 0.5 * k2[i] * ae + 0.5 * e2 * k2[i] * k2[i] * ae;
    quartic += ieps[i] * std::norm(src[i]);
  }
  return kinetic - 0.25 * quartic;
}

Field n_variable(const ZakharovState& s, double eps, double lambda) {
  require_compatible(s.n, s.nt);
  const FftEngine fft(s.n.grid());
  Field n = spectral_of(fft, s.n);
  const Field nt = spectral_of(fft, s.nt);
  require_zero_mean(nt, "n_t");
  const auto omega = real_symbol_table(s.n.grid(), Multiplier::omega_eps(eps));
  const cplx I(0.0, 1.0);
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (omega[i] > 0.0) n[i] += I * nt[i] / (lambda * omega[i]);
  }
  n.set_hermitian(false);
  return n;
}

double spectral_tail(const Field& f, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw Error(ErrorCode::invalid_parameter, "tail fraction must lie in (0, 1)");
  }
  const Grid& grid = f.grid();
  const Field spec = f.is_spectral() ? f : FftEngine(grid).to_spectral(f);
  const double cutoff = fraction * grid.points() / 2.0;
  double total = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto idx = grid.unflatten(i);
    int j = std::abs(grid.signed_index(idx[0]));
    if (grid.dimension() == 2) j = std::max(j, std::abs(grid.signed_index(idx[1])));
    const double a = std::norm(spec[i]);
    total += a;
    if (j >= cutoff) tail += a;
  }
  return total > 0.0 ? tail / total : 0.0;
}

}  // namespace qzak
