#pragma once

#include "qzak/field.hpp"
#include "qzak/state.hpp"

namespace qzak {

/// ||E||^2_{L^2}.
double mass(const Field& E);

/// Conserved energy of the quantum Zakharov system:
///   ||grad E||^2 + eps^2 ||Delta E||^2 + 1/2 lambda^-2 ||grad^-1 n_t||^2
///   + 1/2 ||n||^2 + eps^2/2 ||grad n||^2 + int n |E|^2 dx.
/// Requires n_t to have zero mean (zero_mode_violation otherwise).
double hamiltonian_qz(const ZakharovState& s, double eps, double lambda, bool dealias = true);

/// Conserved energy of the limiting equation:
///   1/2 ||grad E||^2 + eps^2/2 ||Delta E||^2 - 1/4 int |E|^2 I_eps |E|^2 dx.
double hamiltonian_qmnls(const Field& E, double eps, bool dealias = true);

/// Complex wave variable n + i lambda^-1 (|xi| sqrt(1 + eps^2 |xi|^2))^-1 n_t,
/// returned as a spectral field (zero mode: the zero mode of n).
Field n_variable(const ZakharovState& s, double eps, double lambda);

/// Energy fraction of f carried by modes with max_axis |j| >= fraction * N/2.
double spectral_tail(const Field& f, double fraction);

}  // namespace qzak
