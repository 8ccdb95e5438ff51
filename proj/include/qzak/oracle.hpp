#pragma once

#include <optional>

#include "qzak/config.hpp"
#include "qzak/state.hpp"

namespace qzak {

enum class OracleTarget { qz, qmnls };

struct OracleResult {
  double t = 0.0;
  Field E;
  /// Density and its time derivative (QZ target only).
  std::optional<Field> n;
  std::optional<Field> nt;
  double dt = 0.0;
  std::size_t steps = 0;
};

/// Unsplit reference integrator: classical RK4 on the Fourier coefficients of
///   E_t = i (Delta_eps E - n E),  n_t = nt,  nt_t = lambda^2 (Delta_eps n + Delta |E|^2)
/// (or E_t = i (Delta_eps E + (I_eps|E|^2) E) for the QMNLS target), using
/// the same product discretization as the split solvers.
///
/// Restricted to d = 1, N <= 64. The default step is config.step() / 50.
/// Throws instability_detected, naming the largest admissible step, when
/// the step exceeds the RK4 stability limit for the stiffest mode.
OracleResult oracle_evolve(const SimConfig& config, const InitialData& data, OracleTarget target,
                           std::optional<double> dt_oracle = std::nullopt);

/// Largest RK4 step stable for every mode of the linear part.
double oracle_max_step(const SimConfig& config, OracleTarget target);

}  // namespace qzak
