#pragma once

#include <string_view>

#include "qzak/field.hpp"

namespace qzak {

/// (t, E, n, dn/dt) of the quantum Zakharov system. E is physical_complex;
/// n and nt are physical_real on the same grid.
struct ZakharovState {
  double t = 0.0;
  Field E;
  Field n;
  Field nt;
};

/// (t, E) of the limiting fourth-order NLS.
struct SchrodingerState {
  double t = 0.0;
  Field E;
};

enum class DataKind { generic, compatible, well_prepared };

std::string_view to_string(DataKind kind);
DataKind data_kind_from_string(std::string_view name);

struct InitialData {
  Field E0;
  Field n0;
  Field n1;
  DataKind kind = DataKind::generic;

  ZakharovState state() const { return {0.0, E0, n0, n1}; }
};

/// Gaussian data family.
///   E0 = A exp(-|x - x0|^2 / w^2) exp(i (k0 x + gamma |x|^2))
/// with x0 and k0 along the first axis. The generic kind adds an
/// independent density bump n0 = B exp(-|x - x1|^2 / w1^2) and a
/// zero-mean velocity n1 = C d/dx exp(-|x - x2|^2 / w2^2).
struct PresetParams {
  double amplitude = 1.0;
  double width = 3.0;
  double wavenumber = 0.0;
  double chirp = 0.0;
  double center = 0.0;

  double density_amplitude = -0.5;
  double density_width = 2.0;
  double density_center = 2.0;
  /// Rescales the generic density bump so that n0 + I_eps|E0|^2 has zero
  /// mean; on a periodic box the mean of that defect never oscillates.
  bool zero_mean_defect = true;

  double velocity_amplitude = 0.5;
  double velocity_width = 2.0;
  double velocity_center = -1.0;

  /// Resolution guard: width >= min_points_per_width * L / N.
  double min_points_per_width = 8.0;
  /// Box guard: Gaussian envelopes must be below this at the box edge.
  double edge_tolerance = 1e-12;
};

/// Builds compatible (n0 = -I_eps|E0|^2, n1 = 0), well-prepared
/// (additionally n1 = -I_eps 2 Im(E0 conj(Delta_eps E0)), so dQ/dt(0) = 0)
/// or generic data. Deterministic.
InitialData preset_initial_data(DataKind kind, const PresetParams& params, const Grid& grid, double eps);

/// || n0 + I_eps|E0|^2 ||_{H^m}.
double compatibility_defect(const InitialData& data, double eps, int m);

}  // namespace qzak
