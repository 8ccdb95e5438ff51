#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qzak/dynamics.hpp"
#include "qzak/field.hpp"
#include "qzak/state.hpp"

namespace qzak {

/// Q = n + I_eps |E|^2 (dealiased product), physical_real.
Field q_field(const ZakharovState& s, double eps, bool dealias = true);

/// f0 = n0 + I_eps |E0|^2, the initial value of Q.
Field layer_f0(const InitialData& data, double eps, bool dealias = true);
/// g = n1 + I_eps 2 Im(E0 conj(Delta_eps E0)), the initial value of dQ/dt.
Field layer_g(const InitialData& data, double eps, bool dealias = true);

/// cos(lambda t omega_eps) f0.
Field q0_exact(double t, double lambda, double eps, const Field& f0);
/// sin(lambda t omega_eps) / (lambda omega_eps) g. Requires |mean(g)| <= 1e-10 ||g||.
Field q1_exact(double t, double lambda, double eps, const Field& g);

struct LayerDecomposition {
  double t = 0.0;
  Field Q;
  Field Q0;
  Field Q1;
  Field Q2;  // Q - Q0 - Q1
  double norm_Q = 0.0;
  double norm_Q0 = 0.0;
  double norm_Q1 = 0.0;
  double norm_Q2 = 0.0;
};

std::vector<LayerDecomposition> layer_decompose(const QzTrajectory& traj, double eps, double lambda,
                                                const InitialData& data, int m, bool dealias = true);

/// Components of the vector field f2 with d^2/dt^2 |E|^2 = div f2 along the
/// flow, evaluated from (E, n); products are dealiased.
std::vector<Field> compute_f2(const Field& E, const Field& n, double eps, bool dealias = true);

/// Divergence of a vector field given by components (spectral derivative).
Field divergence(std::span<const Field> components);

enum class ProbeRegion { inner, outer };

struct DecaySample {
  double t = 0.0;
  ProbeRegion region = ProbeRegion::outer;
  int k = 0;
  double sup = 0.0;          // sup over probed points of |d^k Q0|
  double max_ratio = 0.0;    // outer only: sup of value / envelope
  std::size_t points = 0;    // probed points in the region
};

struct DecayProbeReport {
  double lambda = 0.0;
  double eps = 0.0;
  std::vector<DecaySample> samples;
  /// Least-squares exponent of log sup vs log(1 + lambda t), worst over k.
  double inner_exponent = 0.0;
  double outer_exponent = 0.0;
  int inner_fit_points = 0;
  /// K in the envelope K (1 + lambda t)^-2 (1 + |x0|)^2, calibrated at t = 0.
  double envelope_constant = 0.0;
  /// Largest value / envelope over all outer-region (or lambda t <= 1) samples.
  double max_envelope_ratio = 0.0;
};

/// Probes the free-wave layer Q0 = cos(lambda t omega_eps) f0 pointwise.
/// Region "inner" is |x0| <= lambda t / 2 with lambda t > 1; everything else
/// is "outer". `probe_points` are flat physical indices (all points when
/// empty). Throws wrap_around_risk when the fastest significant part of f0
/// (modes above 1e-6 of the spectral peak) would wrap around the box and
/// re-enter the inner region before max(times). Wrapped content of smaller
/// amplitude may reach outer probe points.
DecayProbeReport decay_probe(const Field& f0, double eps, double lambda, std::span<const double> times,
                             int k_max, std::span<const std::size_t> probe_points = {});

}  // namespace qzak
