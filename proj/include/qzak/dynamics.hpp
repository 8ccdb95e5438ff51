#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "qzak/config.hpp"
#include "qzak/fft.hpp"
#include "qzak/state.hpp"

namespace qzak {

/// Snapshots at the requested sample times plus the monitors recorded there.
template <class State>
struct Trajectory {
  std::vector<State> snapshots;
  std::vector<double> mass;           // ||E||^2 at each snapshot
  std::vector<double> spectral_tail;  // E energy fraction in the upper half band
  std::size_t steps = 0;
};

using QzTrajectory = Trajectory<ZakharovState>;
using QmnlsTrajectory = Trajectory<SchrodingerState>;

/// Strang-split integrator for the quantum Zakharov system
///   i E_t + Delta_eps E = n E,   lambda^-2 n_tt - Delta_eps n = Delta |E|^2.
///
/// One step of size h is the symmetric composition
///   kick(h/2) . free(h/2) . wave(h) . free(h/2) . kick(h/2)
/// where kick is E <- exp(-i h n) E pointwise, free is the linear group
/// exp(i h Delta_eps), and wave is the exact flow of the density equation
/// with |E|^2 frozen, written for Q = n + I_eps |E|^2 as a harmonic
/// oscillator of frequency lambda*omega_eps per mode. Every E substep is
/// unitary, so ||E||_2 is conserved to rounding.
///
/// E is kept in physical space and n in both representations.
class QzSolver {
 public:
  QzSolver(const Grid& grid, double eps, double lambda, bool dealias);
  ~QzSolver();
  QzSolver(QzSolver&&) noexcept;
  QzSolver& operator=(QzSolver&&) noexcept;

  void load(const ZakharovState& state);
  ZakharovState state() const;
  double time() const noexcept;

  /// Advances by h (h may be negative; zero or non-finite h is rejected).
  void step(double h);

  /// ||E||^2 of the current state.
  double mass() const;
  /// Largest absolute value in the current spectral state.
  double max_coefficient() const;
  /// E energy fraction carried by |j| >= N/4.
  double spectral_tail() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Strang splitting for i E_t + Delta_eps E = -(I_eps |E|^2) E: half kick
/// with V = -I_eps|E|^2, free flow over h, half kick with recomputed V.
class QmnlsSolver {
 public:
  QmnlsSolver(const Grid& grid, double eps, bool dealias);
  ~QmnlsSolver();
  QmnlsSolver(QmnlsSolver&&) noexcept;
  QmnlsSolver& operator=(QmnlsSolver&&) noexcept;

  void load(const SchrodingerState& state);
  SchrodingerState state() const;
  double time() const noexcept;
  void step(double h);
  double mass() const;
  double max_coefficient() const;
  double spectral_tail() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

ZakharovState qz_step(const ZakharovState& s, double dt, double eps, double lambda, bool dealias);
SchrodingerState qmnls_step(const SchrodingerState& s, double dt, double eps, bool dealias);

using QzObserver = std::function<void(const ZakharovState&)>;
using QmnlsObserver = std::function<void(const SchrodingerState&)>;

/// Runs from t = 0 to config.final_time with dt = config.step(), recording a
/// snapshot at every sample time (the initial state is recorded when 0 is a
/// sample time). Throws nonfinite_field when the state blows up and
/// under_resolved when the spectral tail exceeds config.tail_limit.
QzTrajectory qz_evolve(const SimConfig& config, const InitialData& data, const QzObserver& observer = {});
QmnlsTrajectory qmnls_evolve(const SimConfig& config, const Field& E0, const QmnlsObserver& observer = {});

/// Only the final state, without storing samples.
ZakharovState qz_final(const SimConfig& config, const InitialData& data, double dt);
SchrodingerState qmnls_final(const SimConfig& config, const Field& E0, double dt);

}  // namespace qzak
