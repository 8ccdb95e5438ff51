#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "qzak/config.hpp"
#include "qzak/state.hpp"

namespace qzak {

struct SweepRecord {
  double lambda = 0.0;
  double dt = 0.0;
  double sup_err_E = 0.0;  // sup_t ||E_lambda - E_inf||_{H^m}
  double sup_err_Q = 0.0;  // sup_t ||Q - Q0||_{H^m}
  double sup_Q = 0.0;      // sup_t ||Q||_{H^m}
  double walltime_s = 0.0;
  double max_tail_E = 0.0;  // largest spectral tail of E_lambda seen
  double max_mass_drift = 0.0;
  double max_energy_drift = 0.0;  // relative drift of the QZ Hamiltonian
};

struct SweepResult {
  std::vector<SweepRecord> records;
  double limit_mass_drift = 0.0;
  double limit_energy_drift = 0.0;  // QMNLS Hamiltonian
};

struct SweepOptions {
  /// Upper bound on concurrently running lambda values (0: all cores, or
  /// QZAK_THREADS when set).
  int threads = 0;
  /// Per-lambda progress callback, invoked in lambda order.
  std::function<void(const SweepRecord&)> on_record;
};

/// For every lambda runs the QZ solver and, once, the limiting equation on
/// identical grids and sample times, and records sup-in-time H^m
/// differences. The limit run uses the step of the smallest lambda.
SweepResult lambda_sweep(const SimConfig& base, const InitialData& data, std::vector<double> lambdas,
                         int m, const SweepOptions& options = {});

enum class RateQuantity { E_error, Q_error, Q_norm };
std::string_view to_string(RateQuantity q);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // max |log err - fitted|
  std::vector<double> lambdas;
};

/// Least-squares line through (log lambda, log error). Needs >= 3 points and
/// positive errors (degenerate_input otherwise).
RateFit fit_rate(std::span<const double> lambdas, std::span<const double> errors);
RateFit fit_rate(std::span<const SweepRecord> records, RateQuantity which);

struct SelfConvergence {
  std::vector<double> dts;     // coarse steps (reference excluded)
  std::vector<double> errors;  // ||E - E_ref||_{H^m} + ||n - n_ref||_{H^m} at final time
  double reference_dt = 0.0;
  double order = 0.0;          // NaN when all errors are at rounding level
};

/// Runs the QZ solver at each step in `dts` (strictly decreasing; the last
/// one is the reference) and fits the observed order of accuracy.
SelfConvergence self_convergence(const SimConfig& config, const InitialData& data, std::vector<double> dts);

/// Number of worker threads for parallel runs: QZAK_THREADS if set, else all
/// available cores.
int default_thread_count();

}  // namespace qzak
