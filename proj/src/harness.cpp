#include "qzak/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <string>

#include "qzak/diagnostics.hpp"
#include "qzak/dynamics.hpp"
#include "qzak/error.hpp"
#include "qzak/initial_layer.hpp"
#include "qzak/norms.hpp"

namespace qzak {

int default_thread_count() {
  if (const char* env = std::getenv("QZAK_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return int(v);
  }
  return std::max(1, omp_get_num_procs());
}

std::string_view to_string(RateQuantity q) {
  switch (q) {
    case RateQuantity::E_error: return "E_error";
    case RateQuantity::Q_error: return "Q_error";
    case RateQuantity::Q_norm: return "Q_norm";
  }
  return "E_error";
}

namespace {

double relative_drift(double value, double reference) {
  const double scale = std::abs(reference);
  return scale > 0.0 ? std::abs(value - reference) / scale : std::abs(value - reference);
}

SweepRecord run_one(const SimConfig& base, const InitialData& data, double lambda, int m,
                    const std::vector<SchrodingerState>& limit, const Field& f0) {
  const auto start = std::chrono::steady_clock::now();
  SimConfig cfg = base;
  cfg.lambda = lambda;
  cfg.keep_snapshots = false;
  SweepRecord rec;
  rec.lambda = lambda;
  rec.dt = cfg.step();
  const double mass0 = mass(data.E0);
  const double energy0 = hamiltonian_qz(data.state(), cfg.epsilon, lambda, cfg.dealias);
  std::size_t k = 0;
  auto observer = [&](const ZakharovState& s) {
    const Field dE = s.E - limit.at(k).E;
    rec.sup_err_E = std::max(rec.sup_err_E, sobolev_norm(dE, m));
    const Field Q = q_field(s, cfg.epsilon, cfg.dealias);
    const Field Q0 = q0_exact(s.t, lambda, cfg.epsilon, f0);
    rec.sup_err_Q = std::max(rec.sup_err_Q, sobolev_norm(Q - Q0, m));
    rec.sup_Q = std::max(rec.sup_Q, sobolev_norm(Q, m));
    rec.max_mass_drift = std::max(rec.max_mass_drift, relative_drift(mass(s.E), mass0));
    rec.max_energy_drift =
        std::max(rec.max_energy_drift, relative_drift(hamiltonian_qz(s, cfg.epsilon, lambda, cfg.dealias), energy0));
    ++k;
  };
  const QzTrajectory traj = qz_evolve(cfg, data, observer);
  for (double tail : traj.spectral_tail) rec.max_tail_E = std::max(rec.max_tail_E, tail);
  rec.walltime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace

SweepResult lambda_sweep(const SimConfig& base, const InitialData& data, std::vector<double> lambdas, int m,
                         const SweepOptions& options) {
  base.validate();
  if (lambdas.empty()) throw Error(ErrorCode::invalid_parameter, "lambda list is empty");
  if (!std::is_sorted(lambdas.begin(), lambdas.end())) {
    throw Error(ErrorCode::range_violation, "lambda list must be sorted");
  }
  if (!(lambdas.front() >= 1.0)) throw Error(ErrorCode::range_violation, "lambda must be >= 1");
  if (m < 0) throw Error(ErrorCode::range_violation, "sobolev index must be >= 0");
  const Grid grid = base.grid.make();
  if (!(data.E0.grid() == grid)) throw Error(ErrorCode::inconsistent_grid, "data grid differs from sweep grid");

  SimConfig cfg = base;
  if (cfg.sample_times.empty()) cfg.sample_times = uniform_samples(cfg.final_time, 64);

  // Limit solution with the step law of the smallest lambda.
  SweepResult result;
  SimConfig limit_cfg = cfg;
  limit_cfg.lambda = lambdas.front();
  const QmnlsTrajectory limit = qmnls_evolve(limit_cfg, data.E0);
  {
    const double mass0 = mass(data.E0);
    const double energy0 = hamiltonian_qmnls(data.E0, cfg.epsilon, cfg.dealias);
    for (const auto& s : limit.snapshots) {
      result.limit_mass_drift = std::max(result.limit_mass_drift, relative_drift(mass(s.E), mass0));
      result.limit_energy_drift = std::max(
          result.limit_energy_drift, relative_drift(hamiltonian_qmnls(s.E, cfg.epsilon, cfg.dealias), energy0));
    }
  }
  const Field f0 = layer_f0(data, cfg.epsilon, cfg.dealias);

  const int count = int(lambdas.size());
  const int threads = std::max(1, std::min(options.threads > 0 ? options.threads : default_thread_count(), count));
  result.records.resize(count);
  std::vector<std::exception_ptr> failures(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (int i = 0; i < count; ++i) {
    try {
      result.records[i] = run_one(cfg, data, lambdas[i], m, limit.snapshots, f0);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (int i = 0; i < count; ++i) {
    if (failures[i]) std::rethrow_exception(failures[i]);
    if (options.on_record) options.on_record(result.records[i]);
  }
  return result;
}

RateFit fit_rate(std::span<const double> lambdas, std::span<const double> errors) {
  if (lambdas.size() != errors.size()) throw Error(ErrorCode::degenerate_input, "size mismatch");
  if (lambdas.size() < 3) throw Error(ErrorCode::degenerate_input, "rate fit needs at least 3 points");
  const std::size_t n = lambdas.size();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lambdas[i] > 0.0) || !(errors[i] > 0.0) || !std::isfinite(errors[i])) {
      throw Error(ErrorCode::degenerate_input, "rate fit needs positive finite values");
    }
    x[i] = std::log(lambdas[i]);
    y[i] = std::log(errors[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::degenerate_input, "rate fit needs distinct lambdas");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < n; ++i) {
    fit.residual = std::max(fit.residual, std::abs(y[i] - (fit.intercept + fit.slope * x[i])));
  }
  fit.lambdas.assign(lambdas.begin(), lambdas.end());
  return fit;
}

RateFit fit_rate(std::span<const SweepRecord> records, RateQuantity which) {
  std::vector<double> l, e;
  for (const auto& r : records) {
    l.push_back(r.lambda);
    e.push_back(which == RateQuantity::E_error ? r.sup_err_E : which == RateQuantity::Q_error ? r.sup_err_Q : r.sup_Q);
  }
  return fit_rate(l, e);
}

SelfConvergence self_convergence(const SimConfig& config, const InitialData& data, std::vector<double> dts) {
  config.validate();
  if (dts.size() < 2) throw Error(ErrorCode::invalid_parameter, "need at least one step plus the reference");
  for (std::size_t i = 0; i < dts.size(); ++i) {
    if (!(dts[i] > 0.0)) throw Error(ErrorCode::invalid_parameter, "steps must be positive");
    if (i > 0 && !(dts[i] < dts[i - 1])) throw Error(ErrorCode::invalid_parameter, "steps must strictly decrease");
    const double ratio = config.final_time / dts[i];
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
      throw Error(ErrorCode::invalid_parameter, "step " + std::to_string(dts[i]) + " does not divide final_time");
    }
  }
  const int m = config.sobolev_index;
  SelfConvergence out;
  out.reference_dt = dts.back();
  const ZakharovState ref = qz_final(config, data, out.reference_dt);
  const double scale = sobolev_norm(ref.E, m) + sobolev_norm(ref.n, m);
  bool resolved = true;
  for (std::size_t i = 0; i + 1 < dts.size(); ++i) {
    const ZakharovState s = qz_final(config, data, dts[i]);
    const double err = sobolev_norm(s.E - ref.E, m) + sobolev_norm(s.n - ref.n, m);
    out.dts.push_back(dts[i]);
    out.errors.push_back(err);
    if (!(err > 1e-12 * scale)) resolved = false;
  }
  out.order = std::numeric_limits<double>::quiet_NaN();
  if (resolved && out.dts.size() >= 2) {
    double mx = 0.0, my = 0.0;
    const std::size_t n = out.dts.size();
    for (std::size_t i = 0; i < n; ++i) {
      mx += std::log(out.dts[i]);
      my += std::log(out.errors[i]);
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = std::log(out.dts[i]) - mx;
      sxx += dx * dx;
      sxy += dx * (std::log(out.errors[i]) - my);
    }
    out.order = sxy / sxx;
  }
  return out;
}

}  // namespace qzak
