#include "qzak/initial_layer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qzak/error.hpp"
#include "qzak/fft.hpp"
#include "qzak/kernels.hpp"
#include "qzak/multipliers.hpp"
#include "qzak/norms.hpp"

namespace qzak {

namespace {

Field physical_of(const FftEngine& fft, const Field& f) { return f.is_spectral() ? fft.to_physical(f) : f; }

// Pointwise product of two physical fields with optional 2/3 truncation.
Field product(const FftEngine& fft, const Field& a, const Field& b, bool dealias_product) {
  std::vector<cplx> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] * b[i];
  const bool real = a.is_real_valued() && b.is_real_valued();
  Field p(a.grid(), real ? Representation::physical_real : Representation::physical_complex, std::move(v));
  if (!dealias_product) return p;
  return fft.to_physical(dealias(fft.to_spectral(p)));
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

Field q_field(const ZakharovState& s, double eps, bool dealias_product) {
  require_compatible(s.E, s.n);
  const FftEngine fft(s.E.grid());
  const Field E = physical_of(fft, s.E);
  Field src = fft.to_spectral(abs_squared(E));
  if (dealias_product) src = dealias(src);
  kernels::multiply(src.values(), real_symbol_table(E.grid(), Multiplier::i_eps(eps)));
  Field q = physical_of(fft, s.n) + fft.to_physical(src);
  kernels::drop_imaginary(q.values());
  return q;
}

Field layer_f0(const InitialData& data, double eps, bool dealias_product) {
  return q_field(data.state(), eps, dealias_product);
}

Field layer_g(const InitialData& data, double eps, bool dealias_product) {
  const FftEngine fft(data.E0.grid());
  const Field lap = apply_multiplier(data.E0, Multiplier::delta_eps(eps));
  std::vector<cplx> g(data.E0.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = 2.0 * std::imag(data.E0[i] * std::conj(lap[i]));
  Field gs = fft.to_spectral(Field(data.E0.grid(), Representation::physical_real, std::move(g)));
  if (dealias_product) gs = dealias(gs);
  kernels::multiply(gs.values(), real_symbol_table(data.E0.grid(), Multiplier::i_eps(eps)));
  Field out = data.n1 + fft.to_physical(gs);
  kernels::drop_imaginary(out.values());
  return out;
}

Field q0_exact(double t, double lambda, double eps, const Field& f0) {
  return apply_multiplier(f0, Multiplier::wave_cos(eps, lambda, t));
}

Field q1_exact(double t, double lambda, double eps, const Field& g) {
  const cplx m = mean(g);
  const double volume = std::pow(g.grid().length(), g.grid().dimension());
  if (std::abs(m) * std::sqrt(volume) > 1e-10 * l2_norm(g)) {
    throw Error(ErrorCode::zero_mode_violation, "q1 source has nonzero mean " + std::to_string(std::abs(m)));
  }
  return apply_multiplier(g, Multiplier::wave_sinc(eps, lambda, t));
}

std::vector<LayerDecomposition> layer_decompose(const QzTrajectory& traj, double eps, double lambda,
                                                const InitialData& data, int m, bool dealias_product) {
  const Field f0 = layer_f0(data, eps, dealias_product);
  const Field g = layer_g(data, eps, dealias_product);
  std::vector<LayerDecomposition> out;
  out.reserve(traj.snapshots.size());
  for (const auto& s : traj.snapshots) {
    LayerDecomposition d{s.t, q_field(s, eps, dealias_product), q0_exact(s.t, lambda, eps, f0),
                         q1_exact(s.t, lambda, eps, g), Field(f0.grid(), Representation::physical_real)};
    d.Q2 = d.Q - d.Q0 - d.Q1;
    d.norm_Q = sobolev_norm(d.Q, m);
    d.norm_Q0 = sobolev_norm(d.Q0, m);
    d.norm_Q1 = sobolev_norm(d.Q1, m);
    d.norm_Q2 = sobolev_norm(d.Q2, m);
    out.push_back(std::move(d));
  }
  return out;
}

// With R = Delta_eps E - n E (so E_t = i R), component a is
//   2 Re[conj(R) X d_a E - conj(E) X d_a R]
//   + 2 eps^2 Re sum_k [d_k conj(R) d_a d_k E - d_k conj(E) d_a d_k R]
// where X = 1 - eps^2 Delta.
std::vector<Field> compute_f2(const Field& E_in, const Field& n_in, double eps, bool dealias_product) {
  require_compatible(E_in, n_in);
  const Grid& grid = E_in.grid();
  const int d = grid.dimension();
  const FftEngine fft(grid);
  const Field E = physical_of(fft, E_in);
  const Field n = physical_of(fft, n_in);
  const Field nE = product(fft, n, E, dealias_product);
  const Field R = apply_multiplier(E, Multiplier::delta_eps(eps)) - nE;
  const Multiplier X = Multiplier::i_eps_inverse(eps);
  const double e2 = eps * eps;

  std::vector<Field> dE, dR;
  for (int k = 0; k < d; ++k) {
    dE.push_back(apply_multiplier(E, Multiplier::gradient(k)));
    dR.push_back(apply_multiplier(R, Multiplier::gradient(k)));
  }

  std::vector<Field> out;
  for (int a = 0; a < d; ++a) {
    const Field XdE = apply_multiplier(dE[a], X);
    const Field XdR = apply_multiplier(dR[a], X);
    std::vector<cplx> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = 2.0 * (std::conj(R[i]) * XdE[i] - std::conj(E[i]) * XdR[i]).real();
    }
    for (int k = 0; k < d; ++k) {
      const Field ddE = apply_multiplier(dE[k], Multiplier::gradient(a));
      const Field ddR = apply_multiplier(dR[k], Multiplier::gradient(a));
      for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] += 2.0 * e2 * (std::conj(dR[k][i]) * ddE[i] - std::conj(dE[k][i]) * ddR[i]).real();
      }
    }
    Field comp(grid, Representation::physical_real, std::move(v));
    if (dealias_product) comp = fft.to_physical(dealias(fft.to_spectral(comp)));
    out.push_back(std::move(comp));
  }
  return out;
}

Field divergence(std::span<const Field> components) {
  if (components.empty()) throw Error(ErrorCode::invalid_parameter, "divergence of an empty vector field");
  const Grid& grid = components[0].grid();
  if (int(components.size()) != grid.dimension()) {
    throw Error(ErrorCode::invalid_dimension, "need one component per axis");
  }
  Field out = apply_multiplier(components[0], Multiplier::gradient(0));
  for (int a = 1; a < grid.dimension(); ++a) out += apply_multiplier(components[a], Multiplier::gradient(a));
  return out;
}

DecayProbeReport decay_probe(const Field& f0_in, double eps, double lambda, std::span<const double> times,
                             int k_max, std::span<const std::size_t> probe_points) {
  if (k_max < 0) throw Error(ErrorCode::invalid_parameter, "k_max must be >= 0");
  if (times.empty()) throw Error(ErrorCode::invalid_parameter, "decay probe needs at least one time");
  validate(Multiplier::wave_cos(eps, lambda, 0.0), f0_in.grid());
  const Grid& grid = f0_in.grid();
  const FftEngine fft(grid);
  const Field f0 = physical_of(fft, f0_in);
  const Field f0_hat = fft.to_spectral(f0);
  const auto r = grid.radius();
  const double t_max = *std::max_element(times.begin(), times.end());

  // Wrap-around guard. Content that leaves through one side of the box comes
  // back through the other; the fastest significant mode, started from the
  // edge of the significant support, must not reach the inner region
  // |x| <= lambda t / 2 again before t_max.
  {
    const double spec_peak = kernels::max_abs(f0_hat.values());
    const double phys_peak = kernels::max_abs(f0.values());
    const auto k2 = grid.wavenumber_squared();
    double xi_max = 0.0, support = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (std::abs(f0_hat[i]) >= 1e-6 * spec_peak) xi_max = std::max(xi_max, std::sqrt(k2[i]));
      if (std::abs(f0[i]) >= 1e-6 * phys_peak) support = std::max(support, r[i]);
    }
    const double e2x2 = eps * eps * xi_max * xi_max;
    const double speed = lambda * (1.0 + 2.0 * e2x2) / std::sqrt(1.0 + e2x2);
    const double reach = support + (speed + 0.5 * lambda) * t_max;
    if (reach > grid.length()) {
      throw Error(ErrorCode::wrap_around_risk,
                  "wrapped signal re-enters the inner region by t = " + std::to_string(t_max) + " (reach " +
                      std::to_string(reach) + " > L = " + std::to_string(grid.length()) + ")");
    }
  }

  std::vector<std::size_t> points(probe_points.begin(), probe_points.end());
  if (points.empty()) {
    points.resize(grid.size());
    for (std::size_t i = 0; i < points.size(); ++i) points[i] = i;
  }

  // d^k f0 spectra along the first axis.
  std::vector<Field> deriv_hat{f0_hat};
  for (int k = 1; k <= k_max; ++k) deriv_hat.push_back(apply_multiplier(deriv_hat.back(), Multiplier::gradient(0)));

  DecayProbeReport report;
  report.lambda = lambda;
  report.eps = eps;
  std::vector<double> K(k_max + 1, 0.0), peak(k_max + 1, 0.0);
  for (int k = 0; k <= k_max; ++k) {
    const Field dk = fft.to_physical(deriv_hat[k]);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double w = (1.0 + r[i]) * (1.0 + r[i]);
      K[k] = std::max(K[k], std::abs(dk[i]) / w);
      peak[k] = std::max(peak[k], std::abs(dk[i]));
    }
  }
  report.envelope_constant = K[0];

  std::vector<std::vector<double>> in_x(k_max + 1), in_y(k_max + 1), out_x(k_max + 1), out_y(k_max + 1);
  for (double t : times) {
    const double lt = lambda * t;
    for (int k = 0; k <= k_max; ++k) {
      const Field q = fft.to_physical(apply_multiplier(deriv_hat[k], Multiplier::wave_cos(eps, lambda, t)));
      DecaySample inner{t, ProbeRegion::inner, k, 0.0, 0.0, 0};
      DecaySample outer{t, ProbeRegion::outer, k, 0.0, 0.0, 0};
      for (std::size_t p : points) {
        if (p >= grid.size()) throw Error(ErrorCode::invalid_parameter, "probe index out of range");
        const double v = std::abs(q[p]);
        if (lt > 1.0 && r[p] <= 0.5 * lt) {
          inner.sup = std::max(inner.sup, v);
          ++inner.points;
        } else {
          const double env = K[k] * (1.0 + r[p]) * (1.0 + r[p]) / ((1.0 + lt) * (1.0 + lt));
          outer.sup = std::max(outer.sup, v);
          outer.max_ratio = std::max(outer.max_ratio, env > 0.0 ? v / env : 0.0);
          ++outer.points;
        }
      }
      const double floor = 1e-12 * peak[k];
      if (inner.points > 0) {
        if (inner.sup > floor) {
          in_x[k].push_back(std::log1p(lt));
          in_y[k].push_back(std::log(inner.sup));
        }
        report.samples.push_back(inner);
      }
      if (outer.points > 0) {
        if (outer.sup > floor && lt > 1.0) {
          out_x[k].push_back(std::log1p(lt));
          out_y[k].push_back(std::log(outer.sup));
        }
        report.max_envelope_ratio = std::max(report.max_envelope_ratio, outer.max_ratio);
        report.samples.push_back(outer);
      }
    }
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  report.inner_exponent = -std::numeric_limits<double>::infinity();
  report.outer_exponent = -std::numeric_limits<double>::infinity();
  report.inner_fit_points = std::numeric_limits<int>::max();
  for (int k = 0; k <= k_max; ++k) {
    const double si = fit_slope(in_x[k], in_y[k]);
    const double so = fit_slope(out_x[k], out_y[k]);
    report.inner_exponent = std::isnan(si) || std::isnan(report.inner_exponent) ? nan : std::max(report.inner_exponent, si);
    report.outer_exponent = std::isnan(so) || std::isnan(report.outer_exponent) ? nan : std::max(report.outer_exponent, so);
    report.inner_fit_points = std::min(report.inner_fit_points, int(in_x[k].size()));
  }
  return report;
}

}  // namespace qzak
