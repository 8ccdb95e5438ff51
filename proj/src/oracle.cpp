#include "qzak/oracle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qzak/error.hpp"

namespace qzak {

// Deliberately shares no code with the split solvers: a dense DFT and its
// own symbol tables, so that agreement is meaningful.
namespace {

using Vec = std::vector<cplx>;

struct Dft {
  int n;
  double scale_fwd, scale_inv;
  std::vector<cplx> roots;  // exp(-2 pi i k / n)

  Dft(int points, double length)
      : n(points), scale_fwd(std::sqrt(length) / points), scale_inv(1.0 / std::sqrt(length)), roots(points) {
    for (int k = 0; k < n; ++k) {
      const double a = -2.0 * std::numbers::pi * k / n;
      roots[k] = cplx(std::cos(a), std::sin(a));
    }
  }

  Vec forward(const Vec& f) const { return apply(f, false, scale_fwd); }
  Vec inverse(const Vec& f) const { return apply(f, true, scale_inv); }

 private:
  Vec apply(const Vec& f, bool conj, double s) const {
    Vec out(n);
    for (int j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k) {
        const cplx w = roots[(static_cast<long>(j) * k) % n];
        acc += f[k] * (conj ? std::conj(w) : w);
      }
      out[j] = s * acc;
    }
    return out;
  }
};

struct System {
  OracleTarget target;
  double lambda;
  bool dealias;
  Dft dft;
  std::vector<double> k2, delta_eps, ieps;
  std::vector<bool> keep;

  System(const SimConfig& c, OracleTarget tg)
      : target(tg), lambda(c.lambda), dealias(c.dealias), dft(c.grid.points, c.grid.length) {
    const int n = c.grid.points;
    const double e2 = c.epsilon * c.epsilon;
    for (int j = 0; j < n; ++j) {
      const int sj = j < n / 2 ? j : j - n;
      const double xi = 2.0 * std::numbers::pi * sj / c.grid.length;
      k2.push_back(xi * xi);
      delta_eps.push_back(-(xi * xi + e2 * xi * xi * xi * xi));
      ieps.push_back(1.0 / (1.0 + e2 * xi * xi));
      keep.push_back(3 * std::abs(sj) <= n);
    }
  }

  // Spectrum of |E|^2 with optional 2/3 truncation.
  Vec intensity(const Vec& e_phys) const {
    Vec s(e_phys.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::norm(e_phys[i]);
    Vec sh = dft.forward(s);
    if (dealias) {
      for (std::size_t i = 0; i < sh.size(); ++i) {
        if (!keep[i]) sh[i] = 0.0;
      }
    }
    return sh;
  }

  // y = (E_hat, n_hat, nt_hat) for qz; (E_hat) for qmnls.
  std::vector<Vec> rhs(const std::vector<Vec>& y) const {
    const std::size_t n = y[0].size();
    const cplx I(0.0, 1.0);
    const Vec e_phys = dft.inverse(y[0]);
    const Vec s_hat = intensity(e_phys);
    Vec pot(n);
    if (target == OracleTarget::qz) {
      pot = dft.inverse(y[1]);
      for (auto& v : pot) v = v.real();
    } else {
      Vec v_hat(n);
      for (std::size_t i = 0; i < n; ++i) v_hat[i] = -ieps[i] * s_hat[i];
      pot = dft.inverse(v_hat);
      for (auto& v : pot) v = v.real();
    }
    Vec prod(n);
    for (std::size_t i = 0; i < n; ++i) prod[i] = pot[i] * e_phys[i];
    const Vec prod_hat = dft.forward(prod);

    std::vector<Vec> out(y.size(), Vec(n));
    for (std::size_t i = 0; i < n; ++i) out[0][i] = I * (delta_eps[i] * y[0][i] - prod_hat[i]);
    if (target == OracleTarget::qz) {
      const double l2 = lambda * lambda;
      for (std::size_t i = 0; i < n; ++i) {
        out[1][i] = y[2][i];
        out[2][i] = l2 * (delta_eps[i] * y[1][i] - k2[i] * s_hat[i]);
      }
    }
    return out;
  }
};

void axpy_state(std::vector<Vec>& out, const std::vector<Vec>& y, double a, const std::vector<Vec>& k) {
  out = y;
  for (std::size_t c = 0; c < y.size(); ++c) {
    for (std::size_t i = 0; i < y[c].size(); ++i) out[c][i] += a * k[c][i];
  }
}

void check_config(const SimConfig& c) {
  c.validate();
  if (c.grid.dimension != 1) throw Error(ErrorCode::invalid_dimension, "the oracle runs in d = 1 only");
  if (c.grid.points > 64) throw Error(ErrorCode::invalid_size, "the oracle needs N <= 64");
}

}  // namespace

double oracle_max_step(const SimConfig& config, OracleTarget target) {
  check_config(config);
  const double xi = std::numbers::pi * config.grid.points / config.grid.length;
  const double e2 = config.epsilon * config.epsilon;
  double rate = xi * xi + e2 * xi * xi * xi * xi;
  if (target == OracleTarget::qz) rate = std::max(rate, config.lambda * xi * std::sqrt(1.0 + e2 * xi * xi));
  // RK4 reaches about 2.83 on the imaginary axis; keep a margin.
  return 2.5 / rate;
}

OracleResult oracle_evolve(const SimConfig& config, const InitialData& data, OracleTarget target,
                           std::optional<double> dt_oracle) {
  const double limit = oracle_max_step(config, target);
  const double requested = dt_oracle.value_or(config.step() / 50.0);
  if (!(requested > 0.0)) throw Error(ErrorCode::invalid_parameter, "oracle step must be positive");
  if (requested > limit) {
    std::ostringstream msg;
    msg << "oracle step " << requested << " exceeds the RK4 stability limit; largest admissible step is " << limit;
    throw Error(ErrorCode::instability_detected, msg.str());
  }
  const Grid grid = config.grid.make();
  if (!(data.E0.grid() == grid)) throw Error(ErrorCode::inconsistent_grid, "data grid differs from config grid");

  const System sys(config, target);
  const auto steps = static_cast<std::size_t>(std::ceil(config.final_time / requested - 1e-9));
  const double h = config.final_time / double(steps);

  std::vector<Vec> y;
  y.push_back(sys.dft.forward(Vec(data.E0.values().begin(), data.E0.values().end())));
  if (target == OracleTarget::qz) {
    y.push_back(sys.dft.forward(Vec(data.n0.values().begin(), data.n0.values().end())));
    y.push_back(sys.dft.forward(Vec(data.n1.values().begin(), data.n1.values().end())));
  }
  std::vector<Vec> tmp;
  for (std::size_t s = 0; s < steps; ++s) {
    const auto k1 = sys.rhs(y);
    axpy_state(tmp, y, 0.5 * h, k1);
    const auto k2 = sys.rhs(tmp);
    axpy_state(tmp, y, 0.5 * h, k2);
    const auto k3 = sys.rhs(tmp);
    axpy_state(tmp, y, h, k3);
    const auto k4 = sys.rhs(tmp);
    for (std::size_t c = 0; c < y.size(); ++c) {
      for (std::size_t i = 0; i < y[c].size(); ++i) {
        y[c][i] += h / 6.0 * (k1[c][i] + 2.0 * k2[c][i] + 2.0 * k3[c][i] + k4[c][i]);
        if (!std::isfinite(y[c][i].real()) || !std::isfinite(y[c][i].imag())) {
          throw Error(ErrorCode::nonfinite_field, "oracle produced a non-finite value");
        }
      }
    }
  }

  auto real_field = [&](const Vec& spec) {
    Vec v = sys.dft.inverse(spec);
    for (auto& x : v) x = x.real();
    return Field(grid, Representation::physical_real, std::move(v));
  };
  OracleResult out{config.final_time, Field(grid, Representation::physical_complex, sys.dft.inverse(y[0])),
                   std::nullopt, std::nullopt, h, steps};
  if (target == OracleTarget::qz) {
    out.n = real_field(y[1]);
    out.nt = real_field(y[2]);
  }
  return out;
}

}  // namespace qzak
