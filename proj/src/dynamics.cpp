#include "qzak/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qzak/diagnostics.hpp"
#include "qzak/error.hpp"
#include "qzak/kernels.hpp"
#include "qzak/multipliers.hpp"
#include "qzak/norms.hpp"

namespace qzak {

namespace {

void check_step(double h) {
  if (h == 0.0 || !std::isfinite(h)) {
    throw Error(ErrorCode::invalid_parameter, "time step must be finite and nonzero");
  }
}

void require_state_fields(const Grid& grid, const Field& E, const Field& n, const Field* nt) {
  if (!(E.grid() == grid) || !(n.grid() == grid) || (nt && !(nt->grid() == grid))) {
    throw Error(ErrorCode::inconsistent_grid, "state fields live on a different grid than the solver");
  }
  if (!E.is_physical() || !n.is_physical() || (nt && !nt->is_physical())) {
    throw Error(ErrorCode::representation_mismatch, "state fields must be in physical representation");
  }
}

// Tables that depend on the step size; evolutions use at most a few sizes.
template <class Tables>
class TableCache {
 public:
  template <class Build>
  const Tables& get(double h, Build&& build) {
    for (const auto& entry : entries_) {
      if (entry.first == h) return entry.second;
    }
    if (entries_.size() >= 4) entries_.erase(entries_.begin());
    entries_.emplace_back(h, build(h));
    return entries_.back().second;
  }

 private:
  std::vector<std::pair<double, Tables>> entries_;
};

struct QzTables {
  std::vector<cplx> free_half;
  std::vector<double> c, s, ds;
};

struct QmnlsTables {
  std::vector<cplx> free_full;
};

Field spectral_copy(const FftEngine& fft, const Grid& grid, const std::vector<cplx>& physical) {
  std::vector<cplx> v = physical;
  fft.forward(v);
  return Field(grid, Representation::spectral, std::move(v));
}

}  // namespace

// ----------------------------------------------------------------- QzSolver

struct QzSolver::Impl {
  Grid grid;
  double eps;
  double lambda;
  bool dealias;
  FftEngine fft;
  std::vector<double> ieps;
  std::vector<double> omega;
  std::vector<unsigned char> mask;
  TableCache<QzTables> cache;

  double t = 0.0;
  std::vector<cplx> E;      // physical
  std::vector<cplx> n;      // physical, imaginary parts zero
  std::vector<cplx> n_hat;  // spectral
  std::vector<cplx> nt_hat;
  std::vector<cplx> work, source;

  Impl(const Grid& g, double e, double l, bool d)
      : grid(g), eps(e), lambda(l), dealias(d), fft(g),
        ieps(real_symbol_table(g, Multiplier::i_eps(e))),
        omega(real_symbol_table(g, Multiplier::omega_eps(e))),
        mask(dealias_mask(g)),
        E(g.size()), n(g.size()), n_hat(g.size()), nt_hat(g.size()), work(g.size()), source(g.size()) {}

  QzTables build(double h) const {
    QzTables tab;
    tab.free_half = symbol_table(grid, Multiplier::schrodinger_group(eps, 0.5 * h));
    const std::size_t size = grid.size();
    tab.c.resize(size);
    tab.s.resize(size);
    tab.ds.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
      const double w = lambda * omega[i];
      const double phase = w * h;
      tab.c[i] = std::cos(phase);
      tab.s[i] = w > 0.0 ? std::sin(phase) / w : h;
      tab.ds[i] = -w * std::sin(phase);
    }
    return tab;
  }

  void step(double h) {
    const QzTables& tab = cache.get(h, [this](double hh) { return build(hh); });
    kernels::potential_kick(E, n, 0.5 * h);
    fft.forward(E);
    kernels::multiply(E, std::span<const cplx>(tab.free_half));

    // I_eps |E|^2 with E taken after the first half of the free flow.
    std::copy(E.begin(), E.end(), work.begin());
    fft.inverse(work);
    kernels::abs_squared(work, source);
    fft.forward(source);
    if (dealias) kernels::apply_mask(source, mask);
    kernels::multiply(source, std::span<const double>(ieps));

    kernels::axpy(n_hat, 1.0, source);
    kernels::wave_rotate(n_hat, nt_hat, tab.c, tab.s, tab.ds);
    kernels::axpy(n_hat, -1.0, source);

    kernels::multiply(E, std::span<const cplx>(tab.free_half));
    fft.inverse(E);
    std::copy(n_hat.begin(), n_hat.end(), n.begin());
    fft.inverse(n);
    kernels::drop_imaginary(n);
    kernels::potential_kick(E, n, 0.5 * h);
    t += h;
  }
};

QzSolver::QzSolver(const Grid& grid, double eps, double lambda, bool dealias) {
  validate(Multiplier::wave_cos(eps, lambda, 0.0), grid);
  impl_ = std::make_unique<Impl>(grid, eps, lambda, dealias);
}
QzSolver::~QzSolver() = default;
QzSolver::QzSolver(QzSolver&&) noexcept = default;
QzSolver& QzSolver::operator=(QzSolver&&) noexcept = default;

void QzSolver::load(const ZakharovState& s) {
  Impl& m = *impl_;
  require_state_fields(m.grid, s.E, s.n, &s.nt);
  std::copy(s.E.values().begin(), s.E.values().end(), m.E.begin());
  std::copy(s.n.values().begin(), s.n.values().end(), m.n.begin());
  kernels::drop_imaginary(m.n);
  std::copy(m.n.begin(), m.n.end(), m.n_hat.begin());
  m.fft.forward(m.n_hat);
  std::copy(s.nt.values().begin(), s.nt.values().end(), m.nt_hat.begin());
  kernels::drop_imaginary(m.nt_hat);
  m.fft.forward(m.nt_hat);
  m.t = s.t;
}

ZakharovState QzSolver::state() const {
  const Impl& m = *impl_;
  std::vector<cplx> nt = m.nt_hat;
  m.fft.inverse(nt);
  kernels::drop_imaginary(nt);
  return ZakharovState{m.t, Field(m.grid, Representation::physical_complex, m.E),
                       Field(m.grid, Representation::physical_real, m.n),
                       Field(m.grid, Representation::physical_real, std::move(nt))};
}

double QzSolver::time() const noexcept { return impl_->t; }

void QzSolver::step(double h) {
  check_step(h);
  impl_->step(h);
}

double QzSolver::mass() const { return kernels::norm_squared(impl_->E) * impl_->grid.cell_measure(); }

double QzSolver::max_coefficient() const {
  const Impl& m = *impl_;
  const Field e = spectral_copy(m.fft, m.grid, m.E);
  return std::max({kernels::max_abs(e.values()), kernels::max_abs(m.n_hat), kernels::max_abs(m.nt_hat)});
}

double QzSolver::spectral_tail() const {
  const Impl& m = *impl_;
  return qzak::spectral_tail(spectral_copy(m.fft, m.grid, m.E), 0.5);
}

// -------------------------------------------------------------- QmnlsSolver

struct QmnlsSolver::Impl {
  Grid grid;
  double eps;
  bool dealias;
  FftEngine fft;
  std::vector<double> neg_ieps;
  std::vector<unsigned char> mask;
  TableCache<QmnlsTables> cache;

  double t = 0.0;
  std::vector<cplx> E;
  std::vector<cplx> potential;

  Impl(const Grid& g, double e, bool d)
      : grid(g), eps(e), dealias(d), fft(g), neg_ieps(real_symbol_table(g, Multiplier::i_eps(e))),
        mask(dealias_mask(g)), E(g.size()), potential(g.size()) {
    for (auto& v : neg_ieps) v = -v;
  }

  // V = -I_eps |E|^2; |E| is invariant under the kick, so a kick with this V
  // is the exact flow of i E_t = V E.
  void update_potential() {
    kernels::abs_squared(E, potential);
    fft.forward(potential);
    if (dealias) kernels::apply_mask(potential, mask);
    kernels::multiply(potential, std::span<const double>(neg_ieps));
    fft.inverse(potential);
    kernels::drop_imaginary(potential);
  }

  void step(double h) {
    const QmnlsTables& tab = cache.get(h, [this](double hh) {
      return QmnlsTables{symbol_table(grid, Multiplier::schrodinger_group(eps, hh))};
    });
    update_potential();
    kernels::potential_kick(E, potential, 0.5 * h);
    fft.forward(E);
    kernels::multiply(E, std::span<const cplx>(tab.free_full));
    fft.inverse(E);
    update_potential();
    kernels::potential_kick(E, potential, 0.5 * h);
    t += h;
  }
};

QmnlsSolver::QmnlsSolver(const Grid& grid, double eps, bool dealias) {
  validate(Multiplier::i_eps(eps), grid);
  impl_ = std::make_unique<Impl>(grid, eps, dealias);
}
QmnlsSolver::~QmnlsSolver() = default;
QmnlsSolver::QmnlsSolver(QmnlsSolver&&) noexcept = default;
QmnlsSolver& QmnlsSolver::operator=(QmnlsSolver&&) noexcept = default;

void QmnlsSolver::load(const SchrodingerState& s) {
  Impl& m = *impl_;
  require_state_fields(m.grid, s.E, s.E, nullptr);
  std::copy(s.E.values().begin(), s.E.values().end(), m.E.begin());
  m.t = s.t;
}

SchrodingerState QmnlsSolver::state() const {
  return SchrodingerState{impl_->t, Field(impl_->grid, Representation::physical_complex, impl_->E)};
}

double QmnlsSolver::time() const noexcept { return impl_->t; }

void QmnlsSolver::step(double h) {
  check_step(h);
  impl_->step(h);
}

double QmnlsSolver::mass() const { return kernels::norm_squared(impl_->E) * impl_->grid.cell_measure(); }

double QmnlsSolver::max_coefficient() const {
  return kernels::max_abs(spectral_copy(impl_->fft, impl_->grid, impl_->E).values());
}

double QmnlsSolver::spectral_tail() const {
  return qzak::spectral_tail(spectral_copy(impl_->fft, impl_->grid, impl_->E), 0.5);
}

// ------------------------------------------------------------ free helpers

ZakharovState qz_step(const ZakharovState& s, double dt, double eps, double lambda, bool dealias) {
  QzSolver solver(s.E.grid(), eps, lambda, dealias);
  solver.load(s);
  solver.step(dt);
  return solver.state();
}

SchrodingerState qmnls_step(const SchrodingerState& s, double dt, double eps, bool dealias) {
  QmnlsSolver solver(s.E.grid(), eps, dealias);
  solver.load(s);
  solver.step(dt);
  return solver.state();
}

namespace {

constexpr std::size_t kHealthInterval = 64;

template <class Solver>
void check_health(const Solver& solver, double initial_mass, double tail_limit) {
  const double mass = solver.mass();
  if (!std::isfinite(mass) || !std::isfinite(solver.max_coefficient())) {
    throw Error(ErrorCode::nonfinite_field, "non-finite value at t = " + std::to_string(solver.time()));
  }
  if (initial_mass > 0.0 && std::abs(mass - initial_mass) > 1e-6 * initial_mass) {
    throw Error(ErrorCode::instability_detected,
                "mass drifted from " + std::to_string(initial_mass) + " to " + std::to_string(mass));
  }
  if (tail_limit > 0.0) {
    const double tail = solver.spectral_tail();
    if (tail > tail_limit) {
      throw Error(ErrorCode::under_resolved, "spectral tail " + std::to_string(tail) + " exceeds " +
                                                 std::to_string(tail_limit) + " at t = " +
                                                 std::to_string(solver.time()));
    }
  }
}

// Steps to `target` with steps of at most dt. A remainder below 1e-9 dt is
// absorbed into the last full step.
template <class Solver>
std::size_t advance(Solver& solver, double target, double dt, double initial_mass, double tail_limit,
                    std::size_t& counter) {
  std::size_t steps = 0;
  const double tol = 1e-9 * dt;
  while (target - solver.time() > tol) {
    const double remaining = target - solver.time();
    const double h = remaining <= dt + tol ? remaining : dt;
    solver.step(h);
    ++steps;
    if (++counter % kHealthInterval == 0) check_health(solver, initial_mass, tail_limit);
  }
  return steps;
}

template <class State, class Solver, class Observer>
Trajectory<State> run(const SimConfig& config, Solver& solver, const Observer& observer) {
  Trajectory<State> traj;
  const double dt = config.step();
  const double initial_mass = solver.mass();
  std::size_t counter = 0;
  auto record = [&](double t) {
    check_health(solver, initial_mass, config.tail_limit);
    State s = solver.state();
    s.t = t;
    const double tail = solver.spectral_tail();
    traj.mass.push_back(solver.mass());
    traj.spectral_tail.push_back(tail);
    if (observer) observer(s);
    if (config.keep_snapshots) traj.snapshots.push_back(std::move(s));
  };
  for (double sample : config.sample_times) {
    traj.steps += advance(solver, sample, dt, initial_mass, config.tail_limit, counter);
    record(sample);
  }
  traj.steps += advance(solver, config.final_time, dt, initial_mass, config.tail_limit, counter);
  check_health(solver, initial_mass, config.tail_limit);
  return traj;
}

}  // namespace

QzTrajectory qz_evolve(const SimConfig& config, const InitialData& data, const QzObserver& observer) {
  config.validate();
  QzSolver solver(config.grid.make(), config.epsilon, config.lambda, config.dealias);
  solver.load(data.state());
  return run<ZakharovState>(config, solver, observer);
}

QmnlsTrajectory qmnls_evolve(const SimConfig& config, const Field& E0, const QmnlsObserver& observer) {
  config.validate();
  QmnlsSolver solver(config.grid.make(), config.epsilon, config.dealias);
  solver.load(SchrodingerState{0.0, E0});
  return run<SchrodingerState>(config, solver, observer);
}

ZakharovState qz_final(const SimConfig& config, const InitialData& data, double dt) {
  config.validate();
  if (!(dt > 0.0)) throw Error(ErrorCode::invalid_parameter, "dt must be positive");
  QzSolver solver(config.grid.make(), config.epsilon, config.lambda, config.dealias);
  solver.load(data.state());
  std::size_t counter = 0;
  const double m0 = solver.mass();
  advance(solver, config.final_time, dt, m0, config.tail_limit, counter);
  check_health(solver, m0, config.tail_limit);
  ZakharovState s = solver.state();
  s.t = config.final_time;
  return s;
}

SchrodingerState qmnls_final(const SimConfig& config, const Field& E0, double dt) {
  config.validate();
  if (!(dt > 0.0)) throw Error(ErrorCode::invalid_parameter, "dt must be positive");
  QmnlsSolver solver(config.grid.make(), config.epsilon, config.dealias);
  solver.load(SchrodingerState{0.0, E0});
  std::size_t counter = 0;
  const double m0 = solver.mass();
  advance(solver, config.final_time, dt, m0, config.tail_limit, counter);
  check_health(solver, m0, config.tail_limit);
  SchrodingerState s = solver.state();
  s.t = config.final_time;
  return s;
}

}  // namespace qzak
