#include "qzak/state.hpp"

#include <cmath>
#include <string>

#include "qzak/error.hpp"
#include "qzak/fft.hpp"
#include "qzak/kernels.hpp"
#include "qzak/multipliers.hpp"
#include "qzak/norms.hpp"

namespace qzak {

std::string_view to_string(DataKind kind) {
  switch (kind) {
    case DataKind::generic: return "generic";
    case DataKind::compatible: return "compatible";
    case DataKind::well_prepared: return "well-prepared";
  }
  return "generic";
}

DataKind data_kind_from_string(std::string_view name) {
  if (name == "generic") return DataKind::generic;
  if (name == "compatible") return DataKind::compatible;
  if (name == "well-prepared" || name == "well_prepared") return DataKind::well_prepared;
  throw Error(ErrorCode::schema_violation, "unknown data kind '" + std::string(name) + "'");
}

namespace {

void check_gaussian(const Grid& grid, const PresetParams& p, double width, double center, const char* what) {
  if (!(width > 0.0)) throw Error(ErrorCode::invalid_parameter, std::string(what) + " width must be positive");
  if (width < p.min_points_per_width * grid.spacing()) {
    throw Error(ErrorCode::under_resolved, std::string(what) + " width " + std::to_string(width) +
                                               " is below " + std::to_string(p.min_points_per_width) +
                                               " grid spacings");
  }
  const double edge = 0.5 * grid.length() - std::abs(center);
  const double edge_value = edge > 0.0 ? std::exp(-(edge * edge) / (width * width)) : 1.0;
  if (edge_value > p.edge_tolerance) {
    throw Error(ErrorCode::box_too_small, std::string(what) + " envelope is " + std::to_string(edge_value) +
                                              " at the box edge");
  }
}

// exp(-|x - c e_0|^2 / w^2) at every sample.
std::vector<double> gaussian(const Grid& grid, double width, double center) {
  const auto x = grid.coordinate_component(0);
  const auto r = grid.radius();
  std::vector<double> g(grid.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double dx = x[i] - center;
    const double r2 = r[i] * r[i] - x[i] * x[i] + dx * dx;
    g[i] = std::exp(-r2 / (width * width));
  }
  return g;
}

// I_eps applied to the dealiased |E|^2.
Field smoothed_intensity(const FftEngine& fft, const Field& E, double eps) {
  Field s = fft.to_spectral(abs_squared(E));
  s = dealias(s);
  kernels::multiply(s.values(), real_symbol_table(E.grid(), Multiplier::i_eps(eps)));
  return fft.to_physical(s);
}

void remove_mean(Field& f) {
  const cplx m = mean(f);
  if (m == cplx(0.0)) return;
  for (auto& v : f.values()) v -= m;
  if (f.representation() == Representation::physical_real) kernels::drop_imaginary(f.values());
}

bool is_real(const Field& f) {
  for (const auto& v : f.values()) {
    if (v.imag() != 0.0) return false;
  }
  return true;
}

}  // namespace

InitialData preset_initial_data(DataKind kind, const PresetParams& p, const Grid& grid, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw Error(ErrorCode::range_violation, "epsilon must lie in (0, 1]");
  check_gaussian(grid, p, p.width, p.center, "E0");

  const FftEngine fft(grid);
  const auto envelope = gaussian(grid, p.width, p.center);
  const auto x = grid.coordinate_component(0);
  const auto r = grid.radius();
  std::vector<cplx> e(grid.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double phase = p.wavenumber * x[i] + p.chirp * r[i] * r[i];
    e[i] = p.amplitude * envelope[i] * cplx(std::cos(phase), std::sin(phase));
  }
  if (p.wavenumber == 0.0 && p.chirp == 0.0) {
    for (auto& v : e) v = cplx(v.real(), 0.0);
  }
  Field E0 = Field::complex(grid, std::move(e));
  Field smoothed = smoothed_intensity(fft, E0, eps);

  Field n0(grid, Representation::physical_real);
  Field n1(grid, Representation::physical_real);

  switch (kind) {
    case DataKind::compatible:
      n0 = -1.0 * smoothed;
      break;
    case DataKind::well_prepared: {
      n0 = -1.0 * smoothed;
      // dQ/dt(0) = n1 + I_eps d|E|^2/dt(0), d|E|^2/dt = 2 Im(E conj(Delta_eps E)).
      if (!is_real(E0)) {
        Field lap = apply_multiplier(E0, Multiplier::delta_eps(eps));
        std::vector<cplx> g(grid.size());
        for (std::size_t i = 0; i < g.size(); ++i) g[i] = 2.0 * std::imag(E0[i] * std::conj(lap[i]));
        Field gs = dealias(fft.to_spectral(Field(grid, Representation::physical_real, std::move(g))));
        kernels::multiply(gs.values(), real_symbol_table(grid, Multiplier::i_eps(eps)));
        n1 = -1.0 * fft.to_physical(gs);
        remove_mean(n1);
      }
      break;
    }
    case DataKind::generic: {
      check_gaussian(grid, p, p.density_width, p.density_center, "n0");
      check_gaussian(grid, p, p.velocity_width, p.velocity_center, "n1");
      const auto bump = gaussian(grid, p.density_width, p.density_center);
      double amplitude = p.density_amplitude;
      if (p.zero_mean_defect) {
        double bump_sum = 0.0;
        for (double b : bump) bump_sum += b;
        amplitude = -mean(smoothed).real() * double(grid.size()) / bump_sum;
      }
      std::vector<double> nv(grid.size());
      for (std::size_t i = 0; i < nv.size(); ++i) nv[i] = amplitude * bump[i];
      n0 = Field::real(grid, nv);

      const auto vel = gaussian(grid, p.velocity_width, p.velocity_center);
      const double w2 = p.velocity_width * p.velocity_width;
      for (std::size_t i = 0; i < nv.size(); ++i) {
        nv[i] = p.velocity_amplitude * (-2.0 * (x[i] - p.velocity_center) / w2) * vel[i];
      }
      n1 = Field::real(grid, nv);
      remove_mean(n1);
      break;
    }
  }
  return InitialData{std::move(E0), std::move(n0), std::move(n1), kind};
}

double compatibility_defect(const InitialData& data, double eps, int m) {
  require_compatible(data.E0, data.n0);
  const FftEngine fft(data.E0.grid());
  return sobolev_norm(data.n0 + smoothed_intensity(fft, data.E0, eps), m);
}

}  // namespace qzak
