#include <gtest/gtest.h>

#include <cmath>

#include "qzak/dynamics.hpp"
#include "qzak/error.hpp"
#include "qzak/initial_layer.hpp"
#include "qzak/kernels.hpp"
#include "qzak/norms.hpp"
#include "support.hpp"

using namespace qzak;
using namespace qzak::test;

namespace {

const Grid kGrid = make_grid(1, 256, 40.0);

PresetParams travelling() {
  PresetParams p;
  p.wavenumber = 0.7;
  p.chirp = 0.05;
  return p;
}

double omega(double xi, double eps) { return std::abs(xi) * std::sqrt(1.0 + eps * eps * xi * xi); }

ZakharovState advance(const ZakharovState& s, double eps, double lambda, double h, int steps, bool dealias) {
  QzSolver solver(s.E.grid(), eps, lambda, dealias);
  solver.load(s);
  for (int i = 0; i < steps; ++i) solver.step(h);
  return solver.state();
}

}  // namespace

TEST(Layer, CompatibleDataHasNoInitialDefect) {
  const InitialData d = preset_initial_data(DataKind::compatible, travelling(), kGrid, 1.0);
  EXPECT_LT(l2_norm(q_field(d.state(), 1.0)), 1e-13);
  EXPECT_LT(l2_norm(layer_f0(d, 1.0)), 1e-13);
}

TEST(Layer, WellPreparedDataHasNoInitialVelocity) {
  const InitialData d = preset_initial_data(DataKind::well_prepared, travelling(), kGrid, 1.0);
  EXPECT_LT(l2_norm(layer_g(d, 1.0)), 1e-12);
}

// dQ/dt at t = 0 from a centred difference along the flow.
TEST(Layer, InitialVelocityMatchesFlow) {
  const double eps = 0.8, lambda = 6.0, h = 1e-4;
  const InitialData d = preset_initial_data(DataKind::generic, travelling(), kGrid, eps);
  const Field qp = q_field(advance(d.state(), eps, lambda, h, 1, true), eps);
  const Field qm = q_field(advance(d.state(), eps, lambda, -h, 1, true), eps);
  Field fd = qp - qm;
  fd *= 1.0 / (2.0 * h);
  const Field g = layer_g(d, eps);
  EXPECT_GT(l2_norm(g), 0.1);
  EXPECT_LT(l2_norm(fd - g), 1e-6 * l2_norm(g));
}

TEST(Layer, FreeWaveSolutionsOnOneMode) {
  const double eps = 0.5, lambda = 10.0, t = 0.173;
  const int j = 4;
  const double w = omega(kGrid.wavenumber(j), eps);
  const Field f = sample_real(kGrid, [&](double x, double) { return std::cos(kGrid.wavenumber(j) * x); });
  const Field q0 = q0_exact(t, lambda, eps, f);
  const Field q1 = q1_exact(t, lambda, eps, f);
  for (std::size_t i = 0; i < kGrid.size(); ++i) {
    EXPECT_NEAR(q0[i].real(), std::cos(lambda * w * t) * f[i].real(), 1e-13);
    EXPECT_NEAR(q1[i].real(), std::sin(lambda * w * t) / (lambda * w) * f[i].real(), 1e-13);
  }
  EXPECT_LT(l2_norm(q0_exact(0.0, lambda, eps, f) - f), 1e-13);
  EXPECT_LT(l2_norm(q1_exact(0.0, lambda, eps, f)), 1e-15);
}

TEST(Layer, VelocityLayerNeedsZeroMean) {
  const Field one = sample_real(kGrid, [](double, double) { return 1.0; });
  try {
    q1_exact(0.1, 2.0, 1.0, one);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::zero_mode_violation);
  }
}

// At fixed lambda t the velocity layer is exactly lambda^-1 times a fixed field.
TEST(Layer, VelocityLayerScalesInverselyWithLambda) {
  const InitialData d = preset_initial_data(DataKind::generic, PresetParams{}, kGrid, 1.0);
  const Field g = layer_g(d, 1.0);
  for (double tau : {0.5, 3.0}) {
    const Field ref = q1_exact(tau / 8.0, 8.0, 1.0, g);
    const double sup = kernels::max_abs(ref.values());
    for (double lambda : {16.0, 32.0}) {
      Field scaled = q1_exact(tau / lambda, lambda, 1.0, g);
      scaled *= lambda / 8.0;
      EXPECT_LT(kernels::max_abs((scaled - ref).values()), 1e-13 * sup);
    }
  }
}

TEST(Layer, DisplacementLayerIsBoundedByData) {
  const InitialData d = preset_initial_data(DataKind::generic, travelling(), kGrid, 1.0);
  const Field f0 = layer_f0(d, 1.0);
  for (double t : {0.01, 0.1, 0.4}) EXPECT_LE(sobolev_norm(q0_exact(t, 20.0, 1.0, f0), 2), sobolev_norm(f0, 2) * (1 + 1e-14));
}

TEST(Layer, LinearDensityHasNoRemainder) {
  SimConfig c;
  c.grid = {1, 256, 40.0};
  c.lambda = 12.0;
  c.final_time = 0.3;
  c.sample_times = uniform_samples(0.3, 3);
  const Grid g = c.grid.make();
  const Field n0 = sample_real(g, [](double x, double) { return std::exp(-x * x / 4.0); });
  const Field n1 = sample_real(g, [](double x, double) { return x * std::exp(-x * x / 4.0); });
  const InitialData d{Field(g, Representation::physical_complex), n0, n1, DataKind::generic};
  const QzTrajectory tr = qz_evolve(c, d);
  const auto layers = layer_decompose(tr, c.epsilon, c.lambda, d, 2);
  ASSERT_EQ(layers.size(), 3u);
  for (const auto& l : layers) {
    EXPECT_GT(l.norm_Q0, 0.1);
    EXPECT_LT(l.norm_Q2, 1e-11 * l.norm_Q);
    EXPECT_NEAR(l.norm_Q0, sobolev_norm(l.Q0, 2), 1e-14 * l.norm_Q0);
  }
}

// d^2/dt^2 |E|^2 = div f2 along the flow, checked by a second difference
// of |E|^2 over fine substeps; the gap must shrink like h^2.
TEST(Layer, F2DivergenceMatchesSecondTimeDerivative) {
  const double eps = 0.7, lambda = 3.0;
  const int sub = 400;
  const InitialData d = preset_initial_data(DataKind::generic, travelling(), kGrid, eps);
  const auto f2 = compute_f2(d.E0, d.n0, eps, false);
  ASSERT_EQ(f2.size(), 1u);
  const Field div = divergence(f2);
  EXPECT_GT(l2_norm(div), 0.1);
  auto gap = [&](double h) {
    const Field sp = abs_squared(advance(d.state(), eps, lambda, h / sub, sub, false).E);
    const Field sm = abs_squared(advance(d.state(), eps, lambda, -h / sub, sub, false).E);
    Field fd = sp + sm - 2.0 * abs_squared(d.E0);
    fd *= 1.0 / (h * h);
    return l2_norm(fd - div) / l2_norm(div);
  };
  const double a = gap(2e-3), b = gap(1e-3);
  EXPECT_LT(a, 1e-3);
  EXPECT_GT(a / b, 3.5);
  EXPECT_LT(a / b, 4.5);
}

// Coarse grid: f2 takes up to eight derivatives of rounding noise.
TEST(Layer, F2VanishesForPlaneWave) {
  const Grid g = make_grid(1, 32, 40.0);
  const Field E = sample_complex(g, [&](double x) { return 0.8 * std::polar(1.0, g.wavenumber(3) * x); });
  const auto f2 = compute_f2(E, Field(g, Representation::physical_real), 0.9);
  EXPECT_LT(l2_norm(divergence(f2)), 1e-12);
  const auto zero = compute_f2(Field(kGrid, Representation::physical_complex), Field(kGrid, Representation::physical_real), 0.9);
  EXPECT_EQ(l2_norm(zero[0]), 0.0);
}

TEST(DecayProbe, InnerDecayAndEnvelope) {
  const Grid g = make_grid(1, 1024, 40.0 * kPi);
  const Field f0 = sample_real(g, [](double x, double) { return std::exp(-x * x / 4.0); });
  const double lambda = 16.0;
  std::vector<double> times;
  for (double s : {0.25, 1.0, 4.0, 6.0, 8.0, 10.0}) times.push_back(s / lambda);
  const DecayProbeReport r = decay_probe(f0, 1.0, lambda, times, 1);
  EXPECT_LT(r.inner_exponent, -1.5);
  EXPECT_EQ(r.inner_fit_points, 4);
  EXPECT_NEAR(r.envelope_constant, 1.0, 1e-12);  // max of exp(-x^2/4) (1 + |x|)^-2 sits at x = 0
  EXPECT_LE(r.max_envelope_ratio, 10.0);
  // two outer-only times, then inner and outer at the rest, for k = 0 and 1
  EXPECT_EQ(r.samples.size(), 2u * 2u + 4u * 2u * 2u);
}

TEST(DecayProbe, ShortTimesKeepTheData) {
  const Grid g = make_grid(1, 1024, 40.0 * kPi);
  const Field f0 = sample_real(g, [](double x, double) { return std::exp(-x * x / 4.0); });
  const std::vector<double> times = {1e-6};
  const DecayProbeReport r = decay_probe(f0, 1.0, 8.0, times, 0);
  ASSERT_EQ(r.samples.size(), 1u);
  EXPECT_NEAR(r.samples[0].sup, 1.0, 1e-9);
}

TEST(DecayProbe, WrapAroundRisk) {
  const Grid g = make_grid(1, 256, 40.0);
  const InitialData d = preset_initial_data(DataKind::generic, PresetParams{}, g, 1.0);
  const std::vector<double> times = {5.0};
  try {
    decay_probe(layer_f0(d, 1.0), 1.0, 16.0, times, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::wrap_around_risk);
  }
}
