#include <gtest/gtest.h>

#include <cmath>

#include "qzak/error.hpp"
#include "qzak/fft.hpp"
#include "qzak/multipliers.hpp"
#include "qzak/norms.hpp"
#include "support.hpp"

using namespace qzak;
using namespace qzak::test;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no qzak::Error thrown";
  return ErrorCode::io_failure;
}

Field cos_field(const Grid& g) { return sample_real(g, [](double x, double) { return std::cos(x); }); }

}  // namespace

TEST(Grid, LatticeUnitSpacing) {
  const Grid g = make_grid(1, 16, 2 * kPi);
  const auto xi = g.axis_wavenumbers();
  std::vector<double> sorted(xi.begin(), xi.end());
  std::sort(sorted.begin(), sorted.end());
  for (int j = 0; j < 16; ++j) EXPECT_NEAR(sorted[j], j - 8, 1e-14);
}

TEST(Grid, LatticeSpacingTwo) {
  const Grid g = make_grid(1, 16, kPi);
  const auto xi = g.axis_wavenumbers();
  std::vector<double> sorted(xi.begin(), xi.end());
  std::sort(sorted.begin(), sorted.end());
  for (int j = 0; j < 16; ++j) EXPECT_NEAR(sorted[j], 2.0 * (j - 8), 1e-13);
}

TEST(Grid, TwoDimensionalTensorLattice) {
  const Grid g = make_grid(2, 16, 2 * kPi);
  EXPECT_EQ(g.size(), 256u);
  const auto k0 = g.wavenumber_component(0);
  const auto k1 = g.wavenumber_component(1);
  const auto k2 = g.wavenumber_squared();
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(k2[i], k0[i] * k0[i] + k1[i] * k1[i], 1e-12);
    EXPECT_GE(k0[i], -8.0);
    EXPECT_LE(k0[i], 7.0);
  }
}

TEST(Grid, RejectsBadParameters) {
  EXPECT_EQ(code_of([] { make_grid(3, 16, 1.0); }), ErrorCode::invalid_dimension);
  EXPECT_EQ(code_of([] { make_grid(0, 16, 1.0); }), ErrorCode::invalid_dimension);
  EXPECT_EQ(code_of([] { make_grid(1, 24, 1.0); }), ErrorCode::invalid_size);
  EXPECT_EQ(code_of([] { make_grid(1, 8, 1.0); }), ErrorCode::invalid_size);
  EXPECT_EQ(code_of([] { make_grid(1, 16, 0.0); }), ErrorCode::invalid_length);
  EXPECT_EQ(code_of([] { make_grid(1, 16, -2.0); }), ErrorCode::invalid_length);
}

TEST(Grid, CoordinatesStartAtMinusHalfLength) {
  const Grid g = make_grid(1, 16, 4.0);
  EXPECT_DOUBLE_EQ(g.coordinate(0), -2.0);
  EXPECT_DOUBLE_EQ(g.coordinate(8), 0.0);
}

TEST(Transform, ConstantHasSingleMode) {
  const Grid g = make_grid(1, 16, 2 * kPi);
  const Field f = sample_real(g, [](double, double) { return 1.0; });
  const Field s = to_spectral(f);
  EXPECT_NEAR(std::norm(s[0]), 2 * kPi, 1e-12);
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LT(std::abs(s[i]), 1e-14);
}

TEST(Transform, CosineHasTwoEqualModes) {
  const Grid g = make_grid(1, 16, 2 * kPi);
  const Field s = to_spectral(cos_field(g));
  EXPECT_GT(std::abs(s[1]), 0.1);
  EXPECT_NEAR(std::abs(s[1]), std::abs(s[15]), 1e-14);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i != 1 && i != 15) EXPECT_LT(std::abs(s[i]), 1e-14);
  }
}

TEST(Transform, RoundTripAndPlancherel) {
  const Grid g = make_grid(1, 256, 10.0);
  const Field f = random_real(g, 7);
  const Field s = to_spectral(f);
  const Field back = to_physical(s);
  EXPECT_EQ(back.representation(), Representation::physical_real);
  EXPECT_LT(max_diff(f, back), 1e-12 * grid_l2(f));
  double spec = 0.0;
  for (const auto& v : s.values()) spec += std::norm(v);
  EXPECT_NEAR(std::sqrt(spec), grid_l2(f), 1e-12 * grid_l2(f));
}

TEST(Transform, RealFieldIsConjugateSymmetric) {
  const Grid g = make_grid(1, 64, 3.0);
  const Field s = to_spectral(random_real(g, 3));
  double scale = 0.0;
  for (const auto& v : s.values()) scale = std::max(scale, std::abs(v));
  for (int j = 1; j < 64; ++j) EXPECT_LT(std::abs(s[j] - std::conj(s[64 - j])), 1e-12 * scale);
}

TEST(Transform, MatchesDirectDft) {
  const Grid g = make_grid(1, 32, 5.0);
  const Field f = random_complex(g, 11);
  const Field s = to_spectral(f);
  const auto ref = direct_dft(g, f.values());
  for (int j = 0; j < 32; ++j) EXPECT_LT(std::abs(s[j] - ref[j]), 1e-12);
}

TEST(Transform, TwoDimensionalRoundTrip) {
  const Grid g = make_grid(2, 32, 6.0);
  const Field f = random_complex(g, 5);
  const Field back = to_physical(to_spectral(f));
  EXPECT_LT(max_diff(f, back), 1e-12 * grid_l2(f));
}

TEST(Transform, RejectsWrongDirection) {
  const Grid g = make_grid(1, 16, 1.0);
  const Field f = random_real(g, 1);
  EXPECT_EQ(code_of([&] { to_physical(f); }), ErrorCode::representation_mismatch);
  EXPECT_EQ(code_of([&] { to_spectral(to_spectral(f)); }), ErrorCode::representation_mismatch);
}

TEST(Multiplier, ClosedFormSymbolsAtUnitWavenumber) {
  const Grid g = make_grid(1, 16, 2 * kPi);
  const Field c = cos_field(g);
  auto factor = [&](const Multiplier& m) { return apply_multiplier(c, m)[0].real() / c[0].real(); };
  EXPECT_NEAR(factor(Multiplier::delta_eps(1.0)), -2.0, 1e-13);
  EXPECT_NEAR(factor(Multiplier::i_eps(1.0)), 0.5, 1e-13);
  EXPECT_NEAR(factor(Multiplier::omega_eps(1.0)), std::sqrt(2.0), 1e-13);
  EXPECT_NEAR(factor(Multiplier::laplacian()), -1.0, 1e-13);
  EXPECT_NEAR(factor(Multiplier::sqrt_ieps_neglap(1.0)), 1.0 / std::sqrt(2.0), 1e-13);
  EXPECT_NEAR(factor(Multiplier::sobolev_weight(2.0)), 2.0, 1e-13);
  EXPECT_NEAR(factor(Multiplier::wave_cos(1.0, 3.0, 0.4)), std::cos(3.0 * 0.4 * std::sqrt(2.0)), 1e-13);
}

TEST(Multiplier, ZeroTimePropagators) {
  const Grid g = make_grid(1, 64, 7.0);
  const Field f = random_real(g, 2);
  const Field s = apply_multiplier(f, Multiplier::wave_sinc(1.0, 10.0, 0.0));
  for (const auto& v : s.values()) EXPECT_EQ(std::abs(v), 0.0);
  EXPECT_LT(max_diff(apply_multiplier(f, Multiplier::wave_cos(1.0, 10.0, 0.0)), f), 1e-14);
}

TEST(Multiplier, SchrodingerGroupInverse) {
  const Grid g = make_grid(1, 128, 9.0);
  const Field f = random_complex(g, 4);
  const Field fw = apply_multiplier(f, Multiplier::schrodinger_group(0.7, 0.3));
  const Field back = apply_multiplier(fw, Multiplier::schrodinger_group(0.7, -0.3));
  EXPECT_LT(max_diff(back, f), 1e-12);
  EXPECT_EQ(fw.representation(), Representation::physical_complex);
}

TEST(Multiplier, SchrodingerGroupSolvesLinearEquation) {
  // e^{ix} evolves to e^{i(x - (1 + eps^2) t)}.
  const Grid g = make_grid(1, 16, 2 * kPi);
  const double eps = 0.5, t = 0.8;
  const Field f = sample_complex(g, [](double x) { return std::polar(1.0, x); });
  const Field u = apply_multiplier(f, Multiplier::schrodinger_group(eps, t));
  const auto x = g.coordinate_component(0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    EXPECT_LT(std::abs(u[i] - std::polar(1.0, x[i] - (1 + eps * eps) * t)), 1e-13);
  }
}

TEST(Multiplier, WaveEnergyIdentity) {
  const Grid g = make_grid(1, 64, 11.0);
  const double eps = 0.8, lambda = 5.0, t = 0.37;
  const auto c = real_symbol_table(g, Multiplier::wave_cos(eps, lambda, t));
  const auto s = real_symbol_table(g, Multiplier::wave_sinc(eps, lambda, t));
  const auto w = real_symbol_table(g, Multiplier::omega_eps(eps));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (w[i] > 0.0) EXPECT_NEAR(c[i] * c[i] + std::pow(lambda * w[i] * s[i], 2), 1.0, 1e-13);
  }
  EXPECT_DOUBLE_EQ(s[0], t);
}

TEST(Multiplier, RealSymbolsPreserveRealFields) {
  const Grid g = make_grid(1, 64, 5.0);
  const Field f = random_real(g, 9);
  for (const auto& m : {Multiplier::laplacian(), Multiplier::delta_eps(0.5), Multiplier::i_eps(0.5),
                        Multiplier::omega_eps(0.5), Multiplier::wave_cos(0.5, 2.0, 0.1),
                        Multiplier::wave_sinc(0.5, 2.0, 0.1), Multiplier::sobolev_weight(3.0)}) {
    EXPECT_EQ(apply_multiplier(f, m).representation(), Representation::physical_real);
  }
}

TEST(Multiplier, HomogeneousWeightInverse) {
  const Grid g = make_grid(1, 64, 8.0);
  Field f = to_spectral(random_real(g, 12));
  f[0] = 0.0;
  const Field h = apply_multiplier(apply_multiplier(f, Multiplier::homogeneous_weight(1.5)),
                                   Multiplier::homogeneous_weight(-1.5));
  EXPECT_LT(max_diff(h, f), 1e-12);
}

TEST(Multiplier, InverseGradientUndoesGradient) {
  const Grid g = make_grid(1, 64, 2 * kPi);
  const Field f = sample_real(g, [](double x, double) { return std::sin(3 * x) + 0.5 * std::cos(x); });
  const Field back = apply_multiplier(apply_multiplier(f, Multiplier::inv_grad()), Multiplier::gradient());
  EXPECT_LT(max_diff(back, f), 1e-13);
}

TEST(Multiplier, ZeroModeViolation) {
  const Grid g = make_grid(1, 32, 2 * kPi);
  const Field f = sample_real(g, [](double x, double) { return 1.0 + std::cos(x); });
  EXPECT_EQ(code_of([&] { apply_multiplier(f, Multiplier::inv_grad()); }), ErrorCode::zero_mode_violation);
  EXPECT_EQ(code_of([&] { apply_multiplier(f, Multiplier::homogeneous_weight(1.0)); }),
            ErrorCode::zero_mode_violation);
}

TEST(Multiplier, InvalidParameters) {
  const Grid g = make_grid(1, 32, 1.0);
  const Field f = random_real(g, 1);
  for (const auto& m : {Multiplier::delta_eps(0.0), Multiplier::i_eps(1.5), Multiplier::wave_cos(1.0, 0.5, 0.1),
                        Multiplier::sobolev_weight(-1.0), Multiplier::homogeneous_weight(2.0),
                        Multiplier::homogeneous_weight(0.0), Multiplier::gradient(1)}) {
    EXPECT_EQ(code_of([&] { apply_multiplier(f, m); }), ErrorCode::invalid_parameter);
  }
}

TEST(SobolevNorm, Constant) {
  const Grid g = make_grid(1, 16, 2 * kPi);
  const Field f = sample_real(g, [](double, double) { return 1.0; });
  for (int m = 0; m < 4; ++m) EXPECT_NEAR(sobolev_norm(f, m), std::sqrt(2 * kPi), 1e-12);
}

TEST(SobolevNorm, CosineFirstOrder) {
  const Grid g = make_grid(1, 16, 2 * kPi);
  EXPECT_NEAR(sobolev_norm(cos_field(g), 1), std::sqrt(2.0) * std::sqrt(kPi), 1e-12);
  EXPECT_NEAR(sobolev_norm(cos_field(g), 0), l2_norm(cos_field(g)), 1e-14);
}

TEST(SobolevNorm, EquivalentToDerivativeSum) {
  const Grid g = make_grid(1, 512, 40.0);
  const Field f = sample_real(g, [](double x, double) { return std::exp(-x * x / 4.0) * (1 + 0.3 * x); });
  // Brute force: finite-difference derivatives, independent of the spectral path.
  const double h = g.spacing();
  std::vector<double> v = f.real_part(), d1(v.size()), d2(v.size());
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double l = v[(i + n - 1) % n], r = v[(i + 1) % n], ll = v[(i + n - 2) % n], rr = v[(i + 2) % n];
    d1[i] = (ll - 8 * l + 8 * r - rr) / (12 * h);
    d2[i] = (-ll + 16 * l - 30 * v[i] + 16 * r - rr) / (12 * h * h);
  }
  auto nrm = [&](const std::vector<double>& a) {
    double s = 0;
    for (double x : a) s += x * x;
    return std::sqrt(s * h);
  };
  const double brute = nrm(v) + nrm(d1) + nrm(d2);
  const double ratio = sobolev_norm(f, 2) / brute;
  EXPECT_GE(ratio, 1.0 / std::sqrt(3.0));
  EXPECT_LE(ratio, std::sqrt(3.0));
}

TEST(SobolevNorm, MonotoneInIndex) {
  const Grid g = make_grid(1, 64, 3.0);
  const Field f = random_real(g, 21);
  for (int m = 0; m < 5; ++m) EXPECT_LE(sobolev_norm(f, m), sobolev_norm(f, m + 1));
}

TEST(WeightedNorm, Unweighted) {
  const Grid g = make_grid(1, 64, 3.0);
  const Field f = random_real(g, 5);
  EXPECT_NEAR(weighted_norm(f, 0, 0), l2_norm(f), 1e-13 * l2_norm(f));
}

TEST(WeightedNorm, GaussianFirstMoment) {
  const Grid g = make_grid(1, 1024, 40.0);
  const Field f = sample_real(g, [](double x, double) { return std::exp(-x * x); });
  const double analytic = std::sqrt(kPi / 2) / 4;  // int x^2 exp(-2 x^2) dx
  EXPECT_NEAR(std::pow(weighted_norm(f, 1, 0), 2), analytic, 1e-6 * analytic);
}

TEST(WeightedNorm, DerivativeAndWeightBound) {
  const Grid g = make_grid(1, 1024, 40.0);
  const Field f = sample_real(g, [](double x, double) { return std::exp(-x * x); });
  // ||d/dx e^{-x^2}||^2 = int 4 x^2 e^{-2x^2} dx
  EXPECT_NEAR(std::pow(weighted_norm(f, 0, 1), 2), std::sqrt(kPi / 2), 1e-9);
  const Field peak = sample_real(g, [](double x, double) { return std::exp(-100 * x * x); });
  EXPECT_LT(weighted_norm(peak, 2, 0), weighted_norm(peak, 0, 0) * 400.0);
}

TEST(Dealias, KeepsBandAndKillsNyquist) {
  const Grid g = make_grid(1, 64, 2 * kPi);
  Field band(g, Representation::spectral);
  for (int j = 0; j <= 21; ++j) band[j] = 1.0;
  for (int j = 64 - 21; j < 64; ++j) band[j] = 1.0;
  EXPECT_LT(max_diff(dealias(band), band), 1e-300);
  Field nyq(g, Representation::spectral);
  nyq[32] = 1.0;
  const Field cleared = dealias(nyq);
  for (const auto& v : cleared.values()) EXPECT_EQ(std::abs(v), 0.0);
  band[22] = 1.0;
  EXPECT_EQ(dealias(band)[22], cplx(0.0));
}

TEST(Dealias, Idempotent) {
  const Grid g = make_grid(2, 32, 1.0);
  const Field s = to_spectral(random_complex(g, 8));
  const Field once = dealias(s);
  EXPECT_EQ(max_diff(dealias(once), once), 0.0);
  EXPECT_EQ(code_of([&] { dealias(random_real(g, 1)); }), ErrorCode::representation_mismatch);
}
