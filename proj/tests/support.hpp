#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "qzak/field.hpp"
#include "qzak/grid.hpp"

namespace qzak::test {

inline constexpr double kPi = std::numbers::pi;

inline Field random_real(const Grid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  std::vector<double> v(g.size());
  for (auto& x : v) x = dist(rng);
  return Field::real(g, v);
}

inline Field random_complex(const Grid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  std::vector<cplx> v(g.size());
  for (auto& x : v) x = cplx(dist(rng), dist(rng));
  return Field::complex(g, std::move(v));
}

// Samples f(x) (or f(x, y)) on the grid.
template <class F>
Field sample_real(const Grid& g, F f) {
  const auto x = g.coordinate_component(0);
  std::vector<double> v(g.size());
  if (g.dimension() == 1) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(x[i], 0.0);
  } else {
    const auto y = g.coordinate_component(1);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(x[i], y[i]);
  }
  return Field::real(g, v);
}

template <class F>
Field sample_complex(const Grid& g, F f) {
  const auto x = g.coordinate_component(0);
  std::vector<cplx> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(x[i]);
  return Field::complex(g, std::move(v));
}

// Direct O(N^2) unitary DFT in d = 1, independent of the FFT path.
inline std::vector<cplx> direct_dft(const Grid& g, std::span<const cplx> f) {
  const int n = g.points();
  std::vector<cplx> out(n);
  const double scale = std::sqrt(g.length()) / n;
  for (int j = 0; j < n; ++j) {
    cplx acc = 0.0;
    for (int k = 0; k < n; ++k) {
      const double a = -2.0 * kPi * double(j) * double(k) / n;
      acc += f[k] * cplx(std::cos(a), std::sin(a));
    }
    out[j] = scale * acc;
  }
  return out;
}

inline std::vector<cplx> direct_idft(const Grid& g, std::span<const cplx> f) {
  const int n = g.points();
  std::vector<cplx> out(n);
  const double scale = 1.0 / std::sqrt(g.length());
  for (int k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double a = 2.0 * kPi * double(j) * double(k) / n;
      acc += f[j] * cplx(std::cos(a), std::sin(a));
    }
    out[k] = scale * acc;
  }
  return out;
}

inline double signed_wavenumber(const Grid& g, int j) {
  const int n = g.points();
  return 2.0 * kPi * (j < n / 2 ? j : j - n) / g.length();
}

// Applies sym(xi) through the direct DFT, optionally dropping 3|j| > N.
template <class Sym>
std::vector<cplx> direct_apply(const Grid& g, std::span<const cplx> f, Sym sym, bool truncate = false) {
  auto h = direct_dft(g, f);
  const int n = g.points();
  for (int j = 0; j < n; ++j) {
    const int sj = j < n / 2 ? j : j - n;
    h[j] *= (truncate && 3 * std::abs(sj) > n) ? cplx(0.0) : cplx(sym(signed_wavenumber(g, j)));
  }
  return direct_idft(g, h);
}

// Bessel H^m norm through the direct DFT.
inline double direct_hm(const Grid& g, std::span<const cplx> f, int m) {
  const auto h = direct_dft(g, f);
  double s = 0.0;
  for (int j = 0; j < g.points(); ++j) s += std::pow(1.0 + std::pow(signed_wavenumber(g, j), 2), m) * std::norm(h[j]);
  return std::sqrt(s);
}

// Plain trapezoid L2 norm, independent of the library norms.
inline double grid_l2(const Field& f) {
  double s = 0.0;
  for (const auto& v : f.values()) s += std::norm(v);
  return std::sqrt(s * f.grid().cell_measure());
}

inline double max_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace qzak::test
