// Parallel kernels against their serial reference, plus one full solver step.
#include <benchmark/benchmark.h>

#include <numbers>
#include <random>
#include <vector>

#include "qzak/dynamics.hpp"
#include "qzak/kernels.hpp"

namespace {

namespace k = qzak::kernels;
using qzak::cplx;

struct Data {
  std::vector<cplx> a, b, c;
  std::vector<double> w, s, ds;
  explicit Data(std::size_t n) : a(n), b(n), c(n), w(n), s(n), ds(n) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = {u(rng), u(rng)};
      b[i] = {u(rng), 0.0};
      w[i] = 1.0 + u(rng) * u(rng);
      s[i] = u(rng);
      ds[i] = u(rng);
    }
  }
};

template <auto Fn>
void kick(benchmark::State& st) {
  Data d(std::size_t(st.range(0)));
  for (auto _ : st) {
    Fn(std::span<cplx>(d.a), std::span<const cplx>(d.b), 1e-3);
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <auto Fn>
void rotate(benchmark::State& st) {
  Data d(std::size_t(st.range(0)));
  for (auto _ : st) {
    Fn(std::span<cplx>(d.a), std::span<cplx>(d.c), std::span<const double>(d.w), std::span<const double>(d.s),
       std::span<const double>(d.ds));
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <auto Fn>
void intensity(benchmark::State& st) {
  Data d(std::size_t(st.range(0)));
  for (auto _ : st) {
    Fn(std::span<const cplx>(d.a), std::span<cplx>(d.c));
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <auto Fn>
void weighted_norm(benchmark::State& st) {
  Data d(std::size_t(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(Fn(std::span<const cplx>(d.a), std::span<const double>(d.w)));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <auto Fn>
void peak(benchmark::State& st) {
  Data d(std::size_t(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(Fn(std::span<const cplx>(d.a)));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void qz_step(benchmark::State& st) {
  const qzak::Grid g = qzak::make_grid(1, int(st.range(0)), 40.0 * std::numbers::pi * double(st.range(0)) / 1024.0);
  const qzak::InitialData data = qzak::preset_initial_data(qzak::DataKind::generic, {}, g, 1.0);
  qzak::QzSolver solver(g, 1.0, 16.0, true);
  solver.load(data.state());
  for (auto _ : st) solver.step(1e-3);
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

#define QZAK_PAIR(kind, name)                                                         \
  BENCHMARK_TEMPLATE(kind, &k::name)->Name(#name "/parallel")->RangeMultiplier(4)->Range(1 << 12, 1 << 20); \
  BENCHMARK_TEMPLATE(kind, &k::serial::name)->Name(#name "/serial")->RangeMultiplier(4)->Range(1 << 12, 1 << 20);

QZAK_PAIR(kick, potential_kick)
QZAK_PAIR(rotate, wave_rotate)
QZAK_PAIR(intensity, abs_squared)
QZAK_PAIR(weighted_norm, weighted_norm_squared)
QZAK_PAIR(peak, max_abs)

BENCHMARK(qz_step)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

}  // namespace

BENCHMARK_MAIN();
