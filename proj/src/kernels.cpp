#include "qzak/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace qzak::kernels {

namespace {

// Reductions sum blocks of this many entries; the partition is independent
// of the number of threads.
constexpr std::size_t kBlock = 4096;

using Index = std::ptrdiff_t;

Index ssize(std::size_t n) { return static_cast<Index>(n); }

double squared_modulus(const cplx& v) { return v.real() * v.real() + v.imag() * v.imag(); }

// Slow path once some |z|^2 overflowed or was not finite.
double careful_max_abs(std::span<const cplx> data) {
  double m = 0.0;
  for (const auto& v : data) {
    const double a = std::abs(v);
    if (!std::isfinite(a)) return std::numeric_limits<double>::infinity();
    m = std::max(m, a);
  }
  return m;
}

double range_norm_squared(std::span<const cplx> data) {
  double total = 0.0;
  for (const auto& v : data) total += std::norm(v);
  return total;
}

double range_weighted_norm_squared(std::span<const cplx> data, std::span<const double> weight) {
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) total += weight[i] * std::norm(data[i]);
  return total;
}

template <class BlockSum>
double blocked_sum(std::size_t n, BlockSum&& block_sum) {
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (Index b = 0; b < ssize(blocks); ++b) {
    const std::size_t lo = std::size_t(b) * kBlock;
    partial[b] = block_sum(lo, std::min(n, lo + kBlock));
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace

void scale(std::span<cplx> data, double s) {
  const Index n = ssize(data.size());
#pragma omp parallel for schedule(static) if (data.size() >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) data[i] *= s;
}

void multiply(std::span<cplx> data, std::span<const cplx> symbol) {
  const Index n = ssize(data.size());
#pragma omp parallel for schedule(static) if (data.size() >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) data[i] *= symbol[i];
}

void multiply(std::span<cplx> data, std::span<const double> symbol) {
  const Index n = ssize(data.size());
#pragma omp parallel for schedule(static) if (data.size() >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) data[i] *= symbol[i];
}

void multiply_into(std::span<cplx> data, std::span<const double> symbol, std::span<const cplx> source) {
  const Index n = ssize(data.size());
#pragma omp parallel for schedule(static) if (data.size() >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) data[i] = symbol[i] * source[i];
}

void potential_kick(std::span<cplx> field, std::span<const cplx> potential, double h) {
  const Index n = ssize(field.size());
#pragma omp parallel for schedule(static) if (field.size() >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) {
    const double phase = -h * potential[i].real();
    field[i] *= cplx(std::cos(phase), std::sin(phase));
  }
}

void abs_squared(std::span<const cplx> in, std::span<cplx> out) {
  const Index n = ssize(in.size());
#pragma omp parallel for schedule(static) if (in.size() >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) out[i] = cplx(std::norm(in[i]), 0.0);
}

void drop_imaginary(std::span<cplx> data) {
  const Index n = ssize(data.size());
#pragma omp parallel for schedule(static) if (data.size() >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) data[i] = cplx(data[i].real(), 0.0);
}

void wave_rotate(std::span<cplx> q, std::span<cplx> qdot, std::span<const double> c, std::span<const double> s,
                 std::span<const double> ds) {
  const Index n = ssize(q.size());
#pragma omp parallel for schedule(static) if (q.size() >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) {
    const cplx q_old = q[i];
    q[i] = c[i] * q_old + s[i] * qdot[i];
    qdot[i] = ds[i] * q_old + c[i] * qdot[i];
  }
}

void axpy(std::span<cplx> y, double a, std::span<const cplx> x) {
  const Index n = ssize(y.size());
#pragma omp parallel for schedule(static) if (y.size() >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) y[i] += a * x[i];
}

void apply_mask(std::span<cplx> data, std::span<const unsigned char> mask) {
  const Index n = ssize(data.size());
#pragma omp parallel for schedule(static) if (data.size() >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) {
    if (!mask[i]) data[i] = cplx(0.0, 0.0);
  }
}

double weighted_norm_squared(std::span<const cplx> data, std::span<const double> weight) {
  return blocked_sum(data.size(), [&](std::size_t lo, std::size_t hi) {
    return range_weighted_norm_squared(data.subspan(lo, hi - lo), weight.subspan(lo, hi - lo));
  });
}

double norm_squared(std::span<const cplx> data) {
  return blocked_sum(data.size(), [&](std::size_t lo, std::size_t hi) {
    return range_norm_squared(data.subspan(lo, hi - lo));
  });
}

double max_abs(std::span<const cplx> data) {
  const Index n = ssize(data.size());
  double m2 = 0.0;
  bool wide = false;
#pragma omp parallel for schedule(static) reduction(max : m2) reduction(|| : wide) if (data.size() >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) {
    const double q = squared_modulus(data[i]);
    if (q <= std::numeric_limits<double>::max()) m2 = std::max(m2, q);
    else wide = true;
  }
  return wide ? careful_max_abs(data) : std::sqrt(m2);
}

namespace serial {

void scale(std::span<cplx> data, double s) {
  for (auto& v : data) v *= s;
}

void multiply(std::span<cplx> data, std::span<const cplx> symbol) {
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= symbol[i];
}

void multiply(std::span<cplx> data, std::span<const double> symbol) {
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= symbol[i];
}

void multiply_into(std::span<cplx> data, std::span<const double> symbol, std::span<const cplx> source) {
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = symbol[i] * source[i];
}

void potential_kick(std::span<cplx> field, std::span<const cplx> potential, double h) {
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double phase = -h * potential[i].real();
    field[i] *= cplx(std::cos(phase), std::sin(phase));
  }
}

void abs_squared(std::span<const cplx> in, std::span<cplx> out) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = cplx(std::norm(in[i]), 0.0);
}

void drop_imaginary(std::span<cplx> data) {
  for (auto& v : data) v = cplx(v.real(), 0.0);
}

void wave_rotate(std::span<cplx> q, std::span<cplx> qdot, std::span<const double> c, std::span<const double> s,
                 std::span<const double> ds) {
  for (std::size_t i = 0; i < q.size(); ++i) {
    const cplx q_old = q[i];
    q[i] = c[i] * q_old + s[i] * qdot[i];
    qdot[i] = ds[i] * q_old + c[i] * qdot[i];
  }
}

void axpy(std::span<cplx> y, double a, std::span<const cplx> x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

void apply_mask(std::span<cplx> data, std::span<const unsigned char> mask) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!mask[i]) data[i] = cplx(0.0, 0.0);
  }
}

double weighted_norm_squared(std::span<const cplx> data, std::span<const double> weight) {
  double total = 0.0;
  for (std::size_t lo = 0; lo < data.size(); lo += kBlock) {
    const std::size_t hi = std::min(data.size(), lo + kBlock);
    total += range_weighted_norm_squared(data.subspan(lo, hi - lo), weight.subspan(lo, hi - lo));
  }
  return total;
}

double norm_squared(std::span<const cplx> data) {
  double total = 0.0;
  for (std::size_t lo = 0; lo < data.size(); lo += kBlock) {
    const std::size_t hi = std::min(data.size(), lo + kBlock);
    total += range_norm_squared(data.subspan(lo, hi - lo));
  }
  return total;
}

double max_abs(std::span<const cplx> data) {
  double m2 = 0.0;
  for (const auto& v : data) {
    const double q = squared_modulus(v);
    if (!(q <= std::numeric_limits<double>::max())) return careful_max_abs(data);
    m2 = std::max(m2, q);
  }
  return std::sqrt(m2);
}

}  // namespace serial

}  // namespace qzak::kernels
