#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace qzak::kernels {

using cplx = std::complex<double>;

/// Arrays shorter than this run the serial loop even when OpenMP is on;
/// below it thread start-up dominates.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 14;

// OpenMP data-parallel versions. All of them are elementwise except the
// reductions, which sum fixed-size blocks in parallel and fold the block
// sums serially, so results do not depend on the thread count.

void scale(std::span<cplx> data, double s);
void multiply(std::span<cplx> data, std::span<const cplx> symbol);
void multiply(std::span<cplx> data, std::span<const double> symbol);
/// data = symbol * source.
void multiply_into(std::span<cplx> data, std::span<const double> symbol, std::span<const cplx> source);
/// E <- exp(-i h Re(potential)) E.
void potential_kick(std::span<cplx> field, std::span<const cplx> potential, double h);
/// out = |in|^2 (imaginary parts set to zero).
void abs_squared(std::span<const cplx> in, std::span<cplx> out);
/// Keeps imaginary parts at exactly zero.
void drop_imaginary(std::span<cplx> data);
/// Exact harmonic-oscillator update, mode by mode:
///   q  <- c q + s qdot
///   qdot <- ds q_old + c qdot
void wave_rotate(std::span<cplx> q, std::span<cplx> qdot, std::span<const double> c,
                 std::span<const double> s, std::span<const double> ds);
/// y += a x.
void axpy(std::span<cplx> y, double a, std::span<const cplx> x);
/// Zeroes entries whose mask is 0.
void apply_mask(std::span<cplx> data, std::span<const unsigned char> mask);

/// sum_k w_k |data_k|^2.
double weighted_norm_squared(std::span<const cplx> data, std::span<const double> weight);
/// sum_k |data_k|^2.
double norm_squared(std::span<const cplx> data);
/// max_k |data_k| (infinity if any entry is not finite).
double max_abs(std::span<const cplx> data);

namespace serial {

// Plain loops kept as the reference the parallel kernels are tested and
// benchmarked against.

void scale(std::span<cplx> data, double s);
void multiply(std::span<cplx> data, std::span<const cplx> symbol);
void multiply(std::span<cplx> data, std::span<const double> symbol);
void multiply_into(std::span<cplx> data, std::span<const double> symbol, std::span<const cplx> source);
void potential_kick(std::span<cplx> field, std::span<const cplx> potential, double h);
void abs_squared(std::span<const cplx> in, std::span<cplx> out);
void drop_imaginary(std::span<cplx> data);
void wave_rotate(std::span<cplx> q, std::span<cplx> qdot, std::span<const double> c,
                 std::span<const double> s, std::span<const double> ds);
void axpy(std::span<cplx> y, double a, std::span<const cplx> x);
void apply_mask(std::span<cplx> data, std::span<const unsigned char> mask);
double weighted_norm_squared(std::span<const cplx> data, std::span<const double> weight);
double norm_squared(std::span<const cplx> data);
double max_abs(std::span<const cplx> data);

}  // namespace serial

}  // namespace qzak::kernels
