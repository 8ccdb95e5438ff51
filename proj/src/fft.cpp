#include "qzak/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <utility>
#include <vector>

#include "qzak/error.hpp"
#include "qzak/kernels.hpp"

namespace qzak {

namespace {

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan make_plan(const Grid& grid, int sign) {
  std::vector<cplx> scratch(grid.size());
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard lock(planner_mutex());
  if (grid.dimension() == 1) return fftw_plan_dft_1d(grid.points(), buf, buf, sign, flags);
  return fftw_plan_dft_2d(grid.points(), grid.points(), buf, buf, sign, flags);
}

}  // namespace

FftEngine::FftEngine(const Grid& grid) : grid_(grid) {
  forward_plan_ = make_plan(grid, FFTW_FORWARD);
  inverse_plan_ = make_plan(grid, FFTW_BACKWARD);
  if (!forward_plan_ || !inverse_plan_) {
    release();
    throw Error(ErrorCode::invalid_size, "FFTW could not plan the transform");
  }
  const int d = grid.dimension();
  const double n_total = double(grid.size());
  forward_scale_ = std::pow(grid.length(), 0.5 * d) / n_total;
  inverse_scale_ = std::pow(grid.length(), -0.5 * d);
}

FftEngine::~FftEngine() { release(); }

FftEngine::FftEngine(FftEngine&& other) noexcept
    : grid_(other.grid_),
      forward_plan_(std::exchange(other.forward_plan_, nullptr)),
      inverse_plan_(std::exchange(other.inverse_plan_, nullptr)),
      forward_scale_(other.forward_scale_),
      inverse_scale_(other.inverse_scale_) {}

FftEngine& FftEngine::operator=(FftEngine&& other) noexcept {
  if (this != &other) {
    release();
    grid_ = other.grid_;
    forward_plan_ = std::exchange(other.forward_plan_, nullptr);
    inverse_plan_ = std::exchange(other.inverse_plan_, nullptr);
    forward_scale_ = other.forward_scale_;
    inverse_scale_ = other.inverse_scale_;
  }
  return *this;
}

void FftEngine::release() noexcept {
  std::lock_guard lock(planner_mutex());
  if (forward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  if (inverse_plan_) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  forward_plan_ = inverse_plan_ = nullptr;
}

void FftEngine::forward(std::span<cplx> data) const {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), buf, buf);
  kernels::scale(data, forward_scale_);
}

void FftEngine::inverse(std::span<cplx> data) const {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(static_cast<fftw_plan>(inverse_plan_), buf, buf);
  kernels::scale(data, inverse_scale_);
}

Field FftEngine::to_spectral(const Field& f) const {
  if (f.is_spectral()) throw Error(ErrorCode::representation_mismatch, "to_spectral expects a physical field");
  if (!(f.grid() == grid_)) throw Error(ErrorCode::inconsistent_grid, "field grid differs from engine grid");
  std::vector<cplx> v(f.values().begin(), f.values().end());
  forward(v);
  return Field(grid_, Representation::spectral, std::move(v),
               f.representation() == Representation::physical_real);
}

Field FftEngine::to_physical(const Field& f) const {
  if (!f.is_spectral()) throw Error(ErrorCode::representation_mismatch, "to_physical expects a spectral field");
  if (!(f.grid() == grid_)) throw Error(ErrorCode::inconsistent_grid, "field grid differs from engine grid");
  std::vector<cplx> v(f.values().begin(), f.values().end());
  inverse(v);
  return Field(grid_, f.is_real_valued() ? Representation::physical_real : Representation::physical_complex,
               std::move(v));
}

}  // namespace qzak
