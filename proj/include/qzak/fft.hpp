#pragma once

#include <span>

#include "qzak/field.hpp"

namespace qzak {

/// Owns in-place FFTW plans for one grid. Transforms are unitary with
/// respect to the physical measure (L/N)^d:
///   (L/N)^d sum_x |f(x)|^2 == sum_xi |f^(xi)|^2.
///
/// Executing a plan is thread-safe; planning is serialized internally.
/// Each engine may be used concurrently from several threads.
class FftEngine {
 public:
  explicit FftEngine(const Grid& grid);
  ~FftEngine();
  FftEngine(const FftEngine&) = delete;
  FftEngine& operator=(const FftEngine&) = delete;
  FftEngine(FftEngine&& other) noexcept;
  FftEngine& operator=(FftEngine&& other) noexcept;

  const Grid& grid() const noexcept { return grid_; }

  void forward(std::span<cplx> data) const;
  void inverse(std::span<cplx> data) const;

  Field to_spectral(const Field& f) const;
  Field to_physical(const Field& f) const;

 private:
  void release() noexcept;

  Grid grid_;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
  double forward_scale_ = 1.0;
  double inverse_scale_ = 1.0;
};

}  // namespace qzak
