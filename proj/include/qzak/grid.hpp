#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace qzak {

/// Periodic box [-L/2, L/2)^d sampled with N points per axis.
///
/// Spectral arrays use FFT ordering: storage index k on an axis maps to the
/// signed lattice index j = k for k < N/2 and j = k - N otherwise, so the
/// lattice is j in [-N/2, N/2) and the Nyquist index is -N/2.
class Grid {
 public:
  Grid(int dimension, int points, double length);

  int dimension() const noexcept { return dimension_; }
  int points() const noexcept { return points_; }
  double length() const noexcept { return length_; }

  /// N^d.
  std::size_t size() const noexcept { return size_; }
  double spacing() const noexcept { return length_ / points_; }
  /// Physical cell measure (L/N)^d used by every discrete integral.
  double cell_measure() const noexcept;

  int signed_index(int k) const noexcept { return k < points_ / 2 ? k : k - points_; }
  double wavenumber(int k) const noexcept;
  /// Physical coordinate of sample k on an axis, in [-L/2, L/2).
  double coordinate(int k) const noexcept;

  /// Per-axis storage indices of a flat (row-major) index.
  std::array<int, 2> unflatten(std::size_t flat) const noexcept;

  /// Wavenumbers 2*pi*j/L of one axis, in storage order.
  std::vector<double> axis_wavenumbers() const;
  /// |xi|^2 for every mode, flat row-major.
  std::vector<double> wavenumber_squared() const;
  /// xi_axis for every mode, flat row-major.
  std::vector<double> wavenumber_component(int axis) const;
  /// |x| for every physical sample, measured from the box center.
  std::vector<double> radius() const;
  /// Signed coordinate along one axis for every physical sample.
  std::vector<double> coordinate_component(int axis) const;

  bool operator==(const Grid& other) const noexcept {
    return dimension_ == other.dimension_ && points_ == other.points_ && length_ == other.length_;
  }

 private:
  int dimension_;
  int points_;
  double length_;
  std::size_t size_;
};

Grid make_grid(int dimension, int points, double length);

}  // namespace qzak
