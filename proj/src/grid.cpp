#include "qzak/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qzak/error.hpp"

namespace qzak {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid::Grid(int dimension, int points, double length)
    : dimension_(dimension), points_(points), length_(length), size_(0) {
  if (dimension != 1 && dimension != 2) {
    throw Error(ErrorCode::invalid_dimension, "dimension must be 1 or 2, got " + std::to_string(dimension));
  }
  if (!is_power_of_two(points) || points < 16) {
    throw Error(ErrorCode::invalid_size, "points per axis must be a power of two >= 16, got " +
                                             std::to_string(points));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(ErrorCode::invalid_length, "box length must be positive, got " + std::to_string(length));
  }
  size_ = dimension == 1 ? std::size_t(points) : std::size_t(points) * std::size_t(points);
}

double Grid::cell_measure() const noexcept { return std::pow(spacing(), dimension_); }

double Grid::wavenumber(int k) const noexcept {
  return 2.0 * std::numbers::pi * signed_index(k) / length_;
}

double Grid::coordinate(int k) const noexcept { return -0.5 * length_ + k * spacing(); }

std::array<int, 2> Grid::unflatten(std::size_t flat) const noexcept {
  if (dimension_ == 1) return {int(flat), 0};
  return {int(flat / std::size_t(points_)), int(flat % std::size_t(points_))};
}

std::vector<double> Grid::axis_wavenumbers() const {
  std::vector<double> xi(points_);
  for (int k = 0; k < points_; ++k) xi[k] = wavenumber(k);
  return xi;
}

std::vector<double> Grid::wavenumber_squared() const {
  const auto xi = axis_wavenumbers();
  std::vector<double> out(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    const auto [a, b] = unflatten(i);
    out[i] = dimension_ == 1 ? xi[a] * xi[a] : xi[a] * xi[a] + xi[b] * xi[b];
  }
  return out;
}

std::vector<double> Grid::wavenumber_component(int axis) const {
  const auto xi = axis_wavenumbers();
  std::vector<double> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = xi[unflatten(i)[axis]];
  return out;
}

std::vector<double> Grid::radius() const {
  std::vector<double> out(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    const auto [a, b] = unflatten(i);
    const double x = coordinate(a);
    const double y = dimension_ == 2 ? coordinate(b) : 0.0;
    out[i] = std::sqrt(x * x + y * y);
  }
  return out;
}

std::vector<double> Grid::coordinate_component(int axis) const {
  std::vector<double> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = coordinate(unflatten(i)[axis]);
  return out;
}

Grid make_grid(int dimension, int points, double length) { return Grid(dimension, points, length); }

}  // namespace qzak
