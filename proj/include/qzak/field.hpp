#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qzak/grid.hpp"

namespace qzak {

using cplx = std::complex<double>;

enum class Representation { physical_real, physical_complex, spectral };

/// Sampled function on a Grid, either in physical space or as unitary
/// Fourier coefficients. Values are always stored as complex numbers; a
/// physical_real field keeps its imaginary parts at exactly zero.
///
/// Spectral fields remember whether they are the image of a real field
/// (conjugate symmetric), so that the inverse transform returns to
/// physical_real.
class Field {
 public:
  Field(Grid grid, Representation rep);
  Field(Grid grid, Representation rep, std::vector<cplx> values, bool hermitian = false);

  static Field real(const Grid& grid, std::span<const double> values);
  static Field complex(const Grid& grid, std::vector<cplx> values);

  const Grid& grid() const noexcept { return grid_; }
  Representation representation() const noexcept { return rep_; }
  bool is_spectral() const noexcept { return rep_ == Representation::spectral; }
  bool is_physical() const noexcept { return !is_spectral(); }
  /// True for physical_real fields and for spectra of real fields.
  bool is_real_valued() const noexcept { return rep_ == Representation::physical_real || hermitian_; }

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const cplx> values() const noexcept { return values_; }
  std::span<cplx> values() noexcept { return values_; }
  const cplx& operator[](std::size_t i) const noexcept { return values_[i]; }
  cplx& operator[](std::size_t i) noexcept { return values_[i]; }

  /// Real parts of a physical field.
  std::vector<double> real_part() const;

  /// Sets the conjugate-symmetry flag of a spectral field.
  void set_hermitian(bool hermitian) noexcept { hermitian_ = hermitian && is_spectral(); }

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);

 private:
  Grid grid_;
  Representation rep_;
  std::vector<cplx> values_;
  bool hermitian_ = false;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);

/// Throws representation_mismatch / inconsistent_grid when the two fields
/// cannot be combined pointwise.
void require_compatible(const Field& a, const Field& b);

Field to_spectral(const Field& f);
Field to_physical(const Field& f);

/// Pointwise |f|^2 of a physical field, as a physical_real field.
Field abs_squared(const Field& f);

}  // namespace qzak
