#include "qzak/field.hpp"

#include "qzak/error.hpp"
#include "qzak/fft.hpp"
#include "qzak/kernels.hpp"

namespace qzak {

Field::Field(Grid grid, Representation rep) : grid_(grid), rep_(rep), values_(grid.size()) {}

Field::Field(Grid grid, Representation rep, std::vector<cplx> values, bool hermitian)
    : grid_(grid), rep_(rep), values_(std::move(values)), hermitian_(hermitian && rep == Representation::spectral) {
  if (values_.size() != grid_.size()) {
    throw Error(ErrorCode::inconsistent_grid, "value count does not match grid size");
  }
  if (rep_ == Representation::physical_real) kernels::drop_imaginary(values_);
}

Field Field::real(const Grid& grid, std::span<const double> values) {
  if (values.size() != grid.size()) {
    throw Error(ErrorCode::inconsistent_grid, "value count does not match grid size");
  }
  std::vector<cplx> v(values.begin(), values.end());
  return Field(grid, Representation::physical_real, std::move(v));
}

Field Field::complex(const Grid& grid, std::vector<cplx> values) {
  return Field(grid, Representation::physical_complex, std::move(values));
}

std::vector<double> Field::real_part() const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = values_[i].real();
  return out;
}

void require_compatible(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw Error(ErrorCode::inconsistent_grid, "fields live on different grids");
  if (a.is_spectral() != b.is_spectral()) {
    throw Error(ErrorCode::representation_mismatch, "cannot combine physical and spectral fields");
  }
}

namespace {

Representation combined(const Field& a, const Field& b) {
  if (a.is_spectral()) return Representation::spectral;
  return a.representation() == Representation::physical_real && b.representation() == Representation::physical_real
             ? Representation::physical_real
             : Representation::physical_complex;
}

}  // namespace

Field& Field::operator+=(const Field& other) {
  require_compatible(*this, other);
  rep_ = combined(*this, other);
  hermitian_ = hermitian_ && other.hermitian_;
  kernels::axpy(values_, 1.0, other.values_);
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_compatible(*this, other);
  rep_ = combined(*this, other);
  hermitian_ = hermitian_ && other.hermitian_;
  kernels::axpy(values_, -1.0, other.values_);
  return *this;
}

Field& Field::operator*=(double s) {
  kernels::scale(values_, s);
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

Field to_spectral(const Field& f) { return FftEngine(f.grid()).to_spectral(f); }
Field to_physical(const Field& f) { return FftEngine(f.grid()).to_physical(f); }

Field abs_squared(const Field& f) {
  if (f.is_spectral()) throw Error(ErrorCode::representation_mismatch, "abs_squared needs a physical field");
  Field out(f.grid(), Representation::physical_real);
  kernels::abs_squared(f.values(), out.values());
  return out;
}

}  // namespace qzak
