#pragma once

#include <vector>

#include "qzak/field.hpp"

namespace qzak {

/// Discrete L^2 norm with measure (L/N)^d; equals the spectral l^2 norm.
double l2_norm(const Field& f);

/// Bessel-potential norm (sum_xi (1 + |xi|^2)^m |f^(xi)|^2)^(1/2).
double sobolev_norm(const Field& f, int m);

/// || |x|^l grad^k f ||_{L^2}, where grad^k is Delta^(k/2) for even k and
/// Delta^((k-1)/2) grad for odd k (all components in d = 2), applied
/// spectrally; |x| is measured from the box center.
double weighted_norm(const Field& f, int l, int k);

/// grad^k f in the sense above, one Field per component (one for even k).
std::vector<Field> derivative_power(const Field& f, int k);

/// Mean value (1/L^d) * integral of a field, from its zero mode.
cplx mean(const Field& f);

/// 2/3-rule truncation: zeroes every coefficient with some axis index
/// |j| > N/3. Idempotent.
Field dealias(const Field& f);
/// Mask of retained modes (1 = kept) in flat storage order.
std::vector<unsigned char> dealias_mask(const Grid& grid);

}  // namespace qzak
