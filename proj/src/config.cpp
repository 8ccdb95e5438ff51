#include "qzak/config.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qzak/error.hpp"

namespace qzak {

double SimConfig::step() const { return std::min(dt0, c_lambda / lambda); }

void SimConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorCode::range_violation, "epsilon must lie in (0, 1], got " + std::to_string(epsilon));
  }
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::range_violation, "lambda must be >= 1, got " + std::to_string(lambda));
  }
  if (!(final_time > 0.0) || !std::isfinite(final_time)) {
    throw Error(ErrorCode::range_violation, "final_time must be positive");
  }
  if (!(dt0 > 0.0)) throw Error(ErrorCode::range_violation, "dt0 must be positive");
  if (!(c_lambda > 0.0)) throw Error(ErrorCode::range_violation, "c_lambda must be positive");
  if (sobolev_index < 0) throw Error(ErrorCode::range_violation, "sobolev_index must be >= 0");
  if (!(tail_limit >= 0.0)) throw Error(ErrorCode::range_violation, "tail_limit must be >= 0");
  if (!std::is_sorted(sample_times.begin(), sample_times.end())) {
    throw Error(ErrorCode::range_violation, "sample_times must be sorted");
  }
  for (double t : sample_times) {
    if (t < 0.0 || t > final_time) {
      throw Error(ErrorCode::range_violation, "sample time " + std::to_string(t) + " outside [0, final_time]");
    }
  }
  (void)grid.make();
}

std::vector<double> uniform_samples(double final_time, int count) {
  std::vector<double> times;
  times.reserve(std::max(count, 0));
  for (int k = 1; k <= count; ++k) times.push_back(final_time * k / count);
  return times;
}

}  // namespace qzak
