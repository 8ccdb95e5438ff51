#pragma once

#include <numbers>
#include <vector>

#include "qzak/grid.hpp"

namespace qzak {

struct GridSpec {
  int dimension = 1;
  int points = 1024;
  double length = 40.0 * std::numbers::pi;

  Grid make() const { return make_grid(dimension, points, length); }
};

/// Parameters of one evolution. The step actually taken is
/// min(dt0, c_lambda / lambda); evolutions land exactly on every sample time
/// and on final_time with a shortened last step.
struct SimConfig {
  double epsilon = 1.0;
  double lambda = 1.0;
  double final_time = 0.5;
  double dt0 = 1e-3;
  double c_lambda = 0.2;
  int sobolev_index = 2;
  GridSpec grid;
  bool dealias = true;
  std::vector<double> sample_times;
  /// Spectral-tail limit for E above which the run aborts (0 disables).
  double tail_limit = 0.0;
  /// Observer-only runs set this to false to skip storing snapshots.
  bool keep_snapshots = true;

  double step() const;
  /// Throws range_violation / invalid_parameter.
  void validate() const;
};

/// count uniformly spaced times k*T/count, k = 1..count.
std::vector<double> uniform_samples(double final_time, int count);

}  // namespace qzak
