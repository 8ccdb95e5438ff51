#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qzak/config.hpp"
#include "qzak/dynamics.hpp"
#include "qzak/harness.hpp"
#include "qzak/initial_layer.hpp"
#include "qzak/state.hpp"

namespace qzak {

inline constexpr std::string_view kVersion = "1.0.0";

enum class ExperimentKind { simulate, sweep, layer_decay, oracle_check, self_converge };

std::string_view to_string(ExperimentKind kind);
std::optional<ExperimentKind> experiment_from_string(std::string_view name);

struct LayerDecaySettings {
  std::vector<double> lambdas = {8.0, 16.0, 32.0};
  /// Probe times given as lambda * t.
  std::vector<double> scaled_times = {0.25, 0.5, 1.0, 4.0, 5.0, 6.0, 8.0, 10.0, 12.0, 14.0};
  int k_max = 2;
  /// Probe f0 = exp(-|x|^2 / w^2) with this w; 0 probes the layer of the data.
  double gaussian_width = 2.0;
};

struct OracleSettings {
  double dt = 0.0;  // 0: config step / 50
  double tolerance = 1e-5;
};

/// Full experiment description (see README for the JSON schema).
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::simulate;
  SimConfig sim;
  int sample_count = 64;
  DataKind data_kind = DataKind::generic;
  PresetParams data;
  std::vector<double> lambdas;
  std::vector<double> dts;
  LayerDecaySettings layer_decay;
  OracleSettings oracle;
  std::string output_dir = "out";
  bool emit_plots = true;
  /// When false the walltime_s column is written as 0 so that re-runs give
  /// byte-identical files.
  bool record_walltime = true;
};

/// Parses and validates a JSON experiment description. Missing keys take the
/// documented defaults; unknown keys raise schema_violation naming the key
/// path; out-of-range physical parameters raise range_violation.
ExperimentConfig parse_config(std::string_view text);

/// Applies "a.b.c=value" overrides to the JSON text before parsing; values
/// are read as JSON when possible and as strings otherwise.
ExperimentConfig parse_config(std::string_view text, const std::vector<std::string>& overrides);

/// Resolved configuration as JSON text (every field, defaults filled in).
std::string dump_config(const ExperimentConfig& config);

/// sweep.csv: lambda,dt,sup_err_E_Hm,sup_err_Q_Hm,sup_Q_Hm,walltime_s
std::string sweep_csv(std::span<const SweepRecord> records);

/// Fits that could not be formed (too few or non-positive points) are empty
/// and written as null.
struct SweepFits {
  std::optional<RateFit> E;
  std::optional<RateFit> Q;
  std::optional<RateFit> Q_norm;
};

std::string ratefit_json(const SweepFits& fits);
/// Plain gnuplot script plotting sweep.csv on log-log axes with reference
/// slopes -1 and -2.
std::string plot_script(std::span<const SweepRecord> records);

/// Flat little-endian float64 snapshot file plus a text sidecar:
///   <stem>.bin  per snapshot: E (re,im interleaved), n, nt, row-major
///   <stem>.meta grid, times, layout
void write_snapshots(const std::filesystem::path& dir, std::string_view stem,
                     std::span<const ZakharovState> snapshots);
std::vector<ZakharovState> read_snapshots(const std::filesystem::path& dir, std::string_view stem);

void write_text(const std::filesystem::path& file, std::string_view text);
/// manifest.json: resolved config, version and the files written.
void write_manifest(const std::filesystem::path& dir, const ExperimentConfig& config,
                    const std::vector<std::string>& files);

}  // namespace qzak
