#include "qzak/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qzak/diagnostics.hpp"
#include "qzak/dynamics.hpp"
#include "qzak/error.hpp"
#include "qzak/harness.hpp"
#include "qzak/initial_layer.hpp"
#include "qzak/io.hpp"
#include "qzak/norms.hpp"
#include "qzak/oracle.hpp"

namespace qzak {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string full(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Thrown for failures that happen after the configuration was accepted.
struct RunFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  ExperimentConfig cfg;
  InitialData data;
  fs::path dir;
  bool quiet = false;
  std::ostream& out;
  std::vector<std::string> files;

  void write(const std::string& name, std::string_view text) {
    write_text(dir / name, text);
    files.push_back(name);
  }
  void say(const std::string& line) {
    if (!quiet) out << line << "\n";
  }
};

void run_simulate(Context& ctx) {
  const SimConfig& sim = ctx.cfg.sim;
  const QzTrajectory traj = qz_evolve(sim, ctx.data);
  const int m = sim.sobolev_index;
  const double mass0 = mass(ctx.data.E0);
  const double energy0 = hamiltonian_qz(ctx.data.state(), sim.epsilon, sim.lambda, sim.dealias);
  std::string csv = "t,mass,hamiltonian,spectral_tail,norm_Q_Hm\n";
  double mass_drift = 0.0, energy_drift = 0.0;
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    const auto& s = traj.snapshots[i];
    const double h = hamiltonian_qz(s, sim.epsilon, sim.lambda, sim.dealias);
    mass_drift = std::max(mass_drift, std::abs(traj.mass[i] - mass0) / mass0);
    energy_drift = std::max(energy_drift, std::abs(h - energy0) / std::abs(energy0));
    csv += full(s.t) + "," + full(traj.mass[i]) + "," + full(h) + "," + full(traj.spectral_tail[i]) + "," +
           full(sobolev_norm(q_field(s, sim.epsilon, sim.dealias), m)) + "\n";
  }
  ctx.write("diagnostics.csv", csv);
  if (!traj.snapshots.empty()) {
    write_snapshots(ctx.dir, "trajectory", traj.snapshots);
    ctx.files.push_back("trajectory.bin");
    ctx.files.push_back("trajectory.meta");
  }
  ctx.say("simulate lambda=" + num(sim.lambda) + " steps=" + std::to_string(traj.steps) +
          " snapshots=" + std::to_string(traj.snapshots.size()) + " mass_drift=" + num(mass_drift) +
          " energy_drift=" + num(energy_drift));
}

std::optional<RateFit> try_fit(std::span<const SweepRecord> records, RateQuantity q) {
  try {
    return fit_rate(records, q);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::degenerate_input) throw;
    return std::nullopt;
  }
}

void run_sweep(Context& ctx) {
  SweepOptions opts;
  opts.on_record = [&](const SweepRecord& r) {
    ctx.say("lambda=" + num(r.lambda) + " dt=" + num(r.dt) + " err_E=" + num(r.sup_err_E) +
            " err_Q=" + num(r.sup_err_Q) + " Q=" + num(r.sup_Q) + " time=" + num(r.walltime_s) + "s");
  };
  SweepResult res = lambda_sweep(ctx.cfg.sim, ctx.data, ctx.cfg.lambdas, ctx.cfg.sim.sobolev_index, opts);
  if (!ctx.cfg.record_walltime) {
    for (auto& r : res.records) r.walltime_s = 0.0;
  }
  ctx.write("sweep.csv", sweep_csv(res.records));
  SweepFits fits{try_fit(res.records, RateQuantity::E_error), try_fit(res.records, RateQuantity::Q_error),
                 try_fit(res.records, RateQuantity::Q_norm)};
  ctx.write("ratefit.json", ratefit_json(fits));
  if (ctx.cfg.emit_plots) ctx.write("plots.gp", plot_script(res.records));
  if (fits.E) ctx.say("slope_E=" + num(fits.E->slope) + " residual=" + num(fits.E->residual));
  if (fits.Q) ctx.say("slope_Q=" + num(fits.Q->slope) + " residual=" + num(fits.Q->residual));
}

void run_layer_decay(Context& ctx) {
  const SimConfig& sim = ctx.cfg.sim;
  const LayerDecaySettings& ld = ctx.cfg.layer_decay;
  Field f0 = layer_f0(ctx.data, sim.epsilon, sim.dealias);
  if (ld.gaussian_width > 0.0) {
    const Grid grid = sim.grid.make();
    const auto r = grid.radius();
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(-r[i] * r[i] / (ld.gaussian_width * ld.gaussian_width));
    f0 = Field::real(grid, v);
  }
  if (!(l2_norm(f0) > 0.0)) {
    throw Error(ErrorCode::degenerate_input, "initial layer f0 vanishes for this data; use generic data");
  }
  std::string csv = "lambda,t,lambda_t,region,k,sup,max_ratio,points\n";
  json reports = json::array();
  for (double lambda : ld.lambdas) {
    std::vector<double> times;
    for (double s : ld.scaled_times) times.push_back(s / lambda);
    const DecayProbeReport rep = decay_probe(f0, sim.epsilon, lambda, times, ld.k_max);
    for (const auto& s : rep.samples) {
      csv += full(lambda) + "," + full(s.t) + "," + full(lambda * s.t) + "," +
             (s.region == ProbeRegion::inner ? "inner" : "outer") + "," + std::to_string(s.k) + "," + full(s.sup) +
             "," + full(s.max_ratio) + "," + std::to_string(s.points) + "\n";
    }
    auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    reports.push_back({{"lambda", lambda},
                       {"inner_exponent", finite_or_null(rep.inner_exponent)},
                       {"outer_exponent", finite_or_null(rep.outer_exponent)},
                       {"inner_fit_points", rep.inner_fit_points},
                       {"envelope_constant", rep.envelope_constant},
                       {"max_envelope_ratio", rep.max_envelope_ratio}});
    ctx.say("lambda=" + num(lambda) + " inner_exponent=" + num(rep.inner_exponent) +
            " max_envelope_ratio=" + num(rep.max_envelope_ratio));
  }
  ctx.write("decay.csv", csv);
  ctx.write("decay.json", json{{"reports", reports}}.dump(2) + "\n");
}

void run_oracle_check(Context& ctx) {
  const SimConfig& sim = ctx.cfg.sim;
  const std::optional<double> odt =
      ctx.cfg.oracle.dt > 0.0 ? std::optional<double>(ctx.cfg.oracle.dt) : std::nullopt;
  const OracleResult qz_ref = oracle_evolve(sim, ctx.data, OracleTarget::qz, odt);
  const ZakharovState qz = qz_final(sim, ctx.data, sim.step());
  const double err_qz = l2_norm(qz.E - qz_ref.E) + l2_norm(qz.n - *qz_ref.n);

  const OracleResult nls_ref = oracle_evolve(sim, ctx.data, OracleTarget::qmnls, odt);
  const SchrodingerState nls = qmnls_final(sim, ctx.data.E0, sim.step());
  const double err_nls = l2_norm(nls.E - nls_ref.E);

  json j{{"lambda", sim.lambda},         {"final_time", sim.final_time}, {"dt", sim.step()},
         {"oracle_dt", qz_ref.dt},       {"qz_discrepancy", err_qz},     {"qmnls_discrepancy", err_nls},
         {"tolerance", ctx.cfg.oracle.tolerance}};
  ctx.write("oracle.json", j.dump(2) + "\n");
  ctx.say("oracle qz_discrepancy=" + num(err_qz) + " qmnls_discrepancy=" + num(err_nls));
  const double worst = std::max(err_qz, err_nls);
  if (!(worst <= ctx.cfg.oracle.tolerance)) {
    throw RunFailure("oracle discrepancy " + num(worst) + " exceeds tolerance " + num(ctx.cfg.oracle.tolerance));
  }
}

void run_self_converge(Context& ctx) {
  const SelfConvergence sc = self_convergence(ctx.cfg.sim, ctx.data, ctx.cfg.dts);
  std::string csv = "dt,error_Hm\n";
  for (std::size_t i = 0; i < sc.dts.size(); ++i) csv += full(sc.dts[i]) + "," + full(sc.errors[i]) + "\n";
  ctx.write("convergence.csv", csv);
  json j{{"reference_dt", sc.reference_dt}, {"order", std::isfinite(sc.order) ? json(sc.order) : json(nullptr)},
         {"dts", sc.dts}, {"errors", sc.errors}};
  ctx.write("convergence.json", j.dump(2) + "\n");
  ctx.say("self-converge order=" + num(sc.order));
}

void record_error(const fs::path& dir, const std::string& message) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream os(dir / "error.txt");
  if (os) os << message << "\n";
}

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return std::nullopt;
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum Zakharov / subsonic limit simulations", "qzak"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::vector<std::string> overrides;
  bool quiet = false;

  std::vector<CLI::App*> experiments;
  for (const char* name : {"simulate", "sweep", "layer-decay", "oracle-check", "self-converge"}) {
    CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
    sub->add_option("--config", config_path, "experiment JSON file")->required();
    sub->add_option("--out", out_dir, "output directory (overrides output_dir)");
    sub->add_option("--override", overrides, "dotted key=value applied to the config")->take_all();
    sub->add_flag("--quiet", quiet, "suppress progress lines");
    experiments.push_back(sub);
  }
  CLI::App* version = app.add_subcommand("version", "print the version");

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  if (version->parsed()) {
    out << "qzak " << kVersion << "\n";
    return kExitOk;
  }
  std::string sub_name;
  for (CLI::App* sub : experiments) {
    if (sub->parsed()) sub_name = sub->get_name();
  }

  fs::path dir = out_dir.empty() ? fs::path("out") : fs::path(out_dir);
  auto fail = [&](int code, const std::string& msg) {
    err << "error: " << msg << "\n";
    record_error(dir, msg);
    return code;
  };

  Context ctx{ExperimentConfig{}, InitialData{Field(make_grid(1, 16, 1.0), Representation::physical_complex),
                                              Field(make_grid(1, 16, 1.0), Representation::physical_real),
                                              Field(make_grid(1, 16, 1.0), Representation::physical_real)},
              dir, quiet, out, {}};
  try {
    const auto text = slurp(config_path);
    if (!text) return fail(kExitConfig, "cannot read config file '" + config_path + "'");
    std::vector<std::string> all = overrides;
    all.insert(all.begin(), "experiment=\"" + sub_name + "\"");
    ctx.cfg = parse_config(*text, all);
    if (!out_dir.empty()) ctx.cfg.output_dir = out_dir;
    ctx.dir = dir = fs::path(ctx.cfg.output_dir);
    ctx.data = preset_initial_data(ctx.cfg.data_kind, ctx.cfg.data, ctx.cfg.sim.grid.make(), ctx.cfg.sim.epsilon);
  } catch (const Error& e) {
    return fail(kExitConfig, e.what());
  }

  try {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::io_failure, "cannot create '" + dir.string() + "': " + ec.message());
    switch (ctx.cfg.experiment) {
      case ExperimentKind::simulate: run_simulate(ctx); break;
      case ExperimentKind::sweep: run_sweep(ctx); break;
      case ExperimentKind::layer_decay: run_layer_decay(ctx); break;
      case ExperimentKind::oracle_check: run_oracle_check(ctx); break;
      case ExperimentKind::self_converge: run_self_converge(ctx); break;
    }
    std::vector<std::string> files = ctx.files;
    files.push_back("manifest.json");
    write_manifest(dir, ctx.cfg, files);
  } catch (const std::exception& e) {
    return fail(kExitRuntime, e.what());
  }
  return kExitOk;
}

}  // namespace qzak
