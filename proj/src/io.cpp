#include "qzak/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qzak/error.hpp"

namespace qzak {

using json = nlohmann::ordered_json;

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::simulate: return "simulate";
    case ExperimentKind::sweep: return "sweep";
    case ExperimentKind::layer_decay: return "layer-decay";
    case ExperimentKind::oracle_check: return "oracle-check";
    case ExperimentKind::self_converge: return "self-converge";
  }
  return "simulate";
}

std::optional<ExperimentKind> experiment_from_string(std::string_view name) {
  for (auto k : {ExperimentKind::simulate, ExperimentKind::sweep, ExperimentKind::layer_decay,
                 ExperimentKind::oracle_check, ExperimentKind::self_converge}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCode::schema_violation, msg); }

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

// Reads typed values out of one JSON object, rejecting unknown keys.
class Reader {
 public:
  Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) schema("'" + (path_.empty() ? std::string("<root>") : path_) + "' must be an object");
  }

  void num(const char* key, double& out) {
    if (const json* v = take(key)) {
      if (!v->is_number()) schema("'" + join(path_, key) + "' must be a number");
      out = v->get<double>();
    }
  }
  void integer(const char* key, int& out) {
    if (const json* v = take(key)) {
      if (!v->is_number_integer()) schema("'" + join(path_, key) + "' must be an integer");
      out = v->get<int>();
    }
  }
  void boolean(const char* key, bool& out) {
    if (const json* v = take(key)) {
      if (!v->is_boolean()) schema("'" + join(path_, key) + "' must be a boolean");
      out = v->get<bool>();
    }
  }
  void str(const char* key, std::string& out) {
    if (const json* v = take(key)) {
      if (!v->is_string()) schema("'" + join(path_, key) + "' must be a string");
      out = v->get<std::string>();
    }
  }
  void numbers(const char* key, std::vector<double>& out) {
    if (const json* v = take(key)) {
      if (!v->is_array()) schema("'" + join(path_, key) + "' must be an array of numbers");
      out.clear();
      for (const auto& x : *v) {
        if (!x.is_number()) schema("'" + join(path_, key) + "' must be an array of numbers");
        out.push_back(x.get<double>());
      }
    }
  }
  const json* object(const char* key) { return take(key); }
  std::string path(const char* key) const { return join(path_, key); }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key())) schema("unknown key '" + join(path_, it.key()) + "'");
    }
  }

 private:
  const json* take(const char* key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

void range(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorCode::range_violation, msg);
}

ExperimentConfig from_json(const json& root) {
  ExperimentConfig c;
  Reader r(root, "");
  std::string kind = std::string(to_string(c.experiment));
  r.str("experiment", kind);
  const auto parsed_kind = experiment_from_string(kind);
  if (!parsed_kind) schema("'experiment' has unknown value '" + kind + "'");
  c.experiment = *parsed_kind;

  SimConfig& s = c.sim;
  r.num("epsilon", s.epsilon);
  r.num("lambda", s.lambda);
  r.num("final_time", s.final_time);
  r.num("dt0", s.dt0);
  r.num("c_lambda", s.c_lambda);
  r.integer("sobolev_index", s.sobolev_index);
  r.boolean("dealias", s.dealias);
  r.numbers("sample_times", s.sample_times);
  r.integer("sample_count", c.sample_count);
  r.num("tail_limit", s.tail_limit);
  if (const json* g = r.object("grid")) {
    Reader gr(*g, r.path("grid"));
    gr.integer("dimension", s.grid.dimension);
    gr.integer("points", s.grid.points);
    gr.num("length", s.grid.length);
    gr.finish();
  }
  if (const json* d = r.object("data")) {
    Reader dr(*d, r.path("data"));
    std::string dk = std::string(to_string(c.data_kind));
    dr.str("kind", dk);
    try {
      c.data_kind = data_kind_from_string(dk);
    } catch (const Error&) {
      schema("'data.kind' has unknown value '" + dk + "'");
    }
    PresetParams& p = c.data;
    dr.num("amplitude", p.amplitude);
    dr.num("width", p.width);
    dr.num("wavenumber", p.wavenumber);
    dr.num("chirp", p.chirp);
    dr.num("center", p.center);
    dr.num("density_amplitude", p.density_amplitude);
    dr.num("density_width", p.density_width);
    dr.num("density_center", p.density_center);
    dr.boolean("zero_mean_defect", p.zero_mean_defect);
    dr.num("velocity_amplitude", p.velocity_amplitude);
    dr.num("velocity_width", p.velocity_width);
    dr.num("velocity_center", p.velocity_center);
    dr.num("min_points_per_width", p.min_points_per_width);
    dr.num("edge_tolerance", p.edge_tolerance);
    dr.finish();
  }
  r.numbers("lambdas", c.lambdas);
  r.numbers("dts", c.dts);
  if (const json* l = r.object("layer_decay")) {
    Reader lr(*l, r.path("layer_decay"));
    lr.numbers("lambdas", c.layer_decay.lambdas);
    lr.numbers("scaled_times", c.layer_decay.scaled_times);
    lr.integer("k_max", c.layer_decay.k_max);
    lr.num("gaussian_width", c.layer_decay.gaussian_width);
    lr.finish();
  }
  if (const json* o = r.object("oracle")) {
    Reader orr(*o, r.path("oracle"));
    orr.num("dt", c.oracle.dt);
    orr.num("tolerance", c.oracle.tolerance);
    orr.finish();
  }
  r.str("output_dir", c.output_dir);
  r.boolean("emit_plots", c.emit_plots);
  r.boolean("record_walltime", c.record_walltime);
  r.finish();

  range(c.sample_count > 0, "sample_count must be positive");
  if (s.sample_times.empty() && s.final_time > 0.0) s.sample_times = uniform_samples(s.final_time, c.sample_count);
  s.validate();
  for (double l : c.lambdas) range(l >= 1.0, "lambdas entries must be >= 1");
  range(std::is_sorted(c.lambdas.begin(), c.lambdas.end()), "lambdas must be sorted");
  for (double l : c.layer_decay.lambdas) range(l >= 1.0, "layer_decay.lambdas entries must be >= 1");
  for (double t : c.layer_decay.scaled_times) range(t >= 0.0, "layer_decay.scaled_times must be >= 0");
  range(c.layer_decay.k_max >= 0, "layer_decay.k_max must be >= 0");
  range(c.layer_decay.gaussian_width >= 0.0, "layer_decay.gaussian_width must be >= 0");
  for (double d : c.dts) range(d > 0.0, "dts entries must be positive");
  range(c.oracle.dt >= 0.0, "oracle.dt must be >= 0");
  range(c.oracle.tolerance > 0.0, "oracle.tolerance must be positive");
  if (c.experiment == ExperimentKind::sweep) range(!c.lambdas.empty(), "sweep needs a non-empty 'lambdas' list");
  if (c.experiment == ExperimentKind::self_converge) range(c.dts.size() >= 3, "self-converge needs at least 3 'dts'");
  return c;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    schema(std::string("invalid JSON: ") + e.what());
  }
}

void apply_override(json& root, const std::string& item) {
  const auto eq = item.find('=');
  if (eq == std::string::npos || eq == 0) schema("override '" + item + "' is not key=value");
  const std::string key = item.substr(0, eq);
  const std::string value = item.substr(eq + 1);
  json* node = &root;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) schema("override key '" + key + "' has an empty component");
    if (!node->is_object()) schema("override key '" + key + "' descends into a non-object");
    if (dot == std::string::npos) {
      json parsed = json::parse(value, nullptr, false);
      (*node)[part] = parsed.is_discarded() ? json(value) : parsed;
      return;
    }
    node = &(*node)[part];
    if (node->is_null()) *node = json::object();
    start = dot + 1;
  }
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

json fit_json(const std::optional<RateFit>& f) {
  if (!f) return nullptr;
  return json{{"slope", f->slope}, {"intercept", f->intercept}, {"residual", f->residual}, {"lambdas", f->lambdas}};
}

void put_le(std::ostream& os, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  char bytes[8];
  for (char& b : bytes) {
    b = char(bits & 0xffu);
    bits >>= 8;
  }
  os.write(bytes, 8);
}

double get_le(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | p[i];
  return std::bit_cast<double>(bits);
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) { return from_json(parse_json(text)); }

ExperimentConfig parse_config(std::string_view text, const std::vector<std::string>& overrides) {
  json root = parse_json(text);
  if (!root.is_object()) schema("'<root>' must be an object");
  for (const auto& o : overrides) apply_override(root, o);
  return from_json(root);
}

std::string dump_config(const ExperimentConfig& c) {
  const SimConfig& s = c.sim;
  const PresetParams& p = c.data;
  json j;
  j["experiment"] = std::string(to_string(c.experiment));
  j["epsilon"] = s.epsilon;
  j["lambda"] = s.lambda;
  j["final_time"] = s.final_time;
  j["dt0"] = s.dt0;
  j["c_lambda"] = s.c_lambda;
  j["sobolev_index"] = s.sobolev_index;
  j["dealias"] = s.dealias;
  j["sample_times"] = s.sample_times;
  j["sample_count"] = c.sample_count;
  j["tail_limit"] = s.tail_limit;
  j["grid"] = {{"dimension", s.grid.dimension}, {"points", s.grid.points}, {"length", s.grid.length}};
  j["data"] = {{"kind", std::string(to_string(c.data_kind))},
               {"amplitude", p.amplitude},
               {"width", p.width},
               {"wavenumber", p.wavenumber},
               {"chirp", p.chirp},
               {"center", p.center},
               {"density_amplitude", p.density_amplitude},
               {"density_width", p.density_width},
               {"density_center", p.density_center},
               {"zero_mean_defect", p.zero_mean_defect},
               {"velocity_amplitude", p.velocity_amplitude},
               {"velocity_width", p.velocity_width},
               {"velocity_center", p.velocity_center},
               {"min_points_per_width", p.min_points_per_width},
               {"edge_tolerance", p.edge_tolerance}};
  j["lambdas"] = c.lambdas;
  j["dts"] = c.dts;
  j["layer_decay"] = {{"lambdas", c.layer_decay.lambdas},
                      {"scaled_times", c.layer_decay.scaled_times},
                      {"k_max", c.layer_decay.k_max},
                      {"gaussian_width", c.layer_decay.gaussian_width}};
  j["oracle"] = {{"dt", c.oracle.dt}, {"tolerance", c.oracle.tolerance}};
  j["output_dir"] = c.output_dir;
  j["emit_plots"] = c.emit_plots;
  j["record_walltime"] = c.record_walltime;
  return j.dump(2) + "\n";
}

std::string sweep_csv(std::span<const SweepRecord> records) {
  std::string out = "lambda,dt,sup_err_E_Hm,sup_err_Q_Hm,sup_Q_Hm,walltime_s\n";
  for (const auto& r : records) {
    out += fmt("%.17g", r.lambda) + "," + fmt("%.17g", r.dt) + "," + fmt("%.17e", r.sup_err_E) + "," +
           fmt("%.17e", r.sup_err_Q) + "," + fmt("%.17e", r.sup_Q) + "," + fmt("%.6f", r.walltime_s) + "\n";
  }
  return out;
}

std::string ratefit_json(const SweepFits& fits) {
  json j = fit_json(fits.E);
  if (j.is_null()) j = json{{"slope", nullptr}, {"intercept", nullptr}, {"residual", nullptr}, {"lambdas", nullptr}};
  j["q_error"] = fit_json(fits.Q);
  j["q_norm"] = fit_json(fits.Q_norm);
  return j.dump(2) + "\n";
}

std::string plot_script(std::span<const SweepRecord> records) {
  std::ostringstream os;
  double l0 = 1.0, e0 = 1.0;
  if (!records.empty()) {
    l0 = records.front().lambda;
    e0 = records.front().sup_err_E > 0.0 ? records.front().sup_err_E : 1.0;
  }
  os << "# gnuplot -p plots.gp\n"
     << "set datafile separator ','\n"
     << "set logscale xy\n"
     << "set xlabel 'lambda'\n"
     << "set ylabel 'sup_t H^m error'\n"
     << "set key left bottom\n"
     << "set grid\n"
     << "set terminal png size 800,600\n"
     << "set output 'sweep.png'\n"
     << "l0 = " << fmt("%.17g", l0) << "\n"
     << "e0 = " << fmt("%.17g", e0) << "\n"
     << "plot 'sweep.csv' every ::1 using 1:3 with linespoints title 'E_lambda - E_inf', \\\n"
     << "     'sweep.csv' every ::1 using 1:4 with linespoints title 'Q - Q0', \\\n"
     << "     'sweep.csv' every ::1 using 1:5 with linespoints title 'Q', \\\n"
     << "     e0 * (x / l0)**-1 with lines dashtype 2 title 'slope -1', \\\n"
     << "     e0 * (x / l0)**-2 with lines dashtype 3 title 'slope -2'\n";
  return os.str();
}

void write_text(const std::filesystem::path& file, std::string_view text) {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw Error(ErrorCode::io_failure, "cannot open '" + file.string() + "' for writing");
  os.write(text.data(), std::streamsize(text.size()));
  if (!os) throw Error(ErrorCode::io_failure, "write to '" + file.string() + "' failed");
}

void write_snapshots(const std::filesystem::path& dir, std::string_view stem,
                     std::span<const ZakharovState> snapshots) {
  if (snapshots.empty()) throw Error(ErrorCode::invalid_parameter, "no snapshots to write");
  const Grid& grid = snapshots.front().E.grid();
  const std::filesystem::path bin = dir / (std::string(stem) + ".bin");
  std::ofstream os(bin, std::ios::binary);
  if (!os) throw Error(ErrorCode::io_failure, "cannot open '" + bin.string() + "' for writing");
  std::ostringstream meta;
  meta << "format qzak-snapshots 1\n"
       << "dimension " << grid.dimension() << "\n"
       << "points " << grid.points() << "\n"
       << "length " << fmt("%.17g", grid.length()) << "\n"
       << "count " << snapshots.size() << "\n"
       << "layout E:complex128(re,im interleaved) n:float64 nt:float64 row-major little-endian\n"
       << "times";
  for (const auto& s : snapshots) {
    if (!(s.E.grid() == grid) || !(s.n.grid() == grid) || !(s.nt.grid() == grid)) {
      throw Error(ErrorCode::inconsistent_grid, "snapshots live on different grids");
    }
    if (!s.E.is_physical() || !s.n.is_physical() || !s.nt.is_physical()) {
      throw Error(ErrorCode::representation_mismatch, "snapshots must be physical fields");
    }
    meta << " " << fmt("%.17g", s.t);
    for (const auto& v : s.E.values()) {
      put_le(os, v.real());
      put_le(os, v.imag());
    }
    for (const auto& v : s.n.values()) put_le(os, v.real());
    for (const auto& v : s.nt.values()) put_le(os, v.real());
  }
  meta << "\n";
  if (!os) throw Error(ErrorCode::io_failure, "write to '" + bin.string() + "' failed");
  write_text(dir / (std::string(stem) + ".meta"), meta.str());
}

std::vector<ZakharovState> read_snapshots(const std::filesystem::path& dir, std::string_view stem) {
  const auto meta_path = dir / (std::string(stem) + ".meta");
  std::ifstream ms(meta_path);
  if (!ms) throw Error(ErrorCode::io_failure, "cannot open '" + meta_path.string() + "'");
  int dimension = 0, points = 0;
  double length = 0.0;
  std::size_t count = 0;
  std::vector<double> times;
  std::string line;
  while (std::getline(ms, line)) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "dimension") ls >> dimension;
    else if (key == "points") ls >> points;
    else if (key == "length") ls >> length;
    else if (key == "count") ls >> count;
    else if (key == "times") {
      double t;
      while (ls >> t) times.push_back(t);
    }
  }
  if (times.size() != count) throw Error(ErrorCode::io_failure, "snapshot metadata is inconsistent");
  const Grid grid = make_grid(dimension, points, length);

  const auto bin_path = dir / (std::string(stem) + ".bin");
  std::ifstream bs(bin_path, std::ios::binary);
  if (!bs) throw Error(ErrorCode::io_failure, "cannot open '" + bin_path.string() + "'");
  const std::size_t n = grid.size();
  std::vector<unsigned char> buf(8 * 4 * n);
  std::vector<ZakharovState> out;
  for (std::size_t s = 0; s < count; ++s) {
    bs.read(reinterpret_cast<char*>(buf.data()), std::streamsize(buf.size()));
    if (bs.gcount() != std::streamsize(buf.size())) throw Error(ErrorCode::io_failure, "snapshot file is truncated");
    std::vector<cplx> e(n), nv(n), ntv(n);
    const unsigned char* p = buf.data();
    for (std::size_t i = 0; i < n; ++i, p += 16) e[i] = cplx(get_le(p), get_le(p + 8));
    for (std::size_t i = 0; i < n; ++i, p += 8) nv[i] = get_le(p);
    for (std::size_t i = 0; i < n; ++i, p += 8) ntv[i] = get_le(p);
    out.push_back(ZakharovState{times[s], Field(grid, Representation::physical_complex, std::move(e)),
                                Field(grid, Representation::physical_real, std::move(nv)),
                                Field(grid, Representation::physical_real, std::move(ntv))});
  }
  return out;
}

void write_manifest(const std::filesystem::path& dir, const ExperimentConfig& config,
                    const std::vector<std::string>& files) {
  json j;
  j["version"] = std::string(kVersion);
  j["config"] = json::parse(dump_config(config));
  j["files"] = files;
  write_text(dir / "manifest.json", j.dump(2) + "\n");
}

}  // namespace qzak
