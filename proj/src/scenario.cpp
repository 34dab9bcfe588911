#include "lwxi/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lwxi/errors.hpp"
#include "lwxi/exact.hpp"
#include "lwxi/time_oracle.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace lwxi {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& v, const std::string& key, int line) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw ConfigError("key '" + key + "': not a number: '" + v + "'", line);
  return x;
}

// section -> allowed keys
const std::map<std::string, std::vector<std::string>>& schema() {
  static const std::map<std::string, std::vector<std::string>> s = {
      {"scenario", {"kind", "name"}},
      {"pump",
       {"envelope", "wavelength_um", "a0", "sigma_um2", "center_um", "length_um",
        "phase", "polarization", "support_start_um", "support_end_um",
        "samples_file", "charge"}},
      {"static_field",
       {"kappa_per_um", "bz_per_um", "bx_per_um", "by_per_um", "ex_per_um",
        "ey_per_um"}},
      {"init", {"xi_um", "x_um", "y_um", "z_um", "ux", "uy", "s"}},
      {"numerics", {"xi_end_um", "rtol", "atol", "samples", "max_step_um"}},
      {"density", {"n0_per_cm3", "edge_um"}},
      {"scan", {"kappa_min_per_um", "kappa_max_per_um", "points"}},
      {"autoresonance", {"bz_per_um", "detuning"}},
      {"family", {"z_points", "z_max_um", "search_from_um"}},
      {"residual", {"enabled", "ct_max_um", "s_step_um", "grid"}},
      {"oracle", {"samples", "rtol", "atol"}},
  };
  return s;
}

const std::map<std::string, std::vector<std::string>>& sections_by_kind() {
  static const std::map<std::string, std::vector<std::string>> s = {
      {"vacuum-general", {"scenario", "pump", "static_field", "init", "numerics"}},
      {"vacuum-exact", {"scenario", "pump", "static_field", "init", "numerics"}},
      {"oracle-compare",
       {"scenario", "pump", "static_field", "init", "numerics", "oracle"}},
      {"kappa-scan", {"scenario", "pump", "numerics", "scan"}},
      {"autoresonance", {"scenario", "pump", "numerics", "autoresonance"}},
      {"plasma-step", {"scenario", "pump", "density", "numerics", "residual"}},
      {"plasma-family",
       {"scenario", "pump", "density", "numerics", "family", "static_field"}},
  };
  return s;
}

std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw Error("cannot write " + p.string());
  os << content;
}

}  // namespace

const char* library_version() { return "0.3.0"; }

Scenario Scenario::from_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open scenario file: " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  Scenario sc = from_text(ss.str(), fs::path(path).stem().string());
  sc.base_dir_ = fs::path(path).parent_path().string();
  return sc;
}

Scenario Scenario::from_text(const std::string& text, const std::string& name) {
  Scenario sc;
  sc.name_ = name;
  std::istringstream is(text);
  std::string raw, current;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      current = trim(line.substr(1, line.size() - 2));
      if (schema().find(current) == schema().end())
        throw ConfigError("unknown section '" + current + "'", line_no);
      sc.sections_[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no);
    if (current.empty()) throw ConfigError("key outside any section", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto& allowed = schema().at(current);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError("unknown key '" + key + "' in section [" + current + "]",
                        line_no);
    auto& sec = sc.sections_[current];
    if (sec.count(key)) throw ConfigError("duplicate key '" + key + "'", line_no);
    sec[key] = {value, line_no};
  }

  sc.kind_ = sc.get_str("scenario", "kind", "");
  if (sc.kind_.empty()) throw ConfigError("missing [scenario] kind");
  if (sections_by_kind().find(sc.kind_) == sections_by_kind().end())
    throw ConfigError("unknown scenario kind '" + sc.kind_ + "'");
  const std::string cfg_name = sc.get_str("scenario", "name", "");
  if (!cfg_name.empty()) sc.name_ = cfg_name;
  sc.check_schema();
  return sc;
}

void Scenario::check_schema() const {
  const auto& allowed = sections_by_kind().at(kind_);
  for (const auto& [sec, kv] : sections_) {
    if (std::find(allowed.begin(), allowed.end(), sec) == allowed.end()) {
      const int line = kv.empty() ? 0 : kv.begin()->second.second;
      throw ConfigError("section [" + sec + "] not allowed for kind '" + kind_ + "'",
                        line);
    }
  }
  // numbers must parse; do it once here so errors carry line numbers
  for (const auto& [sec, kv] : sections_) {
    for (const auto& [key, vl] : kv) {
      if (key == "kind" || key == "name" || key == "envelope" || key == "polarization" ||
          key == "samples_file" || key == "charge" || key == "enabled")
        continue;
      parse_number(vl.first, key, vl.second);
    }
  }
  if (has("pump", "sigma_um2") && require_num("pump", "sigma_um2") <= 0.0)
    throw ConfigError("sigma_um2 must be positive",
                      sections_.at("pump").at("sigma_um2").second);
  if (has("density", "n0_per_cm3") && require_num("density", "n0_per_cm3") <= 0.0)
    throw ConfigError("n0_per_cm3 must be positive",
                      sections_.at("density").at("n0_per_cm3").second);
}

const Scenario::Section* Scenario::section(const std::string& name) const {
  const auto it = sections_.find(name);
  return it == sections_.end() ? nullptr : &it->second;
}

bool Scenario::has(const std::string& sec, const std::string& key) const {
  const Section* s = section(sec);
  return s && s->count(key);
}

std::string Scenario::get_str(const std::string& sec, const std::string& key,
                              const std::string& fallback) const {
  const Section* s = section(sec);
  if (!s) return fallback;
  const auto it = s->find(key);
  return it == s->end() ? fallback : it->second.first;
}

double Scenario::get_num(const std::string& sec, const std::string& key,
                         double fallback) const {
  const Section* s = section(sec);
  if (!s) return fallback;
  const auto it = s->find(key);
  if (it == s->end()) return fallback;
  return parse_number(it->second.first, key, it->second.second);
}

double Scenario::require_num(const std::string& sec, const std::string& key) const {
  const Section* s = section(sec);
  if (!s || !s->count(key))
    throw ConfigError("missing required key '" + key + "' in section [" + sec + "]");
  const auto& vl = s->at(key);
  return parse_number(vl.first, key, vl.second);
}

Pump Scenario::build_pump() const {
  const std::string env = get_str("pump", "envelope", "zero");
  if (env == "zero") return Pump::zero();

  const double lambda = require_num("pump", "wavelength_um");
  if (lambda <= 0.0) throw ConfigError("wavelength_um must be positive");
  const double a0 = require_num("pump", "a0");
  const std::string charge = get_str("pump", "charge", "electron");
  if (charge != "electron" && charge != "positron")
    throw ConfigError("charge must be electron or positron");
  const double amp = (charge == "electron" ? -1.0 : 1.0) * a0 / lambda;
  const double k = 2.0 * M_PI / lambda;
  const double phi = get_num("pump", "phase", 0.0);
  const std::string pol = get_str("pump", "polarization", "linear");
  double a1 = 1.0, a2 = 0.0;
  if (pol == "circular") {
    a1 = a2 = 1.0;
  } else if (pol != "linear") {
    throw ConfigError("polarization must be linear or circular");
  }

  std::optional<std::pair<double, double>> support;
  if (has("pump", "support_start_um") || has("pump", "support_end_um")) {
    support = std::pair{require_num("pump", "support_start_um"),
                        require_num("pump", "support_end_um")};
    if (!(support->second > support->first))
      throw ConfigError("pump support must be a nonempty interval");
  }

  Envelope e;
  if (env == "gaussian") {
    e = Envelope::gaussian(amp, require_num("pump", "sigma_um2"),
                           get_num("pump", "center_um", 0.0));
  } else if (env == "sin2") {
    e = Envelope::sin_squared(amp, require_num("pump", "length_um"));
  } else if (env == "constant") {
    e = Envelope::constant(amp);
    if (!support) throw ConfigError("constant envelope requires support_start_um/support_end_um");
  } else if (env == "samples-file") {
    const std::string file = get_str("pump", "samples_file", "");
    if (file.empty()) throw ConfigError("samples-file envelope requires samples_file");
    fs::path p(file);
    if (p.is_relative() && !base_dir_.empty()) p = fs::path(base_dir_) / p;
    std::ifstream is(p);
    if (!is) throw ConfigError("cannot open samples file: " + p.string());
    std::vector<double> xs, vs;
    double x, v;
    while (is >> x >> v) {
      xs.push_back(x);
      vs.push_back(amp * v);
    }
    if (xs.size() < 2) throw ConfigError("samples file needs >= 2 rows");
    e = Envelope::sampled(std::move(xs), std::move(vs));
  } else {
    throw ConfigError("unknown envelope '" + env + "'");
  }
  return Pump::modulated(e, k, phi, a1, a2, support);
}

StaticField Scenario::build_static_field() const {
  const Vec3 e{get_num("static_field", "ex_per_um", 0.0),
               get_num("static_field", "ey_per_um", 0.0),
               get_num("static_field", "kappa_per_um", 0.0)};
  const Vec3 b{get_num("static_field", "bx_per_um", 0.0),
               get_num("static_field", "by_per_um", 0.0),
               get_num("static_field", "bz_per_um", 0.0)};
  if (norm2(e) == 0.0 && norm2(b) == 0.0) return StaticField::zero();
  return StaticField::uniform(e, b);
}

XiState Scenario::build_init() const {
  XiState st;
  st.xi = get_num("init", "xi_um", 0.0);
  st.x_perp = {get_num("init", "x_um", 0.0), get_num("init", "y_um", 0.0)};
  st.z = get_num("init", "z_um", 0.0);
  st.u_perp = {get_num("init", "ux", 0.0), get_num("init", "uy", 0.0)};
  st.s = get_num("init", "s", 1.0);
  if (!(st.s > 0.0)) throw ConfigError("init s must be positive");
  return st;
}

std::vector<std::string> Scenario::validate() const {
  std::vector<std::string> warnings;
  build_pump();
  if (kind_ == "vacuum-general" || kind_ == "vacuum-exact" || kind_ == "oracle-compare")
    build_static_field();
  if (kind_ != "kappa-scan" && kind_ != "autoresonance") build_init();

  const double kappa = get_num("static_field", "kappa_per_um", 0.0);
  const double xi_end = get_num("numerics", "xi_end_um", 0.0);
  if (kappa > 0.0 && xi_end >= 1.0 / kappa)
    warnings.push_back("kappa_per_um > 0 with xi_end_um >= 1/kappa: the run will "
                       "be truncated before the coordinate singularity");
  if ((kind_ == "plasma-step" || kind_ == "plasma-family") && !section("density"))
    throw ConfigError("kind '" + kind_ + "' requires a [density] section");
  if (kind_ == "kappa-scan" && !section("scan"))
    throw ConfigError("kind 'kappa-scan' requires a [scan] section");
  if (kind_ != "kappa-scan" && !(xi_end > 0.0))
    throw ConfigError("missing or non-positive xi_end_um in [numerics]");
  return warnings;
}

namespace {

IntegrateOptions integrate_options(const Scenario&, const RunOptions& ro, double rtol,
                                   double atol, double max_step) {
  IntegrateOptions io;
  io.rtol = ro.rtol > 0.0 ? ro.rtol : rtol;
  io.atol = ro.atol > 0.0 ? ro.atol : atol;
  io.max_step = max_step;
  return io;
}

json manifest_json(const Scenario& sc,
                   const std::map<std::string, std::map<std::string, std::string>>& cfg,
                   const RunOptions& ro) {
  json m;
  m["scenario"] = sc.name();
  m["kind"] = sc.kind();
  m["library_version"] = library_version();
  m["config"] = cfg;
  json opts;
  opts["threads"] = ro.threads;
  opts["rtol_override"] = ro.rtol;
  opts["atol_override"] = ro.atol;
  m["run_options"] = opts;
  return m;
}

}  // namespace

RunResult Scenario::run(const RunOptions& opts) const {
  RunResult res;
  res.warnings = validate();

  const fs::path dir = fs::path(opts.out_dir) / name_;
  fs::create_directories(dir);

  if (kind_ == "vacuum-general") res = run_vacuum(opts, false);
  else if (kind_ == "vacuum-exact") res = run_vacuum(opts, true);
  else if (kind_ == "oracle-compare") res = run_oracle(opts);
  else if (kind_ == "kappa-scan") res = run_kappa_scan(opts);
  else if (kind_ == "autoresonance") res = run_autoresonance(opts);
  else if (kind_ == "plasma-step") res = run_plasma_step(opts);
  else if (kind_ == "plasma-family") res = run_plasma_family(opts);
  else throw ConfigError("unknown scenario kind '" + kind_ + "'");

  // manifest with the fully parsed config for reproducibility
  std::map<std::string, std::map<std::string, std::string>> cfg;
  for (const auto& [sec, kv] : sections_)
    for (const auto& [key, vl] : kv) cfg[sec][key] = vl.first;
  json m = manifest_json(*this, cfg, opts);
  m["artifacts"] = res.artifacts;
  m["warnings"] = res.warnings;
  write_file(dir / "manifest.json", m.dump(2) + "\n");
  res.artifacts.push_back((fs::path(name_) / "manifest.json").string());
  return res;
}

RunResult Scenario::run_vacuum(const RunOptions& opts, bool exact) const {
  RunResult res;
  res.warnings = validate();
  const fs::path dir = fs::path(opts.out_dir) / name_;
  fs::create_directories(dir);

  const Pump pump = build_pump();
  const StaticField stat = build_static_field();
  const XiState init = build_init();
  const double xi_end = require_num("numerics", "xi_end_um");
  const IntegrateOptions io = integrate_options(
      *this, opts, get_num("numerics", "rtol", 1e-10), get_num("numerics", "atol", 1e-12),
      get_num("numerics", "max_step_um", 0.0));

  Trajectory traj;
  if (exact) {
    const Vec3 e = stat.is_zero() ? Vec3{} : stat.e_uniform();
    const Vec3 b = stat.is_zero() ? Vec3{} : stat.b_uniform();
    if (e.x != 0.0 || e.y != 0.0 || b.x != 0.0 || b.y != 0.0)
      throw ConfigError("vacuum-exact supports axial static fields only "
                        "(kappa_per_um, bz_per_um)");
    traj = solve_exact(init, pump, {e.z, b.z}, xi_end);
  } else {
    traj = integrate_general(init, pump, stat, xi_end, io);
  }

  const auto nodes = sample_nodes(traj, static_cast<std::size_t>(
                                            get_num("numerics", "samples", 2000)));
  std::ostringstream csv;
  write_trajectory_csv(csv, traj, pump, nodes);
  write_file(dir / "trajectory.csv", csv.str());
  res.artifacts.push_back((fs::path(name_) / "trajectory.csv").string());

  const XiState fin = traj.state(traj.xi_end());
  const LabKinematics lab = derive_lab(fin);
  json s;
  s["kind"] = kind_;
  s["xi_end_um"] = traj.xi_end();
  s["stopped_at_s_floor"] = traj.stop_reason() == StopReason::SFactorFloor;
  s["final"] = {{"gamma", lab.gamma}, {"u_z", lab.u_z},
                {"z_um", fin.z},      {"s", fin.s},
                {"ux", fin.u_perp.x}, {"uy", fin.u_perp.y}};
  s["energy_gain"] = energy_gain(traj, pump, traj.xi_end());
  s["warnings"] = res.warnings;
  res.summary_json = s.dump(2) + "\n";
  write_file(dir / "summary.json", res.summary_json);
  res.artifacts.push_back((fs::path(name_) / "summary.json").string());
  return res;
}

RunResult Scenario::run_oracle(const RunOptions& opts) const {
  RunResult res;
  res.warnings = validate();
  const fs::path dir = fs::path(opts.out_dir) / name_;
  fs::create_directories(dir);

  const Pump pump = build_pump();
  const StaticField stat = build_static_field();
  const XiState init = build_init();
  const double xi_end = require_num("numerics", "xi_end_um");
  const IntegrateOptions io = integrate_options(
      *this, opts, get_num("numerics", "rtol", 1e-10), get_num("numerics", "atol", 1e-12),
      get_num("numerics", "max_step_um", 0.0));

  Trajectory traj = integrate_general(init, pump, stat, xi_end, io);

  const LabKinematics lab0 = derive_lab(init);
  TimeState t0{Vec3(init.x_perp, init.z), Vec3(init.u_perp, lab0.u_z)};
  const double ct0 = traj.time_of(traj.xi_begin());
  const double ct1 = traj.time_of(traj.xi_end());
  IntegrateOptions oio = io;
  oio.rtol = get_num("oracle", "rtol", io.rtol);
  oio.atol = get_num("oracle", "atol", io.atol);
  TimeTrajectory oracle = integrate_time(t0, ct0, ct1, pump, stat, oio);

  const std::size_t n =
      static_cast<std::size_t>(get_num("oracle", "samples", 500));
  std::vector<double> cts(n);
  for (std::size_t i = 0; i < n; ++i)
    cts[i] = ct0 + (ct1 - ct0) * static_cast<double>(i) / static_cast<double>(n - 1);
  const OracleComparison cmp = compare_with_oracle(traj, oracle, cts);

  const auto nodes = sample_nodes(traj, static_cast<std::size_t>(
                                            get_num("numerics", "samples", 2000)));
  std::ostringstream csv;
  write_trajectory_csv(csv, traj, pump, nodes);
  write_file(dir / "trajectory.csv", csv.str());
  std::ostringstream ocsv;
  write_time_csv(ocsv, oracle, cts);
  write_file(dir / "oracle.csv", ocsv.str());
  res.artifacts.push_back((fs::path(name_) / "trajectory.csv").string());
  res.artifacts.push_back((fs::path(name_) / "oracle.csv").string());

  json s;
  s["kind"] = kind_;
  s["max_position_rel_err"] = cmp.max_pos_err;
  s["max_momentum_rel_err"] = cmp.max_u_err;
  s["ct_span_um"] = {ct0, ct1};
  s["warnings"] = res.warnings;
  res.summary_json = s.dump(2) + "\n";
  write_file(dir / "summary.json", res.summary_json);
  res.artifacts.push_back((fs::path(name_) / "summary.json").string());
  return res;
}

RunResult Scenario::run_kappa_scan(const RunOptions& opts) const {
  RunResult res;
  res.warnings = validate();
  const fs::path dir = fs::path(opts.out_dir) / name_;
  fs::create_directories(dir);

  const Pump pump = build_pump();
  const auto support = pump.support();
  if (!support) throw ConfigError("kappa-scan requires a compact-support pump");
  const double xi_end = get_num("numerics", "xi_end_um", support->second);

  const double k_lo = require_num("scan", "kappa_min_per_um");
  const double k_hi = require_num("scan", "kappa_max_per_um");
  const std::size_t pts = static_cast<std::size_t>(require_num("scan", "points"));
  if (!(k_hi > k_lo) || pts < 3) throw ConfigError("scan needs kappa_max > kappa_min and >= 3 points");
  std::vector<double> kappas(pts);
  for (std::size_t i = 0; i < pts; ++i)
    kappas[i] = k_lo + (k_hi - k_lo) * static_cast<double>(i) / static_cast<double>(pts - 1);
  for (double kp : kappas)
    if (kp > 0.0 && xi_end >= 1.0 / kp)
      throw NumericalError("kappa-scan grid reaches the s = 0 singularity before "
                           "the pump ends");

  XiState init;  // rest at origin, the closed-form reference conditions
  const auto table = kappa_scan(init, pump, kappas, xi_end, opts.threads);

  std::string csv = "kappa_per_um,E_f\n";
  for (const auto& row : table)
    csv += csv_num(row.kappa) + "," + csv_num(row.energy_gain) + "\n";
  write_file(dir / "kscan.csv", csv);
  res.artifacts.push_back((fs::path(name_) / "kscan.csv").string());

  std::size_t imax = 0;
  for (std::size_t i = 1; i < table.size(); ++i)
    if (table[i].energy_gain > table[imax].energy_gain) imax = i;
  // unimodality of the sampled curve: rises, then falls
  bool unimodal = true;
  for (std::size_t i = 1; i < table.size(); ++i) {
    const bool rising = table[i].energy_gain >= table[i - 1].energy_gain;
    if (i <= imax && !rising) unimodal = false;
    if (i > imax && rising) unimodal = false;
  }
  double e_at_zero = 0.0;
  for (const auto& row : table)
    if (std::fabs(row.kappa) < 1e-12) e_at_zero = row.energy_gain;

  json s;
  s["kind"] = kind_;
  s["kappa_M_per_um"] = table[imax].kappa;
  s["E_f_max"] = table[imax].energy_gain;
  s["E_f_at_zero"] = e_at_zero;
  s["unimodal"] = unimodal;
  s["interior_maximum"] = imax > 0 && imax + 1 < table.size();
  s["warnings"] = res.warnings;
  res.summary_json = s.dump(2) + "\n";
  write_file(dir / "summary.json", res.summary_json);
  res.artifacts.push_back((fs::path(name_) / "summary.json").string());
  return res;
}

RunResult Scenario::run_autoresonance(const RunOptions& opts) const {
  RunResult res;
  res.warnings = validate();
  const fs::path dir = fs::path(opts.out_dir) / name_;
  fs::create_directories(dir);

  const Pump pump = build_pump();
  if (!pump.is_circular())
    throw ConfigError("autoresonance requires a circularly polarized pump");
  const double k = pump.carrier_k();
  const double bz = get_num("autoresonance", "bz_per_um",
                            -k * get_num("autoresonance", "detuning", 1.0));
  const double xi_end = require_num("numerics", "xi_end_um");

  XiState init;
  const AutoresonanceDiag diag = autoresonance_diag(init, pump, bz, xi_end);

  Trajectory traj = solve_exact(init, pump, {0.0, bz}, xi_end);
  const auto nodes = sample_nodes(traj, static_cast<std::size_t>(
                                            get_num("numerics", "samples", 2000)));
  std::ostringstream csv;
  write_trajectory_csv(csv, traj, pump, nodes);
  write_file(dir / "trajectory.csv", csv.str());
  res.artifacts.push_back((fs::path(name_) / "trajectory.csv").string());

  json s;
  s["kind"] = kind_;
  s["bz_per_um"] = bz;
  s["w_total"] = diag.w_total;
  s["energy_gain"] = diag.energy_gain;
  s["zp_post"] = diag.zp_post;
  s["xp_post"] = diag.xp_post;
  s["predicted_zp"] = diag.predicted_zp;
  s["slope_ratio"] = diag.slope_ratio;
  s["predicted_ratio"] = diag.predicted_ratio;
  s["warnings"] = res.warnings;
  res.summary_json = s.dump(2) + "\n";
  write_file(dir / "summary.json", res.summary_json);
  res.artifacts.push_back((fs::path(name_) / "summary.json").string());
  return res;
}

RunResult Scenario::run_plasma_step(const RunOptions& opts) const {
  RunResult res;
  res.warnings = validate();
  const fs::path dir = fs::path(opts.out_dir) / name_;
  fs::create_directories(dir);

  const Pump pump = build_pump();
  const double n0 = require_num("density", "n0_per_cm3") * 1e-12;  // to um^-3
  const InitialDensity density = InitialDensity::step(n0, get_num("density", "edge_um", 0.0));
  const double m = density.coupling();
  const double xi_end = require_num("numerics", "xi_end_um");
  const IntegrateOptions io = integrate_options(
      *this, opts, get_num("numerics", "rtol", 1e-10), get_num("numerics", "atol", 1e-12),
      get_num("numerics", "max_step_um", 0.0));

  const PlasmaStepSolution sol = solve_step_cauchy(pump, m, xi_end, io);

  const std::size_t n =
      static_cast<std::size_t>(get_num("numerics", "samples", 2000));
  std::string csv = "xi_um,Delta_um,s,gamma,uz,v\n";
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = xi_end * static_cast<double>(i) / static_cast<double>(n - 1);
    csv += csv_num(xi) + "," + csv_num(sol.delta(xi)) + "," + csv_num(sol.s(xi)) + "," +
           csv_num(sol.gamma(xi)) + "," + csv_num(sol.u_z(xi)) + "," +
           csv_num(sol.v(xi)) + "\n";
  }
  write_file(dir / "step.csv", csv);
  res.artifacts.push_back((fs::path(name_) / "step.csv").string());

  const auto bp = pump.breakpoints();
  const double pulse_end = bp.empty() ? 0.0 : bp.back();
  PeriodEstimate pe;
  if (pulse_end < xi_end) pe = period_estimate(sol, pulse_end);

  json s;
  s["kind"] = kind_;
  s["M_per_um2"] = m;
  s["xi_H_um"] = pe.measured;
  s["xi_H_quadrature_um"] = pe.quadrature;
  s["invariant_C"] = pe.invariant;
  s["s_range"] = {pe.s_min, pe.s_max};

  const std::string resid_on = get_str("residual", "enabled", "false");
  if (resid_on == "true") {
    ResidualOptions ro;
    const double default_ct = pe.quadrature > 0.0 ? 5.0 * pe.quadrature : xi_end;
    ro.ct_max = get_num("residual", "ct_max_um", default_ct);
    ro.s_step = get_num("residual", "s_step_um", 0.05);
    ro.grid = static_cast<std::size_t>(get_num("residual", "grid", 48));
    if (ro.ct_max > xi_end + sol.delta(xi_end))
      throw NumericalError("residual ct_max_um exceeds the solved span");
    const ResidualReport rep = aperp_residual(sol, ro);
    std::string rcsv = "ct_um,z_um,ratio\n";
    for (const auto& row : rep.samples)
      rcsv += csv_num(row.ct) + "," + csv_num(row.z) + "," + csv_num(row.ratio) + "\n";
    write_file(dir / "residual.csv", rcsv);
    res.artifacts.push_back((fs::path(name_) / "residual.csv").string());
    s["residual_ratio"] = rep.ratio;
    s["alpha_peak"] = rep.alpha_peak;
  } else if (resid_on != "false") {
    throw ConfigError("residual enabled must be true or false");
  }

  s["warnings"] = res.warnings;
  res.summary_json = s.dump(2) + "\n";
  write_file(dir / "summary.json", res.summary_json);
  res.artifacts.push_back((fs::path(name_) / "summary.json").string());
  return res;
}

RunResult Scenario::run_plasma_family(const RunOptions& opts) const {
  RunResult res;
  res.warnings = validate();
  const fs::path dir = fs::path(opts.out_dir) / name_;
  fs::create_directories(dir);

  const Pump pump = build_pump();
  const double n0 = require_num("density", "n0_per_cm3") * 1e-12;
  const InitialDensity density =
      InitialDensity::step(n0, get_num("density", "edge_um", 0.0));
  const double xi_end = require_num("numerics", "xi_end_um");

  const auto bp = pump.breakpoints();
  const double pulse_end = bp.empty() ? xi_end : bp.back();
  FamilyOptions fo;
  fo.b_static = {0.0, 0.0, get_num("static_field", "bz_per_um", 0.0)};
  fo.xi_end = xi_end;
  fo.search_from = get_num("family", "search_from_um", pulse_end);
  fo.threads = opts.threads;
  fo.integrate = integrate_options(*this, opts, get_num("numerics", "rtol", 1e-9),
                                   get_num("numerics", "atol", 1e-12),
                                   get_num("numerics", "max_step_um", 0.0));

  const std::size_t z_pts =
      static_cast<std::size_t>(get_num("family", "z_points", 64));
  const double z_max = get_num("family", "z_max_um", 3.0 * (pulse_end > 0 ? pulse_end : 10.0));
  // log-like spacing concentrated at the surface, plus the surface itself
  std::vector<double> zs(z_pts);
  for (std::size_t i = 0; i < z_pts; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(z_pts - 1);
    zs[i] = density.edge() + z_max * (std::exp(3.0 * t) - 1.0) / (std::exp(3.0) - 1.0);
  }

  const auto members = solve_family(pump, density, zs, fo);

  std::string fam = "Z_um,valid,max_gamma,xi_H_um\n";
  const std::size_t n =
      static_cast<std::size_t>(get_num("numerics", "samples", 400));
  std::size_t idx = 0;
  for (const auto& m : members) {
    fam += csv_num(m.z_init) + "," + (m.valid ? "1" : "0") + "," +
           csv_num(m.max_gamma) + "," + csv_num(m.xi_h) + "\n";
    char fname[64];
    std::snprintf(fname, sizeof fname, "member_%03zu.csv", idx++);
    std::string csv = "xi_um,Delta_um,s,gamma,uz,v\n";
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = m.traj.xi_begin() +
                        (m.traj.xi_end() - m.traj.xi_begin()) * static_cast<double>(i) /
                            static_cast<double>(n - 1);
      const XiState st = m.traj.state(xi);
      const LabKinematics lab = derive_lab(st);
      csv += csv_num(xi) + "," + csv_num(st.z - m.z_init) + "," + csv_num(st.s) + "," +
             csv_num(lab.gamma) + "," + csv_num(lab.u_z) + "," +
             csv_num(norm2(st.u_perp)) + "\n";
    }
    write_file(dir / fname, csv);
    res.artifacts.push_back((fs::path(name_) / fname).string());
  }
  write_file(dir / "family.csv", fam);
  res.artifacts.push_back((fs::path(name_) / "family.csv").string());

  std::size_t valid = 0;
  double gmax = 0.0;
  for (const auto& m : members) {
    if (m.valid) ++valid;
    gmax = std::max(gmax, m.max_gamma);
  }
  json s;
  s["kind"] = kind_;
  s["members"] = members.size();
  s["valid_members"] = valid;
  s["max_gamma"] = gmax;
  s["warnings"] = res.warnings;
  res.summary_json = s.dump(2) + "\n";
  write_file(dir / "summary.json", res.summary_json);
  res.artifacts.push_back((fs::path(name_) / "summary.json").string());
  return res;
}

}  // namespace lwxi
