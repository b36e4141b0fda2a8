#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "nvdressed/config.hpp"
#include "nvdressed/csv.hpp"
#include "nvdressed/dynamics.hpp"
#include "nvdressed/eigen.hpp"
#include "nvdressed/errors.hpp"
#include "nvdressed/fitting.hpp"
#include "nvdressed/levels.hpp"
#include "nvdressed/magnetometry.hpp"
#include "nvdressed/spectra.hpp"

namespace nvdressed::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Bad flags or flag combinations: exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string config;
  std::string preset = "main-text";
  std::uint64_t seed = 1;
  std::string out = ".";
  int threads = 1;
};

struct Context {
  std::string command;
  std::vector<std::string> args;
  Common common;
  RunConfig cfg;
  std::optional<std::string> config_path;
  std::vector<std::string> outputs;
  json extra = json::object();

  std::string path(const std::string& name) const { return (fs::path(common.out) / name).string(); }

  void write_text(const std::string& name, const std::string& text) {
    const std::string p = path(name);
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p);
    f << text;
    outputs.push_back(p);
  }
  void write_table(const std::string& name, const CsvTable& t) { write_text(name, format_csv(t)); }
  void write_json(const std::string& name, const json& j) { write_text(name, j.dump(2) + "\n"); }

  void write_manifest() {
    json m;
    m["command"] = command;
    m["tool_version"] = kToolVersion;
    m["arguments"] = args;
    m["seed"] = common.seed;
    m["threads"] = common.threads;
    m["preset"] = common.preset;
    m["config_file"] = config_path ? json(*config_path) : json(nullptr);
    m["config"] = json::parse(config_to_json(cfg));
    m["outputs"] = outputs;
    if (!extra.empty()) m["details"] = extra;
    const std::string p = path(command + ".manifest.json");
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p);
    f << m.dump(2) << "\n";
  }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "JSON config file (fallback: $NV_DRESSED_CONFIG)");
  sub->add_option("--preset", c.preset, "Field preset: main-text or supplementary")
      ->capture_default_str();
  sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  sub->add_option("--out", c.out, "Output directory")->capture_default_str();
  sub->add_option("--threads", c.threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void resolve(Context& ctx) {
  const auto names = field_preset_names();
  if (std::find(names.begin(), names.end(), ctx.common.preset) == names.end())
    throw UsageError("unknown preset '" + ctx.common.preset + "'");
  RunConfig base;
  base.fields = field_preset(ctx.common.preset);
  ctx.config_path = resolve_config_path(
      ctx.common.config.empty() ? std::nullopt : std::optional<std::string>(ctx.common.config));
  ctx.cfg = ctx.config_path ? load_config(*ctx.config_path, base) : base;
  fs::create_directories(ctx.common.out);
}

std::vector<double> parse_range(const std::string& spec, const char* flag) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": '" + item + "' is not a number");
    }
  }
  if (parts.size() != 3 || !(parts[2] > 0.0) || !(parts[1] >= parts[0]))
    throw UsageError(std::string(flag) + " expects start:stop:step with stop >= start, step > 0");
  const auto n = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
  if (n > 10000000) throw UsageError(std::string(flag) + " has too many samples");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = parts[0] + static_cast<double>(i) * parts[2];
  return out;
}

std::vector<double> parse_list(const std::string& spec, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": '" + item + "' is not a number");
    }
  }
  return out;
}

char parse_point(const std::string& p) {
  if (p == "A" || p == "a") return 'A';
  if (p == "B" || p == "b") return 'B';
  throw UsageError("--point must be A or B");
}

json resonance_json(const ResonanceSet& rs) {
  json arr = json::array();
  for (const auto& r : rs)
    arr.push_back({{"freq_MHz", r.freq}, {"Sz", r.upper.sz}, {"Iz", r.upper.iz}, {"weight", r.weight}});
  return arr;
}

json component_json(const DecayComponent& d) {
  return {{"y0", d.y0}, {"A", d.a}, {"T2_us", d.t2}, {"p", d.p}, {"delta_MHz", d.delta},
          {"phi_rad", d.phi}};
}

DecayComponent component_from_json(const json& j) {
  static const std::vector<std::string> keys = {"y0", "A", "T2_us", "p", "delta_MHz", "phi_rad"};
  if (!j.is_object()) throw ConfigError("decay component must be an object");
  for (const auto& [k, v] : j.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end())
      throw ConfigError("unknown decay component key '" + k + "'");
    if (!v.is_number()) throw ConfigError("decay component key '" + k + "' must be a number");
  }
  DecayComponent d;
  d.y0 = j.value("y0", d.y0);
  d.a = j.value("A", d.a);
  d.t2 = j.value("T2_us", d.t2);
  d.p = j.value("p", d.p);
  d.delta = j.value("delta_MHz", d.delta);
  d.phi = j.value("phi_rad", d.phi);
  d.validate();
  return d;
}

double energy_gap(const RunConfig& cfg) {
  const auto p = PerturbationParams::from(cfg.constants, cfg.fields);
  return perturbative_spectrum(p, cfg.fields.phi_b(), cfg.fields.phi_pi()).e_gap;
}

// ---------------------------------------------------------------- commands

struct EnergyDiagramFlags {
  std::string range = "-0.4:0.4:0.002";
};

void energy_diagram_cmd(Context& ctx, const EnergyDiagramFlags& fl) {
  const auto b = parse_range(fl.range, "--bpar-range");
  resolve(ctx);
  const auto rows = energy_diagram(ctx.cfg.constants, ctx.cfg.fields, b, ctx.common.threads);
  CsvTable t;
  t.header.push_back("B_par_mT");
  for (const char* pre : {"E", "Sz", "Iz"})
    for (int k = 1; k <= 9; ++k)
      t.header.push_back(std::string(pre) + std::to_string(k) + (pre[0] == 'E' ? "_MHz" : ""));
  t.columns.assign(t.header.size(), {});
  for (const auto& r : rows) {
    t.columns[0].push_back(r.b_par);
    for (int k = 0; k < 9; ++k) {
      t.columns[1 + k].push_back(r.energies[k]);
      t.columns[10 + k].push_back(r.sz[k]);
      t.columns[19 + k].push_back(r.iz[k]);
    }
  }
  ctx.write_table("energy_diagram.csv", t);
}

struct TraceDistanceFlags {
  std::string range = "-0.2:0.2:0.002";
  std::string mode = "joint";
};

void trace_distance_cmd(Context& ctx, const TraceDistanceFlags& fl) {
  const auto b = parse_range(fl.range, "--bpar-range");
  const TraceDistanceMode mode =
      fl.mode == "electronic" ? TraceDistanceMode::Electronic : TraceDistanceMode::Joint;
  resolve(ctx);
  const auto rows = trace_distance_scan(ctx.cfg.constants, ctx.cfg.fields, b, ctx.common.threads, mode);
  CsvTable t;
  t.header = {"B_par_mT", "D_Iz_minus1", "D_Iz_0", "D_Iz_plus1"};
  t.columns.assign(4, {});
  for (const auto& r : rows) {
    t.columns[0].push_back(r.b_par);
    for (int k = 0; k < 3; ++k) t.columns[1 + k].push_back(r.d[k]);
  }
  ctx.extra["mode"] = fl.mode;
  ctx.write_table("trace_distance.csv", t);
}

struct SpectrumFlags {
  std::string point;
  std::string branch = "lower";
  double linewidth = 0.3;
  double contrast = 0.02;
  double noise = 0.0;
  double merge_tol = kMergeToleranceMHz;
  std::string freq_range;
};

void spectrum_cmd(Context& ctx, const SpectrumFlags& fl) {
  if (!(fl.linewidth > 0.0)) throw UsageError("--linewidth must be positive");
  if (!(fl.noise >= 0.0)) throw UsageError("--noise must be non-negative");
  resolve(ctx);
  FieldConfiguration f = ctx.cfg.fields;
  if (!fl.point.empty()) f.b_par = working_point_b_par(ctx.cfg.constants, parse_point(fl.point));
  const auto rs = resonance_frequencies(
      ctx.cfg.constants, f, fl.branch == "upper" ? BranchSelect::Upper : BranchSelect::Lower,
      fl.merge_tol);
  if (rs.empty()) throw std::runtime_error("no allowed transitions in the selected branch");

  std::vector<double> grid;
  if (!fl.freq_range.empty()) {
    grid = parse_range(fl.freq_range, "--freq-range");
  } else {
    const double lo = std::floor(rs.front().freq - 5.0 * fl.linewidth);
    const double hi = std::ceil(rs.back().freq + 5.0 * fl.linewidth);
    for (double v = lo; v <= hi + 1e-9; v += 0.005) grid.push_back(v);
  }
  auto y = odmr_lineshape(rs, fl.linewidth, fl.contrast, grid);
  if (fl.noise > 0.0) {
    std::mt19937_64 rng(ctx.common.seed);
    std::normal_distribution<double> normal(0.0, fl.noise);
    for (double& v : y) v += normal(rng);
  }
  CsvTable t;
  t.header = {"freq_MHz", "intensity"};
  t.columns = {grid, y};
  ctx.extra["B_par_mT"] = f.b_par;
  ctx.write_table("spectrum.csv", t);
  ctx.write_json("resonances.json", resonance_json(rs));
}

struct FidSimFlags {
  std::string point = "A";
  std::string components = "auto";
  std::string mw = "dressed";
  double tau_max = 6.0;
  double dt = 0.01;
  double p = kDefaultStretch;
  double noise = 0.0;
};

// Nominal measured coherence times keyed by (point, microwave target), in the order
// dressed, then partially dressed lines by increasing |<S_z>|.
std::vector<double> nominal_t2(char point, const std::string& mw) {
  if (point == 'A' && mw == "dressed") return {2.6, 1.41};
  if (point == 'A' && mw == "pdres1") return {2.2, 1.43};
  if (point == 'B' && mw == "dressed") return {2.3, 1.43, 0.89};
  if (point == 'B' && mw == "pdres2") return {2.9, 1.75, 1.13};
  throw UsageError("--mw must be dressed or pdres1 at point A, dressed or pdres2 at point B");
}

std::vector<DecayComponent> auto_components(Context& ctx, char point, const std::string& mw,
                                            double p) {
  const PhysicalConstants& c = ctx.cfg.constants;
  const FieldConfiguration f = ctx.cfg.fields.with_b_par(working_point_b_par(c, point));
  auto rs = resonance_frequencies(c, f);
  const auto t2 = nominal_t2(point, mw);
  if (rs.size() != t2.size())
    throw std::runtime_error("point " + std::string(1, point) + " has " +
                             std::to_string(rs.size()) + " resonances, expected " +
                             std::to_string(t2.size()));
  std::stable_sort(rs.begin(), rs.end(), [](const Resonance& a, const Resonance& b) {
    return std::abs(a.upper.sz) < std::abs(b.upper.sz);
  });
  const double nu_mw = mw == "dressed" ? rs[0].freq : rs[1].freq;
  std::vector<DecayComponent> out;
  json lines = json::array();
  for (std::size_t k = 0; k < rs.size(); ++k) {
    DecayComponent d;
    d.y0 = k == 0 ? 0.5 : 0.0;
    d.a = -0.5 / static_cast<double>(rs.size());
    d.t2 = t2[k];
    d.p = p;
    d.delta = std::abs(rs[k].freq - nu_mw);
    out.push_back(d);
    lines.push_back({{"freq_MHz", rs[k].freq}, {"Iz", rs[k].upper.iz}, {"Sz", rs[k].upper.sz}});
  }
  ctx.extra["resonances"] = lines;
  ctx.extra["mw_freq_MHz"] = nu_mw;
  return out;
}

void fid_sim_cmd(Context& ctx, const FidSimFlags& fl) {
  if (!(fl.tau_max > 0.0) || !(fl.dt > 0.0)) throw UsageError("--tau-max and --dt must be positive");
  if (!(fl.noise >= 0.0)) throw UsageError("--noise must be non-negative");
  const char point = parse_point(fl.point);
  resolve(ctx);
  std::vector<DecayComponent> comps;
  if (fl.components == "auto") {
    comps = auto_components(ctx, point, fl.mw, fl.p);
  } else {
    std::ifstream in(fl.components);
    if (!in) throw UsageError("cannot open component file " + fl.components);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ConfigError(std::string("component file: ") + e.what());
    }
    if (!j.is_array() || j.empty()) throw ConfigError("component file must hold a non-empty list");
    for (const auto& e : j) comps.push_back(component_from_json(e));
  }
  std::vector<double> tau;
  const auto n = static_cast<std::size_t>(std::floor(fl.tau_max / fl.dt + 1e-9)) + 1;
  for (std::size_t i = 0; i < n; ++i) tau.push_back(static_cast<double>(i) * fl.dt);
  auto y = fid_signal(comps, tau);
  if (fl.noise > 0.0) {
    std::mt19937_64 rng(ctx.common.seed);
    std::normal_distribution<double> normal(0.0, fl.noise);
    for (double& v : y) v += normal(rng);
  }
  CsvTable t;
  t.header = {"tau_us", "signal"};
  t.columns = {tau, y};
  ctx.write_table("fid.csv", t);
  json model = json::array();
  for (const auto& d : comps) model.push_back(component_json(d));
  ctx.write_json("fid_model.json", model);
}

struct FidFitFlags {
  std::string input;
  int n = 1;
  std::string p = "1.24";
  std::string seeds;
};

void fid_fit_cmd(Context& ctx, const FidFitFlags& fl) {
  FidFitOptions opt;
  opt.n_components = fl.n;
  if (fl.p == "free") {
    opt.fixed_p = std::nullopt;
  } else {
    const auto v = parse_list(fl.p, "--p");
    if (v.size() != 1) throw UsageError("--p takes one number or 'free'");
    opt.fixed_p = v[0];
  }
  if (!fl.seeds.empty()) opt.seeds = parse_list(fl.seeds, "--seeds");
  resolve(ctx);
  const CsvTable data = read_csv(fl.input);
  const auto& tau = data.column("tau_us");
  const auto& y = data.column("signal");
  if (std::find(data.header.begin(), data.header.end(), "sigma") != data.header.end())
    opt.sigma = data.column("sigma");
  const FidFitResult r = fit_fid(tau, y, opt);
  json comps = json::array();
  for (const auto& c : r.components)
    comps.push_back({{"A", c.a},
                     {"T2_us", c.t2},
                     {"T2_err_us", c.t2_err},
                     {"delta_MHz", c.delta},
                     {"delta_err_MHz", c.delta_err},
                     {"phi_rad", c.phi},
                     {"on_resonance", c.on_resonance}});
  json report = {{"components", comps},
                 {"y0", r.y0},
                 {"p", r.p},
                 {"p_err", r.p_err},
                 {"p_fixed", opt.fixed_p.has_value()},
                 {"chi2_reduced", r.raw.chi2_reduced},
                 {"noise_sigma", r.noise_sigma},
                 {"iterations", r.raw.iterations},
                 {"status", to_string(r.raw.status)},
                 {"uncertainty", "1-sigma from the linearized covariance"}};
  ctx.extra["input"] = fl.input;
  ctx.write_json("fid_fit.json", report);
  if (r.raw.status == FitStatus::Singular) throw std::runtime_error("fit is singular");
}

struct OdmrFitFlags {
  std::string input;
  int n = 1;
};

void odmr_fit_cmd(Context& ctx, const OdmrFitFlags& fl) {
  resolve(ctx);
  const CsvTable data = read_csv(fl.input);
  std::optional<std::vector<double>> sigma;
  if (std::find(data.header.begin(), data.header.end(), "sigma") != data.header.end())
    sigma = data.column("sigma");
  const auto r = fit_odmr(data.column("freq_MHz"), data.column("intensity"), fl.n, sigma);
  json peaks = json::array();
  for (const auto& p : r.peaks)
    peaks.push_back({{"center_MHz", p.center},
                     {"center_err_MHz", p.center_err},
                     {"fwhm_MHz", p.width},
                     {"fwhm_err_MHz", p.width_err},
                     {"depth", p.depth},
                     {"depth_err", p.depth_err}});
  json report = {{"baseline", r.baseline},
                 {"peaks", peaks},
                 {"chi2_reduced", r.raw.chi2_reduced},
                 {"iterations", r.raw.iterations},
                 {"status", to_string(r.raw.status)},
                 {"uncertainty", "1-sigma from the linearized covariance"}};
  ctx.extra["input"] = fl.input;
  ctx.write_json("odmr_fit.json", report);
  if (r.raw.status == FitStatus::Singular) throw std::runtime_error("fit is singular");
}

struct MagnetometryFlags {
  std::string field;
  int family = 1;
  double phi_pi = std::nan("");
};

void magnetometry_cmd(Context& ctx, const MagnetometryFlags& fl) {
  if (fl.family < 1 || fl.family > 4) throw UsageError("--family must be 1..4");
  std::optional<std::vector<double>> lab_in;
  if (!fl.field.empty()) {
    lab_in = parse_list(fl.field, "--field");
    if (lab_in->size() != 3) throw UsageError("--field expects Bx,By,Bz");
  }
  resolve(ctx);
  const FieldConfiguration& f = ctx.cfg.fields;
  const Eigen::Vector3d lab = lab_in ? Eigen::Vector3d((*lab_in)[0], (*lab_in)[1], (*lab_in)[2])
                                     : to_lab(fl.family, f.b_x, f.b_y, f.b_par);
  json fams = json::array();
  for (const auto& p : family_projection(lab))
    fams.push_back({{"family", p.label},
                    {"B_par_mT", p.b_par},
                    {"B_perp_mT", p.b_perp},
                    {"phi_B_rad", p.phi_b},
                    {"B_x_mT", p.b_x},
                    {"B_y_mT", p.b_y}});
  const double split = zero_field_splitting(f, ctx.cfg.constants);
  const double phi = std::isnan(fl.phi_pi) ? f.phi_pi() : fl.phi_pi;
  const auto [px, py] = reconstruct_transverse_pi(split, phi, ctx.cfg.constants);
  json report = {{"lab_field_mT", {lab.x(), lab.y(), lab.z()}},
                 {"families", fams},
                 {"zero_field_splitting_MHz", split},
                 {"Pi_reconstructed_Vcm", {px, py}},
                 {"phi_Pi_rad", phi}};
  ctx.write_json("magnetometry.json", report);
}

struct T2Flags {
  std::string scenario = "dressed";
  double gamma = kPi / 2.0;
  double b_par = std::nan("");
  std::optional<double> sbz, sbx, sby, spx, spy, tcb, tcpi, sens;
  int trials = 0;
  double tau_max = 6.0;
  double dt = 0.05;
  bool ensemble = false;
};

void t2_predict_cmd(Context& ctx, const T2Flags& fl) {
  resolve(ctx);
  const double bpar = std::isnan(fl.b_par) ? ctx.cfg.fields.b_par : fl.b_par;
  Scenario s;
  if (fl.scenario == "dressed") s = Scenario::dressed();
  else if (fl.scenario == "strong-axial") s = Scenario::strong_axial(bpar);
  else if (fl.scenario == "partial") s = Scenario::partial(fl.gamma);
  else throw UsageError("--scenario must be dressed, strong-axial or partial");
  NoiseModel n;
  n.sigma_b_z = fl.sbz;
  n.sigma_b_x = fl.sbx;
  n.sigma_b_y = fl.sby;
  n.sigma_pi_xp = fl.spx;
  n.sigma_pi_yp = fl.spy;
  n.tau_c_b = fl.tcb;
  n.tau_c_pi = fl.tcpi;
  n.sigma_b_ens = fl.sens;
  const double e_gap = energy_gap(ctx.cfg);
  json report = {{"scenario", to_string(s.kind)}, {"E_gap_MHz", e_gap}};
  if (s.kind == Scenario::Kind::Partial) report["gamma_rad"] = s.gamma;
  if (s.kind == Scenario::Kind::StrongAxial) report["B_par_mT"] = s.b_par_mT;
  report["T2_us"] = predict_t2(s, n, ctx.cfg.constants, e_gap);

  std::vector<double> tau;
  if (fl.trials > 0 || fl.ensemble) {
    if (!(fl.tau_max > 0.0) || !(fl.dt > 0.0)) throw UsageError("--tau-max and --dt must be positive");
    const auto m = static_cast<std::size_t>(std::floor(fl.tau_max / fl.dt + 1e-9)) + 1;
    for (std::size_t i = 0; i < m; ++i) tau.push_back(static_cast<double>(i) * fl.dt);
  }
  if (fl.trials > 0) {
    OracleOptions o;
    o.trials = fl.trials;
    o.seed = ctx.common.seed;
    o.threads = ctx.common.threads;
    const auto env = mc_dephasing_oracle(s, n, ctx.cfg.constants, e_gap, tau, o);
    CsvTable t;
    t.header = {"tau_us", "signal"};
    t.columns = {tau, env};
    ctx.write_table("t2_oracle.csv", t);
    report["oracle_trials"] = fl.trials;
  }
  if (fl.ensemble) {
    const auto env = ensemble_decay(s, n, ctx.cfg.constants, DetuningDistribution::delta(0.0), tau);
    CsvTable t;
    t.header = {"tau_us", "signal"};
    t.columns = {tau, env};
    ctx.write_table("ensemble_decay.csv", t);
  }
  ctx.write_json("t2_predict.json", report);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dressed-state NV spin simulations", "nvdressed"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  Common common;

  auto* ed = app.add_subcommand("energy-diagram", "9x9 spectrum versus B_par");
  EnergyDiagramFlags edf;
  add_common(ed, common);
  ed->add_option("--bpar-range", edf.range, "start:stop:step in mT")->capture_default_str();

  auto* td = app.add_subcommand("trace-distance", "Distance of exact states to |->_theta");
  TraceDistanceFlags tdf;
  add_common(td, common);
  td->add_option("--bpar-range", tdf.range, "start:stop:step in mT")->capture_default_str();
  td->add_option("--mode", tdf.mode, "joint or electronic")
      ->check(CLI::IsMember({"joint", "electronic"}))
      ->capture_default_str();

  auto* sp = app.add_subcommand("spectrum", "Allowed resonances and ODMR lineshape");
  SpectrumFlags spf;
  add_common(sp, common);
  sp->add_option("--point", spf.point, "Working point A or B (overrides B_par)");
  sp->add_option("--branch", spf.branch, "lower or upper")
      ->check(CLI::IsMember({"lower", "upper"}))
      ->capture_default_str();
  sp->add_option("--linewidth", spf.linewidth, "Lorentzian FWHM, MHz")->capture_default_str();
  sp->add_option("--contrast", spf.contrast, "Dip depth per unit weight")->capture_default_str();
  sp->add_option("--noise", spf.noise, "Gaussian noise std added to the lineshape")
      ->capture_default_str();
  sp->add_option("--merge-tol", spf.merge_tol, "Line merge tolerance, MHz")->capture_default_str();
  sp->add_option("--freq-range", spf.freq_range, "start:stop:step in MHz");

  auto* fs_ = app.add_subcommand("fid-sim", "Synthesize a multi-component FID trace");
  FidSimFlags fsf;
  add_common(fs_, common);
  fs_->add_option("--point", fsf.point, "Working point A or B")->capture_default_str();
  fs_->add_option("--components", fsf.components, "'auto' or a JSON list of decay components")
      ->capture_default_str();
  fs_->add_option("--mw", fsf.mw, "Microwave target: dressed, pdres1 (A) or pdres2 (B)")
      ->capture_default_str();
  fs_->add_option("--tau-max", fsf.tau_max, "Last delay, us")->capture_default_str();
  fs_->add_option("--dt", fsf.dt, "Delay step, us")->capture_default_str();
  fs_->add_option("--p", fsf.p, "Stretch exponent for auto components")
      ->check(CLI::Range(1.0, 2.0))
      ->capture_default_str();
  fs_->add_option("--noise", fsf.noise, "Gaussian noise std")->capture_default_str();

  auto* ff = app.add_subcommand("fid-fit", "Fit a multi-component stretched-exponential FID");
  FidFitFlags fff;
  add_common(ff, common);
  ff->add_option("--input", fff.input, "CSV with tau_us, signal [, sigma]")->required();
  ff->add_option("--n", fff.n, "Number of components")
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  ff->add_option("--p", fff.p, "Fixed stretch exponent or 'free'")->capture_default_str();
  ff->add_option("--seeds", fff.seeds, "Comma-separated initial detunings, MHz");

  auto* of = app.add_subcommand("odmr-fit", "Fit Lorentzian dips to an ODMR spectrum");
  OdmrFitFlags off;
  add_common(of, common);
  of->add_option("--input", off.input, "CSV with freq_MHz, intensity [, sigma]")->required();
  of->add_option("--n", off.n, "Number of peaks")->check(CLI::PositiveNumber)->capture_default_str();

  auto* mg = app.add_subcommand("magnetometry", "Project a field onto the four NV families");
  MagnetometryFlags mgf;
  add_common(mg, common);
  mg->add_option("--field", mgf.field, "Lab-frame Bx,By,Bz in mT (default: config field in --family frame)");
  mg->add_option("--family", mgf.family, "Frame of the config field")->capture_default_str();
  mg->add_option("--phi-pi", mgf.phi_pi, "In-plane angle of Pi for the reconstruction, rad");

  auto* tp = app.add_subcommand("t2-predict", "Closed-form T2* and optional Monte-Carlo check");
  T2Flags tpf;
  add_common(tp, common);
  tp->add_option("--scenario", tpf.scenario, "dressed, strong-axial or partial")->capture_default_str();
  tp->add_option("--gamma", tpf.gamma, "Mixing angle for the partial scenario, rad")
      ->capture_default_str();
  tp->add_option("--bpar", tpf.b_par, "Axial field for strong-axial, mT (default: config)");
  tp->add_option("--sigma-bz", tpf.sbz, "mT");
  tp->add_option("--sigma-bx", tpf.sbx, "mT");
  tp->add_option("--sigma-by", tpf.sby, "mT");
  tp->add_option("--sigma-pi-x", tpf.spx, "V/cm along x'");
  tp->add_option("--sigma-pi-y", tpf.spy, "V/cm along y'");
  tp->add_option("--tau-c-b", tpf.tcb, "us");
  tp->add_option("--tau-c-pi", tpf.tcpi, "us");
  tp->add_option("--sigma-b-ens", tpf.sens, "Ensemble coupling scale, mT");
  tp->add_option("--trials", tpf.trials, "Monte-Carlo trials (0 disables)")->capture_default_str();
  tp->add_option("--tau-max", tpf.tau_max, "Last delay, us")->capture_default_str();
  tp->add_option("--dt", tpf.dt, "Delay step, us")->capture_default_str();
  tp->add_flag("--ensemble", tpf.ensemble, "Also write the ensemble decay law");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  Context ctx;
  ctx.command = sub->get_name();
  ctx.args = args;
  ctx.common = common;
  try {
    if (sub == ed) energy_diagram_cmd(ctx, edf);
    else if (sub == td) trace_distance_cmd(ctx, tdf);
    else if (sub == sp) spectrum_cmd(ctx, spf);
    else if (sub == fs_) fid_sim_cmd(ctx, fsf);
    else if (sub == ff) fid_fit_cmd(ctx, fff);
    else if (sub == of) odmr_fit_cmd(ctx, off);
    else if (sub == mg) magnetometry_cmd(ctx, mgf);
    else if (sub == tp) t2_predict_cmd(ctx, tpf);
    ctx.write_manifest();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << sub->help();
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  for (const auto& p : ctx.outputs) out << p << "\n";
  return kOk;
}

}  // namespace nvdressed::cli
