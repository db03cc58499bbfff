// Copyright 2026 The simopo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "simopo/scenarios.hpp"

#include <tbb/parallel_for.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "simopo/errors.hpp"
#include "simopo/pdc.hpp"
#include "simopo/version.hpp"

namespace simopo {

namespace {

using json = nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxNmax = 80;
constexpr int kMaxReportedOrder = 6;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) parts.push_back(trim(part));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

// A number, "pi", or "pi/<number>".
double parse_real(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "pi") return std::numbers::pi;
  if (t.rfind("pi/", 0) == 0) return std::numbers::pi / parse_real(key, t.substr(3));
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(value)) {
    throw ConfigError("option '" + key + "': '" + text + "' is not a number");
  }
  return value;
}

int parse_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError("option '" + key + "': '" + text + "' is not an integer");
  }
  return value;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> values;
  for (const auto& part : split(text, ',')) values.push_back(parse_real(key, part));
  if (values.empty()) throw ConfigError("option '" + key + "' needs at least one value");
  return values;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError("option '" + key + "': '" + text + "' is not a boolean");
}

bool is_mismatch_family(const std::string& name) {
  return name == "mismatch-sweep" || name == "loss-sweep" || name == "waist-mismatch" ||
         name == "sinc-compare" || name == "gouy-map";
}

// Tilt is studied in the Fourier plane, displacement and size in the image
// plane.
Plane default_plane(MismatchKind kind) {
  return kind == MismatchKind::tilt ? Plane::fourier : Plane::image;
}

Sweep default_parameter_sweep(MismatchKind kind) {
  if (kind == MismatchKind::size) return {0.25, 4.0, 76};
  return {0.0, 3.0, 61};
}

std::vector<double> default_gouy(const std::string& scenario, MismatchKind kind) {
  const bool size = kind == MismatchKind::size;
  if (scenario == "mismatch-sweep") {
    return size ? std::vector<double>{0.0, 0.001, 0.002, 0.003}
                : std::vector<double>{0.0, 0.002, 0.004, 0.006};
  }
  if (scenario == "sinc-compare") {
    return size ? std::vector<double>{0.0, 0.001} : std::vector<double>{0.0, 0.002};
  }
  if (scenario == "sideband-sweep") return {0.002, 0.006};
  return {0.0};
}

void require_range(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

template <typename F>
std::vector<CsvRow> parallel_rows(std::size_t count, F&& make_row) {
  std::vector<CsvRow> rows(count);
  tbb::parallel_for(std::size_t{0}, count, [&](std::size_t i) { rows[i] = make_row(i); });
  return rows;
}

CsvTable table_from(std::vector<std::string> columns, std::vector<CsvRow> rows) {
  CsvTable t(std::move(columns));
  for (auto& row : rows) t.add_row(std::move(row));
  return t;
}

std::vector<int> reported_orders(int n_max) {
  std::vector<int> orders;
  for (int n = 0; n <= std::min(n_max, kMaxReportedOrder); ++n) orders.push_back(n);
  return orders;
}

// ---------------------------------------------------------------------------
// Squeezing spectra (fig2)

ScenarioOutput run_mode_spectrum(const ResolvedConfig& cfg) {
  const ModeBasis basis(cfg.n_max);
  struct Item {
    double xi;
    int order;
  };
  std::vector<Item> items;
  for (double xi : cfg.xi) {
    for (int n = 0; n <= cfg.n_max; ++n) items.push_back({xi, n});
  }
  std::vector<QuadratureCovariance> covs;
  for (double xi : cfg.xi) {
    covs.push_back(covariance(
        gaussian_opo(xi, cfg.g00, cfg.t_i.front(), cfg.t_l, kTwoPi * cfg.gouy.front(), cfg.n_max),
        cfg.omega));
  }
  auto rows = parallel_rows(items.size(), [&](std::size_t i) -> CsvRow {
    const Item& it = items[i];
    const std::size_t xi_index = static_cast<std::size_t>(
        std::find(cfg.xi.begin(), cfg.xi.end(), it.xi) - cfg.xi.begin());
    const QuadratureCovariance& v = covs[xi_index];
    const std::size_t mode = basis.index_of({it.order, 0});
    const SqueezingResult s = block_squeezing(v.block(mode));
    return {it.xi,
            static_cast<long long>(it.order),
            static_cast<long long>(it.order + 1),
            cfg.g00 * std::pow(mu_from_xi(it.xi), it.order),
            s.s_x,
            s.s_p,
            s.theta,
            db(s.s_x),
            -db(s.s_p),
            schmidt_number(it.xi),
            truncated_schmidt_number(it.xi, basis)};
  });
  return {table_from({"xi", "order", "degeneracy", "gain", "s_x", "s_p", "theta", "squeezing_db",
                      "antisqueezing_db", "schmidt_number", "truncated_schmidt_number"},
                     std::move(rows)),
          {}};
}

// One row per (curve, sweep value, mode order) for a spectrum along one
// swept variable.
ScenarioOutput run_spectrum_sweep(const ResolvedConfig& cfg, bool sweep_gouy) {
  const ModeBasis basis(cfg.n_max);
  const std::vector<double> xs = cfg.sweep.values();
  const std::vector<double>& curves = sweep_gouy ? cfg.t_i : cfg.gouy;
  const std::vector<int> orders = reported_orders(cfg.n_max);
  const double xi = cfg.xi.front();

  const std::size_t points = curves.size() * xs.size();
  std::vector<std::vector<SqueezingResult>> per_point(points);
  tbb::parallel_for(std::size_t{0}, points, [&](std::size_t i) {
    const double curve = curves[i / xs.size()];
    const double x = xs[i % xs.size()];
    const double t_i = sweep_gouy ? curve : cfg.t_i.front();
    const double gouy = sweep_gouy ? x : curve;
    const double omega = sweep_gouy ? cfg.omega : x;
    const QuadratureCovariance v =
        covariance(gaussian_opo(xi, cfg.g00, t_i, cfg.t_l, kTwoPi * gouy, cfg.n_max), omega);
    for (int n : orders) per_point[i].push_back(block_squeezing(v.block(basis.index_of({n, 0}))));
  });

  CsvTable table({sweep_gouy ? "t_i" : "gouy_over_2pi", sweep_gouy ? "gouy_over_2pi" : "omega",
                  "order", "s_x", "s_p", "theta", "squeezing_db", "antisqueezing_db"});
  for (std::size_t i = 0; i < points; ++i) {
    for (std::size_t o = 0; o < orders.size(); ++o) {
      const SqueezingResult& s = per_point[i][o];
      table.add_row({curves[i / xs.size()], xs[i % xs.size()], static_cast<long long>(orders[o]),
                     s.s_x, s.s_p, s.theta, db(s.s_x), -db(s.s_p)});
    }
  }
  return {std::move(table), {}};
}

// ---------------------------------------------------------------------------
// Mismatch family (fig4, fig5, fig6)

MismatchSpec spec_for(const ResolvedConfig& cfg, double parameter) {
  MismatchSpec spec;
  spec.kind = cfg.kind;
  spec.parameter = parameter;
  spec.plane = cfg.plane;
  spec.lo_phase = cfg.lo_phase;
  return spec;
}

double single_mode_s00(const ResolvedConfig& cfg) {
  const double eta = cfg.t_i.front() / (cfg.t_i.front() + cfg.t_l);
  return analytic_squeezing(cfg.g00, 0.0, cfg.omega, eta).s_x;
}

struct SourceCurve {
  double gouy = 0.0;
  double eta_extra = 1.0;
  std::vector<QuadratureCovariance> sources;  // one per compared model
};

// Rows: one per (gouy, eta_extra, parameter). `models` builds the compared
// multimode sources at one Gouy phase; each contributes a "<name>_db" column.
ScenarioOutput run_mismatch_family(
    const ResolvedConfig& cfg, const std::vector<std::string>& model_names,
    const std::function<std::vector<QuadratureCovariance>(double theta_g)>& models) {
  const std::vector<double> params = cfg.sweep.values();
  const double s00 = single_mode_s00(cfg);

  std::vector<std::vector<QuadratureCovariance>> per_gouy(cfg.gouy.size());
  for (std::size_t g = 0; g < cfg.gouy.size(); ++g) per_gouy[g] = models(kTwoPi * cfg.gouy[g]);

  struct Item {
    std::size_t gouy;
    double eta_extra;
    double parameter;
  };
  std::vector<Item> items;
  for (std::size_t g = 0; g < cfg.gouy.size(); ++g) {
    for (double e : cfg.eta_extra) {
      for (double p : params) items.push_back({g, e, p});
    }
  }

  const bool single_model = model_names.size() == 1;
  auto rows = parallel_rows(items.size(), [&](std::size_t i) -> CsvRow {
    const Item& it = items[i];
    const MismatchSpec spec = spec_for(cfg, it.parameter);
    CsvRow row{cfg.gouy[it.gouy], it.eta_extra, it.parameter};
    MismatchPoint reference;
    std::vector<double> variances;
    double weight = 0.0;
    for (const auto& v : per_gouy[it.gouy]) {
      reference = evaluate_mismatch(v, s00, spec, it.eta_extra);
      variances.push_back(reference.multimode);
      weight = coupling_vector(spec, ModeBasis(v.n_max)).weight();
    }
    row.push_back(reference.beta00_sq);
    row.push_back(weight);
    if (single_model) row.push_back(variances.front());
    for (double var : variances) row.push_back(db(var));
    row.push_back(db(reference.single_mode));
    row.push_back(reference.infinite_squeezing > 0.0 ? CsvCell{db(reference.infinite_squeezing)}
                                                     : CsvCell{std::monostate{}});
    return row;
  });

  std::vector<std::string> columns{"gouy_over_2pi", "eta_extra", "parameter", "beta00_sq",
                                   "coupled_weight"};
  if (single_model) columns.push_back(model_names.front() + "_var");
  for (const auto& name : model_names) columns.push_back(name + "_db");
  columns.push_back("single_mode_db");
  columns.push_back("infinite_db");
  return {table_from(std::move(columns), std::move(rows)), {}};
}

ScenarioOutput run_mismatch_sweep(const ResolvedConfig& cfg) {
  return run_mismatch_family(cfg, {"multimode"}, [&](double theta_g) {
    return std::vector<QuadratureCovariance>{covariance(
        gaussian_opo(cfg.xi.front(), cfg.g00, cfg.t_i.front(), cfg.t_l, theta_g, cfg.n_max),
        cfg.omega)};
  });
}

ScenarioOutput run_waist_mismatch(const ResolvedConfig& cfg) {
  const ModeBasis basis(cfg.n_max);
  const GainMatrix mismatched =
      waist_mismatch_gain(cfg.g00, cfg.xi.front(), 1.0, cfg.wh_ratio, basis);
  ScenarioOutput out = run_mismatch_family(cfg, {"mismatched", "matched"}, [&](double theta_g) {
    OpoConfig opo = gaussian_opo(cfg.xi.front(), cfg.g00, cfg.t_i.front(), cfg.t_l, theta_g,
                                 cfg.n_max);
    const QuadratureCovariance matched = covariance(opo, cfg.omega);
    opo.gain = mismatched;
    return std::vector<QuadratureCovariance>{covariance(opo, cfg.omega), matched};
  });
  out.extras["wh_ratio"] = cfg.wh_ratio;
  out.extras["gain_00_00"] = mismatched.entries(0, 0);
  return out;
}

ScenarioOutput run_sinc_compare(const ResolvedConfig& cfg) {
  const double xi = cfg.xi.front();
  ScenarioOutput head{CsvTable({}), {}};
  double alpha = 0.0;
  if (cfg.alpha) {
    alpha = *cfg.alpha;
  } else {
    const AlphaFit fit = fit_alpha(xi);
    alpha = fit.alpha;
    head.extras["alpha_fit_schmidt_number"] = fit.schmidt_number;
    head.extras["alpha_fit_level"] = fit.level;
  }
  head.extras["alpha"] = alpha;
  head.extras["target_schmidt_number"] = schmidt_number(xi);

  SincKernelParams params{xi, alpha, 1.0};
  const PumpWaistFit waist = fit_pump_waist(params, 1.0);
  params.pump_waist = waist.pump_waist;
  head.extras["pump_waist_over_cavity_waist"] = waist.pump_waist;
  head.extras["first_mode_overlap"] = waist.overlap;

  const ModeBasis basis(cfg.n_max);
  const GainMatrix sinc = sinc_gain(params, 1.0, basis, cfg.g00);
  if (cfg.n_max >= 4) {
    head.extras["gain_00_04"] = sinc.entries(0, basis.index_of({0, 4}));
    head.extras["gain_00_22"] = sinc.entries(0, basis.index_of({2, 2}));
  }
  head.extras["gain_00_00"] = sinc.entries(0, 0);

  ScenarioOutput out = run_mismatch_family(cfg, {"sinc", "gaussian"}, [&](double theta_g) {
    OpoConfig opo = gaussian_opo(xi, cfg.g00, cfg.t_i.front(), cfg.t_l, theta_g, cfg.n_max);
    const QuadratureCovariance gaussian = covariance(opo, cfg.omega);
    opo.gain = sinc;
    return std::vector<QuadratureCovariance>{covariance(opo, cfg.omega), gaussian};
  });
  out.extras = std::move(head.extras);
  return out;
}

// ---------------------------------------------------------------------------
// Gouy map (fig8)

ScenarioOutput run_gouy_map(const ResolvedConfig& cfg) {
  const std::vector<double> axis = cfg.sweep.values();
  const MismatchSpec spec = spec_for(cfg, cfg.param);
  const double s00 = single_mode_s00(cfg);
  const double eta_extra = cfg.eta_extra.front();

  auto rows = parallel_rows(axis.size() * axis.size(), [&](std::size_t i) -> CsvRow {
    const double dl1 = axis[i / axis.size()];
    const double dl2 = axis[i % axis.size()];
    const std::optional<double> theta = gouy_phase(dl1, dl2);
    if (!theta) {
      return {dl1, dl2, std::string("unstable"), std::monostate{}, std::monostate{},
              std::monostate{}, std::monostate{}};
    }
    const QuadratureCovariance v = covariance(
        gaussian_opo(cfg.xi.front(), cfg.g00, cfg.t_i.front(), cfg.t_l, *theta, cfg.n_max),
        cfg.omega);
    const MismatchPoint p = evaluate_mismatch(v, s00, spec, eta_extra);
    return {dl1,
            dl2,
            std::string("stable"),
            *theta / kTwoPi,
            db(p.multimode),
            db(p.single_mode),
            enhancement_factor(p.multimode, p.single_mode)};
  });
  ScenarioOutput out{table_from({"dl1_over_r", "dl2_over_r", "status", "gouy_over_2pi",
                                 "multimode_db", "single_mode_db", "enhancement_db"},
                                std::move(rows)),
                     {}};
  out.extras["mismatch_parameter"] = cfg.param;
  return out;
}

ScenarioOutput run_once(const ResolvedConfig& cfg) {
  const std::string& s = cfg.scenario;
  if (s == "mode-spectrum") return run_mode_spectrum(cfg);
  if (s == "gouy-sweep") return run_spectrum_sweep(cfg, true);
  if (s == "sideband-sweep") return run_spectrum_sweep(cfg, false);
  if (s == "mismatch-sweep" || s == "loss-sweep") return run_mismatch_sweep(cfg);
  if (s == "waist-mismatch") return run_waist_mismatch(cfg);
  if (s == "sinc-compare") return run_sinc_compare(cfg);
  if (s == "gouy-map") return run_gouy_map(cfg);
  throw ConfigError("unknown scenario '" + s + "'");
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Appends the max |dB| difference against a rerun at n_max + 5.
void append_drift(CsvTable& table, const CsvTable& refined) {
  std::vector<std::size_t> db_columns;
  for (std::size_t c = 0; c < table.columns().size(); ++c) {
    if (ends_with(table.columns()[c], "_db")) db_columns.push_back(c);
  }
  std::vector<std::string> columns = table.columns();
  columns.push_back("drift_db");
  CsvTable out(columns);
  for (std::size_t r = 0; r < table.rows().size(); ++r) {
    CsvRow row = table.rows()[r];
    const CsvRow& other = refined.rows().at(r);
    CsvCell drift = std::monostate{};
    for (std::size_t c : db_columns) {
      const auto* a = std::get_if<double>(&row[c]);
      const auto* b = std::get_if<double>(&other[c]);
      if (!a || !b) continue;
      const double d = std::abs(*a - *b);
      const auto* current = std::get_if<double>(&drift);
      if (!current || d > *current) drift = d;
    }
    row.push_back(drift);
    out.add_row(std::move(row));
  }
  table = std::move(out);
}

}  // namespace

// ---------------------------------------------------------------------------

Sweep Sweep::parse(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ConfigError("sweep '" + text + "' must look like MIN:MAX:STEPS");
  Sweep s{parse_real("sweep", parts[0]), parse_real("sweep", parts[1]),
          parse_int("sweep", parts[2])};
  if (s.steps < 2) throw ConfigError("sweep '" + text + "' needs at least 2 steps");
  if (!(s.max > s.min)) throw ConfigError("sweep '" + text + "' needs MAX > MIN");
  return s;
}

std::vector<double> Sweep::values() const {
  std::vector<double> v(steps);
  for (int i = 0; i < steps; ++i) {
    // Weighted form keeps the midpoint of a symmetric range at exactly 0.
    v[i] = (min * (steps - 1 - i) + max * i) / (steps - 1);
  }
  return v;
}

std::string Sweep::str() const {
  return format_double(min) + ":" + format_double(max) + ":" + std::to_string(steps);
}

void ScenarioConfig::set(const std::string& raw_key, const std::string& value) {
  std::string key = trim(raw_key);
  std::replace(key.begin(), key.end(), '_', '-');
  if (key == "scenario") {
    scenario = trim(value);
  } else if (key == "xi") {
    xi = parse_list(key, value);
  } else if (key == "ti") {
    t_i = parse_list(key, value);
  } else if (key == "tl") {
    t_l = parse_real(key, value);
  } else if (key == "g00") {
    g00 = parse_real(key, value);
  } else if (key == "omega") {
    omega = parse_real(key, value);
  } else if (key == "gouy") {
    gouy = parse_list(key, value);
  } else if (key == "nmax") {
    n_max = parse_int(key, value);
  } else if (key == "kind") {
    kind = parse_mismatch_kind(trim(value));
  } else if (key == "plane") {
    plane = parse_plane(trim(value));
  } else if (key == "lo-phase") {
    lo_phase = parse_real(key, value);
  } else if (key == "sweep") {
    sweep = Sweep::parse(trim(value));
  } else if (key == "eta-extra") {
    eta_extra = parse_list(key, value);
  } else if (key == "param") {
    param = parse_real(key, value);
  } else if (key == "wh-ratio") {
    wh_ratio = parse_real(key, value);
  } else if (key == "alpha") {
    alpha = parse_real(key, value);
  } else if (key == "convergence") {
    convergence = parse_bool(key, value);
  } else if (key == "out") {
    out = trim(value);
  } else {
    throw ConfigError("unknown option '" + raw_key + "'");
  }
}

void ScenarioConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(number) + ": expected 'key = value'");
    }
    try {
      set(line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(number) + ": " + e.what());
    }
  }
}

const std::vector<ScenarioInfo>& scenarios() {
  static const std::vector<std::string> common{"xi", "ti", "tl", "g00", "nmax", "convergence",
                                               "out"};
  auto with = [](std::vector<std::string> extra) {
    std::vector<std::string> all = common;
    all.insert(all.end(), extra.begin(), extra.end());
    return all;
  };
  static const std::vector<ScenarioInfo> list{
      {"mode-spectrum", {"fig2a"}, "Squeezing and antisqueezing per mode order.",
       with({"omega", "gouy"})},
      {"gouy-sweep", {"fig2b", "fig2c"}, "Squeezing and angle versus theta_G/2pi per mode order.",
       with({"omega", "sweep"})},
      {"sideband-sweep", {"fig2d", "fig2e"}, "Squeezing and angle versus sideband frequency.",
       with({"gouy", "sweep"})},
      {"mismatch-sweep", {"fig4a", "fig4b"},
       "Squeezing delivered into a mismatched target against single-mode references.",
       with({"omega", "gouy", "kind", "plane", "lo-phase", "sweep", "eta-extra"})},
      {"loss-sweep", {"fig5"}, "Mismatch sweep behind extra loss.",
       with({"omega", "gouy", "kind", "plane", "lo-phase", "sweep", "eta-extra"})},
      {"waist-mismatch", {"fig6a", "fig6b"},
       "Mismatch sweep for a Hamiltonian waist different from the cavity waist.",
       with({"omega", "gouy", "kind", "plane", "lo-phase", "sweep", "eta-extra", "wh-ratio"})},
      {"sinc-compare", {"fig6c", "fig6d"},
       "Mismatch sweep with the exact sinc kernel against the Gaussian approximation.",
       with({"omega", "gouy", "kind", "plane", "lo-phase", "sweep", "eta-extra", "alpha"})},
      {"gouy-map", {"fig8"}, "Enhancement factor over cavity detunings at a fixed mismatch.",
       with({"omega", "kind", "plane", "lo-phase", "sweep", "eta-extra", "param"})},
  };
  return list;
}

const ScenarioInfo& find_scenario(const std::string& name) {
  for (const auto& s : scenarios()) {
    if (s.name == name) return s;
  }
  std::string names;
  for (const auto& s : scenarios()) names += (names.empty() ? "" : ", ") + s.name;
  throw ConfigError("unknown scenario '" + name + "'; valid scenarios: " + names);
}

std::string list_scenarios_json() {
  json out = json::array();
  for (const auto& s : scenarios()) {
    out.push_back({{"name", s.name},
                   {"figures", s.figures},
                   {"description", s.description},
                   {"options", s.options}});
  }
  return out.dump(2);
}

ResolvedConfig resolve(const ScenarioConfig& cfg) {
  const ScenarioInfo& info = find_scenario(cfg.scenario);
  ResolvedConfig r;
  r.scenario = info.name;
  const std::string& s = r.scenario;

  r.xi = cfg.xi.value_or(s == "mode-spectrum" ? std::vector<double>{1.0 / 9.0, 1.0 / 81.0}
                                              : std::vector<double>{1.0 / 81.0});
  r.t_i = cfg.t_i.value_or(s == "gouy-sweep" ? std::vector<double>{0.1, 0.2}
                                             : std::vector<double>{0.1});
  r.t_l = cfg.t_l.value_or(0.0);
  r.g00 = cfg.g00.value_or(0.5);
  r.omega = cfg.omega.value_or(is_mismatch_family(s) ? std::numbers::pi / 25.0 : 0.0);
  r.n_max = cfg.n_max.value_or(20);
  r.kind = cfg.kind.value_or(MismatchKind::displacement);
  r.plane = cfg.plane.value_or(default_plane(r.kind));
  r.lo_phase = cfg.lo_phase;
  r.gouy = cfg.gouy.value_or(default_gouy(s, r.kind));
  r.eta_extra = cfg.eta_extra.value_or(s == "loss-sweep" ? std::vector<double>{1.0, 0.95, 0.9}
                                                         : std::vector<double>{1.0});
  r.param = cfg.param.value_or(parameter_for_overlap(r.kind, 0.5));
  r.wh_ratio = cfg.wh_ratio.value_or(1.4);
  r.alpha = cfg.alpha;
  r.convergence = cfg.convergence;

  if (s == "gouy-sweep") {
    r.sweep = cfg.sweep.value_or(Sweep{0.0, 0.01, 101});
  } else if (s == "sideband-sweep") {
    r.sweep = cfg.sweep.value_or(Sweep{0.0, 2.0, 201});
  } else if (s == "gouy-map") {
    r.sweep = cfg.sweep.value_or(Sweep{-0.01, 0.01, 41});
  } else {
    r.sweep = cfg.sweep.value_or(default_parameter_sweep(r.kind));
  }

  for (double xi : r.xi) require_range(xi > 0.0 && xi <= 1.0, "xi must lie in (0, 1]");
  for (double t : r.t_i) require_range(t > 0.0 && t <= 1.0, "ti must lie in (0, 1]");
  require_range(r.t_l >= 0.0 && r.t_l < 1.0, "tl must lie in [0, 1)");
  require_range(r.g00 >= 0.0, "g00 must be non-negative");
  require_range(r.n_max >= 0 && r.n_max <= kMaxNmax,
                "nmax must lie in [0, " + std::to_string(kMaxNmax) + "]");
  for (double e : r.eta_extra) require_range(e >= 0.0 && e <= 1.0, "eta-extra must lie in [0, 1]");
  require_range(r.wh_ratio > 0.0, "wh-ratio must be positive");
  if (r.alpha) require_range(*r.alpha > 0.0, "alpha must be positive");
  if (is_mismatch_family(s) && s != "gouy-map") {
    const double lowest = r.sweep.min;
    if (r.kind == MismatchKind::size) {
      require_range(lowest > 0.0, "size sweep must stay above 0 (parameter is w/w_t)");
    } else {
      require_range(lowest >= 0.0, "displacement and tilt sweeps must be non-negative");
    }
  }
  if (s == "gouy-map") {
    require_range(r.sweep.min > -1.0 && r.sweep.max < 1.0, "gouy-map sweep must stay inside (-1, 1)");
    require_range(r.kind == MismatchKind::size ? r.param > 0.0 : r.param >= 0.0,
                  "param is out of range for the mismatch kind");
  }
  if (s == "sideband-sweep") require_range(r.sweep.min >= 0.0, "omega sweep must be non-negative");
  if (s == "mode-spectrum" && r.n_max < 0) throw ConfigError("nmax must be non-negative");
  return r;
}

ScenarioOutput run_scenario(const ResolvedConfig& cfg) {
  ScenarioOutput out = run_once(cfg);
  if (cfg.convergence) {
    ResolvedConfig refined = cfg;
    refined.n_max = cfg.n_max + 5;
    if (auto it = out.extras.find("alpha"); it != out.extras.end()) refined.alpha = it->second;
    const ScenarioOutput second = run_once(refined);
    append_drift(out.table, second.table);
  }
  return out;
}

std::string manifest_json(const ResolvedConfig& cfg, const ScenarioOutput& output) {
  json params{{"xi", cfg.xi},
              {"ti", cfg.t_i},
              {"tl", cfg.t_l},
              {"g00", cfg.g00},
              {"omega", cfg.omega},
              {"gouy_over_2pi", cfg.gouy},
              {"nmax", cfg.n_max},
              {"kind", to_string(cfg.kind)},
              {"plane", to_string(cfg.plane)},
              {"lo_phase", spec_for(cfg, 0.0).effective_lo_phase()},
              {"sweep", cfg.sweep.str()},
              {"eta_extra", cfg.eta_extra},
              {"param", cfg.param},
              {"wh_ratio", cfg.wh_ratio},
              {"convergence", cfg.convergence}};
  if (cfg.alpha) params["alpha"] = *cfg.alpha;
  json extras = json::object();
  for (const auto& [k, v] : output.extras) extras[k] = v;
  json m{{"scenario", cfg.scenario},
         {"figures", find_scenario(cfg.scenario).figures},
         {"version", kVersion},
         {"parameters", params},
         {"columns", output.table.columns()},
         {"rows", output.table.rows().size()},
         {"results", extras}};
  return m.dump(2) + "\n";
}

OpoConfig gaussian_opo(double xi, double g00, double t_i, double t_l, double theta_g, int n_max) {
  OpoConfig cfg;
  cfg.basis = ModeBasis(n_max);
  cfg.gain = gaussian_gain(g00, xi, cfg.basis);
  cfg.t_i = t_i;
  cfg.t_l = t_l;
  cfg.theta_g = theta_g;
  return cfg;
}

SqueezingResult block_squeezing(const Eigen::Matrix2d& block) {
  const double mean = 0.5 * (block(0, 0) + block(1, 1));
  const double half = 0.5 * (block(0, 0) - block(1, 1));
  const double cross = 0.5 * (block(0, 1) + block(1, 0));
  const double radius = std::hypot(half, cross);
  SqueezingResult r;
  r.s_x = mean - radius;
  r.s_p = mean + radius;
  if (radius < 1e-15 * std::max(1.0, mean)) return r;
  // var(theta) = mean + half cos 2theta + cross sin 2theta, minimal opposite
  // to the (half, cross) direction.
  double theta = 0.5 * (std::atan2(cross, half) + std::numbers::pi);
  if (theta > std::numbers::pi / 2.0) theta -= std::numbers::pi;
  r.theta = theta;
  return r;
}

MismatchPoint evaluate_mismatch(const QuadratureCovariance& v, double s00,
                                const MismatchSpec& spec, double eta_extra) {
  const ModeBasis basis(v.n_max);
  const CouplingVector c = coupling_vector(spec, basis);
  const double beta00_sq = std::norm(c.coefficients.front());
  MismatchPoint p;
  p.beta00_sq = beta00_sq;
  p.multimode = target_variance(eta_extra == 1.0 ? v : apply_loss(v, eta_extra), c);
  const double lossy_s00 = eta_extra * s00 + 1.0 - eta_extra;
  const double lossy_perfect = 1.0 - eta_extra;
  p.single_mode = reference_variances(beta00_sq, lossy_s00).single_mode;
  p.infinite_squeezing = reference_variances(beta00_sq, lossy_perfect).single_mode;
  return p;
}

}  // namespace simopo
