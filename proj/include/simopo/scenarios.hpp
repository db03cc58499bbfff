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

// Named experiments that turn the library into CSV datasets.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simopo/csv.hpp"
#include "simopo/mismatch.hpp"
#include "simopo/opo.hpp"

namespace simopo {

/// Inclusive linear range with `steps` points.
struct Sweep {
  double min = 0.0;
  double max = 1.0;
  int steps = 2;

  /// "MIN:MAX:STEPS"; throws ConfigError.
  static Sweep parse(const std::string& text);
  std::vector<double> values() const;
  std::string str() const;
};

/// Settings shared by every scenario. Unset fields take the scenario's
/// default. List-valued settings accept comma-separated values and produce
/// one curve per value.
struct ScenarioConfig {
  std::string scenario;
  std::optional<std::vector<double>> xi;
  std::optional<std::vector<double>> t_i;
  std::optional<double> t_l;
  std::optional<double> g00;
  std::optional<double> omega;
  /// theta_G / 2 pi
  std::optional<std::vector<double>> gouy;
  std::optional<int> n_max;
  std::optional<MismatchKind> kind;
  std::optional<Plane> plane;
  std::optional<double> lo_phase;
  std::optional<Sweep> sweep;
  std::optional<std::vector<double>> eta_extra;
  /// Fixed mismatch parameter (gouy-map); defaults to the 50% overlap point.
  std::optional<double> param;
  /// w_H / w_c for waist-mismatch.
  std::optional<double> wh_ratio;
  /// Skip the alpha fit in sinc-compare.
  std::optional<double> alpha;
  bool convergence = false;
  std::string out;

  /// Set one option by its flag name without dashes ("xi", "lo-phase", ...).
  /// Throws ConfigError on unknown keys or malformed values.
  void set(const std::string& key, const std::string& value);
  /// key = value lines; '#' starts a comment. Throws ConfigError.
  void load_file(const std::string& path);
};

/// Fully resolved parameters of one run.
struct ResolvedConfig {
  std::string scenario;
  std::vector<double> xi;
  std::vector<double> t_i;
  double t_l = 0.0;
  double g00 = 0.5;
  double omega = 0.0;
  std::vector<double> gouy;
  int n_max = 20;
  MismatchKind kind = MismatchKind::displacement;
  Plane plane = Plane::image;
  std::optional<double> lo_phase;
  Sweep sweep;
  std::vector<double> eta_extra;
  double param = 0.0;
  double wh_ratio = 1.0;
  std::optional<double> alpha;
  bool convergence = false;
};

struct ScenarioInfo {
  std::string name;
  std::vector<std::string> figures;
  std::string description;
  /// Option names the scenario reads.
  std::vector<std::string> options;
};

const std::vector<ScenarioInfo>& scenarios();
/// Throws ConfigError listing the valid names.
const ScenarioInfo& find_scenario(const std::string& name);
/// JSON array describing every scenario and its options.
std::string list_scenarios_json();

/// Applies scenario defaults and validates. Throws ConfigError.
ResolvedConfig resolve(const ScenarioConfig& cfg);

struct ScenarioOutput {
  CsvTable table;
  /// Scenario-specific scalars recorded in the manifest (fitted alpha, ...).
  std::map<std::string, double> extras;
};

/// Runs a scenario. Rows are computed in parallel into fixed slots, so the
/// output does not depend on scheduling.
ScenarioOutput run_scenario(const ResolvedConfig& cfg);

/// JSON manifest of a finished run.
std::string manifest_json(const ResolvedConfig& cfg, const ScenarioOutput& output);

// Building blocks shared by the scenarios and the acceptance checks.

/// Gaussian-kernel OPO with diagonal gain g00 mu^{m+n}.
OpoConfig gaussian_opo(double xi, double g00, double t_i, double t_l, double theta_g, int n_max);

/// Rotated-quadrature squeezing of one mode's 2x2 covariance block.
SqueezingResult block_squeezing(const Eigen::Matrix2d& block);

/// Variances delivered into a mismatched target.
struct MismatchPoint {
  double beta00_sq = 1.0;
  double multimode = 1.0;
  double single_mode = 1.0;
  double infinite_squeezing = 1.0;
};

/// Multimode source V against the single-mode references with HG00
/// variance s00, all behind the same extra efficiency.
MismatchPoint evaluate_mismatch(const QuadratureCovariance& v, double s00,
                                const MismatchSpec& spec, double eta_extra = 1.0);

}  // namespace simopo
