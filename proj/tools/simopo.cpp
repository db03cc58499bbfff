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

// simopo: run named multimode-squeezing scenarios and write CSV datasets.
//
//   simopo run <scenario> [options]
//   simopo list [--json]
//
// Exit codes: 0 success, 2 configuration error, 3 unstable or over-threshold
// configuration, 1 anything else.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "simopo/errors.hpp"
#include "simopo/scenarios.hpp"
#include "simopo/version.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitThreshold = 3;

struct Option {
  const char* flag;
  const char* key;
  const char* help;
};

constexpr Option kOptions[] = {
    {"--xi", "xi", "Focusing parameter xi (comma list allowed)"},
    {"--ti", "ti", "Input-coupler transmittance T_i (comma list allowed)"},
    {"--tl", "tl", "Intracavity loss transmittance T_l"},
    {"--g00", "g00", "Normalized HG00 gain"},
    {"--omega", "omega", "Normalized sideband frequency (accepts pi/N)"},
    {"--gouy", "gouy", "Gouy phase theta_G/2pi (comma list allowed)"},
    {"--nmax", "nmax", "Highest mode order m+n"},
    {"--kind", "kind", "Mismatch kind: disp, tilt or size"},
    {"--plane", "plane", "Target plane: image or fourier"},
    {"--lo-phase", "lo-phase", "Extra local-oscillator phase in radians"},
    {"--sweep", "sweep", "Swept range MIN:MAX:STEPS"},
    {"--eta-extra", "eta-extra", "Extra detection efficiency (comma list allowed)"},
    {"--param", "param", "Fixed mismatch parameter (gouy-map)"},
    {"--wh-ratio", "wh-ratio", "Hamiltonian to cavity waist ratio (waist-mismatch)"},
    {"--alpha", "alpha", "Sinc-kernel alpha; skips the fit (sinc-compare)"},
    {"--out", "out", "Output CSV path; stdout when omitted"},
};

int run(const std::string& scenario, const std::string& config_path,
        const std::map<std::string, std::string>& flags, bool convergence) {
  simopo::ScenarioConfig cfg;
  if (!config_path.empty()) cfg.load_file(config_path);
  cfg.scenario = scenario;
  for (const auto& [key, value] : flags) cfg.set(key, value);
  if (convergence) cfg.convergence = true;

  const simopo::ResolvedConfig resolved = simopo::resolve(cfg);
  const simopo::ScenarioOutput output = simopo::run_scenario(resolved);
  if (cfg.out.empty()) {
    output.table.write(std::cout);
    return 0;
  }
  std::ofstream csv(cfg.out, std::ios::binary);
  if (!csv) throw simopo::ConfigError("cannot write '" + cfg.out + "'");
  output.table.write(csv);
  std::ofstream manifest(cfg.out + ".manifest.json", std::ios::binary);
  manifest << simopo::manifest_json(resolved, output);
  if (!csv || !manifest) throw simopo::Error("failed writing output files");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multimode squeezed light from a self-imaging OPO"};
  app.set_version_flag("--version", std::string(simopo::kVersion));
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run a scenario and write its CSV dataset");
  std::string scenario;
  std::string config_path;
  bool convergence = false;
  std::map<std::string, std::string> raw;
  run_cmd->add_option("scenario", scenario, "Scenario name (see 'simopo list')")->required();
  run_cmd->add_option("--config", config_path, "key = value file; flags override it");
  run_cmd->add_flag("--convergence", convergence, "Add a drift column from a rerun at nmax+5");
  for (const Option& o : kOptions) {
    run_cmd->add_option_function<std::string>(
        o.flag, [&raw, key = o.key](const std::string& v) { raw[key] = v; }, o.help);
  }

  auto* list_cmd = app.add_subcommand("list", "List scenarios");
  bool as_json = false;
  list_cmd->add_flag("--json", as_json, "Print machine-readable schemas");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (list_cmd->parsed()) {
      if (as_json) {
        std::cout << simopo::list_scenarios_json() << '\n';
      } else {
        for (const auto& s : simopo::scenarios()) {
          std::cout << s.name << "\t";
          for (std::size_t i = 0; i < s.figures.size(); ++i) {
            std::cout << (i ? "," : "") << s.figures[i];
          }
          std::cout << "\t" << s.description << '\n';
        }
      }
      return 0;
    }
    return run(scenario, config_path, raw, convergence);
  } catch (const simopo::ThresholdError& e) {
    std::cerr << "simopo: " << e.what() << '\n';
    return kExitThreshold;
  } catch (const simopo::ConfigError& e) {
    std::cerr << "simopo: " << e.what() << '\n';
    return kExitConfig;
  } catch (const simopo::DomainError& e) {
    std::cerr << "simopo: invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "simopo: " << e.what() << '\n';
    return 1;
  }
}
