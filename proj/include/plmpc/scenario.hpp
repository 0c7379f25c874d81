// Copyright 2026 The plmpc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plmpc/analysis.hpp"
#include "plmpc/config.hpp"
#include "plmpc/frit.hpp"
#include "plmpc/mpc.hpp"
#include "plmpc/plants.hpp"

namespace plmpc {

enum class PlantKind { kHammerstein, kBoucWen, kCsvReplay };

struct ScenarioConfig {
  std::string name = "scenario";
  PlantKind plant = PlantKind::kHammerstein;
  std::string boucwen_params;  ///< empty: built-in defaults
  std::optional<std::pair<double, double>> actuator;
  std::string record_path;  ///< csv-replay only

  double ts = 1.0;
  std::string reference_type = "staircase";
  std::vector<double> stair_values;
  std::vector<double> stair_durations;
  double sin_amp = 0.0;
  double sin_offset = 0.0;
  double sin_freq = 0.0;
  double sin_duration = 0.0;

  std::array<double, 3> theta0{};
  std::optional<double> tc0;
  EfritConfig frit;

  MpcWeights weights;
  InputConstraints limits;

  Alignment alignment = Alignment::kSame;
  double settle_seconds = 0.0;

  bool bode = false;
  std::vector<double> bode_freqs;  ///< empty: bode_grid()
  SweepOptions bode_options;

  std::uint64_t seed = 1;
  std::string out_dir = "out";

  void validate() const;
};

/// Known keys, for require_known and documentation.
const std::vector<std::string>& scenario_keys();

/// Relative paths in cfg resolve against base_dir.
ScenarioConfig scenario_from_config(const Config& cfg,
                                    const std::string& base_dir = ".");
ScenarioConfig load_scenario(const std::string& path);

std::unique_ptr<Plant> make_plant(const ScenarioConfig& cfg);
TimeSeries make_reference(const ScenarioConfig& cfg);

/// Step 1: closed loop with theta0 on the scenario reference, or the CSV.
IoRecord initial_record(const ScenarioConfig& cfg);
ThetaFull initial_theta(const ScenarioConfig& cfg);

struct RunOptions {
  std::optional<ThetaFull> theta_override;
  bool closed_loop = true;  ///< false: steps 1-4 only
  bool bode = false;        ///< also when cfg.bode
  bool write = true;
};

struct Report {
  std::string name;
  bool ok = false;
  std::string error_code;
  std::string error_message;
  std::string failed_stage;
  std::vector<std::string> written;

  ThetaFull theta_star;
  double j_star = 0.0;
  double j_theta0 = 0.0;
  EfritCost j_parts;
  bool tuned = false;
  bool stalled = false;
  int iterations = 0;
  std::vector<std::string> near_zero;

  bool closed_loop = false;
  TrackingMetrics proposed;
  TrackingMetrics conventional;
  double u_min_commanded = 0.0;
  double u_max_commanded = 0.0;
  double u_violation = 0.0;
  int qp_max_iter_steps = 0;
  int qp_infeasible_steps = 0;
  std::vector<std::size_t> settle_proposed;
  std::vector<std::size_t> settle_conventional;

  std::vector<FreqPoint> bode_loop;
  std::vector<FreqPoint> bode_pl;
};

/// Algorithm steps 1-8. Never throws for module failures: the report
/// carries the error and, when writing, an error.txt lists partial outputs.
Report run_scenario(const ScenarioConfig& cfg, const RunOptions& opt = {});

struct SweepRun {
  std::string name;
  Config overrides;
};

/// Sweep file keys are <run>.<scenario key>; runs keep file order.
std::vector<SweepRun> load_sweep(const std::string& path);
ScenarioConfig apply_overrides(const Config& base, const Config& overrides,
                               const std::string& base_dir);

/// Concurrent, isolated runs; each writes under base out_dir/<run name>.
/// Writes sweep.csv into the base out_dir when writing.
std::vector<Report> run_sweep(const Config& base, const std::string& base_dir,
                              const std::vector<SweepRun>& runs,
                              const RunOptions& opt = {});

void write_metrics(std::ostream& out, const Report& rep,
                   const ScenarioConfig& cfg);

}  // namespace plmpc
