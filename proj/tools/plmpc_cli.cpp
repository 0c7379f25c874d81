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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "plmpc/config.hpp"
#include "plmpc/scenario.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

int exit_code_for(const std::string& code) {
  return code == "ConfigError" || code == "IoError" ? kExitConfig
                                                    : kExitNumeric;
}

void print_report(const plmpc::Report& r) {
  const auto& th = r.theta_star;
  std::printf("%s: theta* = [%.6g, %.6g, %.6g, %.6g]  J* = %.6g%s\n",
              r.name.c_str(), th.kp, th.ki, th.kd, th.tc, r.j_star,
              r.stalled ? "  (optimizer stalled)" : "");
  for (const auto& g : r.near_zero) {
    std::printf("  note: %s pinned near zero\n", g.c_str());
  }
  if (r.closed_loop) {
    std::printf("  rmse proposed %.6g  conventional %.6g\n", r.proposed.rmse,
                r.conventional.rmse);
    std::printf("  sd   proposed %.6g  conventional %.6g\n", r.proposed.sd,
                r.conventional.sd);
    std::printf("  commanded u in [%.6g, %.6g]\n", r.u_min_commanded,
                r.u_max_commanded);
  }
  for (std::size_t i = 0; i < r.bode_loop.size(); ++i) {
    std::printf("  %8.4f Hz  loop %8.3f dB %8.2f deg  pl %8.3f dB %8.2f deg\n",
                r.bode_loop[i].freq_hz, r.bode_loop[i].gain_db,
                r.bode_loop[i].phase_deg, r.bode_pl[i].gain_db,
                r.bode_pl[i].phase_deg);
  }
  if (!r.ok) {
    std::fprintf(stderr, "%s: %s during %s: %s\n", r.name.c_str(),
                 r.error_code.c_str(), r.failed_stage.c_str(),
                 r.error_message.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PID + pseudo-linearization tuning and MPC simulation"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<long long> seed;
  std::string out_dir;
  std::string theta_text;
  std::string sweep_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "scenario config file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "seed for the multi-start tuner");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--theta-override", theta_text,
                    "kp,ki,kd,tc; skips tuning");
  };
  CLI::App* tune = app.add_subcommand("tune", "generate the record and tune");
  CLI::App* run = app.add_subcommand("run", "tune, then run both loops");
  CLI::App* bode = app.add_subcommand("bode", "tune, then sweep frequencies");
  CLI::App* sweep = app.add_subcommand("sweep", "run a batch of overrides");
  for (CLI::App* sub : {tune, run, bode, sweep}) add_common(sub);
  sweep->add_option("--sweep", sweep_path, "override file, <run>.<key> = value")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    plmpc::Config base = plmpc::Config::load(config_path);
    if (seed) base.set("seed", std::to_string(*seed));
    if (!out_dir.empty()) base.set("output.dir", out_dir);
    const std::string base_dir =
        std::filesystem::path(config_path).parent_path().string();

    plmpc::RunOptions opt;
    if (!theta_text.empty()) {
      const auto v = plmpc::parse_real_list(theta_text, "--theta-override");
      if (v.size() != 4) {
        throw plmpc::Error(plmpc::ErrorCode::kConfig,
                           "--theta-override needs kp,ki,kd,tc");
      }
      opt.theta_override = plmpc::ThetaFull{v[0], v[1], v[2], v[3]};
    }
    opt.closed_loop = run->parsed() || sweep->parsed();
    opt.bode = bode->parsed();

    if (sweep->parsed()) {
      const auto runs = plmpc::load_sweep(sweep_path);
      const auto reports = plmpc::run_sweep(base, base_dir, runs, opt);
      int rc = 0;
      for (const auto& r : reports) {
        print_report(r);
        if (!r.ok && rc == 0) rc = exit_code_for(r.error_code);
      }
      return rc;
    }
    const plmpc::ScenarioConfig cfg =
        plmpc::scenario_from_config(base, base_dir);
    const plmpc::Report r = plmpc::run_scenario(cfg, opt);
    print_report(r);
    return r.ok ? 0 : exit_code_for(r.error_code);
  } catch (const plmpc::Error& e) {
    std::fprintf(stderr, "error: %s: %s\n",
                 std::string(plmpc::error_code_name(e.code())).c_str(),
                 e.what());
    return e.code() == plmpc::ErrorCode::kConfig ||
                   e.code() == plmpc::ErrorCode::kIo
               ? kExitConfig
               : kExitNumeric;
  }
}
