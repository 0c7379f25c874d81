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

#include "plmpc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <ostream>

namespace plmpc {

namespace fs = std::filesystem;

namespace {

std::string resolve(const std::string& base_dir, const std::string& p) {
  if (p.empty() || fs::path(p).is_absolute()) return p;
  return (fs::path(base_dir) / p).string();
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

TimeSeries quantized(const TimeSeries& x) {
  std::vector<double> q(x.size());
  for (std::size_t k = 0; k < q.size(); ++k) q[k] = quantize_value(x[k]);
  return TimeSeries(std::move(q), x.ts());
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + p.string());
  return out;
}

}  // namespace

const std::vector<std::string>& scenario_keys() {
  static const std::vector<std::string> keys = {
      "name",
      "plant",
      "plant.params",
      "plant.actuator_min",
      "plant.actuator_max",
      "record.path",
      "ts",
      "reference.type",
      "reference.values",
      "reference.durations",
      "reference.amp",
      "reference.offset",
      "reference.freq",
      "reference.duration",
      "theta0",
      "frit.tc0",
      "frit.lambda",
      "frit.starts",
      "frit.max_iterations",
      "frit.tolerance",
      "mpc.q",
      "mpc.r",
      "mpc.v",
      "mpc.hp",
      "mpc.u_min",
      "mpc.u_max",
      "metrics.alignment",
      "metrics.settle",
      "bode.enabled",
      "bode.freqs",
      "bode.amp",
      "bode.offset",
      "bode.settle_periods",
      "bode.measure_periods",
      "seed",
      "output.dir",
  };
  return keys;
}

void ScenarioConfig::validate() const {
  auto bad = [](const std::string& m) { throw Error(ErrorCode::kConfig, m); };
  if (!(ts > 0.0)) bad("ts must be > 0");
  if (plant != PlantKind::kCsvReplay) {
    if (reference_type == "staircase") {
      if (stair_values.empty() || stair_values.size() != stair_durations.size()) {
        bad("reference.values and reference.durations must pair up");
      }
    } else if (reference_type == "sinusoid") {
      if (!(sin_freq > 0.0) || !(sin_duration > 0.0)) {
        bad("sinusoid needs reference.freq > 0 and reference.duration > 0");
      }
    } else {
      bad("reference.type must be staircase or sinusoid");
    }
  } else if (record_path.empty()) {
    bad("csv-replay needs record.path");
  }
  if (tc0 && !(*tc0 > 0.0)) bad("frit.tc0 must be > 0");
  if (!(frit.lambda >= 0.0)) bad("frit.lambda must be >= 0");
  if (frit.starts < 1) bad("frit.starts must be >= 1");
  if (actuator && !(actuator->first < actuator->second)) {
    bad("plant.actuator_min must be < plant.actuator_max");
  }
  try {
    weights.validate();
    limits.validate();
    PidGains{theta0[0], theta0[1], theta0[2], ts}.validate();
  } catch (const Error& e) {
    bad(e.what());
  }
  if (settle_seconds < 0.0) bad("metrics.settle must be >= 0");
}

ScenarioConfig scenario_from_config(const Config& c,
                                    const std::string& base_dir) {
  c.require_known(scenario_keys());
  ScenarioConfig s;
  s.name = c.get_string("name", s.name);
  const std::string plant = c.get_string("plant");
  if (plant == "hammerstein") {
    s.plant = PlantKind::kHammerstein;
  } else if (plant == "boucwen") {
    s.plant = PlantKind::kBoucWen;
  } else if (plant == "csv-replay") {
    s.plant = PlantKind::kCsvReplay;
  } else {
    throw Error(ErrorCode::kConfig, "unknown plant " + plant);
  }
  s.boucwen_params = resolve(base_dir, c.get_string("plant.params", ""));
  if (c.has("plant.actuator_min") || c.has("plant.actuator_max")) {
    s.actuator = {c.get_double("plant.actuator_min"),
                  c.get_double("plant.actuator_max")};
  }
  s.record_path = resolve(base_dir, c.get_string("record.path", ""));
  s.ts = c.get_double("ts", s.ts);
  s.reference_type = c.get_string("reference.type", s.reference_type);
  if (c.has("reference.values")) s.stair_values = c.get_list("reference.values");
  if (c.has("reference.durations")) {
    s.stair_durations = c.get_list("reference.durations");
  }
  s.sin_amp = c.get_double("reference.amp", 0.0);
  s.sin_offset = c.get_double("reference.offset", 0.0);
  s.sin_freq = c.get_double("reference.freq", 0.0);
  s.sin_duration = c.get_double("reference.duration", 0.0);

  const std::vector<double> th0 = c.get_list("theta0");
  if (th0.size() != 3) throw Error(ErrorCode::kConfig, "theta0 needs 3 gains");
  s.theta0 = {th0[0], th0[1], th0[2]};
  if (c.has("frit.tc0")) s.tc0 = c.get_double("frit.tc0");
  s.frit.lambda = c.get_double("frit.lambda", 0.0);
  s.frit.starts = static_cast<int>(c.get_int("frit.starts", s.frit.starts));
  s.frit.optimizer.max_iterations = static_cast<int>(
      c.get_int("frit.max_iterations", s.frit.optimizer.max_iterations));
  s.frit.optimizer.simplex_tolerance =
      c.get_double("frit.tolerance", s.frit.optimizer.simplex_tolerance);

  s.weights.q = c.get_double("mpc.q", s.weights.q);
  s.weights.r = c.get_double("mpc.r", s.weights.r);
  s.weights.v = c.get_double("mpc.v", s.weights.v);
  s.weights.hp = static_cast<int>(c.get_int("mpc.hp", s.weights.hp));
  s.limits.u_min = c.get_double("mpc.u_min", s.limits.u_min);
  s.limits.u_max = c.get_double("mpc.u_max", s.limits.u_max);

  s.alignment = parse_alignment(c.get_string("metrics.alignment", "same"));
  s.settle_seconds = c.get_double("metrics.settle", 0.0);

  s.bode = c.get_bool("bode.enabled", false);
  if (c.has("bode.freqs")) s.bode_freqs = c.get_list("bode.freqs");
  s.bode_options.amp = c.get_double("bode.amp", s.sin_amp);
  s.bode_options.offset = c.get_double("bode.offset", s.sin_offset);
  s.bode_options.settle_periods = static_cast<int>(
      c.get_int("bode.settle_periods", s.bode_options.settle_periods));
  s.bode_options.measure_periods = static_cast<int>(
      c.get_int("bode.measure_periods", s.bode_options.measure_periods));

  const long long seed = c.get_int("seed", 1);
  if (seed < 0) throw Error(ErrorCode::kConfig, "seed must be >= 0");
  s.seed = static_cast<std::uint64_t>(seed);
  s.out_dir = c.get_string("output.dir", s.out_dir);
  s.validate();
  return s;
}

ScenarioConfig load_scenario(const std::string& path) {
  return scenario_from_config(Config::load(path),
                              fs::path(path).parent_path().string());
}

std::unique_ptr<Plant> make_plant(const ScenarioConfig& cfg) {
  std::unique_ptr<Plant> p;
  switch (cfg.plant) {
    case PlantKind::kHammerstein:
      p = std::make_unique<HammersteinPlant>();
      break;
    case PlantKind::kBoucWen:
      p = std::make_unique<BoucWenPlant>(
          cfg.boucwen_params.empty() ? BoucWenParams{}
                                     : BoucWenParams::load(cfg.boucwen_params));
      break;
    case PlantKind::kCsvReplay:
      throw Error(ErrorCode::kConfig, "csv-replay has no plant simulator");
  }
  if (cfg.actuator) p->set_actuator_range(cfg.actuator->first, cfg.actuator->second);
  return p;
}

TimeSeries make_reference(const ScenarioConfig& cfg) {
  if (cfg.reference_type == "sinusoid") {
    return sinusoid_reference(cfg.sin_amp, cfg.sin_offset, cfg.sin_freq,
                              cfg.sin_duration, cfg.ts);
  }
  std::vector<ReferenceSegment> segs;
  for (std::size_t i = 0; i < cfg.stair_values.size(); ++i) {
    segs.push_back({cfg.stair_values[i], cfg.stair_durations[i]});
  }
  return staircase_reference(segs, cfg.ts);
}

IoRecord initial_record(const ScenarioConfig& cfg) {
  const PidGains g0{cfg.theta0[0], cfg.theta0[1], cfg.theta0[2], cfg.ts};
  if (cfg.plant == PlantKind::kCsvReplay) {
    std::ifstream in(cfg.record_path);
    if (!in) throw Error(ErrorCode::kIo, "cannot open " + cfg.record_path);
    return read_record_csv(in, g0);
  }
  const auto plant = make_plant(cfg);
  const ConventionalResult run =
      simulate_conventional(*plant, g0, make_reference(cfg));
  return {run.u_applied, run.y, g0};
}

ThetaFull initial_theta(const ScenarioConfig& cfg) {
  return {cfg.theta0[0], cfg.theta0[1], cfg.theta0[2],
          cfg.tc0 ? *cfg.tc0 : default_tc0(cfg.ts)};
}

namespace {

void write_proposed_csv(std::ostream& out, const TimeSeries& r,
                        const ProposedResult& p) {
  out << "t,r,y,v,u,cost,qp_status,qp_iters\n";
  for (std::size_t k = 0; k < r.size(); ++k) {
    out << format_time(r.time(k)) << ',' << format_value(r[k]) << ','
        << format_value(p.y[k]) << ',' << format_value(p.v[k]) << ','
        << format_value(p.u[k]) << ',' << format_value(p.cost[k]) << ','
        << qp_status_name(p.status[k]) << ',' << p.qp_iterations[k] << '\n';
  }
}

void write_conventional_csv(std::ostream& out, const TimeSeries& r,
                            const ConventionalResult& c) {
  out << "t,r,y,u,y_m\n";
  for (std::size_t k = 0; k < r.size(); ++k) {
    out << format_time(r.time(k)) << ',' << format_value(r[k]) << ','
        << format_value(c.y[k]) << ',' << format_value(c.u[k]) << ','
        << format_value(c.y_m[k]) << '\n';
  }
}

void write_bode_csv(std::ostream& out, const std::vector<FreqPoint>& loop,
                    const std::vector<FreqPoint>& pl) {
  out << "freq_hz,gain_db_loop,phase_deg_loop,gain_db_pl,phase_deg_pl\n";
  for (std::size_t i = 0; i < loop.size(); ++i) {
    out << format_value(loop[i].freq_hz) << ',' << format_value(loop[i].gain_db)
        << ',' << format_value(loop[i].phase_deg) << ','
        << format_value(pl[i].gain_db) << ',' << format_value(pl[i].phase_deg)
        << '\n';
  }
}

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += (i ? "," : "") + std::to_string(v[i]);
  }
  return s;
}

}  // namespace

void write_metrics(std::ostream& out, const Report& rep,
                   const ScenarioConfig& cfg) {
  const ThetaFull& th = rep.theta_star;
  out << "name = " << rep.name << '\n'
      << "complete = " << (rep.ok ? "true" : "false") << '\n'
      << "theta_star = " << fmt17(th.kp) << ',' << fmt17(th.ki) << ','
      << fmt17(th.kd) << ',' << fmt17(th.tc) << '\n'
      << "j_star = " << fmt17(rep.j_star) << '\n'
      << "j_theta0 = " << fmt17(rep.j_theta0) << '\n'
      << "j_matching = " << fmt17(rep.j_parts.matching) << '\n'
      << "j_variation = " << fmt17(rep.j_parts.variation) << '\n'
      << "lambda = " << fmt17(cfg.frit.lambda) << '\n'
      << "tuned = " << (rep.tuned ? "true" : "false") << '\n'
      << "stalled = " << (rep.stalled ? "true" : "false") << '\n';
  if (!rep.closed_loop) return;
  out << "rmse_proposed = " << fmt17(rep.proposed.rmse) << '\n'
      << "rmse_conventional = " << fmt17(rep.conventional.rmse) << '\n'
      << "sd_proposed = " << fmt17(rep.proposed.sd) << '\n'
      << "sd_conventional = " << fmt17(rep.conventional.sd) << '\n'
      << "metrics_alignment = " << alignment_name(cfg.alignment) << '\n'
      << "metrics_settle = " << fmt17(cfg.settle_seconds) << '\n'
      << "u_min_commanded = " << fmt17(rep.u_min_commanded) << '\n'
      << "u_max_commanded = " << fmt17(rep.u_max_commanded) << '\n'
      << "u_violation = " << fmt17(rep.u_violation) << '\n'
      << "qp_max_iter_steps = " << rep.qp_max_iter_steps << '\n'
      << "qp_infeasible_steps = " << rep.qp_infeasible_steps << '\n';
  if (cfg.reference_type == "staircase") {
    out << "settle_samples_proposed = " << join_sizes(rep.settle_proposed)
        << '\n'
        << "settle_samples_conventional = "
        << join_sizes(rep.settle_conventional) << '\n';
  }
}

Report run_scenario(const ScenarioConfig& cfg_in, const RunOptions& opt) {
  ScenarioConfig cfg = cfg_in;
  cfg.frit.seed = cfg.seed;
  Report rep;
  rep.name = cfg.name;
  std::string stage = "setup";
  const fs::path dir(cfg.out_dir);

  auto record_written = [&](const std::string& file) {
    rep.written.push_back(file);
  };

  try {
    cfg.validate();
    if (opt.write) fs::create_directories(dir);

    stage = "record";
    const IoRecord rec = initial_record(cfg);
    if (opt.write) {
      auto out = open_out(dir / "record.csv");
      write_record_csv(out, rec);
      record_written("record.csv");
    }

    stage = "tune";
    const ThetaFull th0 = initial_theta(cfg);
    rep.j_theta0 = efrit_cost(rec, th0, cfg.frit.lambda);
    if (opt.theta_override) {
      opt.theta_override->validate(cfg.ts);
      rep.theta_star = *opt.theta_override;
      rep.j_star = efrit_cost(rec, rep.theta_star, cfg.frit.lambda);
    } else {
      const EfritResult res = optimize_pl(rec, th0, cfg.frit);
      rep.theta_star = res.theta;
      rep.j_star = res.cost;
      rep.tuned = true;
      rep.stalled = res.stalled;
      rep.iterations = res.iterations;
      rep.near_zero = res.near_zero;
      if (opt.write) {
        auto out = open_out(dir / "tuning.txt");
        write_tuning_result(out, res, cfg.frit.lambda);
        record_written("tuning.txt");
      }
    }
    rep.j_parts = efrit_cost_parts(rec, rep.theta_star, cfg.frit.lambda);

    const bool can_simulate = cfg.plant != PlantKind::kCsvReplay;
    if (opt.closed_loop && can_simulate) {
      stage = "proposed";
      const auto plant = make_plant(cfg);
      const TimeSeries r = make_reference(cfg);
      const ProposedResult prop =
          simulate_proposed(*plant, rep.theta_star, cfg.weights, cfg.limits, r);
      stage = "conventional";
      const ConventionalResult conv = simulate_conventional(
          *plant, rep.theta_star.gains(cfg.ts), r, rep.theta_star.tc);

      if (opt.write) {
        auto p = open_out(dir / "proposed.csv");
        write_proposed_csv(p, r, prop);
        record_written("proposed.csv");
        auto c = open_out(dir / "conventional.csv");
        write_conventional_csv(c, r, conv);
        record_written("conventional.csv");
      }

      stage = "metrics";
      const auto settle =
          static_cast<std::size_t>(std::llround(cfg.settle_seconds / cfg.ts));
      const TimeSeries rq = quantized(r);
      const TimeSeries yp = quantized(prop.y);
      const TimeSeries yc = quantized(conv.y);
      rep.proposed = tracking_metrics(rq, yp, cfg.alignment, settle);
      rep.conventional = tracking_metrics(rq, yc, cfg.alignment, settle);
      const auto [lo, hi] = std::minmax_element(prop.u.vector().begin(),
                                                prop.u.vector().end());
      rep.u_min_commanded = *lo;
      rep.u_max_commanded = *hi;
      rep.u_violation = std::max({0.0, *hi - cfg.limits.u_max,
                                  cfg.limits.u_min - *lo});
      for (QpStatus s : prop.status) {
        rep.qp_max_iter_steps += s == QpStatus::kMaxIter;
        rep.qp_infeasible_steps += s == QpStatus::kInfeasible;
      }
      if (cfg.reference_type == "staircase") {
        rep.settle_proposed = settling_samples(r, prop.y);
        rep.settle_conventional = settling_samples(r, conv.y);
      }
      rep.closed_loop = true;
    }

    if ((opt.bode || cfg.bode) && can_simulate) {
      stage = "bode";
      const auto plant = make_plant(cfg);
      const PidGains g = rep.theta_star.gains(cfg.ts);
      const LoopSimulator loop = [&](const TimeSeries& r) {
        return simulate_conventional(*plant, g, r).y;
      };
      std::vector<double> freqs;
      for (double f : cfg.bode_freqs.empty() ? bode_grid() : cfg.bode_freqs) {
        if (std::round(1.0 / (f * cfg.ts)) >= 2.0) freqs.push_back(f);
      }
      rep.bode_loop =
          empirical_freq_response(loop, freqs, cfg.ts, cfg.bode_options);
      const RationalFilter pl = rep.theta_star.pl(cfg.ts).as_filter();
      for (const auto& p : rep.bode_loop) {
        rep.bode_pl.push_back(filter_freq_point(pl, p.freq_hz, cfg.ts));
      }
      if (opt.write) {
        auto out = open_out(dir / "bode.csv");
        write_bode_csv(out, rep.bode_loop, rep.bode_pl);
        record_written("bode.csv");
      }
    }

    rep.ok = true;
    if (opt.write) {
      auto out = open_out(dir / "metrics.txt");
      write_metrics(out, rep, cfg);
    }
  } catch (const Error& e) {
    rep.ok = false;
    rep.error_code = std::string(error_code_name(e.code()));
    rep.error_message = e.what();
    rep.failed_stage = stage;
  } catch (const std::exception& e) {
    rep.ok = false;
    rep.error_code = "IoError";
    rep.error_message = e.what();
    rep.failed_stage = stage;
  }

  if (!rep.ok && opt.write) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    std::ofstream out(dir / "error.txt");
    if (out) {
      out << "status = error\n"
          << "code = " << rep.error_code << '\n'
          << "stage = " << rep.failed_stage << '\n'
          << "message = " << rep.error_message << '\n'
          << "partial = " << (rep.written.empty() ? "false" : "true") << '\n'
          << "written = ";
      for (std::size_t i = 0; i < rep.written.size(); ++i) {
        out << (i ? "," : "") << rep.written[i];
      }
      out << '\n';
    }
  }
  return rep;
}

std::vector<SweepRun> load_sweep(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfig, "cannot open sweep file " + path);
  const Config all = Config::parse(in, path);
  // Config keeps keys sorted; recover file order from a second pass.
  std::vector<SweepRun> runs;
  std::map<std::string, std::size_t> index;
  in.clear();
  in.seekg(0);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    const auto dot = key.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == key.size()) {
      throw Error(ErrorCode::kConfig,
                  path + ": sweep keys must look like <run>.<key>: " + key);
    }
    const std::string name = key.substr(0, dot);
    if (!index.count(name)) {
      index[name] = runs.size();
      runs.push_back({name, {}});
    }
    runs[index[name]].overrides.set(key.substr(dot + 1), all.get_string(key));
  }
  return runs;
}

ScenarioConfig apply_overrides(const Config& base, const Config& overrides,
                               const std::string& base_dir) {
  Config merged = base;
  for (const auto& [k, v] : overrides.entries()) merged.set(k, v);
  return scenario_from_config(merged, base_dir);
}

std::vector<Report> run_sweep(const Config& base, const std::string& base_dir,
                              const std::vector<SweepRun>& runs,
                              const RunOptions& opt) {
  const ScenarioConfig base_cfg = scenario_from_config(base, base_dir);
  if (runs.empty()) return {run_scenario(base_cfg, opt)};

  std::vector<std::future<Report>> jobs;
  for (const SweepRun& run : runs) {
    jobs.push_back(std::async(std::launch::async, [&, run]() {
      Report rep;
      try {
        ScenarioConfig cfg = apply_overrides(base, run.overrides, base_dir);
        cfg.name = run.name;
        cfg.seed = base_cfg.seed;
        cfg.out_dir = (fs::path(base_cfg.out_dir) / run.name).string();
        rep = run_scenario(cfg, opt);
      } catch (const Error& e) {
        rep.name = run.name;
        rep.error_code = std::string(error_code_name(e.code()));
        rep.error_message = e.what();
        rep.failed_stage = "config";
      }
      return rep;
    }));
  }
  std::vector<Report> reports;
  for (auto& j : jobs) reports.push_back(j.get());

  if (opt.write) {
    fs::create_directories(base_cfg.out_dir);
    auto out = open_out(fs::path(base_cfg.out_dir) / "sweep.csv");
    out << "name,status,lambda_share,j_star,rmse_proposed,rmse_conventional,"
           "sd_proposed,sd_conventional,settle_proposed,settle_conventional\n";
    for (const Report& r : reports) {
      const double share =
          r.ok && r.j_parts.total > 0.0
              ? (r.j_parts.total - r.j_parts.matching) / r.j_parts.total
              : 0.0;
      out << r.name << ',' << (r.ok ? "ok" : r.error_code) << ','
          << format_value(share) << ',' << format_value(r.j_star) << ','
          << format_value(r.proposed.rmse) << ','
          << format_value(r.conventional.rmse) << ','
          << format_value(r.proposed.sd) << ','
          << format_value(r.conventional.sd) << ",\""
          << join_sizes(r.settle_proposed) << "\",\""
          << join_sizes(r.settle_conventional) << "\"\n";
    }
  }
  return reports;
}

}  // namespace plmpc
