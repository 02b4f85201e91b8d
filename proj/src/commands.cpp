#include "hlq/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hlq/config.hpp"
#include "hlq/oracles.hpp"

namespace hlq {

namespace fs = std::filesystem;

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string checksum(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

OutputFile write_output(const fs::path& dir, const std::string& name, const std::string& body) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create '" + dir.string() + "': " + ec.message());
  const fs::path path = dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
  out << body;
  out.close();
  if (!out) throw Error(ErrorKind::IoError, "failed writing '" + path.string() + "'");
  return {path, checksum(body)};
}

nlohmann::ordered_json config_json(const SimConfig& config) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  std::istringstream in(format_config(config));
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) j[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return j;
}

void write_manifest(const fs::path& dir, const RunManifest& manifest) {
  nlohmann::ordered_json j;
  j["command"] = manifest.command;
  j["schedule"] = std::string(to_string(manifest.config.schedule));
  j["config"] = config_json(manifest.config);
  j["outputs"] = nlohmann::ordered_json::array();
  for (const auto& o : manifest.outputs) {
    j["outputs"].push_back({{"path", o.path.filename().string()}, {"checksum", o.checksum}});
  }
  write_output(dir, "manifest.json", j.dump(2) + "\n");
}

template <typename... Ts>
void append_row(std::string& out, const Ts&... fields) {
  bool first = true;
  auto put = [&](const auto& f) {
    if (!first) out += ',';
    first = false;
    if constexpr (std::is_same_v<std::decay_t<decltype(f)>, int>) {
      out += std::to_string(f);
    } else {
      out += format_number(f);
    }
  };
  (put(fields), ...);
  out += '\n';
}

double oracle_drive(const SimConfig& config) { return std::abs(config.eta) * config.zeta_abs; }

}  // namespace

std::string timeseries_csv(const std::vector<TrajectoryRecord>& records, double omega) {
  std::string out = std::string(kTimeseriesHeader) + "\n";
  for (const auto& r : records) {
    append_row(out, r.step, r.t, omega * r.t / std::numbers::pi, r.p00, r.mean_n, r.purity,
               r.mean_b.real(), r.mean_b.imag(), r.var_x, r.var_y);
  }
  return out;
}

std::string final_state_csv(const ComplexMatrix& rho) {
  std::string out = "row,col,re,im\n";
  for (int r = 0; r < rho.rows(); ++r) {
    for (int c = 0; c < rho.cols(); ++c) append_row(out, r, c, rho(r, c).real(), rho(r, c).imag());
  }
  return out;
}

RunManifest cmd_run(const SimConfig& config, const fs::path& out_dir) {
  validate(config);
  const Schedule schedule = make_schedule(config);
  RunManifest manifest{"run", config, {}};
  const bool want_series =
      std::find(config.outputs.begin(), config.outputs.end(), "timeseries") != config.outputs.end();
  const bool want_final =
      std::find(config.outputs.begin(), config.outputs.end(), "final_state") != config.outputs.end();

  std::vector<EngineKind> engines;
  if (config.engine == EngineKind::Both) {
    engines = {EngineKind::Hidden, EngineKind::Standard};
  } else {
    engines = {config.engine};
  }
  for (const EngineKind engine : engines) {
    const RunResult result = run(config, schedule, engine);
    const std::string suffix =
        engines.size() > 1 ? "_" + std::string(to_string(engine)) + ".csv" : ".csv";
    if (want_series) {
      manifest.outputs.push_back(write_output(out_dir, "timeseries" + suffix,
                                              timeseries_csv(result.records, config.omega)));
    }
    if (want_final) {
      manifest.outputs.push_back(
          write_output(out_dir, "final_state" + suffix, final_state_csv(result.final_state)));
    }
  }
  write_manifest(out_dir, manifest);
  return manifest;
}

std::vector<CompareRow> compare_engines(const SimConfig& config) {
  validate(config);
  const Schedule schedule = make_schedule(config);
  Evolver hidden(config, schedule, EngineKind::Hidden);
  Evolver standard(config, schedule, EngineKind::Standard);
  const double eps = oracle_drive(config);
  std::vector<CompareRow> rows;
  rows.reserve(schedule.size() + 1);
  auto record = [&] {
    const double t = hidden.time();
    rows.push_back({hidden.step(), t, ground_population(hidden.state()),
                    ground_population(standard.state()),
                    ground_state_probability(eps, config.omega, t, config.model),
                    trace_distance(hidden.state(), standard.state())});
  };
  record();
  while (!hidden.done()) {
    hidden.advance();
    standard.advance();
    record();
  }
  return rows;
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
  std::string out = std::string(kCompareHeader) + "\n";
  for (const auto& r : rows) {
    append_row(out, r.step, r.t, r.p00_hidden, r.p00_standard, r.p00_oracle, r.trace_distance);
  }
  return out;
}

RunManifest cmd_compare(const SimConfig& config, const fs::path& out_dir) {
  RunManifest manifest{"compare", config, {}};
  manifest.outputs.push_back(write_output(out_dir, "compare.csv", compare_csv(compare_engines(config))));
  write_manifest(out_dir, manifest);
  return manifest;
}

std::vector<ConvergenceRow> convergence_study(const SimConfig& config, int halvings) {
  validate(config);
  if (halvings < 2) {
    throw Error(ErrorKind::ValidationError, "halvings must be >= 2, got " + std::to_string(halvings));
  }
  if (config.steps > (std::numeric_limits<int>::max() >> halvings)) {
    throw Error(ErrorKind::ValidationError, "too many halvings for the configured step count");
  }
  std::vector<std::future<ConvergenceRow>> pending;
  for (int h = 0; h <= halvings; ++h) {
    SimConfig refined = config;
    refined.dt = config.dt / static_cast<double>(1 << h);
    refined.steps = config.steps << h;
    pending.push_back(std::async(std::launch::async, [refined] {
      const Schedule schedule = make_schedule(refined);
      const RunResult hidden = run(refined, schedule, EngineKind::Hidden);
      const RunResult standard = run(refined, schedule, EngineKind::Standard);
      return ConvergenceRow{refined.dt, refined.steps,
                            trace_distance(hidden.final_state, standard.final_state),
                            std::numeric_limits<double>::quiet_NaN()};
    }));
  }
  std::vector<ConvergenceRow> rows;
  for (auto& f : pending) rows.push_back(f.get());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    rows[i].ratio = rows[i - 1].final_trace_distance / rows[i].final_trace_distance;
  }
  return rows;
}

std::string converge_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = std::string(kConvergeHeader) + "\n";
  for (const auto& r : rows) {
    out += format_number(r.dt) + ',' + format_number(r.final_trace_distance) + ',';
    if (!std::isnan(r.ratio)) out += format_number(r.ratio);
    out += '\n';
  }
  return out;
}

RunManifest cmd_converge(const SimConfig& config, int halvings, const fs::path& out_dir) {
  RunManifest manifest{"converge", config, {}};
  manifest.outputs.push_back(
      write_output(out_dir, "converge.csv", converge_csv(convergence_study(config, halvings))));
  write_manifest(out_dir, manifest);
  return manifest;
}

HusimiStudy husimi_study(const SimConfig& config, const std::vector<int>& snapshot_steps,
                         const PhaseSpaceExtent& extent) {
  validate(config);
  for (const int s : snapshot_steps) {
    if (s < 0 || s > config.steps) {
      throw Error(ErrorKind::ValidationError, "snapshot step " + std::to_string(s) +
                                                  " outside [0, " + std::to_string(config.steps) + "]");
    }
  }
  const EngineKind engine =
      config.engine == EngineKind::Standard ? EngineKind::Standard : EngineKind::Hidden;
  Evolver evolver(config, make_schedule(config), engine);
  HusimiStudy study;
  study.trajectory.reserve(static_cast<std::size_t>(config.steps) + 1);
  auto visit = [&] {
    study.trajectory.push_back(make_record(evolver.step(), evolver.time(), evolver.state()));
    for (const int s : snapshot_steps) {
      if (s == evolver.step()) study.snapshots.push_back({s, husimi_grid(evolver.state(), extent)});
    }
  };
  visit();
  while (!evolver.done()) {
    evolver.advance();
    visit();
  }
  return study;
}

std::string husimi_csv(const HusimiGrid& grid) {
  std::string out = std::string(kHusimiHeader) + "\n";
  for (int iy = 0; iy < grid.extent.n_y; ++iy) {
    for (int ix = 0; ix < grid.extent.n_x; ++ix) append_row(out, grid.x(ix), grid.y(iy), grid.at(ix, iy));
  }
  return out;
}

std::string trajectory_csv(const std::vector<TrajectoryRecord>& records) {
  std::string out = std::string(kTrajectoryHeader) + "\n";
  for (const auto& r : records) append_row(out, r.t, r.mean_b.real(), r.mean_b.imag());
  return out;
}

RunManifest cmd_husimi(const SimConfig& config, const std::vector<int>& snapshot_steps,
                       const PhaseSpaceExtent& extent, const fs::path& out_dir) {
  const HusimiStudy study = husimi_study(config, snapshot_steps, extent);
  RunManifest manifest{"husimi", config, {}};
  for (const auto& snap : study.snapshots) {
    manifest.outputs.push_back(write_output(
        out_dir, "husimi_step" + std::to_string(snap.step) + ".csv", husimi_csv(snap.grid)));
  }
  manifest.outputs.push_back(write_output(out_dir, "trajectory.csv", trajectory_csv(study.trajectory)));
  write_manifest(out_dir, manifest);
  return manifest;
}

bool SweepResult::all_ok() const {
  return std::all_of(items.begin(), items.end(), [](const SweepItem& i) { return i.ok; });
}

SweepResult cmd_sweep(const SimConfig& base, const std::string& parameter,
                      const std::vector<std::string>& values, const fs::path& out_dir, int jobs) {
  if (values.empty()) {
    throw Error(ErrorKind::ValidationError, "sweep over '" + parameter + "' has no values");
  }
  {
    SimConfig probe = base;
    set_config_value(probe, parameter, values.front());  // rejects unknown parameters early
  }
  SweepResult result;
  result.parameter = parameter;
  result.items.resize(values.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      SweepItem& item = result.items[i];
      item.value = values[i];
      try {
        SimConfig config = base;
        set_config_value(config, parameter, values[i]);
        validate(config);
        const RunResult run_result = run(config, make_schedule(config),
                                         config.engine == EngineKind::Standard
                                             ? EngineKind::Standard
                                             : EngineKind::Hidden);
        const OutputFile file =
            write_output(out_dir, "sweep_" + parameter + "_" + std::to_string(i) + ".csv",
                         timeseries_csv(run_result.records, config.omega));
        item.file = file.path;
        item.checksum = file.checksum;
        item.final_mean_n = run_result.records.back().mean_n;
        item.final_p00 = run_result.records.back().p00;
        item.ok = true;
      } catch (const Error& e) {
        item.error = e.what();
        item.error_kind = e.kind();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t threads =
      std::min<std::size_t>(values.size(), jobs > 0 ? static_cast<std::size_t>(jobs) : hw);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  nlohmann::ordered_json j;
  j["command"] = "sweep";
  j["parameter"] = parameter;
  j["schedule"] = std::string(to_string(base.schedule));
  j["config"] = config_json(base);
  j["results"] = nlohmann::ordered_json::array();
  for (const auto& item : result.items) {
    nlohmann::ordered_json entry{{"value", item.value}, {"status", item.ok ? "ok" : "failed"}};
    if (item.ok) {
      entry["path"] = item.file.filename().string();
      entry["checksum"] = item.checksum;
    } else {
      entry["error"] = item.error;
    }
    j["results"].push_back(entry);
  }
  result.manifest = write_output(out_dir, "manifest.json", j.dump(2) + "\n").path;
  return result;
}

}  // namespace hlq
