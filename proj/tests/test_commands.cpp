#include <doctest.h>

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hlq/commands.hpp"
#include "hlq/config.hpp"
#include "hlq/error.hpp"
#include "hlq/oracles.hpp"

using namespace hlq;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

fs::path scratch_dir(const std::string& name) {
  static std::atomic<int> counter{0};
  const fs::path dir = fs::temp_directory_path() /
                       ("hlq_test_" + name + "_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter++));
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

SimConfig fig2a() {
  return parse_config(
      "model = linear\nomega = 1.2566370614359172\ndt = 0.001\nsteps = 3750\nzeta = 0.5\neta = 1\n");
}

}  // namespace

TEST_CASE("number formatting and checksums") {
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.1234567890123456) == "0.123456789012");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(checksum("") == "fnv1a64:cbf29ce484222325");
  CHECK(checksum("a") == "fnv1a64:af63dc4c8601ec8c");
}

TEST_CASE("run writes the time series, final state and manifest") {
  const fs::path dir = scratch_dir("run");
  const SimConfig config = fig2a();
  const RunManifest manifest = cmd_run(config, dir);
  REQUIRE(manifest.outputs.size() == 2);
  for (const auto& o : manifest.outputs) {
    CHECK(fs::exists(o.path));
    CHECK(checksum(slurp(o.path)) == o.checksum);
  }

  const auto rows = read_csv(dir / "timeseries.csv");
  REQUIRE(rows.size() == 3752);
  CHECK(slurp(dir / "timeseries.csv").starts_with(std::string(kTimeseriesHeader) + "\n"));
  CHECK(rows[1][0] == "0");
  CHECK(rows[1][3] == "1");  // p00
  CHECK(rows[1][4] == "0");  // mean_n
  CHECK(rows[1][5] == "1");  // purity

  const auto& last = rows.back();
  CHECK(last[0] == "3750");
  CHECK(std::stod(last[2]) == doctest::Approx(config.omega * 3.75 / pi));
  CHECK(std::abs(std::stod(last[3]) - ground_state_probability(0.5, config.omega, 3.75)) <= 0.01);

  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double p00 = std::stod(rows[i][3]);
    const double n = std::stod(rows[i][4]);
    const double pur = std::stod(rows[i][5]);
    const double vx = std::stod(rows[i][8]);
    const double vy = std::stod(rows[i][9]);
    CHECK(p00 >= 0.0);
    CHECK(p00 <= 1.0 + 1e-9);
    CHECK(n >= -1e-9);
    CHECK(pur <= 1.0 + 1e-9);
    CHECK(pur > 0.0);
    CHECK(vx * vy >= 1.0 / 16.0 - 1e-6);
  }

  const auto final_rows = read_csv(dir / "final_state.csv");
  CHECK(final_rows.size() == 1 + 32 * 32);
  CHECK(final_rows[0] == std::vector<std::string>{"row", "col", "re", "im"});

  const auto j = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(j["command"] == "run");
  CHECK(j["schedule"] == "uniform");
  CHECK(j["config"]["steps"] == "3750");
  CHECK(j["outputs"].size() == 2);

  // Identical input, byte-identical output.
  const fs::path again = scratch_dir("run_again");
  cmd_run(config, again);
  CHECK(slurp(dir / "timeseries.csv") == slurp(again / "timeseries.csv"));
  CHECK(slurp(dir / "final_state.csv") == slurp(again / "final_state.csv"));
  fs::remove_all(dir);
  fs::remove_all(again);
}

TEST_CASE("run with both engines writes one set per engine") {
  const fs::path dir = scratch_dir("both");
  SimConfig config = fig2a();
  config.steps = 20;
  config.engine = EngineKind::Both;
  config.outputs = {"timeseries"};
  const RunManifest m = cmd_run(config, dir);
  REQUIRE(m.outputs.size() == 2);
  CHECK(fs::exists(dir / "timeseries_hidden.csv"));
  CHECK(fs::exists(dir / "timeseries_standard.csv"));
  CHECK_FALSE(fs::exists(dir / "final_state_hidden.csv"));
  fs::remove_all(dir);
}

TEST_CASE("compare") {
  SimConfig still = fig2a();
  still.steps = 100;
  still.eta = 0.0;
  for (const auto& row : compare_engines(still)) CHECK(row.trace_distance < 1e-15);

  const SimConfig config = fig2a();
  const auto rows = compare_engines(config);
  REQUIRE(rows.size() == 3751);
  double worst = 0.0;
  for (const auto& row : rows) {
    worst = std::max(worst, row.trace_distance);
    CHECK(row.p00_oracle == ground_state_probability(0.5, config.omega, row.t));
  }
  CHECK(worst <= 0.02);

  const fs::path dir = scratch_dir("compare");
  cmd_compare(still, dir);
  const auto csv = read_csv(dir / "compare.csv");
  CHECK(slurp(dir / "compare.csv").starts_with(std::string(kCompareHeader) + "\n"));
  CHECK(csv.size() == 102);
  fs::remove_all(dir);
}

TEST_CASE("convergence study") {
  SimConfig config = fig2a();
  config.dt = 0.002;
  config.steps = 1000;
  const auto rows = convergence_study(config, 2);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].dt * rows[i].steps == doctest::Approx(2.0).epsilon(1e-14));
    if (i > 0) {
      CHECK(rows[i].final_trace_distance < rows[i - 1].final_trace_distance);
      CHECK(rows[i].ratio >= 1.7);
      CHECK(rows[i].ratio <= 2.3);
    }
  }
  CHECK(std::isnan(rows[0].ratio));
  CHECK_THROWS_AS(convergence_study(config, 1), Error);

  const std::string csv = converge_csv(rows);
  CHECK(csv.starts_with(std::string(kConvergeHeader) + "\n0.002,"));
  CHECK(csv.find(",\n0.001,") != std::string::npos);  // empty ratio on the first row
}

TEST_CASE("husimi snapshots and trajectory") {
  const fs::path dir = scratch_dir("husimi");
  const SimConfig config = fig2a();
  const PhaseSpaceExtent window{-2.0, 2.0, -2.0, 2.0, 41, 41};
  const RunManifest m = cmd_husimi(config, {0, 3750}, window, dir);
  CHECK(m.outputs.size() == 3);

  const auto grid0 = read_csv(dir / "husimi_step0.csv");
  REQUIRE(grid0.size() == 1 + 41 * 41);
  CHECK(grid0[0] == std::vector<std::string>{"x", "y", "q"});
  double best = 0.0;
  std::size_t best_row = 0;
  for (std::size_t i = 1; i < grid0.size(); ++i) {
    if (std::stod(grid0[i][2]) > best) {
      best = std::stod(grid0[i][2]);
      best_row = i;
    }
  }
  CHECK(std::abs(best - 1.0 / pi) <= 1e-9);
  CHECK(std::stod(grid0[best_row][0]) == 0.0);
  CHECK(std::stod(grid0[best_row][1]) == 0.0);

  // Peak of the final snapshot sits on the circle fitted to the emitted trajectory.
  const auto traj = read_csv(dir / "trajectory.csv");
  REQUIRE(traj.size() == 3752);
  std::vector<Complex> points;
  for (std::size_t i = 1; i < traj.size(); ++i) points.emplace_back(std::stod(traj[i][1]), std::stod(traj[i][2]));
  const CircleFit fit = fit_circle(points);
  CHECK(fit.max_relative_deviation <= 0.02);
  CHECK(fit.radius == doctest::Approx(0.5 / config.omega).epsilon(0.02));

  const HusimiStudy fine = husimi_study(config, {3750}, {-3.0, 3.0, -3.0, 3.0, 301, 301});
  const HusimiGrid& g = fine.snapshots.at(0).grid;
  std::size_t peak = 0;
  for (std::size_t i = 0; i < g.values.size(); ++i)
    if (g.values[i] > g.values[peak]) peak = i;
  const Complex at{g.x(static_cast<int>(peak % 301)), g.y(static_cast<int>(peak / 301))};
  CHECK(std::abs(std::abs(at - fit.center) / fit.radius - 1.0) <= 0.05);

  CHECK_THROWS_AS(husimi_study(config, {5000}), Error);
  fs::remove_all(dir);
}

TEST_CASE("sweep") {
  SimConfig base = fig2a();
  base.omega = 0.0;
  const fs::path dir = scratch_dir("sweep");
  const SweepResult r = cmd_sweep(base, "steps", {"1000", "2000", "4000"}, dir, 2);
  REQUIRE(r.all_ok());
  REQUIRE(r.items.size() == 3);
  CHECK(r.items[1].final_mean_n / r.items[0].final_mean_n == doctest::Approx(4.0).epsilon(0.05));
  CHECK(r.items[2].final_mean_n / r.items[0].final_mean_n == doctest::Approx(16.0).epsilon(0.05));
  const auto j = nlohmann::json::parse(slurp(r.manifest));
  REQUIRE(j["results"].size() == 3);
  for (const auto& entry : j["results"]) {
    CHECK(entry["status"] == "ok");
    CHECK(fs::exists(dir / entry["path"].get<std::string>()));
  }

  CHECK_THROWS_AS(cmd_sweep(base, "steps", {}, dir), Error);
  CHECK_THROWS_AS(cmd_sweep(base, "colour", {"1"}, dir), Error);

  const fs::path partial_dir = scratch_dir("sweep_partial");
  const SweepResult partial = cmd_sweep(base, "dim", {"32", "4", "0"}, partial_dir, 1);
  CHECK_FALSE(partial.all_ok());
  CHECK(partial.items[0].ok);
  CHECK(partial.items[1].error_kind == ErrorKind::TruncationOverflow);
  CHECK(partial.items[2].error_kind == ErrorKind::ValidationError);
  const auto pj = nlohmann::json::parse(slurp(partial.manifest));
  CHECK(pj["results"][1]["status"] == "failed");
  fs::remove_all(dir);
  fs::remove_all(partial_dir);
}
