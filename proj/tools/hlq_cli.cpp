// hlq: command-line driver for the hidden-Liouville oscillator simulator.
//
//   hlq run      CONFIG [--out-dir DIR]
//   hlq compare  CONFIG [--out-dir DIR]
//   hlq converge CONFIG [--halvings K] [--out-dir DIR]
//   hlq husimi   CONFIG --snapshots 0,3750 [--extent 5] [--resolution 201] [--out-dir DIR]
//   hlq sweep    CONFIG --param steps --values 1000,2000,4000 [--jobs J] [--out-dir DIR]
//
// Output directory: --out-dir, else $HLQ_OUT_DIR, else the working directory.
// Exit status: 0 success, 1 validation, 2 numerical, 3 I/O.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hlq/commands.hpp"
#include "hlq/config.hpp"
#include "hlq/error.hpp"

namespace {

int exit_status(hlq::ErrorKind kind) {
  switch (kind) {
    case hlq::ErrorKind::TruncationOverflow:
    case hlq::ErrorKind::InvalidHamiltonian:
      return 2;
    case hlq::ErrorKind::IoError:
      return 3;
    default:
      return 1;
  }
}

std::filesystem::path resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("HLQ_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return ".";
}

void report(const hlq::RunManifest& manifest) {
  for (const auto& o : manifest.outputs) std::cout << o.path.string() << "  " << o.checksum << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driven-oscillator dynamics through a hidden two-state Liouville space"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int halvings = 3;
  std::vector<int> snapshots;
  double extent = 5.0;
  int resolution = 201;
  std::string parameter;
  std::vector<std::string> values;
  int jobs = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "Run configuration (key = value file)")->required();
    sub->add_option("--out-dir", out_dir, "Output directory (overrides HLQ_OUT_DIR)");
  };

  auto* run_cmd = app.add_subcommand("run", "Evolve and write the time series and final state");
  add_common(run_cmd);
  auto* compare_cmd = app.add_subcommand("compare", "Run both engines in lockstep");
  add_common(compare_cmd);
  auto* converge_cmd = app.add_subcommand("converge", "Step-halving study at fixed total time");
  add_common(converge_cmd);
  converge_cmd->add_option("--halvings", halvings, "Number of dt halvings")->capture_default_str();
  auto* husimi_cmd = app.add_subcommand("husimi", "Husimi Q snapshots and <b> trajectory");
  add_common(husimi_cmd);
  husimi_cmd->add_option("--snapshots", snapshots, "Step indices to snapshot")
      ->required()
      ->delimiter(',');
  husimi_cmd->add_option("--extent", extent, "Half-width of the square phase-space window")
      ->capture_default_str();
  husimi_cmd->add_option("--resolution", resolution, "Grid points per axis")->capture_default_str();
  auto* sweep_cmd = app.add_subcommand("sweep", "Independent runs over one config key");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--param", parameter, "Config key to vary")->required();
  sweep_cmd->add_option("--values", values, "Values for the key")->required()->delimiter(',');
  sweep_cmd->add_option("--jobs", jobs, "Worker threads (0: hardware concurrency)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const hlq::SimConfig config = hlq::load_config(config_path);
    const auto dir = resolve_out_dir(out_dir);
    if (run_cmd->parsed()) {
      report(hlq::cmd_run(config, dir));
    } else if (compare_cmd->parsed()) {
      report(hlq::cmd_compare(config, dir));
    } else if (converge_cmd->parsed()) {
      report(hlq::cmd_converge(config, halvings, dir));
    } else if (husimi_cmd->parsed()) {
      hlq::PhaseSpaceExtent window{-extent, extent, -extent, extent, resolution, resolution};
      report(hlq::cmd_husimi(config, snapshots, window, dir));
    } else if (sweep_cmd->parsed()) {
      const hlq::SweepResult result = hlq::cmd_sweep(config, parameter, values, dir, jobs);
      int status = 0;
      for (const auto& item : result.items) {
        if (item.ok) {
          std::cout << item.file.string() << "  " << item.checksum << '\n';
        } else {
          std::cerr << "hlq: sweep " << parameter << "=" << item.value << " failed: " << item.error
                    << '\n';
          if (status == 0) status = exit_status(item.error_kind);
        }
      }
      std::cout << result.manifest.string() << '\n';
      return status;
    }
  } catch (const hlq::Error& e) {
    std::cerr << "hlq: " << hlq::to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_status(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "hlq: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
