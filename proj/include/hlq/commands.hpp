#pragma once

// Experiment orchestration behind the command-line tool. Each command has a
// pure computing half (returning rows) and a writer that emits the CSV files
// plus a manifest.json describing them.

#include <filesystem>
#include <string>
#include <vector>

#include "hlq/engines.hpp"
#include "hlq/error.hpp"
#include "hlq/observables.hpp"

namespace hlq {

inline constexpr const char* kTimeseriesHeader =
    "step,t,pulse_area_over_pi,p00,mean_n,purity,re_b,im_b,var_x,var_y";
inline constexpr const char* kCompareHeader =
    "step,t,p00_hidden,p00_standard,p00_oracle,trace_distance";
inline constexpr const char* kConvergeHeader = "dt,final_trace_distance,ratio";
inline constexpr const char* kHusimiHeader = "x,y,q";
inline constexpr const char* kTrajectoryHeader = "t,re_b,im_b";

/// 12 significant digits.
std::string format_number(double v);

/// FNV-1a 64-bit digest rendered as "fnv1a64:<16 hex digits>".
std::string checksum(std::string_view bytes);

struct OutputFile {
  std::filesystem::path path;
  std::string checksum;
};

struct RunManifest {
  std::string command;
  SimConfig config;
  std::vector<OutputFile> outputs;
};

std::string timeseries_csv(const std::vector<TrajectoryRecord>& records, double omega);
std::string final_state_csv(const ComplexMatrix& rho);

RunManifest cmd_run(const SimConfig& config, const std::filesystem::path& out_dir);

struct CompareRow {
  int step = 0;
  double t = 0.0;
  double p00_hidden = 1.0;
  double p00_standard = 1.0;
  double p00_oracle = 1.0;
  double trace_distance = 0.0;
};

/// Both engines in lockstep on the same schedule.
std::vector<CompareRow> compare_engines(const SimConfig& config);
std::string compare_csv(const std::vector<CompareRow>& rows);
RunManifest cmd_compare(const SimConfig& config, const std::filesystem::path& out_dir);

struct ConvergenceRow {
  double dt = 0.0;
  int steps = 0;
  double final_trace_distance = 0.0;
  /// Previous row's distance over this one; NaN on the first row.
  double ratio = 0.0;
};

/// Halves dt `halvings` times at fixed total time, comparing the final states
/// of the two engines at each resolution.
std::vector<ConvergenceRow> convergence_study(const SimConfig& config, int halvings);
std::string converge_csv(const std::vector<ConvergenceRow>& rows);
RunManifest cmd_converge(const SimConfig& config, int halvings,
                         const std::filesystem::path& out_dir);

struct HusimiSnapshot {
  int step = 0;
  HusimiGrid grid;
};

struct HusimiStudy {
  std::vector<HusimiSnapshot> snapshots;
  std::vector<TrajectoryRecord> trajectory;
};

HusimiStudy husimi_study(const SimConfig& config, const std::vector<int>& snapshot_steps,
                         const PhaseSpaceExtent& extent = {});
std::string husimi_csv(const HusimiGrid& grid);
std::string trajectory_csv(const std::vector<TrajectoryRecord>& records);
RunManifest cmd_husimi(const SimConfig& config, const std::vector<int>& snapshot_steps,
                       const PhaseSpaceExtent& extent, const std::filesystem::path& out_dir);

struct SweepItem {
  std::string value;
  std::filesystem::path file;
  std::string checksum;
  bool ok = false;
  std::string error;
  ErrorKind error_kind = ErrorKind::ValidationError;
  double final_mean_n = 0.0;
  double final_p00 = 0.0;
};

struct SweepResult {
  std::string parameter;
  std::vector<SweepItem> items;
  std::filesystem::path manifest;
  bool all_ok() const;
};

/// One independent run per value, executed on up to `jobs` threads. Failures are
/// reported per item; the manifest is written either way.
SweepResult cmd_sweep(const SimConfig& base, const std::string& parameter,
                      const std::vector<std::string>& values,
                      const std::filesystem::path& out_dir, int jobs = 0);

}  // namespace hlq
