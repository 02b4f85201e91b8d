#pragma once

// The hidden-Liouville engine (virtual spin adjoined for one step, short
// Jaynes-Cummings propagation, spin traced out) and the standard engine
// (semiclassical drive, two-sided conjugation by the short-step propagator).

#include <string>
#include <string_view>
#include <vector>

#include "hlq/fock.hpp"
#include "hlq/observables.hpp"
#include "hlq/schedules.hpp"

namespace hlq {

enum class EngineKind { Hidden, Standard, Both };

EngineKind parse_engine_kind(std::string_view name);
std::string_view to_string(EngineKind kind);

struct InitialState {
  enum class Kind { Vacuum, Coherent };
  Kind kind = Kind::Vacuum;
  Complex gamma{};
};

struct SimConfig {
  Model model = Model::Linear;
  double omega = 0.0;
  double dt = 1e-3;
  int steps = 1;
  int dim = 32;
  Complex eta{1.0, 0.0};
  double zeta_abs = 0.5;
  ScheduleKind schedule = ScheduleKind::Uniform;
  /// Phase of beta for the uniform schedule.
  double phase = 0.0;
  /// k in the operator phase exp(-i k omega tau) carried by R(tau).
  int phase_multiplicity = 1;
  InitialState initial{};
  EngineKind engine = EngineKind::Hidden;
  std::vector<std::string> outputs{"timeseries", "final_state"};

  double total_time() const { return steps * dt; }
};

/// Throws ValidationError naming the offending key.
void validate(const SimConfig& config);

Schedule make_schedule(const SimConfig& config);
ComplexMatrix initial_density(const SimConfig& config);

/// Drive amplitude of the semiclassical engine equivalent to one preparation
/// to first order in dt: eta * conj(zeta).
Complex effective_drive(const AtomPrep& prep);

/// V_A(tau) = |up><down| (x) eta* R0 e^{-ik omega tau} + |down><up| (x) eta R0^dag e^{ik omega tau}.
ComplexMatrix jc_hamiltonian(const ComplexMatrix& r0, int phase_multiplicity, Complex eta,
                             double omega, double tau);

/// V_I(tau) = eps* R0 e^{-ik omega tau} + eps R0^dag e^{ik omega tau}.
ComplexMatrix drive_hamiltonian(const ComplexMatrix& r0, int phase_multiplicity, Complex eps,
                                double omega, double tau);

/// Tr_A[U (A (x) rho) U^dag] with U = exp(-i V_A dt) and A the preparation's projector.
ComplexMatrix hidden_step(const ComplexMatrix& rho, const AtomPrep& prep,
                          const ComplexMatrix& v_a, double dt);

/// exp(-i V_I dt) rho exp(i V_I dt).
ComplexMatrix standard_step(const ComplexMatrix& rho, Complex eps, const ComplexMatrix& r0,
                            int phase_multiplicity, double omega, double tau, double dt);

/// Hidden step with one base propagator exp(-i V_A(0) dt) conjugated by the
/// diagonal phase operator exp(i nu tau n), nu = k omega / m, where m is the
/// number of quanta R0 lowers. The spin trace is applied through the two
/// Kraus blocks <s| U |phi>.
class HiddenPropagatorCache {
 public:
  HiddenPropagatorCache(ComplexMatrix r0, int quanta, int phase_multiplicity, double omega,
                        double dt);

  ComplexMatrix step(const ComplexMatrix& rho, const AtomPrep& prep, double tau);
  double max_unitarity_error() const { return unitarity_error_; }

 private:
  void rebuild(Complex eta);

  ComplexMatrix r0_;
  int phase_multiplicity_;
  double omega_;
  double dt_;
  double phase_rate_;
  Complex eta_{};
  bool built_ = false;
  ComplexMatrix blocks_[2][2];
  double unitarity_error_ = 0.0;
};

/// Same phase-conjugation trick for the standard engine; base propagators are
/// kept per distinct drive amplitude.
class StandardPropagatorCache {
 public:
  StandardPropagatorCache(ComplexMatrix r0, int quanta, int phase_multiplicity, double omega,
                          double dt);

  ComplexMatrix step(const ComplexMatrix& rho, Complex eps, double tau);
  double max_unitarity_error() const { return unitarity_error_; }

 private:
  const ComplexMatrix& base_for(Complex eps);

  ComplexMatrix r0_;
  int phase_multiplicity_;
  double omega_;
  double dt_;
  double phase_rate_;
  std::vector<std::pair<Complex, ComplexMatrix>> bases_;
  double unitarity_error_ = 0.0;
};

/// Structural checks accumulated over a run.
struct RunDiagnostics {
  double max_trace_drift = 0.0;       // max_j |Tr rho_j - 1|
  double max_step_trace_drift = 0.0;  // max_j |Tr rho_j - Tr rho_{j-1}|
  double max_hermiticity_error = 0.0;
  double min_eigenvalue = 1.0;
  double min_purity = 1.0;
  double max_top_population = 0.0;
  double max_propagator_unitarity_error = 0.0;
};

inline constexpr double kTruncationThreshold = 1e-6;

/// One engine advancing a density matrix through a schedule, step by step.
/// Raises TruncationOverflow when the top two Fock levels hold kTruncationThreshold
/// or more population.
class Evolver {
 public:
  Evolver(const SimConfig& config, const Schedule& schedule, EngineKind engine,
          bool cached = true);

  void advance();
  bool done() const { return step_ == static_cast<int>(schedule_.size()); }
  int step() const { return step_; }
  double time() const { return step_ * config_.dt; }
  const ComplexMatrix& state() const { return rho_; }
  const RunDiagnostics& diagnostics() const;

 private:
  void check_state();

  SimConfig config_;
  Schedule schedule_;
  EngineKind engine_;
  bool cached_;
  ComplexMatrix r0_;
  ComplexMatrix rho_;
  int step_ = 0;
  double prev_trace_ = 1.0;
  HiddenPropagatorCache hidden_cache_;
  StandardPropagatorCache standard_cache_;
  mutable RunDiagnostics diagnostics_;
};

struct RunResult {
  std::vector<TrajectoryRecord> records;  // records[0] is the initial state
  ComplexMatrix final_state;
  RunDiagnostics diagnostics;
};

RunResult run(const SimConfig& config, const Schedule& schedule, EngineKind engine,
              bool cached = true);
RunResult run(const SimConfig& config, EngineKind engine);

}  // namespace hlq
