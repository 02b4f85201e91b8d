#include "hlq/engines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hlq/error.hpp"

namespace hlq {

EngineKind parse_engine_kind(std::string_view name) {
  if (name == "hidden") return EngineKind::Hidden;
  if (name == "standard") return EngineKind::Standard;
  if (name == "both") return EngineKind::Both;
  throw Error(ErrorKind::ValidationError, "unknown engine '" + std::string(name) + "'");
}

std::string_view to_string(EngineKind kind) {
  switch (kind) {
    case EngineKind::Hidden: return "hidden";
    case EngineKind::Standard: return "standard";
    case EngineKind::Both: return "both";
  }
  return "unknown";
}

namespace {

[[noreturn]] void invalid(const std::string& key, const std::string& why) {
  throw Error(ErrorKind::ValidationError, "invalid value for '" + key + "': " + why);
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Multiply entry (r, c) by phases(r) * conj(phases(c)).
ComplexMatrix conjugate_diagonal(const ComplexMatrix& m, const ComplexVector& phases) {
  return phases.asDiagonal() * m * phases.conjugate().asDiagonal();
}

ComplexVector number_phases(int dim, double angle_per_quantum) {
  ComplexVector p(dim);
  for (int n = 0; n < dim; ++n) p(n) = std::polar(1.0, angle_per_quantum * n);
  return p;
}

}  // namespace

void validate(const SimConfig& c) {
  if (!std::isfinite(c.omega)) invalid("omega", "must be finite");
  if (!(c.dt > 0.0) || !std::isfinite(c.dt)) invalid("dt", "must be positive");
  if (c.steps < 1) invalid("steps", "must be >= 1");
  if (c.dim < 2) invalid("dim", "must be >= 2");
  if (!finite(c.eta)) invalid("eta", "must be finite");
  if (!(c.zeta_abs >= 0.0 && c.zeta_abs <= 0.5)) invalid("zeta", "must lie in [0, 1/2]");
  if (!std::isfinite(c.phase)) invalid("phase", "must be finite");
  if (c.phase_multiplicity < 0) invalid("phase_multiplicity", "must be >= 0");
  if (!finite(c.initial.gamma)) invalid("initial", "coherent amplitude must be finite");
  for (const auto& o : c.outputs) {
    if (o != "timeseries" && o != "final_state") invalid("outputs", "unknown output '" + o + "'");
  }
}

Schedule make_schedule(const SimConfig& c) {
  switch (c.schedule) {
    case ScheduleKind::Uniform: return uniform_schedule(c.steps, c.zeta_abs, c.phase, c.eta);
    case ScheduleKind::Alternating: return alternating_schedule(c.steps, c.zeta_abs, c.eta);
    case ScheduleKind::Rotating:
      return rotating_schedule(c.steps, c.zeta_abs, c.omega, c.dt, c.eta);
  }
  throw Error(ErrorKind::ValidationError, "unknown schedule");
}

ComplexMatrix initial_density(const SimConfig& c) {
  if (c.initial.kind == InitialState::Kind::Vacuum) {
    ComplexMatrix rho = ComplexMatrix::Zero(c.dim, c.dim);
    rho(0, 0) = 1.0;
    return rho;
  }
  ComplexVector v = coherent_vector(c.initial.gamma, c.dim);
  v.normalize();
  return v * v.adjoint();
}

Complex effective_drive(const AtomPrep& prep) { return prep.eta * std::conj(prep.coherence()); }

ComplexMatrix jc_hamiltonian(const ComplexMatrix& r0, int k, Complex eta, double omega,
                             double tau) {
  const Eigen::Index d = r0.rows();
  const ComplexMatrix raised = std::conj(eta) * std::polar(1.0, -k * omega * tau) * r0;
  ComplexMatrix v = ComplexMatrix::Zero(2 * d, 2 * d);
  v.topRightCorner(d, d) = raised;
  v.bottomLeftCorner(d, d) = raised.adjoint();
  return v;
}

ComplexMatrix drive_hamiltonian(const ComplexMatrix& r0, int k, Complex eps, double omega,
                                double tau) {
  const ComplexMatrix lowered = std::conj(eps) * std::polar(1.0, -k * omega * tau) * r0;
  return lowered + lowered.adjoint();
}

ComplexMatrix hidden_step(const ComplexMatrix& rho, const AtomPrep& prep,
                          const ComplexMatrix& v_a, double dt) {
  const ComplexMatrix a = spin_projector(prep.alpha, prep.beta);
  const ComplexMatrix u = hermitian_propagator(v_a, dt);
  return partial_trace_spin(u * tensor_embed(a, rho) * u.adjoint());
}

ComplexMatrix standard_step(const ComplexMatrix& rho, Complex eps, const ComplexMatrix& r0,
                            int k, double omega, double tau, double dt) {
  const ComplexMatrix u = hermitian_propagator(drive_hamiltonian(r0, k, eps, omega, tau), dt);
  return u * rho * u.adjoint();
}

HiddenPropagatorCache::HiddenPropagatorCache(ComplexMatrix r0, int quanta, int k, double omega,
                                             double dt)
    : r0_(std::move(r0)),
      phase_multiplicity_(k),
      omega_(omega),
      dt_(dt),
      phase_rate_(k * omega / quanta) {}

void HiddenPropagatorCache::rebuild(Complex eta) {
  const ComplexMatrix u = hermitian_propagator(jc_hamiltonian(r0_, phase_multiplicity_, eta, omega_, 0.0), dt_);
  unitarity_error_ = std::max(unitarity_error_, unitarity_error(u));
  const Eigen::Index d = r0_.rows();
  for (int s = 0; s < 2; ++s) {
    for (int r = 0; r < 2; ++r) blocks_[s][r] = u.block(s * d, r * d, d, d);
  }
  eta_ = eta;
  built_ = true;
}

ComplexMatrix HiddenPropagatorCache::step(const ComplexMatrix& rho, const AtomPrep& prep,
                                          double tau) {
  // Validates normalization of the preparation.
  (void)spin_projector(prep.alpha, prep.beta);
  if (!built_ || prep.eta != eta_) rebuild(prep.eta);
  const int d = static_cast<int>(r0_.rows());
  const ComplexVector phases = number_phases(d, phase_rate_ * tau);
  const ComplexMatrix rotated = conjugate_diagonal(rho, phases.conjugate());
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (int s = 0; s < 2; ++s) {
    const ComplexMatrix kraus = prep.alpha * blocks_[s][0] + prep.beta * blocks_[s][1];
    out.noalias() += kraus * rotated * kraus.adjoint();
  }
  return conjugate_diagonal(out, phases);
}

StandardPropagatorCache::StandardPropagatorCache(ComplexMatrix r0, int quanta, int k,
                                                 double omega, double dt)
    : r0_(std::move(r0)),
      phase_multiplicity_(k),
      omega_(omega),
      dt_(dt),
      phase_rate_(k * omega / quanta) {}

const ComplexMatrix& StandardPropagatorCache::base_for(Complex eps) {
  for (const auto& [key, u] : bases_) {
    if (key == eps) return u;
  }
  ComplexMatrix u =
      hermitian_propagator(drive_hamiltonian(r0_, phase_multiplicity_, eps, omega_, 0.0), dt_);
  unitarity_error_ = std::max(unitarity_error_, unitarity_error(u));
  // Schedules use one or two distinct amplitudes unless the drive rotates.
  if (bases_.size() >= 4) bases_.erase(bases_.begin());
  bases_.emplace_back(eps, std::move(u));
  return bases_.back().second;
}

ComplexMatrix StandardPropagatorCache::step(const ComplexMatrix& rho, Complex eps, double tau) {
  const ComplexMatrix& u0 = base_for(eps);
  const ComplexVector phases = number_phases(static_cast<int>(r0_.rows()), phase_rate_ * tau);
  const ComplexMatrix rotated = conjugate_diagonal(rho, phases.conjugate());
  return conjugate_diagonal(u0 * rotated * u0.adjoint(), phases);
}

Evolver::Evolver(const SimConfig& config, const Schedule& schedule, EngineKind engine,
                 bool cached)
    : config_((validate(config), config)),
      schedule_(schedule),
      engine_(engine),
      cached_(cached),
      r0_(model_operator(config.model, config.dim)),
      rho_(initial_density(config)),
      hidden_cache_(r0_, quanta_lowered(config.model), config.phase_multiplicity, config.omega,
                    config.dt),
      standard_cache_(r0_, quanta_lowered(config.model), config.phase_multiplicity,
                      config.omega, config.dt) {
  if (engine_ == EngineKind::Both) {
    throw Error(ErrorKind::ValidationError, "an evolver drives exactly one engine");
  }
  if (schedule_.size() != static_cast<std::size_t>(config_.steps)) {
    throw Error(ErrorKind::ValidationError,
                "schedule length " + std::to_string(schedule_.size()) + " does not match steps " +
                    std::to_string(config_.steps));
  }
  prev_trace_ = trace(rho_).real();
  check_state();
}

void Evolver::advance() {
  if (done()) throw Error(ErrorKind::ValidationError, "schedule exhausted");
  const AtomPrep& prep = schedule_[static_cast<std::size_t>(step_)];
  const double tau = (step_ + 0.5) * config_.dt;
  const int k = config_.phase_multiplicity;
  if (engine_ == EngineKind::Hidden) {
    if (cached_) {
      rho_ = hidden_cache_.step(rho_, prep, tau);
    } else {
      const ComplexMatrix v_a = jc_hamiltonian(r0_, k, prep.eta, config_.omega, tau);
      diagnostics_.max_propagator_unitarity_error =
          std::max(diagnostics_.max_propagator_unitarity_error,
                   unitarity_error(hermitian_propagator(v_a, config_.dt)));
      rho_ = hidden_step(rho_, prep, v_a, config_.dt);
    }
  } else {
    const Complex eps = effective_drive(prep);
    if (cached_) {
      rho_ = standard_cache_.step(rho_, eps, tau);
    } else {
      diagnostics_.max_propagator_unitarity_error = std::max(
          diagnostics_.max_propagator_unitarity_error,
          unitarity_error(hermitian_propagator(
              drive_hamiltonian(r0_, k, eps, config_.omega, tau), config_.dt)));
      rho_ = standard_step(rho_, eps, r0_, k, config_.omega, tau, config_.dt);
    }
  }
  ++step_;
  check_state();
}

void Evolver::check_state() {
  const double tr = trace(rho_).real();
  auto& diag = diagnostics_;
  diag.max_trace_drift = std::max(diag.max_trace_drift, std::abs(tr - 1.0));
  diag.max_step_trace_drift = std::max(diag.max_step_trace_drift, std::abs(tr - prev_trace_));
  prev_trace_ = tr;
  diag.max_hermiticity_error = std::max(diag.max_hermiticity_error, hermiticity_error(rho_));
  diag.min_eigenvalue = std::min(diag.min_eigenvalue, min_eigenvalue(rho_));
  diag.min_purity = std::min(diag.min_purity, purity(rho_));
  const double top = top_population(rho_, 2);
  diag.max_top_population = std::max(diag.max_top_population, top);
  if (top >= kTruncationThreshold) {
    throw Error(ErrorKind::TruncationOverflow,
                "top two Fock levels hold population " + std::to_string(top) + " at step " +
                    std::to_string(step_) + "; increase dim (currently " +
                    std::to_string(config_.dim) + ")");
  }
}

const RunDiagnostics& Evolver::diagnostics() const {
  diagnostics_.max_propagator_unitarity_error =
      std::max({diagnostics_.max_propagator_unitarity_error, hidden_cache_.max_unitarity_error(),
                standard_cache_.max_unitarity_error()});
  return diagnostics_;
}

RunResult run(const SimConfig& config, const Schedule& schedule, EngineKind engine,
              bool cached) {
  Evolver evolver(config, schedule, engine, cached);
  RunResult result;
  result.records.reserve(schedule.size() + 1);
  result.records.push_back(make_record(0, 0.0, evolver.state()));
  while (!evolver.done()) {
    evolver.advance();
    result.records.push_back(make_record(evolver.step(), evolver.time(), evolver.state()));
  }
  result.final_state = evolver.state();
  result.diagnostics = evolver.diagnostics();
  return result;
}

RunResult run(const SimConfig& config, EngineKind engine) {
  validate(config);
  return run(config, make_schedule(config), engine);
}

}  // namespace hlq
