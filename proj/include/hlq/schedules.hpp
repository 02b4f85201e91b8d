#pragma once

// Per-step preparations of the virtual two-state spin.

#include <string_view>
#include <vector>

#include "hlq/fock.hpp"

namespace hlq {

/// One virtual-spin preparation: amplitudes of |up>, |down> and the coupling.
struct AtomPrep {
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};
  Complex eta{1.0, 0.0};

  /// Spin coherence zeta = conj(alpha) * beta.
  Complex coherence() const { return std::conj(alpha) * beta; }
};

using Schedule = std::vector<AtomPrep>;

enum class ScheduleKind { Uniform, Alternating, Rotating };

ScheduleKind parse_schedule_kind(std::string_view name);
std::string_view to_string(ScheduleKind kind);

/// All atoms in the same phase (superradiant program).
Schedule uniform_schedule(int steps, double zeta_abs, double phase, Complex eta);

/// Consecutive atoms out of phase by pi, zeta_j = (-1)^j zeta_abs for j = 1..N
/// (sub-radiant program).
Schedule alternating_schedule(int steps, double zeta_abs, Complex eta);

/// zeta_j = zeta_abs exp(-i omega tau_j) with tau_j = (j - 1/2) dt.
Schedule rotating_schedule(int steps, double zeta_abs, double omega, double dt, Complex eta);

}  // namespace hlq
