#include "hlq/schedules.hpp"

#include <cmath>
#include <string>

#include "hlq/error.hpp"

namespace hlq {

ScheduleKind parse_schedule_kind(std::string_view name) {
  if (name == "uniform") return ScheduleKind::Uniform;
  if (name == "alternating") return ScheduleKind::Alternating;
  if (name == "rotating") return ScheduleKind::Rotating;
  throw Error(ErrorKind::ValidationError, "unknown schedule '" + std::string(name) + "'");
}

std::string_view to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::Uniform: return "uniform";
    case ScheduleKind::Alternating: return "alternating";
    case ScheduleKind::Rotating: return "rotating";
  }
  return "unknown";
}

namespace {

// sin(theta) cos(theta) = zeta_abs, theta in [0, pi/4].
double mixing_angle(double zeta_abs) {
  if (!(zeta_abs >= 0.0 && zeta_abs <= 0.5)) {
    throw Error(ErrorKind::InvalidCoherence,
                "coherence magnitude must lie in [0, 1/2], got " + std::to_string(zeta_abs));
  }
  return 0.5 * std::asin(2.0 * zeta_abs);
}

void require_steps(int steps) {
  if (steps < 1) {
    throw Error(ErrorKind::ValidationError, "schedule needs at least one step");
  }
}

}  // namespace

Schedule uniform_schedule(int steps, double zeta_abs, double phase, Complex eta) {
  require_steps(steps);
  const double theta = mixing_angle(zeta_abs);
  const AtomPrep prep{std::cos(theta), std::polar(std::sin(theta), phase), eta};
  return Schedule(static_cast<std::size_t>(steps), prep);
}

Schedule alternating_schedule(int steps, double zeta_abs, Complex eta) {
  require_steps(steps);
  const double theta = mixing_angle(zeta_abs);
  Schedule out;
  out.reserve(static_cast<std::size_t>(steps));
  for (int j = 1; j <= steps; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    out.push_back({std::cos(theta), sign * std::sin(theta), eta});
  }
  return out;
}

Schedule rotating_schedule(int steps, double zeta_abs, double omega, double dt, Complex eta) {
  require_steps(steps);
  const double theta = mixing_angle(zeta_abs);
  Schedule out;
  out.reserve(static_cast<std::size_t>(steps));
  for (int j = 1; j <= steps; ++j) {
    const double tau = (j - 0.5) * dt;
    out.push_back({std::cos(theta), std::polar(std::sin(theta), -omega * tau), eta});
  }
  return out;
}

}  // namespace hlq
