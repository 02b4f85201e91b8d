#pragma once

// Flat key-value run configuration:
//
//   # comment
//   model = linear            linear | two-boson | intensity
//   omega = 1.2566370614
//   dt = 0.001
//   steps = 3750
//   zeta = 0.5
//   dim = 32                  optional, default 32
//   eta = 1                   optional, real or (re,im)
//   schedule = uniform        optional: uniform | alternating | rotating
//   phase = 0                 optional, beta phase of the uniform schedule
//   phase_multiplicity = 1    optional, k in exp(-i k omega tau)
//   engine = hidden           optional: hidden | standard | both
//   initial = vacuum          optional: vacuum | coherent(re,im)
//   outputs = timeseries,final_state

#include <string>
#include <string_view>

#include "hlq/engines.hpp"

namespace hlq {

SimConfig parse_config(std::string_view text);
SimConfig load_config(const std::string& path);

/// Inverse of parse_config; doubles are written with round-trip precision.
std::string format_config(const SimConfig& config);

/// Applies a single key = value override, as used by parameter sweeps.
void set_config_value(SimConfig& config, std::string_view key, std::string_view value);

}  // namespace hlq
