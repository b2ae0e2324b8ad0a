#pragma once

#include <map>
#include <string>

#include "synforge/pipeline.hpp"

namespace synforge {

// Strict sectioned key/value config. Unknown sections or keys are rejected
// with the offending line number; values are validated on load.
//
//   [session]
//   signals = 20000
//   test_sample = 2000
//   seed = 1
//   verify_rounds = 50
//   pa_safety_margin = 32
//   max_pz = 0.11
//   max_px = 0.11
//   sample_delta = 1e-6
//
//   [channel]
//   type = qber | depolarizing | iid | correlated
//   qber = 0.03            (type = qber)
//   q = 0.045              (type = depolarizing)
//   p_i/p_x/p_y/p_z = ...  (type = iid)
//   pairs = 4              (type = correlated)
//   components = 0.9:IIII, 0.1:XIXI
//
//   [cascade]
//   passes = 4
//   block_factor = 0.73
//   k1_override = 0
//   error_headroom = 1.5
SessionConfig load_session_config(const std::string& path);

// Parses "LO:HI:STEP" into an inclusive grid; every point in (0, 0.5).
std::vector<double> parse_qber_grid(const std::string& spec);

} // namespace synforge
