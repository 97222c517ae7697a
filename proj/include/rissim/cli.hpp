// SPDX-License-Identifier: Apache-2.0
//
// rissim: dual-RIS UAV network simulator and RL environment
// Copyright (C) 2026 The rissim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RISSIM_CLI_HPP
#define RISSIM_CLI_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rissim/scenario.hpp"

namespace rissim
{

// Sets one configuration key from its textual value. Besides every top-level config key and
// dotted sub-keys (rician.UR, jitter_psi.BU, uav_start.x, ...), accepts:
//   N_side        N1 = N2 = value
//   F_side        F1 = F2 = value
//   jitter_ratio  every jitter bound = value * |azimuth of the UAV -> RIS link at uav_start|
ScenarioConfig apply_override(const ScenarioConfig &cfg, std::string_view key, std::string_view value);

// Subcommands: serve | eval | sweep | oracle. Returns the process exit code; parse errors,
// unknown flags and unknown policies print usage to `err` and return 2.
int run_cli(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err);

} // namespace rissim

#endif
