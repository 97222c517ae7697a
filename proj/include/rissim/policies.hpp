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

#ifndef RISSIM_POLICIES_HPP
#define RISSIM_POLICIES_HPP

#include <cstdint>
#include <string>

#include "rissim/env.hpp"

namespace rissim
{

// Uniform speed, heading and phases, coin-flip scheduling, complex Gaussian beams scaled to
// the DL budget.
Policy baseline_random(const ScenarioConfig &cfg, std::uint64_t seed);

// Flies toward the node centroid and, from the observed CSI, applies matched_solution to one
// focus node per slot, cycling the focus round-robin.
Policy baseline_matched(const ScenarioConfig &cfg);

// "random" or "matched"; throws std::invalid_argument otherwise.
PolicyFactory make_policy_factory(const std::string &name, const ScenarioConfig &cfg);

} // namespace rissim

#endif
