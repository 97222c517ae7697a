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

#ifndef RISSIM_ORACLE_HPP
#define RISSIM_ORACLE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "rissim/kernels.hpp"

namespace rissim
{

inline constexpr std::uint64_t oracle_combination_limit = 10'000'000;

// Single-slot max-min objective: min_k of dl_weight * log2(1 + SINR_k^DL) + (1 - dl_weight) *
// log2(1 + SINR_k^UL), with the beams projected onto the DL and UL budgets.
double slot_min_rate(const ScenarioConfig &cfg, const ChannelSet &ch, const PhaseConfig &phases,
                     const BeamMatrix &beam);

// Matched-filter beams: column k = sqrt(share_k * P_dl) g_k^H / |g_k| with share_k = parts[k] /
// sum(parts). gains is K x M.
BeamMatrix split_matched_beams(const CMatrix &gains, std::span<const int> parts, double budget);

// Every way of writing `grid` as an ordered sum of `nodes` nonnegative integers.
std::vector<std::vector<int>> power_splits(int nodes, int grid);

// Rounds each phase to the nearest multiple of 2 pi / levels.
PhaseConfig snap_to_grid(const PhaseConfig &phases, int levels);

// Phase combinations searched: levels^(F + N - 1). The first flying-RIS phase is pinned to 0,
// since a common rotation of all flying-RIS phases only rotates every effective channel.
std::uint64_t oracle_combinations(const ScenarioConfig &cfg, int phase_levels, int beam_grid);

struct OracleResult
{
    PhaseConfig phases;
    BeamMatrix beam;
    double min_rate = 0.0;
    std::uint64_t combinations = 0;
};

// Exhaustive max-min search over uniformly quantized phases and a matched-filter power-split
// beam grid for one frozen channel set. Throws std::invalid_argument when the number of
// combinations exceeds oracle_combination_limit.
OracleResult oracle_exhaustive(const ScenarioConfig &cfg, const ChannelSet &ch, int phase_levels, int beam_grid,
                               kernels::Backend backend = kernels::Backend::openmp);

// Same, on the channel set realized at uav_start for slot 0 and cfg.seed.
OracleResult oracle_exhaustive(const ScenarioConfig &cfg, int phase_levels, int beam_grid,
                               kernels::Backend backend = kernels::Backend::openmp);

} // namespace rissim

#endif
