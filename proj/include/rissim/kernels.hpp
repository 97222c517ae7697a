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

#ifndef RISSIM_KERNELS_HPP
#define RISSIM_KERNELS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "rissim/signal.hpp"

// Per-node and per-grid-point loops. Each kernel has a serial reference path, kept for the
// equivalence tests and the benchmark, and an OpenMP path used by the simulator.
namespace rissim::kernels
{

enum class Backend
{
    serial,
    openmp
};

// K x M matrix whose row k is the effective channel of node k. The serial path calls
// effective_dl_channel / effective_ul_channel per node; the OpenMP path shares the
// flying-RIS -> BS product across nodes.
CMatrix effective_channels(const ChannelSet &ch, const PhaseConfig &ph, LinkDirection dir,
                           Backend backend = Backend::openmp);

std::vector<double> sinr_all(const CMatrix &gains, const CMatrix &beams, double sigma2,
                             Backend backend = Backend::openmp);

struct GridBest
{
    double value;
    std::uint64_t index;
};

// Maximizes objective(i) over i in [0, count). Ties resolve to the lowest index, so both
// backends return the same point.
GridBest grid_argmax(std::uint64_t count, const std::function<double(std::uint64_t)> &objective,
                     Backend backend = Backend::openmp);

int max_threads();

} // namespace rissim::kernels

#endif
