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

#ifndef RISSIM_ENV_HPP
#define RISSIM_ENV_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rissim/kernels.hpp"
#include "rissim/signal.hpp"

namespace rissim
{

// Flat observation layout:
//   [x / area_x, y / area_y, slot,
//    H_BU, H_UR, h_Rk rows, h_Uk rows   (row-major, interleaved re/im),
//    pl_cascade[K], pl_direct_ris[K], pl_direct_uav[K], pl_two_hop[K]]
std::size_t obs_length(const ScenarioConfig &cfg);

// Flat action layout:
//   [speed, heading, schedule[K], W_real (M x K row-major), W_imag (M x K), theta_U[F], theta_R[N]]
// schedule entries >= 0.5 mean scheduled.
std::size_t action_length(const ScenarioConfig &cfg);

struct Action
{
    double speed = 0.0;   // m/s
    double heading = 0.0; // radians from +x
    std::vector<std::uint8_t> schedule;
    CMatrix beam; // M x K
    PhaseConfig phases;
};

struct DecodedAction
{
    Action action;
    int clamp_count = 0; // out-of-range components that were clamped
};

// Clamps speed into [0, v_max] (counted) and canonicalizes heading and phases into [0, 2 pi).
// Throws std::invalid_argument on a wrong length or non-finite entries.
DecodedAction decode_action(const ScenarioConfig &cfg, std::span<const double> flat);
std::vector<double> encode_action(const ScenarioConfig &cfg, const Action &action);

std::vector<double> encode_state(const ScenarioConfig &cfg, const Position3 &uav, int slot, const ChannelSet &ch);

// Inverse of encode_state for the CSI block; used by policies that only see observations.
ChannelSet decode_channels(const ScenarioConfig &cfg, std::span<const double> obs);
Position3 decode_uav_position(const ScenarioConfig &cfg, std::span<const double> obs);
int decode_slot(std::span<const double> obs);

struct StepInfo
{
    std::vector<double> rates;    // weighted per-node slot rates (0 for unscheduled nodes)
    std::vector<double> dl_rates; // per-node DL slot rates
    std::vector<double> ul_rates; // per-node UL slot rates
    double min_rate = 0.0;        // min over nodes of the time-averaged weighted rate so far
    bool boundary = false;
    double power_used = 0.0;      // ||W||_F^2 after projection
    int clamp_count = 0;
    Position3 uav;
};

struct StepResult
{
    std::vector<double> obs;
    double reward = 0.0;
    bool done = false;
    StepInfo info;
};

class EnvError : public std::runtime_error
{
public:
    EnvError(std::string code, const std::string &what) : std::runtime_error(what), code_(std::move(code)) {}
    const std::string &code() const noexcept { return code_; }

private:
    std::string code_;
};

// One episode at a time; reset() and step() are strictly sequential.
class Environment
{
public:
    explicit Environment(ScenarioConfig cfg, kernels::Backend backend = kernels::Backend::openmp);

    std::vector<double> reset(std::uint64_t seed);
    StepResult step(std::span<const double> flat_action);
    StepResult step(const Action &action, int clamp_count = 0);

    bool active() const { return active_; }
    int slot() const { return slot_; }
    const ScenarioConfig &config() const { return cfg_; }
    const ChannelSet &channels() const { return channels_; }
    const Position3 &uav() const { return uav_; }
    // Mean of ||W||^2 over the slots stepped so far.
    double average_power() const;
    RateReport report() const;

private:
    ScenarioConfig cfg_;
    kernels::Backend backend_;
    std::uint64_t seed_ = 0;
    bool active_ = false;
    int slot_ = 0;
    Position3 uav_;
    ChannelSet channels_;
    std::vector<double> dl_sum_, ul_sum_;
    std::vector<std::vector<double>> dl_history_, ul_history_;
    double power_sum_ = 0.0;
};

using Policy = std::function<std::vector<double>(std::span<const double> obs)>;
using PolicyFactory = std::function<Policy(std::uint64_t episode_seed)>;

struct TraceRow
{
    int slot = 0;
    std::vector<double> action;
    double reward = 0.0;
    bool done = false;
    StepInfo info;
};

struct Trace
{
    std::uint64_t seed = 0;
    std::vector<TraceRow> rows;
    RateReport report;
    double average_power = 0.0;
};

class PolicyError : public std::runtime_error
{
public:
    PolicyError(int slot, const std::string &what);
    int slot() const noexcept { return slot_; }

private:
    int slot_;
};

Trace run_episode(const Policy &policy, const ScenarioConfig &cfg, std::uint64_t seed);

// Runs one episode per seed; episodes are distributed over threads on the OpenMP backend.
// Output order follows seeds regardless of the backend.
std::vector<Trace> run_episodes(const PolicyFactory &factory, const ScenarioConfig &cfg,
                                const std::vector<std::uint64_t> &seeds,
                                kernels::Backend backend = kernels::Backend::openmp);

} // namespace rissim

#endif
