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

#include "rissim/policies.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

namespace rissim
{

Policy baseline_random(const ScenarioConfig &cfg, std::uint64_t seed)
{
    auto rng = std::make_shared<std::mt19937_64>(seed);
    return [cfg, rng](std::span<const double>) {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::normal_distribution<double> normal(0.0, 1.0);
        const int K = cfg.num_nodes();
        const int M = cfg.bs_antennas;

        Action a;
        a.speed = cfg.v_max * unit(*rng);
        a.heading = 2.0 * std::numbers::pi * unit(*rng);
        a.schedule.resize(static_cast<std::size_t>(K));
        for (auto &s : a.schedule)
            s = unit(*rng) < 0.5 ? 1 : 0;
        a.beam.resize(M, K);
        for (Eigen::Index i = 0; i < a.beam.size(); ++i)
        {
            const double re = normal(*rng);
            const double im = normal(*rng);
            a.beam.data()[i] = cdouble(re, im);
        }
        a.beam *= std::sqrt(cfg.p_dl / (2.0 * M * K));
        a.phases = PhaseConfig::zeros(cfg.num_flying(), cfg.num_ground());
        for (double &t : a.phases.theta_uav)
            t = 2.0 * std::numbers::pi * unit(*rng);
        for (double &t : a.phases.theta_ris)
            t = 2.0 * std::numbers::pi * unit(*rng);
        return encode_action(cfg, a);
    };
}

Policy baseline_matched(const ScenarioConfig &cfg)
{
    Position3 centroid;
    for (const auto &p : cfg.node_pos)
    {
        centroid.x += p.x / cfg.num_nodes();
        centroid.y += p.y / cfg.num_nodes();
    }
    return [cfg, centroid](std::span<const double> obs) {
        const ChannelSet ch = decode_channels(cfg, obs);
        const Position3 uav = decode_uav_position(cfg, obs);
        const int focus = decode_slot(obs) % cfg.num_nodes();

        MatchedSolution sol = matched_solution(focus, ch, cfg);

        Action a;
        const double dx = centroid.x - uav.x;
        const double dy = centroid.y - uav.y;
        const double dist = std::hypot(dx, dy);
        a.speed = std::min(cfg.v_max, dist / cfg.slot_dt);
        a.heading = dist > 0.0 ? canonical_phase(std::atan2(dy, dx)) : 0.0;
        a.schedule.assign(static_cast<std::size_t>(cfg.num_nodes()), 1);
        a.beam = std::move(sol.beam.weights);
        a.phases = std::move(sol.phases);
        return encode_action(cfg, a);
    };
}

PolicyFactory make_policy_factory(const std::string &name, const ScenarioConfig &cfg)
{
    if (name == "random")
        return [cfg](std::uint64_t seed) { return baseline_random(cfg, seed ^ 0x9e3779b97f4a7c15ULL); };
    if (name == "matched")
        return [cfg](std::uint64_t) { return baseline_matched(cfg); };
    throw std::invalid_argument("unknown policy '" + name + "' (expected random or matched)");
}

} // namespace rissim
