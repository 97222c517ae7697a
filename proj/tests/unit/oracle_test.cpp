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


#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rissim/oracle.hpp"

using namespace rissim;
using std::numbers::pi;

namespace
{

ScenarioConfig tiny(int F2, int N2)
{
    ScenarioConfig cfg = testing::single_link_config();
    cfg.rician = {5.0, 5.0, 5.0, 5.0};
    cfg.flying_ris = {1, F2};
    cfg.ground_ris = {1, N2};
    return cfg;
}

double wrap(double x)
{
    x = std::fmod(x, 2.0 * pi);
    if (x > pi)
        x -= 2.0 * pi;
    if (x < -pi)
        x += 2.0 * pi;
    return x;
}

} // namespace

TEST_SUITE("oracle")
{
    TEST_CASE("power splits enumerate compositions")
    {
        CHECK(power_splits(1, 4).size() == 1);
        CHECK(power_splits(2, 4).size() == 5);
        CHECK(power_splits(3, 4).size() == 15); // C(6, 2)
        for (const auto &s : power_splits(3, 4))
            CHECK(s[0] + s[1] + s[2] == 4);
        CHECK_THROWS(power_splits(0, 4));
    }

    TEST_CASE("combination guard")
    {
        const ScenarioConfig cfg = load_config("");
        CHECK(oracle_combinations(tiny(2, 2), 16, 1) == 16 * 16 * 16);
        CHECK(oracle_combinations(cfg, 16, 4) > oracle_combination_limit);
        CHECK_THROWS_AS(oracle_exhaustive(cfg, 16, 4), std::invalid_argument);
    }

    TEST_CASE("single element co-phasing angle")
    {
        const ScenarioConfig cfg = tiny(1, 1);
        for (std::uint64_t seed = 0; seed < 10; ++seed)
        {
            const ChannelSet ch = realize_channels(cfg, cfg.uav_start, ChannelRng(seed, 0));
            const OracleResult r = oracle_exhaustive(cfg, ch, 16, 1);
            // Cascade and direct term align when theta_R = arg(h_U) - arg(h_R H_UR).
            const double ideal = std::arg(ch.uav_to_node(0, 0)) - std::arg(ch.ris_to_node(0, 0) * ch.uav_to_ris(0, 0));
            CHECK(std::abs(wrap(r.phases.theta_ris[0] - ideal)) <= pi / 16.0 + 1e-12);
            CHECK(r.phases.theta_uav[0] == 0.0);
        }
    }

    TEST_CASE("refining the grid never decreases the optimum")
    {
        const ScenarioConfig cfg = tiny(2, 2);
        const ChannelSet ch = realize_channels(cfg, cfg.uav_start, ChannelRng(3, 0));
        double prev = -1.0;
        for (int levels : {2, 4, 8, 16, 32})
        {
            const double v = oracle_exhaustive(cfg, ch, levels, 1).min_rate;
            CHECK(v + 1e-12 >= prev);
            prev = v;
        }
    }

    TEST_CASE("random grid points never beat the optimum")
    {
        ScenarioConfig cfg = tiny(2, 2);
        cfg.node_pos = {{380.0, 220.0, 0.0}, {340.0, 180.0, 0.0}};
        cfg.bs_antennas = 2;
        const ChannelSet ch = realize_channels(cfg, cfg.uav_start, ChannelRng(5, 0));
        const int levels = 8, grid = 4;
        const OracleResult best = oracle_exhaustive(cfg, ch, levels, grid);
        CHECK(best.min_rate == doctest::Approx(slot_min_rate(cfg, ch, best.phases, best.beam)).epsilon(1e-12));

        const auto splits = power_splits(cfg.num_nodes(), grid);
        std::mt19937_64 rng(17);
        std::uniform_int_distribution<int> level(0, levels - 1);
        std::uniform_int_distribution<std::size_t> split(0, splits.size() - 1);
        for (int t = 0; t < 10000; ++t)
        {
            PhaseConfig ph = PhaseConfig::zeros(cfg.num_flying(), cfg.num_ground());
            // Any common rotation of the flying-RIS phases is equivalent; sample all of them freely.
            for (double &x : ph.theta_uav)
                x = 2.0 * pi * level(rng) / levels;
            for (double &x : ph.theta_ris)
                x = 2.0 * pi * level(rng) / levels;
            CMatrix gains(cfg.num_nodes(), cfg.bs_antennas);
            for (int k = 0; k < cfg.num_nodes(); ++k)
                gains.row(k) = effective_dl_channel(k, ch, ph);
            const BeamMatrix w = split_matched_beams(gains, splits[split(rng)], cfg.p_dl);
            CHECK(slot_min_rate(cfg, ch, ph, w) <= best.min_rate + 1e-12);
        }
    }

    TEST_CASE("common flying-RIS rotation leaves the objective unchanged")
    {
        const ScenarioConfig cfg = tiny(2, 2);
        const ChannelSet ch = realize_channels(cfg, cfg.uav_start, ChannelRng(8, 0));
        std::mt19937_64 rng(3);
        const PhaseConfig ph = testing::random_phases(rng, 2, 2);
        PhaseConfig rotated = ph;
        for (double &x : rotated.theta_uav)
            x += 1.234;
        const CMatrix g = effective_dl_channel(0, ch, ph);
        const BeamMatrix w{g.adjoint() * (std::sqrt(cfg.p_dl) / g.norm()), LinkDirection::downlink};
        const CMatrix gr = effective_dl_channel(0, ch, rotated);
        const BeamMatrix wr{gr.adjoint() * (std::sqrt(cfg.p_dl) / gr.norm()), LinkDirection::downlink};
        CHECK(slot_min_rate(cfg, ch, ph, w) == doctest::Approx(slot_min_rate(cfg, ch, rotated, wr)).epsilon(1e-12));
    }

    TEST_CASE("oracle beats the grid-snapped matched heuristic")
    {
        const ScenarioConfig cfg = tiny(2, 2);
        for (std::uint64_t seed = 0; seed < 5; ++seed)
        {
            const ChannelSet ch = realize_channels(cfg, cfg.uav_start, ChannelRng(seed, 0));
            const OracleResult best = oracle_exhaustive(cfg, ch, 16, 1);
            const MatchedSolution h = matched_solution(0, ch, cfg);
            const PhaseConfig snapped = snap_to_grid(h.phases, 16);
            CMatrix g = effective_dl_channel(0, ch, snapped);
            const BeamMatrix w{g.adjoint() * (std::sqrt(cfg.p_dl) / g.norm()), LinkDirection::downlink};
            CHECK(best.min_rate + 1e-12 >= slot_min_rate(cfg, ch, snapped, w));
            CHECK(best.min_rate + 1e-12 >= slot_min_rate(cfg, ch, snapped, h.beam));
        }
    }

    TEST_CASE("serial and OpenMP searches agree")
    {
        const ScenarioConfig cfg = tiny(2, 2);
        const ChannelSet ch = realize_channels(cfg, cfg.uav_start, ChannelRng(9, 0));
        const OracleResult a = oracle_exhaustive(cfg, ch, 8, 1, kernels::Backend::serial);
        const OracleResult b = oracle_exhaustive(cfg, ch, 8, 1, kernels::Backend::openmp);
        CHECK(a.min_rate == b.min_rate);
        CHECK(a.phases.theta_ris == b.phases.theta_ris);
        CHECK(a.phases.theta_uav == b.phases.theta_uav);
    }

    TEST_CASE("snap_to_grid")
    {
        PhaseConfig ph = PhaseConfig::zeros(1, 2);
        ph.theta_uav[0] = 0.1;
        ph.theta_ris[0] = 2.0 * pi - 0.01;
        ph.theta_ris[1] = pi / 4.0 + 0.05;
        const PhaseConfig s = snap_to_grid(ph, 8);
        CHECK(s.theta_uav[0] == 0.0);
        CHECK(s.theta_ris[0] == 0.0);
        CHECK(s.theta_ris[1] == doctest::Approx(pi / 4.0));
    }
}
