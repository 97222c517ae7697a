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
#include <fstream>
#include <numbers>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "rissim/oracle.hpp"
#include "rissim/signal.hpp"

using namespace rissim;
using std::numbers::pi;

namespace
{

CMatrix gains_of(const ChannelSet &ch, const PhaseConfig &ph)
{
    CMatrix g(ch.num_nodes(), ch.bs_antennas());
    for (int k = 0; k < ch.num_nodes(); ++k)
        g.row(k) = effective_dl_channel(k, ch, ph);
    return g;
}

} // namespace

TEST_SUITE("signal")
{
    TEST_CASE("canonical_phase maps into [0, 2 pi)")
    {
        CHECK(canonical_phase(0.0) == 0.0);
        CHECK(canonical_phase(2.0 * pi) == doctest::Approx(0.0));
        CHECK(canonical_phase(-pi / 2.0) == doctest::Approx(1.5 * pi));
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(-1e4, 1e4);
        for (int i = 0; i < 10000; ++i)
        {
            const double t = canonical_phase(u(rng));
            CHECK(t >= 0.0);
            CHECK(t < 2.0 * pi);
        }
    }

    TEST_CASE("phase_matrix")
    {
        const std::vector<double> zeros(4, 0.0);
        CHECK(phase_matrix(zeros).isApprox(CMatrix::Identity(4, 4)));
        const std::vector<double> quarter{pi / 2.0};
        CHECK(std::abs(phase_matrix(quarter)(0, 0) - cdouble(0.0, 1.0)) < 1e-15);

        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
        for (int t = 0; t < 100; ++t)
        {
            std::vector<double> theta(6);
            for (double &x : theta)
                x = u(rng);
            const CMatrix P = phase_matrix(theta);
            CHECK((P.adjoint() * P - CMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
            CHECK(std::abs(std::abs(P.determinant()) - 1.0) < 1e-12);
            CHECK((P - CMatrix(P.diagonal().asDiagonal())).norm() == 0.0);
        }
    }

    TEST_CASE("effective_dl_channel basic cases")
    {
        std::mt19937_64 rng(3);
        ChannelSet ch = testing::random_channel_set(rng, 2, 3, 2, 2);
        ch.bs_to_uav.setZero();
        CHECK(effective_dl_channel(0, ch, PhaseConfig::zeros(2, 2)).norm() == 0.0);

        ChannelSet scalar = testing::random_channel_set(rng, 1, 1, 1, 1);
        scalar.bs_to_uav.setOnes();
        scalar.uav_to_ris.setOnes();
        scalar.ris_to_node.setOnes();
        scalar.uav_to_node.setOnes();
        scalar.pl_cascade = {0.3};
        scalar.pl_two_hop = {0.7};
        CHECK(std::abs(effective_dl_channel(0, scalar, PhaseConfig::zeros(1, 1))(0) - cdouble(1.0, 0.0)) < 1e-15);

        CHECK_THROWS(effective_dl_channel(0, ch, PhaseConfig::zeros(3, 2)));
        CHECK_THROWS(effective_dl_channel(5, ch, PhaseConfig::zeros(2, 2)));
    }

    TEST_CASE("effective channels match the scalar triple loop for F, N, M <= 3")
    {
        int instances = 0;
        for (int M = 1; M <= 3; ++M)
            for (int F = 1; F <= 3; ++F)
                for (int N = 1; N <= 3; ++N)
                    for (std::uint64_t seed = 0; seed < 4; ++seed)
                    {
                        std::mt19937_64 rng(seed * 1000 + static_cast<std::uint64_t>(M * 100 + F * 10 + N));
                        const ChannelSet ch = testing::random_channel_set(rng, 2, M, F, N);
                        const PhaseConfig ph = testing::random_phases(rng, F, N);
                        for (int k = 0; k < 2; ++k)
                        {
                            const CRowVector dl = effective_dl_channel(k, ch, ph);
                            const CRowVector ul = effective_ul_channel(k, ch, ph);
                            const auto dl_ref = testing::triple_loop_dl(k, ch, ph);
                            const auto ul_ref = testing::triple_loop_ul(k, ch, ph);
                            for (int m = 0; m < M; ++m)
                            {
                                CHECK(std::abs(dl(m) - dl_ref[m]) < 1e-10);
                                CHECK(std::abs(ul(m) - ul_ref[m]) < 1e-10);
                            }
                        }
                        ++instances;
                    }
        CHECK(instances == 108);
    }

    TEST_CASE("sinr examples")
    {
        CMatrix g(1, 1), w(1, 1);
        g(0, 0) = 1.0;
        w(0, 0) = std::sqrt(5.0);
        CHECK(sinr(0, g, w, 1.0) == doctest::Approx(5.0));
        w.setZero();
        CHECK(sinr(0, g, w, 1.0) == 0.0);
        CHECK_THROWS(sinr(0, g, w, 0.0));

        CMatrix g2(2, 2), w2(2, 2);
        g2 << cdouble(1, 0), cdouble(0, 0), cdouble(0.5, 0.5), cdouble(1, -1);
        w2.col(0) << cdouble(2, 0), cdouble(0, 1);
        w2.col(1) << cdouble(0, 0), cdouble(3, 0); // g_1 orthogonal to w_2
        const double expected = std::norm((g2.row(0) * w2.col(0)).value()) / 0.1;
        CHECK(sinr(0, g2, w2, 0.1) == doctest::Approx(expected).epsilon(1e-14));
    }

    TEST_CASE("sinr invariances")
    {
        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
        for (int t = 0; t < 200; ++t)
        {
            const CMatrix g = testing::random_matrix(rng, 3, 4);
            CMatrix w = testing::random_matrix(rng, 4, 3);
            const double base = sinr(1, g, w, 0.5);
            CMatrix rotated = w;
            rotated.col(t % 3) *= std::polar(1.0, u(rng));
            CHECK(sinr(1, g, rotated, 0.5) == doctest::Approx(base).epsilon(1e-12));
        }

        const CMatrix g = testing::random_matrix(rng, 1, 3);
        const CMatrix w = testing::random_matrix(rng, 3, 1);
        double prev = 0.0;
        for (double s = 0.1; s < 5.0; s += 0.1)
        {
            const double now = sinr(0, g, CMatrix(w * s), 1.0);
            CHECK(now > prev);
            prev = now;
        }
        CHECK(sinr(0, g, w, 4.0) == doctest::Approx(sinr(0, g, w, 1.0) / 4.0).epsilon(1e-14));
    }

    TEST_CASE("rate")
    {
        CHECK(rate(0.0) == 0.0);
        CHECK(rate(1.0) == 1.0);
        CHECK(rate(3.0) == 2.0);
        CHECK_THROWS(rate(-1e-3));
        const double h = 1e-3;
        for (double g = 0.01; g < 100.0; g *= 1.3)
        {
            CHECK(rate(g + h) > rate(g));
            CHECK(rate(g + h) - 2.0 * rate(g) + rate(g - h) < 0.0);
        }
    }

    TEST_CASE("episode_rates")
    {
        Eigen::MatrixXd dl = Eigen::MatrixXd::Constant(5, 3, 1.5);
        Eigen::MatrixXd ul = Eigen::MatrixXd::Constant(5, 3, 7.0);
        RateReport r = episode_rates(dl, ul, 1.0);
        CHECK(r.slots == 5);
        for (double v : r.dl_average)
            CHECK(v == doctest::Approx(1.5));
        for (double v : r.weighted)
            CHECK(v == doctest::Approx(1.5));
        CHECK(episode_rates(dl, ul, 0.25).weighted[0] == doctest::Approx(0.25 * 1.5 + 0.75 * 7.0));

        Eigen::MatrixXd mixed(1, 3);
        mixed << 2.0, 3.0, 1.0;
        const RateReport m = episode_rates(mixed, Eigen::MatrixXd::Zero(1, 3), 1.0);
        CHECK(m.min_rate == 1.0);
        for (double v : m.weighted)
            CHECK(m.min_rate <= v);
        CHECK_THROWS(episode_rates(Eigen::MatrixXd(0, 3), Eigen::MatrixXd(0, 3), 1.0));
    }

    TEST_CASE("project_power")
    {
        BeamMatrix half{CMatrix::Constant(2, 2, cdouble(0.5, 0.0)), LinkDirection::downlink};
        CHECK(project_power(half, 2.0).weights == half.weights);
        BeamMatrix big{CMatrix::Constant(2, 2, cdouble(1.0, 0.0)), LinkDirection::downlink};
        const BeamMatrix scaled = project_power(big, 1.0);
        CHECK((scaled.weights - big.weights * 0.5).norm() < 1e-15);
        CHECK(project_power({CMatrix::Zero(3, 2), LinkDirection::uplink}, 1.0).weights.norm() == 0.0);
        CHECK_THROWS(project_power(big, 0.0));

        std::mt19937_64 rng(5);
        for (int t = 0; t < 1000; ++t)
        {
            BeamMatrix w{testing::random_matrix(rng, 4, 3) * (1.0 + t), LinkDirection::downlink};
            CHECK(project_power(w, 10.0).power() <= 10.0 + 1e-9);
        }
    }

    TEST_CASE("matched_solution is optimal for a single scalar link")
    {
        ScenarioConfig cfg = testing::single_link_config();
        cfg.rician = {5.0, 5.0, 5.0, 5.0};
        for (std::uint64_t seed = 0; seed < 20; ++seed)
        {
            const ChannelSet ch = realize_channels(cfg, cfg.uav_start, ChannelRng(seed, 0));
            const MatchedSolution s = matched_solution(0, ch, cfg);
            const double cascade = ch.pl_cascade[0] * std::abs(ch.ris_to_node(0, 0) * ch.uav_to_ris(0, 0) * ch.bs_to_uav(0, 0));
            const double direct = ch.pl_two_hop[0] * std::abs(ch.uav_to_node(0, 0) * ch.bs_to_uav(0, 0));
            const double analytic = cfg.p_dl * (cascade + direct) * (cascade + direct) / cfg.sigma2;
            const CMatrix g = gains_of(ch, s.phases);
            CHECK(sinr(0, g, s.beam.weights, cfg.sigma2) == doctest::Approx(analytic).epsilon(1e-9));
            CHECK(s.beam.power() <= cfg.p_dl + 1e-9);
        }
    }

    TEST_CASE("matched_solution respects the budget and canonical phases")
    {
        const ScenarioConfig cfg = load_config("");
        const ChannelSet ch = realize_channels(cfg, cfg.uav_start, ChannelRng(1, 0));
        for (int k = 0; k < cfg.num_nodes(); ++k)
        {
            const MatchedSolution s = matched_solution(k, ch, cfg);
            CHECK(s.beam.power() <= cfg.p_dl + 1e-9);
            CHECK(s.beam.power() == doctest::Approx(cfg.p_dl));
            for (double t : s.phases.theta_uav)
                CHECK((t >= 0.0 && t < 2.0 * pi));
            for (double t : s.phases.theta_ris)
                CHECK((t >= 0.0 && t < 2.0 * pi));
            // Beats uniform zero phases with the same matched beam construction.
            const PhaseConfig zero = PhaseConfig::zeros(cfg.num_flying(), cfg.num_ground());
            CHECK(effective_dl_channel(k, ch, s.phases).norm() >= effective_dl_channel(k, ch, zero).norm());
        }
        ChannelSet dead = ch;
        dead.bs_to_uav.setZero();
        CHECK_THROWS(matched_solution(0, dead, cfg));
    }

    TEST_CASE("matched_solution versus the frozen grid optimum")
    {
        std::ifstream cfg_in(std::string(RISSIM_GOLDEN_DIR) + "/oracle_f2n2_config.json");
        std::ifstream opt_in(std::string(RISSIM_GOLDEN_DIR) + "/oracle_f2n2_16.json");
        REQUIRE(cfg_in.good());
        REQUIRE(opt_in.good());
        const std::string cfg_text((std::istreambuf_iterator<char>(cfg_in)), std::istreambuf_iterator<char>());
        const ScenarioConfig cfg = load_config(cfg_text);
        const nlohmann::json golden = nlohmann::json::parse(opt_in);
        const double grid_best = golden.at("min_rate").get<double>();

        const ChannelSet ch = realize_channels(cfg, cfg.uav_start, ChannelRng(cfg.seed, 0));
        const MatchedSolution s = matched_solution(0, ch, cfg);
        const double heuristic = slot_min_rate(cfg, ch, s.phases, s.beam);
        const double snapped = slot_min_rate(cfg, ch, snap_to_grid(s.phases, 16), s.beam);
        CHECK(grid_best + 1e-12 >= snapped);
        CHECK(heuristic + 1e-9 >= grid_best);
    }
}
