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

#include "rissim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rissim
{

double slot_min_rate(const ScenarioConfig &cfg, const ChannelSet &ch, const PhaseConfig &phases,
                     const BeamMatrix &beam)
{
    using kernels::Backend;
    const CMatrix dl_w = project_power(beam, cfg.p_dl).weights;
    const CMatrix g_dl = kernels::effective_channels(ch, phases, LinkDirection::downlink, Backend::serial);
    const std::vector<double> s_dl = kernels::sinr_all(g_dl, dl_w, cfg.sigma2, Backend::serial);

    std::vector<double> s_ul(s_dl.size(), 0.0);
    if (cfg.dl_weight < 1.0)
    {
        const CMatrix ul_w = project_power({beam.weights, LinkDirection::uplink}, cfg.p_ul).weights;
        const CMatrix g_ul = kernels::effective_channels(ch, phases, LinkDirection::uplink, Backend::serial);
        s_ul = kernels::sinr_all(g_ul, ul_w, cfg.sigma2, Backend::serial);
    }

    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < s_dl.size(); ++k)
        worst = std::min(worst, cfg.dl_weight * rate(s_dl[k]) + (1.0 - cfg.dl_weight) * rate(s_ul[k]));
    return worst;
}

BeamMatrix split_matched_beams(const CMatrix &gains, std::span<const int> parts, double budget)
{
    const auto K = gains.rows();
    if (static_cast<Eigen::Index>(parts.size()) != K)
        throw std::invalid_argument("split_matched_beams: one share per node expected");
    const int total = std::accumulate(parts.begin(), parts.end(), 0);
    BeamMatrix beam{CMatrix::Zero(gains.cols(), K), LinkDirection::downlink};
    if (total <= 0)
        return beam;
    for (Eigen::Index k = 0; k < K; ++k)
    {
        const double norm = gains.row(k).norm();
        if (norm > 0.0 && parts[static_cast<std::size_t>(k)] > 0)
        {
            const double p = budget * parts[static_cast<std::size_t>(k)] / total;
            beam.weights.col(k) = gains.row(k).adjoint() * (std::sqrt(p) / norm);
        }
    }
    return beam;
}

std::vector<std::vector<int>> power_splits(int nodes, int grid)
{
    if (nodes < 1 || grid < 1)
        throw std::invalid_argument("power_splits: nodes and grid must be >= 1");
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(nodes), 0);
    auto rec = [&](auto &&self, int pos, int left) -> void {
        if (pos == nodes - 1)
        {
            cur[static_cast<std::size_t>(pos)] = left;
            out.push_back(cur);
            return;
        }
        for (int v = left; v >= 0; --v)
        {
            cur[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, left - v);
        }
    };
    rec(rec, 0, grid);
    return out;
}

PhaseConfig snap_to_grid(const PhaseConfig &phases, int levels)
{
    if (levels < 1)
        throw std::invalid_argument("snap_to_grid: levels must be >= 1");
    const double step = 2.0 * std::numbers::pi / levels;
    auto snap = [&](double t) {
        const long q = std::lround(canonical_phase(t) / step) % levels;
        return step * static_cast<double>(q);
    };
    PhaseConfig out = phases;
    std::transform(out.theta_uav.begin(), out.theta_uav.end(), out.theta_uav.begin(), snap);
    std::transform(out.theta_ris.begin(), out.theta_ris.end(), out.theta_ris.begin(), snap);
    return out;
}

std::uint64_t oracle_combinations(const ScenarioConfig &cfg, int phase_levels, int beam_grid)
{
    if (phase_levels < 1 || beam_grid < 1)
        throw std::invalid_argument("oracle: phase_levels and beam_grid must be >= 1");
    const int free_phases = cfg.num_flying() + cfg.num_ground() - 1;
    const double splits = static_cast<double>(power_splits(cfg.num_nodes(), beam_grid).size());
    const double count = std::pow(static_cast<double>(phase_levels), free_phases) * splits;
    if (count > 1e18)
        return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(std::llround(count));
}

namespace
{

PhaseConfig phases_at(std::uint64_t index, int levels, int F, int N)
{
    const double step = 2.0 * std::numbers::pi / levels;
    PhaseConfig ph = PhaseConfig::zeros(F, N);
    const auto L = static_cast<std::uint64_t>(levels);
    for (int f = 1; f < F; ++f)
    {
        ph.theta_uav[static_cast<std::size_t>(f)] = step * static_cast<double>(index % L);
        index /= L;
    }
    for (int n = 0; n < N; ++n)
    {
        ph.theta_ris[static_cast<std::size_t>(n)] = step * static_cast<double>(index % L);
        index /= L;
    }
    return ph;
}

struct SplitChoice
{
    double value;
    std::size_t split;
};

SplitChoice best_split(const ScenarioConfig &cfg, const ChannelSet &ch, const PhaseConfig &ph,
                       const std::vector<std::vector<int>> &splits)
{
    const CMatrix gains = kernels::effective_channels(ch, ph, LinkDirection::downlink, kernels::Backend::serial);
    SplitChoice best{-std::numeric_limits<double>::infinity(), 0};
    for (std::size_t s = 0; s < splits.size(); ++s)
    {
        const double v = slot_min_rate(cfg, ch, ph, split_matched_beams(gains, splits[s], cfg.p_dl));
        if (v > best.value)
            best = {v, s};
    }
    return best;
}

} // namespace

OracleResult oracle_exhaustive(const ScenarioConfig &cfg, const ChannelSet &ch, int phase_levels, int beam_grid,
                               kernels::Backend backend)
{
    const std::uint64_t total = oracle_combinations(cfg, phase_levels, beam_grid);
    if (total > oracle_combination_limit)
        throw std::invalid_argument("oracle: combination guard exceeded (" + std::to_string(total) + " > " +
                                    std::to_string(oracle_combination_limit) + ")");

    const int F = cfg.num_flying();
    const int N = cfg.num_ground();
    const auto splits = power_splits(cfg.num_nodes(), beam_grid);
    const std::uint64_t phase_count = total / splits.size();

    const kernels::GridBest best = kernels::grid_argmax(
        phase_count,
        [&](std::uint64_t i) { return best_split(cfg, ch, phases_at(i, phase_levels, F, N), splits).value; },
        backend);

    OracleResult out;
    out.phases = phases_at(best.index, phase_levels, F, N);
    const SplitChoice choice = best_split(cfg, ch, out.phases, splits);
    const CMatrix gains = kernels::effective_channels(ch, out.phases, LinkDirection::downlink, kernels::Backend::serial);
    out.beam = split_matched_beams(gains, splits[choice.split], cfg.p_dl);
    out.min_rate = choice.value;
    out.combinations = total;
    return out;
}

OracleResult oracle_exhaustive(const ScenarioConfig &cfg, int phase_levels, int beam_grid, kernels::Backend backend)
{
    const ChannelSet ch = realize_channels(cfg, cfg.uav_start, ChannelRng(cfg.seed, 0));
    return oracle_exhaustive(cfg, ch, phase_levels, beam_grid, backend);
}

} // namespace rissim
