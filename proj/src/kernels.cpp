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

#include "rissim/kernels.hpp"

#include <limits>
#include <stdexcept>

#include <omp.h>

namespace rissim::kernels
{

namespace
{

CRowVector unit_phasors(const std::vector<double> &theta)
{
    CRowVector out(static_cast<Eigen::Index>(theta.size()));
    for (std::size_t i = 0; i < theta.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = std::polar(1.0, theta[i]);
    return out;
}

CMatrix effective_channels_serial(const ChannelSet &ch, const PhaseConfig &ph, LinkDirection dir)
{
    const int K = ch.num_nodes();
    CMatrix out(K, ch.bs_antennas());
    for (int k = 0; k < K; ++k)
        out.row(k) = dir == LinkDirection::downlink ? effective_dl_channel(k, ch, ph) : effective_ul_channel(k, ch, ph);
    return out;
}

// Row form of both directions:
//   DL: g_k = Dc (h_Rk o e_R) H_UR diag(e_U) H_BU + Dd (h_Uk o e_U) H_BU
//   UL: g_k = Dc (conj(h_Rk) o e_R) conj(H_UR) diag(e_U) conj(H_BU) + Dd (conj(h_Uk) o e_U) conj(H_BU)
CMatrix effective_channels_omp(const ChannelSet &ch, const PhaseConfig &ph, LinkDirection dir)
{
    const int K = ch.num_nodes();
    const int F = ch.num_flying();
    const int N = ch.num_ground();
    if (static_cast<int>(ph.theta_uav.size()) != F || static_cast<int>(ph.theta_ris.size()) != N)
        throw std::invalid_argument("effective_channels: phase vector sizes do not match the RIS sizes");

    const bool ul = dir == LinkDirection::uplink;
    const CRowVector e_ris = unit_phasors(ph.theta_ris);
    const CRowVector e_uav = unit_phasors(ph.theta_uav);

    const CMatrix to_bs = ul ? CMatrix(ch.bs_to_uav.conjugate()) : ch.bs_to_uav;
    const CMatrix phased_to_bs = e_uav.transpose().asDiagonal() * to_bs;                               // F x M
    const CMatrix ris_to_bs = (ul ? CMatrix(ch.uav_to_ris.conjugate()) : ch.uav_to_ris) * phased_to_bs; // N x M

    CMatrix out(K, ch.bs_antennas());
#pragma omp parallel for schedule(static)
    for (int k = 0; k < K; ++k)
    {
        const CRowVector h_r = ul ? CRowVector(ch.ris_to_node.row(k).conjugate()) : CRowVector(ch.ris_to_node.row(k));
        const CRowVector h_u = ul ? CRowVector(ch.uav_to_node.row(k).conjugate()) : CRowVector(ch.uav_to_node.row(k));
        out.row(k) = ch.pl_cascade[k] * (h_r.cwiseProduct(e_ris) * ris_to_bs) +
                     ch.pl_two_hop[k] * (h_u.cwiseProduct(e_uav) * to_bs);
    }
    return out;
}

} // namespace

CMatrix effective_channels(const ChannelSet &ch, const PhaseConfig &ph, LinkDirection dir, Backend backend)
{
    return backend == Backend::serial ? effective_channels_serial(ch, ph, dir) : effective_channels_omp(ch, ph, dir);
}

std::vector<double> sinr_all(const CMatrix &gains, const CMatrix &beams, double sigma2, Backend backend)
{
    const int K = static_cast<int>(gains.rows());
    std::vector<double> out(static_cast<std::size_t>(K));
    if (backend == Backend::serial)
    {
        for (int k = 0; k < K; ++k)
            out[static_cast<std::size_t>(k)] = sinr(k, gains, beams, sigma2);
        return out;
    }
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("sinr: noise power must be > 0");
    if (gains.cols() != beams.rows() || gains.rows() != beams.cols())
        throw std::invalid_argument("sinr: dimension mismatch between effective channels and beams");

    // |g_k w_j|^2 for all (k, j) from one K x K product.
    const CMatrix cross = gains * beams;
#pragma omp parallel for schedule(static)
    for (int k = 0; k < K; ++k)
    {
        double interference = 0.0;
        for (int j = 0; j < K; ++j)
            if (j != k)
                interference += std::norm(cross(k, j));
        out[static_cast<std::size_t>(k)] = std::norm(cross(k, k)) / (interference + sigma2);
    }
    return out;
}

GridBest grid_argmax(std::uint64_t count, const std::function<double(std::uint64_t)> &objective, Backend backend)
{
    if (count == 0)
        throw std::invalid_argument("grid_argmax: empty grid");

    auto better = [](const GridBest &a, const GridBest &b) {
        return a.value > b.value || (a.value == b.value && a.index < b.index);
    };

    GridBest best{-std::numeric_limits<double>::infinity(), 0};
    if (backend == Backend::serial)
    {
        for (std::uint64_t i = 0; i < count; ++i)
        {
            const GridBest here{objective(i), i};
            if (better(here, best))
                best = here;
        }
        return best;
    }

    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel
    {
        GridBest local{-std::numeric_limits<double>::infinity(), 0};
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n; ++i)
        {
            const GridBest here{objective(static_cast<std::uint64_t>(i)), static_cast<std::uint64_t>(i)};
            if (better(here, local))
                local = here;
        }
#pragma omp critical(rissim_grid_argmax)
        if (better(local, best))
            best = local;
    }
    return best;
}

int max_threads() { return omp_get_max_threads(); }

} // namespace rissim::kernels
