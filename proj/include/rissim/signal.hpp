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

#ifndef RISSIM_SIGNAL_HPP
#define RISSIM_SIGNAL_HPP

#include <span>
#include <vector>

#include "rissim/channel.hpp"

namespace rissim
{

// Maps any finite angle into [0, 2 pi).
double canonical_phase(double theta);

struct PhaseConfig
{
    std::vector<double> theta_uav; // F entries
    std::vector<double> theta_ris; // N entries

    static PhaseConfig zeros(int F, int N);
    void canonicalize();
};

enum class LinkDirection
{
    downlink,
    uplink
};

// Column k is the beam (DL precoder or UL combiner) of node k.
struct BeamMatrix
{
    CMatrix weights; // M x K
    LinkDirection direction = LinkDirection::downlink;

    double power() const { return weights.squaredNorm(); }
};

// diag(exp(j theta)).
CMatrix phase_matrix(std::span<const double> theta);

// g_k = D_BURk h_Rk Theta_R H_UR Theta_U H_BU + D_BUk h_Uk Theta_U H_BU, a 1 x M row.
CRowVector effective_dl_channel(int k, const ChannelSet &ch, const PhaseConfig &ph);

// Uplink counterpart built from the reciprocal mirrors:
// (D_kUB H_UB Theta_U h_kU + D_kRUB H_UB Theta_U H_RU Theta_R h_kR)^T, a 1 x M row.
CRowVector effective_ul_channel(int k, const ChannelSet &ch, const PhaseConfig &ph);

// gains: K x M, row j = effective channel of node j. SINR of node k with beams W (M x K):
// |g_k w_k|^2 / (sum_{j != k} |g_k w_j|^2 + sigma2).
double sinr(int k, const CMatrix &gains, const CMatrix &beams, double sigma2);

// log2(1 + gamma); throws for gamma < 0.
double rate(double gamma);

struct RateReport
{
    std::vector<double> dl_average; // R_k^d
    std::vector<double> ul_average; // R_k^u
    std::vector<double> weighted;   // dl_weight * R_k^d + (1 - dl_weight) * R_k^u
    double min_rate = 0.0;          // min_k weighted[k]
    int slots = 0;
};

// dl_rates and ul_rates are L x K per-slot rates.
RateReport episode_rates(const Eigen::MatrixXd &dl_rates, const Eigen::MatrixXd &ul_rates, double dl_weight);

// Scales every column by sqrt(P / total) when the total power exceeds P.
BeamMatrix project_power(BeamMatrix beams, double budget);

struct MatchedSolution
{
    PhaseConfig phases;
    BeamMatrix beam;
};

// Single-node heuristic: alternately co-phases the ground-RIS elements (against the
// flying-RIS-only path), the flying-RIS elements, and the matched-filter beam for k_focus, which
// receives the full downlink budget. Other columns are zero. Throws on an all-zero channel.
MatchedSolution matched_solution(int k_focus, const ChannelSet &ch, const ScenarioConfig &cfg);

} // namespace rissim

#endif
