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

#include "rissim/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rissim
{

namespace
{

constexpr double two_pi = 2.0 * std::numbers::pi;

CRowVector unit_phasors(const std::vector<double> &theta)
{
    CRowVector out(static_cast<Eigen::Index>(theta.size()));
    for (std::size_t i = 0; i < theta.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = std::polar(1.0, theta[i]);
    return out;
}

void check_dims(int k, const ChannelSet &ch, const PhaseConfig &ph)
{
    if (k < 0 || k >= ch.num_nodes())
        throw std::invalid_argument("node index " + std::to_string(k) + " out of range");
    if (static_cast<int>(ph.theta_uav.size()) != ch.num_flying() ||
        static_cast<int>(ph.theta_ris.size()) != ch.num_ground())
        throw std::invalid_argument("dimension mismatch: phase vectors (" + std::to_string(ph.theta_uav.size()) + ", " +
                                    std::to_string(ph.theta_ris.size()) + ") vs RIS sizes (" +
                                    std::to_string(ch.num_flying()) + ", " + std::to_string(ch.num_ground()) + ")");
}

} // namespace

double canonical_phase(double theta)
{
    double t = std::fmod(theta, two_pi);
    if (t < 0.0)
        t += two_pi;
    // fmod of a tiny negative value plus 2 pi rounds to 2 pi.
    if (t >= two_pi)
        t = 0.0;
    return t;
}

PhaseConfig PhaseConfig::zeros(int F, int N)
{
    return {std::vector<double>(static_cast<std::size_t>(F), 0.0), std::vector<double>(static_cast<std::size_t>(N), 0.0)};
}

void PhaseConfig::canonicalize()
{
    for (double &t : theta_uav)
        t = canonical_phase(t);
    for (double &t : theta_ris)
        t = canonical_phase(t);
}

CMatrix phase_matrix(std::span<const double> theta)
{
    const auto n = static_cast<Eigen::Index>(theta.size());
    CMatrix out = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        out(i, i) = std::polar(1.0, theta[static_cast<std::size_t>(i)]);
    return out;
}

CRowVector effective_dl_channel(int k, const ChannelSet &ch, const PhaseConfig &ph)
{
    check_dims(k, ch, ph);
    const CRowVector e_ris = unit_phasors(ph.theta_ris);
    const CRowVector e_uav = unit_phasors(ph.theta_uav);

    const CRowVector via_ris = ch.ris_to_node.row(k).cwiseProduct(e_ris) * ch.uav_to_ris; // 1 x F
    const CRowVector at_uav =
        (ch.pl_cascade[k] * via_ris + ch.pl_two_hop[k] * ch.uav_to_node.row(k)).cwiseProduct(e_uav);
    return at_uav * ch.bs_to_uav;
}

CRowVector effective_ul_channel(int k, const ChannelSet &ch, const PhaseConfig &ph)
{
    check_dims(k, ch, ph);
    const CVector e_ris = unit_phasors(ph.theta_ris).transpose();
    const CVector e_uav = unit_phasors(ph.theta_uav).transpose();

    const CVector h_kR = ch.ris_to_node.row(k).adjoint();
    const CVector h_kU = ch.uav_to_node.row(k).adjoint();
    const CVector via_ris = ch.ris_to_uav() * e_ris.cwiseProduct(h_kR); // F x 1
    const CVector at_uav = (ch.pl_two_hop[k] * h_kU + ch.pl_cascade[k] * via_ris).cwiseProduct(e_uav);
    const CVector column = ch.uav_to_bs() * at_uav; // M x 1
    return column.transpose();
}

double sinr(int k, const CMatrix &gains, const CMatrix &beams, double sigma2)
{
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("sinr: noise power must be > 0");
    if (gains.cols() != beams.rows() || gains.rows() != beams.cols())
        throw std::invalid_argument("sinr: dimension mismatch between effective channels and beams");
    if (k < 0 || k >= gains.rows())
        throw std::invalid_argument("sinr: node index out of range");

    const auto row = gains.row(k);
    const double signal = std::norm((row * beams.col(k)).value());
    double interference = 0.0;
    for (Eigen::Index j = 0; j < beams.cols(); ++j)
        if (j != k)
            interference += std::norm((row * beams.col(j)).value());
    return signal / (interference + sigma2);
}

double rate(double gamma)
{
    if (!(gamma >= 0.0))
        throw std::invalid_argument("rate: SINR must be >= 0");
    return std::log2(1.0 + gamma);
}

RateReport episode_rates(const Eigen::MatrixXd &dl_rates, const Eigen::MatrixXd &ul_rates, double dl_weight)
{
    if (dl_rates.rows() == 0 || dl_rates.cols() == 0)
        throw std::invalid_argument("episode_rates: empty accumulation");
    if (dl_rates.rows() != ul_rates.rows() || dl_rates.cols() != ul_rates.cols())
        throw std::invalid_argument("episode_rates: DL and UL rate tables differ in shape");

    RateReport r;
    r.slots = static_cast<int>(dl_rates.rows());
    const auto K = static_cast<std::size_t>(dl_rates.cols());
    r.dl_average.resize(K);
    r.ul_average.resize(K);
    r.weighted.resize(K);
    for (std::size_t k = 0; k < K; ++k)
    {
        const auto col = static_cast<Eigen::Index>(k);
        r.dl_average[k] = dl_rates.col(col).mean();
        r.ul_average[k] = ul_rates.col(col).mean();
        r.weighted[k] = dl_weight * r.dl_average[k] + (1.0 - dl_weight) * r.ul_average[k];
    }
    r.min_rate = *std::min_element(r.weighted.begin(), r.weighted.end());
    return r;
}

BeamMatrix project_power(BeamMatrix beams, double budget)
{
    if (!(budget > 0.0))
        throw std::invalid_argument("project_power: budget must be > 0");
    const double total = beams.power();
    if (total > budget)
    {
        beams.weights *= std::sqrt(budget / total);
        // Guard against the scaled norm landing one ulp above the budget.
        while (beams.power() > budget)
            beams.weights *= 1.0 - 0x1p-52;
    }
    return beams;
}

namespace
{

struct CoPhaser
{
    const ChannelSet &ch;
    int k;

    // One pass of ground-RIS co-phasing for a fixed receive direction u.
    void ris_block(PhaseConfig &ph, const CVector &u) const
    {
        const CVector b = ch.bs_to_uav * u;                                   // F
        const CVector at_uav = unit_phasors(ph.theta_uav).transpose().cwiseProduct(b); // F
        const CVector into_ris = ch.uav_to_ris * at_uav;                      // N
        const cdouble c0 = ch.pl_two_hop[k] * (ch.uav_to_node.row(k) * at_uav)(0);
        const double ref = std::abs(c0) > 0.0 ? std::arg(c0) : 0.0;
        for (int n = 0; n < ch.num_ground(); ++n)
        {
            const cdouble a = ch.pl_cascade[k] * ch.ris_to_node(k, n) * into_ris(n);
            if (std::abs(a) > 0.0)
                ph.theta_ris[static_cast<std::size_t>(n)] = canonical_phase(ref - std::arg(a));
        }
    }

    void uav_block(PhaseConfig &ph, const CVector &u) const
    {
        const CVector b = ch.bs_to_uav * u;
        const CRowVector via_ris = ch.ris_to_node.row(k).cwiseProduct(unit_phasors(ph.theta_ris)) * ch.uav_to_ris;
        const CRowVector coeff = ch.pl_cascade[k] * via_ris + ch.pl_two_hop[k] * ch.uav_to_node.row(k);
        for (int f = 0; f < ch.num_flying(); ++f)
        {
            const cdouble beta = coeff(f) * b(f);
            if (std::abs(beta) > 0.0)
                ph.theta_uav[static_cast<std::size_t>(f)] = canonical_phase(-std::arg(beta));
        }
    }

    static CVector receive_direction(const CRowVector &g)
    {
        const double norm = g.norm();
        if (norm > 0.0)
            return g.adjoint() / norm;
        CVector e = CVector::Zero(g.size());
        e(0) = 1.0;
        return e;
    }

    std::pair<PhaseConfig, double> run(bool ris_first) const
    {
        PhaseConfig ph = PhaseConfig::zeros(ch.num_flying(), ch.num_ground());
        CRowVector g = effective_dl_channel(k, ch, ph);
        CVector u = receive_direction(g);
        double best = g.norm();
        for (int iter = 0; iter < 100; ++iter)
        {
            if (ris_first)
            {
                ris_block(ph, u);
                uav_block(ph, u);
            }
            else
            {
                uav_block(ph, u);
                ris_block(ph, u);
            }
            g = effective_dl_channel(k, ch, ph);
            u = receive_direction(g);
            const double now = g.norm();
            const bool converged = now <= best * (1.0 + 1e-13);
            best = std::max(best, now);
            if (converged)
                break;
        }
        return {ph, best};
    }
};

} // namespace

MatchedSolution matched_solution(int k_focus, const ChannelSet &ch, const ScenarioConfig &cfg)
{
    if (k_focus < 0 || k_focus >= ch.num_nodes())
        throw std::invalid_argument("matched_solution: focus node out of range");

    const CoPhaser cophaser{ch, k_focus};
    auto [phases, gain] = cophaser.run(true);
    if (auto [alt, alt_gain] = cophaser.run(false); alt_gain > gain)
    {
        phases = std::move(alt);
        gain = alt_gain;
    }
    if (!(gain > 0.0))
        throw std::invalid_argument("matched_solution: degenerate zero channel for node " + std::to_string(k_focus));

    const CRowVector g = effective_dl_channel(k_focus, ch, phases);
    BeamMatrix beam{CMatrix::Zero(ch.bs_antennas(), ch.num_nodes()), LinkDirection::downlink};
    beam.weights.col(k_focus) = g.adjoint() * (std::sqrt(cfg.p_dl) / g.norm());
    return {std::move(phases), project_power(std::move(beam), cfg.p_dl)};
}

} // namespace rissim
