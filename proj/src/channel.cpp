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

#include "rissim/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rissim
{

std::mt19937_64 ChannelRng::stream(Stream s, std::uint64_t sub) const
{
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed_), hi(seed_), lo(slot_), hi(slot_), static_cast<std::uint32_t>(s), lo(sub), hi(sub)};
    return std::mt19937_64(seq);
}

CVector steering_vector(int n, double spacing_ratio, double dir_cos)
{
    if (n < 1)
        throw std::invalid_argument("steering_vector: element count must be >= 1");
    if (!(std::abs(dir_cos) <= 1.0))
        throw std::invalid_argument("steering_vector: |dir_cos| > 1 (" + std::to_string(dir_cos) + ")");
    CVector a(n);
    const double step = -2.0 * std::numbers::pi * spacing_ratio * dir_cos;
    for (int m = 0; m < n; ++m)
        a(m) = std::polar(1.0, step * m);
    return a;
}

CVector ura_response(ArrayDims dims, double spacing_ratio, double cos_x, double cos_z)
{
    const CVector ax = steering_vector(dims.rows, spacing_ratio, cos_x);
    const CVector az = steering_vector(dims.cols, spacing_ratio, cos_z);
    CVector out(dims.count());
    for (int i = 0; i < dims.rows; ++i)
        for (int j = 0; j < dims.cols; ++j)
            out(i * dims.cols + j) = ax(i) * az(j);
    return out;
}

CMatrix los_matrix(const LinkAngles &angles, ArrayDims rows_dims, ArrayDims cols_dims, double spacing_ratio)
{
    const double cx = angles.cos_x();
    const double cz = angles.cos_z();
    const CVector r = ura_response(rows_dims, spacing_ratio, cx, cz);
    const CVector c = ura_response(cols_dims, spacing_ratio, cx, cz);
    return r * c.transpose();
}

CMatrix sample_nlos(std::mt19937_64 &rng, int rows, int cols)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix out(rows, cols);
    const double scale = 1.0 / std::numbers::sqrt2;
    for (Eigen::Index i = 0; i < out.size(); ++i)
    {
        const double re = normal(rng);
        const double im = normal(rng);
        out.data()[i] = cdouble(re * scale, im * scale);
    }
    return out;
}

CMatrix mix_rician(double zeta, const CMatrix &los, const CMatrix &nlos)
{
    if (los.rows() != nlos.rows() || los.cols() != nlos.cols())
        throw std::invalid_argument("mix_rician: LoS and NLoS shapes differ");
    if (!(zeta >= 0.0))
        throw std::invalid_argument("mix_rician: Rician factor must be >= 0");
    const double w_los = std::sqrt(zeta / (1.0 + zeta));
    const double w_nlos = std::sqrt(1.0 / (1.0 + zeta));
    return w_los * los + w_nlos * nlos;
}

JitterDraw sample_jitter(std::mt19937_64 &rng, double psi)
{
    if (!(psi >= 0.0))
        throw std::invalid_argument("sample_jitter: psi must be >= 0");
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const double radius = psi * std::sqrt(uniform(rng));
    const double angle = 2.0 * std::numbers::pi * uniform(rng);
    JitterDraw d{radius * std::cos(angle), radius * std::sin(angle)};
    // Rounding can push the sum of squares one ulp past psi^2.
    while (d.d_azimuth * d.d_azimuth + d.d_elevation * d.d_elevation > psi * psi)
    {
        d.d_azimuth *= 1.0 - 0x1p-52;
        d.d_elevation *= 1.0 - 0x1p-52;
    }
    return d;
}

LinkAngles apply_jitter(const LinkAngles &nominal, const JitterDraw &jitter)
{
    return {nominal.azimuth + jitter.d_azimuth, nominal.elevation + jitter.d_elevation};
}

double cascaded_pathloss(double beta_ref, double alpha, std::span<const double> hops)
{
    double log_sum = 0.0;
    for (double d : hops)
    {
        if (!(d > 0.0))
            throw std::invalid_argument("cascaded_pathloss: nonpositive distance " + std::to_string(d));
        log_sum += std::log(d);
    }
    return std::sqrt(beta_ref) * std::exp(-0.5 * alpha * log_sum);
}

double cascaded_pathloss(double beta_ref, double alpha, double d1, double d2, double d3)
{
    const double hops[] = {d1, d2, d3};
    return cascaded_pathloss(beta_ref, alpha, hops);
}

double direct_pathloss(double beta_ref, double eps, double d)
{
    if (!(d > 0.0))
        throw std::invalid_argument("direct_pathloss: nonpositive distance " + std::to_string(d));
    return std::sqrt(beta_ref) * std::pow(d, -0.5 * eps);
}

ChannelSet realize_channels(const ScenarioConfig &cfg, const Position3 &uav, const ChannelRng &rng)
{
    using S = ChannelRng::Stream;
    const int K = cfg.num_nodes();
    const int M = cfg.bs_antennas;
    const int F = cfg.num_flying();
    const int N = cfg.num_ground();
    const double ratio = cfg.spacing_ratio;

    ChannelSet ch;

    // B -> U: flying-RIS URA response (jittered) times BS ULA response (stable platform).
    {
        auto jit = rng.stream(S::jitter_bu);
        const LinkAngles nominal = link_angles(cfg.bs_pos, uav);
        const LinkAngles seen = apply_jitter(nominal, sample_jitter(jit, cfg.jitter_psi.BU));
        const CVector a_uav = ura_response(cfg.flying_ris, ratio, seen.cos_x(), seen.cos_z());
        const CVector a_bs = steering_vector(M, ratio, nominal.cos_x());
        auto nlos_rng = rng.stream(S::nlos_bu);
        ch.bs_to_uav = mix_rician(cfg.rician.BU, a_uav * a_bs.transpose(), sample_nlos(nlos_rng, F, M));
    }

    // U -> R
    {
        auto jit = rng.stream(S::jitter_ur);
        const LinkAngles seen = apply_jitter(link_angles(uav, cfg.ris_pos), sample_jitter(jit, cfg.jitter_psi.UR));
        auto nlos_rng = rng.stream(S::nlos_ur);
        ch.uav_to_ris = mix_rician(cfg.rician.UR, los_matrix(seen, cfg.ground_ris, cfg.flying_ris, ratio),
                                   sample_nlos(nlos_rng, N, F));
    }

    ch.ris_to_node.resize(K, N);
    ch.uav_to_node.resize(K, F);
    ch.pl_cascade.resize(K);
    ch.pl_direct_ris.resize(K);
    ch.pl_direct_uav.resize(K);
    ch.pl_two_hop.resize(K);

    const double d_bu = link_distance(cfg.bs_pos, uav);
    const double d_ur = link_distance(uav, cfg.ris_pos);
    for (int k = 0; k < K; ++k)
    {
        const auto sub = static_cast<std::uint64_t>(k);
        const Position3 &node = cfg.node_pos[k];

        // R -> k: ground link, no jitter.
        const LinkAngles rk = link_angles(cfg.ris_pos, node);
        auto nlos_rk = rng.stream(S::nlos_rk, sub);
        const CMatrix los_rk = ura_response(cfg.ground_ris, ratio, rk.cos_x(), rk.cos_z()).transpose();
        ch.ris_to_node.row(k) = mix_rician(cfg.rician.Rk, los_rk, sample_nlos(nlos_rk, 1, N));

        // U -> k
        auto jit = rng.stream(S::jitter_uk, sub);
        const LinkAngles uk = apply_jitter(link_angles(uav, node), sample_jitter(jit, cfg.jitter_psi.Uk));
        auto nlos_uk = rng.stream(S::nlos_uk, sub);
        const CMatrix los_uk = ura_response(cfg.flying_ris, ratio, uk.cos_x(), uk.cos_z()).transpose();
        ch.uav_to_node.row(k) = mix_rician(cfg.rician.Uk, los_uk, sample_nlos(nlos_uk, 1, F));

        const double d_rk = link_distance(cfg.ris_pos, node);
        const double d_uk = link_distance(uav, node);
        ch.pl_cascade[k] = cascaded_pathloss(cfg.beta_ref, cfg.alpha_cascade, d_bu, d_ur, d_rk);
        const double two_hop[] = {d_bu, d_uk};
        ch.pl_two_hop[k] = cascaded_pathloss(cfg.beta_ref, cfg.alpha_cascade, two_hop);
        ch.pl_direct_ris[k] = direct_pathloss(cfg.beta_ref, cfg.eps_direct, d_rk);
        ch.pl_direct_uav[k] = direct_pathloss(cfg.beta_ref, cfg.eps_direct, d_uk);
    }
    return ch;
}

} // namespace rissim
