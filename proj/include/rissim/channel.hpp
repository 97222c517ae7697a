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

#ifndef RISSIM_CHANNEL_HPP
#define RISSIM_CHANNEL_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rissim/scenario.hpp"

namespace rissim
{

using cdouble = std::complex<double>;
using CMatrix = Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVector = Eigen::VectorXcd;
using CRowVector = Eigen::RowVectorXcd;

// One slot's channel realization. Downlink orientation; the uplink mirrors are the Hermitian
// transposes (reciprocity).
struct ChannelSet
{
    CMatrix bs_to_uav;   // H_BU, F x M
    CMatrix uav_to_ris;  // H_UR, N x F
    CMatrix ris_to_node; // h_Rk stacked, K x N
    CMatrix uav_to_node; // h_Uk stacked, K x F

    // Amplitudes per node.
    std::vector<double> pl_cascade;    // B -> U -> R -> k
    std::vector<double> pl_direct_ris; // R -> k
    std::vector<double> pl_direct_uav; // U -> k
    std::vector<double> pl_two_hop;    // B -> U -> k

    int num_nodes() const { return static_cast<int>(ris_to_node.rows()); }
    int bs_antennas() const { return static_cast<int>(bs_to_uav.cols()); }
    int num_flying() const { return static_cast<int>(bs_to_uav.rows()); }
    int num_ground() const { return static_cast<int>(uav_to_ris.rows()); }

    CMatrix uav_to_bs() const { return bs_to_uav.adjoint(); }   // H_UB, M x F
    CMatrix ris_to_uav() const { return uav_to_ris.adjoint(); } // H_RU, F x N
    CMatrix node_to_ris() const { return ris_to_node.adjoint(); } // h_kR columns, N x K
    CMatrix node_to_uav() const { return uav_to_node.adjoint(); } // h_kU columns, F x K
};

struct JitterDraw
{
    double d_azimuth = 0.0;
    double d_elevation = 0.0;
};

// Independent random streams of one slot. Every stream is seeded from (seed, slot, stream,
// sub-index), so a realization is a pure function of those and adding elements to one link
// does not disturb the draws of another.
class ChannelRng
{
public:
    enum class Stream : std::uint32_t
    {
        nlos_bu = 1,
        nlos_ur,
        nlos_rk,
        nlos_uk,
        jitter_bu,
        jitter_ur,
        jitter_uk
    };

    ChannelRng(std::uint64_t seed, std::uint64_t slot) : seed_(seed), slot_(slot) {}

    std::mt19937_64 stream(Stream s, std::uint64_t sub = 0) const;

    std::uint64_t seed() const { return seed_; }
    std::uint64_t slot() const { return slot_; }

private:
    std::uint64_t seed_;
    std::uint64_t slot_;
};

// Entry m = exp(-j 2 pi spacing_ratio m dir_cos). Throws if |dir_cos| > 1 or n < 1.
CVector steering_vector(int n, double spacing_ratio, double dir_cos);

// Vectorized URA response: element (i, j) sits at index i * dims.cols + j and carries the
// phase of steering(rows, cos_x)[i] * steering(cols, cos_z)[j].
CVector ura_response(ArrayDims dims, double spacing_ratio, double cos_x, double cos_z);

// Rank-1 LoS matrix ura_response(rows_dims) * ura_response(cols_dims)^T built from the link's
// two direction cosines. rows_dims = {Fx, 1}, cols_dims = {1, Fz} gives a_x a_z^T.
CMatrix los_matrix(const LinkAngles &angles, ArrayDims rows_dims, ArrayDims cols_dims, double spacing_ratio);

// i.i.d. CN(0, 1) entries (g1 + j g2) / sqrt(2).
CMatrix sample_nlos(std::mt19937_64 &rng, int rows, int cols);

CMatrix mix_rician(double zeta, const CMatrix &los, const CMatrix &nlos);

// Uniform on the disc of radius psi; the result always satisfies da^2 + de^2 <= psi^2.
JitterDraw sample_jitter(std::mt19937_64 &rng, double psi);

LinkAngles apply_jitter(const LinkAngles &nominal, const JitterDraw &jitter);

// sqrt(beta_ref * (prod hops)^(-alpha)). Throws on nonpositive distances.
double cascaded_pathloss(double beta_ref, double alpha, std::span<const double> hops);
double cascaded_pathloss(double beta_ref, double alpha, double d1, double d2, double d3);

// sqrt(beta_ref) * d^(-eps / 2), i.e. received power falls as d^(-eps).
double direct_pathloss(double beta_ref, double eps, double d);

ChannelSet realize_channels(const ScenarioConfig &cfg, const Position3 &uav, const ChannelRng &rng);

} // namespace rissim

#endif
