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

#ifndef RISSIM_SCENARIO_HPP
#define RISSIM_SCENARIO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rissim
{

struct Position3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Position3 &, const Position3 &) = default;
};

// Link direction as an (azimuth, elevation) pair. The two direction cosines consumed by the
// array responses are
//     cos_x = cos(azimuth) * sin(elevation) = dx / d
//     cos_z = sin(azimuth) * sin(elevation) = dz / d
// so the azimuth lives in the x-z plane and the elevation is measured from the y axis.
struct LinkAngles
{
    double azimuth = 0.0;   // radians
    double elevation = 0.0; // radians

    double cos_x() const;
    double cos_z() const;
};

// Size of a uniform rectangular array (rows * cols elements). A ULA is {n, 1}.
struct ArrayDims
{
    int rows = 1;
    int cols = 1;

    int count() const { return rows * cols; }
};

struct RicianFactors
{
    double BU = 5.0;
    double UR = 5.0;
    double Rk = 5.0;
    double Uk = 5.0;
};

// Bounds psi (radians) on the angular jitter of the three links that touch the UAV.
struct JitterBounds
{
    double BU = 0.0;
    double UR = 0.0;
    double Uk = 0.0;
};

enum class RewardMode
{
    running_average, // min_k of the time-averaged rate up to the current slot
    instantaneous    // min_k of the current slot rate
};

struct ScenarioConfig
{
    // Playable rectangle [0, area_x] x [0, area_y], meters.
    double area_x = 800.0;
    double area_y = 800.0;

    Position3 bs_pos{0.0, 0.0, 25.0};
    Position3 ris_pos{360.0, 200.0, 80.0};
    Position3 uav_start{80.0, 80.0, 100.0};
    Position3 uav_end{80.0, 80.0, 100.0};
    std::vector<Position3> node_pos{{400.0, 210.0, 0.0}, {365.0, 245.0, 0.0}, {320.0, 190.0, 0.0}, {370.0, 150.0, 0.0}};

    double uav_altitude = 100.0; // H_U
    double v_max = 20.0;         // m/s
    double slot_dt = 1.0;        // s
    int num_slots = 250;         // L

    int bs_antennas = 4;         // M
    ArrayDims flying_ris{6, 6};  // F1 x F2
    ArrayDims ground_ris{8, 8};  // N1 x N2
    double spacing_ratio = 0.25; // element spacing over wavelength

    RicianFactors rician;
    double beta_ref = 100.0;    // linear power gain at 1 m
    double alpha_cascade = 3.7; // exponent on the product of hop distances
    double eps_direct = 2.7;    // exponent of the single-hop RIS -> node links
    JitterBounds jitter_psi;

    double p_dl = 10.0;     // W, 40 dBm
    double p_ul = 10.0;     // W, 40 dBm
    double p_dl_max = 0.1;  // W, 20 dBm (reported only)
    double p_ul_max = 0.1;  // W, 20 dBm (reported only)
    double sigma2 = 1e-11;  // W, -80 dBm
    double dl_weight = 1.0; // weight of the downlink rate in the total
    double penalty = -10.0; // added to the reward on a boundary exit
    std::uint64_t seed = 1;
    RewardMode reward_mode = RewardMode::running_average;

    int num_nodes() const { return static_cast<int>(node_pos.size()); }
    int num_flying() const { return flying_ris.count(); }
    int num_ground() const { return ground_ris.count(); }
    // D: largest horizontal distance per slot.
    double max_step() const { return slot_dt * v_max; }
};

class ConfigError : public std::runtime_error
{
public:
    ConfigError(std::string key, std::string value, const std::string &what);

    const std::string &key() const noexcept { return key_; }
    const std::string &value() const noexcept { return value_; }

private:
    std::string key_;
    std::string value_;
};

// Parses a JSON configuration document. Missing keys keep their defaults; power keys may be
// given in dBm through the "<key>_dbm" variants. The z components of uav_start and uav_end
// are forced to H_U. Throws ConfigError on parse failures, unknown keys and invariant
// violations.
ScenarioConfig load_config(std::string_view text);
ScenarioConfig load_config_file(const std::string &path);

// Serializes every field with the key names accepted by load_config.
std::string dump_config(const ScenarioConfig &cfg);

// Throws ConfigError naming the first violated invariant.
void validate(const ScenarioConfig &cfg);

double dbm_to_watts(double dbm);

// Moves horizontally by min(speed, v_max) * slot_dt along heading (radians from +x).
// Negative speeds are treated as zero. z is left unchanged.
Position3 propose_move(const Position3 &pos, double speed, double heading, const ScenarioConfig &cfg);

bool inside_area(const Position3 &pos, const ScenarioConfig &cfg);

struct MobilityViolation
{
    enum class Kind
    {
        step,     // |c[l+1] - c[l]|^2 > D^2
        terminal, // |c[L] - uav_end|^2 > D^2
        start     // c[0] != uav_start
    };

    Kind kind;
    int slot;
    double distance; // offending horizontal distance
};

// Expects num_slots + 1 points; throws std::invalid_argument otherwise.
std::vector<MobilityViolation> check_mobility(const std::vector<Position3> &trajectory, const ScenarioConfig &cfg);

double link_distance(const Position3 &a, const Position3 &b);

// Throws std::invalid_argument if the two points coincide.
LinkAngles link_angles(const Position3 &from, const Position3 &to);

} // namespace rissim

#endif
