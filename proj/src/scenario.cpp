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

#include "rissim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"

namespace rissim
{

using nlohmann::json;

double LinkAngles::cos_x() const { return std::cos(azimuth) * std::sin(elevation); }
double LinkAngles::cos_z() const { return std::sin(azimuth) * std::sin(elevation); }

ConfigError::ConfigError(std::string key, std::string value, const std::string &what)
    : std::runtime_error(what), key_(std::move(key)), value_(std::move(value))
{
}

namespace
{

std::string to_text(double v)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << v;
    return os.str();
}

[[noreturn]] void violation(const std::string &key, double value, const std::string &rule)
{
    throw ConfigError(key, to_text(value), "invariant violation: " + key + " = " + to_text(value) + " (" + rule + ")");
}

double get_number(const json &j, const std::string &key)
{
    if (!j.is_number())
        throw ConfigError(key, j.dump(), "parse failure: key '" + key + "' expects a number, got " + j.dump());
    return j.get<double>();
}

int get_int(const json &j, const std::string &key)
{
    if (!j.is_number_integer() && !j.is_number_unsigned())
        throw ConfigError(key, j.dump(), "parse failure: key '" + key + "' expects an integer, got " + j.dump());
    return j.get<int>();
}

Position3 get_position(const json &j, const std::string &key)
{
    if (!j.is_array() || j.size() != 3)
        throw ConfigError(key, j.dump(), "parse failure: key '" + key + "' expects [x, y, z], got " + j.dump());
    return {get_number(j[0], key), get_number(j[1], key), get_number(j[2], key)};
}

json position_json(const Position3 &p) { return json::array({p.x, p.y, p.z}); }

void set_rician(RicianFactors &r, const json &j)
{
    if (j.is_number())
    {
        const double v = j.get<double>();
        r = {v, v, v, v};
        return;
    }
    if (!j.is_object())
        throw ConfigError("rician", j.dump(), "parse failure: key 'rician' expects a number or an object");
    for (const auto &[k, v] : j.items())
    {
        const std::string key = "rician." + k;
        if (k == "BU") r.BU = get_number(v, key);
        else if (k == "UR") r.UR = get_number(v, key);
        else if (k == "Rk") r.Rk = get_number(v, key);
        else if (k == "Uk") r.Uk = get_number(v, key);
        else throw ConfigError(key, v.dump(), "parse failure: unknown key '" + key + "'");
    }
}

void set_jitter(JitterBounds &b, const json &j)
{
    if (j.is_number())
    {
        const double v = j.get<double>();
        b = {v, v, v};
        return;
    }
    if (!j.is_object())
        throw ConfigError("jitter_psi", j.dump(), "parse failure: key 'jitter_psi' expects a number or an object");
    for (const auto &[k, v] : j.items())
    {
        const std::string key = "jitter_psi." + k;
        if (k == "BU") b.BU = get_number(v, key);
        else if (k == "UR") b.UR = get_number(v, key);
        else if (k == "Uk") b.Uk = get_number(v, key);
        else throw ConfigError(key, v.dump(), "parse failure: unknown key '" + key + "'");
    }
}

using Setter = std::function<void(ScenarioConfig &, const json &)>;

const std::map<std::string, Setter> &setters()
{
    static const std::map<std::string, Setter> table = {
        {"area_x", [](ScenarioConfig &c, const json &j) { c.area_x = get_number(j, "area_x"); }},
        {"area_y", [](ScenarioConfig &c, const json &j) { c.area_y = get_number(j, "area_y"); }},
        {"bs_pos", [](ScenarioConfig &c, const json &j) { c.bs_pos = get_position(j, "bs_pos"); }},
        {"ris_pos", [](ScenarioConfig &c, const json &j) { c.ris_pos = get_position(j, "ris_pos"); }},
        {"uav_start", [](ScenarioConfig &c, const json &j) { c.uav_start = get_position(j, "uav_start"); }},
        {"uav_end", [](ScenarioConfig &c, const json &j) { c.uav_end = get_position(j, "uav_end"); }},
        {"node_pos",
         [](ScenarioConfig &c, const json &j) {
             if (!j.is_array())
                 throw ConfigError("node_pos", j.dump(), "parse failure: key 'node_pos' expects a list of [x, y, z]");
             c.node_pos.clear();
             for (const auto &p : j)
                 c.node_pos.push_back(get_position(p, "node_pos"));
         }},
        {"H_U", [](ScenarioConfig &c, const json &j) { c.uav_altitude = get_number(j, "H_U"); }},
        {"v_max", [](ScenarioConfig &c, const json &j) { c.v_max = get_number(j, "v_max"); }},
        {"slot_dt", [](ScenarioConfig &c, const json &j) { c.slot_dt = get_number(j, "slot_dt"); }},
        {"L", [](ScenarioConfig &c, const json &j) { c.num_slots = get_int(j, "L"); }},
        {"M", [](ScenarioConfig &c, const json &j) { c.bs_antennas = get_int(j, "M"); }},
        {"F1", [](ScenarioConfig &c, const json &j) { c.flying_ris.rows = get_int(j, "F1"); }},
        {"F2", [](ScenarioConfig &c, const json &j) { c.flying_ris.cols = get_int(j, "F2"); }},
        {"N1", [](ScenarioConfig &c, const json &j) { c.ground_ris.rows = get_int(j, "N1"); }},
        {"N2", [](ScenarioConfig &c, const json &j) { c.ground_ris.cols = get_int(j, "N2"); }},
        {"spacing_ratio", [](ScenarioConfig &c, const json &j) { c.spacing_ratio = get_number(j, "spacing_ratio"); }},
        {"rician", [](ScenarioConfig &c, const json &j) { set_rician(c.rician, j); }},
        {"beta_ref", [](ScenarioConfig &c, const json &j) { c.beta_ref = get_number(j, "beta_ref"); }},
        {"alpha_cascade", [](ScenarioConfig &c, const json &j) { c.alpha_cascade = get_number(j, "alpha_cascade"); }},
        {"eps_direct", [](ScenarioConfig &c, const json &j) { c.eps_direct = get_number(j, "eps_direct"); }},
        {"jitter_psi", [](ScenarioConfig &c, const json &j) { set_jitter(c.jitter_psi, j); }},
        {"P_dl", [](ScenarioConfig &c, const json &j) { c.p_dl = get_number(j, "P_dl"); }},
        {"P_ul", [](ScenarioConfig &c, const json &j) { c.p_ul = get_number(j, "P_ul"); }},
        {"P_dl_max", [](ScenarioConfig &c, const json &j) { c.p_dl_max = get_number(j, "P_dl_max"); }},
        {"P_ul_max", [](ScenarioConfig &c, const json &j) { c.p_ul_max = get_number(j, "P_ul_max"); }},
        {"sigma2", [](ScenarioConfig &c, const json &j) { c.sigma2 = get_number(j, "sigma2"); }},
        {"P_dl_dbm", [](ScenarioConfig &c, const json &j) { c.p_dl = dbm_to_watts(get_number(j, "P_dl_dbm")); }},
        {"P_ul_dbm", [](ScenarioConfig &c, const json &j) { c.p_ul = dbm_to_watts(get_number(j, "P_ul_dbm")); }},
        {"P_dl_max_dbm", [](ScenarioConfig &c, const json &j) { c.p_dl_max = dbm_to_watts(get_number(j, "P_dl_max_dbm")); }},
        {"P_ul_max_dbm", [](ScenarioConfig &c, const json &j) { c.p_ul_max = dbm_to_watts(get_number(j, "P_ul_max_dbm")); }},
        {"sigma2_dbm", [](ScenarioConfig &c, const json &j) { c.sigma2 = dbm_to_watts(get_number(j, "sigma2_dbm")); }},
        {"dl_weight", [](ScenarioConfig &c, const json &j) { c.dl_weight = get_number(j, "dl_weight"); }},
        {"penalty", [](ScenarioConfig &c, const json &j) { c.penalty = get_number(j, "penalty"); }},
        {"seed",
         [](ScenarioConfig &c, const json &j) {
             if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
                 throw ConfigError("seed", j.dump(), "parse failure: key 'seed' expects a non-negative integer");
             c.seed = j.get<std::uint64_t>();
         }},
        {"reward_mode",
         [](ScenarioConfig &c, const json &j) {
             const std::string mode = j.is_string() ? j.get<std::string>() : std::string{};
             if (mode == "running")
                 c.reward_mode = RewardMode::running_average;
             else if (mode == "instantaneous")
                 c.reward_mode = RewardMode::instantaneous;
             else
                 throw ConfigError("reward_mode", j.dump(),
                                   "parse failure: reward_mode must be \"running\" or \"instantaneous\"");
         }},
    };
    return table;
}

} // namespace

void validate(const ScenarioConfig &c)
{
    auto positive = [](const char *key, double v) {
        if (!(v > 0.0) || !std::isfinite(v))
            violation(key, v, "must be > 0");
    };
    positive("area_x", c.area_x);
    positive("area_y", c.area_y);
    positive("v_max", c.v_max);
    positive("slot_dt", c.slot_dt);
    positive("sigma2", c.sigma2);
    positive("P_dl", c.p_dl);
    positive("P_ul", c.p_ul);
    positive("beta_ref", c.beta_ref);
    positive("spacing_ratio", c.spacing_ratio);
    if (c.num_slots < 1) violation("L", c.num_slots, "must be >= 1");
    if (c.bs_antennas < 1) violation("M", c.bs_antennas, "must be >= 1");
    if (c.flying_ris.rows < 1) violation("F1", c.flying_ris.rows, "must be >= 1");
    if (c.flying_ris.cols < 1) violation("F2", c.flying_ris.cols, "must be >= 1");
    if (c.ground_ris.rows < 1) violation("N1", c.ground_ris.rows, "must be >= 1");
    if (c.ground_ris.cols < 1) violation("N2", c.ground_ris.cols, "must be >= 1");
    if (c.node_pos.empty()) violation("node_pos", 0, "K must be >= 1");
    if (!(c.dl_weight >= 0.0 && c.dl_weight <= 1.0)) violation("dl_weight", c.dl_weight, "must lie in [0, 1]");
    if (!(c.penalty <= 0.0)) violation("penalty", c.penalty, "must be <= 0");
    if (!(c.alpha_cascade >= 0.0)) violation("alpha_cascade", c.alpha_cascade, "must be >= 0");
    if (!(c.eps_direct >= 0.0)) violation("eps_direct", c.eps_direct, "must be >= 0");
    const std::pair<const char *, double> rician[] = {
        {"rician.BU", c.rician.BU}, {"rician.UR", c.rician.UR}, {"rician.Rk", c.rician.Rk}, {"rician.Uk", c.rician.Uk}};
    for (const auto &[key, v] : rician)
        if (!(v >= 0.0) || !std::isfinite(v)) violation(key, v, "must be >= 0");
    const std::pair<const char *, double> jitter[] = {
        {"jitter_psi.BU", c.jitter_psi.BU}, {"jitter_psi.UR", c.jitter_psi.UR}, {"jitter_psi.Uk", c.jitter_psi.Uk}};
    for (const auto &[key, v] : jitter)
        if (!(v >= 0.0) || !std::isfinite(v)) violation(key, v, "must be >= 0");
    if (!inside_area(c.uav_start, c))
        violation("uav_start", c.uav_start.x, "must lie inside the playable rectangle");
    if (!inside_area(c.uav_end, c))
        violation("uav_end", c.uav_end.x, "must lie inside the playable rectangle");
}

ScenarioConfig load_config(std::string_view text)
{
    json doc;
    try
    {
        doc = text.find_first_not_of(" \t\r\n") == std::string_view::npos ? json::object() : json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError("", std::string(text.substr(0, 64)), std::string("parse failure: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("", doc.dump(), "parse failure: configuration must be a JSON object");

    ScenarioConfig cfg;
    const auto &table = setters();
    for (const auto &[key, value] : doc.items())
    {
        const auto it = table.find(key);
        if (it == table.end())
            throw ConfigError(key, value.dump(), "parse failure: unknown key '" + key + "'");
        it->second(cfg, value);
    }
    cfg.uav_start.z = cfg.uav_altitude;
    cfg.uav_end.z = cfg.uav_altitude;
    validate(cfg);
    return cfg;
}

ScenarioConfig load_config_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("", path, "parse failure: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_config(ss.str());
}

std::string dump_config(const ScenarioConfig &c)
{
    json nodes = json::array();
    for (const auto &p : c.node_pos)
        nodes.push_back(position_json(p));
    json doc = {
        {"area_x", c.area_x},
        {"area_y", c.area_y},
        {"bs_pos", position_json(c.bs_pos)},
        {"ris_pos", position_json(c.ris_pos)},
        {"uav_start", position_json(c.uav_start)},
        {"uav_end", position_json(c.uav_end)},
        {"node_pos", nodes},
        {"H_U", c.uav_altitude},
        {"v_max", c.v_max},
        {"slot_dt", c.slot_dt},
        {"L", c.num_slots},
        {"M", c.bs_antennas},
        {"F1", c.flying_ris.rows},
        {"F2", c.flying_ris.cols},
        {"N1", c.ground_ris.rows},
        {"N2", c.ground_ris.cols},
        {"spacing_ratio", c.spacing_ratio},
        {"rician", {{"BU", c.rician.BU}, {"UR", c.rician.UR}, {"Rk", c.rician.Rk}, {"Uk", c.rician.Uk}}},
        {"beta_ref", c.beta_ref},
        {"alpha_cascade", c.alpha_cascade},
        {"eps_direct", c.eps_direct},
        {"jitter_psi", {{"BU", c.jitter_psi.BU}, {"UR", c.jitter_psi.UR}, {"Uk", c.jitter_psi.Uk}}},
        {"P_dl", c.p_dl},
        {"P_ul", c.p_ul},
        {"P_dl_max", c.p_dl_max},
        {"P_ul_max", c.p_ul_max},
        {"sigma2", c.sigma2},
        {"dl_weight", c.dl_weight},
        {"penalty", c.penalty},
        {"seed", c.seed},
        {"reward_mode", c.reward_mode == RewardMode::running_average ? "running" : "instantaneous"},
    };
    return doc.dump(2);
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

Position3 propose_move(const Position3 &pos, double speed, double heading, const ScenarioConfig &cfg)
{
    const double v = std::clamp(speed, 0.0, cfg.v_max);
    const double step = v * cfg.slot_dt;
    return {pos.x + step * std::cos(heading), pos.y + step * std::sin(heading), pos.z};
}

bool inside_area(const Position3 &pos, const ScenarioConfig &cfg)
{
    return pos.x >= 0.0 && pos.x <= cfg.area_x && pos.y >= 0.0 && pos.y <= cfg.area_y;
}

std::vector<MobilityViolation> check_mobility(const std::vector<Position3> &trajectory, const ScenarioConfig &cfg)
{
    const auto expected = static_cast<std::size_t>(cfg.num_slots) + 1;
    if (trajectory.size() != expected)
        throw std::invalid_argument("check_mobility: trajectory has " + std::to_string(trajectory.size()) +
                                    " points, expected L + 1 = " + std::to_string(expected));

    const double d_max = cfg.max_step() * (1.0 + 1e-12);
    auto horizontal = [](const Position3 &a, const Position3 &b) { return std::hypot(a.x - b.x, a.y - b.y); };

    std::vector<MobilityViolation> out;
    if (horizontal(trajectory.front(), cfg.uav_start) > 1e-9)
        out.push_back({MobilityViolation::Kind::start, 0, horizontal(trajectory.front(), cfg.uav_start)});
    for (std::size_t l = 0; l + 1 < trajectory.size(); ++l)
    {
        const double d = horizontal(trajectory[l + 1], trajectory[l]);
        if (d * d > d_max * d_max)
            out.push_back({MobilityViolation::Kind::step, static_cast<int>(l), d});
    }
    const double d_end = horizontal(trajectory.back(), cfg.uav_end);
    if (d_end * d_end > d_max * d_max)
        out.push_back({MobilityViolation::Kind::terminal, cfg.num_slots, d_end});
    return out;
}

double link_distance(const Position3 &a, const Position3 &b) { return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z); }

LinkAngles link_angles(const Position3 &from, const Position3 &to)
{
    const double dx = to.x - from.x;
    const double dy = to.y - from.y;
    const double dz = to.z - from.z;
    if (dx == 0.0 && dy == 0.0 && dz == 0.0)
        throw std::invalid_argument("link_angles: zero-distance pair");
    return {std::atan2(dz, dx), std::atan2(std::hypot(dx, dz), std::abs(dy))};
}

} // namespace rissim
