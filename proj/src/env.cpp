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

#include "rissim/env.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

namespace rissim
{

namespace
{

std::size_t csi_length(const ScenarioConfig &cfg)
{
    const auto K = static_cast<std::size_t>(cfg.num_nodes());
    const auto M = static_cast<std::size_t>(cfg.bs_antennas);
    const auto F = static_cast<std::size_t>(cfg.num_flying());
    const auto N = static_cast<std::size_t>(cfg.num_ground());
    return 2 * (F * M + N * F + K * N + K * F) + 4 * K;
}

void append(std::vector<double> &out, const CMatrix &m)
{
    for (Eigen::Index i = 0; i < m.size(); ++i)
    {
        out.push_back(m.data()[i].real());
        out.push_back(m.data()[i].imag());
    }
}

void read_into(CMatrix &m, std::span<const double> flat, std::size_t &pos)
{
    for (Eigen::Index i = 0; i < m.size(); ++i)
    {
        m.data()[i] = cdouble(flat[pos], flat[pos + 1]);
        pos += 2;
    }
}

std::vector<double> read_vector(std::span<const double> flat, std::size_t &pos, int n)
{
    std::vector<double> out(flat.begin() + static_cast<std::ptrdiff_t>(pos),
                            flat.begin() + static_cast<std::ptrdiff_t>(pos) + n);
    pos += static_cast<std::size_t>(n);
    return out;
}

void check_action_shape(const ScenarioConfig &cfg, const Action &a)
{
    const int K = cfg.num_nodes();
    if (static_cast<int>(a.schedule.size()) != K || a.beam.rows() != cfg.bs_antennas || a.beam.cols() != K ||
        static_cast<int>(a.phases.theta_uav.size()) != cfg.num_flying() ||
        static_cast<int>(a.phases.theta_ris.size()) != cfg.num_ground())
        throw std::invalid_argument("action shape does not match the scenario dimensions");
}

} // namespace

std::size_t obs_length(const ScenarioConfig &cfg) { return 3 + csi_length(cfg); }

std::size_t action_length(const ScenarioConfig &cfg)
{
    const auto K = static_cast<std::size_t>(cfg.num_nodes());
    const auto M = static_cast<std::size_t>(cfg.bs_antennas);
    return 2 + K + 2 * M * K + static_cast<std::size_t>(cfg.num_flying() + cfg.num_ground());
}

DecodedAction decode_action(const ScenarioConfig &cfg, std::span<const double> flat)
{
    const std::size_t expected = action_length(cfg);
    if (flat.size() != expected)
        throw std::invalid_argument("action vector has length " + std::to_string(flat.size()) + ", expected " +
                                    std::to_string(expected));
    for (std::size_t i = 0; i < flat.size(); ++i)
        if (!std::isfinite(flat[i]))
            throw std::invalid_argument("action component " + std::to_string(i) + " is not finite");

    const int K = cfg.num_nodes();
    const int M = cfg.bs_antennas;
    DecodedAction out;
    Action &a = out.action;

    std::size_t pos = 0;
    a.speed = flat[pos++];
    if (a.speed < 0.0 || a.speed > cfg.v_max)
    {
        a.speed = std::clamp(a.speed, 0.0, cfg.v_max);
        ++out.clamp_count;
    }
    a.heading = canonical_phase(flat[pos++]);
    a.schedule.resize(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k)
        a.schedule[static_cast<std::size_t>(k)] = flat[pos++] >= 0.5 ? 1 : 0;

    a.beam.resize(M, K);
    for (int m = 0; m < M; ++m)
        for (int k = 0; k < K; ++k)
            a.beam(m, k) = cdouble(flat[pos + static_cast<std::size_t>(m * K + k)],
                                   flat[pos + static_cast<std::size_t>(M * K + m * K + k)]);
    pos += 2 * static_cast<std::size_t>(M * K);

    a.phases.theta_uav = read_vector(flat, pos, cfg.num_flying());
    a.phases.theta_ris = read_vector(flat, pos, cfg.num_ground());
    a.phases.canonicalize();
    return out;
}

std::vector<double> encode_action(const ScenarioConfig &cfg, const Action &a)
{
    check_action_shape(cfg, a);
    std::vector<double> out;
    out.reserve(action_length(cfg));
    out.push_back(a.speed);
    out.push_back(a.heading);
    for (auto s : a.schedule)
        out.push_back(s ? 1.0 : 0.0);
    for (Eigen::Index i = 0; i < a.beam.size(); ++i)
        out.push_back(a.beam.data()[i].real());
    for (Eigen::Index i = 0; i < a.beam.size(); ++i)
        out.push_back(a.beam.data()[i].imag());
    out.insert(out.end(), a.phases.theta_uav.begin(), a.phases.theta_uav.end());
    out.insert(out.end(), a.phases.theta_ris.begin(), a.phases.theta_ris.end());
    return out;
}

std::vector<double> encode_state(const ScenarioConfig &cfg, const Position3 &uav, int slot, const ChannelSet &ch)
{
    std::vector<double> out;
    out.reserve(obs_length(cfg));
    out.push_back(uav.x / cfg.area_x);
    out.push_back(uav.y / cfg.area_y);
    out.push_back(static_cast<double>(slot));
    append(out, ch.bs_to_uav);
    append(out, ch.uav_to_ris);
    append(out, ch.ris_to_node);
    append(out, ch.uav_to_node);
    for (const auto *v : {&ch.pl_cascade, &ch.pl_direct_ris, &ch.pl_direct_uav, &ch.pl_two_hop})
        out.insert(out.end(), v->begin(), v->end());
    return out;
}

ChannelSet decode_channels(const ScenarioConfig &cfg, std::span<const double> obs)
{
    if (obs.size() != obs_length(cfg))
        throw std::invalid_argument("observation has length " + std::to_string(obs.size()) + ", expected " +
                                    std::to_string(obs_length(cfg)));
    const int K = cfg.num_nodes();
    ChannelSet ch;
    ch.bs_to_uav.resize(cfg.num_flying(), cfg.bs_antennas);
    ch.uav_to_ris.resize(cfg.num_ground(), cfg.num_flying());
    ch.ris_to_node.resize(K, cfg.num_ground());
    ch.uav_to_node.resize(K, cfg.num_flying());
    std::size_t pos = 3;
    read_into(ch.bs_to_uav, obs, pos);
    read_into(ch.uav_to_ris, obs, pos);
    read_into(ch.ris_to_node, obs, pos);
    read_into(ch.uav_to_node, obs, pos);
    ch.pl_cascade = read_vector(obs, pos, K);
    ch.pl_direct_ris = read_vector(obs, pos, K);
    ch.pl_direct_uav = read_vector(obs, pos, K);
    ch.pl_two_hop = read_vector(obs, pos, K);
    return ch;
}

Position3 decode_uav_position(const ScenarioConfig &cfg, std::span<const double> obs)
{
    if (obs.size() < 3)
        throw std::invalid_argument("observation too short");
    return {obs[0] * cfg.area_x, obs[1] * cfg.area_y, cfg.uav_altitude};
}

int decode_slot(std::span<const double> obs)
{
    if (obs.size() < 3)
        throw std::invalid_argument("observation too short");
    return static_cast<int>(obs[2]);
}

Environment::Environment(ScenarioConfig cfg, kernels::Backend backend) : cfg_(std::move(cfg)), backend_(backend)
{
    validate(cfg_);
}

std::vector<double> Environment::reset(std::uint64_t seed)
{
    seed_ = seed;
    slot_ = 0;
    active_ = true;
    uav_ = {cfg_.uav_start.x, cfg_.uav_start.y, cfg_.uav_altitude};
    channels_ = realize_channels(cfg_, uav_, ChannelRng(seed_, 0));
    const auto K = static_cast<std::size_t>(cfg_.num_nodes());
    dl_sum_.assign(K, 0.0);
    ul_sum_.assign(K, 0.0);
    dl_history_.clear();
    ul_history_.clear();
    power_sum_ = 0.0;
    return encode_state(cfg_, uav_, slot_, channels_);
}

StepResult Environment::step(std::span<const double> flat_action)
{
    if (!active_)
        throw EnvError(slot_ == 0 ? "no-active-episode" : "episode-done",
                       slot_ == 0 ? "step called before reset" : "step called after the episode ended");
    DecodedAction decoded = decode_action(cfg_, flat_action);
    return step(decoded.action, decoded.clamp_count);
}

StepResult Environment::step(const Action &raw, int clamp_count)
{
    if (!active_)
        throw EnvError(slot_ == 0 ? "no-active-episode" : "episode-done",
                       slot_ == 0 ? "step called before reset" : "step called after the episode ended");
    check_action_shape(cfg_, raw);

    const int K = cfg_.num_nodes();
    StepResult result;
    StepInfo &info = result.info;
    info.clamp_count = clamp_count;

    PhaseConfig phases = raw.phases;
    phases.canonicalize();

    const Position3 next = propose_move(uav_, raw.speed, raw.heading, cfg_);
    if (inside_area(next, cfg_))
        uav_ = next;
    else
        info.boundary = true;

    ++slot_;
    channels_ = realize_channels(cfg_, uav_, ChannelRng(seed_, static_cast<std::uint64_t>(slot_)));

    // Unscheduled nodes get no transmission this slot.
    BeamMatrix beam{raw.beam, LinkDirection::downlink};
    for (int k = 0; k < K; ++k)
        if (!raw.schedule[static_cast<std::size_t>(k)])
            beam.weights.col(k).setZero();
    const BeamMatrix dl_beam = project_power(beam, cfg_.p_dl);
    const BeamMatrix ul_beam = project_power({beam.weights, LinkDirection::uplink}, cfg_.p_ul);
    info.power_used = dl_beam.power();
    power_sum_ += info.power_used;

    const CMatrix g_dl = kernels::effective_channels(channels_, phases, LinkDirection::downlink, backend_);
    const CMatrix g_ul = kernels::effective_channels(channels_, phases, LinkDirection::uplink, backend_);
    const std::vector<double> sinr_dl = kernels::sinr_all(g_dl, dl_beam.weights, cfg_.sigma2, backend_);
    const std::vector<double> sinr_ul = kernels::sinr_all(g_ul, ul_beam.weights, cfg_.sigma2, backend_);

    const auto Kz = static_cast<std::size_t>(K);
    info.dl_rates.assign(Kz, 0.0);
    info.ul_rates.assign(Kz, 0.0);
    info.rates.assign(Kz, 0.0);
    std::vector<double> averages(Kz);
    for (std::size_t k = 0; k < Kz; ++k)
    {
        if (raw.schedule[k])
        {
            info.dl_rates[k] = rate(sinr_dl[k]);
            info.ul_rates[k] = rate(sinr_ul[k]);
        }
        info.rates[k] = cfg_.dl_weight * info.dl_rates[k] + (1.0 - cfg_.dl_weight) * info.ul_rates[k];
        dl_sum_[k] += info.dl_rates[k];
        ul_sum_[k] += info.ul_rates[k];
        averages[k] = (cfg_.dl_weight * dl_sum_[k] + (1.0 - cfg_.dl_weight) * ul_sum_[k]) / slot_;
    }
    dl_history_.push_back(info.dl_rates);
    ul_history_.push_back(info.ul_rates);

    info.min_rate = *std::min_element(averages.begin(), averages.end());
    result.reward = cfg_.reward_mode == RewardMode::running_average
                        ? info.min_rate
                        : *std::min_element(info.rates.begin(), info.rates.end());
    if (info.boundary)
        result.reward += cfg_.penalty;
    info.uav = uav_;

    result.done = slot_ >= cfg_.num_slots;
    if (result.done)
        active_ = false;
    result.obs = encode_state(cfg_, uav_, slot_, channels_);
    return result;
}

double Environment::average_power() const { return slot_ > 0 ? power_sum_ / slot_ : 0.0; }

RateReport Environment::report() const
{
    const auto L = static_cast<Eigen::Index>(dl_history_.size());
    const auto K = static_cast<Eigen::Index>(cfg_.num_nodes());
    Eigen::MatrixXd dl(L, K), ul(L, K);
    for (Eigen::Index l = 0; l < L; ++l)
        for (Eigen::Index k = 0; k < K; ++k)
        {
            dl(l, k) = dl_history_[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)];
            ul(l, k) = ul_history_[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)];
        }
    return episode_rates(dl, ul, cfg_.dl_weight);
}

PolicyError::PolicyError(int slot, const std::string &what)
    : std::runtime_error("policy failed at slot " + std::to_string(slot) + ": " + what), slot_(slot)
{
}

namespace
{

Trace run_episode_with(const Policy &policy, const ScenarioConfig &cfg, std::uint64_t seed,
                       kernels::Backend backend)
{
    Environment env(cfg, backend);
    Trace trace;
    trace.seed = seed;
    std::vector<double> obs = env.reset(seed);
    while (env.active())
    {
        const int slot = env.slot() + 1;
        TraceRow row;
        row.slot = slot;
        StepResult res;
        try
        {
            row.action = policy(obs);
            res = env.step(row.action);
        }
        catch (const EnvError &)
        {
            throw;
        }
        catch (const std::exception &e)
        {
            throw PolicyError(slot, e.what());
        }
        row.reward = res.reward;
        row.done = res.done;
        row.info = std::move(res.info);
        trace.rows.push_back(std::move(row));
        obs = std::move(res.obs);
    }
    trace.report = env.report();
    trace.average_power = env.average_power();
    return trace;
}

} // namespace

Trace run_episode(const Policy &policy, const ScenarioConfig &cfg, std::uint64_t seed)
{
    return run_episode_with(policy, cfg, seed, kernels::Backend::openmp);
}

std::vector<Trace> run_episodes(const PolicyFactory &factory, const ScenarioConfig &cfg,
                                const std::vector<std::uint64_t> &seeds, kernels::Backend backend)
{
    std::vector<Trace> out(seeds.size());
    std::vector<std::exception_ptr> errors(seeds.size());
    const auto n = static_cast<std::int64_t>(seeds.size());
    auto one = [&](std::int64_t i) {
        const auto idx = static_cast<std::size_t>(i);
        try
        {
            out[idx] = run_episode_with(factory(seeds[idx]), cfg, seeds[idx], kernels::Backend::openmp);
        }
        catch (...)
        {
            errors[idx] = std::current_exception();
        }
    };
    if (backend == kernels::Backend::serial)
    {
        for (std::int64_t i = 0; i < n; ++i)
            one(i);
    }
    else
    {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < n; ++i)
            one(i);
    }
    for (const auto &e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

} // namespace rissim
