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


// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.hpp"
#include "rissim/cli.hpp"
#include "rissim/metrics.hpp"
#include "rissim/oracle.hpp"
#include "rissim/policies.hpp"
#include "rissim/protocol.hpp"

using namespace rissim;

namespace
{

struct Verdict
{
    bool pass = true;
    std::string detail;
};

std::string fmt(const char *pattern, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

// ---- analytic single link -------------------------------------------------------------------

Verdict analytic_single_link()
{
    constexpr double tol = 1e-9;
    const std::vector<Position3> starts{{80.0, 80.0, 100.0}, {380.0, 220.0, 100.0}, {600.0, 120.0, 100.0},
                                        {250.0, 500.0, 100.0}};
    double worst = 0.0;
    for (const Position3 &start : starts)
    {
        ScenarioConfig cfg = testing::single_link_config();
        cfg.uav_start = cfg.uav_end = start;
        cfg.num_slots = 3;
        Environment env(cfg);
        env.reset(7);
        for (int l = 0; l < cfg.num_slots; ++l)
        {
            const MatchedSolution m = matched_solution(0, env.channels(), cfg);
            Action a;
            a.speed = 0.0;
            a.schedule = {1};
            a.beam = m.beam.weights;
            a.phases = m.phases;
            const StepResult r = env.step(a);
            worst = std::max(worst, std::abs(r.info.dl_rates[0] - testing::analytic_single_link_rate(cfg, start)));
        }
    }
    return {worst <= tol, fmt("max |rate - log2(1 + P|a_c + a_t|^2/sigma2)| = %.3e (tol %.0e)", worst, tol)};
}

// ---- oracle equivalence ---------------------------------------------------------------------

Verdict oracle_equivalence()
{
    constexpr double tol = 1e-12;
    Verdict v;
    double worst_gap = 0.0, worst_margin = INFINITY;
    int instances = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
    {
        ScenarioConfig cfg = load_config(R"({"M": 1, "F1": 1, "F2": 2, "N1": 1, "N2": 2, "L": 5,
                                            "node_pos": [[400, 210, 0]]})");
        cfg.seed = seed;
        const ChannelSet ch = realize_channels(cfg, cfg.uav_start, ChannelRng(cfg.seed, 0));
        const OracleResult o16 = oracle_exhaustive(cfg, ch, 16, 1);
        const OracleResult o64 = oracle_exhaustive(cfg, ch, 64, 1);
        const MatchedSolution h = matched_solution(0, ch, cfg);
        const double heuristic = slot_min_rate(cfg, ch, h.phases, h.beam);
        const double snapped = slot_min_rate(cfg, ch, snap_to_grid(h.phases, 16), h.beam);
        const double gap = std::max(0.0, o64.min_rate - o16.min_rate);
        const bool dominates = o16.min_rate + tol >= snapped;
        const bool within = o16.min_rate - heuristic <= gap + tol;
        v.pass = v.pass && dominates && within;
        worst_gap = std::max(worst_gap, gap);
        worst_margin = std::min(worst_margin, gap - (o16.min_rate - heuristic));
        ++instances;
        if (!dominates || !within)
            v.detail += fmt("[seed %llu: O16 %.9g, O64 %.9g, H %.9g, H16 %.9g] ",
                            static_cast<unsigned long long>(seed), o16.min_rate, o64.min_rate, heuristic, snapped);
    }
    v.detail += fmt("%d instances: O16 >= snapped heuristic, O16 - H <= gap(O64 - O16); max gap %.3e, "
                    "min slack %.3e",
                    instances, worst_gap, worst_margin);
    return v;
}

// ---- cascade correctness --------------------------------------------------------------------

Verdict cascade_correctness()
{
    constexpr double tol = 1e-10;
    std::mt19937_64 rng(20260417);
    double worst = 0.0;
    int instances = 0;
    for (int F = 1; F <= 3; ++F)
        for (int N = 1; N <= 3; ++N)
            for (int M = 1; M <= 3; ++M)
                for (int rep = 0; rep < 4; ++rep)
                {
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
                            worst = std::max(worst, std::abs(dl(m) - dl_ref[static_cast<std::size_t>(m)]));
                            worst = std::max(worst, std::abs(ul(m) - ul_ref[static_cast<std::size_t>(m)]));
                        }
                    }
                    ++instances;
                }
    return {worst <= tol, fmt("%d instances (F, N, M <= 3, DL and UL), max entry error %.3e (tol %.0e)", instances,
                              worst, tol)};
}

// ---- statistical channel fidelity ------------------------------------------------------------

Verdict channel_fidelity()
{
    constexpr int draws = 100000;
    Verdict v;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    CMatrix los(1, draws);
    for (int i = 0; i < draws; ++i)
        los(0, i) = std::polar(1.0, phase(rng));
    for (double zeta : {0.0, 1.0, 5.0})
    {
        const CMatrix h = mix_rician(zeta, los, sample_nlos(rng, 1, draws));
        const double m2 = h.squaredNorm() / draws;
        const bool ok = std::abs(m2 - 1.0) <= 0.01;
        v.pass = v.pass && ok;
        v.detail += fmt("E|h|^2(zeta=%g) = %.5f; ", zeta, m2);
    }

    const double psi = 0.1;
    double sum_a = 0.0, sum_e = 0.0, worst_r = 0.0;
    for (int i = 0; i < draws; ++i)
    {
        const JitterDraw d = sample_jitter(rng, psi);
        sum_a += d.d_azimuth;
        sum_e += d.d_elevation;
        worst_r = std::max(worst_r, std::hypot(d.d_azimuth, d.d_elevation));
    }
    const double mean_a = sum_a / draws, mean_e = sum_e / draws;
    const bool inside = worst_r <= psi;
    const bool centred = std::abs(mean_a) <= 0.002 && std::abs(mean_e) <= 0.002;
    v.pass = v.pass && inside && centred;
    v.detail += fmt("jitter max radius %.6f <= %.1f, means (%.2e, %.2e)", worst_r, psi, mean_a, mean_e);
    return v;
}

// ---- trend reproduction -----------------------------------------------------------------------

struct TrendResult
{
    bool pass = true;
    std::string detail;
};

std::vector<double> matched_min_rates(const ScenarioConfig &cfg, const std::vector<std::uint64_t> &seeds)
{
    return episode_min_rates(run_episodes(make_policy_factory("matched", cfg), cfg, seeds));
}

// increasing: H1 is an increase between adjacent values; otherwise a decrease.
TrendResult trend(const char *label, const std::string &key, const std::vector<std::string> &values,
                  bool increasing, const std::vector<std::uint64_t> &seeds)
{
    const ScenarioConfig base = load_config("");
    std::vector<std::vector<double>> rates;
    for (const std::string &value : values)
        rates.push_back(matched_min_rates(apply_override(base, key, value), seeds));
    TrendResult r;
    r.detail = fmt("(%s) %s:", label, key.c_str());
    for (std::size_t i = 0; i < values.size(); ++i)
        r.detail += fmt(" %s->%.5f", values[i].c_str(), summarize(rates[i]).mean);
    r.detail += " p=[";
    for (std::size_t i = 1; i < values.size(); ++i)
    {
        const auto t = increasing ? testing::paired_greater(rates[i], rates[i - 1])
                                  : testing::paired_greater(rates[i - 1], rates[i]);
        r.pass = r.pass && t.p_value < 0.05;
        r.detail += fmt("%s%.2e", i > 1 ? "," : "", t.p_value);
    }
    r.detail += "]";
    return r;
}

Verdict trend_reproduction()
{
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 1; s <= 30; ++s)
        seeds.push_back(s);
    const TrendResult a = trend("a", "N1", {"4", "6", "8", "10"}, true, seeds);
    const TrendResult b = trend("b", "F_side", {"2", "4", "6", "8"}, true, seeds);
    const TrendResult c = trend("c", "jitter_ratio", {"0", "0.05", "0.1", "0.2"}, false, seeds);
    return {a.pass && b.pass && c.pass, a.detail + "; " + b.detail + "; " + c.detail};
}

// ---- determinism ------------------------------------------------------------------------------

std::string scripted_transcript(const ScenarioConfig &cfg)
{
    Session s(cfg);
    const Policy p = baseline_random(cfg, 42);
    std::string out = *s.handle_line(R"({"kind":"hello","id":1})") + "\n";
    const std::string first = *s.handle_line(R"({"kind":"reset","id":2,"seed":8})");
    out += first + "\n";
    std::vector<double> obs = nlohmann::json::parse(first)["obs"].get<std::vector<double>>();
    std::int64_t id = 3;
    for (int l = 0; l < cfg.num_slots; ++l)
    {
        const std::string reply =
            *s.handle_line(encode_message({MessageKind::step, id++, nlohmann::json{{"action", p(obs)}}}));
        out += reply + "\n";
        obs = nlohmann::json::parse(reply)["obs"].get<std::vector<double>>();
    }
    out += *s.handle_line(encode_message({MessageKind::close, id, nlohmann::json::object()})) + "\n";
    return out;
}

std::string eval_csv(const ScenarioConfig &cfg, const std::string &policy)
{
    std::vector<std::uint64_t> seeds{3, 4, 5, 6};
    std::ostringstream out;
    const auto traces = run_episodes(make_policy_factory(policy, cfg), cfg, seeds);
    write_metrics_csv(out, traces, cfg.num_nodes());
    return out.str();
}

Verdict determinism()
{
    const ScenarioConfig cfg = load_config(R"({"L": 40})");
    const std::string t1 = scripted_transcript(cfg), t2 = scripted_transcript(cfg);
    const std::string r1 = eval_csv(cfg, "random"), r2 = eval_csv(cfg, "random");
    const std::string m1 = eval_csv(cfg, "matched"), m2 = eval_csv(cfg, "matched");
    const bool pass = t1 == t2 && r1 == r2 && m1 == m2;
    return {pass, fmt("transcript %zu bytes %s; random CSV %zu bytes %s; matched CSV %zu bytes %s", t1.size(),
                      t1 == t2 ? "identical" : "DIFFER", r1.size(), r1 == r2 ? "identical" : "DIFFER", m1.size(),
                      m1 == m2 ? "identical" : "DIFFER")};
}

// ---- constraint compliance fuzz ---------------------------------------------------------------

Verdict constraint_fuzz()
{
    constexpr int total_actions = 10000;
    constexpr double rel_tol = 1e-9;
    const ScenarioConfig cfg = load_config(R"({"L": 100, "M": 2, "F1": 2, "F2": 2, "N1": 2, "N2": 2})");
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> wide(-50.0, 50.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t len = action_length(cfg);

    int steps = 0, out_of_bounds = 0, slot_power = 0, avg_power = 0, non_canonical = 0;
    Environment env(cfg);
    while (steps < total_actions)
    {
        env.reset(rng());
        for (int l = 0; l < cfg.num_slots && steps < total_actions; ++l, ++steps)
        {
            std::vector<double> action(len);
            const double scale = unit(rng) < 0.5 ? 1.0 : 1e3;
            for (double &x : action)
                x = wide(rng) * scale;
            const DecodedAction d = decode_action(cfg, action);
            for (double t : d.action.phases.theta_uav)
                non_canonical += !(t >= 0.0 && t < 2.0 * std::numbers::pi);
            for (double t : d.action.phases.theta_ris)
                non_canonical += !(t >= 0.0 && t < 2.0 * std::numbers::pi);
            const StepResult r = env.step(action);
            out_of_bounds += !inside_area(r.info.uav, cfg);
            slot_power += r.info.power_used > cfg.p_dl * (1.0 + rel_tol);
            avg_power += env.average_power() > cfg.p_dl * (1.0 + rel_tol);
        }
    }
    const bool pass = out_of_bounds == 0 && slot_power == 0 && avg_power == 0 && non_canonical == 0;
    return {pass, fmt("%d actions: %d out of bounds, %d slot power violations, %d average power violations, "
                      "%d non-canonical phases",
                      steps, out_of_bounds, slot_power, avg_power, non_canonical)};
}

} // namespace

int main()
{
    struct Criterion
    {
        const char *name;
        double budget_s;
        std::function<Verdict()> run;
    };
    const std::vector<Criterion> criteria{
        {"analytic-single-link", 1.0, analytic_single_link},
        {"oracle-equivalence", 120.0, oracle_equivalence},
        {"cascade-correctness", 30.0, cascade_correctness},
        {"channel-fidelity", 60.0, channel_fidelity},
        {"trend-reproduction", 600.0, trend_reproduction},
        {"determinism", 60.0, determinism},
        {"constraint-fuzz", 60.0, constraint_fuzz},
    };

    int failures = 0;
    for (const Criterion &c : criteria)
    {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try
        {
            v = c.run();
        }
        catch (const std::exception &e)
        {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.budget_s;
        const bool pass = v.pass && in_time;
        failures += !pass;
        std::printf("%s %s: %s; %.2f s (budget %.0f s%s)\n", pass ? "PASS" : "FAIL", c.name, v.detail.c_str(), secs,
                    c.budget_s, in_time ? "" : ", exceeded");
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
