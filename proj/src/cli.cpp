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

#include "rissim/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "rissim/metrics.hpp"
#include "rissim/oracle.hpp"
#include "rissim/policies.hpp"
#include "rissim/server.hpp"

namespace rissim
{

using nlohmann::json;

namespace
{

json parse_value(std::string_view value)
{
    json v = json::parse(value, nullptr, false);
    if (v.is_discarded())
        return json(std::string(value));
    return v;
}

json *descend(json &node, std::string_view part)
{
    if (node.is_object())
    {
        auto it = node.find(std::string(part));
        return it == node.end() ? nullptr : &*it;
    }
    if (node.is_array())
    {
        std::size_t idx = 0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), idx);
        if (ec != std::errc{} || ptr != part.data() + part.size() || idx >= node.size())
            return nullptr;
        return &node[idx];
    }
    return nullptr;
}

std::vector<std::string> split(std::string_view text, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true)
    {
        const auto pos = text.find(sep, start);
        out.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

struct SweepSpec
{
    std::string key;
    std::vector<std::string> values;
};

SweepSpec parse_sweep(const std::string &text)
{
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == text.size())
        throw CLI::ValidationError("--sweep", "expected KEY=v1,v2,...");
    return {text.substr(0, eq), split(std::string_view(text).substr(eq + 1), ',')};
}

std::vector<std::uint64_t> episode_seeds(std::uint64_t base, int episodes)
{
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(episodes));
    std::iota(seeds.begin(), seeds.end(), base);
    return seeds;
}

json beam_json(const CMatrix &w)
{
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < w.rows(); ++i)
    {
        json rr = json::array(), ii = json::array();
        for (Eigen::Index k = 0; k < w.cols(); ++k)
        {
            rr.push_back(w(i, k).real());
            ii.push_back(w(i, k).imag());
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    return {{"real", re}, {"imag", im}};
}

class OutputTarget
{
public:
    OutputTarget(const std::string &path, std::ostream &fallback)
    {
        if (path.empty() || path == "-")
        {
            stream_ = &fallback;
            return;
        }
        file_.open(path, std::ios::binary | std::ios::trunc);
        if (!file_)
            throw std::runtime_error("cannot open output file '" + path + "'");
        stream_ = &file_;
    }
    std::ostream &stream() { return *stream_; }
    bool to_file() const { return file_.is_open(); }

private:
    std::ofstream file_;
    std::ostream *stream_ = nullptr;
};

} // namespace

ScenarioConfig apply_override(const ScenarioConfig &cfg, std::string_view key, std::string_view value)
{
    if (key == "N_side" || key == "F_side")
    {
        const std::string a = key == "N_side" ? "N1" : "F1";
        const std::string b = key == "N_side" ? "N2" : "F2";
        return apply_override(apply_override(cfg, a, value), b, value);
    }
    if (key == "jitter_ratio")
    {
        const json v = parse_value(value);
        if (!v.is_number() || v.get<double>() < 0.0)
            throw ConfigError(std::string(key), std::string(value), "invariant violation: jitter_ratio must be >= 0");
        const double psi = v.get<double>() * std::abs(link_angles(cfg.uav_start, cfg.ris_pos).azimuth);
        ScenarioConfig out = cfg;
        out.jitter_psi = {psi, psi, psi};
        validate(out);
        return out;
    }

    json doc = json::parse(dump_config(cfg));
    const auto parts = split(key, '.');
    json *node = &doc;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i)
    {
        node = descend(*node, parts[i]);
        if (node == nullptr)
            throw ConfigError(std::string(key), std::string(value), "parse failure: unknown key");
    }
    if (parts.size() == 1)
        (*node)[parts.back()] = parse_value(value);
    else if (json *leaf = descend(*node, parts.back()))
        *leaf = parse_value(value);
    else
        throw ConfigError(std::string(key), std::string(value), "parse failure: unknown key");
    return load_config(doc.dump());
}

int run_cli(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err)
{
    CLI::App app{"rissim: dual-RIS UAV network simulator, environment server and evaluation tools", "rissim"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    int episodes = 10;
    std::string policy = "matched";
    std::string out_path;
    std::string sweep_text;
    std::string transport = "stdio";
    int phase_levels = 16;
    int beam_grid = 4;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", config_path, "Scenario JSON file (defaults when omitted)")->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "Base seed; episode e uses seed + e");
    };
    auto add_run = [&](CLI::App *sub) {
        sub->add_option("--episodes", episodes, "Episodes per run")->check(CLI::Range(1, 1000000));
        sub->add_option("--policy", policy, "Baseline policy")->check(CLI::IsMember({"random", "matched"}));
        sub->add_option("--out", out_path, "Output CSV path ('-' for stdout)");
    };

    CLI::App *serve = app.add_subcommand("serve", "Run the newline-delimited JSON environment server");
    add_common(serve);
    serve->add_option("--transport", transport, "stdio or tcp:PORT");

    CLI::App *eval = app.add_subcommand("eval", "Run a baseline policy and write per-slot metrics CSV");
    add_common(eval);
    add_run(eval);

    CLI::App *sweep = app.add_subcommand("sweep", "Vary one config key and write one summary row per value");
    add_common(sweep);
    add_run(sweep);
    sweep->add_option("--sweep", sweep_text, "KEY=v1,v2,...")->required();

    CLI::App *oracle = app.add_subcommand("oracle", "Exhaustive grid optimum on the frozen slot-0 channels");
    add_common(oracle);
    oracle->add_option("--phase-levels", phase_levels, "Uniform phase levels")->check(CLI::PositiveNumber);
    oracle->add_option("--beam-grid", beam_grid, "Power-split resolution")->check(CLI::PositiveNumber);
    oracle->add_option("--out", out_path, "Output JSON path ('-' for stdout)");

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp &)
    {
        out << app.help();
        return 0;
    }
    catch (const CLI::ParseError &e)
    {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try
    {
        ScenarioConfig cfg = config_path.empty() ? load_config("") : load_config_file(config_path);
        if (seed)
            cfg.seed = *seed;

        if (serve->parsed())
        {
            if (transport == "stdio")
            {
                serve_stream(cfg, in, out);
                return 0;
            }
            if (transport.rfind("tcp:", 0) == 0)
            {
                int port = -1;
                const std::string_view digits = std::string_view(transport).substr(4);
                const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), port);
                if (ec != std::errc{} || ptr != digits.data() + digits.size() || port < 0 || port > 65535)
                {
                    err << "error: bad transport '" << transport << "'\n\n" << app.help();
                    return 2;
                }
                TcpServer server(cfg, static_cast<std::uint16_t>(port), false);
                err << "listening on tcp:" << server.port() << '\n';
                server.run();
                return 0;
            }
            err << "error: bad transport '" << transport << "'\n\n" << app.help();
            return 2;
        }

        if (eval->parsed())
        {
            const auto seeds = episode_seeds(cfg.seed, episodes);
            const auto traces = run_episodes(make_policy_factory(policy, cfg), cfg, seeds);
            OutputTarget target(out_path, out);
            write_metrics_csv(target.stream(), traces, cfg.num_nodes());
            const auto rates = episode_min_rates(traces);
            const Summary s = summarize(rates);
            std::ostream &summary_stream = target.to_file() ? out : err;
            const std::vector<std::string> header{"policy", "episodes", "mean_min_rate", "stddev_min_rate"};
            const std::vector<std::string> row{policy, std::to_string(s.count), format_number(s.mean),
                                               format_number(s.stddev)};
            summary_stream << csv_row(header) << csv_row(row);
            return 0;
        }

        if (sweep->parsed())
        {
            const SweepSpec spec = parse_sweep(sweep_text);
            const auto seeds = episode_seeds(cfg.seed, episodes);
            OutputTarget target(out_path, out);
            const std::vector<std::string> header{"key", "value", "episodes", "mean_min_rate", "stddev_min_rate"};
            target.stream() << csv_row(header);
            for (const std::string &value : spec.values)
            {
                const ScenarioConfig swept = apply_override(cfg, spec.key, value);
                const auto traces = run_episodes(make_policy_factory(policy, swept), swept, seeds);
                const auto rates = episode_min_rates(traces);
                const Summary s = summarize(rates);
                const std::vector<std::string> row{spec.key, value, std::to_string(s.count), format_number(s.mean),
                                                   format_number(s.stddev)};
                target.stream() << csv_row(row);
            }
            return 0;
        }

        if (oracle->parsed())
        {
            const OracleResult r = oracle_exhaustive(cfg, phase_levels, beam_grid);
            const json doc{
                {"phase_levels", phase_levels},
                {"beam_grid", beam_grid},
                {"combinations", r.combinations},
                {"min_rate", r.min_rate},
                {"theta_uav", r.phases.theta_uav},
                {"theta_ris", r.phases.theta_ris},
                {"beam", beam_json(r.beam.weights)},
            };
            OutputTarget target(out_path, out);
            target.stream() << doc.dump(2) << '\n';
            return 0;
        }
    }
    catch (const CLI::ValidationError &e)
    {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace rissim
