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

#include "rissim/metrics.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace rissim
{

std::string format_number(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    if (value == 0.0)
        return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string csv_field(std::string_view text)
{
    if (text.find_first_of(",\"\r\n") == std::string_view::npos)
        return std::string(text);
    std::string out = "\"";
    for (char c : text)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_row(std::span<const std::string> fields)
{
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i)
    {
        if (i)
            out += ',';
        out += csv_field(fields[i]);
    }
    out += "\r\n";
    return out;
}

std::vector<std::string> metrics_header(int num_nodes)
{
    std::vector<std::string> h{"episode", "seed", "slot"};
    for (int k = 1; k <= num_nodes; ++k)
        h.push_back("rate_" + std::to_string(k));
    for (const char *name : {"min_rate", "reward", "boundary_flag", "power_used"})
        h.emplace_back(name);
    return h;
}

void write_metrics_csv(std::ostream &out, std::span<const Trace> traces, int num_nodes)
{
    out << csv_row(metrics_header(num_nodes));
    std::vector<std::string> fields;
    for (std::size_t e = 0; e < traces.size(); ++e)
    {
        for (const TraceRow &row : traces[e].rows)
        {
            fields.clear();
            fields.push_back(std::to_string(e));
            fields.push_back(std::to_string(traces[e].seed));
            fields.push_back(std::to_string(row.slot));
            for (int k = 0; k < num_nodes; ++k)
                fields.push_back(format_number(row.info.rates.at(static_cast<std::size_t>(k))));
            fields.push_back(format_number(row.info.min_rate));
            fields.push_back(format_number(row.reward));
            fields.push_back(row.info.boundary ? "1" : "0");
            fields.push_back(format_number(row.info.power_used));
            out << csv_row(fields);
        }
    }
}

Summary summarize(std::span<const double> values)
{
    Summary s;
    s.count = values.size();
    if (values.empty())
        return s;
    for (double v : values)
        s.mean += v;
    s.mean /= static_cast<double>(s.count);
    if (s.count > 1)
    {
        double ss = 0.0;
        for (double v : values)
            ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(s.count - 1));
    }
    return s;
}

std::vector<double> episode_min_rates(std::span<const Trace> traces)
{
    std::vector<double> out;
    out.reserve(traces.size());
    for (const Trace &t : traces)
        out.push_back(t.report.min_rate);
    return out;
}

} // namespace rissim
