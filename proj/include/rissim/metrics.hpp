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

#ifndef RISSIM_METRICS_HPP
#define RISSIM_METRICS_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rissim/env.hpp"

namespace rissim
{

// Shortest round-trip decimal representation; always '.' as separator.
std::string format_number(double value);

// RFC-4180 field: quoted when it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view text);

std::string csv_row(std::span<const std::string> fields);

// episode,seed,slot,rate_1..rate_K,min_rate,reward,boundary_flag,power_used
std::vector<std::string> metrics_header(int num_nodes);

// One row per slot; episode is the index into traces.
void write_metrics_csv(std::ostream &out, std::span<const Trace> traces, int num_nodes);

struct Summary
{
    std::size_t count = 0;
    double mean = 0.0;
    double stddev = 0.0; // sample standard deviation, 0 for fewer than two values
};

Summary summarize(std::span<const double> values);

// Episode min-rates (min over nodes of the episode-average weighted rate).
std::vector<double> episode_min_rates(std::span<const Trace> traces);

} // namespace rissim

#endif
