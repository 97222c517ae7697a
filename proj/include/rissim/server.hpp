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

#ifndef RISSIM_SERVER_HPP
#define RISSIM_SERVER_HPP

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <mutex>
#include <thread>
#include <vector>

#include "rissim/scenario.hpp"

namespace rissim
{

// Reads requests line by line until EOF or a close request; returns the number of requests handled.
std::size_t serve_stream(const ScenarioConfig &cfg, std::istream &in, std::ostream &out);

// Loopback-or-any TCP listener. Each accepted connection gets its own Session on its own thread.
class TcpServer
{
public:
    // Binds and listens immediately; port 0 picks an ephemeral port. Throws std::system_error.
    TcpServer(ScenarioConfig cfg, std::uint16_t port, bool loopback_only = true);
    ~TcpServer();

    TcpServer(const TcpServer &) = delete;
    TcpServer &operator=(const TcpServer &) = delete;

    std::uint16_t port() const { return port_; }

    // Accept loop; returns after stop().
    void run();
    void stop();

private:
    ScenarioConfig cfg_;
    int listen_fd_ = -1;
    std::uint16_t port_ = 0;
    std::atomic<bool> stopping_{false};
    std::mutex workers_mutex_;
    std::vector<std::thread> workers_;
};

} // namespace rissim

#endif
