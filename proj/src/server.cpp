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

#include "rissim/server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <istream>
#include <ostream>
#include <string>
#include <system_error>

#include "rissim/protocol.hpp"

namespace rissim
{

std::size_t serve_stream(const ScenarioConfig &cfg, std::istream &in, std::ostream &out)
{
    Session session(cfg);
    std::size_t handled = 0;
    std::string line;
    while (!session.closed() && std::getline(in, line))
    {
        if (auto reply = session.handle_line(line))
        {
            out << *reply << '\n';
            out.flush();
            ++handled;
        }
    }
    return handled;
}

namespace
{

[[noreturn]] void throw_errno(const char *what) { throw std::system_error(errno, std::generic_category(), what); }

bool send_all(int fd, const std::string &data)
{
    std::size_t sent = 0;
    while (sent < data.size())
    {
        const ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
        if (n < 0 && errno == EINTR)
            continue;
        if (n <= 0)
            return false;
        sent += static_cast<std::size_t>(n);
    }
    return true;
}

void serve_connection(ScenarioConfig cfg, int fd)
{
    Session session(std::move(cfg));
    std::string buffer;
    char chunk[4096];
    while (!session.closed())
    {
        const ssize_t n = ::recv(fd, chunk, sizeof chunk, 0);
        if (n < 0 && errno == EINTR)
            continue;
        if (n <= 0)
            break;
        buffer.append(chunk, static_cast<std::size_t>(n));
        std::size_t start = 0;
        for (std::size_t nl; !session.closed() && (nl = buffer.find('\n', start)) != std::string::npos; start = nl + 1)
        {
            auto reply = session.handle_line(std::string_view(buffer).substr(start, nl - start));
            if (reply && !send_all(fd, *reply + '\n'))
            {
                ::close(fd);
                return;
            }
        }
        buffer.erase(0, start);
    }
    ::close(fd);
}

} // namespace

TcpServer::TcpServer(ScenarioConfig cfg, std::uint16_t port, bool loopback_only) : cfg_(std::move(cfg))
{
    validate(cfg_);
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0)
        throw_errno("socket");
    const int one = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    addr.sin_addr.s_addr = htonl(loopback_only ? INADDR_LOOPBACK : INADDR_ANY);
    if (::bind(listen_fd_, reinterpret_cast<sockaddr *>(&addr), sizeof addr) < 0)
    {
        const int err = errno;
        ::close(listen_fd_);
        throw std::system_error(err, std::generic_category(), "bind");
    }
    if (::listen(listen_fd_, 16) < 0)
    {
        const int err = errno;
        ::close(listen_fd_);
        throw std::system_error(err, std::generic_category(), "listen");
    }
    socklen_t len = sizeof addr;
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr *>(&addr), &len);
    port_ = ntohs(addr.sin_port);
}

TcpServer::~TcpServer()
{
    stop();
    std::lock_guard lock(workers_mutex_);
    for (auto &t : workers_)
        if (t.joinable())
            t.join();
}

void TcpServer::run()
{
    while (!stopping_)
    {
        const int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0)
        {
            if (errno == EINTR)
                continue;
            break;
        }
        if (stopping_)
        {
            ::close(fd);
            break;
        }
        std::lock_guard lock(workers_mutex_);
        workers_.emplace_back(serve_connection, cfg_, fd);
    }
}

void TcpServer::stop()
{
    if (stopping_.exchange(true))
        return;
    if (listen_fd_ >= 0)
    {
        ::shutdown(listen_fd_, SHUT_RDWR);
        ::close(listen_fd_);
    }
}

} // namespace rissim
