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

#ifndef RISSIM_PROTOCOL_HPP
#define RISSIM_PROTOCOL_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "rissim/env.hpp"

namespace rissim
{

inline constexpr int protocol_version = 1;

enum class MessageKind
{
    hello,
    reset,
    step,
    close,
    obs_spec,
    obs,
    result,
    error
};

std::string_view kind_name(MessageKind kind);
std::optional<MessageKind> parse_kind(std::string_view name);

// One line on the wire: {"kind": ..., "id": ..., <payload fields>}.
// Payload fields sit next to kind and id; the payload may not use those two keys.
struct ProtocolMessage
{
    MessageKind kind = MessageKind::hello;
    std::int64_t id = 0;
    nlohmann::json payload = nlohmann::json::object();

    bool operator==(const ProtocolMessage &) const = default;
};

class ProtocolError : public std::runtime_error
{
public:
    ProtocolError(std::string code, const std::string &what) : std::runtime_error(what), code_(std::move(code)) {}
    const std::string &code() const noexcept { return code_; }

private:
    std::string code_;
};

// Compact single-line JSON without a trailing newline.
std::string encode_message(const ProtocolMessage &msg);

// Throws ProtocolError with code "parse-error" (not JSON / not an object) or "bad-message"
// (missing or malformed kind/id, reserved payload keys).
ProtocolMessage decode_message(std::string_view line);

// Request/response state machine for one client. Error codes:
//   parse-error, bad-message, bad-id, bad-seed, bad-action, no-active-episode, episode-done.
class Session
{
public:
    explicit Session(ScenarioConfig cfg, kernels::Backend backend = kernels::Backend::serial);

    // Returns exactly one response line per input line. Blank lines yield std::nullopt.
    std::optional<std::string> handle_line(std::string_view line);
    ProtocolMessage handle(const ProtocolMessage &request);

    bool closed() const { return closed_; }

private:
    ProtocolMessage respond(const ProtocolMessage &request);

    ScenarioConfig cfg_;
    Environment env_;
    std::optional<std::int64_t> last_id_;
    bool closed_ = false;
};

nlohmann::json obs_spec_payload(const ScenarioConfig &cfg);

} // namespace rissim

#endif
