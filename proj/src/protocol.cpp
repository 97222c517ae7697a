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

#include "rissim/protocol.hpp"

#include <array>
#include <utility>

namespace rissim
{

using nlohmann::json;

namespace
{

constexpr std::array<std::pair<MessageKind, std::string_view>, 8> kind_names{{
    {MessageKind::hello, "hello"},
    {MessageKind::reset, "reset"},
    {MessageKind::step, "step"},
    {MessageKind::close, "close"},
    {MessageKind::obs_spec, "obs_spec"},
    {MessageKind::obs, "obs"},
    {MessageKind::result, "result"},
    {MessageKind::error, "error"},
}};

ProtocolMessage error_message(std::int64_t id, const std::string &code, const std::string &what)
{
    return {MessageKind::error, id, json{{"code", code}, {"message", what}}};
}

json info_json(const StepInfo &info)
{
    return json{
        {"rates", info.rates},
        {"dl_rates", info.dl_rates},
        {"ul_rates", info.ul_rates},
        {"min_rate", info.min_rate},
        {"boundary", info.boundary},
        {"power_used", info.power_used},
        {"clamp_count", info.clamp_count},
        {"uav", {info.uav.x, info.uav.y, info.uav.z}},
    };
}

// Best-effort id recovery for requests that fail to decode; 0 when none is readable.
std::int64_t salvage_id(std::string_view line)
{
    const json doc = json::parse(line, nullptr, false);
    if (doc.is_object())
        if (const auto id = doc.find("id"); id != doc.end() && id->is_number_integer())
            return id->get<std::int64_t>();
    return 0;
}

} // namespace

std::string_view kind_name(MessageKind kind)
{
    for (const auto &[k, name] : kind_names)
        if (k == kind)
            return name;
    return "error";
}

std::optional<MessageKind> parse_kind(std::string_view name)
{
    for (const auto &[k, n] : kind_names)
        if (n == name)
            return k;
    return std::nullopt;
}

std::string encode_message(const ProtocolMessage &msg)
{
    json doc = json::object();
    doc["kind"] = kind_name(msg.kind);
    doc["id"] = msg.id;
    if (!msg.payload.is_null())
    {
        if (!msg.payload.is_object())
            throw ProtocolError("bad-message", "payload must be a JSON object");
        for (const auto &[key, value] : msg.payload.items())
        {
            if (key == "kind" || key == "id")
                throw ProtocolError("bad-message", "payload may not contain key '" + key + "'");
            doc[key] = value;
        }
    }
    return doc.dump();
}

ProtocolMessage decode_message(std::string_view line)
{
    json doc;
    try
    {
        doc = json::parse(line);
    }
    catch (const json::parse_error &e)
    {
        throw ProtocolError("parse-error", e.what());
    }
    if (!doc.is_object())
        throw ProtocolError("parse-error", "message must be a JSON object");

    ProtocolMessage msg;
    const auto kind = doc.find("kind");
    if (kind == doc.end() || !kind->is_string())
        throw ProtocolError("bad-message", "missing string field 'kind'");
    const auto parsed = parse_kind(kind->get<std::string>());
    if (!parsed)
        throw ProtocolError("bad-message", "unknown kind '" + kind->get<std::string>() + "'");
    msg.kind = *parsed;

    const auto id = doc.find("id");
    if (id == doc.end() || !id->is_number_integer())
        throw ProtocolError("bad-message", "missing integer field 'id'");
    msg.id = id->get<std::int64_t>();

    doc.erase("kind");
    doc.erase("id");
    msg.payload = std::move(doc);
    return msg;
}

nlohmann::json obs_spec_payload(const ScenarioConfig &cfg)
{
    return json{
        {"version", protocol_version},
        {"M", cfg.bs_antennas},
        {"K", cfg.num_nodes()},
        {"F", cfg.num_flying()},
        {"N", cfg.num_ground()},
        {"obs_len", obs_length(cfg)},
        {"action_len", action_length(cfg)},
    };
}

Session::Session(ScenarioConfig cfg, kernels::Backend backend) : cfg_(cfg), env_(std::move(cfg), backend) {}

std::optional<std::string> Session::handle_line(std::string_view line)
{
    if (line.find_first_not_of(" \t\r\n") == std::string_view::npos)
        return std::nullopt;
    try
    {
        return encode_message(handle(decode_message(line)));
    }
    catch (const ProtocolError &e)
    {
        return encode_message(error_message(salvage_id(line), e.code(), e.what()));
    }
}

ProtocolMessage Session::handle(const ProtocolMessage &request)
{
    if (last_id_ && request.id <= *last_id_)
        return error_message(request.id, "bad-id",
                             "id " + std::to_string(request.id) + " is not greater than " + std::to_string(*last_id_));
    last_id_ = request.id;
    try
    {
        return respond(request);
    }
    catch (const EnvError &e)
    {
        return error_message(request.id, e.code(), e.what());
    }
    catch (const ProtocolError &e)
    {
        return error_message(request.id, e.code(), e.what());
    }
    catch (const std::invalid_argument &e)
    {
        return error_message(request.id, "bad-action", e.what());
    }
}

ProtocolMessage Session::respond(const ProtocolMessage &request)
{
    switch (request.kind)
    {
    case MessageKind::hello:
        return {MessageKind::obs_spec, request.id, obs_spec_payload(cfg_)};
    case MessageKind::reset: {
        std::uint64_t seed = cfg_.seed;
        if (request.payload.contains("seed"))
        {
            const auto &s = request.payload["seed"];
            if (!s.is_number_unsigned())
                throw ProtocolError("bad-seed", "seed must be a non-negative integer");
            seed = s.get<std::uint64_t>();
        }
        auto obs = env_.reset(seed);
        return {MessageKind::obs, request.id, json{{"obs", std::move(obs)}, {"slot", env_.slot()}}};
    }
    case MessageKind::step: {
        const auto it = request.payload.find("action");
        if (it == request.payload.end() || !it->is_array())
            throw ProtocolError("bad-action", "step requires a numeric array field 'action'");
        std::vector<double> action;
        action.reserve(it->size());
        for (const auto &v : *it)
        {
            if (!v.is_number())
                throw ProtocolError("bad-action", "action entries must be numbers");
            action.push_back(v.get<double>());
        }
        StepResult r = env_.step(action);
        return {MessageKind::result, request.id,
                json{{"obs", std::move(r.obs)}, {"reward", r.reward}, {"done", r.done}, {"info", info_json(r.info)}}};
    }
    case MessageKind::close:
        closed_ = true;
        return {MessageKind::result, request.id, json{{"closed", true}}};
    default:
        throw ProtocolError("bad-message", "'" + std::string(kind_name(request.kind)) + "' is a response kind");
    }
}

} // namespace rissim
