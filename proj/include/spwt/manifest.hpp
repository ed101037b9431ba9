// SPDX-License-Identifier: Apache-2.0
//
// spwt: secure precise wireless transmission and jamming simulation library
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <ctime>
#include <string>
#include <utility>
#include <vector>

#include "spwt/config.hpp"

namespace spwt
{

constexpr const char *kToolVersion = "0.1.0";

// Everything needed to replay a run: the fully resolved configuration (no
// implicit defaults), every command parameter, and the master seed. The
// timestamp documents when, and is the only field that varies between
// identical runs.
struct RunManifest
{
    std::string command;
    SimConfig config;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;
    std::string timestamp_utc;
};

inline std::string utc_timestamp_now()
{
    std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

inline std::string manifest_to_text(const RunManifest &m)
{
    std::string out;
    out += "tool = spwtsim\n";
    out += "tool_version = " + m.tool_version + "\n";
    out += "timestamp_utc = " + m.timestamp_utc + "\n";
    out += "command = " + m.command + "\n";
    out += "seed = " + std::to_string(m.seed) + "\n";
    out += "\n[config]\n";
    out += config_to_text(m.config);
    out += "\n[parameters]\n";
    for (const auto &[key, value] : m.parameters)
        out += key + " = " + value + "\n";
    return out;
}

// First "key = value" match anywhere in the text; empty string when absent.
inline std::string manifest_lookup(const std::string &text, const std::string &key)
{
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
    {
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            continue;
        if (detail::trim(line.substr(0, eq)) == key)
            return detail::trim(line.substr(eq + 1));
    }
    return "";
}

// The [config] section body, parseable by parse_config_text.
inline std::string manifest_config_text(const std::string &text)
{
    const std::size_t begin = text.find("[config]");
    if (begin == std::string::npos)
        return "";
    const std::size_t body = text.find('\n', begin);
    if (body == std::string::npos)
        return "";
    const std::size_t end = text.find("\n[", body);
    return text.substr(body + 1, end == std::string::npos ? std::string::npos : end - body - 1);
}

} // namespace spwt
