// Copyright 2026 The statlen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <ctime>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

#include "statlen/version.hpp"

namespace statlen {

// FNV-1a, 64-bit: offset 0xcbf29ce484222325, prime 0x100000001b3.
inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char byte : data) {
    hash ^= byte;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

inline std::string hex64(std::uint64_t value) {
  static const char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = digits[value & 0xF];
    value >>= 4;
  }
  return out;
}

struct RunManifest {
  std::string command;
  std::string config_digest;  // hex, covers every parameter affecting output
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string timestamp;  // UTC ISO-8601; fixed epoch under --frozen-time
};

inline std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[80];
  std::snprintf(buffer, sizeof(buffer), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min,
                tm.tm_sec);
  return buffer;
}

// The digest folds the command, the canonical (sorted-key) dump of every
// effective parameter, the seed, and the tool version.
inline RunManifest make_manifest(const std::string& command,
                                 const nlohmann::json& params, std::uint64_t seed,
                                 bool frozen_time) {
  RunManifest manifest;
  manifest.command = command;
  manifest.seed = seed;
  manifest.tool_version = kToolVersion;
  manifest.timestamp = frozen_time ? "1970-01-01T00:00:00Z" : iso8601_utc_now();
  const std::string canonical =
      command + "\n" + params.dump() + "\n" + std::to_string(seed) + "\n" + kToolVersion;
  manifest.config_digest = hex64(fnv1a64(canonical));
  return manifest;
}

inline nlohmann::json to_json(const RunManifest& manifest) {
  return {{"command", manifest.command},
          {"config_digest", manifest.config_digest},
          {"seed", manifest.seed},
          {"tool_version", manifest.tool_version},
          {"timestamp", manifest.timestamp}};
}

}  // namespace statlen
