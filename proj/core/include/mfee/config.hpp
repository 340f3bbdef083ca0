// Copyright 2026 The MFEE Authors
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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace mfee {

// Flat key=value configuration with environment overrides. File syntax:
// one `key = value` per line, '#' starts a comment, blank lines ignored.
//
// Every get() first consults the environment: key "direct_confidence_threshold"
// maps to MFEE_DIRECT_CONFIDENCE_THRESHOLD (uppercased, '.' and '-' become
// '_'). Operators can therefore force any setting at boot, e.g.
// MFEE_KILL_SWITCH=1, without touching files.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig from_file(const std::filesystem::path& path);
  static KeyValueConfig from_string(std::string_view text);

  // Value with environment override applied.
  std::optional<std::string> get(std::string_view key) const;

  std::string get_or(std::string_view key, std::string_view fallback) const;
  double get_double(std::string_view key, double fallback) const;
  long long get_int(std::string_view key, long long fallback) const;
  bool get_bool(std::string_view key, bool fallback) const;

  void set(std::string key, std::string value);
  const std::map<std::string, std::string>& file_values() const {
    return values_;
  }

  static std::string env_name_for(std::string_view key);

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace mfee
