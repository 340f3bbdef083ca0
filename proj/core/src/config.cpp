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

#include "mfee/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mfee {

namespace {

std::string trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return std::string(s.substr(begin, end - begin));
}

KeyValueConfig parse_lines(std::istream& in, const std::string& origin) {
  KeyValueConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t comment = line.find('#');
    if (comment != std::string::npos) line.resize(comment);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      std::ostringstream msg;
      msg << origin << ":" << line_no << ": expected key=value";
      throw std::runtime_error(msg.str());
    }
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      std::ostringstream msg;
      msg << origin << ":" << line_no << ": empty key";
      throw std::runtime_error(msg.str());
    }
    config.set(std::move(key), std::move(value));
  }
  return config;
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("config unreadable: " + path.string());
  }
  return parse_lines(in, path.string());
}

KeyValueConfig KeyValueConfig::from_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_lines(in, "<string>");
}

std::string KeyValueConfig::env_name_for(std::string_view key) {
  std::string name = "MFEE_";
  for (char c : key) {
    if (c == '.' || c == '-') {
      name.push_back('_');
    } else {
      name.push_back(static_cast<char>(
          std::toupper(static_cast<unsigned char>(c))));
    }
  }
  return name;
}

std::optional<std::string> KeyValueConfig::get(std::string_view key) const {
  if (const char* env = std::getenv(env_name_for(key).c_str())) {
    return std::string(env);
  }
  auto it = values_.find(std::string(key));
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValueConfig::get_or(std::string_view key,
                                   std::string_view fallback) const {
  auto value = get(key);
  return value ? *value : std::string(fallback);
}

double KeyValueConfig::get_double(std::string_view key, double fallback) const {
  auto value = get(key);
  if (!value) return fallback;
  try {
    std::size_t consumed = 0;
    const double parsed = std::stod(*value, &consumed);
    if (consumed != value->size()) throw std::invalid_argument(*value);
    return parsed;
  } catch (const std::exception&) {
    throw std::runtime_error("config key '" + std::string(key) +
                             "' is not a number: " + *value);
  }
}

long long KeyValueConfig::get_int(std::string_view key, long long fallback) const {
  auto value = get(key);
  if (!value) return fallback;
  try {
    std::size_t consumed = 0;
    const long long parsed = std::stoll(*value, &consumed);
    if (consumed != value->size()) throw std::invalid_argument(*value);
    return parsed;
  } catch (const std::exception&) {
    throw std::runtime_error("config key '" + std::string(key) +
                             "' is not an integer: " + *value);
  }
}

bool KeyValueConfig::get_bool(std::string_view key, bool fallback) const {
  auto value = get(key);
  if (!value) return fallback;
  if (*value == "1" || *value == "true" || *value == "yes" || *value == "on") {
    return true;
  }
  if (*value == "0" || *value == "false" || *value == "no" || *value == "off") {
    return false;
  }
  throw std::runtime_error("config key '" + std::string(key) +
                           "' is not a boolean: " + *value);
}

void KeyValueConfig::set(std::string key, std::string value) {
  values_[std::move(key)] = std::move(value);
}

}  // namespace mfee
