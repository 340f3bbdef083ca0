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

#include "mfee/knowledge_base.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "mfee/text.hpp"

namespace mfee {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

}  // namespace

KnowledgeBase KnowledgeBase::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("knowledge base unreadable: " + path.string());
  }
  KnowledgeBase kb;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 3) {
      std::ostringstream msg;
      msg << "knowledge base " << path.string() << ":" << line_no
          << ": expected 3 tab-separated fields, got " << fields.size();
      throw std::runtime_error(msg.str());
    }
    if (fields[1].empty() || fields[2].empty()) {
      std::ostringstream msg;
      msg << "knowledge base " << path.string() << ":" << line_no
          << ": answer and provenance must be non-empty";
      throw std::runtime_error(msg.str());
    }
    std::string key = canonicalize(fields[0]);
    // Two lines that collide after canonicalization would silently shadow
    // each other; in a hand-edited file that is always a mistake.
    if (kb.entries().count(key) != 0) {
      std::ostringstream msg;
      msg << "knowledge base " << path.string() << ":" << line_no
          << ": duplicate canonical key: " << key;
      throw std::runtime_error(msg.str());
    }
    kb.insert(std::move(key), KbEntry{fields[1], fields[2]});
  }
  return kb;
}

std::optional<std::string> KnowledgeBase::lookup(
    std::string_view canonical_key) const {
  auto it = entries_.find(std::string(canonical_key));
  if (it == entries_.end()) return std::nullopt;
  return it->second.answer;
}

std::optional<KbEntry> KnowledgeBase::entry(std::string_view canonical_key) const {
  auto it = entries_.find(std::string(canonical_key));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void KnowledgeBase::insert(std::string canonical_key, KbEntry entry) {
  entries_[std::move(canonical_key)] = std::move(entry);
}

}  // namespace mfee
