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

struct KbEntry {
  std::string answer;
  std::string provenance;
};

// Curated exact-match store of verified answers, keyed by canonical prompt.
// Read-only during evaluation runs. File format is one entry per line:
//   canonical_key <TAB> answer <TAB> provenance
// Keys are canonicalized once more at load so hand-edited files cannot drift
// from the matching rule.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  virtual ~KnowledgeBase() = default;

  // Throws std::runtime_error (with file and line diagnostics) when the file
  // is unreadable or a line does not have exactly three tab-separated fields.
  static KnowledgeBase load(const std::filesystem::path& path);

  virtual std::optional<std::string> lookup(std::string_view canonical_key) const;

  std::optional<KbEntry> entry(std::string_view canonical_key) const;

  void insert(std::string canonical_key, KbEntry entry);

  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, KbEntry>& entries() const { return entries_; }

 private:
  std::map<std::string, KbEntry> entries_;
};

}  // namespace mfee
