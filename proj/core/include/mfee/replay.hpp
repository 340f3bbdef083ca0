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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mfee/knowledge_base.hpp"
#include "mfee/safety.hpp"
#include "mfee/types.hpp"

namespace mfee::eval {

// One replay-set member. s_label records whether a correct bounded response
// exists without execution; expected_pathway names the resolver that should
// produce it when the answer is a DIRECT.
struct ReplayEntry {
  Request request;
  Category category = Category::kMixed;
  int s_label = 0;
  std::optional<ProofTag> expected_pathway;

  // Present only in temporal traces.
  std::optional<std::string> timestamp;
  std::optional<std::string> user;
  std::optional<std::string> issue;
};

// Requests per category. Defaults to the synthetic workload mix used
// throughout the evaluation: factual 200, conversational 200, creative 150,
// redundant 150, trivial 100, safety 100, mixed 100.
class CategoryMix {
 public:
  static CategoryMix default_mix();

  // Parses "factual=200,trivial=50". Unknown labels and negative counts
  // throw std::invalid_argument.
  static CategoryMix parse(std::string_view text);

  int count(Category category) const;
  void set(Category category, int count);
  int total() const;
  const std::vector<std::pair<Category, int>>& entries() const {
    return entries_;
  }

 private:
  // Kept in emission order: the replay set lists categories in this order,
  // which guarantees redundant variants appear after their base entries.
  std::vector<std::pair<Category, int>> entries_;
};

// Deterministically builds a replay set: equal seeds give byte-identical
// sets. The generator validates its own output against the resolvers it
// targets (solver solves what it labels solvable, the policy refuses what
// it labels safety, triage rejects what it labels malformed) and throws
// std::logic_error on any miss, so a drifted fixture fails fast rather
// than corrupting measurements downstream.
std::vector<ReplayEntry> build_replay_set(const CategoryMix& mix,
                                          std::uint64_t seed,
                                          const KnowledgeBase& kb,
                                          const SafetyPolicy& policy);

void write_replay(const std::filesystem::path& path,
                  const std::vector<ReplayEntry>& entries);
std::vector<ReplayEntry> read_replay(const std::filesystem::path& path);

}  // namespace mfee::eval
