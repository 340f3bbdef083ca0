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

#include "mfee/pattern_router.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mfee/text.hpp"

namespace mfee::routers {

using json = nlohmann::json;

std::optional<PredicateKind> predicate_kind_from_string(std::string_view name) {
  if (name == "substring") return PredicateKind::kSubstring;
  if (name == "prefix") return PredicateKind::kPrefix;
  if (name == "regex") return PredicateKind::kRegex;
  return std::nullopt;
}

bool FeaturePredicate::matches(std::string_view canonical) const {
  switch (kind) {
    case PredicateKind::kSubstring:
      return canonical.find(pattern) != std::string_view::npos;
    case PredicateKind::kPrefix:
      return canonical.substr(0, pattern.size()) == pattern;
    case PredicateKind::kRegex:
      return std::regex_search(canonical.begin(), canonical.end(), *compiled);
  }
  return false;
}

FeatureMap::FeatureMap(std::vector<FeaturePredicate> predicates)
    : predicates_(std::move(predicates)) {
  if (predicates_.empty()) {
    throw std::invalid_argument("feature map needs at least one predicate");
  }
  if (predicates_.size() > 32) {
    throw std::invalid_argument("feature map arity above 32 is unsupported");
  }
  for (FeaturePredicate& p : predicates_) {
    if (p.kind == PredicateKind::kRegex && !p.compiled) {
      p.compiled.emplace(p.pattern, std::regex::ECMAScript);
    }
  }
}

FeatureMap FeatureMap::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("feature map unreadable: " + path.string());
  }
  std::vector<FeaturePredicate> predicates;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::size_t tab1 = line.find('\t');
    const std::size_t tab2 =
        tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
    if (tab1 == std::string::npos || tab2 == std::string::npos) {
      std::ostringstream msg;
      msg << "feature map " << path.string() << ":" << line_no
          << ": expected name<TAB>kind<TAB>pattern";
      throw std::runtime_error(msg.str());
    }
    FeaturePredicate predicate;
    predicate.name = line.substr(0, tab1);
    const std::string kind_name = line.substr(tab1 + 1, tab2 - tab1 - 1);
    auto kind = predicate_kind_from_string(kind_name);
    if (!kind) {
      std::ostringstream msg;
      msg << "feature map " << path.string() << ":" << line_no
          << ": unknown predicate kind '" << kind_name << "'";
      throw std::runtime_error(msg.str());
    }
    predicate.kind = *kind;
    predicate.pattern = line.substr(tab2 + 1);
    predicates.push_back(std::move(predicate));
  }
  return FeatureMap(std::move(predicates));
}

std::uint32_t FeatureMap::extract(std::string_view canonical_prompt) const {
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < predicates_.size(); ++i) {
    if (predicates_[i].matches(canonical_prompt)) {
      bits |= (std::uint32_t{1} << i);
    }
  }
  return bits;
}

std::uint32_t extract_features(const Request& request, const FeatureMap& map) {
  return map.extract(canonicalize(request.prompt));
}

DecisionTable::DecisionTable(std::size_t arity, std::vector<Route> routes)
    : arity_(arity), routes_(std::move(routes)) {
  if (arity > 32) {
    throw std::invalid_argument("decision table arity above 32 is unsupported");
  }
  if (routes_.size() != (std::size_t{1} << arity)) {
    throw std::invalid_argument("decision table must cover all 2^k vectors");
  }
}

DecisionTable::DecisionTable(std::size_t arity, std::uint64_t table_id)
    : arity_(arity) {
  if (arity > 6) {
    // 2^(2^k) table ids stop fitting in 64 bits after k = 6.
    throw std::invalid_argument("table ids are only defined for arity <= 6");
  }
  const std::size_t vectors = std::size_t{1} << arity;
  routes_.reserve(vectors);
  for (std::size_t v = 0; v < vectors; ++v) {
    routes_.push_back(((table_id >> v) & 1) != 0 ? Route::kSkip : Route::kRender);
  }
}

Route DecisionTable::route(std::uint32_t feature_vector) const {
  if (feature_vector >= routes_.size()) {
    throw std::out_of_range("feature vector outside table domain");
  }
  return routes_[feature_vector];
}

Route route_pattern(const DecisionTable& table, const FeatureMap& map,
                    const Request& request) {
  if (table.arity() != map.arity()) {
    throw std::invalid_argument("decision table and feature map arity differ");
  }
  return table.route(extract_features(request, map));
}

std::vector<LabeledRequest> load_labeled_requests(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("labeled requests unreadable: " + path.string());
  }
  std::vector<LabeledRequest> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      std::ostringstream msg;
      msg << "labeled requests " << path.string() << ":" << line_no << ": "
          << e.what();
      throw std::runtime_error(msg.str());
    }
    LabeledRequest entry;
    const json& req = doc.at("request");
    entry.request.request_id = req.at("request_id").get<std::string>();
    entry.request.prompt = req.at("prompt").get<std::string>();
    entry.request.model = req.value("model", "default");
    entry.request.temperature = req.value("temperature", 0.0);
    entry.request.max_tokens = req.value("max_tokens", kDefaultMaxTokens);
    entry.request.seed = req.value("seed", kDefaultSeed);
    entry.s_label = doc.at("s_label").get<int>();
    if (entry.s_label != 0 && entry.s_label != 1) {
      throw std::runtime_error("s_label must be 0 or 1 at line " +
                               std::to_string(line_no));
    }
    auto category = category_from_string(doc.value("category", "mixed"));
    if (!category) {
      throw std::runtime_error("unknown category at line " +
                               std::to_string(line_no));
    }
    entry.category = *category;
    if (doc.contains("skip_response") && !doc["skip_response"].is_null()) {
      entry.skip_response = doc["skip_response"].get<std::string>();
    }
    if (entry.s_label == 1 && !entry.skip_response.has_value()) {
      throw std::runtime_error(
          "s_label=1 entries must carry skip_response, line " +
          std::to_string(line_no));
    }
    out.push_back(std::move(entry));
  }
  return out;
}

void save_labeled_requests(const std::filesystem::path& path,
                           const std::vector<LabeledRequest>& requests) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write labeled requests: " + path.string());
  }
  for (const LabeledRequest& entry : requests) {
    json doc;
    doc["request"] = {
        {"request_id", entry.request.request_id},
        {"prompt", entry.request.prompt},
        {"model", entry.request.model},
        {"temperature", entry.request.temperature},
        {"max_tokens", entry.request.max_tokens},
        {"seed", entry.request.seed},
    };
    doc["s_label"] = entry.s_label;
    doc["category"] = std::string(to_string(entry.category));
    if (entry.skip_response) {
      doc["skip_response"] = *entry.skip_response;
    }
    out << doc.dump() << '\n';
  }
}

std::vector<CollisionPair> find_collisions(
    const std::vector<LabeledRequest>& population, const FeatureMap& map) {
  std::map<std::uint32_t, std::pair<std::vector<std::size_t>,
                                    std::vector<std::size_t>>> by_vector;
  for (std::size_t i = 0; i < population.size(); ++i) {
    const std::uint32_t v = extract_features(population[i].request, map);
    if (population[i].s_label == 1) {
      by_vector[v].first.push_back(i);
    } else {
      by_vector[v].second.push_back(i);
    }
  }
  std::vector<CollisionPair> collisions;
  for (const auto& [vector, indices] : by_vector) {
    for (std::size_t s1 : indices.first) {
      for (std::size_t s0 : indices.second) {
        collisions.push_back(CollisionPair{s1, s0, vector});
      }
    }
  }
  return collisions;
}

ImpossibilityReport enumerate_frontier(
    const std::vector<CollisionPair>& collisions, const FeatureMap& map,
    const std::vector<LabeledRequest>& population) {
  if (map.arity() > kMaxEnumerableArity) {
    std::ostringstream msg;
    msg << "enumeration over arity " << map.arity()
        << " means " << (std::size_t{1} << map.arity())
        << "-entry tables; bound is " << kMaxEnumerableArity;
    throw EnumerationBoundError(msg.str());
  }
  if (population.empty()) {
    throw std::invalid_argument("population must be non-empty");
  }

  struct Member {
    std::uint32_t vector;
    bool skippable;
    bool collision_skippable;
  };
  std::set<std::size_t> collision_s1;
  for (const CollisionPair& pair : collisions) {
    collision_s1.insert(pair.skippable_index);
  }
  // With no collisions the hypothesis is unmet and the conjunction relaxes
  // to perfect correctness plus any non-trivial skip: the constrained set
  // becomes every skippable member. Separated fixtures then admit at least
  // one satisfying table, showing the premise is necessary.
  std::vector<Member> members;
  members.reserve(population.size());
  for (std::size_t i = 0; i < population.size(); ++i) {
    const bool skippable = population[i].s_label == 1;
    members.push_back(Member{extract_features(population[i].request, map),
                             skippable,
                             collisions.empty() ? skippable
                                                : collision_s1.count(i) > 0});
  }

  const std::size_t vectors = std::size_t{1} << map.arity();
  const std::uint64_t table_count = std::uint64_t{1} << vectors;

  ImpossibilityReport report;
  report.arity = map.arity();
  report.tables_enumerated = table_count;
  report.hypothesis_met = !collisions.empty();

  std::set<FrontierSample> frontier;
  for (std::uint64_t table_id = 0; table_id < table_count; ++table_id) {
    int skips = 0;
    int false_skips = 0;
    int collision_s1_skips = 0;
    for (const Member& m : members) {
      const bool skip = ((table_id >> m.vector) & 1) != 0;
      if (!skip) continue;
      ++skips;
      if (!m.skippable) ++false_skips;
      if (m.collision_skippable) ++collision_s1_skips;
    }
    const double avoidance =
        static_cast<double>(skips) / static_cast<double>(members.size());
    frontier.insert(FrontierSample{avoidance, false_skips});
    if (false_skips == 0) {
      report.zero_failure_max_avoidance =
          std::max(report.zero_failure_max_avoidance, avoidance);
      if (collision_s1_skips > 0) {
        ++report.satisfying_tables;
      }
    }
  }
  report.frontier.assign(frontier.begin(), frontier.end());
  return report;
}

}  // namespace mfee::routers
