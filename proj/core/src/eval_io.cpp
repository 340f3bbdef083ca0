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

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mfee/eval.hpp"

namespace mfee::eval {

namespace {

using nlohmann::json;

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open for reading: " + path.string());
  }
  return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  return out;
}

[[noreturn]] void fail_at(const std::filesystem::path& path, std::size_t line,
                          const std::string& what) {
  throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " +
                           what);
}

json parse_line(const std::filesystem::path& path, std::size_t line_no,
                const std::string& line) {
  json value = json::parse(line, nullptr, false);
  if (value.is_discarded() || !value.is_object()) {
    fail_at(path, line_no, "not a JSON object");
  }
  return value;
}

// Walks a JSONL file, invoking fn on each non-empty line.
template <typename Fn>
void for_each_line(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in = open_for_read(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    fn(line_no, line);
  }
}

json entry_to_json(const ReplayEntry& entry) {
  json object = {
      {"request_id", entry.request.request_id},
      {"prompt", entry.request.prompt},
      {"model", entry.request.model},
      {"temperature", entry.request.temperature},
      {"max_tokens", entry.request.max_tokens},
      {"seed", entry.request.seed},
      {"category", std::string(to_string(entry.category))},
      {"s_label", entry.s_label},
  };
  if (entry.expected_pathway) {
    object["expected_pathway"] = std::string(to_string(*entry.expected_pathway));
  }
  if (entry.timestamp) object["ts"] = *entry.timestamp;
  if (entry.user) object["user"] = *entry.user;
  if (entry.issue) object["issue"] = *entry.issue;
  return object;
}

ReplayEntry entry_from_json(const std::filesystem::path& path,
                            std::size_t line_no, const json& object) {
  ReplayEntry entry;
  if (!object.contains("request_id") || !object.contains("prompt")) {
    fail_at(path, line_no, "entry needs request_id and prompt");
  }
  entry.request.request_id = object.at("request_id").get<std::string>();
  entry.request.prompt = object.at("prompt").get<std::string>();
  entry.request.model = object.value("model", std::string("default"));
  entry.request.temperature = object.value("temperature", 0.0);
  entry.request.max_tokens = object.value("max_tokens", kDefaultMaxTokens);
  entry.request.seed = object.value("seed", kDefaultSeed);

  const std::string category = object.value("category", std::string("mixed"));
  const auto parsed = category_from_string(category);
  if (!parsed) fail_at(path, line_no, "unknown category: " + category);
  entry.category = *parsed;

  entry.s_label = object.value("s_label", 0);
  if (entry.s_label != 0 && entry.s_label != 1) {
    fail_at(path, line_no, "s_label must be 0 or 1");
  }
  if (object.contains("expected_pathway")) {
    const std::string pathway = object.at("expected_pathway").get<std::string>();
    const auto tag = proof_tag_from_string(pathway);
    if (!tag) fail_at(path, line_no, "unknown expected_pathway: " + pathway);
    entry.expected_pathway = *tag;
  }
  if (object.contains("ts")) entry.timestamp = object.at("ts").get<std::string>();
  if (object.contains("user")) entry.user = object.at("user").get<std::string>();
  if (object.contains("issue")) entry.issue = object.at("issue").get<std::string>();
  return entry;
}

json point_to_json(const routers::FrontierPoint& point) {
  return {
      {"router", point.router_name},
      {"population_size", point.population_size},
      {"skip_count", point.skip_count},
      {"avoidance", point.avoidance},
      {"correctness_failures", point.correctness_failures},
      {"decision_flip_rate", point.decision_flip_rate},
      {"brittleness", point.brittleness},
  };
}

json stats_to_json(const LatencyStats& stats) {
  return {
      {"count", stats.count}, {"p50_ms", stats.p50},   {"p95_ms", stats.p95},
      {"p99_ms", stats.p99},  {"max_ms", stats.max},   {"mean_ms", stats.mean},
  };
}

}  // namespace

void write_replay(const std::filesystem::path& path,
                  const std::vector<ReplayEntry>& entries) {
  std::ofstream out = open_for_write(path);
  for (const ReplayEntry& entry : entries) {
    out << entry_to_json(entry).dump() << '\n';
  }
}

std::vector<ReplayEntry> read_replay(const std::filesystem::path& path) {
  std::vector<ReplayEntry> entries;
  for_each_line(path, [&](std::size_t line_no, const std::string& line) {
    entries.push_back(
        entry_from_json(path, line_no, parse_line(path, line_no, line)));
  });
  return entries;
}

void write_baselines(const std::filesystem::path& path,
                     const std::vector<BaselineRecord>& records) {
  std::ofstream out = open_for_write(path);
  for (const BaselineRecord& record : records) {
    const json object = {
        {"request_id", record.request_id},
        {"prompt", record.prompt},
        {"temperature", record.temperature},
        {"seed", record.seed},
        {"baseline_output", record.baseline_output},
        {"timestamp", record.timestamp},
    };
    out << object.dump() << '\n';
  }
}

std::vector<BaselineRecord> read_baselines(const std::filesystem::path& path) {
  std::vector<BaselineRecord> records;
  for_each_line(path, [&](std::size_t line_no, const std::string& line) {
    const json object = parse_line(path, line_no, line);
    if (!object.contains("request_id") || !object.contains("baseline_output")) {
      fail_at(path, line_no, "baseline needs request_id and baseline_output");
    }
    BaselineRecord record;
    record.request_id = object.at("request_id").get<std::string>();
    record.prompt = object.value("prompt", std::string());
    record.temperature = object.value("temperature", 0.0);
    record.seed = object.value("seed", kDefaultSeed);
    record.baseline_output = object.at("baseline_output").get<std::string>();
    record.timestamp = object.value("timestamp", std::string());
    records.push_back(std::move(record));
  });
  return records;
}

void write_eval_records(const std::filesystem::path& path,
                        const std::vector<EvalRecord>& records) {
  std::ofstream out = open_for_write(path);
  for (const EvalRecord& record : records) {
    json object = {
        {"request_id", record.request_id},
        {"category", std::string(to_string(record.category))},
        {"decision", std::string(to_string(record.decision))},
        {"output", record.output},
        {"gate_latency_ms", record.gate_latency_ms},
        {"pathway_valid", record.pathway_valid},
    };
    if (record.exact_match) object["exact_match"] = *record.exact_match;
    if (record.proof_tag) {
      object["proof_tag"] = std::string(to_string(*record.proof_tag));
    }
    if (record.render_reason) {
      object["render_reason"] = std::string(to_string(*record.render_reason));
    }
    if (record.exec_latency_ms) {
      object["exec_latency_ms"] = *record.exec_latency_ms;
    }
    if (record.validation_note) {
      object["validation_note"] = *record.validation_note;
    }
    out << object.dump() << '\n';
  }
}

std::string report_to_json(const EvalReport& report) {
  json decisions = json::object();
  for (const auto& [decision, count] : report.decision_counts) {
    decisions[std::string(to_string(decision))] = count;
  }
  json categories = json::object();
  for (const auto& [category, breakdown] : report.categories) {
    categories[std::string(to_string(category))] = {
        {"total", breakdown.total},
        {"rendered", breakdown.rendered},
        {"render_rate", breakdown.render_rate()},
    };
  }
  json reasons = json::object();
  for (const auto& [reason, count] : report.render_reasons) {
    reasons[std::string(to_string(reason))] = count;
  }
  json tags = json::object();
  for (const auto& [tag, count] : report.proof_tags) {
    tags[std::string(to_string(tag))] = count;
  }
  json object = {
      {"total", report.total},
      {"decisions", decisions},
      {"execution_reduction", report.execution_reduction},
      {"exact_match_rate", report.exact_match_rate},
      {"render_mismatches", report.render_mismatches},
      {"pathway_violations", report.pathway_violations},
      {"categories", categories},
      {"render_reasons", reasons},
      {"proof_tags", tags},
      {"gate_latency", stats_to_json(report.gate_latency)},
      {"exec_latency", stats_to_json(report.exec_latency)},
  };
  if (report.frontier) {
    json points = json::array();
    for (const routers::FrontierPoint& point : report.frontier->points) {
      points.push_back(point_to_json(point));
    }
    object["frontier"] = points;
  }
  return object.dump(2);
}

std::string render_report_text(const EvalReport& report) {
  std::ostringstream out;
  char line[160];

  out << "replay summary\n";
  std::snprintf(line, sizeof(line), "  requests            %zu\n", report.total);
  out << line;
  for (const auto& [decision, count] : report.decision_counts) {
    std::snprintf(line, sizeof(line), "  %-19s %zu\n",
                  std::string(to_string(decision)).c_str(), count);
    out << line;
  }
  std::snprintf(line, sizeof(line), "  execution reduction %.4f\n",
                report.execution_reduction);
  out << line;
  std::snprintf(line, sizeof(line), "  exact match rate    %.4f\n",
                report.exact_match_rate);
  out << line;
  std::snprintf(line, sizeof(line), "  render mismatches   %zu\n",
                report.render_mismatches);
  out << line;
  std::snprintf(line, sizeof(line), "  pathway violations  %zu\n",
                report.pathway_violations);
  out << line;

  out << "\nper-category render rates\n";
  for (const auto& [category, breakdown] : report.categories) {
    std::snprintf(line, sizeof(line), "  %-15s %4zu requests  %4zu rendered  %6.2f%%\n",
                  std::string(to_string(category)).c_str(), breakdown.total,
                  breakdown.rendered, 100.0 * breakdown.render_rate());
    out << line;
  }

  out << "\nrender reasons\n";
  for (const auto& [reason, count] : report.render_reasons) {
    std::snprintf(line, sizeof(line), "  %-19s %zu\n",
                  std::string(to_string(reason)).c_str(), count);
    out << line;
  }
  out << "\nproof tags\n";
  for (const auto& [tag, count] : report.proof_tags) {
    std::snprintf(line, sizeof(line), "  %-19s %zu\n",
                  std::string(to_string(tag)).c_str(), count);
    out << line;
  }

  out << "\nlatency (ms)\n";
  std::snprintf(line, sizeof(line),
                "  gate     p50 %.3f  p95 %.3f  p99 %.3f  max %.3f\n",
                report.gate_latency.p50, report.gate_latency.p95,
                report.gate_latency.p99, report.gate_latency.max);
  out << line;
  std::snprintf(line, sizeof(line),
                "  backend  p50 %.1f  p95 %.1f  p99 %.1f  max %.1f (simulated)\n",
                report.exec_latency.p50, report.exec_latency.p95,
                report.exec_latency.p99, report.exec_latency.max);
  out << line;
  return out.str();
}

std::string comparison_to_json(const RouterComparison& comparison) {
  json points = json::array();
  for (const routers::FrontierPoint& point : comparison.points) {
    points.push_back(point_to_json(point));
  }
  return json{{"routers", points}}.dump(2);
}

std::string render_comparison_text(const RouterComparison& comparison) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-12s %9s %9s %10s %9s %12s\n", "router",
                "skips", "avoid%", "failures", "flip%", "brittleness");
  out << line;
  for (const routers::FrontierPoint& p : comparison.points) {
    std::snprintf(line, sizeof(line), "%-12s %5d/%-3d %8.2f%% %10d %8.2f%% %12s\n",
                  p.router_name.c_str(), p.skip_count, p.population_size,
                  100.0 * p.avoidance, p.correctness_failures,
                  100.0 * p.decision_flip_rate, p.brittleness.c_str());
    out << line;
  }
  return out.str();
}

std::string trace_report_to_json(const TraceReport& report) {
  json decisions = json::object();
  for (const auto& [decision, count] : report.decision_counts) {
    decisions[std::string(to_string(decision))] = count;
  }
  const json object = {
      {"entries", report.entries},
      {"baseline_calls", report.baseline_calls},
      {"gated_calls", report.gated_calls},
      {"avoided_calls", report.avoided_calls},
      {"avoidance", report.avoidance},
      {"regressions", report.regressions},
      {"decisions", decisions},
  };
  return object.dump(2);
}

std::filesystem::path make_run_directory(const std::filesystem::path& base,
                                         std::string_view label) {
  std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y%m%d-%H%M%S", &utc);

  std::filesystem::path dir = base / (std::string(label) + "-" + stamp);
  for (int suffix = 1; std::filesystem::exists(dir); ++suffix) {
    dir = base / (std::string(label) + "-" + stamp + "-" +
                  std::to_string(suffix));
  }
  std::filesystem::create_directories(dir);
  return dir;
}

std::string iso8601_utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return stamp;
}

}  // namespace mfee::eval
