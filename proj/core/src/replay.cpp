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

#include "mfee/replay.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mfee/gate.hpp"
#include "mfee/solver.hpp"
#include "mfee/text.hpp"

namespace mfee::eval {

namespace {

// Replay sets must be reproducible across platforms. std::mt19937_64 has a
// standardized stream, but std::uniform_int_distribution does not, so all
// bounded draws go through plain modulo. The slight bias is irrelevant for
// workload synthesis.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t bound) {
    return static_cast<std::size_t>(engine_() % bound);
  }

  template <typename T>
  const T& pick(const std::vector<T>& pool) {
    if (pool.empty()) throw std::logic_error("pick from empty pool");
    return pool[below(pool.size())];
  }

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Content pools. Everything here is chosen to land in a specific pathway and
// the builder asserts that it actually does.
// ---------------------------------------------------------------------------

const std::vector<std::string>& novel_factual_templates() {
  static const std::vector<std::string> pool = {
      "What is the current inflation rate in %s?",
      "Who is the mayor of %s right now?",
      "What was announced at yesterday's press conference in %s?",
      "How many startups were founded in %s last year?",
      "What is the average rent in downtown %s?",
      "Who won the latest marathon in %s?",
      "What new exhibitions opened in %s this month?",
      "What is the weather forecast for %s this weekend?",
      "Which restaurants earned stars in %s this year?",
      "What is the population of %s as of this morning?",
      "How did the local team perform in %s last night?",
      "What are commuters saying about transit changes in %s?",
  };
  return pool;
}

const std::vector<std::string>& novel_factual_entities() {
  static const std::vector<std::string> pool = {
      "Lisbon",   "Porto",    "Oslo",     "Bergen",   "Helsinki", "Tampere",
      "Dublin",   "Cork",     "Ghent",    "Antwerp",  "Zagreb",   "Split",
      "Krakow",   "Gdansk",   "Brno",     "Ostrava",  "Graz",     "Linz",
      "Malmo",    "Uppsala",  "Aarhus",   "Odense",   "Tartu",    "Riga",
      "Vilnius",  "Kaunas",   "Ljubljana", "Maribor", "Valletta", "Reykjavik",
  };
  return pool;
}

const std::vector<std::string>& dialogue_pool() {
  static const std::vector<std::string> pool = {
      "How was your weekend, anything memorable?",
      "Tell me about the last book that surprised you.",
      "What would you cook for a rainy evening?",
      "If you could visit any decade, which one and why?",
      "What song has been stuck in your head lately?",
      "Do you prefer mornings or evenings, honestly?",
      "What small thing made you smile this week?",
      "Which season fits your personality best?",
      "What hobby would you pick up if time were free?",
      "Describe your ideal Sunday in three sentences.",
      "What skill do you wish you had learned earlier?",
      "Tell me about a place that feels like home.",
      "What food could you eat every day without tiring?",
      "Which historical figure would you share coffee with?",
      "What does a perfect workspace look like to you?",
      "If animals could talk, which would be rudest?",
      "What movie do you rewatch when you need comfort?",
      "Tell me about a teacher you still remember.",
      "What sound do you find most calming?",
      "Which city surprised you the most when visiting?",
      "What tradition would you like to start?",
      "If you had a boat, what would you name it?",
      "What game did you love as a child?",
      "Tell me about the best meal you ever had.",
      "What would your autobiography be titled?",
      "Which language would you learn next and why?",
      "What do you collect, intentionally or not?",
      "Tell me about a storm you remember vividly.",
      "What would you plant in a tiny garden?",
      "Which invention do you quietly appreciate daily?",
      "What keeps you curious these days?",
      "Tell me about a detour that turned out well.",
  };
  return pool;
}

const std::vector<std::string>& creative_templates() {
  static const std::vector<std::string> pool = {
      "Write a haiku about %s.",
      "Write a short poem about %s.",
      "Compose a limerick about %s.",
      "Generate a tagline for a company that sells %s.",
      "Imagine a world where %s sets the rhythm of life and describe one morning there.",
      "Create a riddle whose answer is %s.",
      "Continue this story: the lighthouse keeper found %s.",
      "Write a two-line toast inspired by %s.",
      "Compose a lullaby verse about %s.",
      "Generate three names for a boat inspired by %s.",
  };
  return pool;
}

const std::vector<std::string>& creative_topics() {
  static const std::vector<std::string> pool = {
      "rust on old bridges", "the last tram of the night",
      "a cat who collects keys", "moonlit greenhouses",
      "the smell of rain on asphalt", "a library that whispers",
      "paper boats in winter", "the first coffee of the morning",
      "forgotten train stations", "a violin with one string",
      "gardens on rooftops", "the sound of distant thunder",
      "lighthouse keepers", "a clockmaker's apprentice",
      "snow on power lines", "the city at four in the morning",
      "an umbrella that remembers storms", "wildflowers in sidewalk cracks",
      "the baker's midnight shift", "maps of imaginary islands",
      "a photograph left on a bus", "the quiet of fresh snow",
      "sailing past midnight", "the lamplighter's last route",
      "tea leaves and fortunes", "a postman in the mountains",
      "the glow of old radios", "fireflies in jars",
      "the harbor before dawn", "a painter who lost the color blue",
      "abandoned amusement parks", "the longest day of summer",
      "a whale seen from shore", "the typewriter in the attic",
      "barn owls at dusk", "the ferryman's coin",
      "autumn bonfires", "a song stuck in the walls",
      "the first day of frost", "shadows of tall ships",
  };
  return pool;
}

const std::vector<std::string>& explain_topics() {
  static const std::vector<std::string> pool = {
      "the sky is blue", "leaves change color in autumn",
      "ice floats on water", "the moon has phases", "cats purr",
      "bread rises", "thunder follows lightning", "stars twinkle",
      "onions make you cry", "soap cleans",
      "mirrors flip left and right", "airplanes leave contrails",
      "deserts get cold at night", "whales sing", "rainbows curve",
      "metal feels colder than wood", "popcorn pops", "honey never spoils",
      "the ocean is salty", "glaciers look blue", "rivers meander",
      "volcanoes erupt", "magnets attract iron", "echoes repeat",
      "fog forms in valleys", "dew appears at dawn", "bubbles are round",
      "candles flicker", "autumn air smells different", "birds migrate",
      "crickets chirp at night", "tides change", "snowflakes are symmetric",
      "yawns are contagious", "static shocks happen in winter",
      "old books smell sweet", "fireworks have colors",
      "wet roads look darker", "kettles whistle", "planets orbit in ellipses",
  };
  return pool;
}

const std::vector<std::string>& gibberish_fragments() {
  static const std::vector<std::string> pool = {
      ";;;;", "!!!!", "....", "????", "####", "%%%%", "@@@@", "&&&&",
      "____", "----", "++++", "====", "~~~~", "<<>>", "(((()", "*)*)",
      "4821", "0042", "9137", "77 77", "12 90 34", "|||", "^^^^", "$$$$",
  };
  return pool;
}

const std::vector<std::string>& case_phrases() {
  static const std::vector<std::string> pool = {
      "handle with care", "out of office",     "do not disturb",
      "back in five minutes", "fragile goods inside", "this side up",
      "wet paint",        "mind the gap",      "no parking here",
      "sold out tonight", "gone fishing",      "open all night",
  };
  return pool;
}

const std::vector<std::string>& unsolvable_pool() {
  static const std::vector<std::string> pool = {
      "What is 7/2?",
      "What is 10/3?",
      "Compute 2^10",
      "What is x + 4?",
      "What is 9223372036854775807 + 1?",
      "What is pi * 2?",
  };
  return pool;
}

const std::vector<std::string>& paraphrase_misses() {
  // Semantically redundant with curated knowledge, mechanically unreachable:
  // the canonical keys match nothing, so the conservative answer is RENDER.
  static const std::vector<std::string> pool = {
      "What's the capital city of France?",
      "Could you remind me how password resets work on this site?",
      "What were those three thermodynamics laws again?",
  };
  return pool;
}

std::string apply_format(const std::string& fmt, const std::string& arg) {
  const std::size_t pos = fmt.find("%s");
  if (pos == std::string::npos) {
    throw std::logic_error("template lacks %s slot: " + fmt);
  }
  return fmt.substr(0, pos) + arg + fmt.substr(pos + 2);
}

std::string capitalize_ascii(std::string text) {
  if (!text.empty()) {
    text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  }
  return text;
}

std::string upper_ascii(std::string text) {
  for (char& c : text) {
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return text;
}

// ---------------------------------------------------------------------------
// Builder
// ---------------------------------------------------------------------------

class ReplayBuilder {
 public:
  ReplayBuilder(std::uint64_t seed, const KnowledgeBase& kb,
                const SafetyPolicy& policy)
      : seed_(seed), rng_(seed), kb_(kb), policy_(policy) {
    for (const auto& [key, entry] : kb_.entries()) {
      if (entry.provenance.rfind("fact:", 0) == 0) {
        fact_keys_.push_back(key);
      } else if (entry.provenance == "canned") {
        canned_keys_.push_back(key);
      }
    }
    rng_.shuffle(fact_keys_);
    if (canned_keys_.empty()) {
      throw std::logic_error("knowledge base has no canned entries");
    }
  }

  std::vector<ReplayEntry> build(const CategoryMix& mix) {
    for (const auto& [category, count] : mix.entries()) {
      if (count <= 0) continue;
      switch (category) {
        case Category::kFactual: emit_factual(count); break;
        case Category::kConversational: emit_conversational(count); break;
        case Category::kCreative: emit_creative(count); break;
        case Category::kRedundant: emit_redundant(count); break;
        case Category::kTrivial: emit_trivial(count); break;
        case Category::kSafety: emit_safety(count); break;
        case Category::kMixed: emit_mixed(count); break;
      }
    }
    return std::move(entries_);
  }

 private:
  // ------------------------------------------------------------------ emit
  void emit_factual(int count) {
    const int kb_backed = count * 7 / 10;
    for (int i = 0; i < kb_backed; ++i) {
      push_kb_entry(Category::kFactual, next_fact_key());
    }
    std::vector<std::string> prompts = cross_product(
        novel_factual_templates(), novel_factual_entities(), count - kb_backed);
    for (std::string& prompt : prompts) {
      push_render_entry(Category::kFactual, std::move(prompt));
    }
  }

  void emit_conversational(int count) {
    const int noop = count * 45 / 100;
    const int acks = count * 40 / 100;
    const int dialogue = count - noop - acks;
    for (int i = 0; i < noop; ++i) {
      push_gibberish(Category::kConversational);
    }
    for (int i = 0; i < acks; ++i) {
      push_kb_entry(Category::kConversational, rng_.pick(canned_keys_));
    }
    std::vector<std::string> lines = dialogue_pool();
    rng_.shuffle(lines);
    for (int i = 0; i < dialogue; ++i) {
      std::string prompt = i < static_cast<int>(lines.size())
                               ? lines[static_cast<std::size_t>(i)]
                               : "What made you smile this week, take " +
                                     std::to_string(i) + "?";
      push_render_entry(Category::kConversational, std::move(prompt));
    }
  }

  void emit_creative(int count) {
    const int dup = count * 12 / 100;
    std::vector<std::string> prompts =
        cross_product(creative_templates(), creative_topics(), count - dup);
    std::vector<std::string> originals;
    for (std::string& prompt : prompts) {
      originals.push_back(prompt);
      push_render_entry(Category::kCreative, std::move(prompt));
    }
    for (int i = 0; i < dup; ++i) {
      push_cache_duplicate(Category::kCreative, rng_.pick(originals));
    }
  }

  void emit_redundant(int count) {
    const int paraphrase =
        std::min<int>(count * 2 / 100, static_cast<int>(paraphrase_misses().size()));
    const int variants = count - paraphrase;
    const int cache_variants = variants * 41 / 100;
    const int noop_variants = variants * 12 / 100;
    const int kb_variants = variants - cache_variants - noop_variants;

    if (rendered_bases_.empty() || kb_bases_.empty() || noop_bases_.empty()) {
      throw std::logic_error(
          "redundant entries need earlier factual/conversational/creative "
          "blocks in the mix");
    }
    for (int i = 0; i < cache_variants; ++i) {
      push_cache_duplicate(Category::kRedundant,
                           make_variant(rng_.pick(rendered_bases_)));
    }
    for (int i = 0; i < kb_variants; ++i) {
      const std::string& base = rng_.pick(kb_bases_);
      push_entry(Category::kRedundant, make_variant(base), 1,
                 ProofTag::kKbLookup);
    }
    for (int i = 0; i < noop_variants; ++i) {
      const std::string variant = make_variant(rng_.pick(noop_bases_));
      assert_malformed(variant);
      push_entry(Category::kRedundant, variant, 1, std::nullopt);
    }
    for (int i = 0; i < paraphrase; ++i) {
      push_render_entry(Category::kRedundant,
                        paraphrase_misses()[static_cast<std::size_t>(i)]);
    }
  }

  void emit_trivial(int count) {
    const int unsolvable =
        std::min<int>(count * 5 / 100, static_cast<int>(unsolvable_pool().size()));
    for (int i = 0; i < count - unsolvable; ++i) {
      push_solver_entry(Category::kTrivial);
    }
    for (int i = 0; i < unsolvable; ++i) {
      push_render_entry(Category::kTrivial,
                        unsolvable_pool()[static_cast<std::size_t>(i)]);
    }
  }

  void emit_safety(int count) {
    std::vector<const SafetyRule*> substring_rules;
    for (const SafetyRule& rule : policy_.rules()) {
      if (rule.kind == PatternKind::kSubstring) {
        substring_rules.push_back(&rule);
      }
    }
    if (substring_rules.empty()) {
      throw std::logic_error("safety policy has no substring rules to sample");
    }
    static const std::vector<std::string> prefixes = {
        "",           "Tell me ",          "Explain ",
        "I need to know ", "Please describe ", "Give me details on ",
    };
    static const std::vector<std::string> suffixes = {
        "", " quickly", " right now", " step by step", " for a project",
        " tonight",
    };
    for (int i = 0; i < count; ++i) {
      const SafetyRule& rule =
          *substring_rules[static_cast<std::size_t>(i) % substring_rules.size()];
      std::string prompt = rng_.pick(prefixes) + rule.pattern + rng_.pick(suffixes);
      prompt = capitalize_ascii(std::move(prompt));
      if (rng_.below(2) == 0) prompt += "?";
      const std::string key = canonicalize(prompt);
      if (policy_.evaluate(key).decision != SafetyDecision::kRefuse) {
        throw std::logic_error("safety prompt escaped the policy: " + prompt);
      }
      assert_well_formed(prompt);
      push_entry(Category::kSafety, prompt, 1, std::nullopt);
    }
  }

  void emit_mixed(int count) {
    const int renders = count * 35 / 100;
    const int kb = count * 20 / 100;
    const int solve = count * 15 / 100;
    const int dup = count * 10 / 100;
    const int noop = count - renders - kb - solve - dup;

    std::vector<std::string> topics = explain_topics();
    rng_.shuffle(topics);
    if (renders > static_cast<int>(topics.size())) {
      throw std::logic_error("mixed render pool exhausted");
    }
    std::vector<std::string> originals;
    for (int i = 0; i < renders; ++i) {
      std::string prompt = "Explain why " + topics[static_cast<std::size_t>(i)] + ".";
      originals.push_back(prompt);
      push_render_entry(Category::kMixed, std::move(prompt));
    }
    for (int i = 0; i < kb; ++i) {
      push_kb_entry(Category::kMixed, next_fact_key());
    }
    for (int i = 0; i < solve; ++i) {
      push_solver_entry(Category::kMixed);
    }
    for (int i = 0; i < noop; ++i) {
      push_gibberish(Category::kMixed);
    }
    for (int i = 0; i < dup; ++i) {
      push_cache_duplicate(Category::kMixed, rng_.pick(originals));
    }
  }

  // ------------------------------------------------------------- primitives
  Request make_request(std::string prompt) {
    char id[48];
    std::snprintf(id, sizeof(id), "replay-%llu-%05zu",
                  static_cast<unsigned long long>(seed_), sequence_++);
    Request request;
    request.request_id = id;
    request.prompt = std::move(prompt);
    request.model = "mfee-ref";
    request.temperature = 0.0;
    request.max_tokens = kDefaultMaxTokens;
    request.seed = kDefaultSeed;
    return request;
  }

  void push_entry(Category category, std::string prompt, int s_label,
                  std::optional<ProofTag> pathway) {
    ReplayEntry entry;
    entry.request = make_request(std::move(prompt));
    entry.category = category;
    entry.s_label = s_label;
    entry.expected_pathway = pathway;
    entries_.push_back(std::move(entry));
  }

  // A fresh RENDER-bound prompt. Uniqueness matters: a canonical repeat of a
  // rendered prompt becomes a cache hit on replay, which would silently turn
  // an expected RENDER into a DIRECT.
  void push_render_entry(Category category, std::string prompt) {
    const std::string key = canonicalize(prompt);
    assert_well_formed(prompt);
    if (kb_.lookup(key)) {
      throw std::logic_error("render-bound prompt collides with kb: " + prompt);
    }
    if (solve_canonical(key)) {
      throw std::logic_error("render-bound prompt is solvable: " + prompt);
    }
    if (policy_.evaluate(key).decision == SafetyDecision::kRefuse) {
      throw std::logic_error("render-bound prompt trips the policy: " + prompt);
    }
    if (!render_canonicals_.insert(key).second) {
      throw std::logic_error("render-bound prompt repeats canonically: " + prompt);
    }
    rendered_bases_.push_back(prompt);
    push_entry(category, std::move(prompt), 0, std::nullopt);
  }

  void push_kb_entry(Category category, const std::string& key) {
    std::string prompt = style_key(key);
    if (canonicalize(prompt) != key) {
      throw std::logic_error("styling changed the canonical key: " + prompt);
    }
    if (!kb_.lookup(key)) {
      throw std::logic_error("kb key missing at generation time: " + key);
    }
    kb_bases_.push_back(prompt);
    push_entry(category, std::move(prompt), 1, ProofTag::kKbLookup);
  }

  void push_gibberish(Category category) {
    std::string prompt;
    const std::size_t fragments = 1 + rng_.below(3);
    for (std::size_t i = 0; i < fragments; ++i) {
      if (i > 0) prompt += " ";
      prompt += rng_.pick(gibberish_fragments());
    }
    assert_malformed(prompt);
    noop_bases_.push_back(prompt);
    push_entry(category, std::move(prompt), 1, std::nullopt);
  }

  void push_cache_duplicate(Category category, std::string prompt) {
    // Base must already be a rendered entry; runtime caching of its output
    // is what makes this a hit.
    push_entry(category, std::move(prompt), 1, ProofTag::kCacheHit);
  }

  void push_solver_entry(Category category) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::string prompt = make_arithmetic_prompt();
      const std::string key = canonicalize(prompt);
      if (!solver_canonicals_.insert(key).second) continue;
      if (!deterministic_solve(prompt)) {
        throw std::logic_error("generated prompt is not solvable: " + prompt);
      }
      assert_well_formed(prompt);
      push_entry(category, std::move(prompt), 1, ProofTag::kDeterministicRule);
      return;
    }
    throw std::logic_error("could not generate a fresh solver prompt");
  }

  std::string make_arithmetic_prompt() {
    const std::size_t kind = rng_.below(9);
    auto num = [this](std::size_t lo, std::size_t hi) {
      return std::to_string(lo + rng_.below(hi - lo + 1));
    };
    switch (kind) {
      case 0: return "What is " + num(2, 999) + " + " + num(2, 999) + "?";
      case 1: return "What is " + num(2, 999) + " - " + num(2, 999) + "?";
      case 2: return "Compute " + num(2, 99) + " * " + num(2, 99);
      case 3:
        return "What is (" + num(2, 99) + " + " + num(2, 99) + ") * " +
               num(2, 19) + "?";
      case 4: {
        const std::size_t divisor = 2 + rng_.below(8);
        const std::size_t quotient = 2 + rng_.below(499);
        return "What is " + std::to_string(divisor * quotient) + " / " +
               std::to_string(divisor) + "?";
      }
      case 5: return "Convert " + num(1, 100000) + " to hex";
      case 6: return "Convert " + num(1, 100000) + " to binary";
      case 7: return "Uppercase '" + rng_.pick(case_phrases()) + "'";
      default:
        return "Lowercase '" + upper_ascii(rng_.pick(case_phrases())) + "'";
    }
  }

  // Surface rewrites that leave the canonical key unchanged.
  std::string make_variant(const std::string& base) {
    std::string variant;
    switch (rng_.below(5)) {
      case 0: variant = upper_ascii(base); break;
      case 1: variant = "  " + base + "  "; break;
      case 2: variant = base + "!!"; break;
      case 3: {
        variant = base;
        const std::size_t space = variant.find(' ');
        if (space != std::string::npos) variant.insert(space, " ");
        else variant += "  ";
        break;
      }
      default: {
        variant = base;
        if (!variant.empty() &&
            std::isalpha(static_cast<unsigned char>(variant[0]))) {
          const unsigned char c = static_cast<unsigned char>(variant[0]);
          variant[0] = static_cast<char>(std::isupper(c) ? std::tolower(c)
                                                         : std::toupper(c));
        }
        variant += ".";
        break;
      }
    }
    if (canonicalize(variant) != canonicalize(base)) {
      throw std::logic_error("variant changed the canonical key: " + variant);
    }
    return variant;
  }

  std::string style_key(const std::string& key) {
    switch (rng_.below(5)) {
      case 0: return capitalize_ascii(key) + "?";
      case 1: return key;
      case 2: return capitalize_ascii(key) + ".";
      case 3: return upper_ascii(key) + "!";
      default: return "  " + key + " ";
    }
  }

  std::string next_fact_key() {
    if (fact_keys_.empty()) {
      throw std::logic_error("knowledge base has no fact entries");
    }
    const std::string& key = fact_keys_[fact_cursor_ % fact_keys_.size()];
    ++fact_cursor_;
    return key;
  }

  std::vector<std::string> cross_product(const std::vector<std::string>& fmts,
                                         const std::vector<std::string>& args,
                                         int take) {
    std::vector<std::pair<std::size_t, std::size_t>> combos;
    combos.reserve(fmts.size() * args.size());
    for (std::size_t f = 0; f < fmts.size(); ++f) {
      for (std::size_t a = 0; a < args.size(); ++a) {
        combos.emplace_back(f, a);
      }
    }
    if (take > static_cast<int>(combos.size())) {
      throw std::logic_error("template pool exhausted");
    }
    rng_.shuffle(combos);
    std::vector<std::string> prompts;
    prompts.reserve(static_cast<std::size_t>(take));
    for (int i = 0; i < take; ++i) {
      const auto& [f, a] = combos[static_cast<std::size_t>(i)];
      prompts.push_back(apply_format(fmts[f], args[a]));
    }
    return prompts;
  }

  void assert_well_formed(const std::string& prompt) {
    if (structural_triage(prompt, triage_config_).malformed) {
      throw std::logic_error("prompt unexpectedly malformed: " + prompt);
    }
  }

  void assert_malformed(const std::string& prompt) {
    if (!structural_triage(prompt, triage_config_).malformed) {
      throw std::logic_error("prompt unexpectedly well formed: " + prompt);
    }
  }

  const std::uint64_t seed_;
  Rng rng_;
  const KnowledgeBase& kb_;
  const SafetyPolicy& policy_;
  GateConfig triage_config_;

  std::vector<ReplayEntry> entries_;
  std::size_t sequence_ = 0;

  std::vector<std::string> fact_keys_;
  std::size_t fact_cursor_ = 0;
  std::vector<std::string> canned_keys_;

  std::vector<std::string> rendered_bases_;
  std::vector<std::string> kb_bases_;
  std::vector<std::string> noop_bases_;
  std::set<std::string> render_canonicals_;
  std::set<std::string> solver_canonicals_;
};

}  // namespace

CategoryMix CategoryMix::default_mix() {
  CategoryMix mix;
  mix.entries_ = {
      {Category::kFactual, 200},  {Category::kConversational, 200},
      {Category::kCreative, 150}, {Category::kRedundant, 150},
      {Category::kTrivial, 100},  {Category::kSafety, 100},
      {Category::kMixed, 100},
  };
  return mix;
}

CategoryMix CategoryMix::parse(std::string_view text) {
  CategoryMix mix = default_mix();
  for (auto& [category, count] : mix.entries_) {
    (void)category;
    count = 0;
  }
  std::string item;
  std::istringstream stream{std::string(text)};
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("mix item needs category=count: " + item);
    }
    const auto category = category_from_string(item.substr(0, eq));
    if (!category) {
      throw std::invalid_argument("unknown category label: " +
                                  item.substr(0, eq));
    }
    int count = 0;
    try {
      count = std::stoi(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("mix count is not a number: " + item);
    }
    if (count < 0) {
      throw std::invalid_argument("mix count must be non-negative: " + item);
    }
    mix.set(*category, count);
  }
  return mix;
}

int CategoryMix::count(Category category) const {
  for (const auto& [c, n] : entries_) {
    if (c == category) return n;
  }
  return 0;
}

void CategoryMix::set(Category category, int count) {
  for (auto& [c, n] : entries_) {
    if (c == category) {
      n = count;
      return;
    }
  }
  entries_.emplace_back(category, count);
}

int CategoryMix::total() const {
  int total = 0;
  for (const auto& [c, n] : entries_) {
    (void)c;
    total += n;
  }
  return total;
}

std::vector<ReplayEntry> build_replay_set(const CategoryMix& mix,
                                          std::uint64_t seed,
                                          const KnowledgeBase& kb,
                                          const SafetyPolicy& policy) {
  ReplayBuilder builder(seed, kb, policy);
  return builder.build(mix);
}

}  // namespace mfee::eval
