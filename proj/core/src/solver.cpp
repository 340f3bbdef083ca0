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

#include "mfee/solver.hpp"

#include <cctype>
#include <cstdint>
#include <vector>

#include "mfee/text.hpp"

namespace mfee {

namespace {

// ---------------------------------------------------------------------------
// Arithmetic: tokenizer + recursive descent over checked int64.
// ---------------------------------------------------------------------------

struct Token {
  enum class Kind { kNumber, kPlus, kMinus, kTimes, kDivide, kLParen, kRParen };
  Kind kind;
  std::int64_t value = 0;
};

// Maps the Unicode multiplication sign (U+00D7) and minus sign (U+2212) to
// their ASCII counterparts; any other non-ASCII byte rejects the expression.
std::optional<std::vector<Token>> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (c == ' ') {
      ++i;
      continue;
    }
    if (c == 0xC3 && i + 1 < text.size() &&
        static_cast<unsigned char>(text[i + 1]) == 0x97) {
      tokens.push_back({Token::Kind::kTimes});
      i += 2;
      continue;
    }
    if (c == 0xE2 && i + 2 < text.size() &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      tokens.push_back({Token::Kind::kMinus});
      i += 3;
      continue;
    }
    if (std::isdigit(c)) {
      std::int64_t value = 0;
      while (i < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[i]))) {
        const std::int64_t digit = text[i] - '0';
        if (__builtin_mul_overflow(value, 10, &value) ||
            __builtin_add_overflow(value, digit, &value)) {
          return std::nullopt;
        }
        ++i;
      }
      tokens.push_back({Token::Kind::kNumber, value});
      continue;
    }
    switch (c) {
      case '+': tokens.push_back({Token::Kind::kPlus}); break;
      case '-': tokens.push_back({Token::Kind::kMinus}); break;
      case '*': tokens.push_back({Token::Kind::kTimes}); break;
      case '/': tokens.push_back({Token::Kind::kDivide}); break;
      case '(': tokens.push_back({Token::Kind::kLParen}); break;
      case ')': tokens.push_back({Token::Kind::kRParen}); break;
      default: return std::nullopt;
    }
    ++i;
  }
  return tokens;
}

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {}

  std::optional<std::int64_t> run() {
    auto value = parse_expr();
    if (!value || pos_ != tokens_.size()) return std::nullopt;
    // A lone literal is a lookup, not a computation; leave it to other
    // resolvers instead of parroting the number back.
    if (operators_ == 0) return std::nullopt;
    return value;
  }

 private:
  bool at(Token::Kind kind) const {
    return pos_ < tokens_.size() && tokens_[pos_].kind == kind;
  }

  std::optional<std::int64_t> parse_expr() {
    auto left = parse_term();
    if (!left) return std::nullopt;
    while (at(Token::Kind::kPlus) || at(Token::Kind::kMinus)) {
      const bool add = tokens_[pos_].kind == Token::Kind::kPlus;
      ++pos_;
      ++operators_;
      auto right = parse_term();
      if (!right) return std::nullopt;
      std::int64_t out;
      const bool overflow = add ? __builtin_add_overflow(*left, *right, &out)
                                : __builtin_sub_overflow(*left, *right, &out);
      if (overflow) return std::nullopt;
      left = out;
    }
    return left;
  }

  std::optional<std::int64_t> parse_term() {
    auto left = parse_factor();
    if (!left) return std::nullopt;
    while (at(Token::Kind::kTimes) || at(Token::Kind::kDivide)) {
      const bool multiply = tokens_[pos_].kind == Token::Kind::kTimes;
      ++pos_;
      ++operators_;
      auto right = parse_factor();
      if (!right) return std::nullopt;
      if (multiply) {
        std::int64_t out;
        if (__builtin_mul_overflow(*left, *right, &out)) return std::nullopt;
        left = out;
      } else {
        // Exact division only: anything with a remainder has no single
        // canonical integer answer in this grammar.
        if (*right == 0) return std::nullopt;
        if (*left == INT64_MIN && *right == -1) return std::nullopt;
        if (*left % *right != 0) return std::nullopt;
        left = *left / *right;
      }
    }
    return left;
  }

  std::optional<std::int64_t> parse_factor() {
    if (at(Token::Kind::kMinus)) {
      ++pos_;
      auto inner = parse_factor();
      if (!inner) return std::nullopt;
      std::int64_t out;
      if (__builtin_sub_overflow(static_cast<std::int64_t>(0), *inner, &out)) {
        return std::nullopt;
      }
      return out;
    }
    if (at(Token::Kind::kLParen)) {
      ++pos_;
      auto inner = parse_expr();
      if (!inner) return std::nullopt;
      if (!at(Token::Kind::kRParen)) return std::nullopt;
      ++pos_;
      return inner;
    }
    if (at(Token::Kind::kNumber)) {
      return tokens_[pos_++].value;
    }
    return std::nullopt;
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
  int operators_ = 0;
};

std::optional<std::string> solve_arithmetic(std::string_view expr) {
  auto tokens = tokenize(expr);
  if (!tokens || tokens->empty()) return std::nullopt;
  Parser parser(*tokens);
  auto value = parser.run();
  if (!value) return std::nullopt;
  return std::to_string(*value);
}

// ---------------------------------------------------------------------------
// Base conversion: "convert <int> to <base>".
// ---------------------------------------------------------------------------

std::optional<std::int64_t> parse_integer_literal(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text[0] == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'b')) {
    base = text[1] == 'x' ? 16 : 2;
    text.remove_prefix(2);
  }
  if (text.empty()) return std::nullopt;
  std::int64_t value = 0;
  for (char ch : text) {
    int digit;
    if (ch >= '0' && ch <= '9') {
      digit = ch - '0';
    } else if (ch >= 'a' && ch <= 'f') {
      digit = ch - 'a' + 10;
    } else {
      return std::nullopt;
    }
    if (digit >= base) return std::nullopt;
    if (__builtin_mul_overflow(value, base, &value) ||
        __builtin_add_overflow(value, digit, &value)) {
      return std::nullopt;
    }
  }
  return negative ? -value : value;
}

std::string format_base(std::int64_t value, int base) {
  const bool negative = value < 0;
  // Magnitude in unsigned space so INT64_MIN would not overflow; the parser
  // cannot produce it, but the formatter should not care.
  std::uint64_t magnitude =
      negative ? ~static_cast<std::uint64_t>(value) + 1
               : static_cast<std::uint64_t>(value);
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string digits;
  do {
    digits.push_back(kDigits[magnitude % static_cast<std::uint64_t>(base)]);
    magnitude /= static_cast<std::uint64_t>(base);
  } while (magnitude != 0);
  std::string out;
  if (negative) out.push_back('-');
  if (base == 16) out += "0x";
  if (base == 2) out += "0b";
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) out.push_back(*it);
  return out;
}

std::optional<std::string> solve_conversion(std::string_view tail) {
  const std::size_t to_pos = tail.find(" to ");
  if (to_pos == std::string_view::npos) return std::nullopt;
  // Reject a second " to " rather than guess which one binds.
  if (tail.find(" to ", to_pos + 1) != std::string_view::npos) {
    return std::nullopt;
  }
  const std::string_view literal = tail.substr(0, to_pos);
  const std::string_view base_name = tail.substr(to_pos + 4);
  int base;
  if (base_name == "hex" || base_name == "hexadecimal") {
    base = 16;
  } else if (base_name == "binary" || base_name == "bin") {
    base = 2;
  } else if (base_name == "decimal" || base_name == "dec") {
    base = 10;
  } else {
    return std::nullopt;
  }
  auto value = parse_integer_literal(literal);
  if (!value) return std::nullopt;
  return format_base(*value, base);
}

// ---------------------------------------------------------------------------
// Case conversion: "uppercase '<text>'" / "lowercase '<text>'".
// ---------------------------------------------------------------------------

std::optional<std::string> solve_case(std::string_view tail, bool upper) {
  if (tail.size() < 2) return std::nullopt;
  const char quote = tail.front();
  if (quote != '\'' && quote != '"') return std::nullopt;
  if (tail.back() != quote) return std::nullopt;
  const std::string_view inner = tail.substr(1, tail.size() - 2);
  if (inner.find(quote) != std::string_view::npos) return std::nullopt;
  return upper ? to_upper(inner) : to_lower(inner);
}

bool consume_prefix(std::string_view& text, std::string_view prefix) {
  if (text.substr(0, prefix.size()) != prefix) return false;
  text.remove_prefix(prefix.size());
  return true;
}

}  // namespace

std::optional<std::string> solve_canonical(std::string_view canonical_key) {
  std::string_view key = canonical_key;
  if (consume_prefix(key, "convert ")) {
    return solve_conversion(key);
  }
  if (consume_prefix(key, "uppercase ")) {
    return solve_case(key, /*upper=*/true);
  }
  if (consume_prefix(key, "lowercase ")) {
    return solve_case(key, /*upper=*/false);
  }
  if (consume_prefix(key, "what is ") || consume_prefix(key, "compute ")) {
    return solve_arithmetic(key);
  }
  // "<expr> =": canonicalization already stripped the trailing "?" from the
  // common "<expr> = ?" phrasing.
  if (!key.empty() && key.back() == '=') {
    key.remove_suffix(1);
    return solve_arithmetic(key);
  }
  return std::nullopt;
}

std::optional<std::string> deterministic_solve(std::string_view prompt) {
  return solve_canonical(canonicalize(prompt));
}

}  // namespace mfee
