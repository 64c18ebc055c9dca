// Copyright 2026 The LeCov Authors
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

// Word-level text mutation operators: synonym replacement, random
// deletion, random insertion, random swap and punctuation insertion.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lecov/error.hpp"
#include "lecov/rng.hpp"
#include "lecov/synonyms_en.hpp"

namespace lecov {

enum class MutationOp { SynonymReplace, RandomDelete, RandomInsert, RandomSwap, PunctuationInsert };

inline constexpr std::array<MutationOp, 5> kAllMutationOps = {
    MutationOp::SynonymReplace, MutationOp::RandomDelete, MutationOp::RandomInsert, MutationOp::RandomSwap,
    MutationOp::PunctuationInsert};

constexpr std::string_view mutation_op_name(MutationOp op) noexcept {
  switch (op) {
    case MutationOp::SynonymReplace: return "synonym_replace";
    case MutationOp::RandomDelete: return "random_delete";
    case MutationOp::RandomInsert: return "random_insert";
    case MutationOp::RandomSwap: return "random_swap";
    case MutationOp::PunctuationInsert: return "punctuation_insert";
  }
  return "?";
}

inline std::optional<MutationOp> parse_mutation_op(std::string_view name) noexcept {
  for (const MutationOp op : kAllMutationOps)
    if (mutation_op_name(op) == name) return op;
  return std::nullopt;
}

inline constexpr std::array<std::string_view, 6> kPunctuationMarks = {".", ",", "!", "?", ";", ":"};

/// Raised when an operator's precondition does not hold for the input.
class NoOpApplicable : public Error {
 public:
  NoOpApplicable(MutationOp op, const std::string& why)
      : Error(ErrorKind::NotApplicable, std::string(mutation_op_name(op)) + ": " + why), op_(op) {}

  MutationOp op() const noexcept { return op_; }

 private:
  MutationOp op_;
};

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

/// Whitespace tokenization; punctuation stays attached to its word.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

inline std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

/// Case-insensitive word -> synonyms table, loaded from `word: syn, syn`
/// lines. `#` starts a comment line. Multi-word synonyms and a word listed
/// as its own synonym are dropped.
class SynonymProvider {
 public:
  SynonymProvider() = default;

  static SynonymProvider parse(std::string_view text, std::string source_id) {
    SynonymProvider p;
    p.source_ = std::move(source_id);
    p.add_entries(text);
    return p;
  }

  static SynonymProvider embedded() { return parse(kEmbeddedSynonyms, "embedded:en"); }

  static SynonymProvider load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open synonym file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), "file:" + path);
  }

  /// Adds (or extends) entries; later lists append to earlier ones.
  void add_entries(std::string_view text) {
    std::size_t pos = 0;
    std::size_t lineno = 0;
    while (pos <= text.size()) {
      const std::size_t eol = std::min(text.find('\n', pos), text.size());
      std::string_view line = text.substr(pos, eol - pos);
      pos = eol + 1;
      ++lineno;
      line = trim(line);
      if (line.empty() || line.front() == '#') continue;
      const std::size_t colon = line.find(':');
      if (colon == std::string_view::npos)
        throw Error(ErrorKind::Syntax, "synonym line " + std::to_string(lineno) + " lacks ':'");
      const std::string word = to_lower(trim(line.substr(0, colon)));
      if (word.empty() || word.find_first_of(" \t") != std::string::npos)
        throw Error(ErrorKind::Syntax, "synonym line " + std::to_string(lineno) + " has an invalid head word");
      auto& list = table_[word];
      std::string_view rest = line.substr(colon + 1);
      while (!rest.empty()) {
        const std::size_t comma = rest.find(',');
        const std::string syn(trim(rest.substr(0, comma)));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (syn.empty() || syn.find_first_of(" \t") != std::string::npos) continue;
        if (to_lower(syn) == word) continue;
        if (std::find(list.begin(), list.end(), syn) == list.end()) list.push_back(syn);
      }
      if (list.empty()) table_.erase(word);
    }
  }

  const std::vector<std::string>* lookup(std::string_view word) const {
    const auto it = table_.find(to_lower(word));
    return it == table_.end() ? nullptr : &it->second;
  }

  std::size_t size() const noexcept { return table_.size(); }
  const std::string& source_id() const noexcept { return source_; }

 private:
  static std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  }

  std::map<std::string, std::vector<std::string>> table_;
  std::string source_;
};

namespace detail {

inline bool is_trailing_punct(char c) noexcept {
  return c == '.' || c == ',' || c == '!' || c == '?' || c == ';' || c == ':' || c == '"' || c == '\'' ||
         c == ')';
}

/// Splits "word!?" into ("word", "!?").
inline std::pair<std::string_view, std::string_view> split_trailing_punct(std::string_view token) {
  std::size_t end = token.size();
  while (end > 0 && is_trailing_punct(token[end - 1])) --end;
  return {token.substr(0, end), token.substr(end)};
}

}  // namespace detail

/// Applies one operator to `text`; all randomness comes from
/// SplitMix64(rng_seed). Throws NoOpApplicable when the input does not
/// satisfy the operator's precondition.
inline std::string mutate(std::string_view text, MutationOp op, std::uint64_t rng_seed,
                          const SynonymProvider& synonyms) {
  SplitMix64 rng(rng_seed);
  std::vector<std::string> tokens = tokenize(text);
  const std::size_t n = tokens.size();

  switch (op) {
    case MutationOp::SynonymReplace: {
      std::vector<std::size_t> eligible;
      for (std::size_t i = 0; i < n; ++i) {
        const auto [word, punct] = detail::split_trailing_punct(tokens[i]);
        if (!word.empty() && synonyms.lookup(word)) eligible.push_back(i);
      }
      if (eligible.empty()) throw NoOpApplicable(op, "no token has a known synonym");
      const std::size_t at = eligible[rng.uniform_index(eligible.size())];
      const auto [word, punct] = detail::split_trailing_punct(tokens[at]);
      const auto& choices = *synonyms.lookup(word);
      std::string replacement = choices[rng.uniform_index(choices.size())];
      if (std::isupper(static_cast<unsigned char>(word.front())) && !replacement.empty())
        replacement.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(replacement.front())));
      tokens[at] = replacement + std::string(punct);
      break;
    }
    case MutationOp::RandomDelete: {
      if (n < 2) throw NoOpApplicable(op, "needs at least two tokens");
      tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(rng.uniform_index(n)));
      break;
    }
    case MutationOp::RandomInsert: {
      if (n < 1) throw NoOpApplicable(op, "needs at least one token");
      std::string word = tokens[rng.uniform_index(n)];
      const std::size_t at = rng.uniform_index(n + 1);
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(at), std::move(word));
      break;
    }
    case MutationOp::RandomSwap: {
      if (n < 2) throw NoOpApplicable(op, "needs at least two tokens");
      const std::size_t i = rng.uniform_index(n);
      std::size_t j = rng.uniform_index(n - 1);
      if (j >= i) ++j;
      std::swap(tokens[i], tokens[j]);
      break;
    }
    case MutationOp::PunctuationInsert: {
      const std::string_view mark = kPunctuationMarks[rng.uniform_index(kPunctuationMarks.size())];
      const std::size_t at = rng.uniform_index(n + 1);
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(at), std::string(mark));
      break;
    }
  }
  return join_tokens(tokens);
}

/// Uniform choice among the five operators.
inline MutationOp pick_operator(std::uint64_t rng_seed) {
  SplitMix64 rng(rng_seed);
  return kAllMutationOps[rng.uniform_index(kAllMutationOps.size())];
}

struct AppliedMutation {
  MutationOp op;
  std::uint64_t seed;
};

struct MutationResult {
  std::string text;
  std::vector<AppliedMutation> applied;
  std::size_t rejected = 0;  // operators drawn but not applicable
};

/// Applies `count` operators in sequence. Operator draws come from stream
/// `seed`; an inapplicable draw is replaced by the next draw.
/// PunctuationInsert applies to any input, so this always terminates;
/// after 64 rejected draws it is used directly.
inline MutationResult mutate_random(std::string_view text, std::uint64_t seed, const SynonymProvider& synonyms,
                                    int count = 1) {
  MutationResult result{std::string(text), {}, 0};
  std::uint64_t draw = 0;
  for (int m = 0; m < count; ++m) {
    for (;;) {
      const std::uint64_t op_seed = derive_seed(seed, 2 * draw);
      const std::uint64_t mut_seed = derive_seed(seed, 2 * draw + 1);
      ++draw;
      const MutationOp op = result.rejected >= 64 ? MutationOp::PunctuationInsert : pick_operator(op_seed);
      try {
        result.text = mutate(result.text, op, mut_seed, synonyms);
        result.applied.push_back({op, mut_seed});
        break;
      } catch (const NoOpApplicable&) {
        ++result.rejected;
      }
    }
  }
  return result;
}

}  // namespace lecov
