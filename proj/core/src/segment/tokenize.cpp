// Copyright (c) 2026 The bookprosody Authors
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

#include "bookprosody/segment/tokenize.hpp"

#include <array>
#include <cctype>
#include <optional>

#include "bookprosody/error.hpp"

namespace bookprosody::segment {

namespace {

struct Special {
  std::string_view bytes;
  TokenKind kind;
};

// Multi-byte punctuation recognized as standalone tokens.
constexpr std::array<Special, 7> kSpecials{{
    {"\xE2\x80\x9C", TokenKind::kQuote},  // “
    {"\xE2\x80\x9D", TokenKind::kQuote},  // ”
    {"\xE2\x80\x98", TokenKind::kPunct},  // ‘
    {"\xE2\x80\x99", TokenKind::kPunct},  // ’
    {"\xE2\x80\x94", TokenKind::kPunct},  // em dash
    {"\xE2\x80\x93", TokenKind::kPunct},  // –
    {"\xE2\x80\xA6", TokenKind::kPunct},  // …
}};

constexpr std::string_view kRightSingleQuote = "\xE2\x80\x99";
constexpr std::array<std::string_view, 5> kAbbreviations{"Mr", "Mrs", "Dr", "St", "Ms"};

std::optional<Special> special_at(std::string_view text, std::size_t pos) {
  for (const Special& s : kSpecials) {
    if (text.substr(pos, s.bytes.size()) == s.bytes) return s;
  }
  return std::nullopt;
}

bool is_space_at(std::string_view text, std::size_t pos, std::size_t* len) {
  const auto c = static_cast<unsigned char>(text[pos]);
  if (std::isspace(c)) {
    *len = 1;
    return true;
  }
  if (text.substr(pos, 2) == "\xC2\xA0") {  // no-break space
    *len = 2;
    return true;
  }
  return false;
}

std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

// Length of the word character at `pos`, or 0.
std::size_t word_char_at(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) return 0;
  const auto c = static_cast<unsigned char>(text[pos]);
  if (c < 0x80) return std::isalnum(c) ? 1 : 0;
  if (special_at(text, pos)) return 0;
  std::size_t ignored = 0;
  if (is_space_at(text, pos, &ignored)) return 0;
  return std::min(utf8_length(c), text.size() - pos);
}

bool is_terminal(const Token& t) {
  return t.text == "." || t.text == "!" || t.text == "?";
}

bool is_closer(const Token& t) {
  return t.kind == TokenKind::kQuote || t.text == ")" || t.text == "]" ||
         t.text == "'" || t.text == kRightSingleQuote;
}

bool starts_upper(const Token& t) {
  return !t.text.empty() && std::isupper(static_cast<unsigned char>(t.text.front()));
}

bool has_blank_line(std::string_view gap) {
  const auto first = gap.find('\n');
  return first != std::string_view::npos &&
         gap.find('\n', first + 1) != std::string_view::npos;
}

TokenKind classify(std::string_view s) {
  if (s == "\"") return TokenKind::kQuote;
  if (const auto sp = special_at(s, 0); sp && sp->bytes.size() == s.size()) {
    return sp->kind;
  }
  return word_char_at(s, 0) > 0 ? TokenKind::kWord : TokenKind::kPunct;
}

// Bytes of `text` at `pos` that spell `leaf`, or 0.
std::size_t match_leaf_at(std::string_view text, std::size_t pos, std::string_view leaf) {
  if (text.substr(pos, leaf.size()) == leaf) return leaf.size();
  auto first_of = [&](std::initializer_list<std::string_view> options) -> std::size_t {
    for (std::string_view o : options) {
      if (text.substr(pos, o.size()) == o) return o.size();
    }
    return 0;
  };
  if (leaf == "``" || leaf == "''" || leaf == "\"") {
    return first_of({"\"", "\xE2\x80\x9C", "\xE2\x80\x9D"});
  }
  if (leaf == "--") return first_of({"\xE2\x80\x94", "\xE2\x80\x93"});
  if (leaf == "...") return first_of({"\xE2\x80\xA6"});
  if (leaf == "`" || leaf == "'") return first_of({"\xE2\x80\x98", "\xE2\x80\x99", "'"});
  return 0;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t len = 0;
    if (is_space_at(text, pos, &len)) {
      pos += len;
      continue;
    }
    const std::size_t start = pos;
    if (word_char_at(text, pos) > 0) {
      while (pos < text.size()) {
        if (const std::size_t w = word_char_at(text, pos)) {
          pos += w;
          continue;
        }
        // Joiners survive only between two word characters.
        std::size_t joiner = 0;
        if (text[pos] == '\'' || text[pos] == '-') {
          joiner = 1;
        } else if (text.substr(pos, 3) == kRightSingleQuote) {
          joiner = 3;
        } else if (text[pos] == '.' && std::isdigit(static_cast<unsigned char>(text[pos - 1]))) {
          joiner = 1;
          if (pos + 1 >= text.size() ||
              !std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
            joiner = 0;
          }
        }
        if (joiner > 0 && word_char_at(text, pos + joiner) > 0) {
          pos += joiner;
          continue;
        }
        break;
      }
      std::string_view word = text.substr(start, pos - start);
      if (pos < text.size() && text[pos] == '.') {
        for (std::string_view abbr : kAbbreviations) {
          if (word == abbr) {
            ++pos;
            break;
          }
        }
      }
      tokens.push_back({std::string(text.substr(start, pos - start)), start, pos,
                        TokenKind::kWord});
      continue;
    }
    if (const auto sp = special_at(text, pos)) {
      pos += sp->bytes.size();
      tokens.push_back({std::string(sp->bytes), start, pos, sp->kind});
      continue;
    }
    if (text.substr(pos, 3) == "...") {
      pos += 3;
    } else if (text.substr(pos, 2) == "--") {
      pos += 2;
    } else {
      pos += utf8_length(static_cast<unsigned char>(text[pos]));
      pos = std::min(pos, text.size());
    }
    const std::string_view piece = text.substr(start, pos - start);
    tokens.push_back({std::string(piece), start, pos,
                      piece == "\"" ? TokenKind::kQuote : TokenKind::kPunct});
  }
  return tokens;
}

std::vector<Sentence> split_sentences(std::string_view text) {
  const std::vector<Token> tokens = tokenize(text);
  std::vector<Sentence> sentences;
  std::size_t first = 0;
  auto close = [&](std::size_t last) {
    Sentence s;
    s.range = {tokens[first].begin, tokens[last].end};
    s.tokens.assign(tokens.begin() + static_cast<std::ptrdiff_t>(first),
                    tokens.begin() + static_cast<std::ptrdiff_t>(last) + 1);
    sentences.push_back(std::move(s));
    first = last + 1;
  };

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i + 1 == tokens.size()) {
      close(i);
      break;
    }
    std::size_t last = i;
    bool boundary = false;
    if (is_terminal(tokens[i])) {
      while (last + 1 < tokens.size() && tokens[last + 1].begin == tokens[last].end &&
             (is_terminal(tokens[last + 1]) || is_closer(tokens[last + 1]))) {
        ++last;
      }
      if (last + 1 == tokens.size()) {
        close(last);
        break;
      }
      const Token& next = tokens[last + 1];
      boundary = next.begin > tokens[last].end &&
                 (starts_upper(next) || next.kind == TokenKind::kQuote);
    }
    if (!boundary) {
      last = i;
      const auto gap = text.substr(tokens[i].end, tokens[i + 1].begin - tokens[i].end);
      boundary = has_blank_line(gap);
    }
    if (boundary) {
      close(last);
    }
    i = last;
  }
  return sentences;
}

bool token_matches_leaf(std::string_view token, std::string_view leaf) {
  if (token == leaf) return true;
  const std::size_t n = match_leaf_at(token, 0, leaf);
  return n > 0 && n == token.size();
}

std::vector<Sentence> sentences_from_trees(std::string_view text,
                                           const std::vector<ParseTree>& trees) {
  std::vector<Sentence> sentences;
  std::size_t pos = 0;
  for (std::size_t t = 0; t < trees.size(); ++t) {
    Sentence sentence;
    for (const std::string& leaf : leaves(trees[t])) {
      std::size_t len = 0;
      while (pos < text.size() && is_space_at(text, pos, &len)) pos += len;
      const std::size_t n = match_leaf_at(text, pos, leaf);
      if (n == 0) {
        throw TokenMismatch("tree " + std::to_string(t) + ": leaf '" + leaf +
                            "' does not match text at offset " + std::to_string(pos));
      }
      const std::string_view piece = text.substr(pos, n);
      sentence.tokens.push_back({std::string(piece), pos, pos + n, classify(piece)});
      pos += n;
    }
    if (sentence.tokens.empty()) continue;
    sentence.range = {sentence.tokens.front().begin, sentence.tokens.back().end};
    sentences.push_back(std::move(sentence));
  }
  return sentences;
}

}  // namespace bookprosody::segment
