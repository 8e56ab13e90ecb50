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

#include "bookprosody/segment/ptb.hpp"

#include <array>
#include <cctype>
#include <utility>

#include "bookprosody/error.hpp"

namespace bookprosody::segment {

namespace {

constexpr std::array<std::pair<std::string_view, std::string_view>, 6> kEscapes{{
    {"-LRB-", "("},
    {"-RRB-", ")"},
    {"-LCB-", "{"},
    {"-RCB-", "}"},
    {"-LSB-", "["},
    {"-RSB-", "]"},
}};

std::string unescape(std::string_view token) {
  for (const auto& [escaped, raw] : kEscapes) {
    if (token == escaped) return std::string(raw);
  }
  return std::string(token);
}

std::string escape(std::string_view token) {
  for (const auto& [escaped, raw] : kEscapes) {
    if (token == raw) return std::string(escaped);
  }
  return std::string(token);
}

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  ParseTree read_tree() {
    skip_space();
    expect_open();
    ParseTree node;
    skip_space();
    if (!at_end() && !is_delim(in_[pos_])) node.label = read_atom();

    skip_space();
    if (at_end()) throw ParseError(pos_, "unexpected end of input");
    if (in_[pos_] == ')') {
      throw ParseError(pos_, "empty constituent");
    }
    if (in_[pos_] != '(') {
      node.token = unescape(read_atom());
      skip_space();
      if (at_end()) throw ParseError(pos_, "unexpected end of input");
      if (in_[pos_] != ')') throw ParseError(pos_, "leaf with more than one token");
      ++pos_;
      return node;
    }
    while (true) {
      skip_space();
      if (at_end()) throw ParseError(pos_, "unexpected end of input");
      if (in_[pos_] == ')') {
        ++pos_;
        return node;
      }
      if (in_[pos_] != '(') throw ParseError(pos_, "token mixed with subtrees");
      node.children.push_back(read_tree());
    }
  }

  void expect_done() {
    skip_space();
    if (!at_end()) throw ParseError(pos_, "unexpected text after tree");
  }

 private:
  static bool is_delim(char c) {
    return c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c));
  }
  bool at_end() const { return pos_ >= in_.size(); }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(in_[pos_]))) ++pos_;
  }
  void expect_open() {
    if (at_end()) throw ParseError(pos_, "unexpected end of input");
    if (in_[pos_] != '(') throw ParseError(pos_, "expected '('");
    ++pos_;
  }
  std::string_view read_atom() {
    const std::size_t start = pos_;
    while (!at_end() && !is_delim(in_[pos_])) ++pos_;
    return in_.substr(start, pos_ - start);
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

void collect_leaves(const ParseTree& t, std::vector<std::string>& out) {
  if (t.is_leaf()) {
    out.push_back(*t.token);
    return;
  }
  for (const auto& c : t.children) collect_leaves(c, out);
}

void render(const ParseTree& t, std::string& out) {
  out += '(';
  out += t.label;
  if (t.is_leaf()) {
    out += ' ';
    out += escape(*t.token);
  }
  for (const auto& c : t.children) {
    out += ' ';
    render(c, out);
  }
  out += ')';
}

}  // namespace

ParseTree parse_ptb(std::string_view bracketed) {
  Reader reader(bracketed);
  ParseTree tree = reader.read_tree();
  reader.expect_done();
  return tree;
}

std::vector<std::string> leaves(const ParseTree& tree) {
  std::vector<std::string> out;
  collect_leaves(tree, out);
  return out;
}

std::string to_string(const ParseTree& tree) {
  std::string out;
  render(tree, out);
  return out;
}

bool is_sentence_label(std::string_view label) {
  if (label.empty() || label.front() != 'S') return false;
  return label.size() == 1 || label[1] == '-' || label[1] == '=';
}

}  // namespace bookprosody::segment
