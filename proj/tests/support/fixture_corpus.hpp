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

#ifndef BOOKPROSODY_TESTS_FIXTURE_CORPUS_HPP_
#define BOOKPROSODY_TESTS_FIXTURE_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace bookprosody::testing {

/// Directory under the system temp path, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& prefix = "bookprosody");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

struct FixtureOptions {
  int books = 4;
  int chapters_per_book = 2;
  int sentences_per_chapter = 10;
  int sample_rate = 16000;
  std::uint64_t seed = 1;
  /// Share of words the aligner reports as not found.
  double not_found_rate = 0.03;
  bool with_trees = false;
  bool with_embeddings = true;
  int embedding_dims = 6;
  bool with_characters = true;
  int character_dims = 12;
};

struct FixtureCorpus {
  std::filesystem::path root;
  std::vector<std::string> book_ids;
  std::vector<std::string> chapter_ids;  // per book
  int segments = 0;
  int quote_segments = 0;
};

/// Writes `root/books/<book>/<chapter>.{txt,json,wav}` with narration and
/// dialogue, optional trees, sentence embeddings, quote attributions and a
/// per-book characters table. Female speakers are voiced higher and male
/// speakers louder than narration.
FixtureCorpus write_fixture_corpus(const std::filesystem::path& root,
                                   const FixtureOptions& options = {});

}  // namespace bookprosody::testing

#endif  // BOOKPROSODY_TESTS_FIXTURE_CORPUS_HPP_
