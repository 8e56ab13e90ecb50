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

#ifndef BOOKPROSODY_ALIGN_MANIFEST_HPP_
#define BOOKPROSODY_ALIGN_MANIFEST_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "bookprosody/align/alignment.hpp"

namespace bookprosody::align {

/// One chapter of the corpus. Optional inputs are empty paths when absent.
struct ManifestEntry {
  std::string book_id;
  std::string chapter_id;
  std::filesystem::path text_path;
  std::filesystem::path align_path;
  std::filesystem::path audio_path;
  /// One bracketed constituency tree per sentence, one per line.
  std::filesystem::path trees_path;
  /// Externally computed sentence embeddings (segment_id + dims, TSV).
  std::filesystem::path embeddings_path;
  /// Quote attribution CSV (segment_id,character_id).
  std::filesystem::path attribution_path;
  /// Book-level character vectors (character_id, gender, dims, TSV).
  std::filesystem::path characters_path;
};

/// Reads a JSON array of {book_id, chapter_id, text_path, align_path,
/// audio_path} objects plus the optional keys trees_path, embeddings_path,
/// attribution_path and characters_path. Relative paths resolve against the
/// manifest's directory.
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);

/// Discovers `root/books/<book_id>/<chapter_id>.{txt,json,wav}` triples.
/// Optional siblings: `<chapter_id>.trees`, `<chapter_id>.emb.tsv`,
/// `<chapter_id>.attrib.csv` and a per-book `characters.tsv`. Entries are
/// sorted by (book_id, chapter_id).
std::vector<ManifestEntry> scan_dataset(const std::filesystem::path& root);

/// Reads the text and alignment files of `entry` and parses them.
AlignedChapter load_chapter(const ManifestEntry& entry);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace bookprosody::align

#endif  // BOOKPROSODY_ALIGN_MANIFEST_HPP_
