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

#include "bookprosody/align/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <tuple>

#include <nlohmann/json.hpp>

#include "bookprosody/error.hpp"

namespace bookprosody::align {

namespace fs = std::filesystem;

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  if (p.empty()) return {};
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

fs::path if_exists(const fs::path& p) {
  return fs::exists(p) ? p : fs::path{};
}

}  // namespace

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

std::vector<ManifestEntry> load_manifest(const fs::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("manifest " + path.string() + " is not valid JSON: " + e.what());
  }
  if (!doc.is_array()) throw SchemaError("manifest must be a JSON array");

  const fs::path base = path.parent_path();
  std::vector<ManifestEntry> entries;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& j = doc[i];
    try {
      ManifestEntry e;
      e.book_id = j.at("book_id").get<std::string>();
      e.chapter_id = j.at("chapter_id").get<std::string>();
      e.text_path = resolve(base, j.at("text_path").get<std::string>());
      e.align_path = resolve(base, j.at("align_path").get<std::string>());
      e.audio_path = resolve(base, j.at("audio_path").get<std::string>());
      e.trees_path = resolve(base, j.value("trees_path", std::string{}));
      e.embeddings_path = resolve(base, j.value("embeddings_path", std::string{}));
      e.attribution_path = resolve(base, j.value("attribution_path", std::string{}));
      e.characters_path = resolve(base, j.value("characters_path", std::string{}));
      entries.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw SchemaError("manifest entry " + std::to_string(i) + ": " + ex.what());
    }
  }
  return entries;
}

std::vector<ManifestEntry> scan_dataset(const fs::path& root) {
  const fs::path books = root / "books";
  if (!fs::is_directory(books)) {
    throw IoError("dataset root " + root.string() + " has no books/ directory");
  }
  std::vector<ManifestEntry> entries;
  for (const auto& book_dir : fs::directory_iterator(books)) {
    if (!book_dir.is_directory()) continue;
    const std::string book_id = book_dir.path().filename().string();
    const fs::path characters = if_exists(book_dir.path() / "characters.tsv");
    for (const auto& file : fs::directory_iterator(book_dir.path())) {
      if (file.path().extension() != ".txt") continue;
      const std::string chapter_id = file.path().stem().string();
      const fs::path stem = book_dir.path() / chapter_id;
      ManifestEntry e;
      e.book_id = book_id;
      e.chapter_id = chapter_id;
      e.text_path = file.path();
      e.align_path = fs::path(stem.string() + ".json");
      e.audio_path = fs::path(stem.string() + ".wav");
      if (!fs::exists(e.align_path) || !fs::exists(e.audio_path)) continue;
      e.trees_path = if_exists(stem.string() + ".trees");
      e.embeddings_path = if_exists(stem.string() + ".emb.tsv");
      e.attribution_path = if_exists(stem.string() + ".attrib.csv");
      e.characters_path = characters;
      entries.push_back(std::move(e));
    }
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return std::tie(a.book_id, a.chapter_id) < std::tie(b.book_id, b.chapter_id);
  });
  return entries;
}

AlignedChapter load_chapter(const ManifestEntry& entry) {
  AlignedChapter chapter =
      parse_alignment(read_text_file(entry.align_path), read_text_file(entry.text_path));
  chapter.book_id = entry.book_id;
  chapter.chapter_id = entry.chapter_id;
  chapter.audio_path = entry.audio_path.string();
  return chapter;
}

}  // namespace bookprosody::align
