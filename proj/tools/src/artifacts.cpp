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


#include "artifacts.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "bookprosody/error.hpp"
#include "bookprosody/util/text.hpp"

namespace bookprosody::cli {

fs::path ArtifactLayout::prosody_csv(const align::ManifestEntry& e) const {
  return root / "extract" / e.book_id / (e.chapter_id + ".prosody.csv");
}

fs::path ArtifactLayout::prosody_json(const align::ManifestEntry& e) const {
  return root / "extract" / e.book_id / (e.chapter_id + ".prosody.json");
}

fs::path ArtifactLayout::track_csv(const align::ManifestEntry& e, std::string_view kind) const {
  return root / "extract" / e.book_id / (e.chapter_id + "." + std::string(kind) + ".csv");
}

fs::path ArtifactLayout::features_tsv(const align::ManifestEntry& e) const {
  return root / "features" / e.book_id / (e.chapter_id + ".features.tsv");
}

fs::path ArtifactLayout::predictions_csv(const align::ManifestEntry& e) const {
  return root / "predict" / e.book_id / (e.chapter_id + ".pred.csv");
}

fs::path ArtifactLayout::report(std::string_view subset, std::string_view ext) const {
  return root / "evaluate" / ("report." + std::string(subset) + "." + std::string(ext));
}

fs::path ArtifactLayout::ssml(const align::ManifestEntry& e, std::string_view suffix) const {
  return root / "ssml" / e.book_id / (e.chapter_id + std::string(suffix));
}

std::string chapter_key(const align::ManifestEntry& e) { return e.book_id + "/" + e.chapter_id; }

std::vector<align::ManifestEntry> corpus_entries(const PipelineConfig& config) {
  auto entries = config.manifest.empty() ? align::scan_dataset(config.dataset_root)
                                         : align::load_manifest(config.manifest);
  std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return std::tie(a.book_id, a.chapter_id) < std::tie(b.book_id, b.chapter_id);
  });
  std::set<std::string> seen;
  for (const auto& e : entries) {
    if (!seen.insert(chapter_key(e)).second) {
      throw SchemaError("chapter " + chapter_key(e) + " appears twice in the corpus");
    }
  }
  if (entries.empty()) throw NoData("the corpus has no chapters");
  return entries;
}

void require_artifact(const fs::path& path, std::string_view producer) {
  if (!fs::exists(path)) {
    throw MissingArtifact(path.string() + " not found; run `bookprosody " + std::string(producer) +
                          "` first");
  }
}

void write_file(const fs::path& path, std::string_view contents) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

std::string read_file(const fs::path& path) { return align::read_text_file(path); }

nlohmann::json read_json(const fs::path& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path.string() + " is not valid JSON: " + e.what());
  }
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  write_file(path, j.dump(2) + "\n");
}

std::vector<align::ManifestEntry> extracted_entries(const PipelineConfig& config,
                                                    const ArtifactLayout& layout) {
  require_artifact(layout.extract_summary(), "extract");
  const auto summary = read_json(layout.extract_summary());
  std::set<std::string> ok;
  for (const auto& c : summary.at("succeeded")) ok.insert(c.get<std::string>());
  std::vector<align::ManifestEntry> out;
  for (auto& e : corpus_entries(config)) {
    if (ok.count(chapter_key(e))) out.push_back(std::move(e));
  }
  if (out.empty()) throw NoData("no successfully extracted chapters");
  return out;
}

std::vector<prosody::ProsodyRow> load_prosody_rows(const fs::path& path) {
  require_artifact(path, "extract");
  std::istringstream in(read_file(path));
  return prosody::read_prosody_csv(in);
}

prosody::ChapterProsody load_chapter_prosody(const fs::path& path) {
  require_artifact(path, "extract");
  try {
    return prosody::chapter_prosody_from_json(read_json(path));
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("malformed prosody record " + path.string() + ": " + e.what());
  }
}

Eigen::MatrixXd prosody_targets(const std::vector<prosody::ProsodyRow>& rows) {
  Eigen::MatrixXd y(static_cast<Eigen::Index>(rows.size()), 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (Eigen::Index a = 0; a < 3; ++a) {
      y(static_cast<Eigen::Index>(i), a) = rows[i].z[static_cast<std::size_t>(a)];
    }
  }
  return y;
}

Eigen::MatrixXd prosody_mask(const std::vector<prosody::ProsodyRow>& rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t a = 0; a < 3; ++a) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) =
          rows[i].imputed(static_cast<prosody::Attribute>(a)) ? 0.0 : 1.0;
    }
  }
  return m;
}

std::vector<std::uint8_t> quote_flags(const std::vector<prosody::ProsodyRow>& rows) {
  std::vector<std::uint8_t> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.is_quote ? 1 : 0);
  return out;
}

void check_rows_match(const features::FeatureMatrix& f,
                      const std::vector<prosody::ProsodyRow>& rows, const std::string& key) {
  bool same = f.row_ids.size() == rows.size();
  for (std::size_t i = 0; same && i < rows.size(); ++i) same = f.row_ids[i] == rows[i].segment_id;
  if (!same) {
    throw DataError("features and prosody of " + key +
                    " list different segments; rerun `bookprosody featurize`");
  }
}

void write_predictions_csv(const fs::path& path, const ChapterPredictions& p) {
  std::string out = "segment_id,pitch_z,volume_z,rate_z,windows\n";
  for (std::size_t i = 0; i < p.segment_ids.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    out += std::to_string(p.segment_ids[i]);
    for (Eigen::Index a = 0; a < 3; ++a) out += "," + util::format_double(p.z(r, a));
    out += "," + std::to_string(p.windows[i]) + "\n";
  }
  write_file(path, out);
}

ChapterPredictions read_predictions_csv(const fs::path& path) {
  require_artifact(path, "predict");
  const std::string text = read_file(path);
  std::vector<std::array<double, 3>> values;
  ChapterPredictions p;
  std::size_t line_no = 0;
  for (std::string_view line : util::split(text, '\n')) {
    ++line_no;
    line = util::strip_cr(line);
    if (line.empty() || line_no == 1) continue;
    const auto cells = util::split(line, ',');
    if (cells.size() != 5) throw FormatError(line_no, "expected 5 cells in " + path.string());
    const auto id = util::parse_long(cells[0]);
    const auto windows = util::parse_long(cells[4]);
    std::array<double, 3> z{};
    bool ok = id && windows;
    for (std::size_t a = 0; ok && a < 3; ++a) {
      const auto v = util::parse_double(cells[a + 1]);
      ok = v.has_value();
      if (v) z[a] = *v;
    }
    if (!ok) throw FormatError(line_no, "malformed prediction row in " + path.string());
    p.segment_ids.push_back(*id);
    p.windows.push_back(static_cast<int>(*windows));
    values.push_back(z);
  }
  p.z.resize(static_cast<Eigen::Index>(values.size()), 3);
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (Eigen::Index a = 0; a < 3; ++a) {
      p.z(static_cast<Eigen::Index>(i), a) = values[i][static_cast<std::size_t>(a)];
    }
  }
  return p;
}

}  // namespace bookprosody::cli
