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


#ifndef BOOKPROSODY_TOOLS_ARTIFACTS_HPP_
#define BOOKPROSODY_TOOLS_ARTIFACTS_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "bookprosody/align/manifest.hpp"
#include "bookprosody/features/feature_matrix.hpp"
#include "bookprosody/prosody/chapter_prosody.hpp"
#include "config.hpp"

namespace bookprosody::cli {

namespace fs = std::filesystem;

/// Where every subcommand reads and writes, relative to output_dir.
struct ArtifactLayout {
  fs::path root;

  fs::path effective_config() const { return root / "effective_config.json"; }
  fs::path extract_summary() const { return root / "extract" / "summary.json"; }
  fs::path prosody_csv(const align::ManifestEntry& e) const;
  fs::path prosody_json(const align::ManifestEntry& e) const;
  fs::path track_csv(const align::ManifestEntry& e, std::string_view kind) const;
  fs::path features_tsv(const align::ManifestEntry& e) const;
  fs::path split_json() const { return root / "features" / "split.json"; }
  fs::path tfidf_json() const { return root / "features" / "tfidf.json"; }
  fs::path pca_json() const { return root / "features" / "pca.json"; }
  fs::path model_json() const { return root / "train" / "model.json"; }
  fs::path predictions_csv(const align::ManifestEntry& e) const;
  fs::path report(std::string_view subset, std::string_view ext) const;
  fs::path ssml(const align::ManifestEntry& e, std::string_view suffix) const;
  fs::path analyze_dir() const { return root / "analyze"; }
};

std::string chapter_key(const align::ManifestEntry& e);

/// Manifest entries named by the config, in (book, chapter) order.
std::vector<align::ManifestEntry> corpus_entries(const PipelineConfig& config);

/// Throws MissingArtifact naming the subcommand that produces `path`.
void require_artifact(const fs::path& path, std::string_view producer);

/// Creates parent directories. Throws IoError.
void write_file(const fs::path& path, std::string_view contents);
std::string read_file(const fs::path& path);
nlohmann::json read_json(const fs::path& path);
/// Pretty-printed with a trailing newline.
void write_json(const fs::path& path, const nlohmann::json& j);

/// Entries whose extraction succeeded, per extract/summary.json.
std::vector<align::ManifestEntry> extracted_entries(const PipelineConfig& config,
                                                    const ArtifactLayout& layout);

std::vector<prosody::ProsodyRow> load_prosody_rows(const fs::path& path);
prosody::ChapterProsody load_chapter_prosody(const fs::path& path);

/// n x 3 targets and the matching 0/1 mask of measured values.
Eigen::MatrixXd prosody_targets(const std::vector<prosody::ProsodyRow>& rows);
Eigen::MatrixXd prosody_mask(const std::vector<prosody::ProsodyRow>& rows);
std::vector<std::uint8_t> quote_flags(const std::vector<prosody::ProsodyRow>& rows);

/// Throws DataError unless the feature rows and prosody rows name the same
/// segments in the same order.
void check_rows_match(const features::FeatureMatrix& f,
                      const std::vector<prosody::ProsodyRow>& rows, const std::string& key);

struct ChapterPredictions {
  std::vector<long> segment_ids;
  Eigen::MatrixXd z;  // n x 3
  std::vector<int> windows;
};

void write_predictions_csv(const fs::path& path, const ChapterPredictions& p);
ChapterPredictions read_predictions_csv(const fs::path& path);

}  // namespace bookprosody::cli

#endif  // BOOKPROSODY_TOOLS_ARTIFACTS_HPP_
