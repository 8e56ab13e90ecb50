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


#include "commands.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "artifacts.hpp"
#include "bookprosody/dsp/audio.hpp"
#include "bookprosody/dsp/intensity.hpp"
#include "bookprosody/dsp/pitch.hpp"
#include "bookprosody/error.hpp"
#include "bookprosody/eval/quote_distribution.hpp"
#include "bookprosody/eval/readers.hpp"
#include "bookprosody/features/character.hpp"
#include "bookprosody/features/pca.hpp"
#include "bookprosody/features/tfidf.hpp"
#include "bookprosody/features/word_vectors.hpp"
#include "bookprosody/models/bilstm.hpp"
#include "bookprosody/models/evaluate.hpp"
#include "bookprosody/models/linreg.hpp"
#include "bookprosody/models/mlp.hpp"
#include "bookprosody/models/split.hpp"
#include "bookprosody/models/window.hpp"
#include "bookprosody/segment/segmenter.hpp"
#include "bookprosody/ssml/ssml.hpp"
#include "bookprosody/util/text.hpp"
#include "worker_pool.hpp"

namespace bookprosody::cli {

namespace {

using nlohmann::json;

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json attribute_json(const std::array<double, 3>& v) {
  return {{"pitch", v[0]}, {"volume", v[1]}, {"rate", v[2]}};
}

void emit_summary(RunContext& ctx, const json& summary) { ctx.out << summary.dump(2) << '\n'; }

models::BookSplit load_split(const ArtifactLayout& layout) {
  require_artifact(layout.split_json(), "featurize");
  return models::split_from_json(read_json(layout.split_json()));
}

features::FeatureMatrix load_features(const ArtifactLayout& layout,
                                      const align::ManifestEntry& e) {
  const auto path = layout.features_tsv(e);
  require_artifact(path, "featurize");
  return features::read_feature_tsv(path);
}

Eigen::MatrixXd dense(const features::RowMatrix& m) { return Eigen::MatrixXd(m); }

std::vector<align::ManifestEntry> entries_of_books(std::vector<align::ManifestEntry> entries,
                                                   const std::vector<std::string>& books) {
  const std::set<std::string> wanted(books.begin(), books.end());
  std::erase_if(entries, [&](const auto& e) { return !wanted.count(e.book_id); });
  return entries;
}

// Chapters of the training books, books in split order so the validation
// tail is a set of whole books.
std::vector<align::ManifestEntry> training_entries(const std::vector<align::ManifestEntry>& all,
                                                   const models::BookSplit& split) {
  std::vector<align::ManifestEntry> out;
  for (const auto& book : split.train) {
    for (const auto& e : all) {
      if (e.book_id == book) out.push_back(e);
    }
  }
  return out;
}

std::vector<align::ManifestEntry> test_entries(const std::vector<align::ManifestEntry>& all,
                                               const models::BookSplit& split) {
  auto out = entries_of_books(all, split.test);
  if (out.empty()) throw NoData("the test split has no extracted chapters");
  return out;
}

}  // namespace

Logger::Logger(std::ostream& err, std::string command) : err_(err), command_(std::move(command)) {}

void Logger::info(const std::string& message) {
  std::lock_guard lock(mutex_);
  err_ << "bookprosody " << command_ << ": " << message << '\n';
}

void Logger::warn(const std::string& message) {
  std::lock_guard lock(mutex_);
  err_ << "bookprosody " << command_ << ": warning: " << message << '\n';
}

void Logger::error(const std::string& message) {
  std::lock_guard lock(mutex_);
  err_ << "bookprosody " << command_ << ": error: " << message << '\n';
}

int cmd_extract(RunContext& ctx) {
  const auto& cfg = ctx.config;
  const ArtifactLayout layout{cfg.output_dir};
  const auto entries = corpus_entries(cfg);

  struct Outcome {
    std::string error;
    std::size_t segments = 0;
    std::size_t imputed = 0;
    std::size_t warnings = 0;
  };
  std::vector<Outcome> outcomes(entries.size());
  parallel_for(entries.size(), cfg.jobs, [&](std::size_t i) {
    const auto& e = entries[i];
    auto& result = outcomes[i];
    try {
      const auto chapter = align::load_chapter(e);
      std::vector<segment::ParseTree> trees;
      if (!e.trees_path.empty()) trees = segment::parse_tree_lines(read_file(e.trees_path));
      auto seg = segment::build_segments(chapter, e.trees_path.empty() ? nullptr : &trees);
      const auto audio = dsp::decode_wav(e.audio_path);
      const auto pitch = dsp::pitch_track(audio, cfg.pitch);
      const auto intensity = dsp::intensity_track(audio);
      auto prosody = prosody::compute_chapter_prosody(chapter, std::move(seg.segments), pitch,
                                                      intensity);
      prosody.warnings.insert(prosody.warnings.begin(), seg.warnings.begin(), seg.warnings.end());

      std::ostringstream csv;
      prosody::write_prosody_csv(csv, prosody);
      write_file(layout.prosody_csv(e), csv.str());
      write_json(layout.prosody_json(e), prosody::to_json(prosody));
      if (cfg.dump_tracks) {
        std::ostringstream p;
        dsp::write_track_csv(p, pitch);
        write_file(layout.track_csv(e, "pitch"), p.str());
        std::ostringstream v;
        dsp::write_track_csv(v, intensity);
        write_file(layout.track_csv(e, "intensity"), v.str());
      }
      result.segments = prosody.segments.size();
      result.imputed = prosody.flags.size();
      result.warnings = prosody.warnings.size();
      for (const auto& w : prosody.warnings) ctx.log.warn(chapter_key(e) + ": " + w);
      ctx.log.info(chapter_key(e) + ": " + std::to_string(result.segments) + " segments");
    } catch (const std::exception& ex) {
      result.error = ex.what();
      std::error_code ec;
      fs::remove(layout.prosody_csv(e), ec);
      fs::remove(layout.prosody_json(e), ec);
      ctx.log.warn(chapter_key(e) + " failed: " + result.error);
    }
  });

  json succeeded = json::array();
  json failed = json::array();
  std::size_t segments = 0;
  std::size_t imputed = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (outcomes[i].error.empty()) {
      succeeded.push_back(chapter_key(entries[i]));
      segments += outcomes[i].segments;
      imputed += outcomes[i].imputed;
    } else {
      failed.push_back({{"chapter", chapter_key(entries[i])}, {"error", outcomes[i].error}});
    }
  }
  const json summary = {{"chapters", entries.size()},
                        {"succeeded", succeeded},
                        {"failed", failed},
                        {"segments", segments},
                        {"imputed_values", imputed}};
  write_json(layout.extract_summary(), summary);
  emit_summary(ctx, {{"command", "extract"},
                     {"chapters", entries.size()},
                     {"succeeded", succeeded.size()},
                     {"failed", failed.size()},
                     {"segments", segments}});
  return succeeded.empty() ? 1 : 0;
}

int cmd_featurize(RunContext& ctx) {
  const auto& cfg = ctx.config;
  const ArtifactLayout layout{cfg.output_dir};
  const auto entries = extracted_entries(cfg, layout);

  std::vector<prosody::ChapterProsody> chapters(entries.size());
  parallel_for(entries.size(), cfg.jobs, [&](std::size_t i) {
    chapters[i] = load_chapter_prosody(layout.prosody_json(entries[i]));
  });

  std::vector<std::string> books;
  for (const auto& e : entries) {
    if (books.empty() || books.back() != e.book_id) books.push_back(e.book_id);
  }
  const auto split = models::split_books(books, cfg.train_ratio, cfg.seed);
  write_json(layout.split_json(), models::to_json(split));

  auto segment_texts = [](const prosody::ChapterProsody& ch) {
    std::vector<std::string> texts;
    for (const auto& s : ch.segments) texts.push_back(s.text);
    return texts;
  };
  auto segment_ids = [](const prosody::ChapterProsody& ch) {
    std::vector<long> ids;
    for (const auto& s : ch.segments) ids.push_back(s.segment_id);
    return ids;
  };

  std::optional<features::TfidfModel> tfidf;
  std::optional<features::WordVectorTable> vectors;
  const auto& kind = cfg.features.kind;
  if (kind == "tfidf") {
    std::vector<std::string> docs;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (!split.is_train(entries[i].book_id)) continue;
      for (auto& t : segment_texts(chapters[i])) docs.push_back(std::move(t));
    }
    tfidf = features::tfidf_fit(
        docs, {.min_df = cfg.features.tfidf.min_df, .max_features = cfg.features.tfidf.max_features});
    write_json(layout.tfidf_json(), features::to_json(*tfidf));
    ctx.log.info("tf-idf vocabulary of " + std::to_string(tfidf->vocabulary.size()) + " terms");
  } else if (kind == "word_vectors") {
    vectors = features::load_word_vectors(cfg.features.word_vectors_path);
    ctx.log.info("loaded " + std::to_string(vectors->size()) + " word vectors");
  }

  // Character tables per book and a PCA fitted on the training books only.
  std::map<std::string, features::CharacterTable> characters;
  std::optional<features::PcaModel> pca;
  if (cfg.features.character.enabled) {
    for (const auto& e : entries) {
      if (characters.count(e.book_id)) continue;
      if (e.characters_path.empty()) {
        throw DataError("book " + e.book_id + " has no character table");
      }
      characters.emplace(e.book_id, features::load_character_table(e.characters_path));
    }
    std::vector<Eigen::VectorXd> rows;
    for (const auto& book : split.train) {
      const auto it = characters.find(book);
      if (it == characters.end()) continue;
      for (Eigen::Index r = 0; r < it->second.vectors.rows(); ++r) {
        rows.push_back(it->second.vectors.row(r).transpose());
      }
    }
    if (rows.empty()) throw NoData("no character vectors in the training books");
    Eigen::MatrixXd stacked(static_cast<Eigen::Index>(rows.size()), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != stacked.cols()) throw DimError("character tables differ in width");
      stacked.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
    }
    pca = features::pca_fit(stacked, cfg.features.character.pca_dims);
    write_json(layout.pca_json(), features::to_json(*pca));
  }

  std::vector<Eigen::Index> dims(entries.size(), 0);
  std::vector<std::size_t> oov(entries.size(), 0);
  parallel_for(entries.size(), cfg.jobs, [&](std::size_t i) {
    const auto& e = entries[i];
    const auto& ch = chapters[i];
    const auto ids = segment_ids(ch);
    features::FeatureMatrix m;
    if (tfidf) {
      m.data = features::tfidf_transform(*tfidf, segment_texts(ch));
      m.row_ids = ids;
      m.provenance = features::Provenance::kTfidf;
    } else if (vectors) {
      m.data.resize(static_cast<Eigen::Index>(ids.size()),
                    static_cast<Eigen::Index>(vectors->dims()));
      for (std::size_t r = 0; r < ch.segments.size(); ++r) {
        const auto pooled =
            features::pool_word_vectors(features::pooling_tokens(ch.segments[r].text), *vectors);
        if (pooled.all_oov) ++oov[i];
        m.data.row(static_cast<Eigen::Index>(r)) = pooled.vector.transpose();
      }
      m.row_ids = ids;
      m.provenance = features::Provenance::kWordVecPool;
    } else {
      if (e.embeddings_path.empty()) {
        throw DataError("chapter " + chapter_key(e) + " has no sentence embedding file");
      }
      m = features::load_external_embeddings(e.embeddings_path, ids);
    }
    if (pca) {
      features::Attribution attribution;
      if (!e.attribution_path.empty()) attribution = features::load_attribution(e.attribution_path);
      m = features::append_character_embedding(m, ch.segments, characters.at(e.book_id),
                                                attribution, *pca);
    }
    m.validate();
    dims[i] = m.dims();
    std::ostringstream tsv;
    features::write_feature_tsv(tsv, m);
    write_file(layout.features_tsv(e), tsv.str());
  });

  std::size_t oov_rows = 0;
  for (auto n : oov) oov_rows += n;
  if (oov_rows > 0) ctx.log.warn(std::to_string(oov_rows) + " segments had no known word");
  for (std::size_t i = 1; i < dims.size(); ++i) {
    if (dims[i] != dims[0]) throw DimError("chapters ended up with different feature widths");
  }
  emit_summary(ctx, {{"command", "featurize"},
                     {"chapters", entries.size()},
                     {"dims", dims.front()},
                     {"kind", kind},
                     {"character", cfg.features.character.enabled},
                     {"train_books", split.train.size()},
                     {"test_books", split.test.size()}});
  return 0;
}

int cmd_train(RunContext& ctx) {
  const auto& cfg = ctx.config;
  const auto& mc = cfg.model;
  const ArtifactLayout layout{cfg.output_dir};
  const auto split = load_split(layout);
  const auto entries = training_entries(extracted_entries(cfg, layout), split);
  if (entries.empty()) throw NoData("the training split has no extracted chapters");

  std::vector<models::ChapterSequence> chapters(entries.size());
  parallel_for(entries.size(), cfg.jobs, [&](std::size_t i) {
    const auto& e = entries[i];
    const auto f = load_features(layout, e);
    const auto rows = load_prosody_rows(layout.prosody_csv(e));
    check_rows_match(f, rows, chapter_key(e));
    chapters[i].chapter_id = chapter_key(e);
    chapters[i].features = dense(f.data);
    chapters[i].targets = prosody_targets(rows);
    if (mc.exclude_imputed) chapters[i].mask = prosody_mask(rows);
  });

  models::TrainedModel model;
  std::size_t rows_used = 0;
  if (mc.kind == "bilstm") {
    models::BilstmConfig bc;
    bc.units = mc.lstm_units;
    bc.dense = mc.dense_units;
    bc.seq_len = mc.seq_len;
    bc.epochs = mc.epochs;
    bc.batch_size = mc.batch_size;
    bc.adam.learning_rate = mc.learning_rate;
    bc.val_fraction = mc.val_fraction;
    bc.seed = cfg.seed;
    for (const auto& c : chapters) rows_used += static_cast<std::size_t>(c.features.rows());
    model = models::bilstm_fit(chapters, bc);
  } else {
    std::vector<std::pair<std::size_t, Eigen::Index>> picked;
    for (std::size_t c = 0; c < chapters.size(); ++c) {
      for (Eigen::Index r = 0; r < chapters[c].features.rows(); ++r) {
        if (mc.exclude_imputed && chapters[c].mask.row(r).minCoeff() < 1.0) continue;
        picked.emplace_back(c, r);
      }
    }
    if (picked.empty()) throw NoData("no training rows without imputed targets");
    const Eigen::Index d = chapters.front().features.cols();
    Eigen::MatrixXd x(static_cast<Eigen::Index>(picked.size()), d);
    Eigen::MatrixXd y(static_cast<Eigen::Index>(picked.size()), 3);
    for (std::size_t i = 0; i < picked.size(); ++i) {
      const auto [c, r] = picked[i];
      x.row(static_cast<Eigen::Index>(i)) = chapters[c].features.row(r);
      y.row(static_cast<Eigen::Index>(i)) = chapters[c].targets.row(r);
    }
    rows_used = picked.size();
    if (mc.kind == "linreg") {
      model = models::linreg_fit(x, y, mc.ridge);
    } else {
      models::MlpConfig m;
      m.hidden1 = mc.hidden[0];
      m.hidden2 = mc.hidden[1];
      m.max_epochs = mc.max_epochs;
      m.batch_size = mc.batch_size;
      m.adam.learning_rate = mc.learning_rate;
      m.seed = cfg.seed;
      model = models::mlp_fit(x, y, m);
    }
  }
  model.metadata["feature_kind"] = cfg.features.kind;
  fs::create_directories(layout.model_json().parent_path());
  models::save_model(layout.model_json(), model);
  ctx.log.info("trained " + mc.kind + " on " + std::to_string(rows_used) + " segments");

  json summary = {{"command", "train"},
                  {"kind", mc.kind},
                  {"chapters", chapters.size()},
                  {"segments", rows_used},
                  {"selected_epoch", model.selected_epoch}};
  if (!model.training_log.empty()) {
    const auto& best = model.training_log[static_cast<std::size_t>(
        std::max(model.selected_epoch, 1) - 1)];
    summary["train_loss"] = best.train_loss;
    summary["val_loss"] = optional_json(best.val_loss);
  }
  emit_summary(ctx, summary);
  return 0;
}

int cmd_predict(RunContext& ctx) {
  const auto& cfg = ctx.config;
  const ArtifactLayout layout{cfg.output_dir};
  const auto split = load_split(layout);
  const auto entries = test_entries(extracted_entries(cfg, layout), split);
  require_artifact(layout.model_json(), "train");
  const auto model = models::load_model(layout.model_json());

  std::vector<std::size_t> segments(entries.size(), 0);
  parallel_for(entries.size(), cfg.jobs, [&](std::size_t i) {
    const auto& e = entries[i];
    const auto f = load_features(layout, e);
    if (f.rows() == 0) return;
    const auto pred = models::sliding_window_predict(model, dense(f.data));
    write_predictions_csv(layout.predictions_csv(e), {f.row_ids, pred.mean, pred.coverage});
    segments[i] = f.row_ids.size();
  });
  std::size_t total = 0;
  for (auto n : segments) total += n;
  ctx.log.info("predicted " + std::to_string(total) + " segments in " +
               std::to_string(entries.size()) + " chapters");
  emit_summary(ctx, {{"command", "predict"},
                     {"chapters", entries.size()},
                     {"segments", total},
                     {"model", models::model_kind_name(model.kind)}});
  return 0;
}

int cmd_evaluate(RunContext& ctx) {
  const auto& cfg = ctx.config;
  const ArtifactLayout layout{cfg.output_dir};
  const auto subset = models::parse_subset(cfg.eval.subset);
  const auto split = load_split(layout);
  const auto entries = test_entries(extracted_entries(cfg, layout), split);

  std::vector<models::ChapterEval> chapters(entries.size());
  parallel_for(entries.size(), cfg.jobs, [&](std::size_t i) {
    const auto& e = entries[i];
    const auto rows = load_prosody_rows(layout.prosody_csv(e));
    auto& ch = chapters[i];
    ch.book_id = e.book_id;
    ch.chapter_id = e.chapter_id;
    ch.target = prosody_targets(rows);
    ch.mask = prosody_mask(rows);
    ch.is_quote = quote_flags(rows);
    if (rows.empty()) {
      ch.predicted = Eigen::MatrixXd::Zero(0, 3);
      return;
    }
    const auto pred = read_predictions_csv(layout.predictions_csv(e));
    if (pred.segment_ids.size() != rows.size()) {
      throw DataError("predictions for " + chapter_key(e) +
                      " do not match its segments; rerun `bookprosody predict`");
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (pred.segment_ids[r] != rows[r].segment_id) {
        throw DataError("predictions for " + chapter_key(e) +
                        " do not match its segments; rerun `bookprosody predict`");
      }
    }
    ch.predicted = pred.z;
  });
  std::erase_if(chapters, [](const auto& c) { return c.target.rows() == 0; });

  const auto report = models::evaluate(chapters, subset);
  const std::string name(models::subset_name(subset));
  write_json(layout.report(name, "json"), models::to_json(report));
  std::ostringstream csv;
  models::write_report_csv(csv, report);
  write_file(layout.report(name, "csv"), csv.str());
  emit_summary(ctx, {{"command", "evaluate"},
                     {"subset", name},
                     {"chapters", report.chapters.size()},
                     {"segments", report.segments},
                     {"mse", attribute_json(report.mse)}});
  return 0;
}

int cmd_emit_ssml(RunContext& ctx) {
  const auto& cfg = ctx.config;
  const ArtifactLayout layout{cfg.output_dir};
  const auto split = load_split(layout);
  const auto entries = test_entries(extracted_entries(cfg, layout), split);

  std::vector<std::size_t> phrases(entries.size(), 0);
  std::vector<std::size_t> clamped(entries.size(), 0);
  std::vector<std::uint8_t> defaulted(entries.size(), 0);
  parallel_for(entries.size(), cfg.jobs, [&](std::size_t i) {
    const auto& e = entries[i];
    const auto ch = load_chapter_prosody(layout.prosody_json(e));
    if (ch.segments.empty()) return;
    const auto pred = read_predictions_csv(layout.predictions_csv(e));
    if (pred.segment_ids.size() != ch.segments.size()) {
      throw DataError("predictions for " + chapter_key(e) +
                      " do not match its segments; rerun `bookprosody predict`");
    }

    ssml::ReferenceStats ref;
    ref.pitch_mean_hz = cfg.ssml.default_pitch_mean_hz;
    ref.pitch_std_hz = cfg.ssml.default_pitch_std_hz;
    const auto& pitch = ch.stats[prosody::kPitch];
    const bool chapter_pitch = !pitch.degenerate && pitch.raw.mean > 0.0 && pitch.raw.std > 0.0;
    if (chapter_pitch) {
      ref.pitch_mean_hz = pitch.raw.mean;
      ref.pitch_std_hz = pitch.raw.std;
    }
    const auto& volume = ch.stats[prosody::kVolume];
    if (!volume.degenerate && volume.raw.mean > 0.0 && volume.raw.std > 0.0) {
      ref.volume_mean_db = volume.raw.mean;
      ref.volume_std_db = volume.raw.std;
    }

    std::vector<ssml::SsmlPhrase> out;
    std::vector<std::string> texts;
    json sidecar = json::array();
    for (std::size_t r = 0; r < ch.segments.size(); ++r) {
      if (pred.segment_ids[r] != ch.segments[r].segment_id) {
        throw DataError("predictions for " + chapter_key(e) +
                        " do not match its segments; rerun `bookprosody predict`");
      }
      const auto row = static_cast<Eigen::Index>(r);
      out.push_back(ssml::z_to_attributes({pred.z(row, 0), pred.z(row, 1), pred.z(row, 2)}, ref,
                                          ch.segments[r].text));
      texts.push_back(ch.segments[r].text);
      if (out.back().clamped.any()) ++clamped[i];
      json phrase = ssml::to_json(out.back());
      phrase["segment_id"] = ch.segments[r].segment_id;
      sidecar.push_back(std::move(phrase));
    }
    write_file(layout.ssml(e, ".ssml"), ssml::emit_ssml(out) + "\n");
    write_file(layout.ssml(e, ".plain.ssml"), ssml::emit_plain_ssml(texts) + "\n");
    write_json(layout.ssml(e, ".ssml.json"),
               {{"book_id", e.book_id},
                {"chapter_id", e.chapter_id},
                {"reference_source", chapter_pitch ? "chapter" : "default"},
                {"volume_reference", ref.volume_std_db.has_value()},
                {"reference", ssml::to_json(ref)},
                {"clamped_phrases", clamped[i]},
                {"phrases", sidecar}});
    phrases[i] = out.size();
    defaulted[i] = chapter_pitch ? 0 : 1;
    if (clamped[i] > 0) {
      ctx.log.info(chapter_key(e) + ": " + std::to_string(clamped[i]) + " phrases clamped");
    }
  });

  std::size_t total = 0;
  std::size_t total_clamped = 0;
  std::size_t total_default = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    total += phrases[i];
    total_clamped += clamped[i];
    total_default += defaulted[i];
  }
  if (total_default > 0) {
    ctx.log.warn(std::to_string(total_default) + " chapters used the default pitch reference");
  }
  emit_summary(ctx, {{"command", "emit-ssml"},
                     {"chapters", entries.size()},
                     {"phrases", total},
                     {"clamped_phrases", total_clamped},
                     {"default_reference_chapters", total_default}});
  return 0;
}

int cmd_analyze_readers(RunContext& ctx) {
  const auto& cfg = ctx.config;
  const ArtifactLayout layout{cfg.output_dir};
  const auto entries = extracted_entries(cfg, layout);

  // Per-attribute pooled quote/non-quote values, imputed ones left out.
  std::array<std::vector<std::uint8_t>, 3> flags;
  std::array<std::vector<double>, 3> values;
  std::map<std::string, eval::BookDialogue> books;
  std::vector<std::string> notes;
  std::map<std::string, features::CharacterTable> tables;

  for (const auto& e : entries) {
    const auto rows = load_prosody_rows(layout.prosody_csv(e));
    for (const auto& r : rows) {
      for (std::size_t a = 0; a < 3; ++a) {
        if (r.imputed(static_cast<prosody::Attribute>(a))) continue;
        flags[a].push_back(r.is_quote ? 1 : 0);
        values[a].push_back(r.z[a]);
      }
    }
    if (e.characters_path.empty() || e.attribution_path.empty()) continue;
    if (!tables.count(e.book_id)) {
      tables.emplace(e.book_id, features::load_character_table(e.characters_path));
    }
    const auto& table = tables.at(e.book_id);
    auto& book = books[e.book_id];
    book.book_id = e.book_id;
    for (std::size_t c = 0; c < table.size(); ++c) book.genders[table.ids[c]] = table.genders[c];

    const auto attribution = features::load_attribution(e.attribution_path);
    const auto ch = load_chapter_prosody(layout.prosody_json(e));
    for (std::size_t s = 0; s < ch.segments.size(); ++s) {
      const auto& seg = ch.segments[s];
      if (!seg.is_quote) continue;
      const auto it = attribution.find(seg.segment_id);
      if (it == attribution.end()) continue;
      const auto& raw = ch.raw[s];
      book.segments.push_back({it->second, raw.words, raw.pitch_hz, raw.pitch_frames,
                               raw.volume_db, raw.volume_frames});
    }
  }

  json per_book = json::array();
  for (const auto& [id, book] : books) {
    json entry = {{"book_id", id}};
    try {
      const auto [first, second] = eval::character_pair_stats(book);
      entry["top_characters"] = {eval::to_json(first), eval::to_json(second)};
    } catch (const InsufficientCharacters& ex) {
      entry["top_characters"] = json::array();
      entry["note"] = ex.what();
    }
    per_book.push_back(std::move(entry));
  }

  json gender = nullptr;
  std::vector<eval::BookDialogue> dialogue;
  for (const auto& [id, book] : books) dialogue.push_back(book);
  try {
    gender = eval::to_json(eval::gender_dialogue_test(
        dialogue, static_cast<std::size_t>(cfg.eval.min_gender_words)));
  } catch (const NoData& ex) {
    notes.emplace_back(ex.what());
    ctx.log.warn(ex.what());
  }

  json distributions = json::object();
  json gaps = json::object();
  for (std::size_t a = 0; a < 3; ++a) {
    const std::string name = prosody::kAttributeNames[a];
    const auto d = eval::quote_distribution(flags[a], values[a]);
    distributions[name] = eval::to_json(d);
    gaps[name] = optional_json(d.gap);
    std::ostringstream csv;
    eval::write_histogram_csv(csv, d);
    write_file(layout.analyze_dir() / ("quote_hist." + name + ".csv"), csv.str());
  }

  write_json(layout.analyze_dir() / "readers.json", {{"books", per_book},
                                                      {"gender", gender},
                                                      {"quote_distribution", distributions},
                                                      {"notes", notes}});
  emit_summary(ctx, {{"command", "analyze-readers"},
                     {"books_with_characters", books.size()},
                     {"gender_test", gender.is_null() ? json(nullptr) : json({
                                                            {"pitch", gender.at("pitch")},
                                                            {"volume", gender.at("volume")}})},
                     {"quote_gap", gaps}});
  return 0;
}

}  // namespace bookprosody::cli
