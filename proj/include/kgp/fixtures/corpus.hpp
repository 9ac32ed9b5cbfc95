#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kgp/dataset.hpp"
#include "kgp/ingest.hpp"
#include "kgp/random.hpp"
#include "kgp/schema.hpp"

namespace kgp::fixtures {

/// Word lists matching the generated vocabulary. A few generated words are
/// left out on purpose so the fallback paths get exercised.
std::string lexicon_tsv();
std::string aoa_tsv();
const Lexicon& fixture_lexicon();
const AoaTable& fixture_aoa();

/// Random English sentence with UPOS/XPOS tags and a consistent constituency
/// tree. Covers all eleven tenses in both voices, questions, clause
/// separators, numbers, names and hyphenated words.
Sentence random_sentence(Rng& rng, bool allow_question = true);

AnnotatedDocument random_document(Rng& rng, Modality modality, int sentences);

/// Lecture whose slide lines and subtitle cues are rebuilt from the
/// annotated sentences; embeddings are seeded unit vectors around a
/// per-lecture topic direction.
LectureBundle random_lecture(Rng& rng, const std::string& video_id, int slide_sentences,
                             int transcript_sentences, Eigen::Index embedding_dim);

/// 1 to 3 sentences per modality, embedding dimension 4.
LectureBundle random_tiny_bundle(std::uint64_t seed);

// ---------------------------------------------------------------------------

struct SyntheticCorpusSpec {
  int n_videos = 6;
  int n_participants = 4;
  int slide_sentences = 8;       // per video, drawn from [n/2, n]
  int transcript_sentences = 12;
  Eigen::Index embedding_dim = 16;
  std::uint64_t seed = 1;
  /// Video-level scalar feature whose standardized value drives kg scores.
  std::optional<std::string> planted_feature;
  double noise = 0.3;  // session-level noise, in standard deviations
  int mm_columns = 6;  // 0: no mm.csv
};

struct SyntheticCorpus {
  std::vector<LectureBundle> lectures;
  SessionTable sessions;
  std::optional<ExternalFeatureTable> mm;
};

SyntheticCorpus generate(const SyntheticCorpusSpec& spec);

/// Writes the corpus directory layout read by the extract command.
void write_corpus(const SyntheticCorpus& corpus, const std::filesystem::path& root);

std::string slides_json(const SlideDoc& slides);
std::string mm_csv(const ExternalFeatureTable& mm);

// ---------------------------------------------------------------------------
// Matrix fixtures

/// Gaussian blobs around well separated class centres (all three classes).
Dataset separable_blobs(std::uint64_t seed, int n = 150, int features = 5, double spread = 0.5);

/// Column "signal" determines the label through z-score thresholds (plus a
/// small label noise); the remaining columns "noise0".. are independent.
Dataset planted_signal(std::uint64_t seed, int n = 120, int noise_features = 5,
                       double label_noise = 0.1);

}  // namespace kgp::fixtures
