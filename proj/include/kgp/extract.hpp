#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kgp/ingest.hpp"
#include "kgp/schema.hpp"
#include "kgp/syntactic.hpp"

namespace kgp {

/// Word lists shared by all lectures of a corpus.
struct Resources {
  Lexicon lexicon;
  AoaTable aoa;
  StopwordList stopwords = default_stopwords();
  TenseRules tense_rules = TenseRules::builtin();
};

/// Full video-level feature vector (every schema entry except the user block).
/// Throws Error if a value is not finite.
FeatureVector extract_features(const LectureBundle& bundle, const Resources& resources);

// ---------------------------------------------------------------------------
// Corpus directory layout:
//   <root>/lexicon.tsv, aoa.tsv, stopwords.txt (optional), mm.csv (optional),
//   sessions.csv
//   <root>/<video_id>/transcript.srt, slides.json, slide.conllu, slide.trees,
//                     transcript.conllu, transcript.trees, emb_slide.jsonl,
//                     emb_srt.jsonl

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

Resources load_resources(const std::filesystem::path& root);

/// Video ids: subdirectories of the corpus root, sorted.
std::vector<std::string> list_videos(const std::filesystem::path& root);

/// Reads and assembles one lecture; errors name the offending file.
LectureBundle load_bundle(const std::filesystem::path& root, const std::string& video_id,
                          const ExternalFeatureTable* mm = nullptr);

/// Extracts every video of the corpus (in parallel), in video-id order.
std::vector<FeatureVector> extract_corpus(const std::filesystem::path& root);

}  // namespace kgp
