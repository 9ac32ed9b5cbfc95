#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <Eigen/Dense>

#include "kgp/tree.hpp"

namespace kgp {

// ---------------------------------------------------------------------------
// Transcript (SubRip)

struct SubtitleEntry {
  int index = 0;
  long start_ms = 0;
  long end_ms = 0;
  std::string text;

  bool operator==(const SubtitleEntry&) const = default;
};

struct TranscriptDoc {
  std::string video_id;
  std::vector<SubtitleEntry> entries;

  bool operator==(const TranscriptDoc&) const = default;
};

/// Parses SubRip text. Multi-line cue text is joined with single spaces.
TranscriptDoc parse_srt(std::string_view bytes, std::string video_id = {});
std::string to_srt(const TranscriptDoc& doc);

/// "HH:MM:SS,mmm" -> milliseconds; throws ParseError.
long parse_srt_timestamp(std::string_view stamp, long line = 0);
std::string format_srt_timestamp(long ms);

// ---------------------------------------------------------------------------
// Slides

struct Slide {
  int index = 0;
  std::vector<std::string> lines;
};

struct SlideDoc {
  std::string video_id;
  std::vector<Slide> slides;
};

SlideDoc parse_slides(std::string_view json_bytes);

// ---------------------------------------------------------------------------
// Annotations

enum class Upos {
  ADJ, ADP, ADV, AUX, CCONJ, DET, INTJ, NOUN, NUM,
  PART, PRON, PROPN, PUNCT, SCONJ, SYM, VERB, X
};
inline constexpr std::size_t kUposCount = 17;

std::string_view upos_name(Upos tag);
std::optional<Upos> parse_upos(std::string_view name);
const std::array<Upos, kUposCount>& all_upos();

enum class Modality { Slide, Transcript };

std::string_view modality_suffix(Modality m);  // "sli" / "tra"

struct Token {
  std::string form;
  std::string lemma;
  Upos upos = Upos::X;
  std::string xpos;
};

struct Sentence {
  std::vector<Token> tokens;
  std::optional<ParseTree> tree;
};

struct AnnotatedDocument {
  Modality modality = Modality::Slide;
  std::vector<Sentence> sentences;
};

/// CoNLL-U plus a sidecar trees file with one bracketed tree (or "(NOTREE)")
/// per sentence, aligned by order.
AnnotatedDocument parse_annotations(std::string_view conllu_bytes,
                                    std::string_view trees_bytes,
                                    Modality modality);

/// Serializes the token rows in CoNLL-U (ID FORM LEMMA UPOS XPOS, rest "_").
std::string to_conllu(const AnnotatedDocument& doc);
std::string to_trees(const AnnotatedDocument& doc);

// ---------------------------------------------------------------------------
// Word lists

struct LexiconEntry {
  int syllables = 1;
  std::string pos;
  double frequency = 0.0;
};

struct Lexicon {
  std::unordered_map<std::string, LexiconEntry> entries;

  const LexiconEntry* find(std::string_view word) const;
  bool contains(std::string_view word) const { return find(word) != nullptr; }
};

inline constexpr double kDefaultAoa = 10.36;

struct AoaTable {
  std::unordered_map<std::string, double> entries;
  double default_aoa = kDefaultAoa;

  /// Lookup of a lowercased word; misses yield default_aoa.
  double lookup(std::string_view word) const;
  std::optional<double> find(std::string_view word) const;
};

struct StopwordList {
  std::unordered_set<std::string> words;
  bool contains(std::string_view w) const;
};

Lexicon load_lexicon(std::string_view tsv);
AoaTable load_aoa(std::string_view tsv);
StopwordList load_stopwords(std::string_view text);
/// The 179-word English list shipped in data/stopwords.txt.
const StopwordList& default_stopwords();

// ---------------------------------------------------------------------------
// Embeddings, external features, sessions

struct SentenceEmbeddings {
  Modality modality = Modality::Slide;
  Eigen::MatrixXd vectors;  // one row per sentence

  Eigen::Index count() const { return vectors.rows(); }
  Eigen::Index dimension() const { return vectors.cols(); }
};

SentenceEmbeddings load_embeddings(std::string_view jsonl, Modality modality);
std::string to_jsonl(const SentenceEmbeddings& emb);

struct ExternalFeatureTable {
  std::vector<std::string> columns;
  std::map<std::string, Eigen::VectorXd> rows;
};

ExternalFeatureTable load_external_features(std::string_view csv);

struct Session {
  std::string participant_id;
  std::string video_id;
  double kg_score = 0.0;
};

struct SessionTable {
  std::vector<Session> sessions;

  std::vector<std::string> participants() const;  // sorted, unique
  std::vector<std::string> videos() const;        // sorted, unique
};

SessionTable load_sessions(std::string_view csv);
std::string to_csv(const SessionTable& table);

// ---------------------------------------------------------------------------
// Bundle

struct LectureBundle {
  std::string video_id;
  TranscriptDoc transcript;
  SlideDoc slides;
  AnnotatedDocument ann_slide;
  AnnotatedDocument ann_transcript;
  SentenceEmbeddings emb_slide;
  SentenceEmbeddings emb_transcript;
  std::optional<Eigen::VectorXd> mm;
};

/// Cross-checks video ids and embedding/sentence alignment.
LectureBundle assemble_bundle(std::string video_id, TranscriptDoc transcript,
                              SlideDoc slides, AnnotatedDocument ann_slide,
                              AnnotatedDocument ann_transcript,
                              SentenceEmbeddings emb_slide,
                              SentenceEmbeddings emb_transcript,
                              std::optional<Eigen::VectorXd> mm = std::nullopt);

}  // namespace kgp
