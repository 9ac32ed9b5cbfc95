#pragma once

#include <array>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kgp/ingest.hpp"

namespace kgp {

enum class Category {
  Syntax,
  Readability,
  Lexical,
  Structure,
  SemanticScalar,
  EmbedSlide,
  EmbedSrt,
  Mm,
  User
};

std::string_view category_name(Category c);

enum class FeatureModality { Slide, Transcript, Both, None };

struct SchemaEntry {
  std::string name;
  Category category;
  FeatureModality modality;

  /// Embedding blocks (and the user block) expand to several columns.
  bool is_block() const {
    return category == Category::EmbedSlide || category == Category::EmbedSrt ||
           category == Category::User;
  }
};

/// The fixed, ordered list of per-lecture features. The user entry is part of
/// the schema (it is one of the 387 counted features) but only materializes
/// at dataset level; video-level vectors stop before it.
class FeatureSchema {
 public:
  explicit FeatureSchema(std::vector<SchemaEntry> entries);

  const std::vector<SchemaEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t count(Category c) const;

  /// Counts each block as a single feature.
  std::size_t counted_features() const { return entries_.size(); }

  const SchemaEntry* find(std::string_view name) const;

  /// Video-level layout (user block excluded, embedding blocks of width dim).
  Eigen::Index video_width(Eigen::Index embedding_dim) const;
  Eigen::Index offset(std::string_view name, Eigen::Index embedding_dim) const;
  std::vector<std::string> expanded_names(Eigen::Index embedding_dim) const;

 private:
  struct Slot {
    std::size_t entry;
    Eigen::Index scalars_before;
    Eigen::Index blocks_before;
  };
  std::vector<SchemaEntry> entries_;
  std::unordered_map<std::string, Slot> slots_;
};

const FeatureSchema& canonical_schema();

// Member lists of each feature family, one modality at a time. Extractors
// emit values in exactly this order.
namespace feature_names {

inline constexpr std::array<std::string_view, 14> kPhraseTypes = {
    "NP", "VP", "PP", "ADJP", "ADVP", "SBAR", "SBARQ",
    "SQ", "WHNP", "WHADVP", "WHPP", "QP", "PRT", "INTJ"};

std::vector<std::string> word_types(Modality m);    // 55
std::vector<std::string> tenses(Modality m);        // 44
std::vector<std::string> phrases(Modality m);       // 43
std::vector<std::string> other_syntax(Modality m);  // 12
std::vector<std::string> readability(Modality m);   // 6
std::vector<std::string> lexical(Modality m);       // 18
std::vector<std::string> slide_structure();         // 14
std::vector<std::string> srt_structure();           // 10
std::vector<std::string> semantic_scalars();        // 4

inline constexpr std::string_view kEmbedSlide = "embed_slide";
inline constexpr std::string_view kEmbedSrt = "embed_srt";
inline constexpr std::string_view kPersonId = "person_id";

}  // namespace feature_names

/// Named values produced by one extractor.
struct FeatureGroup {
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<std::pair<std::string, Eigen::VectorXd>> blocks;

  void add(std::string name, double value) { scalars.emplace_back(std::move(name), value); }
  void add_block(std::string name, Eigen::VectorXd v) {
    blocks.emplace_back(std::move(name), std::move(v));
  }
  /// Appends names[i] = values[i]; sizes must agree.
  void add_all(const std::vector<std::string>& names, const std::vector<double>& values);

  /// Throws std::out_of_range when absent.
  double at(std::string_view name) const;
  std::size_t size() const { return scalars.size() + blocks.size(); }
};

/// Schema-ordered per-video values; embedding blocks are contiguous ranges.
class FeatureVector {
 public:
  FeatureVector() = default;
  FeatureVector(std::string video_id, Eigen::VectorXd values, Eigen::Index embedding_dim);

  const std::string& video_id() const { return video_id_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::Index embedding_dim() const { return embedding_dim_; }

  double operator[](std::string_view name) const;
  Eigen::VectorXd block(std::string_view name) const;

 private:
  std::string video_id_;
  Eigen::VectorXd values_;
  Eigen::Index embedding_dim_ = 0;
};

/// Assembles groups that jointly cover the video-level schema exactly once.
/// Throws AssemblyError naming duplicate or missing features.
FeatureVector merge(const std::vector<FeatureGroup>& groups, std::string video_id);

/// CSV with header "video_id,<expanded names>" and one row per vector.
std::string features_to_csv(const std::vector<FeatureVector>& vectors);
std::vector<FeatureVector> features_from_csv(std::string_view csv);

}  // namespace kgp
