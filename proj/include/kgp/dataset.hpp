#pragma once

#include <bitset>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "kgp/ingest.hpp"
#include "kgp/schema.hpp"

namespace kgp {

enum class KgClass { Low = 0, Moderate = 1, High = 2 };
inline constexpr int kClassCount = 3;

std::string_view class_name(KgClass c);

inline constexpr double kZSpreadEpsilon = 1e-12;    // relative; smaller sd counts as 0
inline constexpr double kZThresholdEpsilon = 1e-9;  // |z| within this of 0.5 is on the boundary

/// Z-score normalization with the population standard deviation.
struct ZScale {
  double mean = 0;
  double sd = 0;

  static ZScale fit(std::span<const double> scores);
  /// Low iff z < -0.5, High iff z > 0.5, else Moderate (sd == 0 -> Moderate).
  /// Both comparisons allow kZThresholdEpsilon of rounding slack.
  KgClass classify(double score) const;
};

/// Throws ValidationError on an empty input.
std::vector<KgClass> zscore_labels(std::span<const double> scores);

enum class Variant { V22, V111 };
std::string_view variant_name(Variant v);
Variant parse_variant(std::string_view s);

/// Column families an experiment can select.
enum class Group { Txt = 0, EmbedSlide = 1, EmbedSrt = 2, Mm = 3, User = 4 };
std::string_view group_name(Group g);

struct Column {
  std::string name;
  Group group;
};

struct Dataset {
  Variant variant = Variant::V22;
  std::vector<Column> columns;
  Eigen::MatrixXd features;  // rows x columns, unscaled, full embedding blocks
  std::vector<KgClass> labels;
  std::vector<std::string> video_ids;
  std::vector<std::string> participant_ids;  // empty for V22
  std::vector<std::string> videos_missing_mm;
  std::vector<std::string> dropped_columns;

  Eigen::Index rows() const { return features.rows(); }
  std::vector<Eigen::Index> columns_in(Group g) const;
  std::vector<std::string> distinct_videos() const;  // sorted

  /// Copy restricted to the given rows (in the given order).
  Dataset select_rows(std::span<const Eigen::Index> rows) const;
};

/// One row per video labeled by the class of its mean score, Z taken over
/// the per-video means. MM columns are added when a table is given.
Dataset build_v22(const std::vector<FeatureVector>& vectors, const SessionTable& sessions,
                  const ExternalFeatureTable* mm = nullptr);

/// One row per session: video features plus a one-hot participant block,
/// labeled by the session's class with Z taken over all sessions.
Dataset build_v111(const std::vector<FeatureVector>& vectors, const SessionTable& sessions,
                   const ExternalFeatureTable* mm = nullptr);

/// Builds a dataset from a bare matrix (all columns TXT); used for synthetic
/// fixtures. Each row is its own "video" unless `groups` is given.
Dataset dataset_from_matrix(const Eigen::MatrixXd& x, std::vector<KgClass> labels,
                            std::vector<std::string> groups = {});

/// Removes TXT and MM columns that are zero in every row.
std::pair<Dataset, std::vector<std::string>> drop_zero_features(Dataset ds);

// ---------------------------------------------------------------------------

class CategoryMask {
 public:
  CategoryMask() = default;
  CategoryMask(std::initializer_list<Group> groups) {
    for (auto g : groups) set(g);
  }

  /// "TXT+MM+EMBED"; EMBED means both embedding blocks. Also accepts
  /// EMBED_SLIDE, EMBED_SRT and USER.
  static CategoryMask parse(std::string_view text);
  /// The seven category combinations of the experiments.
  static std::vector<CategoryMask> standard_masks();

  void set(Group g) { bits_.set(static_cast<std::size_t>(g)); }
  bool has(Group g) const { return bits_.test(static_cast<std::size_t>(g)); }
  bool empty() const { return bits_.none(); }
  std::string to_string() const;

  bool operator==(const CategoryMask&) const = default;

 private:
  std::bitset<5> bits_;
};

/// Column filter. USER is forced on for V111. Throws ValidationError on an
/// empty mask or when MM is requested but some rows lack MM values.
Dataset apply_mask(const Dataset& ds, CategoryMask mask);

// ---------------------------------------------------------------------------

struct FoldAssignment {
  int k = 0;
  std::vector<int> fold_of_row;
  std::vector<std::vector<std::string>> videos;  // per fold

  std::vector<Eigen::Index> train_rows(int fold) const;
  std::vector<Eigen::Index> test_rows(int fold) const;
};

/// Seeded video-level partition; a row's fold is its video's fold.
/// Throws ValidationError when k exceeds the number of distinct videos.
FoldAssignment make_folds(const Dataset& ds, int k, std::uint64_t seed);

/// Dataset CSV: "video_id,participant_id,<columns...>,label".
std::string dataset_to_csv(const Dataset& ds);

}  // namespace kgp
