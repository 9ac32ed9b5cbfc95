#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "kgp/dataset.hpp"
#include "kgp/eval.hpp"
#include "kgp/models.hpp"

namespace kgp::cli {

struct RunConfig {
  std::filesystem::path corpus;    // extracted in memory when features is empty
  std::filesystem::path features;  // features.csv
  std::filesystem::path sessions;  // sessions.csv
  std::filesystem::path mm;        // optional mm.csv
  std::vector<Variant> variants = {Variant::V22};
  std::vector<CategoryMask> masks = CategoryMask::standard_masks();
  std::vector<ClassifierKind> classifiers = {ClassifierKind::NaiveBayes, ClassifierKind::Svm,
                                             ClassifierKind::RandomForest, ClassifierKind::Mlp};
  int folds = 5;
  Eigen::Index pca_k = 16;
  std::uint64_t seed = 1;
  bool select = false;
  /// Classifiers whose averaged per-fold importance is reported for the
  /// all-categories mask; empty disables the importance tables.
  std::vector<ClassifierKind> importance = {ClassifierKind::NaiveBayes, ClassifierKind::Svm,
                                            ClassifierKind::RandomForest};
  std::filesystem::path out = "results";

  /// Applies the keys present in `j` (variants, masks, classifiers, folds,
  /// pca_k, seed, select, importance, corpus, features, sessions, mm, out).
  void apply_json(const nlohmann::json& j);
  /// Throws ValidationError on out-of-range values; warns on unusual pca_k.
  void validate() const;
};

/// Writes one feature row per video. Returns the number of videos.
std::size_t cmd_extract(const std::filesystem::path& corpus, const std::filesystem::path& out);

/// Builds, zero-filters and writes the dataset CSV of one variant.
Dataset cmd_dataset(const std::filesystem::path& features, const std::filesystem::path& sessions,
                    const std::filesystem::path& mm, Variant variant);

struct RunStatus {
  std::string variant;
  std::string mask;
  std::string classifier;
  std::string status;  // "completed", "skipped" or "failed"
  std::string reason;
};

/// Runs every (variant, mask, classifier) combination and writes the report
/// files under config.out. Returns the per-run statuses (also written to
/// manifest.json).
std::vector<RunStatus> cmd_run(const RunConfig& config);

nlohmann::json cmd_baselines(const std::filesystem::path& sessions, Variant variant);

/// Exit code 0 iff no requested run failed. Runs skipped for a recorded data
/// reason (for example MM requested without MM values) do not count as failures.
int main(int argc, char** argv);

}  // namespace kgp::cli
