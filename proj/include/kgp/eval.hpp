#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "kgp/dataset.hpp"
#include "kgp/models.hpp"

namespace kgp {

/// Per-class values are indexed by KgClass (Low, Moderate, High).
struct Metrics {
  std::array<double, kClassCount> precision{};
  std::array<double, kClassCount> recall{};
  std::array<double, kClassCount> f1{};
  double macro_precision = 0;
  double macro_recall = 0;
  double macro_f1 = 0;
  double accuracy = 0;
  Eigen::Matrix3i confusion = Eigen::Matrix3i::Zero();  // rows truth, cols predicted
  long samples = 0;

  nlohmann::json to_json() const;
};

Metrics compute_metrics(std::span<const KgClass> truth, std::span<const KgClass> predicted);

/// Unweighted mean of every score; confusion matrices and sample counts are summed.
Metrics average_metrics(std::span<const Metrics> folds);

// ---------------------------------------------------------------------------
// Baselines

struct BaselineResult {
  Metrics metrics;
  std::vector<std::string> ids;  // video ids (V22) or "participant/video" (V111)
  std::vector<KgClass> truth;
  std::vector<KgClass> predicted;
};

/// Leave-one-participant-out mean per (participant, video), classified with
/// the z-scale of the per-video means; per-video majority vote (ties go to
/// the earlier class) compared with the video labels.
BaselineResult baseline_v22(const SessionTable& sessions);

/// Mean of the participant's other sessions, classified with the z-scale of
/// all sessions.
BaselineResult baseline_v111(const SessionTable& sessions);

// ---------------------------------------------------------------------------
// Drop-column importance

/// Columns removed together when a feature is dropped.
struct FeatureUnit {
  std::string name;
  Group group = Group::Txt;
  std::vector<Eigen::Index> columns;
};

/// One unit per column, except that each embedding block forms a single unit
/// (or is left out entirely when include_embeddings is false).
std::vector<FeatureUnit> importance_units(const std::vector<Column>& columns,
                                          bool include_embeddings);

struct ImportanceEntry {
  std::string feature;
  Group group = Group::Txt;
  double importance = 0;
};

struct ImportanceReport {
  double baseline = 0;                 // accuracy with every column
  std::vector<ImportanceEntry> entries;  // sorted by importance, descending; ties by name

  nlohmann::json to_json() const;
};

/// importance(u) = accuracy(all columns) - accuracy(all columns except u),
/// each model trained from scratch on `train` and scored on `validation`.
ImportanceReport drop_column_importance(const ClassifierSpec& spec, const Eigen::MatrixXd& train,
                                        std::span<const KgClass> train_labels,
                                        const Eigen::MatrixXd& validation,
                                        std::span<const KgClass> validation_labels,
                                        const std::vector<FeatureUnit>& units,
                                        std::size_t threads = 0);

/// Dataset-level form: fits the fold preprocessing on train_rows, then runs
/// the matrix form on the transformed rows.
ImportanceReport drop_column_importance(const ClassifierSpec& spec, const Dataset& ds,
                                        std::span<const Eigen::Index> train_rows,
                                        std::span<const Eigen::Index> validation_rows,
                                        Eigen::Index pca_k, bool include_embeddings = false,
                                        std::size_t threads = 0);

/// Per-feature mean over several reports (a feature missing from a report
/// counts as 0 there).
ImportanceReport average_reports(std::span<const ImportanceReport> reports);

/// Names with importance >= 0; all names (and a warning) when none qualify.
std::vector<std::string> select_features(const ImportanceReport& report);

// ---------------------------------------------------------------------------
// Cross-validation

struct CvOptions {
  Eigen::Index pca_k = 16;
  bool select = false;       // per-fold importance analysis and >= 0 selection
  bool importance = false;   // per-fold importance without selection
  std::size_t threads = 0;   // for the importance jobs; 0 = thread_count()
};

struct FoldResult {
  int fold = 0;
  bool skipped = false;
  std::string skip_reason;
  Metrics metrics;
  std::optional<ImportanceReport> importance;
  std::vector<std::string> kept;  // selected unit names when selection ran
  nlohmann::json preprocessing;
};

struct CvResult {
  Metrics mean;  // over folds that were not skipped
  std::vector<FoldResult> folds;
  int completed() const;
  /// Mean of the per-fold importance reports, when any were computed.
  std::optional<ImportanceReport> importance() const;
};

/// `ds` must already be masked. Throws ValidationError when every fold is skipped.
CvResult cross_validate(const ClassifierSpec& spec, const Dataset& ds, const FoldAssignment& folds,
                        const CvOptions& options = {});

/// Convenience: apply_mask, make_folds(k, seed) and cross_validate.
CvResult cross_validate(const ClassifierSpec& spec, const Dataset& ds, CategoryMask mask, int k,
                        std::uint64_t seed, const CvOptions& options = {});

// ---------------------------------------------------------------------------
// Reports

struct ResultRow {
  std::string category;    // e.g. "MM+TXT"
  std::string classifier;  // "-" for baselines
  std::optional<Metrics> metrics;  // empty for the random-guess row
  double accuracy_percent = 0;
};

ResultRow random_guess_row();
ResultRow baseline_row(Variant v, const Metrics& m);

/// Columns: category, classifier, Pr/Re/F1 per class and overall, accuracy in percent.
std::string results_csv(std::span<const ResultRow> rows);
nlohmann::json results_json(std::span<const ResultRow> rows);

/// Columns: type, feature, importance.
std::string importance_csv(const ImportanceReport& report, std::size_t top = 0);

}  // namespace kgp
