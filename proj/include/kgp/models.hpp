#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "kgp/dataset.hpp"

namespace kgp {

enum class ClassifierKind { NaiveBayes, RandomForest, Svm, Mlp };

std::string_view kind_name(ClassifierKind k);  // "NB", "RF", "SVM", "MLP"
/// Accepts NB, RF, SVM (or SMO), MLP, case-insensitively.
ClassifierKind parse_kind(std::string_view s);

/// Hyperparameters; the defaults are the toolkit defaults the experiments use.
struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::NaiveBayes;
  std::uint64_t seed = 1;

  double nb_variance_floor = 1e-9;

  int rf_trees = 100;
  int rf_features = 0;  // 0: floor(log2 d) + 1

  double svm_c = 1.0;
  double svm_tolerance = 1e-3;
  long svm_max_iterations = 1000000;

  int mlp_hidden = 0;  // 0: ceil((d + classes) / 2)
  double mlp_learning_rate = 0.3;
  double mlp_momentum = 0.2;
  int mlp_epochs = 500;

  static ClassifierSpec defaults(ClassifierKind kind, std::uint64_t seed = 1) {
    ClassifierSpec s;
    s.kind = kind;
    s.seed = seed;
    return s;
  }
};

struct NaiveBayesModel {
  Eigen::MatrixXd means;      // classes x features
  Eigen::MatrixXd variances;  // classes x features
  Eigen::VectorXd log_priors;
};

struct TreeNode {
  int feature = -1;  // -1 for leaves
  double threshold = 0;
  int left = -1;  // x[feature] <= threshold
  int right = -1;
  std::vector<double> distribution;  // class probabilities at the node
};

struct RandomForestModel {
  std::vector<std::vector<TreeNode>> trees;
};

/// One-vs-one linear machines; pair p separates classes first (f >= 0) and second.
struct SvmModel {
  struct Machine {
    int first = 0;
    int second = 1;
    Eigen::VectorXd weights;
    double rho = 0;
  };
  std::vector<Machine> machines;
};

struct MlpModel {
  Eigen::MatrixXd hidden;  // hidden x (features + 1), last column is the bias
  Eigen::MatrixXd output;  // classes x (hidden + 1)
  std::vector<double> loss_history;  // mean squared error after each epoch
};

class TrainedModel {
 public:
  using Params = std::variant<NaiveBayesModel, RandomForestModel, SvmModel, MlpModel>;

  TrainedModel(ClassifierKind kind, std::vector<KgClass> classes, Eigen::Index features,
               Params params);

  ClassifierKind kind() const { return kind_; }
  const std::vector<KgClass>& classes() const { return classes_; }
  Eigen::Index feature_count() const { return features_; }
  const Params& params() const { return params_; }

  nlohmann::json to_json() const;
  static TrainedModel from_json(const nlohmann::json& j);

 private:
  ClassifierKind kind_;
  std::vector<KgClass> classes_;  // ascending
  Eigen::Index features_;
  Params params_;
};

/// Throws ValidationError when fewer than two classes are present and
/// DimensionError when sizes disagree.
TrainedModel train(const ClassifierSpec& spec, const Eigen::MatrixXd& x,
                   std::span<const KgClass> y);

/// Per-class scores (higher is better), aligned with model.classes().
Eigen::VectorXd class_scores(const TrainedModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Argmax of class_scores; ties go to the earlier class (Low < Moderate < High).
KgClass predict(const TrainedModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);
std::vector<KgClass> predict_batch(const TrainedModel& model, const Eigen::MatrixXd& x);

}  // namespace kgp
