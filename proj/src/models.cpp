#include "kgp/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kgp/error.hpp"
#include "kgp/log.hpp"
#include "kgp/random.hpp"
#include "kgp/text.hpp"

namespace kgp {

std::string_view kind_name(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::NaiveBayes: return "NB";
    case ClassifierKind::RandomForest: return "RF";
    case ClassifierKind::Svm: return "SVM";
    case ClassifierKind::Mlp: return "MLP";
  }
  return "?";
}

ClassifierKind parse_kind(std::string_view s) {
  const std::string u = text::to_lower(s);
  if (u == "nb") return ClassifierKind::NaiveBayes;
  if (u == "rf") return ClassifierKind::RandomForest;
  if (u == "svm" || u == "smo") return ClassifierKind::Svm;
  if (u == "mlp") return ClassifierKind::Mlp;
  throw ValidationError("unknown classifier '" + std::string(s) + "' (expected NB, RF, SVM, MLP)");
}

TrainedModel::TrainedModel(ClassifierKind kind, std::vector<KgClass> classes, Eigen::Index features,
                           Params params)
    : kind_(kind), classes_(std::move(classes)), features_(features), params_(std::move(params)) {}

namespace {

constexpr double kLog2Pi = 1.8378770664093453;

// ---------------------------------------------------------------------------
// Gaussian naive Bayes

NaiveBayesModel train_nb(const ClassifierSpec& spec, const Eigen::MatrixXd& x,
                         const std::vector<int>& y, int n_classes) {
  NaiveBayesModel m;
  const Eigen::Index d = x.cols();
  m.means = Eigen::MatrixXd::Zero(n_classes, d);
  m.variances = Eigen::MatrixXd::Zero(n_classes, d);
  m.log_priors = Eigen::VectorXd::Zero(n_classes);
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(n_classes);
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    counts(y[static_cast<std::size_t>(r)]) += 1;
    m.means.row(y[static_cast<std::size_t>(r)]) += x.row(r);
  }
  for (int c = 0; c < n_classes; ++c) m.means.row(c) /= counts(c);
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const int c = y[static_cast<std::size_t>(r)];
    m.variances.row(c).array() += (x.row(r) - m.means.row(c)).array().square();
  }
  for (int c = 0; c < n_classes; ++c) {
    m.variances.row(c) /= counts(c);
    m.variances.row(c) = m.variances.row(c).cwiseMax(spec.nb_variance_floor);
    m.log_priors(c) = std::log(counts(c) / static_cast<double>(x.rows()));
  }
  return m;
}

Eigen::VectorXd nb_scores(const NaiveBayesModel& m, const Eigen::Ref<const Eigen::VectorXd>& x) {
  Eigen::VectorXd s(m.means.rows());
  for (Eigen::Index c = 0; c < m.means.rows(); ++c) {
    const auto var = m.variances.row(c).transpose().array();
    const auto diff = x.array() - m.means.row(c).transpose().array();
    s(c) = m.log_priors(c) - 0.5 * ((kLog2Pi + var.log()) + diff.square() / var).sum();
  }
  return s;
}

// ---------------------------------------------------------------------------
// Random forest (CART trees on bootstrap samples)

class TreeBuilder {
 public:
  TreeBuilder(const Eigen::MatrixXd& x, const std::vector<int>& y, int n_classes, int mtry, Rng& rng)
      : x_(x), y_(y), n_classes_(n_classes), mtry_(mtry), rng_(rng) {}

  std::vector<TreeNode> build(std::vector<Eigen::Index> rows) {
    nodes_.clear();
    grow(std::move(rows));
    return std::move(nodes_);
  }

 private:
  int grow(std::vector<Eigen::Index> rows) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    std::vector<double> counts(static_cast<std::size_t>(n_classes_), 0.0);
    for (auto r : rows) counts[static_cast<std::size_t>(y_[static_cast<std::size_t>(r)])] += 1;
    const double n = static_cast<double>(rows.size());
    std::vector<double> dist(counts.size());
    for (std::size_t c = 0; c < counts.size(); ++c) dist[c] = counts[c] / n;
    nodes_[static_cast<std::size_t>(id)].distribution = dist;
    const bool pure = std::count_if(counts.begin(), counts.end(), [](double c) { return c > 0; }) <= 1;
    if (pure || rows.size() < 2) return id;

    int best_feature = -1;
    double best_threshold = 0, best_impurity = std::numeric_limits<double>::infinity();
    std::vector<int> features(static_cast<std::size_t>(x_.cols()));
    std::iota(features.begin(), features.end(), 0);
    int evaluated = 0;
    // Visit features in random order until mtry non-constant ones were tried.
    for (std::size_t i = 0; i < features.size() && evaluated < mtry_; ++i) {
      std::swap(features[i], features[i + rng_.index(features.size() - i)]);
      const int f = features[i];
      std::sort(rows.begin(), rows.end(), [&](Eigen::Index a, Eigen::Index b) {
        const double va = x_(a, f), vb = x_(b, f);
        return va < vb || (va == vb && a < b);
      });
      if (x_(rows.front(), f) == x_(rows.back(), f)) continue;
      ++evaluated;
      std::vector<double> left(counts.size(), 0.0), right = counts;
      for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
        const int c = y_[static_cast<std::size_t>(rows[k])];
        left[static_cast<std::size_t>(c)] += 1;
        right[static_cast<std::size_t>(c)] -= 1;
        const double v = x_(rows[k], f), next = x_(rows[k + 1], f);
        if (v == next) continue;
        const double nl = static_cast<double>(k + 1), nr = n - nl;
        double gl = 1, gr = 1;
        for (std::size_t j = 0; j < counts.size(); ++j) {
          gl -= (left[j] / nl) * (left[j] / nl);
          gr -= (right[j] / nr) * (right[j] / nr);
        }
        const double impurity = (nl * gl + nr * gr) / n;
        if (impurity < best_impurity) {
          best_impurity = impurity;
          best_feature = f;
          best_threshold = v + (next - v) / 2.0;
          if (best_threshold >= next) best_threshold = v;
        }
      }
    }
    if (best_feature < 0) return id;

    std::vector<Eigen::Index> lrows, rrows;
    for (auto r : rows) (x_(r, best_feature) <= best_threshold ? lrows : rrows).push_back(r);
    const int l = grow(std::move(lrows));
    const int r = grow(std::move(rrows));
    auto& node = nodes_[static_cast<std::size_t>(id)];
    node.feature = best_feature;
    node.threshold = best_threshold;
    node.left = l;
    node.right = r;
    return id;
  }

  const Eigen::MatrixXd& x_;
  const std::vector<int>& y_;
  int n_classes_;
  int mtry_;
  Rng& rng_;
  std::vector<TreeNode> nodes_;
};

RandomForestModel train_rf(const ClassifierSpec& spec, const Eigen::MatrixXd& x,
                           const std::vector<int>& y, int n_classes) {
  const int d = static_cast<int>(x.cols());
  int mtry = spec.rf_features > 0 ? spec.rf_features
                                  : static_cast<int>(std::floor(std::log2(std::max(d, 1)))) + 1;
  mtry = std::clamp(mtry, 1, std::max(d, 1));
  RandomForestModel m;
  const auto n = static_cast<std::size_t>(x.rows());
  for (int t = 0; t < spec.rf_trees; ++t) {
    Rng rng(mix_seed(spec.seed, static_cast<std::uint64_t>(t)));
    std::vector<Eigen::Index> sample(n);
    for (auto& s : sample) s = static_cast<Eigen::Index>(rng.index(n));
    TreeBuilder builder(x, y, n_classes, mtry, rng);
    m.trees.push_back(builder.build(std::move(sample)));
  }
  return m;
}

Eigen::VectorXd rf_scores(const RandomForestModel& m, int n_classes,
                          const Eigen::Ref<const Eigen::VectorXd>& x) {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n_classes);
  for (const auto& tree : m.trees) {
    int node = 0;
    while (tree[static_cast<std::size_t>(node)].feature >= 0) {
      const auto& nd = tree[static_cast<std::size_t>(node)];
      node = x(nd.feature) <= nd.threshold ? nd.left : nd.right;
    }
    const auto& dist = tree[static_cast<std::size_t>(node)].distribution;
    for (int c = 0; c < n_classes; ++c) s(c) += dist[static_cast<std::size_t>(c)];
  }
  return m.trees.empty() ? s : Eigen::VectorXd(s / static_cast<double>(m.trees.size()));
}

// ---------------------------------------------------------------------------
// Linear SVM, one-vs-one, solved with SMO (maximal violating pair).

SvmModel::Machine train_binary_svm(const ClassifierSpec& spec, const Eigen::MatrixXd& x,
                                   const Eigen::VectorXd& y) {
  const Eigen::Index n = x.rows();
  const double c_bound = spec.svm_c;
  const Eigen::MatrixXd k = x * x.transpose();
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd grad = Eigen::VectorXd::Constant(n, -1.0);
  auto q = [&](Eigen::Index i, Eigen::Index j) { return y(i) * y(j) * k(i, j); };
  const auto in_up = [&](Eigen::Index t) {
    return (y(t) > 0 && alpha(t) < c_bound) || (y(t) < 0 && alpha(t) > 0);
  };
  const auto in_low = [&](Eigen::Index t) {
    return (y(t) < 0 && alpha(t) < c_bound) || (y(t) > 0 && alpha(t) > 0);
  };
  constexpr double tau = 1e-12;
  long iter = 0;
  for (; iter < spec.svm_max_iterations; ++iter) {
    Eigen::Index i = -1, j = -1;
    double gmax = -std::numeric_limits<double>::infinity();
    double gmin = std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < n; ++t) {
      const double v = -y(t) * grad(t);
      if (in_up(t) && v > gmax) { gmax = v; i = t; }
      if (in_low(t) && v < gmin) { gmin = v; j = t; }
    }
    if (i < 0 || j < 0 || gmax - gmin < spec.svm_tolerance) break;

    const double old_ai = alpha(i), old_aj = alpha(j);
    if (y(i) != y(j)) {
      double quad = q(i, i) + q(j, j) + 2 * q(i, j);
      if (quad <= 0) quad = tau;
      const double delta = (-grad(i) - grad(j)) / quad;
      const double diff = alpha(i) - alpha(j);
      alpha(i) += delta;
      alpha(j) += delta;
      if (diff > 0) {
        if (alpha(j) < 0) { alpha(j) = 0; alpha(i) = diff; }
      } else if (alpha(i) < 0) {
        alpha(i) = 0;
        alpha(j) = -diff;
      }
      if (diff > 0) {
        if (alpha(i) > c_bound) { alpha(i) = c_bound; alpha(j) = c_bound - diff; }
      } else if (alpha(j) > c_bound) {
        alpha(j) = c_bound;
        alpha(i) = c_bound + diff;
      }
    } else {
      double quad = q(i, i) + q(j, j) - 2 * q(i, j);
      if (quad <= 0) quad = tau;
      const double delta = (grad(i) - grad(j)) / quad;
      const double sum = alpha(i) + alpha(j);
      alpha(i) -= delta;
      alpha(j) += delta;
      if (sum > c_bound) {
        if (alpha(i) > c_bound) { alpha(i) = c_bound; alpha(j) = sum - c_bound; }
      } else if (alpha(j) < 0) {
        alpha(j) = 0;
        alpha(i) = sum;
      }
      if (sum > c_bound) {
        if (alpha(j) > c_bound) { alpha(j) = c_bound; alpha(i) = sum - c_bound; }
      } else if (alpha(i) < 0) {
        alpha(i) = 0;
        alpha(j) = sum;
      }
    }
    const double di = alpha(i) - old_ai, dj = alpha(j) - old_aj;
    for (Eigen::Index t = 0; t < n; ++t) grad(t) += q(t, i) * di + q(t, j) * dj;
  }
  if (iter == spec.svm_max_iterations) warn("SVM solver hit the iteration limit before converging");

  double ub = std::numeric_limits<double>::infinity(), lb = -ub, free_sum = 0;
  long free_count = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double yg = y(t) * grad(t);
    if (alpha(t) >= c_bound) {
      if (y(t) < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (alpha(t) <= 0) {
      if (y(t) > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++free_count;
      free_sum += yg;
    }
  }
  SvmModel::Machine m;
  m.rho = free_count > 0 ? free_sum / static_cast<double>(free_count) : (ub + lb) / 2;
  m.weights = x.transpose() * (alpha.array() * y.array()).matrix();
  return m;
}

SvmModel train_svm(const ClassifierSpec& spec, const Eigen::MatrixXd& x, const std::vector<int>& y,
                   int n_classes) {
  SvmModel m;
  for (int a = 0; a < n_classes; ++a)
    for (int b = a + 1; b < n_classes; ++b) {
      std::vector<Eigen::Index> rows;
      for (std::size_t r = 0; r < y.size(); ++r)
        if (y[r] == a || y[r] == b) rows.push_back(static_cast<Eigen::Index>(r));
      Eigen::VectorXd sign(static_cast<Eigen::Index>(rows.size()));
      for (std::size_t r = 0; r < rows.size(); ++r)
        sign(static_cast<Eigen::Index>(r)) = y[static_cast<std::size_t>(rows[r])] == a ? 1.0 : -1.0;
      auto machine = train_binary_svm(spec, x(rows, Eigen::all), sign);
      machine.first = a;
      machine.second = b;
      m.machines.push_back(std::move(machine));
    }
  return m;
}

Eigen::VectorXd svm_scores(const SvmModel& m, int n_classes, const Eigen::Ref<const Eigen::VectorXd>& x) {
  Eigen::VectorXd votes = Eigen::VectorXd::Zero(n_classes);
  for (const auto& mc : m.machines) votes(mc.weights.dot(x) - mc.rho >= 0 ? mc.first : mc.second) += 1;
  return votes;
}

// ---------------------------------------------------------------------------
// Multi-layer perceptron: one sigmoid hidden layer, sigmoid outputs, squared
// error, online backpropagation with momentum.

Eigen::VectorXd sigmoid(const Eigen::VectorXd& z) {
  return (1.0 / (1.0 + (-z.array()).exp())).matrix();
}

struct MlpForward {
  Eigen::VectorXd hidden;  // with trailing bias 1
  Eigen::VectorXd output;
};

MlpForward mlp_forward(const MlpModel& m, const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Eigen::Index d = x.size();
  const Eigen::Index h = m.hidden.rows();
  MlpForward f;
  f.hidden.resize(h + 1);
  f.hidden.head(h) = sigmoid(m.hidden.leftCols(d) * x + m.hidden.col(d));
  f.hidden(h) = 1.0;
  f.output = sigmoid(m.output * f.hidden);
  return f;
}

double mlp_loss(const MlpModel& m, const Eigen::MatrixXd& x, const std::vector<int>& y) {
  double loss = 0;
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const auto f = mlp_forward(m, x.row(r).transpose());
    Eigen::VectorXd target = Eigen::VectorXd::Zero(f.output.size());
    target(y[static_cast<std::size_t>(r)]) = 1.0;
    loss += 0.5 * (target - f.output).squaredNorm();
  }
  return x.rows() ? loss / static_cast<double>(x.rows()) : 0.0;
}

MlpModel train_mlp(const ClassifierSpec& spec, const Eigen::MatrixXd& x, const std::vector<int>& y,
                   int n_classes) {
  const Eigen::Index d = x.cols();
  const Eigen::Index h =
      spec.mlp_hidden > 0 ? spec.mlp_hidden : (d + n_classes + 1) / 2;  // ceil((d + c) / 2)
  Rng rng(spec.seed);
  MlpModel m;
  m.hidden.resize(h, d + 1);
  m.output.resize(n_classes, h + 1);
  for (Eigen::Index i = 0; i < m.hidden.size(); ++i) m.hidden.data()[i] = rng.uniform(-0.05, 0.05);
  for (Eigen::Index i = 0; i < m.output.size(); ++i) m.output.data()[i] = rng.uniform(-0.05, 0.05);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(x.rows()));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  Eigen::MatrixXd dh = Eigen::MatrixXd::Zero(h, d + 1);
  Eigen::MatrixXd dout = Eigen::MatrixXd::Zero(n_classes, h + 1);
  Eigen::VectorXd input(d + 1);
  const double lr = spec.mlp_learning_rate, mom = spec.mlp_momentum;
  for (int epoch = 0; epoch < spec.mlp_epochs; ++epoch) {
    for (auto r : order) {
      input.head(d) = x.row(r).transpose();
      input(d) = 1.0;
      const auto f = mlp_forward(m, input.head(d));
      Eigen::VectorXd target = Eigen::VectorXd::Zero(n_classes);
      target(y[static_cast<std::size_t>(r)]) = 1.0;
      const Eigen::VectorXd delta_out =
          ((target - f.output).array() * f.output.array() * (1.0 - f.output.array())).matrix();
      const Eigen::VectorXd back = m.output.leftCols(h).transpose() * delta_out;
      const Eigen::VectorXd delta_hidden =
          (back.array() * f.hidden.head(h).array() * (1.0 - f.hidden.head(h).array())).matrix();
      dout = lr * delta_out * f.hidden.transpose() + mom * dout;
      dh = lr * delta_hidden * input.transpose() + mom * dh;
      m.output += dout;
      m.hidden += dh;
    }
    m.loss_history.push_back(mlp_loss(m, x, y));
  }
  return m;
}

Eigen::VectorXd mlp_scores(const MlpModel& m, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return mlp_forward(m, x).output;
}

}  // namespace

// ---------------------------------------------------------------------------

TrainedModel train(const ClassifierSpec& spec, const Eigen::MatrixXd& x, std::span<const KgClass> y) {
  if (static_cast<Eigen::Index>(y.size()) != x.rows())
    throw DimensionError("train: " + std::to_string(x.rows()) + " rows but " +
                         std::to_string(y.size()) + " labels");
  if (!x.allFinite()) throw ValidationError("train: non-finite feature value");
  std::vector<KgClass> classes(y.begin(), y.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  if (classes.size() < 2) throw ValidationError("train: need at least two classes");
  std::vector<int> yi;
  for (auto c : y)
    yi.push_back(static_cast<int>(std::lower_bound(classes.begin(), classes.end(), c) - classes.begin()));
  const int nc = static_cast<int>(classes.size());
  switch (spec.kind) {
    case ClassifierKind::NaiveBayes:
      return {spec.kind, classes, x.cols(), train_nb(spec, x, yi, nc)};
    case ClassifierKind::RandomForest:
      return {spec.kind, classes, x.cols(), train_rf(spec, x, yi, nc)};
    case ClassifierKind::Svm:
      return {spec.kind, classes, x.cols(), train_svm(spec, x, yi, nc)};
    case ClassifierKind::Mlp:
      return {spec.kind, classes, x.cols(), train_mlp(spec, x, yi, nc)};
  }
  throw ValidationError("train: unknown classifier kind");
}

Eigen::VectorXd class_scores(const TrainedModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != model.feature_count())
    throw DimensionError("predict: expected " + std::to_string(model.feature_count()) +
                         " features, got " + std::to_string(x.size()));
  const int nc = static_cast<int>(model.classes().size());
  return std::visit(
      [&](const auto& p) -> Eigen::VectorXd {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, NaiveBayesModel>) return nb_scores(p, x);
        else if constexpr (std::is_same_v<T, RandomForestModel>) return rf_scores(p, nc, x);
        else if constexpr (std::is_same_v<T, SvmModel>) return svm_scores(p, nc, x);
        else return mlp_scores(p, x);
      },
      model.params());
}

KgClass predict(const TrainedModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Eigen::VectorXd s = class_scores(model, x);
  Eigen::Index best = 0;
  for (Eigen::Index c = 1; c < s.size(); ++c)
    if (s(c) > s(best)) best = c;
  return model.classes()[static_cast<std::size_t>(best)];
}

std::vector<KgClass> predict_batch(const TrainedModel& model, const Eigen::MatrixXd& x) {
  if (x.cols() != model.feature_count())
    throw DimensionError("predict: expected " + std::to_string(model.feature_count()) +
                         " features, got " + std::to_string(x.cols()));
  std::vector<KgClass> out;
  out.reserve(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index r = 0; r < x.rows(); ++r) out.push_back(predict(model, x.row(r).transpose()));
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using nlohmann::json;

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows}};
}

Eigen::MatrixXd matrix_from(const json& j) {
  Eigen::MatrixXd m(j.at("rows").get<Eigen::Index>(), j.at("cols").get<Eigen::Index>());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const auto row = j.at("data").at(static_cast<std::size_t>(r)).get<std::vector<double>>();
    if (static_cast<Eigen::Index>(row.size()) != m.cols()) throw SchemaError("model JSON: ragged matrix");
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = row[static_cast<std::size_t>(c)];
  }
  return m;
}

json vector_json(const Eigen::VectorXd& v) { return std::vector<double>(v.begin(), v.end()); }

Eigen::VectorXd vector_from(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

json TrainedModel::to_json() const {
  json j;
  j["kind"] = kind_name(kind_);
  std::vector<std::string> cls;
  for (auto c : classes_) cls.emplace_back(class_name(c));
  j["classes"] = cls;
  j["features"] = features_;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, NaiveBayesModel>) {
          j["means"] = matrix_json(p.means);
          j["variances"] = matrix_json(p.variances);
          j["log_priors"] = vector_json(p.log_priors);
        } else if constexpr (std::is_same_v<T, RandomForestModel>) {
          json trees = json::array();
          for (const auto& tree : p.trees) {
            json nodes = json::array();
            for (const auto& n : tree)
              nodes.push_back({{"feature", n.feature},
                               {"threshold", n.threshold},
                               {"left", n.left},
                               {"right", n.right},
                               {"distribution", n.distribution}});
            trees.push_back({{"nodes", nodes}});
          }
          j["trees"] = trees;
        } else if constexpr (std::is_same_v<T, SvmModel>) {
          json machines = json::array();
          for (const auto& m : p.machines)
            machines.push_back({{"first", m.first},
                                {"second", m.second},
                                {"weights", vector_json(m.weights)},
                                {"rho", m.rho}});
          j["machines"] = machines;
        } else {
          j["hidden"] = matrix_json(p.hidden);
          j["output"] = matrix_json(p.output);
        }
      },
      params_);
  return j;
}

TrainedModel TrainedModel::from_json(const json& j) {
  try {
    const ClassifierKind kind = parse_kind(j.at("kind").get<std::string>());
    std::vector<KgClass> classes;
    for (const auto& c : j.at("classes")) {
      const auto name = c.get<std::string>();
      if (name == "Low") classes.push_back(KgClass::Low);
      else if (name == "Moderate") classes.push_back(KgClass::Moderate);
      else if (name == "High") classes.push_back(KgClass::High);
      else throw SchemaError("model JSON: unknown class '" + name + "'");
    }
    const auto features = j.at("features").get<Eigen::Index>();
    switch (kind) {
      case ClassifierKind::NaiveBayes: {
        NaiveBayesModel m{matrix_from(j.at("means")), matrix_from(j.at("variances")),
                          vector_from(j.at("log_priors"))};
        return {kind, classes, features, std::move(m)};
      }
      case ClassifierKind::RandomForest: {
        RandomForestModel m;
        for (const auto& t : j.at("trees")) {
          std::vector<TreeNode> nodes;
          for (const auto& n : t.at("nodes"))
            nodes.push_back({n.at("feature").get<int>(), n.at("threshold").get<double>(),
                             n.at("left").get<int>(), n.at("right").get<int>(),
                             n.at("distribution").get<std::vector<double>>()});
          m.trees.push_back(std::move(nodes));
        }
        return {kind, classes, features, std::move(m)};
      }
      case ClassifierKind::Svm: {
        SvmModel m;
        for (const auto& mc : j.at("machines"))
          m.machines.push_back({mc.at("first").get<int>(), mc.at("second").get<int>(),
                                vector_from(mc.at("weights")), mc.at("rho").get<double>()});
        return {kind, classes, features, std::move(m)};
      }
      case ClassifierKind::Mlp: {
        MlpModel m;
        m.hidden = matrix_from(j.at("hidden"));
        m.output = matrix_from(j.at("output"));
        return {kind, classes, features, std::move(m)};
      }
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("model JSON: ") + e.what());
  }
  throw SchemaError("model JSON: unknown kind");
}

}  // namespace kgp
