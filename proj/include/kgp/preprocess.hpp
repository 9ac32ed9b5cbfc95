#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "kgp/dataset.hpp"
#include "kgp/error.hpp"

namespace kgp {

/// Per-column affine map onto [0, 1] fitted on training rows. Constant
/// columns map to 0; values outside the fitted range are not clipped.
template <typename Scalar>
class MinMaxScaler {
 public:
  using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  MinMaxScaler() = default;
  MinMaxScaler(RowVector mins, RowVector maxes) : mins_(std::move(mins)), maxes_(std::move(maxes)) {}

  template <typename Derived>
  static MinMaxScaler fit(const Eigen::MatrixBase<Derived>& train) {
    if (train.rows() == 0) return MinMaxScaler(RowVector::Zero(train.cols()), RowVector::Zero(train.cols()));
    return MinMaxScaler(train.colwise().minCoeff(), train.colwise().maxCoeff());
  }

  template <typename Derived>
  Matrix apply(const Eigen::MatrixBase<Derived>& rows) const {
    if (rows.cols() != mins_.size()) throw DimensionError("scaler column count mismatch");
    Matrix out(rows.rows(), rows.cols());
    for (Eigen::Index c = 0; c < rows.cols(); ++c) {
      const Scalar range = maxes_(c) - mins_(c);
      if (range > Scalar(0))
        out.col(c) = (rows.col(c).array() - mins_(c)) / range;
      else
        out.col(c).setZero();
    }
    return out;
  }

  const RowVector& mins() const { return mins_; }
  const RowVector& maxes() const { return maxes_; }

 private:
  RowVector mins_;
  RowVector maxes_;
};

/// Principal component analysis by eigendecomposition of the covariance
/// (or of the Gram matrix when there are fewer rows than columns, which has
/// the same non-zero spectrum). Components whose variance is numerically
/// zero are dropped, so effective_components() may be below the request.
template <typename Scalar>
class Pca {
 public:
  using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Pca() = default;

  template <typename Derived>
  static Pca fit(const Eigen::MatrixBase<Derived>& train, Eigen::Index k) {
    if (k < 0) throw ValidationError("PCA target dimension must be non-negative");
    Pca p;
    p.requested_ = k;
    const Eigen::Index n = train.rows(), d = train.cols();
    p.mean_ = n > 0 ? RowVector(train.colwise().mean()) : RowVector::Zero(d);
    p.components_ = Matrix::Zero(d, 0);
    p.variances_ = Vector::Zero(0);
    if (n < 2 || d == 0) return p;

    const Matrix centered = train.rowwise() - p.mean_;
    const Scalar denom = Scalar(n - 1);
    Vector values;
    Matrix vectors;
    if (d <= n) {
      const Matrix cov = (centered.transpose() * centered) / denom;
      Eigen::SelfAdjointEigenSolver<Matrix> es(cov);
      values = es.eigenvalues().reverse();
      vectors = es.eigenvectors().rowwise().reverse();
    } else {
      const Matrix gram = (centered * centered.transpose()) / denom;
      Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
      values = es.eigenvalues().reverse();
      const Matrix u = es.eigenvectors().rowwise().reverse();
      vectors = Matrix::Zero(d, n);
      for (Eigen::Index i = 0; i < n; ++i)
        if (values(i) > Scalar(0))
          vectors.col(i) = centered.transpose() * u.col(i) / std::sqrt(values(i) * denom);
    }
    p.total_variance_ = values.cwiseMax(Scalar(0)).sum();
    const Scalar tol = std::max(values.size() ? values(0) : Scalar(0), Scalar(1)) *
                       Eigen::NumTraits<Scalar>::epsilon() * Scalar(std::max(n, d));
    Eigen::Index effective = 0;
    while (effective < std::min<Eigen::Index>(k, values.size()) && values(effective) > tol) ++effective;
    p.components_ = vectors.leftCols(effective);
    p.variances_ = values.head(effective);
    // Deterministic signs: the largest-magnitude loading of each component is positive.
    for (Eigen::Index c = 0; c < effective; ++c) {
      Eigen::Index arg = 0;
      p.components_.col(c).cwiseAbs().maxCoeff(&arg);
      if (p.components_(arg, c) < Scalar(0)) p.components_.col(c) *= Scalar(-1);
    }
    return p;
  }

  /// Projection onto the components, zero-padded to the requested width.
  template <typename Derived>
  Matrix apply(const Eigen::MatrixBase<Derived>& rows) const {
    if (rows.cols() != mean_.size()) throw DimensionError("PCA column count mismatch");
    Matrix out = Matrix::Zero(rows.rows(), requested_);
    if (components_.cols() > 0)
      out.leftCols(components_.cols()) = (rows.rowwise() - mean_) * components_;
    return out;
  }

  /// Share of total variance captured by the kept components (0 if none).
  Scalar explained_variance() const {
    return total_variance_ > Scalar(0) ? variances_.sum() / total_variance_ : Scalar(0);
  }

  Eigen::Index requested_components() const { return requested_; }
  Eigen::Index effective_components() const { return components_.cols(); }
  const Matrix& components() const { return components_; }  // d x effective
  const Vector& variances() const { return variances_; }
  const RowVector& mean() const { return mean_; }

 private:
  Eigen::Index requested_ = 0;
  RowVector mean_;
  Matrix components_;
  Vector variances_;
  Scalar total_variance_ = Scalar(0);
};

using MinMaxScalerD = MinMaxScaler<double>;
using PcaD = Pca<double>;

/// Per-fold preprocessing: Min-Max scaling of every input column, then PCA of
/// each embedding block. Fitted on training rows only.
class FoldPipeline {
 public:
  static FoldPipeline fit(const Dataset& ds, std::span<const Eigen::Index> train_rows,
                          Eigen::Index pca_k);

  Eigen::MatrixXd transform(const Dataset& ds, std::span<const Eigen::Index> rows) const;
  Eigen::MatrixXd transform(const Dataset& ds) const;

  /// Output layout: non-embedding columns in input order, each embedding
  /// block replaced by its components ("embed_slide.pc0", ...).
  const std::vector<Column>& output_columns() const { return output_; }

  const MinMaxScalerD& scaler() const { return scaler_; }
  const std::optional<PcaD>& slide_pca() const { return slide_pca_; }
  const std::optional<PcaD>& srt_pca() const { return srt_pca_; }

  /// Fitted parameters for the per-fold preprocessing record.
  nlohmann::json to_json(const Dataset& ds) const;

 private:
  MinMaxScalerD scaler_;
  std::optional<PcaD> slide_pca_, srt_pca_;
  std::vector<Eigen::Index> slide_cols_, srt_cols_;
  std::vector<Column> output_;
  Eigen::Index input_cols_ = 0;
};

}  // namespace kgp
