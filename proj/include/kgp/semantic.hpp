#pragma once

#include <Eigen/Dense>

#include "kgp/error.hpp"
#include "kgp/ingest.hpp"
#include "kgp/schema.hpp"

namespace kgp {

/// Element-wise mean of the rows. Throws ValidationError on zero rows.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> centroid(
    const Eigen::MatrixBase<Derived>& rows) {
  if (rows.rows() == 0) throw ValidationError("centroid of zero sentence vectors");
  return rows.colwise().mean().transpose();
}

/// 1 - cos(u, v). Throws DimensionError on size mismatch and
/// ValidationError when either vector is all zero.
template <typename A, typename B>
typename A::Scalar cosine_distance(const Eigen::MatrixBase<A>& u, const Eigen::MatrixBase<B>& v) {
  using Scalar = typename A::Scalar;
  if (u.size() != v.size()) throw DimensionError("cosine distance of vectors of unequal size");
  const Scalar nu = u.norm(), nv = v.norm();
  if (nu == Scalar(0) || nv == Scalar(0)) throw ValidationError("cosine distance of a zero vector");
  return Scalar(1) - u.dot(v) / (nu * nv);
}

/// Mean cosine distance over all unordered row pairs; 0 with fewer than two rows.
template <typename Derived>
typename Derived::Scalar mean_pairwise_distance(const Eigen::MatrixBase<Derived>& rows) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = rows.rows();
  if (n < 2) return Scalar(0);
  Scalar sum(0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      sum += cosine_distance(rows.row(i).transpose(), rows.row(j).transpose());
  return sum / Scalar(n * (n - 1) / 2);
}

struct SemanticGroup {
  Eigen::VectorXd embed_slide;
  Eigen::VectorXd embed_srt;
  double dist_embed = 0;
  double avg_pairdist_sli = 0;
  double avg_pairdist_tra = 0;
  double diff_pairdist = 0;

  FeatureGroup to_features() const;
};

SemanticGroup semantic_group(const SentenceEmbeddings& slide, const SentenceEmbeddings& srt);

}  // namespace kgp
