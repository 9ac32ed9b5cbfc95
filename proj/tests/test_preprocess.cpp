#include <doctest.h>

#include "kgp/dataset.hpp"
#include "kgp/preprocess.hpp"
#include "kgp/random.hpp"

using namespace kgp;

namespace {
Eigen::MatrixXd random_matrix(Rng& rng, Eigen::Index r, Eigen::Index c) {
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rng.normal() * static_cast<double>(1 + j % 4);
  return m;
}
}  // namespace

TEST_CASE("min-max scaling") {
  Eigen::MatrixXd x(3, 2);
  x << 2, 7, 4, 7, 6, 7;
  const auto s = MinMaxScalerD::fit(x);
  const Eigen::MatrixXd y = s.apply(x);
  CHECK(y.col(0) == Eigen::Vector3d(0, 0.5, 1));
  CHECK(y.col(1) == Eigen::Vector3d::Zero());
  Eigen::MatrixXd t(1, 2);
  t << 0, 9;
  CHECK(s.apply(t)(0, 0) == -0.5);
  CHECK(s.apply(t)(0, 1) == 0);

  // float instantiation
  Eigen::MatrixXf xf(2, 1);
  xf << 1, 3;
  CHECK(MinMaxScaler<float>::fit(xf).apply(xf)(1, 0) == 1.0f);
}

TEST_CASE("PCA basics") {
  Eigen::MatrixXd line(5, 2);
  for (int i = 0; i < 5; ++i) line.row(i) << i, 2 * i;
  const auto p = PcaD::fit(line, 1);
  CHECK(p.explained_variance() == doctest::Approx(1.0));
  CHECK(p.apply(line).cols() == 1);

  const auto zero = PcaD::fit(line, 0);
  CHECK(zero.apply(line).cols() == 0);
  CHECK(zero.explained_variance() == 0);

  // Rank below k: fewer effective components, zero-padded output.
  const auto padded = PcaD::fit(line, 2);
  CHECK(padded.effective_components() == 1);
  CHECK(padded.apply(line).col(1).isZero());
}

TEST_CASE("PCA: variance monotone in k and orthonormal components") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index rows = 20 + static_cast<Eigen::Index>(rng.index(60));
    const Eigen::Index cols = 10 + static_cast<Eigen::Index>(rng.index(60));
    const Eigen::MatrixXd m = random_matrix(rng, rows, cols);
    double prev = 0;
    for (Eigen::Index k : {3, 8, 16, 32}) {
      const auto p = PcaD::fit(m, k);
      CHECK(p.explained_variance() >= prev - 1e-12);
      prev = p.explained_variance();
      const auto& c = p.components();
      const Eigen::MatrixXd gram = c.transpose() * c;
      CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("PCA: Gram route matches the covariance route") {
  Rng rng(6);
  const Eigen::MatrixXd wide = random_matrix(rng, 8, 30);
  const auto p = PcaD::fit(wide, 5);
  // Covariance eigenvalues computed directly.
  const Eigen::MatrixXd centered = wide.rowwise() - wide.colwise().mean();
  const Eigen::MatrixXd cov = centered.transpose() * centered / 7.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  const Eigen::VectorXd ev = es.eigenvalues().reverse();
  for (Eigen::Index i = 0; i < 5; ++i) CHECK(p.variances()(i) == doctest::Approx(ev(i)).epsilon(1e-9));
  CHECK(p.explained_variance() == doctest::Approx(ev.head(5).sum() / ev.sum()).epsilon(1e-9));
}

TEST_CASE("fold pipeline never reads test rows") {
  Rng rng(9);
  const Eigen::Index dim = 6;
  const Eigen::Index rows = 12;
  Dataset ds;
  ds.features = random_matrix(rng, rows, 3 + 2 * dim);
  ds.columns = {{"a", Group::Txt}, {"b", Group::Txt}, {"m", Group::Mm}};
  for (Eigen::Index k = 0; k < dim; ++k) ds.columns.push_back({"embed_slide." + std::to_string(k), Group::EmbedSlide});
  for (Eigen::Index k = 0; k < dim; ++k) ds.columns.push_back({"embed_srt." + std::to_string(k), Group::EmbedSrt});
  for (Eigen::Index r = 0; r < rows; ++r) {
    ds.labels.push_back(static_cast<KgClass>(r % 3));
    ds.video_ids.push_back("v" + std::to_string(r));
  }
  std::vector<Eigen::Index> train, test;
  for (Eigen::Index r = 0; r < rows; ++r) (r % 4 == 0 ? test : train).push_back(r);

  const auto pipe = FoldPipeline::fit(ds, train, 3);
  Dataset mutated = ds;
  for (auto r : test) mutated.features.row(r).setConstant(1e6);
  const auto again = FoldPipeline::fit(mutated, train, 3);
  CHECK(pipe.to_json(ds).dump() == again.to_json(mutated).dump());
  CHECK(pipe.transform(ds, train) == again.transform(mutated, train));

  const auto& out = pipe.output_columns();
  REQUIRE(out.size() == 3 + 3 + 3);
  CHECK(out[3].name == "embed_slide.pc0");
  CHECK(out[8].name == "embed_srt.pc2");
  CHECK(pipe.transform(ds).cols() == 9);
}
