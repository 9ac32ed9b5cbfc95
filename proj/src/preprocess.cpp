#include "kgp/preprocess.hpp"

namespace kgp {

FoldPipeline FoldPipeline::fit(const Dataset& ds, std::span<const Eigen::Index> train_rows,
                               Eigen::Index pca_k) {
  FoldPipeline p;
  p.input_cols_ = ds.features.cols();
  const std::vector<Eigen::Index> rows(train_rows.begin(), train_rows.end());
  const Eigen::MatrixXd train = ds.features(rows, Eigen::all);
  p.scaler_ = MinMaxScalerD::fit(train);
  const Eigen::MatrixXd scaled = p.scaler_.apply(train);
  p.slide_cols_ = ds.columns_in(Group::EmbedSlide);
  p.srt_cols_ = ds.columns_in(Group::EmbedSrt);
  if (!p.slide_cols_.empty()) p.slide_pca_ = PcaD::fit(scaled(Eigen::all, p.slide_cols_), pca_k);
  if (!p.srt_cols_.empty()) p.srt_pca_ = PcaD::fit(scaled(Eigen::all, p.srt_cols_), pca_k);

  bool slide_done = false, srt_done = false;
  for (const auto& c : ds.columns) {
    if (c.group == Group::EmbedSlide || c.group == Group::EmbedSrt) {
      bool& done = c.group == Group::EmbedSlide ? slide_done : srt_done;
      if (done) continue;
      done = true;
      const std::string base = c.group == Group::EmbedSlide ? "embed_slide" : "embed_srt";
      for (Eigen::Index k = 0; k < pca_k; ++k)
        p.output_.push_back({base + ".pc" + std::to_string(k), c.group});
      continue;
    }
    p.output_.push_back(c);
  }
  return p;
}

Eigen::MatrixXd FoldPipeline::transform(const Dataset& ds, std::span<const Eigen::Index> rows) const {
  if (ds.features.cols() != input_cols_) throw DimensionError("pipeline input width mismatch");
  const std::vector<Eigen::Index> idx(rows.begin(), rows.end());
  const Eigen::MatrixXd scaled = scaler_.apply(ds.features(idx, Eigen::all));
  Eigen::MatrixXd out(scaled.rows(), static_cast<Eigen::Index>(output_.size()));
  Eigen::MatrixXd slide, srt;
  if (slide_pca_) slide = slide_pca_->apply(scaled(Eigen::all, slide_cols_));
  if (srt_pca_) srt = srt_pca_->apply(scaled(Eigen::all, srt_cols_));
  Eigen::Index o = 0, slide_k = 0, srt_k = 0;
  for (std::size_t c = 0; c < ds.columns.size(); ++c) {
    const Group g = ds.columns[c].group;
    if (g == Group::EmbedSlide) {
      if (slide_k++ == 0) {
        out.middleCols(o, slide.cols()) = slide;
        o += slide.cols();
      }
    } else if (g == Group::EmbedSrt) {
      if (srt_k++ == 0) {
        out.middleCols(o, srt.cols()) = srt;
        o += srt.cols();
      }
    } else {
      out.col(o++) = scaled.col(static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

Eigen::MatrixXd FoldPipeline::transform(const Dataset& ds) const {
  std::vector<Eigen::Index> all(static_cast<std::size_t>(ds.rows()));
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Eigen::Index>(i);
  return transform(ds, all);
}

nlohmann::json FoldPipeline::to_json(const Dataset& ds) const {
  nlohmann::json j;
  auto& scaler = j["scaler"];
  for (std::size_t c = 0; c < ds.columns.size(); ++c) {
    const auto i = static_cast<Eigen::Index>(c);
    scaler.push_back({{"column", ds.columns[c].name},
                      {"min", scaler_.mins()(i)},
                      {"max", scaler_.maxes()(i)}});
  }
  auto pca_json = [](const PcaD& p) {
    nlohmann::json pj;
    pj["requested_components"] = p.requested_components();
    pj["effective_components"] = p.effective_components();
    pj["explained_variance"] = p.explained_variance();
    pj["mean"] = std::vector<double>(p.mean().begin(), p.mean().end());
    for (Eigen::Index c = 0; c < p.components().cols(); ++c)
      pj["components"].push_back(
          std::vector<double>(p.components().col(c).begin(), p.components().col(c).end()));
    return pj;
  };
  if (slide_pca_) j["pca_embed_slide"] = pca_json(*slide_pca_);
  if (srt_pca_) j["pca_embed_srt"] = pca_json(*srt_pca_);
  j["dropped_columns"] = ds.dropped_columns;
  return j;
}

}  // namespace kgp
