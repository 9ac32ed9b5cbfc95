#include "kgp/semantic.hpp"

namespace kgp {

SemanticGroup semantic_group(const SentenceEmbeddings& slide, const SentenceEmbeddings& srt) {
  SemanticGroup g;
  g.embed_slide = centroid(slide.vectors);
  g.embed_srt = centroid(srt.vectors);
  g.dist_embed = cosine_distance(g.embed_slide, g.embed_srt);
  g.avg_pairdist_sli = mean_pairwise_distance(slide.vectors);
  g.avg_pairdist_tra = mean_pairwise_distance(srt.vectors);
  g.diff_pairdist = g.avg_pairdist_sli - g.avg_pairdist_tra;
  return g;
}

FeatureGroup SemanticGroup::to_features() const {
  FeatureGroup g;
  g.add_all(feature_names::semantic_scalars(),
            {dist_embed, avg_pairdist_sli, avg_pairdist_tra, diff_pairdist});
  g.add_block(std::string(feature_names::kEmbedSlide), embed_slide);
  g.add_block(std::string(feature_names::kEmbedSrt), embed_srt);
  return g;
}

}  // namespace kgp
