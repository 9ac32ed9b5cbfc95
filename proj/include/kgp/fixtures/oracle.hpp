#pragma once

#include <map>
#include <string>

#include <Eigen/Dense>

#include "kgp/ingest.hpp"

namespace kgp::fixtures {

/// Naive recomputation of the video-level features for small documents
/// (a handful of sentences). Shares no code with the extractors.
struct OracleFeatures {
  std::map<std::string, double> scalars;
  Eigen::VectorXd embed_slide;
  Eigen::VectorXd embed_srt;
};

OracleFeatures oracle_features(const LectureBundle& bundle, const Lexicon& lexicon,
                               const AoaTable& aoa, const StopwordList& stopwords);

/// Syntactic, readability and lexical features of one annotated document.
std::map<std::string, double> oracle_text_features(const AnnotatedDocument& doc,
                                                   const Lexicon& lexicon, const AoaTable& aoa,
                                                   const StopwordList& stopwords);

}  // namespace kgp::fixtures
