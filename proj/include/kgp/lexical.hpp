#pragma once

#include <array>

#include "kgp/ingest.hpp"
#include "kgp/schema.hpp"

namespace kgp {

/// Mean in-document relative frequency of the non-stopword tokens, gated by
/// lexicon membership. Plural nouns (NNS/NNPS) are folded to their lemma;
/// hyphenated words average the frequencies of their parts; tokens without
/// letters contribute 0.
double frequency_feature(const AnnotatedDocument& doc, const Lexicon& lexicon,
                         const StopwordList& stopwords = default_stopwords());

/// {min, mean, max} age of acquisition over lettered word tokens.
std::array<double, 3> aoa_features(const AnnotatedDocument& doc, const AoaTable& aoa);

/// total, avg per word, n1, n2, n3+, n_difficult, and the four ratios.
std::array<double, 10> syllable_features(const AnnotatedDocument& doc, const Lexicon& lexicon);

/// n_types, n_lemma_types, and both divided by the word count.
std::array<double, 4> variation_features(const AnnotatedDocument& doc);

/// The 18 lexical features of one modality.
FeatureGroup lexical_features(const AnnotatedDocument& doc, const Lexicon& lexicon,
                              const AoaTable& aoa,
                              const StopwordList& stopwords = default_stopwords());

}  // namespace kgp
