#pragma once

#include <array>
#include <string_view>

#include "kgp/ingest.hpp"
#include "kgp/schema.hpp"

namespace kgp {

/// Lexicon value when listed, else a vowel-group estimate; hyphenated words
/// not in the lexicon sum their parts. Throws std::invalid_argument on "".
int count_syllables(std::string_view word, const Lexicon& lexicon);

/// Vowel-group estimate alone (a, e, i, o, u, y groups, minus a silent final
/// "e" not preceded by "l", at least 1).
int estimate_syllables(std::string_view word);

/// Greedy longest-prefix split into >= 2 lexicon words of >= 3 letters.
/// Hyphenated words are compounds when at least two parts are listed.
bool is_compound(std::string_view word, const Lexicon& lexicon);

/// Difficult (complex) word: >= 3 syllables after stripping one of the
/// suffixes "ing", "ed", "es", and neither a name nor a compound.
/// `capitalized_interior` marks a capitalized token that is not
/// sentence-initial (the name proxy).
bool is_difficult(std::string_view word, const Lexicon& lexicon,
                  bool capitalized_interior = false);

struct TextCounts {
  long letters = 0;
  long words = 0;
  long sentences = 0;
  long syllables = 0;
  long polysyllables = 0;  // >= 3 syllables
  long long_words = 0;     // >= 4 syllables
  long difficult_words = 0;
};

TextCounts count_text(const AnnotatedDocument& doc, const Lexicon& lexicon);

struct ReadabilityIndices {
  double flesch_reading_ease = 0;
  double flesch_kincaid_grade = 0;
  double gunning_fog = 0;
  double smog = 0;
  double coleman_liau = 0;
  double ari = 0;
  bool degenerate = false;  // no words or no sentences; all indices are 0

  std::array<double, 6> as_array() const {
    return {flesch_reading_ease, flesch_kincaid_grade, gunning_fog, smog, coleman_liau, ari};
  }
};

ReadabilityIndices readability_indices(const TextCounts& counts);

/// The six indices of one modality.
FeatureGroup readability_features(const AnnotatedDocument& doc, const Lexicon& lexicon);

}  // namespace kgp
