#include "kgp/readability.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kgp/syntactic.hpp"
#include "kgp/text.hpp"

namespace kgp {

namespace {

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

std::string letters_only(std::string_view word) {
  std::string out;
  for (char c : word)
    if (std::isalpha(static_cast<unsigned char>(c)))
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Returns the number of parts of a full greedy split, or 0.
int greedy_split(std::string_view rest, const Lexicon& lexicon, bool first) {
  if (rest.empty()) return 0;
  const std::size_t longest = first ? rest.size() - 1 : rest.size();
  for (std::size_t len = longest; len >= 3; --len) {
    if (!lexicon.contains(rest.substr(0, len))) continue;
    if (len == rest.size()) return 1;
    if (const int tail = greedy_split(rest.substr(len), lexicon, false)) return tail + 1;
  }
  return 0;
}

}  // namespace

int estimate_syllables(std::string_view word) {
  const std::string w = letters_only(word);
  int groups = 0;
  bool in_group = false;
  for (char c : w) {
    const bool v = is_vowel(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  if (ends_with(w, "e") && !ends_with(w, "le")) --groups;
  return std::max(groups, 1);
}

int count_syllables(std::string_view word, const Lexicon& lexicon) {
  if (word.empty()) throw std::invalid_argument("count_syllables: empty word");
  if (const auto* e = lexicon.find(word)) return e->syllables;
  if (word.find('-') != std::string_view::npos) {
    int total = 0;
    for (const auto& part : text::split(word, '-'))
      if (text::has_letter(part)) total += count_syllables(part, lexicon);
    return std::max(total, 1);
  }
  return estimate_syllables(word);
}

bool is_compound(std::string_view word, const Lexicon& lexicon) {
  const std::string w = text::to_lower(word);
  if (w.find('-') != std::string::npos) {
    int known = 0;
    for (const auto& part : text::split(w, '-'))
      if (!part.empty() && lexicon.contains(part)) ++known;
    return known >= 2;
  }
  return greedy_split(w, lexicon, true) >= 2;
}

bool is_difficult(std::string_view word, const Lexicon& lexicon, bool capitalized_interior) {
  if (capitalized_interior || !text::has_letter(word)) return false;
  const std::string w = text::to_lower(word);
  int syllables = 0;
  bool stripped = false;
  for (std::string_view suffix : {"ing", "ed", "es"}) {
    if (!ends_with(w, suffix) || w.size() - suffix.size() < 3) continue;
    const std::string stem = w.substr(0, w.size() - suffix.size());
    if (const auto* e = lexicon.find(stem))
      syllables = e->syllables;
    else if (const auto* e2 = lexicon.find(stem + "e"))
      syllables = e2->syllables;
    else
      syllables = estimate_syllables(stem);
    stripped = true;
    break;
  }
  if (!stripped) syllables = count_syllables(w, lexicon);
  return syllables >= 3 && !is_compound(w, lexicon);
}

TextCounts count_text(const AnnotatedDocument& doc, const Lexicon& lexicon) {
  TextCounts c;
  c.sentences = static_cast<long>(doc.sentences.size());
  for (const auto& s : doc.sentences) {
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      const auto& t = s.tokens[i];
      if (t.upos == Upos::PUNCT) continue;
      ++c.words;
      c.letters += static_cast<long>(text::count_alnum(t.form));
      if (!text::has_letter(t.form)) continue;
      const int syl = count_syllables(t.form, lexicon);
      c.syllables += syl;
      if (syl >= 3) ++c.polysyllables;
      if (syl >= 4) ++c.long_words;
      if (is_difficult(t.form, lexicon, i > 0 && text::is_capitalized(t.form))) ++c.difficult_words;
    }
  }
  return c;
}

ReadabilityIndices readability_indices(const TextCounts& c) {
  ReadabilityIndices r;
  if (c.words <= 0 || c.sentences <= 0) {
    r.degenerate = true;
    return r;
  }
  const double w = static_cast<double>(c.words);
  const double s = static_cast<double>(c.sentences);
  const double words_per_sentence = w / s;
  const double syllables_per_word = static_cast<double>(c.syllables) / w;
  r.flesch_reading_ease = 206.835 - 1.015 * words_per_sentence - 84.6 * syllables_per_word;
  r.flesch_kincaid_grade = 0.39 * words_per_sentence + 11.8 * syllables_per_word - 15.59;
  r.gunning_fog = 0.4 * (words_per_sentence + 100.0 * static_cast<double>(c.difficult_words) / w);
  r.smog = 1.0430 * std::sqrt(static_cast<double>(c.polysyllables) * 30.0 / s) + 3.1291;
  const double letters_per_100 = static_cast<double>(c.letters) / w * 100.0;
  const double sentences_per_100 = s / w * 100.0;
  r.coleman_liau = 0.0588 * letters_per_100 - 0.296 * sentences_per_100 - 15.8;
  r.ari = 4.71 * (static_cast<double>(c.letters) / w) + 0.5 * words_per_sentence - 21.43;
  return r;
}

FeatureGroup readability_features(const AnnotatedDocument& doc, const Lexicon& lexicon) {
  const auto r = readability_indices(count_text(doc, lexicon)).as_array();
  FeatureGroup g;
  g.add_all(feature_names::readability(doc.modality), {r.begin(), r.end()});
  return g;
}

}  // namespace kgp
