#include "kgp/lexical.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "kgp/readability.hpp"
#include "kgp/syntactic.hpp"
#include "kgp/text.hpp"

namespace kgp {

namespace {

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

std::string frequency_key(const Token& t) {
  if (t.xpos == "NNS" || t.xpos == "NNPS") return text::to_lower(t.lemma);
  return text::to_lower(t.form);
}

std::vector<std::string> word_parts(const std::string& word) {
  if (word.find('-') == std::string::npos) return {word};
  std::vector<std::string> parts;
  for (auto& p : text::split(word, '-'))
    if (!p.empty()) parts.push_back(std::move(p));
  return parts;
}

}  // namespace

double frequency_feature(const AnnotatedDocument& doc, const Lexicon& lexicon,
                         const StopwordList& stopwords) {
  std::vector<std::string> remaining;
  for (const auto& s : doc.sentences)
    for (const auto& t : s.tokens) {
      if (t.upos == Upos::PUNCT || stopwords.contains(t.form)) continue;
      remaining.push_back(text::has_letter(t.form) ? frequency_key(t) : std::string());
    }
  if (remaining.empty()) return 0.0;

  std::unordered_map<std::string, double> part_counts;
  for (const auto& w : remaining)
    if (!w.empty())
      for (const auto& p : word_parts(w)) part_counts[p] += 1;

  const double n = static_cast<double>(remaining.size());
  double sum = 0;
  for (const auto& w : remaining) {
    if (w.empty()) continue;
    const auto parts = word_parts(w);
    double f = 0;
    for (const auto& p : parts)
      if (lexicon.contains(p)) f += part_counts[p] / n;
    sum += parts.empty() ? 0.0 : f / static_cast<double>(parts.size());
  }
  return sum / n;
}

std::array<double, 3> aoa_features(const AnnotatedDocument& doc, const AoaTable& aoa) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0;
  long n = 0;
  for (const auto& s : doc.sentences)
    for (const auto& t : s.tokens) {
      if (t.upos == Upos::PUNCT || !text::has_letter(t.form)) continue;
      const double a = aoa.find(t.form).value_or(aoa.find(t.lemma).value_or(aoa.default_aoa));
      lo = std::min(lo, a);
      hi = std::max(hi, a);
      sum += a;
      ++n;
    }
  if (n == 0) return {0.0, 0.0, 0.0};
  return {lo, sum / static_cast<double>(n), hi};
}

std::array<double, 10> syllable_features(const AnnotatedDocument& doc, const Lexicon& lexicon) {
  double total = 0, one = 0, two = 0, three = 0, difficult = 0;
  for (const auto& s : doc.sentences)
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      const auto& t = s.tokens[i];
      if (t.upos == Upos::PUNCT || !text::has_letter(t.form)) continue;
      const int syl = count_syllables(t.form, lexicon);
      total += syl;
      (syl == 1 ? one : syl == 2 ? two : three) += 1;
      if (is_difficult(t.form, lexicon, i > 0 && text::is_capitalized(t.form))) difficult += 1;
    }
  const double words = static_cast<double>(word_count(doc));
  return {total,          ratio(total, words), one, two, three, difficult, ratio(one, words),
          ratio(two, words), ratio(three, words), ratio(difficult, words)};
}

std::array<double, 4> variation_features(const AnnotatedDocument& doc) {
  std::unordered_set<std::string> forms, lemmas;
  for (const auto& s : doc.sentences)
    for (const auto& t : s.tokens) {
      if (t.upos == Upos::PUNCT) continue;
      // A form's lemma is the one of its first occurrence.
      if (forms.insert(text::to_lower(t.form)).second) lemmas.insert(text::to_lower(t.lemma));
    }
  const double words = static_cast<double>(word_count(doc));
  const auto nt = static_cast<double>(forms.size());
  const auto nl = static_cast<double>(lemmas.size());
  return {nt, nl, ratio(nt, words), ratio(nl, words)};
}

FeatureGroup lexical_features(const AnnotatedDocument& doc, const Lexicon& lexicon,
                              const AoaTable& aoa, const StopwordList& stopwords) {
  std::vector<double> v{frequency_feature(doc, lexicon, stopwords)};
  for (double x : aoa_features(doc, aoa)) v.push_back(x);
  for (double x : syllable_features(doc, lexicon)) v.push_back(x);
  for (double x : variation_features(doc)) v.push_back(x);
  FeatureGroup g;
  g.add_all(feature_names::lexical(doc.modality), v);
  return g;
}

}  // namespace kgp
