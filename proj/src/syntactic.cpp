#include "kgp/syntactic.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "embedded_data.hpp"
#include "kgp/error.hpp"
#include "kgp/text.hpp"

namespace kgp {

namespace {

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

}  // namespace

std::size_t word_count(const Sentence& s) {
  return static_cast<std::size_t>(std::count_if(s.tokens.begin(), s.tokens.end(),
                                                [](const Token& t) { return t.upos != Upos::PUNCT; }));
}

std::size_t word_count(const AnnotatedDocument& doc) {
  std::size_t n = 0;
  for (const auto& s : doc.sentences) n += word_count(s);
  return n;
}

FeatureGroup word_type_features(const AnnotatedDocument& doc) {
  std::array<double, kUposCount> counts{};
  for (const auto& s : doc.sentences)
    for (const auto& t : s.tokens) counts[static_cast<std::size_t>(t.upos)] += 1;
  const double words = static_cast<double>(word_count(doc));
  const double sentences = static_cast<double>(doc.sentences.size());

  std::vector<double> v;
  for (double c : counts) {
    v.push_back(c);
    v.push_back(ratio(c, words));
    v.push_back(ratio(c, sentences));
  }
  const auto at = [&](Upos u) { return counts[static_cast<std::size_t>(u)]; };
  v.push_back(ratio(at(Upos::NOUN) + at(Upos::PROPN) + at(Upos::PRON), words));
  v.push_back(at(Upos::VERB));
  v.push_back(ratio(at(Upos::VERB), words));
  v.push_back(ratio(at(Upos::VERB), sentences));

  FeatureGroup g;
  g.add_all(feature_names::word_types(doc.modality), v);
  return g;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::array<std::string_view, kTenseCount> kTenseNames = {
    "present_simple", "present_progressive", "present_perfect", "present_perfect_progressive",
    "past_simple",    "past_progressive",    "past_perfect",    "past_perfect_progressive",
    "future_simple",  "future_progressive",  "future_perfect"};

bool is_verb_tag(std::string_view xpos) {
  return xpos == "MD" || xpos == "VB" || xpos == "VBD" || xpos == "VBG" || xpos == "VBN" ||
         xpos == "VBP" || xpos == "VBZ";
}

bool is_will(const Token& t) {
  if (t.xpos != "MD") return false;
  const std::string f = text::to_lower(t.form);
  return f == "will" || f == "shall" || f == "'ll" || f == "wo" || text::to_lower(t.lemma) == "will";
}

bool matches(const TenseRules::Element& e, const Token& t) {
  if (std::find(e.tags.begin(), e.tags.end(), t.xpos) == e.tags.end()) return false;
  switch (e.cls) {
    case TenseRules::VerbClass::Will: return is_will(t);
    case TenseRules::VerbClass::Have: return text::to_lower(t.lemma) == "have";
    case TenseRules::VerbClass::Be: return text::to_lower(t.lemma) == "be";
    case TenseRules::VerbClass::Any: return true;
  }
  return false;
}

}  // namespace

std::string_view tense_name(Tense t) { return kTenseNames[static_cast<std::size_t>(t)]; }

std::vector<Clause> split_clauses(const Sentence& sentence) {
  std::vector<Clause> out;
  const std::span<const Token> all(sentence.tokens);
  std::size_t start = 0;
  for (std::size_t i = 0; i <= all.size(); ++i) {
    if (i == all.size() || all[i].form == "," || all[i].form == ";") {
      if (i > start) out.push_back(all.subspan(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

TenseRules TenseRules::parse(std::string_view tsv) {
  TenseRules table;
  long lineno = 0;
  for (const auto& raw : text::split(tsv, '\n')) {
    ++lineno;
    const std::string line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto cols = text::split(line, '\t');
    if (cols.size() != 3) throw ParseError("tense rules: expected 3 tab-separated columns", lineno);
    Rule rule;
    for (const auto& el : text::split_whitespace(cols[0])) {
      const auto colon = el.find(':');
      if (colon == std::string::npos) throw ParseError("tense rules: element '" + el + "'", lineno);
      const std::string cls = el.substr(0, colon);
      Element e;
      if (cls == "will") e.cls = VerbClass::Will;
      else if (cls == "have") e.cls = VerbClass::Have;
      else if (cls == "be") e.cls = VerbClass::Be;
      else if (cls == "any") e.cls = VerbClass::Any;
      else throw ParseError("tense rules: unknown verb class '" + cls + "'", lineno);
      e.tags = text::split(el.substr(colon + 1), '|');
      rule.pattern.push_back(std::move(e));
    }
    if (rule.pattern.empty()) throw ParseError("tense rules: empty pattern", lineno);
    const auto tense = std::find(kTenseNames.begin(), kTenseNames.end(), text::trim(cols[1]));
    if (tense == kTenseNames.end()) throw ParseError("tense rules: unknown tense '" + cols[1] + "'", lineno);
    rule.label.tense = static_cast<Tense>(tense - kTenseNames.begin());
    const std::string voice = text::trim(cols[2]);
    if (voice == "active") rule.label.voice = Voice::Active;
    else if (voice == "passive") rule.label.voice = Voice::Passive;
    else throw ParseError("tense rules: unknown voice '" + voice + "'", lineno);
    table.rules_.push_back(std::move(rule));
  }
  std::stable_sort(table.rules_.begin(), table.rules_.end(), [](const Rule& a, const Rule& b) {
    return a.pattern.size() > b.pattern.size();
  });
  return table;
}

const TenseRules& TenseRules::builtin() {
  static const TenseRules rules = parse(embedded::kTenseRules);
  return rules;
}

std::optional<TenseLabel> TenseRules::detect(Clause clause) const {
  std::vector<const Token*> verbs;
  for (const auto& t : clause)
    if (is_verb_tag(t.xpos)) verbs.push_back(&t);
  for (std::size_t start = 0; start < verbs.size(); ++start) {
    for (const auto& rule : rules_) {
      if (start + rule.pattern.size() > verbs.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; ok && k < rule.pattern.size(); ++k)
        ok = matches(rule.pattern[k], *verbs[start + k]);
      if (ok) return rule.label;
    }
  }
  return std::nullopt;
}

std::optional<TenseLabel> detect_tense(Clause clause, const TenseRules& rules) {
  return rules.detect(clause);
}

FeatureGroup tense_features(const AnnotatedDocument& doc, const TenseRules& rules) {
  std::array<std::array<double, 2>, kTenseCount> counts{};
  double total = 0;
  for (const auto& s : doc.sentences)
    for (const auto clause : split_clauses(s))
      if (const auto label = rules.detect(clause)) {
        counts[static_cast<std::size_t>(label->tense)][static_cast<std::size_t>(label->voice)] += 1;
        total += 1;
      }
  std::vector<double> v;
  for (const auto& row : counts)
    for (double c : row) {
      v.push_back(c);
      v.push_back(ratio(c, total));
    }
  FeatureGroup g;
  g.add_all(feature_names::tenses(doc.modality), v);
  return g;
}

// ---------------------------------------------------------------------------

namespace {

void count_phrases(const ParseTree& node, std::map<std::string, double>& counts) {
  if (node.is_leaf()) return;
  ++counts[base_label(node.label)];
  for (const auto& c : node.children) count_phrases(c, counts);
}

}  // namespace

FeatureGroup phrase_features(const AnnotatedDocument& doc) {
  std::map<std::string, double> counts;
  for (const auto& s : doc.sentences)
    if (s.tree) count_phrases(*s.tree, counts);
  double total = 0;
  for (auto p : feature_names::kPhraseTypes) total += counts[std::string(p)];
  const double sentences = static_cast<double>(doc.sentences.size());
  std::vector<double> v;
  for (auto p : feature_names::kPhraseTypes) {
    const double c = counts[std::string(p)];
    v.push_back(c);
    v.push_back(ratio(c, total));
    v.push_back(ratio(c, sentences));
  }
  v.push_back(ratio(total, sentences));
  FeatureGroup g;
  g.add_all(feature_names::phrases(doc.modality), v);
  return g;
}

FeatureGroup other_syntactic_features(const AnnotatedDocument& doc) {
  const double sentences = static_cast<double>(doc.sentences.size());
  double trigrams = 0, tetragrams = 0, chars = 0, words = 0, questions = 0;
  double min_w = 0, max_w = 0;
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    const auto& s = doc.sentences[i];
    const double n = static_cast<double>(s.tokens.size());
    trigrams += std::max(0.0, n - 2);
    tetragrams += std::max(0.0, n - 3);
    for (const auto& t : s.tokens) chars += static_cast<double>(text::utf8_length(t.form));
    const double w = static_cast<double>(word_count(s));
    words += w;
    min_w = i == 0 ? w : std::min(min_w, w);
    max_w = i == 0 ? w : std::max(max_w, w);
    if (!s.tokens.empty() && s.tokens.back().form == "?") questions += 1;
  }
  const double expressions = sentences - questions;
  FeatureGroup g;
  g.add_all(feature_names::other_syntax(doc.modality),
            {ratio(trigrams, sentences), ratio(tetragrams, sentences), chars, words, min_w,
             ratio(words, sentences), max_w, sentences, questions, expressions,
             ratio(questions, sentences), ratio(expressions, sentences)});
  return g;
}

FeatureGroup syntactic_features(const AnnotatedDocument& doc, const TenseRules& rules) {
  FeatureGroup g;
  for (auto&& part : {word_type_features(doc), tense_features(doc, rules), phrase_features(doc),
                      other_syntactic_features(doc)})
    g.scalars.insert(g.scalars.end(), part.scalars.begin(), part.scalars.end());
  return g;
}

}  // namespace kgp
