#include "kgp/fixtures/oracle.hpp"

#include <cmath>
#include <set>
#include <vector>

namespace kgp::fixtures {

namespace {

const char* const kTags[17] = {"adj", "adp", "adv", "aux", "cconj", "det", "intj", "noun", "num",
                               "part", "pron", "propn", "punct", "sconj", "sym", "verb", "x"};

std::string lower(const std::string& s) {
  std::string out;
  for (char c : s) out += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
  return out;
}

bool ascii_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool ascii_digit(char c) { return c >= '0' && c <= '9'; }
bool wide(char c) { return static_cast<unsigned char>(c) >= 0xC0; }

long alnum_count(const std::string& s) {
  long n = 0;
  for (char c : s)
    if (ascii_letter(c) || ascii_digit(c) || wide(c)) ++n;
  return n;
}

bool any_letter(const std::string& s) {
  for (char c : s)
    if (ascii_letter(c) || wide(c)) return true;
  return false;
}

long char_count(const std::string& s) {
  long n = 0;
  for (char c : s)
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  return n;
}

double div0(double a, double b) { return b == 0 ? 0.0 : a / b; }

bool is_punct(const Token& t) { return t.upos == Upos::PUNCT; }

std::vector<std::string> hyphen_parts(const std::string& w) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : w) {
    if (c == '-') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

const LexiconEntry* lex_find(const Lexicon& lex, const std::string& w) {
  auto it = lex.entries.find(lower(w));
  return it == lex.entries.end() ? nullptr : &it->second;
}

int vowel_groups(const std::string& word) {
  std::string w;
  for (char c : word)
    if (ascii_letter(c)) w += lower(std::string(1, c));
  int n = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool v = std::string("aeiouy").find(w[i]) != std::string::npos;
    const bool prev = i > 0 && std::string("aeiouy").find(w[i - 1]) != std::string::npos;
    if (v && !prev) ++n;
  }
  const bool silent_e = !w.empty() && w.back() == 'e' && !(w.size() >= 2 && w[w.size() - 2] == 'l');
  if (silent_e) --n;
  return n < 1 ? 1 : n;
}

int syllables(const std::string& w, const Lexicon& lex) {
  if (auto* e = lex_find(lex, w)) return e->syllables;
  if (w.find('-') != std::string::npos) {
    int total = 0;
    for (const auto& p : hyphen_parts(w))
      if (any_letter(p)) total += syllables(p, lex);
    return total < 1 ? 1 : total;
  }
  return vowel_groups(w);
}

// Every way of cutting w into lexicon words of at least three letters.
bool splits_into_words(const std::string& w, const Lexicon& lex, int parts_so_far) {
  if (w.empty()) return parts_so_far >= 2;
  for (std::size_t len = 3; len <= w.size(); ++len)
    if (lex_find(lex, w.substr(0, len)) && splits_into_words(w.substr(len), lex, parts_so_far + 1))
      return true;
  return false;
}

bool compound(const std::string& word, const Lexicon& lex) {
  const std::string w = lower(word);
  if (w.find('-') != std::string::npos) {
    int known = 0;
    for (const auto& p : hyphen_parts(w))
      if (!p.empty() && lex_find(lex, p)) ++known;
    return known >= 2;
  }
  return splits_into_words(w, lex, 0);
}

bool difficult(const std::string& word, bool interior_capital, const Lexicon& lex) {
  if (interior_capital || !any_letter(word)) return false;
  const std::string w = lower(word);
  int syl = -1;
  const char* suffixes[] = {"ing", "ed", "es"};
  for (const char* suf : suffixes) {
    const std::string s(suf);
    if (w.size() < s.size() + 3 || w.compare(w.size() - s.size(), s.size(), s) != 0) continue;
    const std::string stem = w.substr(0, w.size() - s.size());
    if (auto* e = lex_find(lex, stem)) syl = e->syllables;
    else if (auto* e2 = lex_find(lex, stem + "e")) syl = e2->syllables;
    else syl = vowel_groups(stem);
    break;
  }
  if (syl < 0) syl = syllables(w, lex);
  return syl >= 3 && !compound(w, lex);
}

bool is_verb_xpos(const std::string& x) {
  return x == "MD" || x == "VB" || x == "VBD" || x == "VBG" || x == "VBN" || x == "VBP" || x == "VBZ";
}

// Returns "<code>_<voice>" or "" for the clause.
std::string clause_tense(const std::vector<Token>& clause) {
  std::vector<Token> v;
  for (const auto& t : clause)
    if (is_verb_xpos(t.xpos)) v.push_back(t);
  auto will = [](const Token& t) {
    const std::string f = lower(t.form);
    return t.xpos == "MD" &&
           (f == "will" || f == "shall" || f == "'ll" || f == "wo" || lower(t.lemma) == "will");
  };
  auto have = [](const Token& t) { return lower(t.lemma) == "have"; };
  auto be = [](const Token& t) { return lower(t.lemma) == "be"; };
  auto pres = [](const Token& t) { return t.xpos == "VBZ" || t.xpos == "VBP"; };
  auto tag = [](const Token& t, const char* x) { return t.xpos == x; };

  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::size_t left = v.size() - i;
    const Token& a = v[i];
    if (left >= 4) {
      const Token &b = v[i + 1], &c = v[i + 2], &d = v[i + 3];
      if (will(a) && have(b) && tag(b, "VB") && be(c) && tag(c, "VBN") && tag(d, "VBN")) return "futperf_passive";
      if (will(a) && be(b) && tag(b, "VB") && be(c) && tag(c, "VBG") && tag(d, "VBN")) return "futprog_passive";
      if (have(a) && be(b) && tag(b, "VBN") && be(c) && tag(c, "VBG") && tag(d, "VBN")) {
        if (pres(a)) return "presperfprog_passive";
        if (tag(a, "VBD")) return "pastperfprog_passive";
      }
    }
    if (left >= 3) {
      const Token &b = v[i + 1], &c = v[i + 2];
      if (have(a) && be(b) && tag(b, "VBN") && tag(c, "VBN")) {
        if (pres(a)) return "presperf_passive";
        if (tag(a, "VBD")) return "pastperf_passive";
      }
      if (be(a) && be(b) && tag(b, "VBG") && tag(c, "VBN")) {
        if (pres(a)) return "presprog_passive";
        if (tag(a, "VBD")) return "pastprog_passive";
      }
      if (will(a) && be(b) && tag(b, "VB") && tag(c, "VBN")) return "fut_passive";
      if (have(a) && be(b) && tag(b, "VBN") && tag(c, "VBG")) {
        if (pres(a)) return "presperfprog_active";
        if (tag(a, "VBD")) return "pastperfprog_active";
      }
      if (will(a) && have(b) && tag(b, "VB") && tag(c, "VBN")) return "futperf_active";
      if (will(a) && be(b) && tag(b, "VB") && tag(c, "VBG")) return "futprog_active";
    }
    if (left >= 2) {
      const Token& b = v[i + 1];
      if (be(a) && tag(b, "VBN")) {
        if (pres(a)) return "pres_passive";
        if (tag(a, "VBD")) return "past_passive";
      }
      if (have(a) && tag(b, "VBN")) {
        if (pres(a)) return "presperf_active";
        if (tag(a, "VBD")) return "pastperf_active";
      }
      if (be(a) && tag(b, "VBG")) {
        if (pres(a)) return "presprog_active";
        if (tag(a, "VBD")) return "pastprog_active";
      }
      if (will(a) && tag(b, "VB")) return "fut_active";
    }
    if (pres(a)) return "pres_active";
    if (tag(a, "VBD")) return "past_active";
  }
  return "";
}

void count_labels(const ParseTree& t, std::map<std::string, double>& counts) {
  if (t.children.empty()) return;
  std::string label = t.label;
  if (!label.empty() && label[0] != '-') {
    std::size_t cut = label.size();
    for (std::size_t i = 1; i < label.size(); ++i)
      if (label[i] == '-' || label[i] == '=') {
        cut = i;
        break;
      }
    label = label.substr(0, cut);
  }
  counts[label] += 1;
  for (const auto& c : t.children) count_labels(c, counts);
}

}  // namespace

std::map<std::string, double> oracle_text_features(const AnnotatedDocument& doc,
                                                   const Lexicon& lexicon, const AoaTable& aoa,
                                                   const StopwordList& stopwords) {
  const std::string m = doc.modality == Modality::Slide ? "_sli" : "_tra";
  std::map<std::string, double> f;
  const double n_sent = static_cast<double>(doc.sentences.size());

  // Word counts.
  double words = 0;
  double tag_count[17] = {};
  for (const auto& s : doc.sentences)
    for (const auto& t : s.tokens) {
      tag_count[static_cast<int>(t.upos)] += 1;
      if (!is_punct(t)) words += 1;
    }
  for (int k = 0; k < 17; ++k) {
    const std::string tag = kTags[k];
    f["amount_" + tag + m] = tag_count[k];
    f["ratio_" + tag + m] = div0(tag_count[k], words);
    f["avg_" + tag + m] = div0(tag_count[k], n_sent);
  }
  f["noun_pronoun_ratio" + m] =
      div0(tag_count[static_cast<int>(Upos::NOUN)] + tag_count[static_cast<int>(Upos::PROPN)] +
               tag_count[static_cast<int>(Upos::PRON)],
           words);
  const double verbs = tag_count[static_cast<int>(Upos::VERB)];
  f["amount_main_verb" + m] = verbs;
  f["ratio_main_verb" + m] = div0(verbs, words);
  f["avg_main_verb" + m] = div0(verbs, n_sent);

  // Tenses.
  const char* codes[] = {"pres", "presprog", "presperf", "presperfprog", "past", "pastprog",
                         "pastperf", "pastperfprog", "fut", "futprog", "futperf"};
  std::map<std::string, double> tense;
  double detected = 0;
  for (const auto& s : doc.sentences) {
    std::vector<Token> clause;
    for (std::size_t i = 0; i <= s.tokens.size(); ++i) {
      if (i == s.tokens.size() || s.tokens[i].form == "," || s.tokens[i].form == ";") {
        if (!clause.empty()) {
          const std::string label = clause_tense(clause);
          if (!label.empty()) {
            tense[label] += 1;
            detected += 1;
          }
        }
        clause.clear();
      } else {
        clause.push_back(s.tokens[i]);
      }
    }
  }
  for (const char* c : codes)
    for (const char* voice : {"active", "passive"}) {
      const std::string key = std::string(c) + "_" + voice;
      f["amount_" + key + m] = tense[key];
      f["ratio_" + key + m] = div0(tense[key], detected);
    }

  // Phrases.
  const char* phrase_types[] = {"NP", "VP", "PP", "ADJP", "ADVP", "SBAR", "SBARQ",
                                "SQ", "WHNP", "WHADVP", "WHPP", "QP", "PRT", "INTJ"};
  std::map<std::string, double> labels;
  for (const auto& s : doc.sentences)
    if (s.tree) count_labels(*s.tree, labels);
  double phrase_total = 0;
  for (const char* p : phrase_types) phrase_total += labels[p];
  for (const char* p : phrase_types) {
    f[p + m] = labels[p];
    f["ratio_" + std::string(p) + m] = div0(labels[p], phrase_total);
    f["avg_" + std::string(p) + m] = div0(labels[p], n_sent);
  }
  f["avg_phrases_per_sentence" + m] = div0(phrase_total, n_sent);

  // Other syntax.
  double tri = 0, tetra = 0, chars = 0, questions = 0;
  std::vector<double> per_sentence;
  for (const auto& s : doc.sentences) {
    const double n = static_cast<double>(s.tokens.size());
    if (n > 2) tri += n - 2;
    if (n > 3) tetra += n - 3;
    double w = 0;
    for (const auto& t : s.tokens) {
      chars += static_cast<double>(char_count(t.form));
      if (!is_punct(t)) w += 1;
    }
    per_sentence.push_back(w);
    if (!s.tokens.empty() && s.tokens.back().form == "?") questions += 1;
  }
  double wmin = 0, wmax = 0;
  for (std::size_t i = 0; i < per_sentence.size(); ++i) {
    if (i == 0 || per_sentence[i] < wmin) wmin = per_sentence[i];
    if (i == 0 || per_sentence[i] > wmax) wmax = per_sentence[i];
  }
  f["avg_trigrams_per_sentence" + m] = div0(tri, n_sent);
  f["avg_tetragrams_per_sentence" + m] = div0(tetra, n_sent);
  f["sum_tok_len" + m] = chars;
  f["num_words" + m] = words;
  f["min_words_per_sentence" + m] = wmin;
  f["avg_words_per_sentence" + m] = div0(words, n_sent);
  f["max_words_per_sentence" + m] = wmax;
  f["num_sentences" + m] = n_sent;
  f["num_questions" + m] = questions;
  f["num_expressions" + m] = n_sent - questions;
  f["ratio_questions" + m] = div0(questions, n_sent);
  f["ratio_expressions" + m] = div0(n_sent - questions, n_sent);

  // Readability and syllable counts.
  double letters = 0, syl_total = 0, poly = 0, hard = 0, one = 0, two = 0, three = 0;
  for (const auto& s : doc.sentences)
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      const Token& t = s.tokens[i];
      if (is_punct(t)) continue;
      letters += static_cast<double>(alnum_count(t.form));
      if (!any_letter(t.form)) continue;
      const int syl = syllables(t.form, lexicon);
      syl_total += syl;
      if (syl >= 3) poly += 1;
      if (syl == 1) one += 1;
      else if (syl == 2) two += 1;
      else three += 1;
      const bool cap = i > 0 && t.form[0] >= 'A' && t.form[0] <= 'Z';
      if (difficult(t.form, cap, lexicon)) hard += 1;
    }
  double fre = 0, fk = 0, fog = 0, smog = 0, cl = 0, ari = 0;
  if (words > 0 && n_sent > 0) {
    fre = 206.835 - 1.015 * (words / n_sent) - 84.6 * (syl_total / words);
    fk = 0.39 * (words / n_sent) + 11.8 * (syl_total / words) - 15.59;
    fog = 0.4 * ((words / n_sent) + 100.0 * (hard / words));
    smog = 1.0430 * std::sqrt(poly * 30.0 / n_sent) + 3.1291;
    cl = 0.0588 * (letters / words * 100.0) - 0.296 * (n_sent / words * 100.0) - 15.8;
    ari = 4.71 * (letters / words) + 0.5 * (words / n_sent) - 21.43;
  }
  f["flesch_reading_ease" + m] = fre;
  f["flesch_kincaid_grade" + m] = fk;
  f["gunning_fog" + m] = fog;
  f["smog" + m] = smog;
  f["coleman_liau" + m] = cl;
  f["ari" + m] = ari;

  // Frequency.
  std::vector<std::string> kept;
  for (const auto& s : doc.sentences)
    for (const auto& t : s.tokens) {
      if (is_punct(t) || stopwords.words.count(lower(t.form))) continue;
      if (!any_letter(t.form)) {
        kept.push_back("");
        continue;
      }
      kept.push_back(t.xpos == "NNS" || t.xpos == "NNPS" ? lower(t.lemma) : lower(t.form));
    }
  double freq = 0;
  if (!kept.empty()) {
    const double n = static_cast<double>(kept.size());
    for (const auto& w : kept) {
      if (w.empty()) continue;
      std::vector<std::string> parts;
      for (const auto& p : hyphen_parts(w))
        if (!p.empty()) parts.push_back(p);
      double sum = 0;
      for (const auto& p : parts) {
        if (!lex_find(lexicon, p)) continue;
        double occurrences = 0;
        for (const auto& other : kept) {
          if (other.empty()) continue;
          for (const auto& q : hyphen_parts(other))
            if (q == p) occurrences += 1;
        }
        sum += occurrences / n;
      }
      if (!parts.empty()) freq += sum / static_cast<double>(parts.size());
    }
    freq /= n;
  }
  f["avg_word_frequency" + m] = freq;

  // Age of acquisition.
  std::vector<double> ages;
  for (const auto& s : doc.sentences)
    for (const auto& t : s.tokens) {
      if (is_punct(t) || !any_letter(t.form)) continue;
      auto hit = aoa.entries.find(lower(t.form));
      if (hit == aoa.entries.end()) hit = aoa.entries.find(lower(t.lemma));
      ages.push_back(hit == aoa.entries.end() ? aoa.default_aoa : hit->second);
    }
  double amin = 0, amax = 0, asum = 0;
  for (std::size_t i = 0; i < ages.size(); ++i) {
    if (i == 0 || ages[i] < amin) amin = ages[i];
    if (i == 0 || ages[i] > amax) amax = ages[i];
    asum += ages[i];
  }
  f["aoa_min" + m] = amin;
  f["aoa_avg" + m] = ages.empty() ? 0.0 : asum / static_cast<double>(ages.size());
  f["aoa_max" + m] = amax;

  f["total_syllables" + m] = syl_total;
  f["avg_syllables_per_word" + m] = div0(syl_total, words);
  f["num_1syll_words" + m] = one;
  f["num_2syll_words" + m] = two;
  f["num_3plus_syll_words" + m] = three;
  f["num_difficult_words" + m] = hard;
  f["ratio_1syll_words" + m] = div0(one, words);
  f["ratio_2syll_words" + m] = div0(two, words);
  f["ratio_3plus_syll_words" + m] = div0(three, words);
  f["ratio_difficult_words" + m] = div0(hard, words);

  // Variation: quadratic scan for first occurrences.
  std::vector<const Token*> content;
  for (const auto& s : doc.sentences)
    for (const auto& t : s.tokens)
      if (!is_punct(t)) content.push_back(&t);
  std::vector<std::string> lemma_of_new_form;
  double types = 0;
  for (std::size_t i = 0; i < content.size(); ++i) {
    bool seen = false;
    for (std::size_t j = 0; j < i; ++j)
      if (lower(content[j]->form) == lower(content[i]->form)) seen = true;
    if (seen) continue;
    types += 1;
    lemma_of_new_form.push_back(lower(content[i]->lemma));
  }
  const double lemma_types =
      static_cast<double>(std::set<std::string>(lemma_of_new_form.begin(), lemma_of_new_form.end()).size());
  f["num_types" + m] = types;
  f["num_lemma_types" + m] = lemma_types;
  f["ratio_types" + m] = div0(types, words);
  f["ratio_lemma_types" + m] = div0(lemma_types, words);
  return f;
}

namespace {

std::vector<std::string> whitespace_words(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void min_avg_max(const std::vector<double>& xs, const std::string& name, const std::string& suffix,
                 std::map<std::string, double>& f) {
  double lo = 0, hi = 0, sum = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i == 0 || xs[i] < lo) lo = xs[i];
    if (i == 0 || xs[i] > hi) hi = xs[i];
    sum += xs[i];
  }
  f["min_" + name + suffix] = lo;
  f["avg_" + name + suffix] = xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
  f["max_" + name + suffix] = hi;
}

double cos_dist(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double dot = 0, na = 0, nb = 0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    dot += a(k) * b(k);
    na += a(k) * a(k);
    nb += b(k) * b(k);
  }
  return 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
}

double pair_mean(const Eigen::MatrixXd& rows) {
  double sum = 0, pairs = 0;
  for (Eigen::Index i = 0; i < rows.rows(); ++i)
    for (Eigen::Index j = i + 1; j < rows.rows(); ++j) {
      sum += cos_dist(rows.row(i).transpose(), rows.row(j).transpose());
      pairs += 1;
    }
  return pairs == 0 ? 0.0 : sum / pairs;
}

Eigen::VectorXd mean_row(const Eigen::MatrixXd& rows) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(rows.cols());
  for (Eigen::Index i = 0; i < rows.rows(); ++i) out += rows.row(i).transpose();
  return out / static_cast<double>(rows.rows());
}

}  // namespace

OracleFeatures oracle_features(const LectureBundle& b, const Lexicon& lexicon, const AoaTable& aoa,
                               const StopwordList& stopwords) {
  OracleFeatures out;
  for (const auto* doc : {&b.ann_slide, &b.ann_transcript})
    for (auto& [k, v] : oracle_text_features(*doc, lexicon, aoa, stopwords)) out.scalars[k] = v;
  auto& f = out.scalars;

  // Slides.
  std::vector<double> lines_per_slide, words_per_slide, words_per_line, letters_per_line;
  double total_lines = 0;
  for (const auto& slide : b.slides.slides) {
    double w_slide = 0;
    for (const auto& line : slide.lines) {
      const double w = static_cast<double>(whitespace_words(line).size());
      w_slide += w;
      words_per_line.push_back(w);
      letters_per_line.push_back(static_cast<double>(alnum_count(line)));
    }
    total_lines += static_cast<double>(slide.lines.size());
    lines_per_slide.push_back(static_cast<double>(slide.lines.size()));
    words_per_slide.push_back(w_slide);
  }
  f["num_lines_sli"] = total_lines;
  f["num_slides_sli"] = static_cast<double>(b.slides.slides.size());
  min_avg_max(lines_per_slide, "lines_per_slide", "_sli", f);
  min_avg_max(words_per_slide, "words_per_slide", "_sli", f);
  min_avg_max(words_per_line, "words_per_line", "_sli", f);
  min_avg_max(letters_per_line, "letters_per_line", "_sli", f);

  // Subtitles.
  if (b.transcript.entries.empty()) {
    for (const char* n : {"num_subtitles_tra", "num_subtitle_sentences_tra", "subtitle_display_time_tra",
                          "subtitle_readable_in_time_tra"})
      f[n] = 0;
    min_avg_max({}, "letters_per_subtitle_sentence", "_tra", f);
    min_avg_max({}, "words_per_subtitle_sentence", "_tra", f);
  } else {
    double ms = 0;
    for (const auto& e : b.transcript.entries) ms += static_cast<double>(e.end_ms - e.start_ms);
    std::vector<double> letters, words;
    double all_words = 0;
    for (const auto& s : b.ann_transcript.sentences) {
      double l = 0, w = 0;
      for (const auto& t : s.tokens)
        if (!is_punct(t)) {
          l += static_cast<double>(alnum_count(t.form));
          w += 1;
        }
      letters.push_back(l);
      words.push_back(w);
      all_words += w;
    }
    f["num_subtitles_tra"] = static_cast<double>(b.transcript.entries.size());
    f["num_subtitle_sentences_tra"] = static_cast<double>(b.ann_transcript.sentences.size());
    f["subtitle_display_time_tra"] = ms / 1000.0;
    f["subtitle_readable_in_time_tra"] = all_words <= (ms / 1000.0) * 3.0 ? 1.0 : 0.0;
    min_avg_max(letters, "letters_per_subtitle_sentence", "_tra", f);
    min_avg_max(words, "words_per_subtitle_sentence", "_tra", f);
  }

  // Semantic.
  out.embed_slide = mean_row(b.emb_slide.vectors);
  out.embed_srt = mean_row(b.emb_transcript.vectors);
  f["dist_embed"] = cos_dist(out.embed_slide, out.embed_srt);
  f["avg_pairdist_sli"] = pair_mean(b.emb_slide.vectors);
  f["avg_pairdist_tra"] = pair_mean(b.emb_transcript.vectors);
  f["diff_pairdist"] = f["avg_pairdist_sli"] - f["avg_pairdist_tra"];
  return out;
}

}  // namespace kgp::fixtures
