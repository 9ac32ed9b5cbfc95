#include "kgp/structural.hpp"

#include <algorithm>

#include "kgp/syntactic.hpp"
#include "kgp/text.hpp"

namespace kgp {

namespace {

struct Stats {
  double min = 0, sum = 0, max = 0;
  long n = 0;

  void add(double x) {
    min = n == 0 ? x : std::min(min, x);
    max = n == 0 ? x : std::max(max, x);
    sum += x;
    ++n;
  }
  double avg() const { return n == 0 ? 0.0 : sum / static_cast<double>(n); }
  void append_to(std::vector<double>& v) const {
    v.push_back(min);
    v.push_back(avg());
    v.push_back(max);
  }
};

}  // namespace

FeatureGroup slide_structure_features(const SlideDoc& slides) {
  Stats lines_per_slide, words_per_slide, words_per_line, letters_per_line;
  double total_lines = 0;
  for (const auto& slide : slides.slides) {
    double words = 0;
    for (const auto& line : slide.lines) {
      const auto w = static_cast<double>(text::split_whitespace(line).size());
      words += w;
      words_per_line.add(w);
      letters_per_line.add(static_cast<double>(text::count_alnum(line)));
    }
    total_lines += static_cast<double>(slide.lines.size());
    lines_per_slide.add(static_cast<double>(slide.lines.size()));
    words_per_slide.add(words);
  }
  std::vector<double> v{total_lines, static_cast<double>(slides.slides.size())};
  for (const Stats* s : {&lines_per_slide, &words_per_slide, &words_per_line, &letters_per_line})
    s->append_to(v);
  FeatureGroup g;
  g.add_all(feature_names::slide_structure(), v);
  return g;
}

FeatureGroup srt_structure_features(const TranscriptDoc& transcript, const AnnotatedDocument& ann) {
  FeatureGroup g;
  const auto names = feature_names::srt_structure();
  if (transcript.entries.empty()) {
    g.add_all(names, std::vector<double>(names.size(), 0.0));
    return g;
  }
  double display_ms = 0;
  for (const auto& e : transcript.entries) display_ms += static_cast<double>(e.end_ms - e.start_ms);
  const double display_s = display_ms / 1000.0;

  Stats letters, words;
  double total_words = 0;
  for (const auto& s : ann.sentences) {
    double l = 0;
    for (const auto& t : s.tokens)
      if (t.upos != Upos::PUNCT) l += static_cast<double>(text::count_alnum(t.form));
    const auto w = static_cast<double>(word_count(s));
    letters.add(l);
    words.add(w);
    total_words += w;
  }
  const double readable = total_words <= display_s * kReadingWordsPerSecond ? 1.0 : 0.0;
  std::vector<double> v{static_cast<double>(transcript.entries.size()),
                        static_cast<double>(ann.sentences.size()), display_s, readable};
  letters.append_to(v);
  words.append_to(v);
  g.add_all(names, v);
  return g;
}

}  // namespace kgp
