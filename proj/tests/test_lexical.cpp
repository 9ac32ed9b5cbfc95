#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "kgp/fixtures/corpus.hpp"
#include "kgp/lexical.hpp"
#include "kgp/random.hpp"
#include "kgp/syntactic.hpp"

using namespace kgp;
using testing::doc;
using testing::sent;

namespace {
const Lexicon& lex() {
  static const Lexicon l = load_lexicon(
      "word\tsyllables\tpos\tfrequency\n"
      "x\t1\tNN\t1\ny\t1\tNN\t1\n"
      "table\t2\tNN\t5\nelephant\t3\tNN\t2\na\t1\tDT\t100\n"
      "data\t2\tNN\t5\nbase\t1\tNN\t5\nrun\t1\tVB\t5\n");
  return l;
}
const StopwordList kNoStopwords;
}  // namespace

TEST_CASE("frequency") {
  CHECK(frequency_feature(doc({sent("x x y")}), lex(), kNoStopwords) == doctest::Approx(5.0 / 9.0));
  CHECK(frequency_feature(doc({sent("zorbl blarg")}), lex(), kNoStopwords) == 0);
  CHECK(frequency_feature(doc({sent("x")}), lex(), kNoStopwords) == 1.0);
  CHECK(frequency_feature(doc({}), lex(), kNoStopwords) == 0);
  // Stopwords are removed before counting.
  CHECK(frequency_feature(doc({sent("the/DET/DT x")}), lex()) == 1.0);
  // Digits stay in the denominator with frequency 0.
  CHECK(frequency_feature(doc({sent("x 42/NUM/CD")}), lex(), kNoStopwords) == doctest::Approx(0.25));
  // Plural nouns fold to their lemma.
  CHECK(frequency_feature(doc({sent("tables/NOUN/NNS/table table")}), lex(), kNoStopwords) == 1.0);
  // Hyphenated words average their parts.
  CHECK(frequency_feature(doc({sent("data-base")}), lex(), kNoStopwords) == 1.0);
}

TEST_CASE("age of acquisition") {
  const auto aoa = load_aoa("word\taoa_years\nfour\t4.0\neight\t8.0\n");
  const auto two = aoa_features(doc({sent("four eight")}), aoa);
  CHECK(two == std::array<double, 3>{4.0, 6.0, 8.0});
  const auto unknown = aoa_features(doc({sent("zorbl")}), aoa);
  CHECK(unknown == std::array<double, 3>{10.36, 10.36, 10.36});
  CHECK(aoa_features(doc({sent("42/NUM/CD 7/NUM/CD")}), aoa) == std::array<double, 3>{0, 0, 0});
}

TEST_CASE("syllable features") {
  const auto f = syllable_features(doc({sent("a/DET/DT table elephant")}), lex());
  CHECK(f[0] == 6);
  CHECK(f[1] == 2);
  CHECK(f[2] == 1);
  CHECK(f[3] == 1);
  CHECK(f[4] == 1);
  CHECK(f[6] == doctest::Approx(1.0 / 3));
  CHECK(f[7] == doctest::Approx(1.0 / 3));
  CHECK(f[8] == doctest::Approx(1.0 / 3));
  for (double v : syllable_features(doc({}), lex())) CHECK(v == 0);
}

TEST_CASE("variation") {
  const auto v = variation_features(doc({sent("run/VERB/VB/run runs/VERB/VBZ/run ran/VERB/VBD/run")}));
  CHECK(v[0] == 3);
  CHECK(v[1] == 1);
  CHECK(variation_features(doc({sent("a b c d")}))[2] == 1.0);
  for (double x : variation_features(doc({}))) CHECK(x == 0);
}

TEST_CASE("lexical invariants on random documents") {
  const auto& flex = fixtures::fixture_lexicon();
  const auto& faoa = fixtures::fixture_aoa();
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    AnnotatedDocument d = fixtures::random_document(rng, Modality::Transcript, 1 + static_cast<int>(rng.index(5)));
    const auto g = lexical_features(d, flex, faoa);
    REQUIRE(g.size() == 18);
    const double words = static_cast<double>(word_count(d));
    CHECK(g.at("num_lemma_types_tra") <= g.at("num_types_tra"));
    CHECK(g.at("num_types_tra") <= words);
    if (words > 0) {
      CHECK(g.at("avg_syllables_per_word_tra") == doctest::Approx(g.at("total_syllables_tra") / words));
    }
    bool all_alpha = true;
    for (const auto& s : d.sentences)
      for (const auto& t : s.tokens)
        if (t.upos != Upos::PUNCT && !std::all_of(t.form.begin(), t.form.end(), ::isalpha)) all_alpha = false;
    if (all_alpha && words > 0)
      CHECK(g.at("ratio_1syll_words_tra") + g.at("ratio_2syll_words_tra") + g.at("ratio_3plus_syll_words_tra") ==
            doctest::Approx(1.0));

    std::reverse(d.sentences.begin(), d.sentences.end());
    const auto h = lexical_features(d, flex, faoa);
    for (std::size_t i = 0; i < g.scalars.size(); ++i)
      CHECK(h.scalars[i].second == doctest::Approx(g.scalars[i].second).epsilon(1e-12));
  }
}
