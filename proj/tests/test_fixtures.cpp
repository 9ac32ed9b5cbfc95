#include <doctest.h>

#include <cmath>
#include <set>

#include "kgp/extract.hpp"
#include "kgp/fixtures/corpus.hpp"
#include "kgp/fixtures/oracle.hpp"
#include "equivalence.hpp"

using namespace kgp;

using testing::compare;
using testing::fixture_resources;

TEST_CASE("generated sentences parse back and keep trees aligned") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const Sentence s = fixtures::random_sentence(rng);
    REQUIRE(s.tree);
    CHECK(s.tree->leaf_count() == s.tokens.size());
    AnnotatedDocument doc;
    doc.sentences.push_back(s);
    const auto back = parse_annotations(to_conllu(doc), to_trees(doc), Modality::Slide);
    REQUIRE(back.sentences.size() == 1);
    CHECK(back.sentences[0].tokens.size() == s.tokens.size());
    CHECK(to_string(*back.sentences[0].tree) == to_string(*s.tree));
  }
}

TEST_CASE("extractor matches the oracle on tiny lectures") {
  const Resources r = fixture_resources();
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto bad = compare(fixtures::random_tiny_bundle(seed), r);
    INFO("seed " << seed);
    for (const auto& b : bad) MESSAGE(b);
    CHECK(bad.empty());
  }
}

TEST_CASE("empty modality gives the documented zeros in both implementations") {
  const Resources r = fixture_resources();
  AnnotatedDocument empty;
  empty.modality = Modality::Transcript;
  const auto oracle = fixtures::oracle_text_features(empty, r.lexicon, r.aoa, r.stopwords);
  for (const auto& [name, v] : oracle) CHECK_MESSAGE(v == 0.0, name);
  FeatureGroup g = syntactic_features(empty, r.tense_rules);
  for (const auto& [name, v] : g.scalars) {
    CHECK(v == 0.0);
    CHECK(oracle.count(name));
  }
}

TEST_CASE("three-sentence document with one question") {
  const Resources r = fixture_resources();
  Rng rng(11);
  AnnotatedDocument doc;
  doc.modality = Modality::Slide;
  while (doc.sentences.size() < 3) {
    const Sentence s = fixtures::random_sentence(rng);
    const bool q = s.tokens.back().form == "?";
    const long have_q = std::count_if(doc.sentences.begin(), doc.sentences.end(),
                                      [](const Sentence& x) { return x.tokens.back().form == "?"; });
    if (q && have_q == 0) doc.sentences.push_back(s);
    else if (!q && doc.sentences.size() - static_cast<std::size_t>(have_q) < 2) doc.sentences.push_back(s);
  }
  const auto oracle = fixtures::oracle_text_features(doc, r.lexicon, r.aoa, r.stopwords);
  CHECK(oracle.at("num_questions_sli") == 1.0);
  CHECK(other_syntactic_features(doc).at("num_questions_sli") == 1.0);
}

TEST_CASE("corpus generator") {
  fixtures::SyntheticCorpusSpec spec;
  spec.n_videos = 4;
  spec.n_participants = 3;
  const auto c = fixtures::generate(spec);
  CHECK(c.sessions.sessions.size() == 12);
  CHECK(c.lectures.size() == 4);
  REQUIRE(c.mm);
  CHECK(c.mm->rows.size() == 4);

  const auto again = fixtures::generate(spec);
  CHECK(to_csv(again.sessions) == to_csv(c.sessions));
  CHECK(to_conllu(again.lectures[2].ann_slide) == to_conllu(c.lectures[2].ann_slide));
}
