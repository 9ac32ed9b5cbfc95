#include <doctest.h>

#include "kgp/error.hpp"
#include "kgp/fixtures/corpus.hpp"
#include "kgp/ingest.hpp"
#include "kgp/log.hpp"
#include "kgp/random.hpp"

using namespace kgp;

TEST_CASE("srt: single cue") {
  const auto doc = parse_srt("1\n00:00:01,000 --> 00:00:03,500\nHello world\n\n");
  REQUIRE(doc.entries.size() == 1);
  CHECK(doc.entries[0].index == 1);
  CHECK(doc.entries[0].start_ms == 1000);
  CHECK(doc.entries[0].end_ms == 3500);
  CHECK(doc.entries[0].text == "Hello world");
}

TEST_CASE("srt: multi-line cue text is joined with a space") {
  const auto doc = parse_srt("1\n00:00:01,000 --> 00:00:02,000\na\nb\n");
  CHECK(doc.entries.at(0).text == "a b");
}

TEST_CASE("srt: timestamps") {
  CHECK(parse_srt_timestamp("00:01:00,250") == 1 * 60000 + 250);
  CHECK(parse_srt_timestamp("01:00:00,000") == 3600000);
  CHECK(format_srt_timestamp(3723004) == "01:02:03,004");
  CHECK_THROWS_AS(parse_srt_timestamp("00:01:00.25x"), ParseError);
}

TEST_CASE("srt: malformed timestamp names the line") {
  const std::string bad = "1\n00:00:01,000 --> 00:00:02,000\nok\n\n2\n00:00:0x,000 --> 00:00:03,000\nbad\n";
  try {
    parse_srt(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
  }
}

TEST_CASE("srt: indices must increase") {
  const std::string bad = "2\n00:00:01,000 --> 00:00:02,000\na\n\n1\n00:00:03,000 --> 00:00:04,000\nb\n";
  CHECK_THROWS_AS(parse_srt(bad), ValidationError);
  CHECK_THROWS_AS(parse_srt("1\n00:00:02,000 --> 00:00:01,000\na\n"), ValidationError);
}

TEST_CASE("srt: round trip over random documents") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    TranscriptDoc doc;
    long t = 0;
    const int n = 1 + static_cast<int>(rng.index(8));
    for (int i = 0; i < n; ++i) {
      SubtitleEntry e;
      e.index = i + 1;
      e.start_ms = t + static_cast<long>(rng.index(500));
      e.end_ms = e.start_ms + 1 + static_cast<long>(rng.index(4000));
      t = e.end_ms;
      e.text = "cue " + std::to_string(rng.index(1000)) + " text";
      doc.entries.push_back(e);
    }
    CHECK(parse_srt(to_srt(doc)) == doc);
  }
}

TEST_CASE("slides: parsing and errors") {
  const auto one = parse_slides(R"({"video_id":"v1","slides":[{"index":1,"lines":["Title"]}]})");
  CHECK(one.video_id == "v1");
  REQUIRE(one.slides.size() == 1);
  CHECK(one.slides[0].lines == std::vector<std::string>{"Title"});

  CHECK(parse_slides(R"({"video_id":"v1","slides":[]})").slides.empty());

  const auto two = parse_slides(
      R"({"video_id":"v","slides":[{"index":1,"lines":["a","b","c"]},{"index":2,"lines":["1","2","3","4",""]}]})");
  std::size_t lines = 0;
  for (const auto& s : two.slides) lines += s.lines.size();
  CHECK(lines == 8);

  CHECK_THROWS_AS(parse_slides(R"({"video_id":"v","slides":[{"index":1}]})"), SchemaError);
  CHECK_THROWS_AS(parse_slides(R"({"video_id":"v","slides":[{"index":1,"lines":[]},{"index":1,"lines":[]}]})"),
                  ValidationError);
}

namespace {
const char* kConllu =
    "# sent 1\n"
    "1\tThe\tthe\tDET\tDT\t_\t_\t_\t_\t_\n"
    "2\tdog\tdog\tNOUN\tNN\t_\t_\t_\t_\t_\n"
    "3\tbarks\tbark\tVERB\tVBZ\t_\t_\t_\t_\t_\n"
    "\n"
    "1\tHi\thi\tINTJ\tUH\t_\t_\t_\t_\t_\n"
    "\n";
}

TEST_CASE("annotations: tokens and trees") {
  const auto doc = parse_annotations(kConllu, "(S (NP (DT The) (NN dog)) (VP (VBZ barks)))\n(INTJ (UH Hi))\n",
                                     Modality::Slide);
  REQUIRE(doc.sentences.size() == 2);
  CHECK(doc.sentences[0].tokens[1].upos == Upos::NOUN);
  CHECK(doc.sentences[0].tokens[2].lemma == "bark");
  CHECK(doc.sentences[0].tokens[2].xpos == "VBZ");
  CHECK(doc.sentences[0].tree.has_value());
  CHECK(doc.sentences[1].tree.has_value());

  const auto notree = parse_annotations(kConllu, "(NOTREE)\n(NOTREE)\n", Modality::Slide);
  CHECK_FALSE(notree.sentences[0].tree.has_value());

  const auto again = parse_annotations(to_conllu(doc), to_trees(doc), Modality::Slide);
  CHECK(to_conllu(again) == to_conllu(doc));
  CHECK(to_trees(again) == to_trees(doc));
}

TEST_CASE("annotations: errors") {
  CHECK_THROWS_AS(parse_annotations(kConllu, "(NOTREE)\n", Modality::Slide), AlignmentError);
  CHECK_THROWS_AS(parse_annotations(kConllu, "(S (NP (DT The) (NN dog)) (VP (VBZ barks))\n(NOTREE)\n",
                                    Modality::Slide),
                  ParseError);
  CHECK_THROWS_AS(parse_annotations("1\tx\tx\tNOPE\tNN\t_\t_\t_\t_\t_\n\n", "(NOTREE)\n", Modality::Slide),
                  ValidationError);
}

TEST_CASE("word lists") {
  const auto lex = load_lexicon("word\tsyllables\tpos\tfrequency\nCat\t1\tNN\t5\ndog\t1\tNN\t2\n");
  REQUIRE(lex.find("cat"));
  CHECK(lex.find("CAT")->frequency == 5);
  CHECK_THROWS_AS(load_lexicon("word\tsyllables\tpos\tfrequency\ncat\t1\tNN\n"), SchemaError);
  CHECK_THROWS(load_lexicon("word\tsyllables\tpos\tfrequency\ncat\t0\tNN\t1\n"));

  std::vector<std::string> warnings;
  auto prev = set_warning_handler([&](const std::string& m) { warnings.push_back(m); });
  const auto dup = load_lexicon("word\tsyllables\tpos\tfrequency\ncat\t1\tNN\t5\ncat\t2\tNN\t7\n");
  set_warning_handler(prev);
  CHECK(dup.find("cat")->frequency == 7);
  CHECK(warnings.size() == 1);

  const auto aoa = load_aoa("word\taoa_years\ncat\t3.5\n");
  CHECK(aoa.lookup("cat") == 3.5);
  CHECK(aoa.lookup("zorbl") == 10.36);

  for (const auto& [w, e] : fixtures::fixture_lexicon().entries) {
    CHECK(e.syllables >= 1);
    CHECK(e.frequency >= 0);
  }
  CHECK(default_stopwords().words.size() == 179);
}

TEST_CASE("embeddings") {
  const auto emb = load_embeddings(
      "{\"sentence_index\":0,\"vector\":[1,0,0]}\n{\"sentence_index\":1,\"vector\":[0,1,0]}\n", Modality::Slide);
  CHECK(emb.count() == 2);
  CHECK(emb.dimension() == 3);
  CHECK_THROWS_AS(load_embeddings("{\"sentence_index\":0,\"vector\":[1,0,0]}\n"
                                  "{\"sentence_index\":1,\"vector\":[0,1]}\n",
                                  Modality::Slide),
                  DimensionError);
}

TEST_CASE("sessions") {
  // (i mod 13, i mod 22) is unique for i < 286.
  std::string csv = "participant_id,video_id,kg_score\n";
  for (int i = 0; i < 111; ++i)
    csv += "p" + std::to_string(i % 13) + ",v" + std::to_string(i % 22) + "," + std::to_string(i % 7) + "\n";
  const auto t = load_sessions(csv);
  CHECK(t.sessions.size() == 111);
  CHECK(t.videos().size() == 22);
  CHECK(t.participants().size() == 13);
  CHECK(load_sessions(to_csv(t)).sessions.size() == t.sessions.size());
  CHECK_THROWS_AS(load_sessions("participant_id,video_id,kg_score\np,v,1\np,v,2\n"), ValidationError);
}

TEST_CASE("external features") {
  const auto mm = load_external_features("video_id,a,b\nv1,1,2\nv2,3,4\n");
  CHECK(mm.columns == std::vector<std::string>{"a", "b"});
  CHECK(mm.rows.at("v2")(1) == 4);
  CHECK_THROWS_AS(load_external_features("video_id,a,a\nv1,1,2\n"), SchemaError);
  CHECK_THROWS_AS(load_external_features("video_id,a,b\nv1,1\n"), SchemaError);
}

TEST_CASE("bundle assembly checks alignment") {
  Rng rng(3);
  const auto lec = fixtures::random_lecture(rng, "v1", 3, 4, 5);
  CHECK_NOTHROW(assemble_bundle(lec.video_id, lec.transcript, lec.slides, lec.ann_slide, lec.ann_transcript,
                                lec.emb_slide, lec.emb_transcript));
  auto emb = lec.emb_slide;
  emb.vectors.conservativeResize(emb.vectors.rows() + 1, Eigen::NoChange);
  emb.vectors.row(emb.vectors.rows() - 1).setOnes();
  CHECK_THROWS_AS(assemble_bundle(lec.video_id, lec.transcript, lec.slides, lec.ann_slide, lec.ann_transcript,
                                  emb, lec.emb_transcript),
                  AlignmentError);
  const auto no_mm = assemble_bundle(lec.video_id, lec.transcript, lec.slides, lec.ann_slide,
                                     lec.ann_transcript, lec.emb_slide, lec.emb_transcript);
  CHECK_FALSE(no_mm.mm.has_value());
}
