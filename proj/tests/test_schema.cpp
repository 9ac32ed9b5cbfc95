#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "kgp/error.hpp"
#include "kgp/extract.hpp"
#include "kgp/fixtures/corpus.hpp"
#include "kgp/schema.hpp"

using namespace kgp;

TEST_CASE("schema counts per category") {
  const auto& s = canonical_schema();
  CHECK(s.count(Category::Syntax) == 308);
  CHECK(s.count(Category::Readability) == 12);
  CHECK(s.count(Category::Lexical) == 36);
  CHECK(s.count(Category::Structure) == 24);
  CHECK(s.count(Category::SemanticScalar) + s.count(Category::EmbedSlide) + s.count(Category::EmbedSrt) == 6);
  CHECK(s.count(Category::User) == 1);
  CHECK(s.counted_features() == 387);
}

TEST_CASE("schema names are unique and match the golden list") {
  const auto& s = canonical_schema();
  std::set<std::string> names;
  for (const auto& e : s.entries()) CHECK(names.insert(e.name).second);

  std::ifstream in(KGP_TEST_DATA_DIR "/golden/schema_names.txt");
  REQUIRE(in);
  std::vector<std::string> golden;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) golden.push_back(line);
  REQUIRE(golden.size() == s.size());
  for (std::size_t i = 0; i < golden.size(); ++i) CHECK(golden[i] == s.entries()[i].name);

  for (const char* n : {"ratio_VP_sli", "VP_sli", "amount_main_verb_sli", "sum_tok_len_tra", "PP_sli"})
    CHECK_MESSAGE(s.find(n) != nullptr, n);
}

TEST_CASE("family member lists") {
  CHECK(feature_names::word_types(Modality::Slide).size() == 55);
  CHECK(feature_names::tenses(Modality::Transcript).size() == 44);
  CHECK(feature_names::phrases(Modality::Slide).size() == 43);
  CHECK(feature_names::other_syntax(Modality::Slide).size() == 12);
  CHECK(feature_names::readability(Modality::Slide).size() == 6);
  CHECK(feature_names::lexical(Modality::Slide).size() == 18);
  CHECK(feature_names::slide_structure().size() == 14);
  CHECK(feature_names::srt_structure().size() == 10);
  CHECK(feature_names::semantic_scalars().size() == 4);
}

TEST_CASE("video-level layout") {
  const auto& s = canonical_schema();
  CHECK(s.video_width(16) == 384 + 2 * 16);
  const auto names = s.expanded_names(4);
  CHECK(static_cast<Eigen::Index>(names.size()) == s.video_width(4));
  CHECK(std::count(names.begin(), names.end(), "embed_srt.3") == 1);
}

namespace {

std::vector<FeatureGroup> complete_groups() {
  const auto& s = canonical_schema();
  FeatureGroup all;
  double v = 0;
  for (const auto& e : s.entries()) {
    if (e.category == Category::User) continue;
    if (e.is_block())
      all.add_block(e.name, Eigen::VectorXd::Constant(3, v++));
    else
      all.add(e.name, v++);
  }
  return {all};
}

}  // namespace

TEST_CASE("merge assembles schema order and rejects gaps or duplicates") {
  auto groups = complete_groups();
  const FeatureVector fv = merge(groups, "v1");
  CHECK(fv["amount_adj_sli"] == 0);
  CHECK(fv.block("embed_srt").size() == 3);

  auto dup = groups;
  dup.push_back({});
  dup.back().add("amount_noun_sli", 1);
  CHECK_THROWS_AS(merge(dup, "v1"), AssemblyError);

  FeatureGroup missing_structure;
  std::set<std::string> structure;
  for (const auto& n : feature_names::slide_structure()) structure.insert(n);
  for (const auto& n : feature_names::srt_structure()) structure.insert(n);
  for (const auto& [n, val] : groups[0].scalars)
    if (!structure.count(n)) missing_structure.add(n, val);
  missing_structure.blocks = groups[0].blocks;
  try {
    merge({missing_structure}, "v1");
    FAIL("expected an assembly error");
  } catch (const AssemblyError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("24") != std::string::npos);
    CHECK(msg.find("num_slides_sli") != std::string::npos);
  }
}

TEST_CASE("feature CSV round trip") {
  Resources r;
  r.lexicon = fixtures::fixture_lexicon();
  r.aoa = fixtures::fixture_aoa();
  std::vector<FeatureVector> vs;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) vs.push_back(extract_features(fixtures::random_tiny_bundle(seed), r));
  const std::string csv = features_to_csv(vs);
  const auto back = features_from_csv(csv);
  REQUIRE(back.size() == 3);
  CHECK(features_to_csv(back) == csv);
  for (std::size_t i = 0; i < 3; ++i) CHECK(back[i].values() == vs[i].values());
}
