#pragma once

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "kgp/extract.hpp"
#include "kgp/fixtures/corpus.hpp"
#include "kgp/fixtures/oracle.hpp"

namespace testing {

using namespace kgp;

inline kgp::Resources fixture_resources() {
  kgp::Resources r;
  r.lexicon = fixtures::fixture_lexicon();
  r.aoa = fixtures::fixture_aoa();
  return r;
}

// Mismatches between the extractor and the oracle, as readable strings.
inline std::vector<std::string> compare(const kgp::LectureBundle& b, const kgp::Resources& r) {
  const FeatureVector fv = extract_features(b, r);
  const auto oracle = fixtures::oracle_features(b, r.lexicon, r.aoa, r.stopwords);
  std::vector<std::string> bad;
  std::set<std::string> seen;
  for (const auto& e : canonical_schema().entries()) {
    if (e.category == Category::User) continue;
    if (e.is_block()) {
      const Eigen::VectorXd got = fv.block(e.name);
      const Eigen::VectorXd& want = e.name == "embed_slide" ? oracle.embed_slide : oracle.embed_srt;
      if (got.size() != want.size() || (got - want).cwiseAbs().maxCoeff() > 1e-9) bad.push_back(e.name);
      continue;
    }
    seen.insert(e.name);
    const auto it = oracle.scalars.find(e.name);
    if (it == oracle.scalars.end()) {
      bad.push_back(e.name + " missing from oracle");
      continue;
    }
    const double got = fv[e.name], want = it->second;
    const bool integral = std::floor(want) == want && std::abs(want) < 1e15;
    const bool ok = integral ? got == want : std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want));
    if (!ok) bad.push_back(e.name + ": pipeline " + std::to_string(got) + " oracle " + std::to_string(want));
  }
  for (const auto& [name, v] : oracle.scalars)
    if (!seen.count(name)) bad.push_back(name + " unknown to the schema");
  return bad;
}

}  // namespace testing
