#pragma once

#include <sstream>
#include <string>

#include "kgp/ingest.hpp"
#include "kgp/text.hpp"

namespace testing {

// "form/UPOS/XPOS[/lemma] ..." -> Sentence. Lemma defaults to the lowercased form.
inline kgp::Sentence sent(const std::string& spec, const std::string& tree = {}) {
  kgp::Sentence s;
  std::istringstream in(spec);
  std::string item;
  while (in >> item) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : item) {
      if (c == '/' && parts.size() < 3) {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
    kgp::Token t;
    t.form = parts[0];
    t.upos = parts.size() > 1 ? *kgp::parse_upos(parts[1]) : kgp::Upos::NOUN;
    t.xpos = parts.size() > 2 ? parts[2] : "NN";
    t.lemma = parts.size() > 3 ? parts[3] : kgp::text::to_lower(t.form);
    s.tokens.push_back(std::move(t));
  }
  if (!tree.empty()) s.tree = kgp::parse_tree(tree);
  return s;
}

inline kgp::AnnotatedDocument doc(std::vector<kgp::Sentence> sentences,
                                  kgp::Modality m = kgp::Modality::Slide) {
  kgp::AnnotatedDocument d;
  d.modality = m;
  d.sentences = std::move(sentences);
  return d;
}

}  // namespace testing
