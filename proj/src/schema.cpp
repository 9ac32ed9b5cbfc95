#include "kgp/schema.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

#include "kgp/error.hpp"
#include "kgp/text.hpp"

namespace kgp {

std::string_view category_name(Category c) {
  switch (c) {
    case Category::Syntax: return "SYNTAX";
    case Category::Readability: return "READABILITY";
    case Category::Lexical: return "LEXICAL";
    case Category::Structure: return "STRUCTURE";
    case Category::SemanticScalar: return "SEMANTIC";
    case Category::EmbedSlide: return "EMBED_SLIDE";
    case Category::EmbedSrt: return "EMBED_SRT";
    case Category::Mm: return "MM";
    case Category::User: return "USER";
  }
  return "?";
}

namespace feature_names {

namespace {

std::string sfx(Modality m) { return "_" + std::string(modality_suffix(m)); }

// Short tense codes in the order of the tense inventory.
constexpr std::array<std::string_view, 11> kTenseCodes = {
    "pres", "presprog", "presperf", "presperfprog", "past",  "pastprog",
    "pastperf", "pastperfprog", "fut", "futprog", "futperf"};

}  // namespace

std::vector<std::string> word_types(Modality m) {
  std::vector<std::string> out;
  for (Upos tag : all_upos()) {
    const std::string t = text::to_lower(upos_name(tag));
    out.push_back("amount_" + t + sfx(m));
    out.push_back("ratio_" + t + sfx(m));
    out.push_back("avg_" + t + sfx(m));
  }
  out.push_back("noun_pronoun_ratio" + sfx(m));
  out.push_back("amount_main_verb" + sfx(m));
  out.push_back("ratio_main_verb" + sfx(m));
  out.push_back("avg_main_verb" + sfx(m));
  return out;
}

std::vector<std::string> tenses(Modality m) {
  std::vector<std::string> out;
  for (auto code : kTenseCodes)
    for (std::string_view voice : {"active", "passive"}) {
      out.push_back("amount_" + std::string(code) + "_" + std::string(voice) + sfx(m));
      out.push_back("ratio_" + std::string(code) + "_" + std::string(voice) + sfx(m));
    }
  return out;
}

std::vector<std::string> phrases(Modality m) {
  std::vector<std::string> out;
  for (auto p : kPhraseTypes) {
    out.push_back(std::string(p) + sfx(m));
    out.push_back("ratio_" + std::string(p) + sfx(m));
    out.push_back("avg_" + std::string(p) + sfx(m));
  }
  out.push_back("avg_phrases_per_sentence" + sfx(m));
  return out;
}

std::vector<std::string> other_syntax(Modality m) {
  std::vector<std::string> out;
  for (std::string_view n :
       {"avg_trigrams_per_sentence", "avg_tetragrams_per_sentence", "sum_tok_len", "num_words",
        "min_words_per_sentence", "avg_words_per_sentence", "max_words_per_sentence",
        "num_sentences", "num_questions", "num_expressions", "ratio_questions",
        "ratio_expressions"})
    out.push_back(std::string(n) + sfx(m));
  return out;
}

std::vector<std::string> readability(Modality m) {
  std::vector<std::string> out;
  for (std::string_view n : {"flesch_reading_ease", "flesch_kincaid_grade", "gunning_fog", "smog",
                             "coleman_liau", "ari"})
    out.push_back(std::string(n) + sfx(m));
  return out;
}

std::vector<std::string> lexical(Modality m) {
  std::vector<std::string> out;
  for (std::string_view n :
       {"avg_word_frequency", "aoa_min", "aoa_avg", "aoa_max", "total_syllables",
        "avg_syllables_per_word", "num_1syll_words", "num_2syll_words", "num_3plus_syll_words",
        "num_difficult_words", "ratio_1syll_words", "ratio_2syll_words",
        "ratio_3plus_syll_words", "ratio_difficult_words", "num_types", "num_lemma_types",
        "ratio_types", "ratio_lemma_types"})
    out.push_back(std::string(n) + sfx(m));
  return out;
}

std::vector<std::string> slide_structure() {
  std::vector<std::string> out = {"num_lines_sli", "num_slides_sli"};
  for (std::string_view q : {"lines_per_slide", "words_per_slide", "words_per_line",
                             "letters_per_line"})
    for (std::string_view s : {"min_", "avg_", "max_"})
      out.push_back(std::string(s) + std::string(q) + "_sli");
  return out;
}

std::vector<std::string> srt_structure() {
  std::vector<std::string> out = {"num_subtitles_tra", "num_subtitle_sentences_tra",
                                  "subtitle_display_time_tra", "subtitle_readable_in_time_tra"};
  for (std::string_view q : {"letters_per_subtitle_sentence", "words_per_subtitle_sentence"})
    for (std::string_view s : {"min_", "avg_", "max_"})
      out.push_back(std::string(s) + std::string(q) + "_tra");
  return out;
}

std::vector<std::string> semantic_scalars() {
  return {"dist_embed", "avg_pairdist_sli", "avg_pairdist_tra", "diff_pairdist"};
}

}  // namespace feature_names

// ---------------------------------------------------------------------------

FeatureSchema::FeatureSchema(std::vector<SchemaEntry> entries) : entries_(std::move(entries)) {
  Eigen::Index scalars = 0, blocks = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!slots_.emplace(entries_[i].name, Slot{i, scalars, blocks}).second)
      throw SchemaError("duplicate schema name '" + entries_[i].name + "'");
    if (entries_[i].category == Category::User) continue;
    (entries_[i].is_block() ? blocks : scalars) += 1;
  }
}

std::size_t FeatureSchema::count(Category c) const {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(), [c](const SchemaEntry& e) { return e.category == c; }));
}

const SchemaEntry* FeatureSchema::find(std::string_view name) const {
  const auto it = slots_.find(std::string(name));
  return it == slots_.end() ? nullptr : &entries_[it->second.entry];
}

Eigen::Index FeatureSchema::video_width(Eigen::Index dim) const {
  Eigen::Index w = 0;
  for (const auto& e : entries_)
    if (e.category != Category::User) w += e.is_block() ? dim : 1;
  return w;
}

Eigen::Index FeatureSchema::offset(std::string_view name, Eigen::Index dim) const {
  const auto it = slots_.find(std::string(name));
  if (it == slots_.end() || entries_[it->second.entry].category == Category::User)
    throw std::out_of_range("no video-level feature '" + std::string(name) + "'");
  return it->second.scalars_before + it->second.blocks_before * dim;
}

std::vector<std::string> FeatureSchema::expanded_names(Eigen::Index dim) const {
  std::vector<std::string> out;
  for (const auto& e : entries_) {
    if (e.category == Category::User) continue;
    if (!e.is_block()) {
      out.push_back(e.name);
      continue;
    }
    for (Eigen::Index k = 0; k < dim; ++k) out.push_back(e.name + "." + std::to_string(k));
  }
  return out;
}

const FeatureSchema& canonical_schema() {
  static const FeatureSchema schema = [] {
    namespace fn = feature_names;
    std::vector<SchemaEntry> e;
    auto add = [&e](const std::vector<std::string>& names, Category c, FeatureModality m) {
      for (const auto& n : names) e.push_back({n, c, m});
    };
    const std::pair<Modality, FeatureModality> mods[] = {
        {Modality::Slide, FeatureModality::Slide},
        {Modality::Transcript, FeatureModality::Transcript}};
    for (auto [m, fm] : mods) {
      add(fn::word_types(m), Category::Syntax, fm);
      add(fn::tenses(m), Category::Syntax, fm);
      add(fn::phrases(m), Category::Syntax, fm);
      add(fn::other_syntax(m), Category::Syntax, fm);
    }
    for (auto [m, fm] : mods) add(fn::readability(m), Category::Readability, fm);
    for (auto [m, fm] : mods) add(fn::lexical(m), Category::Lexical, fm);
    add(fn::slide_structure(), Category::Structure, FeatureModality::Slide);
    add(fn::srt_structure(), Category::Structure, FeatureModality::Transcript);
    e.push_back({"dist_embed", Category::SemanticScalar, FeatureModality::Both});
    e.push_back({"avg_pairdist_sli", Category::SemanticScalar, FeatureModality::Slide});
    e.push_back({"avg_pairdist_tra", Category::SemanticScalar, FeatureModality::Transcript});
    e.push_back({"diff_pairdist", Category::SemanticScalar, FeatureModality::Both});
    e.push_back({std::string(fn::kEmbedSlide), Category::EmbedSlide, FeatureModality::Slide});
    e.push_back({std::string(fn::kEmbedSrt), Category::EmbedSrt, FeatureModality::Transcript});
    e.push_back({std::string(fn::kPersonId), Category::User, FeatureModality::None});
    return FeatureSchema(std::move(e));
  }();
  return schema;
}

// ---------------------------------------------------------------------------

void FeatureGroup::add_all(const std::vector<std::string>& names,
                           const std::vector<double>& values) {
  if (names.size() != values.size())
    throw AssemblyError("feature group: " + std::to_string(names.size()) + " names for " +
                        std::to_string(values.size()) + " values");
  for (std::size_t i = 0; i < names.size(); ++i) add(names[i], values[i]);
}

double FeatureGroup::at(std::string_view name) const {
  for (const auto& [n, v] : scalars)
    if (n == name) return v;
  throw std::out_of_range("feature group has no '" + std::string(name) + "'");
}

FeatureVector::FeatureVector(std::string video_id, Eigen::VectorXd values, Eigen::Index dim)
    : video_id_(std::move(video_id)), values_(std::move(values)), embedding_dim_(dim) {}

double FeatureVector::operator[](std::string_view name) const {
  const auto* e = canonical_schema().find(name);
  if (!e || e->is_block()) throw std::out_of_range("no scalar feature '" + std::string(name) + "'");
  return values_(canonical_schema().offset(name, embedding_dim_));
}

Eigen::VectorXd FeatureVector::block(std::string_view name) const {
  const auto* e = canonical_schema().find(name);
  if (!e || !e->is_block()) throw std::out_of_range("no block feature '" + std::string(name) + "'");
  return values_.segment(canonical_schema().offset(name, embedding_dim_), embedding_dim_);
}

FeatureVector merge(const std::vector<FeatureGroup>& groups, std::string video_id) {
  const auto& schema = canonical_schema();
  Eigen::Index dim = -1;
  for (const auto& g : groups)
    for (const auto& [name, v] : g.blocks) {
      if (dim >= 0 && v.size() != dim)
        throw AssemblyError("embedding blocks differ in dimension");
      dim = v.size();
    }
  if (dim < 0) dim = 0;

  Eigen::VectorXd values = Eigen::VectorXd::Zero(schema.video_width(dim));
  std::set<std::string> seen;
  std::vector<std::string> problems;
  auto place = [&](const std::string& name, bool block) {
    const auto* e = schema.find(name);
    if (!e || e->category == Category::User || e->is_block() != block) {
      problems.push_back("unknown feature '" + name + "'");
      return false;
    }
    if (!seen.insert(name).second) {
      problems.push_back("duplicate feature '" + name + "'");
      return false;
    }
    return true;
  };
  for (const auto& g : groups) {
    for (const auto& [name, v] : g.scalars)
      if (place(name, false)) values(schema.offset(name, dim)) = v;
    for (const auto& [name, v] : g.blocks)
      if (place(name, true)) values.segment(schema.offset(name, dim), dim) = v;
  }
  std::vector<std::string> missing;
  for (const auto& e : schema.entries())
    if (e.category != Category::User && !seen.count(e.name)) missing.push_back(e.name);
  if (!problems.empty() || !missing.empty()) {
    std::string msg = "cannot assemble feature vector for '" + video_id + "':";
    for (const auto& p : problems) msg += " " + p + ";";
    if (!missing.empty()) {
      msg += " missing " + std::to_string(missing.size()) + " features:";
      for (const auto& m : missing) msg += " " + m;
    }
    throw AssemblyError(msg);
  }
  return FeatureVector(std::move(video_id), std::move(values), dim);
}

namespace {
std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

std::string features_to_csv(const std::vector<FeatureVector>& vectors) {
  const Eigen::Index dim = vectors.empty() ? 0 : vectors.front().embedding_dim();
  std::string out = "video_id";
  for (const auto& n : canonical_schema().expanded_names(dim)) out += "," + n;
  out += "\n";
  for (const auto& fv : vectors) {
    if (fv.embedding_dim() != dim) throw DimensionError("feature vectors differ in embedding dim");
    out += fv.video_id();
    for (Eigen::Index i = 0; i < fv.values().size(); ++i) out += "," + format_real(fv.values()(i));
    out += "\n";
  }
  return out;
}

std::vector<FeatureVector> features_from_csv(std::string_view csv) {
  auto lines = text::split(csv, '\n');
  while (!lines.empty() && text::trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw SchemaError("features CSV: missing header");
  const auto header = text::split(text::trim(lines[0]), ',');
  const auto& schema = canonical_schema();
  const Eigen::Index scalar_width = schema.video_width(0);
  const auto blocks = static_cast<Eigen::Index>(schema.count(Category::EmbedSlide) +
                                                schema.count(Category::EmbedSrt));
  const Eigen::Index extra = static_cast<Eigen::Index>(header.size()) - 1 - scalar_width;
  if (header.empty() || header[0] != "video_id" || extra < 0 || extra % blocks != 0)
    throw SchemaError("features CSV: header does not match the feature schema");
  const Eigen::Index dim = extra / blocks;
  const auto expected = schema.expanded_names(dim);
  if (!std::equal(expected.begin(), expected.end(), header.begin() + 1))
    throw SchemaError("features CSV: header does not match the feature schema");
  std::vector<FeatureVector> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = text::split(text::trim(lines[i]), ',');
    if (fields.size() != header.size())
      throw SchemaError("features CSV: line " + std::to_string(i + 1) + " is ragged");
    Eigen::VectorXd v(static_cast<Eigen::Index>(fields.size() - 1));
    for (std::size_t c = 1; c < fields.size(); ++c) {
      try {
        std::size_t used = 0;
        v(static_cast<Eigen::Index>(c - 1)) = std::stod(fields[c], &used);
        if (used != fields[c].size()) throw std::invalid_argument(fields[c]);
      } catch (const std::exception&) {
        throw ParseError("features CSV: bad number '" + fields[c] + "'", static_cast<long>(i) + 1);
      }
    }
    out.emplace_back(fields[0], std::move(v), dim);
  }
  return out;
}

}  // namespace kgp
