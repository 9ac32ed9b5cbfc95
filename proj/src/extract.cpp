#include "kgp/extract.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "kgp/error.hpp"
#include "kgp/lexical.hpp"
#include "kgp/parallel.hpp"
#include "kgp/readability.hpp"
#include "kgp/semantic.hpp"
#include "kgp/structural.hpp"

namespace fs = std::filesystem;

namespace kgp {

FeatureVector extract_features(const LectureBundle& b, const Resources& r) {
  std::vector<FeatureGroup> groups;
  for (const auto* doc : {&b.ann_slide, &b.ann_transcript}) {
    groups.push_back(syntactic_features(*doc, r.tense_rules));
    groups.push_back(readability_features(*doc, r.lexicon));
    groups.push_back(lexical_features(*doc, r.lexicon, r.aoa, r.stopwords));
  }
  groups.push_back(slide_structure_features(b.slides));
  groups.push_back(srt_structure_features(b.transcript, b.ann_transcript));
  groups.push_back(semantic_group(b.emb_slide, b.emb_transcript).to_features());
  FeatureVector fv = merge(groups, b.video_id);
  if (!fv.values().allFinite())
    throw Error("non-finite feature value for video '" + b.video_id + "'");
  return fv;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << contents;
}

Resources load_resources(const fs::path& root) {
  Resources r;
  r.lexicon = load_lexicon(read_file(root / "lexicon.tsv"));
  r.aoa = load_aoa(read_file(root / "aoa.tsv"));
  if (fs::exists(root / "stopwords.txt")) r.stopwords = load_stopwords(read_file(root / "stopwords.txt"));
  return r;
}

std::vector<std::string> list_videos(const fs::path& root) {
  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(root))
    if (entry.is_directory()) ids.push_back(entry.path().filename().string());
  std::sort(ids.begin(), ids.end());
  return ids;
}

namespace {

template <typename F>
auto with_file(const fs::path& path, F&& parse) {
  if (!fs::exists(path)) throw Error("missing file " + path.string());
  try {
    return parse(read_file(path));
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

}  // namespace

LectureBundle load_bundle(const fs::path& root, const std::string& id,
                          const ExternalFeatureTable* mm) {
  const fs::path dir = root / id;
  auto transcript = with_file(dir / "transcript.srt", [&](const std::string& s) { return parse_srt(s, id); });
  auto slides = with_file(dir / "slides.json", [](const std::string& s) { return parse_slides(s); });
  auto annotations = [&](const std::string& stem, Modality m) {
    const std::string conllu = with_file(dir / (stem + ".conllu"), [](std::string s) { return s; });
    return with_file(dir / (stem + ".trees"), [&](const std::string& trees) {
      return parse_annotations(conllu, trees, m);
    });
  };
  auto ann_slide = annotations("slide", Modality::Slide);
  auto ann_transcript = annotations("transcript", Modality::Transcript);
  auto emb_slide = with_file(dir / "emb_slide.jsonl", [](const std::string& s) {
    return load_embeddings(s, Modality::Slide);
  });
  auto emb_srt = with_file(dir / "emb_srt.jsonl", [](const std::string& s) {
    return load_embeddings(s, Modality::Transcript);
  });
  std::optional<Eigen::VectorXd> mm_row;
  if (mm)
    if (const auto it = mm->rows.find(id); it != mm->rows.end()) mm_row = it->second;
  try {
    return assemble_bundle(id, std::move(transcript), std::move(slides), std::move(ann_slide),
                           std::move(ann_transcript), std::move(emb_slide), std::move(emb_srt),
                           std::move(mm_row));
  } catch (const Error& e) {
    throw Error("video '" + id + "': " + e.what());
  }
}

std::vector<FeatureVector> extract_corpus(const fs::path& root) {
  const Resources resources = load_resources(root);
  const auto ids = list_videos(root);
  std::vector<FeatureVector> out(ids.size());
  parallel_for(ids.size(), [&](std::size_t i) {
    out[i] = extract_features(load_bundle(root, ids[i]), resources);
  });
  return out;
}

}  // namespace kgp
