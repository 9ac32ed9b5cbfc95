#include "kgp/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>

#include "kgp/error.hpp"
#include "kgp/random.hpp"
#include "kgp/text.hpp"

namespace kgp {

std::string_view class_name(KgClass c) {
  switch (c) {
    case KgClass::Low: return "Low";
    case KgClass::Moderate: return "Moderate";
    case KgClass::High: return "High";
  }
  return "?";
}

ZScale ZScale::fit(std::span<const double> scores) {
  if (scores.empty()) throw ValidationError("cannot Z-score an empty score list");
  ZScale z;
  z.mean = std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
  double ss = 0;
  for (double x : scores) ss += (x - z.mean) * (x - z.mean);
  z.sd = std::sqrt(ss / static_cast<double>(scores.size()));
  return z;
}

KgClass ZScale::classify(double score) const {
  // Rounding noise must not turn equal scores into a spread, or move a score
  // that sits exactly on a threshold off it.
  if (!(sd > kZSpreadEpsilon * std::max(1.0, std::abs(mean)))) return KgClass::Moderate;
  const double z = (score - mean) / sd;
  if (z < -0.5 - kZThresholdEpsilon) return KgClass::Low;
  if (z > 0.5 + kZThresholdEpsilon) return KgClass::High;
  return KgClass::Moderate;
}

std::vector<KgClass> zscore_labels(std::span<const double> scores) {
  const ZScale z = ZScale::fit(scores);
  std::vector<KgClass> out;
  out.reserve(scores.size());
  for (double x : scores) out.push_back(z.classify(x));
  return out;
}

std::string_view variant_name(Variant v) { return v == Variant::V22 ? "V22" : "V111"; }

Variant parse_variant(std::string_view s) {
  const std::string u = text::to_lower(s);
  if (u == "v22") return Variant::V22;
  if (u == "v111") return Variant::V111;
  throw ValidationError("unknown variant '" + std::string(s) + "' (expected V22 or V111)");
}

std::string_view group_name(Group g) {
  switch (g) {
    case Group::Txt: return "TXT";
    case Group::EmbedSlide: return "EMBED_SLIDE";
    case Group::EmbedSrt: return "EMBED_SRT";
    case Group::Mm: return "MM";
    case Group::User: return "USER";
  }
  return "?";
}

std::vector<Eigen::Index> Dataset::columns_in(Group g) const {
  std::vector<Eigen::Index> out;
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (columns[c].group == g) out.push_back(static_cast<Eigen::Index>(c));
  return out;
}

std::vector<std::string> Dataset::distinct_videos() const {
  std::set<std::string> s(video_ids.begin(), video_ids.end());
  return {s.begin(), s.end()};
}

Dataset Dataset::select_rows(std::span<const Eigen::Index> rows) const {
  Dataset out;
  out.variant = variant;
  out.columns = columns;
  out.dropped_columns = dropped_columns;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
  std::set<std::string> missing(videos_missing_mm.begin(), videos_missing_mm.end());
  std::set<std::string> kept_missing;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = rows[i];
    out.features.row(static_cast<Eigen::Index>(i)) = features.row(r);
    out.labels.push_back(labels[static_cast<std::size_t>(r)]);
    out.video_ids.push_back(video_ids[static_cast<std::size_t>(r)]);
    if (!participant_ids.empty()) out.participant_ids.push_back(participant_ids[static_cast<std::size_t>(r)]);
    if (missing.count(out.video_ids.back())) kept_missing.insert(out.video_ids.back());
  }
  out.videos_missing_mm.assign(kept_missing.begin(), kept_missing.end());
  return out;
}

namespace {

Group group_of(Category c) {
  switch (c) {
    case Category::EmbedSlide: return Group::EmbedSlide;
    case Category::EmbedSrt: return Group::EmbedSrt;
    case Category::Mm: return Group::Mm;
    case Category::User: return Group::User;
    default: return Group::Txt;
  }
}

// Columns and per-video rows shared by both variants.
struct VideoTable {
  std::vector<Column> columns;
  std::map<std::string, Eigen::VectorXd> rows;
  std::vector<std::string> missing_mm;
};

VideoTable video_table(const std::vector<FeatureVector>& vectors, const ExternalFeatureTable* mm) {
  VideoTable t;
  const Eigen::Index dim = vectors.empty() ? 0 : vectors.front().embedding_dim();
  const auto& schema = canonical_schema();
  for (const auto& e : schema.entries()) {
    if (e.category == Category::User) continue;
    if (!e.is_block()) {
      t.columns.push_back({e.name, group_of(e.category)});
      continue;
    }
    for (Eigen::Index k = 0; k < dim; ++k)
      t.columns.push_back({e.name + "." + std::to_string(k), group_of(e.category)});
  }
  const Eigen::Index mm_width = mm ? static_cast<Eigen::Index>(mm->columns.size()) : 0;
  if (mm)
    for (const auto& c : mm->columns) t.columns.push_back({c, Group::Mm});
  for (const auto& fv : vectors) {
    if (fv.embedding_dim() != dim) throw DimensionError("feature vectors differ in embedding dim");
    Eigen::VectorXd row(fv.values().size() + mm_width);
    row.head(fv.values().size()) = fv.values();
    if (mm) {
      const auto it = mm->rows.find(fv.video_id());
      if (it != mm->rows.end()) {
        row.tail(mm_width) = it->second;
      } else {
        row.tail(mm_width).setConstant(std::numeric_limits<double>::quiet_NaN());
        t.missing_mm.push_back(fv.video_id());
      }
    }
    if (!t.rows.emplace(fv.video_id(), std::move(row)).second)
      throw ValidationError("duplicate feature vector for video '" + fv.video_id() + "'");
  }
  return t;
}

}  // namespace

Dataset build_v22(const std::vector<FeatureVector>& vectors, const SessionTable& sessions,
                  const ExternalFeatureTable* mm) {
  VideoTable t = video_table(vectors, mm);
  std::map<std::string, std::vector<double>> by_video;
  for (const auto& s : sessions.sessions) {
    if (!t.rows.count(s.video_id))
      throw ValidationError("session references unknown video '" + s.video_id + "'");
    by_video[s.video_id].push_back(s.kg_score);
  }
  Dataset ds;
  ds.variant = Variant::V22;
  ds.columns = std::move(t.columns);
  ds.videos_missing_mm = std::move(t.missing_mm);
  std::vector<double> means;
  for (const auto& [id, row] : t.rows) {
    const auto it = by_video.find(id);
    if (it == by_video.end()) throw ValidationError("video '" + id + "' has no sessions");
    means.push_back(std::accumulate(it->second.begin(), it->second.end(), 0.0) /
                    static_cast<double>(it->second.size()));
    ds.video_ids.push_back(id);
  }
  ds.labels = zscore_labels(means);
  ds.features.resize(static_cast<Eigen::Index>(ds.video_ids.size()),
                     static_cast<Eigen::Index>(ds.columns.size()));
  for (std::size_t i = 0; i < ds.video_ids.size(); ++i)
    ds.features.row(static_cast<Eigen::Index>(i)) = t.rows.at(ds.video_ids[i]).transpose();
  return ds;
}

Dataset build_v111(const std::vector<FeatureVector>& vectors, const SessionTable& sessions,
                   const ExternalFeatureTable* mm) {
  VideoTable t = video_table(vectors, mm);
  const auto participants = sessions.participants();
  Dataset ds;
  ds.variant = Variant::V111;
  ds.columns = std::move(t.columns);
  const auto base = static_cast<Eigen::Index>(ds.columns.size());
  for (const auto& p : participants) ds.columns.push_back({"person_id_" + p, Group::User});
  ds.features = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(sessions.sessions.size()),
                                      static_cast<Eigen::Index>(ds.columns.size()));
  std::vector<double> scores;
  std::set<std::string> missing(t.missing_mm.begin(), t.missing_mm.end()), used_missing;
  for (std::size_t i = 0; i < sessions.sessions.size(); ++i) {
    const auto& s = sessions.sessions[i];
    const auto it = t.rows.find(s.video_id);
    if (it == t.rows.end())
      throw ValidationError("session references unknown video '" + s.video_id + "'");
    const auto r = static_cast<Eigen::Index>(i);
    ds.features.row(r).head(base) = it->second.transpose();
    const auto p = std::lower_bound(participants.begin(), participants.end(), s.participant_id);
    ds.features(r, base + (p - participants.begin())) = 1.0;
    ds.video_ids.push_back(s.video_id);
    ds.participant_ids.push_back(s.participant_id);
    scores.push_back(s.kg_score);
    if (missing.count(s.video_id)) used_missing.insert(s.video_id);
  }
  ds.videos_missing_mm.assign(used_missing.begin(), used_missing.end());
  if (!scores.empty()) ds.labels = zscore_labels(scores);
  return ds;
}

Dataset dataset_from_matrix(const Eigen::MatrixXd& x, std::vector<KgClass> labels,
                            std::vector<std::string> groups) {
  if (static_cast<Eigen::Index>(labels.size()) != x.rows())
    throw DimensionError("label count differs from row count");
  Dataset ds;
  ds.features = x;
  ds.labels = std::move(labels);
  for (Eigen::Index c = 0; c < x.cols(); ++c) ds.columns.push_back({"f" + std::to_string(c), Group::Txt});
  if (groups.empty()) {
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "r%06ld", static_cast<long>(r));
      ds.video_ids.emplace_back(buf);
    }
  } else {
    if (static_cast<Eigen::Index>(groups.size()) != x.rows())
      throw DimensionError("group count differs from row count");
    ds.video_ids = std::move(groups);
  }
  return ds;
}

std::pair<Dataset, std::vector<std::string>> drop_zero_features(Dataset ds) {
  std::vector<Eigen::Index> keep;
  std::vector<std::string> removed;
  for (std::size_t c = 0; c < ds.columns.size(); ++c) {
    const auto col = static_cast<Eigen::Index>(c);
    const Group g = ds.columns[c].group;
    const bool filterable = g == Group::Txt || g == Group::Mm;
    // NaN (missing MM) compares unequal to 0, so such columns are kept.
    if (filterable && ds.rows() > 0 && (ds.features.col(col).array() == 0.0).all())
      removed.push_back(ds.columns[c].name);
    else
      keep.push_back(col);
  }
  Dataset out = ds;
  out.columns.clear();
  for (auto c : keep) out.columns.push_back(ds.columns[static_cast<std::size_t>(c)]);
  out.features = ds.features(Eigen::all, keep);
  out.dropped_columns.insert(out.dropped_columns.end(), removed.begin(), removed.end());
  return {std::move(out), std::move(removed)};
}

// ---------------------------------------------------------------------------

CategoryMask CategoryMask::parse(std::string_view text) {
  CategoryMask m;
  for (auto part : text::split(text, '+')) {
    const std::string p = text::trim(part);
    std::string u;
    for (char c : p) u += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (u == "TXT") m.set(Group::Txt);
    else if (u == "EMBED") { m.set(Group::EmbedSlide); m.set(Group::EmbedSrt); }
    else if (u == "EMBED_SLIDE" || u == "EMBED(SLIDE)") m.set(Group::EmbedSlide);
    else if (u == "EMBED_SRT" || u == "EMBED(SRT)") m.set(Group::EmbedSrt);
    else if (u == "MM") m.set(Group::Mm);
    else if (u == "USER") m.set(Group::User);
    else throw ValidationError("unknown feature category '" + p + "' in mask '" + std::string(text) + "'");
  }
  return m;
}

std::vector<CategoryMask> CategoryMask::standard_masks() {
  std::vector<CategoryMask> out;
  for (auto s : {"TXT", "EMBED", "MM", "TXT+EMBED", "TXT+MM", "MM+EMBED", "TXT+MM+EMBED"})
    out.push_back(parse(s));
  return out;
}

std::string CategoryMask::to_string() const {
  std::vector<std::string> parts;
  if (has(Group::Mm)) parts.push_back("MM");
  if (has(Group::Txt)) parts.push_back("TXT");
  if (has(Group::EmbedSlide) && has(Group::EmbedSrt)) parts.push_back("EMBED");
  else if (has(Group::EmbedSlide)) parts.push_back("EMBED_SLIDE");
  else if (has(Group::EmbedSrt)) parts.push_back("EMBED_SRT");
  if (has(Group::User)) parts.push_back("USER");
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "+" : "") + parts[i];
  return out;
}

Dataset apply_mask(const Dataset& ds, CategoryMask mask) {
  if (mask.empty()) throw ValidationError("empty category mask");
  if (ds.variant == Variant::V111) mask.set(Group::User);
  if (mask.has(Group::Mm)) {
    if (ds.columns_in(Group::Mm).empty())
      throw ValidationError("mask requests MM but the dataset has no MM columns");
    if (!ds.videos_missing_mm.empty()) {
      std::string msg = "mask requests MM but these videos have no MM row:";
      for (const auto& v : ds.videos_missing_mm) msg += " " + v;
      throw ValidationError(msg);
    }
  }
  std::vector<Eigen::Index> keep;
  for (std::size_t c = 0; c < ds.columns.size(); ++c)
    if (mask.has(ds.columns[c].group)) keep.push_back(static_cast<Eigen::Index>(c));
  Dataset out = ds;
  out.columns.clear();
  for (auto c : keep) out.columns.push_back(ds.columns[static_cast<std::size_t>(c)]);
  out.features = ds.features(Eigen::all, keep);
  if (!mask.has(Group::Mm)) out.videos_missing_mm.clear();
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Eigen::Index> FoldAssignment::train_rows(int fold) const {
  std::vector<Eigen::Index> out;
  for (std::size_t r = 0; r < fold_of_row.size(); ++r)
    if (fold_of_row[r] != fold) out.push_back(static_cast<Eigen::Index>(r));
  return out;
}

std::vector<Eigen::Index> FoldAssignment::test_rows(int fold) const {
  std::vector<Eigen::Index> out;
  for (std::size_t r = 0; r < fold_of_row.size(); ++r)
    if (fold_of_row[r] == fold) out.push_back(static_cast<Eigen::Index>(r));
  return out;
}

FoldAssignment make_folds(const Dataset& ds, int k, std::uint64_t seed) {
  auto videos = ds.distinct_videos();
  if (k < 1) throw ValidationError("fold count must be positive");
  if (static_cast<std::size_t>(k) > videos.size())
    throw ValidationError("cannot make " + std::to_string(k) + " folds from " +
                          std::to_string(videos.size()) + " videos");
  Rng rng(seed);
  rng.shuffle(videos);
  FoldAssignment f;
  f.k = k;
  f.videos.resize(static_cast<std::size_t>(k));
  std::map<std::string, int> fold_of_video;
  for (std::size_t i = 0; i < videos.size(); ++i) {
    const int fold = static_cast<int>(i % static_cast<std::size_t>(k));
    fold_of_video[videos[i]] = fold;
    f.videos[static_cast<std::size_t>(fold)].push_back(videos[i]);
  }
  for (const auto& v : ds.video_ids) f.fold_of_row.push_back(fold_of_video.at(v));
  return f;
}

std::string dataset_to_csv(const Dataset& ds) {
  std::string out = "video_id,participant_id";
  for (const auto& c : ds.columns) out += "," + c.name;
  out += ",label\n";
  char buf[40];
  for (Eigen::Index r = 0; r < ds.rows(); ++r) {
    const auto i = static_cast<std::size_t>(r);
    out += ds.video_ids[i] + "," + (ds.participant_ids.empty() ? "" : ds.participant_ids[i]);
    for (Eigen::Index c = 0; c < ds.features.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", ds.features(r, c));
      out += ",";
      out += buf;
    }
    out += "," + std::string(class_name(ds.labels[i])) + "\n";
  }
  return out;
}

}  // namespace kgp
