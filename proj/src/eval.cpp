#include "kgp/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include "kgp/error.hpp"
#include "kgp/log.hpp"
#include "kgp/parallel.hpp"
#include "kgp/preprocess.hpp"
#include "kgp/random.hpp"

namespace kgp {

namespace {

int idx(KgClass c) { return static_cast<int>(c); }

double safe_div(double a, double b) { return b > 0 ? a / b : 0.0; }

}  // namespace

Metrics compute_metrics(std::span<const KgClass> truth, std::span<const KgClass> predicted) {
  if (truth.size() != predicted.size())
    throw DimensionError("compute_metrics: " + std::to_string(truth.size()) + " labels but " +
                         std::to_string(predicted.size()) + " predictions");
  if (truth.empty()) throw ValidationError("compute_metrics: no samples");
  Metrics m;
  for (std::size_t i = 0; i < truth.size(); ++i) m.confusion(idx(truth[i]), idx(predicted[i])) += 1;
  m.samples = static_cast<long>(truth.size());
  for (int c = 0; c < kClassCount; ++c) {
    const double tp = m.confusion(c, c);
    const double pred = m.confusion.col(c).sum();
    const double actual = m.confusion.row(c).sum();
    m.precision[c] = safe_div(tp, pred);
    m.recall[c] = safe_div(tp, actual);
    m.f1[c] = safe_div(2 * m.precision[c] * m.recall[c], m.precision[c] + m.recall[c]);
  }
  auto mean3 = [](const std::array<double, kClassCount>& a) { return (a[0] + a[1] + a[2]) / 3.0; };
  m.macro_precision = mean3(m.precision);
  m.macro_recall = mean3(m.recall);
  m.macro_f1 = mean3(m.f1);
  m.accuracy = static_cast<double>(m.confusion.trace()) / static_cast<double>(m.samples);
  return m;
}

Metrics average_metrics(std::span<const Metrics> folds) {
  Metrics out;
  if (folds.empty()) return out;
  const double n = static_cast<double>(folds.size());
  for (const auto& f : folds) {
    for (int c = 0; c < kClassCount; ++c) {
      out.precision[c] += f.precision[c] / n;
      out.recall[c] += f.recall[c] / n;
      out.f1[c] += f.f1[c] / n;
    }
    out.macro_precision += f.macro_precision / n;
    out.macro_recall += f.macro_recall / n;
    out.macro_f1 += f.macro_f1 / n;
    out.accuracy += f.accuracy / n;
    out.confusion += f.confusion;
    out.samples += f.samples;
  }
  return out;
}

nlohmann::json Metrics::to_json() const {
  nlohmann::json j;
  for (int c = 0; c < kClassCount; ++c)
    j["per_class"][std::string(class_name(static_cast<KgClass>(c)))] = {
        {"precision", precision[c]}, {"recall", recall[c]}, {"f1", f1[c]}};
  j["macro"] = {{"precision", macro_precision}, {"recall", macro_recall}, {"f1", macro_f1}};
  j["accuracy"] = accuracy;
  j["samples"] = samples;
  for (int r = 0; r < 3; ++r) j["confusion"].push_back({confusion(r, 0), confusion(r, 1), confusion(r, 2)});
  return j;
}

// ---------------------------------------------------------------------------
// Baselines

namespace {

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

KgClass majority(const std::vector<KgClass>& votes) {
  std::array<int, kClassCount> counts{};
  for (auto v : votes) ++counts[static_cast<std::size_t>(idx(v))];
  int best = 0;
  for (int c = 1; c < kClassCount; ++c)
    if (counts[static_cast<std::size_t>(c)] > counts[static_cast<std::size_t>(best)]) best = c;
  return static_cast<KgClass>(best);
}

}  // namespace

BaselineResult baseline_v22(const SessionTable& sessions) {
  if (sessions.sessions.empty()) throw ValidationError("baseline: no sessions");
  // video -> participant -> scores (a participant normally has one session per video)
  std::map<std::string, std::map<std::string, std::vector<double>>> table;
  for (const auto& s : sessions.sessions) table[s.video_id][s.participant_id].push_back(s.kg_score);

  std::vector<double> video_means;
  for (const auto& [video, by_participant] : table) {
    std::vector<double> all;
    for (const auto& [p, scores] : by_participant) all.insert(all.end(), scores.begin(), scores.end());
    video_means.push_back(mean_of(all));
  }
  const ZScale scale = ZScale::fit(video_means);

  BaselineResult r;
  std::size_t i = 0;
  for (const auto& [video, by_participant] : table) {
    r.ids.push_back(video);
    r.truth.push_back(scale.classify(video_means[i++]));
    if (by_participant.size() < 2) {
      warn("baseline V22: video '" + video + "' has a single participant; predicting Moderate");
      r.predicted.push_back(KgClass::Moderate);
      continue;
    }
    std::vector<KgClass> votes;
    for (const auto& [p, own] : by_participant) {
      std::vector<double> others;
      for (const auto& [q, scores] : by_participant)
        if (q != p) others.insert(others.end(), scores.begin(), scores.end());
      votes.push_back(scale.classify(mean_of(others)));
    }
    r.predicted.push_back(majority(votes));
  }
  r.metrics = compute_metrics(r.truth, r.predicted);
  return r;
}

BaselineResult baseline_v111(const SessionTable& sessions) {
  if (sessions.sessions.empty()) throw ValidationError("baseline: no sessions");
  // Canonical order so the result does not depend on the table's row order.
  std::vector<Session> rows = sessions.sessions;
  std::sort(rows.begin(), rows.end(), [](const Session& a, const Session& b) {
    if (a.participant_id != b.participant_id) return a.participant_id < b.participant_id;
    if (a.video_id != b.video_id) return a.video_id < b.video_id;
    return a.kg_score < b.kg_score;
  });
  std::vector<double> scores;
  for (const auto& s : rows) scores.push_back(s.kg_score);
  const ZScale scale = ZScale::fit(scores);

  std::map<std::string, std::vector<std::size_t>> by_participant;
  for (std::size_t i = 0; i < rows.size(); ++i) by_participant[rows[i].participant_id].push_back(i);

  BaselineResult r;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& own = by_participant[rows[i].participant_id];
    r.ids.push_back(rows[i].participant_id + "/" + rows[i].video_id);
    r.truth.push_back(scale.classify(rows[i].kg_score));
    if (own.size() < 2) {
      warn("baseline V111: participant '" + rows[i].participant_id +
           "' has a single session; predicting Moderate");
      r.predicted.push_back(KgClass::Moderate);
      continue;
    }
    std::vector<double> others;
    for (auto j : own)
      if (j != i) others.push_back(rows[j].kg_score);
    r.predicted.push_back(scale.classify(mean_of(others)));
  }
  r.metrics = compute_metrics(r.truth, r.predicted);
  return r;
}

// ---------------------------------------------------------------------------
// Importance

std::vector<FeatureUnit> importance_units(const std::vector<Column>& columns, bool include_embeddings) {
  std::vector<FeatureUnit> units;
  int slide = -1, srt = -1;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const auto col = static_cast<Eigen::Index>(c);
    const Group g = columns[c].group;
    if (g == Group::EmbedSlide || g == Group::EmbedSrt) {
      if (!include_embeddings) continue;
      int& slot = g == Group::EmbedSlide ? slide : srt;
      if (slot < 0) {
        slot = static_cast<int>(units.size());
        units.push_back({g == Group::EmbedSlide ? "embed_slide" : "embed_srt", g, {}});
      }
      units[static_cast<std::size_t>(slot)].columns.push_back(col);
      continue;
    }
    units.push_back({columns[c].name, g, {col}});
  }
  return units;
}

namespace {

double holdout_accuracy(const ClassifierSpec& spec, const Eigen::MatrixXd& train,
                        std::span<const KgClass> train_labels, const Eigen::MatrixXd& validation,
                        std::span<const KgClass> validation_labels) {
  const TrainedModel model = kgp::train(spec, train, train_labels);
  const auto pred = predict_batch(model, validation);
  long hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hits += pred[i] == validation_labels[i];
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

void sort_entries(std::vector<ImportanceEntry>& e) {
  std::stable_sort(e.begin(), e.end(), [](const ImportanceEntry& a, const ImportanceEntry& b) {
    if (a.importance != b.importance) return a.importance > b.importance;
    return a.feature < b.feature;
  });
}

std::string_view type_label(Group g) {
  switch (g) {
    case Group::Txt: return "TXT";
    case Group::EmbedSlide:
    case Group::EmbedSrt: return "EMBED";
    case Group::Mm: return "MM";
    case Group::User: return "USER";
  }
  return "?";
}

}  // namespace

ImportanceReport drop_column_importance(const ClassifierSpec& spec, const Eigen::MatrixXd& train,
                                        std::span<const KgClass> train_labels,
                                        const Eigen::MatrixXd& validation,
                                        std::span<const KgClass> validation_labels,
                                        const std::vector<FeatureUnit>& units, std::size_t threads) {
  if (train.cols() != validation.cols()) throw DimensionError("importance: train/validation widths differ");
  if (validation.rows() == 0) throw ValidationError("importance: empty validation set");
  ImportanceReport report;
  report.baseline = holdout_accuracy(spec, train, train_labels, validation, validation_labels);
  std::vector<double> dropped(units.size(), 0.0);
  parallel_for(
      units.size(),
      [&](std::size_t u) {
        std::vector<bool> drop(static_cast<std::size_t>(train.cols()), false);
        for (auto c : units[u].columns) drop[static_cast<std::size_t>(c)] = true;
        std::vector<Eigen::Index> keep;
        for (Eigen::Index c = 0; c < train.cols(); ++c)
          if (!drop[static_cast<std::size_t>(c)]) keep.push_back(c);
        dropped[u] = holdout_accuracy(spec, train(Eigen::all, keep), train_labels,
                                      validation(Eigen::all, keep), validation_labels);
      },
      threads == 0 ? thread_count() : threads);
  for (std::size_t u = 0; u < units.size(); ++u)
    report.entries.push_back({units[u].name, units[u].group, report.baseline - dropped[u]});
  sort_entries(report.entries);
  return report;
}

ImportanceReport drop_column_importance(const ClassifierSpec& spec, const Dataset& ds,
                                        std::span<const Eigen::Index> train_rows,
                                        std::span<const Eigen::Index> validation_rows,
                                        Eigen::Index pca_k, bool include_embeddings,
                                        std::size_t threads) {
  const FoldPipeline pipe = FoldPipeline::fit(ds, train_rows, pca_k);
  std::vector<KgClass> ytrain, yval;
  for (auto r : train_rows) ytrain.push_back(ds.labels[static_cast<std::size_t>(r)]);
  for (auto r : validation_rows) yval.push_back(ds.labels[static_cast<std::size_t>(r)]);
  return drop_column_importance(spec, pipe.transform(ds, train_rows), ytrain,
                                pipe.transform(ds, validation_rows), yval,
                                importance_units(pipe.output_columns(), include_embeddings), threads);
}

ImportanceReport average_reports(std::span<const ImportanceReport> reports) {
  ImportanceReport out;
  if (reports.empty()) return out;
  const double n = static_cast<double>(reports.size());
  std::map<std::string, ImportanceEntry> sums;
  for (const auto& r : reports) {
    out.baseline += r.baseline / n;
    for (const auto& e : r.entries) {
      auto [it, fresh] = sums.try_emplace(e.feature, ImportanceEntry{e.feature, e.group, 0.0});
      it->second.importance += e.importance / n;
    }
  }
  for (auto& [name, e] : sums) out.entries.push_back(e);
  sort_entries(out.entries);
  return out;
}

std::vector<std::string> select_features(const ImportanceReport& report) {
  std::vector<std::string> kept;
  for (const auto& e : report.entries)
    if (e.importance >= 0) kept.push_back(e.feature);
  if (kept.empty() && !report.entries.empty()) {
    warn("feature selection kept nothing; keeping all features");
    for (const auto& e : report.entries) kept.push_back(e.feature);
  }
  return kept;
}

nlohmann::json ImportanceReport::to_json() const {
  nlohmann::json j;
  j["baseline_accuracy"] = baseline;
  j["features"] = nlohmann::json::array();
  for (const auto& e : entries)
    j["features"].push_back({{"type", type_label(e.group)}, {"feature", e.feature}, {"importance", e.importance}});
  return j;
}

// ---------------------------------------------------------------------------
// Cross-validation

namespace {

std::vector<KgClass> labels_of(const Dataset& ds, std::span<const Eigen::Index> rows) {
  std::vector<KgClass> out;
  for (auto r : rows) out.push_back(ds.labels[static_cast<std::size_t>(r)]);
  return out;
}

bool has_two_classes(const std::vector<KgClass>& y) {
  return std::any_of(y.begin(), y.end(), [&](KgClass c) { return c != y.front(); });
}

// Video-disjoint split of a fold's training rows for the inner importance
// analysis: a fifth of the videos (at least one) is held out.
bool inner_split(const Dataset& ds, std::span<const Eigen::Index> rows, std::uint64_t seed,
                 std::vector<Eigen::Index>& inner_train, std::vector<Eigen::Index>& inner_val) {
  std::vector<std::string> videos;
  for (auto r : rows) videos.push_back(ds.video_ids[static_cast<std::size_t>(r)]);
  std::sort(videos.begin(), videos.end());
  videos.erase(std::unique(videos.begin(), videos.end()), videos.end());
  if (videos.size() < 2) return false;
  Rng rng(seed);
  rng.shuffle(videos);
  const std::size_t held = std::max<std::size_t>(1, videos.size() / 5);
  const std::vector<std::string> val_videos(videos.begin(), videos.begin() + static_cast<long>(held));
  for (auto r : rows) {
    const auto& v = ds.video_ids[static_cast<std::size_t>(r)];
    (std::find(val_videos.begin(), val_videos.end(), v) != val_videos.end() ? inner_val : inner_train)
        .push_back(r);
  }
  return has_two_classes(labels_of(ds, inner_train));
}

}  // namespace

int CvResult::completed() const {
  return static_cast<int>(std::count_if(folds.begin(), folds.end(), [](const FoldResult& f) { return !f.skipped; }));
}

std::optional<ImportanceReport> CvResult::importance() const {
  std::vector<ImportanceReport> reports;
  for (const auto& f : folds)
    if (f.importance) reports.push_back(*f.importance);
  if (reports.empty()) return std::nullopt;
  return average_reports(reports);
}

CvResult cross_validate(const ClassifierSpec& spec, const Dataset& ds, const FoldAssignment& folds,
                        const CvOptions& options) {
  if (static_cast<Eigen::Index>(folds.fold_of_row.size()) != ds.rows())
    throw DimensionError("fold assignment does not match the dataset");
  CvResult result;
  std::vector<Metrics> done;
  for (int f = 0; f < folds.k; ++f) {
    FoldResult fr;
    fr.fold = f;
    const auto train_rows = folds.train_rows(f);
    const auto test_rows = folds.test_rows(f);
    const auto ytrain = labels_of(ds, train_rows);
    const auto ytest = labels_of(ds, test_rows);
    if (test_rows.empty() || train_rows.empty()) {
      fr.skipped = true;
      fr.skip_reason = "empty train or test set";
    } else if (!has_two_classes(ytrain)) {
      fr.skipped = true;
      fr.skip_reason = "training set has a single class";
    }
    if (fr.skipped) {
      warn("fold " + std::to_string(f) + " skipped: " + fr.skip_reason);
      result.folds.push_back(std::move(fr));
      continue;
    }

    const FoldPipeline pipe = FoldPipeline::fit(ds, train_rows, options.pca_k);
    fr.preprocessing = pipe.to_json(ds);
    Eigen::MatrixXd xtrain = pipe.transform(ds, train_rows);
    Eigen::MatrixXd xtest = pipe.transform(ds, test_rows);

    if (options.select || options.importance) {
      std::vector<Eigen::Index> inner_train, inner_val;
      const std::uint64_t inner_seed = mix_seed(spec.seed, 0x1000 + static_cast<std::uint64_t>(f));
      if (inner_split(ds, train_rows, inner_seed, inner_train, inner_val)) {
        fr.importance =
            drop_column_importance(spec, ds, inner_train, inner_val, options.pca_k, false, options.threads);
      } else {
        warn("fold " + std::to_string(f) + ": no usable inner hold-out; importance analysis skipped");
      }
    }
    if (options.select && fr.importance) {
      fr.kept = select_features(*fr.importance);
      std::vector<Eigen::Index> keep;
      const auto& cols = pipe.output_columns();
      for (std::size_t c = 0; c < cols.size(); ++c) {
        const bool embed = cols[c].group == Group::EmbedSlide || cols[c].group == Group::EmbedSrt;
        if (embed || std::find(fr.kept.begin(), fr.kept.end(), cols[c].name) != fr.kept.end())
          keep.push_back(static_cast<Eigen::Index>(c));
      }
      xtrain = Eigen::MatrixXd(xtrain(Eigen::all, keep));
      xtest = Eigen::MatrixXd(xtest(Eigen::all, keep));
    }

    const TrainedModel model = train(spec, xtrain, ytrain);
    fr.metrics = compute_metrics(ytest, predict_batch(model, xtest));
    done.push_back(fr.metrics);
    result.folds.push_back(std::move(fr));
  }
  if (done.empty()) throw ValidationError("cross-validation: every fold was skipped");
  result.mean = average_metrics(done);
  return result;
}

CvResult cross_validate(const ClassifierSpec& spec, const Dataset& ds, CategoryMask mask, int k,
                        std::uint64_t seed, const CvOptions& options) {
  const Dataset masked = apply_mask(ds, mask);
  return cross_validate(spec, masked, make_folds(masked, k, seed), options);
}

// ---------------------------------------------------------------------------
// Reports

ResultRow random_guess_row() { return {"Random Guess Baseline", "-", std::nullopt, 100.0 / 3.0}; }

ResultRow baseline_row(Variant v, const Metrics& m) {
  return {"Knowledge Gain Baseline " + std::string(variant_name(v)), "-", m, 100.0 * m.accuracy};
}

namespace {

std::string fmt(double v, const char* spec = "%.4f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string results_csv(std::span<const ResultRow> rows) {
  std::ostringstream os;
  os << "category,classifier";
  for (const char* cls : {"low", "moderate", "high", "overall"})
    for (const char* m : {"pr", "re", "f1"}) os << ',' << cls << '_' << m;
  os << ",accuracy_percent\n";
  for (const auto& r : rows) {
    os << csv_field(r.category) << ',' << csv_field(r.classifier);
    if (r.metrics) {
      const auto& m = *r.metrics;
      for (int c = 0; c < kClassCount; ++c)
        os << ',' << fmt(m.precision[c]) << ',' << fmt(m.recall[c]) << ',' << fmt(m.f1[c]);
      os << ',' << fmt(m.macro_precision) << ',' << fmt(m.macro_recall) << ',' << fmt(m.macro_f1);
    } else {
      for (int i = 0; i < 12; ++i) os << ",-";
    }
    os << ',' << fmt(r.accuracy_percent, "%.2f") << '\n';
  }
  return os.str();
}

nlohmann::json results_json(std::span<const ResultRow> rows) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row{{"category", r.category},
                       {"classifier", r.classifier},
                       {"accuracy_percent", r.accuracy_percent}};
    if (r.metrics) row["metrics"] = r.metrics->to_json();
    j.push_back(std::move(row));
  }
  return j;
}

std::string importance_csv(const ImportanceReport& report, std::size_t top) {
  std::ostringstream os;
  os << "type,feature,importance\n";
  std::size_t n = 0;
  for (const auto& e : report.entries) {
    if (top && n++ >= top) break;
    os << type_label(e.group) << ',' << csv_field(e.feature) << ',' << fmt(e.importance) << '\n';
  }
  return os.str();
}

}  // namespace kgp
