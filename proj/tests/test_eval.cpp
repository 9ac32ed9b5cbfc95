#include <doctest.h>

#include <algorithm>

#include "kgp/error.hpp"
#include "kgp/eval.hpp"
#include "kgp/fixtures/corpus.hpp"
#include "kgp/log.hpp"
#include "kgp/preprocess.hpp"
#include "oracles.hpp"

using namespace kgp;
using K = KgClass;

namespace {
struct WarningSink {
  std::vector<std::string> messages;
  WarningHandler prev;
  WarningSink() { prev = set_warning_handler([this](const std::string& m) { messages.push_back(m); }); }
  ~WarningSink() { set_warning_handler(prev); }
};
}  // namespace

TEST_CASE("metrics") {
  const std::vector<K> t{K::Low, K::Moderate, K::High, K::High};
  const auto perfect = compute_metrics(t, t);
  CHECK(perfect.accuracy == 1);
  CHECK(perfect.macro_f1 == 1);

  std::vector<K> truth(6, K::Low);
  truth.insert(truth.end(), 10, K::Moderate);
  truth.insert(truth.end(), 6, K::High);
  const std::vector<K> moderate(22, K::Moderate);
  const auto m = compute_metrics(truth, moderate);
  CHECK(m.accuracy == doctest::Approx(10.0 / 22.0));
  CHECK(m.recall[1] == 1.0);
  CHECK(m.precision[0] == 0);
  CHECK(m.f1[0] == 0);

  const auto swapped = compute_metrics(std::vector<K>{K::Low, K::High}, std::vector<K>{K::High, K::Low});
  CHECK(swapped.accuracy == 0);
  CHECK(swapped.macro_f1 == 0);

  CHECK_THROWS_AS(compute_metrics(t, moderate), DimensionError);
  CHECK_THROWS(compute_metrics(std::vector<K>{}, std::vector<K>{}));
}

TEST_CASE("metric invariants") {
  Rng rng(2);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + rng.index(40);
    std::vector<K> a(n), b(n);
    for (std::size_t j = 0; j < n; ++j) {
      a[j] = static_cast<K>(rng.index(3));
      b[j] = static_cast<K>(rng.index(3));
    }
    const auto m = compute_metrics(a, b);
    CHECK(m.accuracy == doctest::Approx(m.confusion.trace() / static_cast<double>(n)));
    CHECK(m.macro_f1 <= *std::max_element(m.f1.begin(), m.f1.end()) + 1e-12);
    CHECK(m.macro_precision == doctest::Approx((m.precision[0] + m.precision[1] + m.precision[2]) / 3));
    for (double v : m.f1) {
      CHECK(v >= 0);
      CHECK(v <= 1);
    }
  }
}

TEST_CASE("baselines equal the brute-force oracle") {
  WarningSink quiet;
  Rng rng(31);
  for (int i = 0; i < 40; ++i) {
    const SessionTable t = testing::random_sessions(rng);
    const auto o22 = testing::oracle_v22(t);
    const auto b22 = baseline_v22(t);
    CHECK(b22.truth == o22.truth);
    CHECK(b22.predicted == o22.predicted);
    const auto o111 = testing::oracle_v111(t);
    const auto b111 = baseline_v111(t);
    CHECK(b111.truth == o111.truth);
    CHECK(b111.predicted == o111.predicted);

    SessionTable shuffled = t;
    rng.shuffle(shuffled.sessions);
    CHECK(baseline_v22(shuffled).metrics.to_json() == b22.metrics.to_json());
    CHECK(baseline_v111(shuffled).metrics.to_json() == b111.metrics.to_json());
  }
}

TEST_CASE("baselines on degenerate tables") {
  SessionTable same;
  for (int p = 0; p < 3; ++p)
    for (int v = 0; v < 4; ++v) same.sessions.push_back({"p" + std::to_string(p), "v" + std::to_string(v), 2.5});
  CHECK(baseline_v22(same).metrics.accuracy == 1.0);
  CHECK(baseline_v111(same).metrics.accuracy == 1.0);

  // A participant with constant scores is predicted by their own level.
  SessionTable flat;
  for (int v = 0; v < 4; ++v) {
    flat.sessions.push_back({"a", "v" + std::to_string(v), 0.0});
    flat.sessions.push_back({"b", "v" + std::to_string(v), 10.0});
  }
  const auto r = baseline_v111(flat);
  CHECK(r.predicted == r.truth);

  WarningSink sink;
  SessionTable lone;
  lone.sessions = {{"a", "v1", 1}, {"b", "v2", 2}};
  const auto l = baseline_v22(lone);
  CHECK(l.predicted == std::vector<K>{K::Moderate, K::Moderate});
  CHECK(sink.messages.size() == 2);
}

TEST_CASE("importance: redundancy, unique signal and noise") {
  // Column 0 leaks the label, column 1 copies it, column 2 is noise.
  Rng rng(5);
  const int n = 90;
  Eigen::MatrixXd x(n, 3);
  std::vector<K> y(n);
  for (int i = 0; i < n; ++i) {
    y[static_cast<std::size_t>(i)] = static_cast<K>(i % 3);
    x(i, 0) = (i % 3) + 0.1 * rng.normal();
    x(i, 1) = x(i, 0);
    x(i, 2) = rng.normal();
  }
  const Eigen::MatrixXd train = x.topRows(60), val = x.bottomRows(30);
  const std::vector<K> ytr(y.begin(), y.begin() + 60), yval(y.begin() + 60, y.end());
  std::vector<Column> cols{{"leak", Group::Txt}, {"copy", Group::Txt}, {"noise", Group::Txt}};
  const auto units = importance_units(cols, false);
  const auto spec = ClassifierSpec::defaults(ClassifierKind::NaiveBayes);
  const auto rep = drop_column_importance(spec, train, ytr, val, yval, units, 1);
  auto imp = [&](const std::string& f) {
    for (const auto& e : rep.entries)
      if (e.feature == f) return e.importance;
    FAIL("missing " << f);
    return 0.0;
  };
  CHECK(std::abs(imp("copy")) <= 0.02);
  CHECK(std::abs(imp("noise")) <= 1.0 / 30.0 + 1e-12);

  // Unique information: drop both copies from the picture.
  const Eigen::MatrixXd tr2 = train(Eigen::all, std::vector<Eigen::Index>{0, 2});
  const Eigen::MatrixXd va2 = val(Eigen::all, std::vector<Eigen::Index>{0, 2});
  std::vector<FeatureUnit> units2{{"leak", Group::Txt, {0}}, {"noise", Group::Txt, {1}}};
  const auto rep2 = drop_column_importance(spec, tr2, ytr, va2, yval, units2, 1);
  double unique = 0;
  for (const auto& e : rep2.entries)
    if (e.feature == "leak") unique = e.importance;
  CHECK(unique > 0);
  CHECK(imp("copy") <= unique);

  // Parallel and serial runs agree.
  const auto par = drop_column_importance(spec, train, ytr, val, yval, units, 4);
  CHECK(par.to_json() == rep.to_json());
}

TEST_CASE("importance units") {
  std::vector<Column> cols{{"a", Group::Txt},
                           {"embed_slide.pc0", Group::EmbedSlide},
                           {"embed_slide.pc1", Group::EmbedSlide},
                           {"person_id_p1", Group::User},
                           {"person_id_p2", Group::User}};
  const auto without = importance_units(cols, false);
  CHECK(without.size() == 3);
  const auto with = importance_units(cols, true);
  REQUIRE(with.size() == 4);
  const auto it = std::find_if(with.begin(), with.end(), [](const auto& u) { return u.name == "embed_slide"; });
  REQUIRE(it != with.end());
  CHECK(it->columns.size() == 2);
}

TEST_CASE("feature selection") {
  ImportanceReport r;
  r.entries = {{"a", Group::Txt, 0.1}, {"b", Group::Txt, 0.0}, {"c", Group::Txt, -0.1}};
  CHECK(select_features(r) == std::vector<std::string>{"a", "b"});

  WarningSink sink;
  ImportanceReport neg;
  neg.entries = {{"a", Group::Txt, -0.1}, {"b", Group::Txt, -0.2}};
  CHECK(select_features(neg).size() == 2);
  CHECK(sink.messages.size() == 1);
}

TEST_CASE("average reports") {
  ImportanceReport a, b;
  a.baseline = 0.5;
  b.baseline = 0.7;
  a.entries = {{"x", Group::Txt, 0.2}, {"y", Group::Txt, 0.0}};
  b.entries = {{"x", Group::Txt, 0.0}};
  const std::vector<ImportanceReport> both{a, b};
  const auto m = average_reports(both);
  CHECK(m.baseline == doctest::Approx(0.6));
  REQUIRE(m.entries.size() == 2);
  CHECK(m.entries[0].feature == "x");
  CHECK(m.entries[0].importance == doctest::Approx(0.1));
}

TEST_CASE("cross-validation") {
  const Dataset ds = fixtures::separable_blobs(3, 60, 4);
  const auto spec = ClassifierSpec::defaults(ClassifierKind::NaiveBayes, 2);
  const auto a = cross_validate(spec, ds, CategoryMask{Group::Txt}, 5, 11);
  const auto b = cross_validate(spec, ds, CategoryMask{Group::Txt}, 5, 11);
  CHECK(a.mean.to_json() == b.mean.to_json());
  CHECK(a.completed() == 5);
  CHECK(a.mean.accuracy > 0.9);

  // A single hold-out fold equals a manual train/test evaluation.
  FoldAssignment one;
  one.k = 1;
  for (Eigen::Index r = 0; r < ds.rows(); ++r) one.fold_of_row.push_back(r % 4 == 0 ? 0 : -1);
  const auto cv = cross_validate(spec, ds, one);
  const auto tr = one.train_rows(0), te = one.test_rows(0);
  const auto pipe = FoldPipeline::fit(ds, tr, 16);
  std::vector<K> ytr, yte;
  for (auto r : tr) ytr.push_back(ds.labels[static_cast<std::size_t>(r)]);
  for (auto r : te) yte.push_back(ds.labels[static_cast<std::size_t>(r)]);
  const auto model = train(spec, pipe.transform(ds, tr), ytr);
  CHECK(cv.mean.to_json() == compute_metrics(yte, predict_batch(model, pipe.transform(ds, te))).to_json());
}

TEST_CASE("cross-validation skips single-class folds") {
  WarningSink sink;
  Eigen::MatrixXd x(4, 1);
  x << 0, 1, 2, 3;
  const Dataset ds = dataset_from_matrix(x, {K::Low, K::Low, K::High, K::High});
  FoldAssignment f;
  f.k = 2;
  f.fold_of_row = {0, 0, 1, 1};
  CHECK_THROWS_AS(cross_validate(ClassifierSpec::defaults(ClassifierKind::NaiveBayes), ds, f), ValidationError);
  f.k = 3;
  f.fold_of_row = {0, 1, 2, 2};
  const auto r = cross_validate(ClassifierSpec::defaults(ClassifierKind::NaiveBayes), ds, f);
  CHECK(r.completed() == 2);
  CHECK(r.folds[2].skipped);
  CHECK_FALSE(r.folds[2].skip_reason.empty());
}

TEST_CASE("report tables") {
  std::vector<K> truth(6, K::Low);
  truth.insert(truth.end(), 10, K::Moderate);
  truth.insert(truth.end(), 6, K::High);
  const std::vector<ResultRow> rows{random_guess_row(),
                                    baseline_row(Variant::V22, compute_metrics(truth, std::vector<K>(22, K::Moderate)))};
  const std::string csv = results_csv(rows);
  CHECK(csv.rfind("category,classifier,low_pr,low_re,low_f1,moderate_pr", 0) == 0);
  CHECK(csv.find("Random Guess Baseline,-") != std::string::npos);
  CHECK(csv.find(",33.33\n") != std::string::npos);
  CHECK(csv.find(",45.45\n") != std::string::npos);
  CHECK(results_json(rows).size() == 2);

  ImportanceReport r;
  r.entries = {{"VP_sli", Group::Txt, 0.25}, {"mm_feature_1", Group::Mm, 0.1}, {"person_id_p1", Group::User, 0}};
  const std::string imp = importance_csv(r, 2);
  CHECK(imp == "type,feature,importance\nTXT,VP_sli,0.2500\nMM,mm_feature_1,0.1000\n");
}
