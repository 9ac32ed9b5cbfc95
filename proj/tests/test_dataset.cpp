#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "kgp/dataset.hpp"
#include "kgp/error.hpp"
#include "kgp/random.hpp"

using namespace kgp;

namespace {

FeatureVector vec(const std::string& id, double fill, Eigen::Index dim = 2) {
  Eigen::VectorXd v = Eigen::VectorXd::Constant(canonical_schema().video_width(dim), fill);
  return FeatureVector(id, v, dim);
}

SessionTable table(std::vector<Session> s) {
  SessionTable t;
  t.sessions = std::move(s);
  return t;
}

using K = KgClass;

}  // namespace

TEST_CASE("z-score labels") {
  const std::vector<double> s{1, 2, 3};
  CHECK(zscore_labels(s) == std::vector<K>{K::Low, K::Moderate, K::High});
  const std::vector<double> same{4, 4, 4, 4};
  CHECK(zscore_labels(same) == std::vector<K>(4, K::Moderate));
  CHECK_THROWS_AS(zscore_labels(std::vector<double>{}), ValidationError);
  // Equal scores whose mean picks up rounding error.
  const std::vector<double> tenths{0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1};
  CHECK(zscore_labels(tenths) == std::vector<K>(7, K::Moderate));

  // 6/10/6 split: z of +-1 for the tails, 0 in the middle.
  std::vector<double> split(6, -1.0);
  split.insert(split.end(), 10, 0.0);
  split.insert(split.end(), 6, 1.0);
  const auto l = zscore_labels(split);
  CHECK(std::count(l.begin(), l.end(), K::Low) == 6);
  CHECK(std::count(l.begin(), l.end(), K::Moderate) == 10);
  CHECK(std::count(l.begin(), l.end(), K::High) == 6);

  // Exactly on a threshold stays Moderate.
  const ZScale z{0.0, 2.0};
  CHECK(z.classify(1.0) == K::Moderate);
  CHECK(z.classify(-1.0) == K::Moderate);
  CHECK(z.classify(1.0000001) == K::High);
}

TEST_CASE("z-score labels are affine invariant") {
  Rng rng(77);
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> s(1 + rng.index(30));
    for (auto& x : s) x = std::round(rng.normal() * 8) / 2;  // ties are common
    const double a = 0.25 * static_cast<double>(1 + rng.index(16)), b = static_cast<double>(rng.index(100)) - 50;
    std::vector<double> u(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) u[i] = a * s[i] + b;
    CHECK(zscore_labels(s) == zscore_labels(u));
  }
}

TEST_CASE("V22 dataset") {
  const auto two = build_v22({vec("a", 1), vec("b", 2)},
                             table({{"p1", "a", 0}, {"p2", "a", 0}, {"p1", "b", 10}, {"p2", "b", 10}}));
  CHECK(two.rows() == 2);
  CHECK(two.labels == std::vector<K>{K::Low, K::High});
  CHECK(two.participant_ids.empty());

  const auto one = build_v22({vec("a", 1)}, table({{"p1", "a", 3}}));
  CHECK(one.rows() == 1);
  CHECK(one.labels == std::vector<K>{K::Moderate});

  CHECK_THROWS_AS(build_v22({vec("a", 1), vec("b", 1)}, table({{"p1", "a", 3}})), ValidationError);
  CHECK_THROWS_AS(build_v22({vec("a", 1)}, table({{"p1", "zz", 3}})), ValidationError);
}

TEST_CASE("V111 dataset") {
  const auto ds = build_v111({vec("a", 1)}, table({{"p1", "a", 1}, {"p2", "a", 2}}));
  CHECK(ds.rows() == 2);
  CHECK(ds.columns_in(Group::User).size() == 2);
  const Eigen::RowVectorXd diff = ds.features.row(0) - ds.features.row(1);
  const auto user = ds.columns_in(Group::User);
  for (Eigen::Index c = 0; c < diff.size(); ++c) {
    const bool is_user = std::find(user.begin(), user.end(), c) != user.end();
    if (!is_user) CHECK(diff(c) == 0);
  }
  CHECK(ds.features(0, user[0]) == 1);
  CHECK(ds.features(1, user[1]) == 1);
  CHECK_THROWS_AS(build_v111({vec("a", 1)}, table({{"p1", "b", 1}})), ValidationError);
}

TEST_CASE("zero-feature filter") {
  Eigen::MatrixXd x(3, 3);
  x << 0, 1, 0, 0, 0, 0, 0, 0, 5;
  Dataset ds = dataset_from_matrix(x, {K::Low, K::High, K::Moderate});
  ds.columns.push_back({"person_id_p", Group::User});
  ds.features.conservativeResize(Eigen::NoChange, 4);
  ds.features.col(3).setZero();
  const auto [out, removed] = drop_zero_features(ds);
  CHECK(removed == std::vector<std::string>{"f0"});
  CHECK(out.columns.size() == 3);
  CHECK(out.columns.back().group == Group::User);
}

TEST_CASE("category masks") {
  CHECK(CategoryMask::parse("TXT+MM+EMBED").to_string() == "MM+TXT+EMBED");
  CHECK(CategoryMask::parse("EMBED_SRT").has(Group::EmbedSrt));
  CHECK_FALSE(CategoryMask::parse("EMBED_SRT").has(Group::EmbedSlide));
  CHECK(CategoryMask::standard_masks().size() == 7);
  CHECK_THROWS(CategoryMask::parse("BOGUS"));

  const Eigen::Index dim = 3;
  const auto v111 = build_v111({vec("a", 1, dim), vec("b", 2, dim)},
                               table({{"p1", "a", 1}, {"p2", "b", 2}, {"p3", "a", 0}}));
  const auto txt = apply_mask(v111, CategoryMask{Group::Txt});
  CHECK(txt.columns_in(Group::User).size() == 3);
  CHECK(txt.columns_in(Group::Txt).size() == 384);
  const auto srt = apply_mask(v111, CategoryMask{Group::EmbedSrt});
  CHECK(srt.columns.size() == static_cast<std::size_t>(dim + 3));
  CHECK_THROWS_AS(apply_mask(v111, CategoryMask{}), ValidationError);
  CHECK_THROWS_AS(apply_mask(v111, CategoryMask{Group::Mm}), ValidationError);

  ExternalFeatureTable mm;
  mm.columns = {"m0"};
  mm.rows["a"] = Eigen::VectorXd::Ones(1);
  const auto partial = build_v22({vec("a", 1, dim), vec("b", 2, dim)}, table({{"p", "a", 1}, {"p", "b", 2}}), &mm);
  try {
    apply_mask(partial, CategoryMask{Group::Mm});
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("b") != std::string::npos);
  }
  CHECK_NOTHROW(apply_mask(partial, CategoryMask{Group::Txt}));
}

TEST_CASE("video-level folds") {
  std::vector<FeatureVector> vs;
  SessionTable t;
  for (int v = 0; v < 22; ++v) {
    const std::string id = "v" + std::to_string(v);
    vs.push_back(vec(id, v));
    for (int p = 0; p < 3; ++p) t.sessions.push_back({"p" + std::to_string(p), id, double(v + p)});
  }
  const auto ds = build_v111(vs, t);
  const auto f = make_folds(ds, 5, 42);
  std::multiset<std::size_t> sizes;
  for (const auto& fv : f.videos) sizes.insert(fv.size());
  CHECK(sizes == std::multiset<std::size_t>{4, 4, 4, 5, 5});

  // Each video lives in exactly one fold, and all its rows follow it.
  std::map<std::string, int> where;
  for (std::size_t r = 0; r < ds.video_ids.size(); ++r) {
    const auto [it, fresh] = where.emplace(ds.video_ids[r], f.fold_of_row[r]);
    if (!fresh) CHECK(it->second == f.fold_of_row[r]);
  }
  std::size_t tested = 0;
  for (int k = 0; k < 5; ++k) tested += f.test_rows(k).size();
  CHECK(tested == static_cast<std::size_t>(ds.rows()));

  CHECK(make_folds(ds, 5, 42).fold_of_row == f.fold_of_row);
  CHECK_THROWS_AS(make_folds(ds, 23, 1), ValidationError);
}

TEST_CASE("dataset CSV") {
  const auto ds = build_v22({vec("a", 1), vec("b", 2)}, table({{"p", "a", 0}, {"p", "b", 1}}));
  const std::string csv = dataset_to_csv(ds);
  CHECK(csv.rfind("video_id,participant_id,amount_adj_sli,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
