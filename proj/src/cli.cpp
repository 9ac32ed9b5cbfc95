#include "kgp/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "kgp/error.hpp"
#include "kgp/extract.hpp"
#include "kgp/fixtures/corpus.hpp"
#include "kgp/log.hpp"
#include "kgp/parallel.hpp"
#include "kgp/schema.hpp"

namespace kgp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

void RunConfig::apply_json(const json& j) {
  auto strings = [](const json& v) {
    std::vector<std::string> out;
    if (v.is_string()) out.push_back(v.get<std::string>());
    else for (const auto& e : v) out.push_back(e.get<std::string>());
    return out;
  };
  if (j.contains("variants")) {
    variants.clear();
    for (const auto& s : strings(j["variants"])) variants.push_back(parse_variant(s));
  }
  if (j.contains("variant")) variants = {parse_variant(j["variant"].get<std::string>())};
  if (j.contains("masks")) {
    masks.clear();
    for (const auto& s : strings(j["masks"])) masks.push_back(CategoryMask::parse(s));
  }
  if (j.contains("classifiers")) {
    classifiers.clear();
    for (const auto& s : strings(j["classifiers"])) classifiers.push_back(parse_kind(s));
  }
  if (j.contains("importance")) {
    importance.clear();
    for (const auto& s : strings(j["importance"])) importance.push_back(parse_kind(s));
  }
  if (j.contains("folds")) folds = j["folds"].get<int>();
  if (j.contains("pca_k")) pca_k = j["pca_k"].get<Eigen::Index>();
  if (j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
  if (j.contains("select")) select = j["select"].get<bool>();
  if (j.contains("corpus")) corpus = j["corpus"].get<std::string>();
  if (j.contains("features")) features = j["features"].get<std::string>();
  if (j.contains("sessions")) sessions = j["sessions"].get<std::string>();
  if (j.contains("mm")) mm = j["mm"].get<std::string>();
  if (j.contains("out")) out = j["out"].get<std::string>();
}

void RunConfig::validate() const {
  if (folds < 2) throw ValidationError("folds must be at least 2");
  if (pca_k < 1) throw ValidationError("pca_k must be positive");
  if (pca_k != 3 && pca_k != 8 && pca_k != 16 && pca_k != 32)
    warn("pca_k " + std::to_string(pca_k) + " is outside the usual {3, 8, 16, 32}");
  if (variants.empty()) throw ValidationError("no variant requested");
  if (masks.empty()) throw ValidationError("no mask requested");
  if (classifiers.empty()) throw ValidationError("no classifier requested");
  if (features.empty() && corpus.empty()) throw ValidationError("need a corpus or a features file");
  if (sessions.empty() && corpus.empty()) throw ValidationError("need a sessions file");
}

std::size_t cmd_extract(const fs::path& corpus, const fs::path& out) {
  const auto vectors = extract_corpus(corpus);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  write_file(out, features_to_csv(vectors));
  return vectors.size();
}

namespace {

struct Inputs {
  std::vector<FeatureVector> vectors;
  SessionTable sessions;
  std::optional<ExternalFeatureTable> mm;
};

Inputs load_inputs(const fs::path& corpus, const fs::path& features, const fs::path& sessions,
                   const fs::path& mm) {
  Inputs in;
  if (!features.empty()) in.vectors = features_from_csv(read_file(features));
  else in.vectors = extract_corpus(corpus);
  in.sessions = load_sessions(read_file(sessions.empty() ? corpus / "sessions.csv" : sessions));
  fs::path mm_path = mm;
  if (mm_path.empty() && !corpus.empty() && fs::exists(corpus / "mm.csv")) mm_path = corpus / "mm.csv";
  if (!mm_path.empty()) in.mm = load_external_features(read_file(mm_path));
  return in;
}

Dataset build(const Inputs& in, Variant v) {
  const ExternalFeatureTable* mm = in.mm ? &*in.mm : nullptr;
  Dataset ds = v == Variant::V22 ? build_v22(in.vectors, in.sessions, mm)
                                 : build_v111(in.vectors, in.sessions, mm);
  auto [filtered, dropped] = drop_zero_features(std::move(ds));
  return filtered;
}

std::string mask_label(CategoryMask mask, Variant v) {
  if (v == Variant::V111) mask.set(Group::User);
  return mask.to_string();
}

std::string file_token(std::string s) {
  std::replace(s.begin(), s.end(), '+', '_');
  return s;
}

void write_json(const fs::path& path, const json& j) { write_file(path, j.dump(2) + "\n"); }

CategoryMask all_categories(bool have_mm) {
  return have_mm ? CategoryMask{Group::Txt, Group::Mm, Group::EmbedSlide, Group::EmbedSrt}
                 : CategoryMask{Group::Txt, Group::EmbedSlide, Group::EmbedSrt};
}

struct Job {
  CategoryMask mask;
  ClassifierKind kind;
  bool importance = false;
};

struct JobResult {
  RunStatus status;
  std::optional<CvResult> cv;
};

JobResult run_job(const Dataset& ds, const Job& job, const RunConfig& cfg) {
  JobResult r;
  r.status.variant = variant_name(ds.variant);
  r.status.mask = mask_label(job.mask, ds.variant);
  r.status.classifier = kind_name(job.kind);
  Dataset masked;
  try {
    masked = apply_mask(ds, job.mask);
  } catch (const ValidationError& e) {
    r.status.status = "skipped";
    r.status.reason = e.what();
    return r;
  }
  try {
    CvOptions opt;
    opt.pca_k = cfg.pca_k;
    opt.select = cfg.select;
    opt.importance = job.importance;
    opt.threads = 1;
    const FoldAssignment folds = make_folds(masked, cfg.folds, cfg.seed);
    r.cv = cross_validate(ClassifierSpec::defaults(job.kind, cfg.seed), masked, folds, opt);
    r.status.status = "completed";
  } catch (const ValidationError& e) {
    r.status.status = "skipped";
    r.status.reason = e.what();
  } catch (const std::exception& e) {
    r.status.status = "failed";
    r.status.reason = e.what();
  }
  return r;
}

json run_json(const JobResult& r) {
  json j = {{"variant", r.status.variant},
            {"mask", r.status.mask},
            {"classifier", r.status.classifier},
            {"status", r.status.status}};
  if (!r.status.reason.empty()) j["reason"] = r.status.reason;
  if (!r.cv) return j;
  j["mean"] = r.cv->mean.to_json();
  j["folds"] = json::array();
  for (const auto& f : r.cv->folds) {
    json fj = {{"fold", f.fold}, {"skipped", f.skipped}};
    if (f.skipped) {
      fj["skip_reason"] = f.skip_reason;
    } else {
      fj["metrics"] = f.metrics.to_json();
      fj["preprocessing"] = f.preprocessing;
    }
    if (f.importance) fj["importance"] = f.importance->to_json();
    if (!f.kept.empty()) fj["kept"] = f.kept;
    j["folds"].push_back(std::move(fj));
  }
  return j;
}

}  // namespace

Dataset cmd_dataset(const fs::path& features, const fs::path& sessions, const fs::path& mm,
                    Variant variant) {
  return build(load_inputs({}, features, sessions, mm), variant);
}

nlohmann::json cmd_baselines(const fs::path& sessions, Variant variant) {
  const SessionTable table = load_sessions(read_file(sessions));
  const BaselineResult b = variant == Variant::V22 ? baseline_v22(table) : baseline_v111(table);
  json j = {{"variant", variant_name(variant)}, {"metrics", b.metrics.to_json()}};
  j["predictions"] = json::array();
  for (std::size_t i = 0; i < b.ids.size(); ++i)
    j["predictions"].push_back(
        {{"id", b.ids[i]}, {"truth", class_name(b.truth[i])}, {"predicted", class_name(b.predicted[i])}});
  return j;
}

std::vector<RunStatus> cmd_run(const RunConfig& cfg) {
  cfg.validate();
  const Inputs in = load_inputs(cfg.corpus, cfg.features, cfg.sessions, cfg.mm);
  const CategoryMask imp_mask = all_categories(in.mm.has_value());

  std::vector<RunStatus> statuses;
  json manifest = {{"seed", cfg.seed}, {"folds", cfg.folds}, {"pca_k", cfg.pca_k},
                   {"select", cfg.select}, {"runs", json::array()}};

  for (Variant v : cfg.variants) {
    const Dataset ds = build(in, v);
    const fs::path dir = cfg.out / std::string(variant_name(v));
    fs::create_directories(dir / "runs");

    std::vector<Job> jobs;
    for (const auto& m : cfg.masks)
      for (auto k : cfg.classifiers)
        jobs.push_back({m, k,
                        m == imp_mask && std::find(cfg.importance.begin(), cfg.importance.end(), k) !=
                                             cfg.importance.end()});
    // Importance tables for classifiers outside the mask x classifier grid.
    for (auto k : cfg.importance) {
      const bool covered = std::any_of(jobs.begin(), jobs.end(),
                                       [&](const Job& j) { return j.mask == imp_mask && j.kind == k; });
      if (!covered) jobs.push_back({imp_mask, k, true});
    }
    const std::size_t grid = cfg.masks.size() * cfg.classifiers.size();

    std::vector<JobResult> results(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) { results[i] = run_job(ds, jobs[i], cfg); });

    const BaselineResult base = v == Variant::V22 ? baseline_v22(in.sessions) : baseline_v111(in.sessions);
    std::vector<ResultRow> rows = {random_guess_row(), baseline_row(v, base.metrics)};
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const auto& r = results[i];
      const std::string stem = file_token(r.status.mask) + "_" + r.status.classifier;
      write_json(dir / "runs" / (stem + ".json"), run_json(r));
      if (i < grid) {
        ResultRow row{r.status.mask, r.status.classifier, std::nullopt, 0};
        if (r.cv) {
          row.metrics = r.cv->mean;
          row.accuracy_percent = 100.0 * r.cv->mean.accuracy;
        }
        rows.push_back(std::move(row));
        statuses.push_back(r.status);
        json mj = {{"variant", r.status.variant}, {"mask", r.status.mask},
                   {"classifier", r.status.classifier}, {"status", r.status.status}};
        if (!r.status.reason.empty()) mj["reason"] = r.status.reason;
        manifest["runs"].push_back(std::move(mj));
      } else if (r.status.status == "failed") {
        warn("importance run " + stem + " failed: " + r.status.reason);
      }
      if (jobs[i].importance && r.cv) {
        if (auto rep = r.cv->importance())
          write_file(dir / ("importance_" + r.status.classifier + ".csv"), importance_csv(*rep));
      }
    }
    write_file(dir / "results.csv", results_csv(rows));
    write_json(dir / "results.json", results_json(rows));
    json bj = {{"variant", variant_name(v)}, {"metrics", base.metrics.to_json()}};
    write_json(dir / "baseline.json", bj);
  }

  const bool failed = std::any_of(statuses.begin(), statuses.end(),
                                  [](const RunStatus& s) { return s.status == "failed"; });
  manifest["status"] = failed ? "partial-failure" : "ok";
  write_json(cfg.out / "manifest.json", manifest);
  return statuses;
}

namespace {

std::vector<Variant> parse_variants(const std::vector<std::string>& names) {
  std::vector<Variant> out;
  for (const auto& n : names) out.push_back(parse_variant(n));
  return out;
}

std::vector<CategoryMask> parse_masks(const std::vector<std::string>& names) {
  std::vector<CategoryMask> out;
  for (const auto& n : names) out.push_back(CategoryMask::parse(n));
  return out;
}

std::vector<ClassifierKind> parse_kinds(const std::vector<std::string>& names) {
  std::vector<ClassifierKind> out;
  for (const auto& n : names) out.push_back(parse_kind(n));
  return out;
}

const std::vector<std::string> kVariantNames = {"V22", "V111", "v22", "v111"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knowledge gain prediction from lecture video materials"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a synthetic corpus");
  fixtures::SyntheticCorpusSpec gspec;
  fs::path gen_out;
  std::string planted;
  gen->add_option("--out", gen_out, "Corpus directory")->required();
  gen->add_option("--videos", gspec.n_videos)->check(CLI::PositiveNumber);
  gen->add_option("--participants", gspec.n_participants)->check(CLI::PositiveNumber);
  gen->add_option("--seed", gspec.seed);
  gen->add_option("--planted", planted, "Feature driving the scores");
  gen->add_option("--noise", gspec.noise);
  gen->add_option("--mm-columns", gspec.mm_columns);
  gen->add_option("--embedding-dim", gspec.embedding_dim)->check(CLI::PositiveNumber);

  // extract
  auto* ext = app.add_subcommand("extract", "Extract one feature row per video");
  fs::path ext_corpus, ext_out;
  ext->add_option("--corpus", ext_corpus)->required();
  ext->add_option("--out", ext_out, "Defaults to <corpus>/features.csv");

  // dataset
  auto* dsc = app.add_subcommand("dataset", "Build the labeled dataset of one variant");
  fs::path ds_features, ds_sessions, ds_mm, ds_out;
  std::string ds_variant = "V22";
  dsc->add_option("--features", ds_features)->required();
  dsc->add_option("--sessions", ds_sessions)->required();
  dsc->add_option("--mm", ds_mm);
  dsc->add_option("--variant", ds_variant)->check(CLI::IsMember(kVariantNames));
  dsc->add_option("--out", ds_out)->required();

  // run
  auto* run = app.add_subcommand("run", "Cross-validated experiments and reports");
  RunConfig cfg;
  fs::path config_file;
  std::vector<std::string> r_variants, r_masks, r_classifiers, r_importance;
  int r_folds = 5;
  Eigen::Index r_pca = 16;
  std::uint64_t r_seed = 1;
  fs::path r_corpus, r_features, r_sessions, r_mm, r_out;
  run->add_option("--config", config_file, "JSON configuration");
  auto* o_corpus = run->add_option("--corpus", r_corpus);
  auto* o_features = run->add_option("--features", r_features);
  auto* o_sessions = run->add_option("--sessions", r_sessions);
  auto* o_mm = run->add_option("--mm", r_mm);
  auto* o_variant = run->add_option("--variant", r_variants)->check(CLI::IsMember(kVariantNames));
  auto* o_mask = run->add_option("--mask", r_masks);
  auto* o_clf = run->add_option("--classifier", r_classifiers);
  auto* o_folds = run->add_option("--folds", r_folds);
  auto* o_pca = run->add_option("--pca-k", r_pca);
  auto* o_seed = run->add_option("--seed", r_seed);
  auto* o_out = run->add_option("--out", r_out);
  auto* o_select = run->add_flag("--select", "Per-fold importance analysis and >= 0 selection");
  auto* o_imp = run->add_option("--importance-classifier", r_importance,
                                "Classifiers with importance tables (none to disable)");

  // baselines
  auto* bl = app.add_subcommand("baselines", "Knowledge gain baseline metrics");
  fs::path bl_sessions, bl_out;
  std::string bl_variant = "V22";
  bl->add_option("--sessions", bl_sessions)->required();
  bl->add_option("--variant", bl_variant)->check(CLI::IsMember(kVariantNames));
  bl->add_option("--out", bl_out, "JSON file; stdout when absent");

  // importance
  auto* imp = app.add_subcommand("importance", "Fold-averaged drop-column importance");
  fs::path i_corpus, i_features, i_sessions, i_mm, i_out;
  std::string i_variant = "V22", i_mask, i_clf = "NB";
  int i_folds = 5;
  Eigen::Index i_pca = 16;
  std::uint64_t i_seed = 1;
  std::size_t i_top = 0;
  imp->add_option("--corpus", i_corpus);
  imp->add_option("--features", i_features);
  imp->add_option("--sessions", i_sessions);
  imp->add_option("--mm", i_mm);
  imp->add_option("--variant", i_variant)->check(CLI::IsMember(kVariantNames));
  imp->add_option("--mask", i_mask, "Defaults to every available category");
  imp->add_option("--classifier", i_clf);
  imp->add_option("--folds", i_folds);
  imp->add_option("--pca-k", i_pca);
  imp->add_option("--seed", i_seed);
  imp->add_option("--top", i_top, "Keep the N most important features");
  imp->add_option("--out", i_out, "CSV file; stdout when absent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*gen) {
      if (!planted.empty()) gspec.planted_feature = planted;
      const auto corpus = fixtures::generate(gspec);
      fixtures::write_corpus(corpus, gen_out);
      std::cout << "wrote " << corpus.lectures.size() << " videos to " << gen_out.string() << "\n";
      return 0;
    }
    if (*ext) {
      if (ext_out.empty()) ext_out = ext_corpus / "features.csv";
      const auto n = cmd_extract(ext_corpus, ext_out);
      std::cout << "extracted " << n << " videos to " << ext_out.string() << "\n";
      return 0;
    }
    if (*dsc) {
      const Dataset ds = cmd_dataset(ds_features, ds_sessions, ds_mm, parse_variant(ds_variant));
      if (ds_out.has_parent_path()) fs::create_directories(ds_out.parent_path());
      write_file(ds_out, dataset_to_csv(ds));
      std::cout << "wrote " << ds.rows() << " rows x " << ds.columns.size() << " columns to "
                << ds_out.string() << "\n";
      return 0;
    }
    if (*bl) {
      const json j = cmd_baselines(bl_sessions, parse_variant(bl_variant));
      if (bl_out.empty()) {
        std::cout << j.dump(2) << "\n";
      } else {
        if (bl_out.has_parent_path()) fs::create_directories(bl_out.parent_path());
        write_json(bl_out, j);
      }
      return 0;
    }
    if (*imp) {
      if (i_features.empty() && i_corpus.empty()) throw ValidationError("need --corpus or --features");
      const Inputs in = load_inputs(i_corpus, i_features, i_sessions, i_mm);
      const Variant v = parse_variant(i_variant);
      const Dataset ds = build(in, v);
      const CategoryMask mask = i_mask.empty() ? all_categories(in.mm.has_value()) : CategoryMask::parse(i_mask);
      if (i_folds < 2) throw ValidationError("folds must be at least 2");
      CvOptions opt;
      opt.pca_k = i_pca;
      opt.importance = true;
      const CvResult cv = cross_validate(ClassifierSpec::defaults(parse_kind(i_clf), i_seed), ds, mask,
                                         i_folds, i_seed, opt);
      const auto rep = cv.importance();
      if (!rep) throw ValidationError("no fold produced an importance report");
      const std::string csv = importance_csv(*rep, i_top);
      if (i_out.empty()) {
        std::cout << csv;
      } else {
        if (i_out.has_parent_path()) fs::create_directories(i_out.parent_path());
        write_file(i_out, csv);
      }
      return 0;
    }
    if (*run) {
      if (!config_file.empty()) cfg.apply_json(json::parse(read_file(config_file)));
      if (o_corpus->count()) cfg.corpus = r_corpus;
      if (o_features->count()) cfg.features = r_features;
      if (o_sessions->count()) cfg.sessions = r_sessions;
      if (o_mm->count()) cfg.mm = r_mm;
      if (o_variant->count()) cfg.variants = parse_variants(r_variants);
      if (o_mask->count()) cfg.masks = parse_masks(r_masks);
      if (o_clf->count()) cfg.classifiers = parse_kinds(r_classifiers);
      if (o_folds->count()) cfg.folds = r_folds;
      if (o_pca->count()) cfg.pca_k = r_pca;
      if (o_seed->count()) cfg.seed = r_seed;
      if (o_out->count()) cfg.out = r_out;
      if (o_select->count()) cfg.select = true;
      if (o_imp->count()) {
        cfg.importance.clear();
        for (const auto& n : r_importance)
          if (n != "none") cfg.importance.push_back(parse_kind(n));
      }
      const auto statuses = cmd_run(cfg);
      int completed = 0, skipped = 0, failed = 0;
      for (const auto& s : statuses) {
        if (s.status == "completed") ++completed;
        else if (s.status == "skipped") ++skipped;
        else ++failed;
        if (s.status == "failed")
          std::cerr << "run failed: " << s.variant << " " << s.mask << " " << s.classifier << ": "
                    << s.reason << "\n";
      }
      std::cout << completed << " completed, " << skipped << " skipped, " << failed << " failed; reports in "
                << cfg.out.string() << "\n";
      return failed == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace kgp::cli
