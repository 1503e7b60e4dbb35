#include "dsrr/pipeline.hpp"

#include <doctest.h>
#include <set>

#include "dsrr/json_io.hpp"
#include "dsrr/rng.hpp"

using namespace dsrr;

namespace {

FeatureTable synth_default(std::uint64_t seed) {
  SynthConfig config;
  config.seed = seed;
  return synth_generate(config);
}

}  // namespace

TEST_SUITE("transform_table") {

TEST_CASE("replace keeps names and row count, augment doubles columns") {
  const FeatureTable table = synth_default(3);
  DsrrConfig config;
  config.window = 50;

  const FeatureTable replaced = transform_table(table, config);
  CHECK(replaced.feature_names == table.feature_names);
  CHECK(replaced.rows() == table.rows());
  CHECK(replaced.labels == table.labels);
  CHECK(replaced.columns[0] != table.columns[0]);

  config.mode = TransformMode::kAugment;
  const FeatureTable augmented = transform_table(table, config);
  CHECK(augmented.features() == 2 * table.features());
  CHECK(augmented.feature_names[table.features()] == "dsrr_f0");
  CHECK(augmented.columns[0] == table.columns[0]);
  CHECK(augmented.columns[table.features()] == replaced.columns[0]);
}

TEST_CASE("partial-block stats surface") {
  FeatureTable table = synth_default(4);
  DsrrConfig config;
  config.window = 60;  // 2000 = 33*60 + 20, leaves a partial block
  TransformStats stats;
  const FeatureTable out = transform_table(table, config, &stats);
  CHECK(out.rows() == table.rows());
  CHECK(stats.partial_samples == 2000 % 60);
}

}  // TEST_SUITE

TEST_SUITE("run_pipeline") {

TEST_CASE("dsrr features beat raw features on burst data (knn)") {
  const FeatureTable table = synth_default(7);
  PipelineOptions options;
  options.dsrr.window = 50;
  options.model = ModelKind::kKnn;
  options.seed = 42;

  const PipelineRun with_dsrr = run_pipeline(table, options);
  options.apply_dsrr = false;
  const PipelineRun raw = run_pipeline(table, options);
  CHECK(with_dsrr.metrics.accuracy > raw.metrics.accuracy + 0.05);
  CHECK(with_dsrr.train_rows + with_dsrr.test_rows == table.rows());
}

TEST_CASE("identical options give byte-identical metrics JSON") {
  const FeatureTable table = synth_default(11);
  PipelineOptions options;
  options.dsrr.window = 50;
  options.model = ModelKind::kForest;
  options.forest.n_trees = 20;
  options.seed = 5;

  const PipelineRun a = run_pipeline(table, options);
  const PipelineRun b = run_pipeline(table, options);
  CHECK(to_json(a.metrics) == to_json(b.metrics));
  CHECK(a.kept_features == b.kept_features);
}

TEST_CASE("pruning reports come from the training part only and drop duplicates") {
  FeatureTable table = synth_default(13);
  // Plant an exact duplicate column.
  table.feature_names.push_back("f0_copy");
  table.columns.push_back(table.columns[0]);

  PipelineOptions options;
  options.dsrr.window = 50;
  options.model = ModelKind::kTree;
  options.seed = 3;
  const PipelineRun run = run_pipeline(table, options);
  REQUIRE(run.correlation.has_value());
  bool phik_drop = false;
  for (const DroppedFeature& d : run.correlation->dropped) {
    phik_drop = phik_drop || d.reason == DropReason::kPhikOne;
  }
  CHECK(phik_drop);
  CHECK(run.kept_features.size() < table.features());

  options.prune = false;
  const PipelineRun unpruned = run_pipeline(table, options);
  CHECK_FALSE(unpruned.correlation.has_value());
  CHECK(unpruned.kept_features.size() == table.features());
}

TEST_CASE("transform-after-split mode runs and stays deterministic") {
  const FeatureTable table = synth_default(17);
  PipelineOptions options;
  options.dsrr.window = 50;
  options.transform_after_split = true;
  options.model = ModelKind::kKnn;
  options.seed = 21;
  const PipelineRun a = run_pipeline(table, options);
  const PipelineRun b = run_pipeline(table, options);
  CHECK(to_json(a.metrics) == to_json(b.metrics));
  CHECK(a.metrics.accuracy > 0.5);
}

TEST_CASE("method labels") {
  PipelineOptions options;
  options.model = ModelKind::kForest;
  CHECK(method_label(options) == "rf+dsrr+prune");
  options.prune = false;
  CHECK(method_label(options) == "rf+dsrr");
  options.apply_dsrr = false;
  options.model = ModelKind::kKnn;
  CHECK(method_label(options) == "knn");
}

}  // TEST_SUITE
