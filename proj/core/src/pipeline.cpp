#include "dsrr/pipeline.hpp"

#include <stdexcept>

namespace dsrr {

FeatureTable transform_table(const FeatureTable& table, const DsrrConfig& config,
                             TransformStats* stats) {
  config.validate();
  if (table.rows() == 0) throw std::invalid_argument("transform_table: empty table");

  FeatureTable out = table;
  TransformStats local;
  if (config.mode == TransformMode::kReplace) {
    for (std::size_t j = 0; j < table.features(); ++j) {
      out.columns[j] = dsrr_transform(table.columns[j], config, &local);
    }
  } else {
    for (std::size_t j = 0; j < table.features(); ++j) {
      out.feature_names.push_back("dsrr_" + table.feature_names[j]);
      out.columns.push_back(dsrr_transform(table.columns[j], config, &local));
    }
  }
  if (stats != nullptr) *stats = local;  // columns share one block geometry
  return out;
}

std::string model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kKnn:
      return "knn";
    case ModelKind::kTree:
      return "tree";
    case ModelKind::kForest:
      return "rf";
  }
  return "unknown";
}

std::string method_label(const PipelineOptions& options) {
  std::string label = model_kind_name(options.model);
  if (options.apply_dsrr) label += "+dsrr";
  if (options.prune) label += "+prune";
  return label;
}

PipelineRun run_pipeline(const FeatureTable& table, const PipelineOptions& options) {
  PipelineRun run;

  const FeatureTable* source = &table;
  FeatureTable transformed;
  if (options.apply_dsrr && !options.transform_after_split) {
    transformed = transform_table(table, options.dsrr, &run.transform_stats);
    source = &transformed;
  }

  const SplitIndices split =
      stratified_indices(source->labels, options.train_fraction, options.seed);
  FeatureTable train = source->select_rows(split.train);
  FeatureTable test = source->select_rows(split.test);

  if (options.apply_dsrr && options.transform_after_split) {
    train = transform_table(train, options.dsrr, &run.transform_stats);
    test = transform_table(test, options.dsrr, nullptr);
  }

  // Pruning statistics come from the training portion only; the resulting
  // column choice applies to both parts.
  if (options.prune && train.features() >= 2) {
    PruneResult pruned = prune_features(train, options.prune_options);
    train = train.select_columns(pruned.kept);
    test = test.select_columns(pruned.kept);
    run.correlation = std::move(pruned.report);
  }

  run.kept_features = train.feature_names;
  run.train_rows = train.rows();
  run.test_rows = test.rows();

  std::vector<std::string> predictions;
  switch (options.model) {
    case ModelKind::kKnn:
      predictions = knn_predict(knn_fit(train, options.knn_k), test);
      break;
    case ModelKind::kTree:
      predictions = tree_predict(tree_fit(train, options.tree), test);
      break;
    case ModelKind::kForest: {
      ForestConfig config = options.forest;
      config.master_seed = options.seed;
      predictions = forest_predict(forest_fit(train, config), test);
      break;
    }
  }

  run.cm = confusion(test.labels, predictions);
  run.metrics = metrics(run.cm);
  return run;
}

}  // namespace dsrr
