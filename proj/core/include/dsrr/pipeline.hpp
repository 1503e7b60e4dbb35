#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsrr/classifiers.hpp"
#include "dsrr/correlation.hpp"
#include "dsrr/dataset.hpp"
#include "dsrr/evaluation.hpp"
#include "dsrr/rescaled_range.hpp"

namespace dsrr {

/// Applies dsrr_transform to every feature column. kReplace swaps the
/// columns in place; kAugment appends the transformed columns as
/// "dsrr_<name>". Labels, timestamps and provenance pass through.
FeatureTable transform_table(const FeatureTable& table, const DsrrConfig& config,
                             TransformStats* stats = nullptr);

enum class ModelKind { kKnn, kTree, kForest };

std::string model_kind_name(ModelKind kind);  // "knn" | "tree" | "rf"

struct PipelineOptions {
  DsrrConfig dsrr{};
  bool apply_dsrr = true;
  // Default transforms the whole series before splitting; set to transform
  // the train and test parts separately instead.
  bool transform_after_split = false;
  bool prune = true;
  PruneOptions prune_options{};
  ModelKind model = ModelKind::kForest;
  std::size_t knn_k = 5;
  TreeConfig tree{};
  ForestConfig forest{};
  double train_fraction = 0.7;
  std::uint64_t seed = 0;  // drives the split and the forest master seed
};

struct PipelineRun {
  MetricsReport metrics;
  ConfusionMatrix cm;
  std::vector<std::string> kept_features;
  std::optional<CorrelationReport> correlation;
  std::size_t train_rows = 0, test_rows = 0;
  TransformStats transform_stats{};
};

/// Full chain: transform -> stratified split -> prune on train statistics ->
/// fit -> evaluate on the held-out part. Deterministic per (table, options).
PipelineRun run_pipeline(const FeatureTable& table, const PipelineOptions& options);

/// Human-readable method tag, e.g. "rf+dsrr+prune" or "knn".
std::string method_label(const PipelineOptions& options);

}  // namespace dsrr
