#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dsrr/dataset.hpp"

namespace dsrr {

inline constexpr std::size_t kUnlimitedDepth = std::numeric_limits<std::size_t>::max();

// ---------------------------------------------------------------------------
// k-nearest neighbours on standardized features.

struct KnnModel {
  std::size_t k = 5;
  std::vector<std::string> feature_names;
  std::vector<std::string> classes;       // sorted label set
  std::vector<double> mean, scale;        // per feature; constant features get scale 1
  std::vector<std::vector<double>> rows;  // standardized training rows
  std::vector<std::int32_t> row_classes;  // index into classes
};

KnnModel knn_fit(const FeatureTable& train, std::size_t k = 5);

/// Majority vote over the k nearest by Euclidean distance. Distance ties go
/// to the lower training-row index, vote ties to the lexicographically
/// smaller label.
std::vector<std::string> knn_predict(const KnnModel& model, const FeatureTable& data);

// ---------------------------------------------------------------------------
// CART decision tree (Gini impurity, midpoint thresholds).

/// Either a split (feature >= 0) or a leaf carrying class counts.
struct TreeNode {
  static constexpr std::int32_t kNone = -1;
  std::int32_t feature = kNone;  // kNone marks a leaf
  double threshold = 0.0;        // x[feature] <= threshold goes left
  std::int32_t left = kNone, right = kNone;
  std::vector<std::int64_t> class_counts;  // leaves only
  std::int32_t label = 0;                  // predicted class index (leaves)

  bool is_leaf() const { return feature == kNone; }
};

struct TreeConfig {
  std::size_t max_depth = kUnlimitedDepth;
  std::size_t min_leaf = 1;
};

struct TreeModel {
  std::vector<std::string> feature_names;
  std::vector<std::string> classes;
  std::vector<TreeNode> nodes;  // nodes[0] is the root, preorder layout
};

/// Greedy binary splits minimizing weighted Gini impurity; candidate
/// thresholds are midpoints between consecutive distinct sorted values.
/// Split ties go to the lower feature index, then the lower threshold.
TreeModel tree_fit(const FeatureTable& train, const TreeConfig& config = {});
std::vector<std::string> tree_predict(const TreeModel& model, const FeatureTable& data);

// ---------------------------------------------------------------------------
// Random forest: bagged CART trees with per-split feature subsets.

struct ForestConfig {
  std::size_t n_trees = 100;
  std::size_t max_depth = kUnlimitedDepth;
  std::size_t min_leaf = 1;
  std::size_t features_per_split = 0;  // 0 = ceil(sqrt(F))
  bool bootstrap = true;
  std::uint64_t master_seed = 0;
};

struct ForestModel {
  ForestConfig config;
  std::vector<std::uint64_t> tree_seeds;  // derived from config.master_seed
  std::vector<std::string> feature_names;
  std::vector<std::string> classes;
  std::vector<std::vector<TreeNode>> trees;
};

/// Identical master seed yields a bit-identical model and predictions. Each
/// tree draws its bootstrap resample and split-feature subsets from its own
/// substreams of the master seed.
ForestModel forest_fit(const FeatureTable& train, const ForestConfig& config = {});

/// Same as forest_fit but with caller-supplied resample index lists (one per
/// tree), bypassing the bootstrap draw. forest_fit delegates here.
ForestModel forest_fit_with_resamples(const FeatureTable& train, const ForestConfig& config,
                                      const std::vector<std::vector<std::size_t>>& resamples);

/// The bootstrap draw tree `tree` would make under `config`.
std::vector<std::size_t> forest_resample_indices(std::size_t n_rows,
                                                 const ForestConfig& config,
                                                 std::size_t tree);

std::vector<std::string> forest_predict(const ForestModel& model, const FeatureTable& data);

}  // namespace dsrr
