#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dsrr/classifiers.hpp"
#include "dsrr/dataset.hpp"
#include "dsrr/rng.hpp"

namespace dsrr::internal {

// Row-major training matrix with integer class labels (classes sorted
// lexicographically, so the smaller index is the lexicographically smaller
// label).
struct EncodedData {
  std::vector<double> x;  // n * f, row-major
  std::vector<std::int32_t> y;
  std::vector<std::string> classes;
  std::size_t n = 0, f = 0;

  const double* row(std::size_t i) const { return x.data() + i * f; }
};

EncodedData encode(const FeatureTable& table);

// Grows one CART tree over the given sample multiset. `rng` drives the
// per-split feature subsets and is ignored when features_per_split >= f.
std::vector<TreeNode> build_tree(const EncodedData& data,
                                 std::vector<std::size_t> samples,
                                 const TreeConfig& config, Rng* rng,
                                 std::size_t features_per_split);

std::int32_t tree_predict_row(std::span<const TreeNode> nodes, const double* row);

void check_feature_names(const std::vector<std::string>& model_names,
                         const FeatureTable& data, const char* who);

}  // namespace dsrr::internal
