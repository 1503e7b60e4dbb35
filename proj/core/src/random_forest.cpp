#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dsrr/classifiers.hpp"
#include "dsrr/rng.hpp"
#include "tree_builder.hpp"

namespace dsrr {

namespace {

// Substream 2t feeds tree t's bootstrap, 2t+1 its split-feature draws, so a
// caller can supply resamples without disturbing the split streams.
std::uint64_t bootstrap_seed(const ForestConfig& config, std::size_t tree) {
  return derive_seed(config.master_seed, 2 * static_cast<std::uint64_t>(tree));
}
std::uint64_t split_seed(const ForestConfig& config, std::size_t tree) {
  return derive_seed(config.master_seed, 2 * static_cast<std::uint64_t>(tree) + 1);
}

std::size_t resolve_features_per_split(const ForestConfig& config, std::size_t f) {
  if (config.features_per_split == 0) {
    return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(f))));
  }
  return std::min(config.features_per_split, f);
}

}  // namespace

std::vector<std::size_t> forest_resample_indices(std::size_t n_rows,
                                                 const ForestConfig& config,
                                                 std::size_t tree) {
  Rng rng(bootstrap_seed(config, tree));
  std::vector<std::size_t> idx(n_rows);
  for (auto& v : idx) v = rng.uniform_index(n_rows);
  return idx;
}

ForestModel forest_fit_with_resamples(const FeatureTable& train, const ForestConfig& config,
                                      const std::vector<std::vector<std::size_t>>& resamples) {
  if (config.n_trees < 1) throw std::invalid_argument("forest_fit: n_trees must be >= 1");
  if (resamples.size() != config.n_trees) {
    throw std::invalid_argument("forest_fit: one resample list per tree required");
  }
  const internal::EncodedData data = internal::encode(train);
  const std::size_t m = resolve_features_per_split(config, data.f);
  const TreeConfig tree_config{config.max_depth, config.min_leaf};

  ForestModel model;
  model.config = config;
  model.feature_names = train.feature_names;
  model.classes = data.classes;
  model.trees.reserve(config.n_trees);
  model.tree_seeds.reserve(config.n_trees);
  for (std::size_t t = 0; t < config.n_trees; ++t) {
    model.tree_seeds.push_back(bootstrap_seed(config, t));
    Rng rng(split_seed(config, t));
    model.trees.push_back(
        internal::build_tree(data, resamples[t], tree_config, &rng, m));
  }
  return model;
}

ForestModel forest_fit(const FeatureTable& train, const ForestConfig& config) {
  if (config.n_trees < 1) throw std::invalid_argument("forest_fit: n_trees must be >= 1");
  std::vector<std::vector<std::size_t>> resamples;
  resamples.reserve(config.n_trees);
  for (std::size_t t = 0; t < config.n_trees; ++t) {
    if (config.bootstrap) {
      resamples.push_back(forest_resample_indices(train.rows(), config, t));
    } else {
      std::vector<std::size_t> all(train.rows());
      std::iota(all.begin(), all.end(), 0);
      resamples.push_back(std::move(all));
    }
  }
  return forest_fit_with_resamples(train, config, resamples);
}

std::vector<std::string> forest_predict(const ForestModel& model, const FeatureTable& data) {
  internal::check_feature_names(model.feature_names, data, "forest_predict");
  std::vector<std::string> out;
  out.reserve(data.rows());
  std::vector<double> row(data.features());
  std::vector<std::int64_t> votes(model.classes.size());
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t j = 0; j < data.features(); ++j) row[j] = data.columns[j][i];
    std::fill(votes.begin(), votes.end(), 0);
    for (const auto& tree : model.trees) {
      ++votes[static_cast<std::size_t>(internal::tree_predict_row(tree, row.data()))];
    }
    std::size_t winner = 0;  // ties go to the lexicographically smaller label
    for (std::size_t c = 1; c < votes.size(); ++c) {
      if (votes[c] > votes[winner]) winner = c;
    }
    out.push_back(model.classes[winner]);
  }
  return out;
}

}  // namespace dsrr
