#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "dsrr/classifiers.hpp"
#include "tree_builder.hpp"

namespace dsrr {

namespace internal {

EncodedData encode(const FeatureTable& table) {
  if (table.rows() == 0) throw std::invalid_argument("empty training set");
  EncodedData data;
  data.n = table.rows();
  data.f = table.features();
  data.classes = table.label_set();
  data.x.resize(data.n * data.f);
  for (std::size_t i = 0; i < data.n; ++i) {
    for (std::size_t j = 0; j < data.f; ++j) {
      data.x[i * data.f + j] = table.columns[j][i];
    }
  }
  data.y.resize(data.n);
  for (std::size_t i = 0; i < data.n; ++i) {
    const auto it =
        std::lower_bound(data.classes.begin(), data.classes.end(), table.labels[i]);
    data.y[i] = static_cast<std::int32_t>(it - data.classes.begin());
  }
  return data;
}

void check_feature_names(const std::vector<std::string>& model_names,
                         const FeatureTable& data, const char* who) {
  if (model_names != data.feature_names) {
    throw std::invalid_argument(std::string(who) + ": feature names do not match the model");
  }
}

std::int32_t tree_predict_row(std::span<const TreeNode> nodes, const double* row) {
  std::int32_t cur = 0;
  while (!nodes[cur].is_leaf()) {
    const TreeNode& node = nodes[cur];
    cur = row[node.feature] <= node.threshold ? node.left : node.right;
  }
  return nodes[cur].label;
}

namespace {

class Builder {
 public:
  Builder(const EncodedData& data, const TreeConfig& config, Rng* rng, std::size_t m)
      : data_(data), config_(config), rng_(rng), m_(std::min(m, data.f)) {}

  std::vector<TreeNode> run(std::vector<std::size_t> samples) {
    nodes_.clear();
    grow(std::move(samples), 0);
    return std::move(nodes_);
  }

 private:
  struct Split {
    bool found = false;
    double score = 0.0;
    std::size_t feature = 0;
    double threshold = 0.0;
  };

  std::int32_t grow(std::vector<std::size_t> samples, std::size_t depth) {
    const auto idx = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();

    std::vector<std::int64_t> counts(data_.classes.size(), 0);
    for (std::size_t i : samples) ++counts[static_cast<std::size_t>(data_.y[i])];
    std::int32_t majority = 0;
    for (std::size_t c = 1; c < counts.size(); ++c) {
      if (counts[c] > counts[static_cast<std::size_t>(majority)]) {
        majority = static_cast<std::int32_t>(c);
      }
    }
    const bool pure =
        counts[static_cast<std::size_t>(majority)] == static_cast<std::int64_t>(samples.size());

    Split best;
    if (!pure && depth < config_.max_depth && samples.size() >= 2 * config_.min_leaf) {
      best = find_split(samples, counts);
    }
    if (!best.found) {
      nodes_[idx].label = majority;
      nodes_[idx].class_counts = std::move(counts);
      return idx;
    }

    std::vector<std::size_t> left, right;
    for (std::size_t i : samples) {
      (data_.row(i)[best.feature] <= best.threshold ? left : right).push_back(i);
    }
    samples.clear();
    samples.shrink_to_fit();

    nodes_[idx].feature = static_cast<std::int32_t>(best.feature);
    nodes_[idx].threshold = best.threshold;
    const std::int32_t l = grow(std::move(left), depth + 1);
    const std::int32_t r = grow(std::move(right), depth + 1);
    nodes_[idx].left = l;
    nodes_[idx].right = r;
    return idx;
  }

  Split find_split(const std::vector<std::size_t>& samples,
                   const std::vector<std::int64_t>& counts) {
    candidate_features();
    Split best;
    const auto total = static_cast<std::int64_t>(samples.size());

    for (std::size_t fj : feats_) {
      vals_.clear();
      for (std::size_t i : samples) {
        vals_.emplace_back(data_.row(i)[fj], data_.y[i]);
      }
      std::sort(vals_.begin(), vals_.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });

      left_.assign(counts.size(), 0);
      std::int64_t nl = 0;
      std::size_t g = 0;
      while (g < vals_.size()) {
        std::size_t h = g + 1;
        while (h < vals_.size() && vals_[h].first == vals_[g].first) ++h;
        for (std::size_t i = g; i < h; ++i) {
          ++left_[static_cast<std::size_t>(vals_[i].second)];
        }
        nl += static_cast<std::int64_t>(h - g);
        if (h == vals_.size()) break;
        const std::int64_t nr = total - nl;
        if (nl >= static_cast<std::int64_t>(config_.min_leaf) &&
            nr >= static_cast<std::int64_t>(config_.min_leaf)) {
          double sl = 0.0, sr = 0.0;
          for (std::size_t c = 0; c < counts.size(); ++c) {
            const auto lc = static_cast<double>(left_[c]);
            const auto rc = static_cast<double>(counts[c] - left_[c]);
            sl += lc * lc;
            sr += rc * rc;
          }
          // n_left * gini_left + n_right * gini_right, up to the common 1/n.
          const double score = (static_cast<double>(nl) - sl / static_cast<double>(nl)) +
                               (static_cast<double>(nr) - sr / static_cast<double>(nr));
          if (!best.found || score < best.score) {
            double threshold = (vals_[h - 1].first + vals_[h].first) / 2.0;
            // Keep v_left <= t < v_right when the midpoint rounds up.
            if (threshold >= vals_[h].first) threshold = vals_[h - 1].first;
            best = {true, score, fj, threshold};
          }
        }
        g = h;
      }
    }
    return best;
  }

  // Features to scan, ascending so score ties resolve to the lower feature
  // index. A forest samples m_ distinct indices per split.
  void candidate_features() {
    feats_.clear();
    if (rng_ == nullptr || m_ >= data_.f) {
      feats_.resize(data_.f);
      std::iota(feats_.begin(), feats_.end(), 0);
      return;
    }
    pool_.resize(data_.f);
    std::iota(pool_.begin(), pool_.end(), 0);
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t j = i + rng_->uniform_index(data_.f - i);
      std::swap(pool_[i], pool_[j]);
    }
    feats_.assign(pool_.begin(), pool_.begin() + static_cast<long>(m_));
    std::sort(feats_.begin(), feats_.end());
  }

  const EncodedData& data_;
  TreeConfig config_;
  Rng* rng_;
  std::size_t m_;
  std::vector<TreeNode> nodes_;
  std::vector<std::size_t> feats_, pool_;
  std::vector<std::pair<double, std::int32_t>> vals_;
  std::vector<std::int64_t> left_;
};

}  // namespace

std::vector<TreeNode> build_tree(const EncodedData& data, std::vector<std::size_t> samples,
                                 const TreeConfig& config, Rng* rng,
                                 std::size_t features_per_split) {
  Builder builder(data, config, rng, features_per_split);
  return builder.run(std::move(samples));
}

}  // namespace internal

TreeModel tree_fit(const FeatureTable& train, const TreeConfig& config) {
  const internal::EncodedData data = internal::encode(train);
  std::vector<std::size_t> samples(data.n);
  std::iota(samples.begin(), samples.end(), 0);

  TreeModel model;
  model.feature_names = train.feature_names;
  model.classes = data.classes;
  model.nodes = internal::build_tree(data, std::move(samples), config, nullptr, data.f);
  return model;
}

std::vector<std::string> tree_predict(const TreeModel& model, const FeatureTable& data) {
  internal::check_feature_names(model.feature_names, data, "tree_predict");
  std::vector<std::string> out;
  out.reserve(data.rows());
  std::vector<double> row(data.features());
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t j = 0; j < data.features(); ++j) row[j] = data.columns[j][i];
    const std::int32_t c = internal::tree_predict_row(model.nodes, row.data());
    out.push_back(model.classes[static_cast<std::size_t>(c)]);
  }
  return out;
}

}  // namespace dsrr
