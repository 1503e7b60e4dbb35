#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dsrr/classifiers.hpp"
#include "tree_builder.hpp"

namespace dsrr {

KnnModel knn_fit(const FeatureTable& train, std::size_t k) {
  if (train.rows() == 0) throw std::invalid_argument("knn_fit: empty training set");
  if (k < 1 || k > train.rows()) {
    throw std::invalid_argument("knn_fit: k must satisfy 1 <= k <= training size");
  }

  KnnModel model;
  model.k = k;
  model.feature_names = train.feature_names;
  model.classes = train.label_set();
  const std::size_t n = train.rows(), f = train.features();

  model.mean.resize(f);
  model.scale.resize(f);
  for (std::size_t j = 0; j < f; ++j) {
    double sum = 0.0;
    for (double v : train.columns[j]) sum += v;
    const double mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (double v : train.columns[j]) sq += (v - mean) * (v - mean);
    const double sd = std::sqrt(sq / static_cast<double>(n));
    model.mean[j] = mean;
    model.scale[j] = sd > 0.0 ? sd : 1.0;  // constant features pass through
  }

  model.rows.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    model.rows[i].resize(f);
    for (std::size_t j = 0; j < f; ++j) {
      model.rows[i][j] = (train.columns[j][i] - model.mean[j]) / model.scale[j];
    }
  }
  model.row_classes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto it =
        std::lower_bound(model.classes.begin(), model.classes.end(), train.labels[i]);
    model.row_classes[i] = static_cast<std::int32_t>(it - model.classes.begin());
  }
  return model;
}

std::vector<std::string> knn_predict(const KnnModel& model, const FeatureTable& data) {
  internal::check_feature_names(model.feature_names, data, "knn_predict");
  const std::size_t f = model.feature_names.size();
  const std::size_t n_train = model.rows.size();

  std::vector<std::string> out;
  out.reserve(data.rows());
  std::vector<double> query(f);
  std::vector<std::pair<double, std::size_t>> dist(n_train);
  std::vector<std::int64_t> votes(model.classes.size());

  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t j = 0; j < f; ++j) {
      query[j] = (data.columns[j][i] - model.mean[j]) / model.scale[j];
    }
    for (std::size_t t = 0; t < n_train; ++t) {
      double d2 = 0.0;
      const std::vector<double>& row = model.rows[t];
      for (std::size_t j = 0; j < f; ++j) {
        const double d = query[j] - row[j];
        d2 += d * d;
      }
      dist[t] = {d2, t};
    }
    // Pair order breaks distance ties by the lower training-row index.
    std::sort(dist.begin(), dist.end());

    std::fill(votes.begin(), votes.end(), 0);
    for (std::size_t t = 0; t < model.k; ++t) {
      ++votes[static_cast<std::size_t>(model.row_classes[dist[t].second])];
    }
    std::size_t winner = 0;  // vote ties go to the lexicographically smaller label
    for (std::size_t c = 1; c < votes.size(); ++c) {
      if (votes[c] > votes[winner]) winner = c;
    }
    out.push_back(model.classes[winner]);
  }
  return out;
}

}  // namespace dsrr
