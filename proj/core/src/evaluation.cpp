#include "dsrr/evaluation.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dsrr {

std::int64_t ConfusionMatrix::total() const {
  std::int64_t sum = 0;
  for (const auto& row : counts) {
    for (std::int64_t c : row) sum += c;
  }
  return sum;
}

ConfusionMatrix confusion(std::span<const std::string> truths,
                          std::span<const std::string> predictions) {
  if (truths.size() != predictions.size()) {
    throw std::invalid_argument("confusion: length mismatch");
  }
  if (truths.empty()) throw std::invalid_argument("confusion: empty input");

  ConfusionMatrix cm;
  {
    std::set<std::string> s(truths.begin(), truths.end());
    s.insert(predictions.begin(), predictions.end());
    cm.labels.assign(s.begin(), s.end());
  }
  const std::size_t c = cm.labels.size();
  cm.counts.assign(c, std::vector<std::int64_t>(c, 0));
  auto index = [&](const std::string& label) {
    return static_cast<std::size_t>(
        std::lower_bound(cm.labels.begin(), cm.labels.end(), label) - cm.labels.begin());
  };
  for (std::size_t i = 0; i < truths.size(); ++i) {
    ++cm.counts[index(truths[i])][index(predictions[i])];
  }
  return cm;
}

MetricsReport metrics(const ConfusionMatrix& cm) {
  const std::size_t c = cm.labels.size();
  const std::int64_t total = cm.total();

  MetricsReport report;
  report.per_class.resize(c);
  std::int64_t diagonal = 0;
  for (std::size_t i = 0; i < c; ++i) {
    const std::int64_t tp = cm.counts[i][i];
    std::int64_t row_sum = 0, col_sum = 0;
    for (std::size_t j = 0; j < c; ++j) {
      row_sum += cm.counts[i][j];
      col_sum += cm.counts[j][i];
    }
    diagonal += tp;

    ClassMetrics& m = report.per_class[i];
    m.label = cm.labels[i];
    m.support = row_sum;
    if (col_sum > 0) {
      m.precision = static_cast<double>(tp) / static_cast<double>(col_sum);
    } else {
      m.zero_division = true;  // 0/0 reported as 0
    }
    if (row_sum > 0) {
      m.recall = static_cast<double>(tp) / static_cast<double>(row_sum);
    } else {
      m.zero_division = true;
    }
    if (m.precision + m.recall > 0.0) {
      m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    } else {
      m.zero_division = true;
    }
    report.zero_division = report.zero_division || m.zero_division;
  }

  for (const ClassMetrics& m : report.per_class) {
    const double w = static_cast<double>(m.support) / static_cast<double>(total);
    report.precision += w * m.precision;
    report.recall += w * m.recall;
    report.f1 += w * m.f1;
  }
  report.accuracy = static_cast<double>(diagonal) / static_cast<double>(total);
  return report;
}

}  // namespace dsrr
