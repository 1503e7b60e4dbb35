#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dsrr {

struct ConfusionMatrix {
  std::vector<std::string> labels;                // lexicographic
  std::vector<std::vector<std::int64_t>> counts;  // [true][predicted]

  std::int64_t total() const;
};

struct ClassMetrics {
  std::string label;
  double precision = 0.0, recall = 0.0, f1 = 0.0;
  std::int64_t support = 0;
  bool zero_division = false;  // a 0/0 cell was reported as 0
};

struct MetricsReport {
  std::vector<ClassMetrics> per_class;
  double precision = 0.0, recall = 0.0, f1 = 0.0;  // support-weighted
  double accuracy = 0.0;
  bool zero_division = false;
};

ConfusionMatrix confusion(std::span<const std::string> truths,
                          std::span<const std::string> predictions);

MetricsReport metrics(const ConfusionMatrix& cm);

}  // namespace dsrr
