#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dsrr/correlation.hpp"
#include "dsrr/evaluation.hpp"

namespace dsrr {

// All writers emit a fixed key order and floats with 17 significant digits,
// so identical inputs serialize byte-identically.

std::string to_json(const MetricsReport& report);
std::string to_json(const CorrelationReport& report);

std::string metrics_csv_header();
std::string metrics_csv_row(const std::string& method, std::size_t window,
                            std::size_t step, const MetricsReport& report);

/// Square matrix as CSV with a leading name column and header row.
std::string matrix_csv(const std::vector<std::vector<double>>& matrix,
                       std::span<const std::string> names);

}  // namespace dsrr
