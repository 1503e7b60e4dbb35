#pragma once

#include <stdexcept>

namespace dsrr {

// Unusable input data: unreadable files, non-finite values, no surviving
// rows. The CLI maps this family to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Declared columns do not match the file header.
class SchemaError : public DataError {
 public:
  using DataError::DataError;
};

// A statistic could not be estimated from the data given (too few usable
// points, degenerate fit).
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dsrr
