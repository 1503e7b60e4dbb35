#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dsrr {

/// A feature time series. Operations validate finiteness on entry.
using Series = std::vector<double>;

enum class EdgePolicy { kShrink, kDrop };
enum class TransformMode { kReplace, kAugment };

/// Block/prefix geometry of the transform: `window` is the block size w,
/// `step` the prefix growth a.
struct DsrrConfig {
  std::size_t window = 40;
  std::size_t step = 1;
  EdgePolicy edge = EdgePolicy::kShrink;
  TransformMode mode = TransformMode::kReplace;

  void validate() const;  // throws std::invalid_argument
};

/// Rescaled-range ratios over growing prefixes of one block. The last prefix
/// always reaches the block end, even when the block length is not a multiple
/// of the step.
struct RsCurve {
  std::vector<std::size_t> prefix_lengths;
  std::vector<double> ratios;

  std::size_t size() const { return ratios.size(); }
};

/// Power-law fit R/S(n) ~ c * n^h over log-log least squares.
struct HurstFit {
  double h = 0.0;
  double c = 0.0;
  double r_squared = 0.0;
  std::size_t points_used = 0;
  std::size_t points_skipped = 0;  // zero-ratio points excluded from the fit
};

struct TransformStats {
  std::size_t partial_samples = 0;  // trailing samples short of a full window
  bool partial_dropped = false;     // EdgePolicy::kDrop zero-filled them
};

/// R(n)/S(n) over the first n samples: range of cumulative mean-deviations
/// divided by the population standard deviation. 0 when the prefix is
/// constant (S = 0), which covers n = 1.
double rescaled_range(std::span<const double> series, std::size_t n);

RsCurve rs_curve(std::span<const double> block, std::size_t step);

/// Forward first difference with the last value replicated, so the output
/// length equals the curve length. A single-point curve yields [0].
Series differentiate(const RsCurve& curve);

/// Blockwise R/S-curve derivative of a feature series. Output length always
/// equals input length; with step > 1 each derivative value is broadcast over
/// the samples of its prefix segment.
Series dsrr_transform(std::span<const double> feature, const DsrrConfig& config,
                      TransformStats* stats = nullptr);

HurstFit hurst_exponent(std::span<const double> series,
                        std::span<const std::size_t> prefix_lengths);

}  // namespace dsrr
