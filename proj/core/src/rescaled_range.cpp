#include "dsrr/rescaled_range.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dsrr/errors.hpp"

namespace dsrr {

namespace {

void require_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw DataError("series contains non-finite values");
  }
}

bool all_equal(std::span<const double> values) {
  for (double v : values) {
    if (v != values[0]) return false;
  }
  return true;
}

// Core R/S with inputs already validated. S is the population standard
// deviation; a constant prefix has S = 0 exactly and maps to 0, detected by
// value comparison rather than a computed S so that float noise in the mean
// cannot leak through.
double rs_unchecked(std::span<const double> series, std::size_t n) {
  const auto prefix = series.first(n);
  if (all_equal(prefix)) return 0.0;

  double sum = 0.0;
  for (double v : prefix) sum += v;
  const double mean = sum / static_cast<double>(n);

  double z = 0.0;
  double z_max = -std::numeric_limits<double>::infinity();
  double z_min = std::numeric_limits<double>::infinity();
  double sq = 0.0;
  for (double v : prefix) {
    const double dev = v - mean;
    z += dev;
    z_max = std::max(z_max, z);
    z_min = std::min(z_min, z);
    sq += dev * dev;
  }
  const double s = std::sqrt(sq / static_cast<double>(n));
  if (s == 0.0) return 0.0;
  return (z_max - z_min) / s;
}

}  // namespace

void DsrrConfig::validate() const {
  if (window < 2) throw std::invalid_argument("DsrrConfig: window must be >= 2");
  if (step < 1 || step > window) {
    throw std::invalid_argument("DsrrConfig: step must satisfy 1 <= step <= window");
  }
}

double rescaled_range(std::span<const double> series, std::size_t n) {
  if (n < 1 || n > series.size()) {
    throw std::invalid_argument("rescaled_range: prefix length out of range");
  }
  require_finite(series.first(n));
  return rs_unchecked(series, n);
}

RsCurve rs_curve(std::span<const double> block, std::size_t step) {
  if (block.empty()) throw std::invalid_argument("rs_curve: empty block");
  if (step < 1 || step > block.size()) {
    throw std::invalid_argument("rs_curve: step out of range");
  }
  require_finite(block);

  RsCurve curve;
  for (std::size_t n = step; n <= block.size(); n += step) {
    curve.prefix_lengths.push_back(n);
  }
  // The curve must cover the entire block.
  if (curve.prefix_lengths.back() != block.size()) {
    curve.prefix_lengths.push_back(block.size());
  }
  curve.ratios.reserve(curve.prefix_lengths.size());
  for (std::size_t n : curve.prefix_lengths) {
    curve.ratios.push_back(rs_unchecked(block, n));
  }
  return curve;
}

Series differentiate(const RsCurve& curve) {
  const std::size_t m = curve.ratios.size();
  if (m == 0) throw std::invalid_argument("differentiate: empty curve");
  if (curve.prefix_lengths.size() != m) {
    throw std::invalid_argument("differentiate: malformed curve");
  }
  Series d(m, 0.0);
  if (m == 1) return d;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    d[k] = curve.ratios[k + 1] - curve.ratios[k];
  }
  d[m - 1] = d[m - 2];
  return d;
}

Series dsrr_transform(std::span<const double> feature, const DsrrConfig& config,
                      TransformStats* stats) {
  config.validate();
  if (feature.empty()) throw std::invalid_argument("dsrr_transform: empty series");
  require_finite(feature);

  Series out;
  out.reserve(feature.size());
  TransformStats local;

  for (std::size_t start = 0; start < feature.size(); start += config.window) {
    const std::size_t block_len = std::min(config.window, feature.size() - start);
    if (block_len < config.window) {
      local.partial_samples = block_len;
      if (config.edge == EdgePolicy::kDrop) {
        local.partial_dropped = true;
        out.insert(out.end(), block_len, 0.0);
        break;
      }
    }
    // A shrunk trailing block shorter than the step still gets one curve
    // point at its full length.
    const std::size_t step = std::min(config.step, block_len);
    const RsCurve curve = rs_curve(feature.subspan(start, block_len), step);
    const Series deriv = differentiate(curve);

    std::size_t prev = 0;
    for (std::size_t k = 0; k < curve.size(); ++k) {
      out.insert(out.end(), curve.prefix_lengths[k] - prev, deriv[k]);
      prev = curve.prefix_lengths[k];
    }
  }

  if (stats != nullptr) *stats = local;
  return out;
}

HurstFit hurst_exponent(std::span<const double> series,
                        std::span<const std::size_t> prefix_lengths) {
  require_finite(series);
  std::vector<std::size_t> lengths(prefix_lengths.begin(), prefix_lengths.end());
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  if (lengths.empty()) throw std::invalid_argument("hurst_exponent: no prefix lengths");
  for (std::size_t n : lengths) {
    if (n < 2 || n > series.size()) {
      throw std::invalid_argument("hurst_exponent: prefix length out of range");
    }
  }

  std::vector<double> log_n, log_rs;
  std::size_t skipped = 0;
  for (std::size_t n : lengths) {
    const double rs = rs_unchecked(series, n);
    if (rs > 0.0) {
      log_n.push_back(std::log(static_cast<double>(n)));
      log_rs.push_back(std::log(rs));
    } else {
      ++skipped;
    }
  }
  if (log_n.size() < 2) {
    throw EstimationError("hurst_exponent: fewer than 2 usable rescaled-range points");
  }

  const auto m = static_cast<double>(log_n.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    sx += log_n[i];
    sy += log_rs[i];
    sxx += log_n[i] * log_n[i];
    sxy += log_n[i] * log_rs[i];
  }
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) throw EstimationError("hurst_exponent: degenerate abscissae");
  const double slope = (m * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / m;

  double ss_res = 0, ss_tot = 0;
  const double y_mean = sy / m;
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    const double fit = slope * log_n[i] + intercept;
    ss_res += (log_rs[i] - fit) * (log_rs[i] - fit);
    ss_tot += (log_rs[i] - y_mean) * (log_rs[i] - y_mean);
  }
  // A flat curve is fit exactly by slope 0.
  double r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  r2 = std::clamp(r2, 0.0, 1.0);

  HurstFit fit;
  fit.h = slope;
  fit.c = std::exp(intercept);
  fit.r_squared = r2;
  fit.points_used = log_n.size();
  fit.points_skipped = skipped;
  return fit;
}

}  // namespace dsrr
