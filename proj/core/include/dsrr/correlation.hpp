#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dsrr/dataset.hpp"

namespace dsrr {

/// Binned cross-tabulation of two columns. Empty rows/columns are compacted
/// away so every marginal is positive.
struct ContingencyTable {
  std::vector<std::vector<std::int64_t>> counts;  // r x k
  std::vector<double> row_edges, col_edges;       // quantile bin edges used
  std::int64_t total = 0;

  std::size_t n_rows() const { return counts.size(); }
  std::size_t n_cols() const { return counts.empty() ? 0 : counts[0].size(); }
};

enum class DropReason { kPhikOne, kTauThreshold, kConstant };

std::string drop_reason_name(DropReason reason);

struct DroppedFeature {
  std::size_t index = 0;
  std::string name;
  DropReason reason = DropReason::kPhikOne;
  // Partner column that triggered a pair drop; == index for constant drops.
  std::size_t against = 0;
};

struct CorrelationReport {
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> phi_k;    // F x F in [0, 1]
  std::vector<std::vector<double>> kendall;  // F x F in [-1, 1]
  std::vector<double> target_association;    // phi_k of each feature vs label
  std::vector<DroppedFeature> dropped;
  std::vector<std::size_t> constant_columns;
  double tau_threshold = 0.87;
  int n_bins = 10;
};

/// Kendall tau-b with tie correction. Internally O(n log n) via inversion
/// counting; agrees exactly with pairwise enumeration since all pair counts
/// are integers. Constant columns report 0.
double kendall_tau(std::span<const double> x, std::span<const double> y);

ContingencyTable contingency_table(std::span<const double> x,
                                   std::span<const double> y, int n_bins);

/// Phi_k association in [0, 1]: quantile-bin both variables, take the Pearson
/// chi-square of the table minus the (r-1)(k-1) independence pedestal, and
/// invert the chi-square a discretized bivariate normal of correlation rho
/// would produce on the same bin grid. Constant columns report 0.
double phi_k(std::span<const double> x, std::span<const double> y, int n_bins = 10);

struct PruneOptions {
  double tau_threshold = 0.87;
  int n_bins = 10;
  bool drop_phik_one = true;
};

struct PruneResult {
  std::vector<std::size_t> kept;  // ascending column indices
  CorrelationReport report;
};

/// Drops constant columns, then one member of every pair with phi_k == 1,
/// then one member of every pair with |tau| above the threshold. Pair drops
/// remove the member with the weaker label association (ties: the higher
/// column index). Deterministic for identical inputs.
PruneResult prune_features(const FeatureTable& table, const PruneOptions& options = {});

namespace detail {

/// Inverse standard-normal CDF (Wichura's AS241, double precision).
double norm_ppf(double p);

/// Standard bivariate normal P(X <= h, Y <= k) with correlation rho
/// (Genz's quadrature/asymptotic scheme, |error| < 5e-16).
double bvn_cdf(double h, double k, double rho);

}  // namespace detail

}  // namespace dsrr
