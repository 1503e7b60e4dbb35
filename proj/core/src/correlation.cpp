#include "dsrr/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "dsrr/errors.hpp"

namespace dsrr {

namespace detail {

// Wichura's AS241 (PPND16). Relative error below 1e-15 over (0, 1).
double norm_ppf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("norm_ppf: p must lie strictly in (0, 1)");
  }
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) *
                    r +
                4.5921953931549871457e4) *
                   r +
               1.3731693765509461125e4) *
                  r +
              1.9715909503065514427e3) *
                 r +
             1.3314166789178437745e2) *
                r +
            3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) *
                    r +
                2.1213794301586595867e4) *
                   r +
               5.3941960214247511077e3) *
                  r +
              6.8718700749205790830e2) *
                 r +
             4.2313330701600911252e1) *
                r +
            1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                2.41780725177450611770e-1) *
                   r +
               1.27045825245236838258e0) *
                  r +
              3.64784832476320460504e0) *
                 r +
             5.76949722146069140550e0) *
                r +
            4.63033784615654529590e0) *
               r +
           1.42343711074968357734e0) /
          (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                1.51986665636164571966e-2) *
                   r +
               1.48103976427480074590e-1) *
                  r +
              6.89767334985100004550e-1) *
                 r +
             1.67638483018380384940e0) *
                r +
            2.05319162663775882187e0) *
               r +
           1.0);
  } else {
    r -= 5.0;
    val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                1.24266094738807843860e-3) *
                   r +
               2.65321895265761230930e-2) *
                  r +
              2.96560571828504891230e-1) *
                 r +
             1.78482653991729133580e0) *
                r +
            5.46378491116411436990e0) *
               r +
           6.65790464350110377720e0) /
          (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-9) * r +
                1.84631831751005468180e-6) *
                   r +
               7.86869131145613259100e-4) *
                  r +
              1.48753612908506148525e-2) *
                 r +
             1.36929880922735805310e-1) *
                r +
            5.99832206555887937690e-1) *
               r +
           1.0);
  }
  return q < 0.0 ? -val : val;
}

namespace {

double phid(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Genz's BVND: P(X > dh, Y > dk) for a standard bivariate normal with
// correlation r. Gauss-Legendre quadrature over asin(r) below |r| = 0.925,
// an asymptotic expansion plus quadrature above.
double bvnd(double dh, double dk, double r) {
  static const double xgl[3][10] = {
      {-0.9324695142031522, -0.6612093864662647, -0.2386191860831970},
      {-0.9815606342467191, -0.9041172563704750, -0.7699026741943050,
       -0.5873179542866171, -0.3678314989981802, -0.1252334085114692},
      {-0.9931285991850949, -0.9639719272779138, -0.9122344282513259,
       -0.8391169718222188, -0.7463319064601508, -0.6360536807265150,
       -0.5108670019508271, -0.3737060887154196, -0.2277858511416451,
       -0.0765265211334973},
  };
  static const double wgl[3][10] = {
      {0.1713244923791705, 0.3607615730481384, 0.4679139345726904},
      {0.04717533638651177, 0.1069393259953183, 0.1600783285433464,
       0.2031674267230659, 0.2334925365383547, 0.2491470458134029},
      {0.01761400713915212, 0.04060142980038694, 0.06267204833410906,
       0.08327674157670475, 0.1019301198172404, 0.1181945319615184,
       0.1316886384491766, 0.1420961093183821, 0.1491729864726037,
       0.1527533871307259},
  };
  const double two_pi = 2.0 * std::numbers::pi;
  int ng, lg;
  if (std::fabs(r) < 0.3) {
    ng = 0;
    lg = 3;
  } else if (std::fabs(r) < 0.75) {
    ng = 1;
    lg = 6;
  } else {
    ng = 2;
    lg = 10;
  }

  double h = dh;
  double k = dk;
  double hk = h * k;
  double bvn = 0.0;

  if (std::fabs(r) < 0.925) {
    if (std::fabs(r) > 0.0) {
      const double hs = (h * h + k * k) / 2.0;
      const double asr = std::asin(r);
      for (int i = 0; i < lg; ++i) {
        for (int is = -1; is <= 1; is += 2) {
          const double sn = std::sin(asr * (is * xgl[ng][i] + 1.0) / 2.0);
          bvn += wgl[ng][i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
        }
      }
      bvn = bvn * asr / (2.0 * two_pi);
    }
    bvn += phid(-h) * phid(-k);
  } else {
    if (r < 0.0) {
      k = -k;
      hk = -hk;
    }
    if (std::fabs(r) < 1.0) {
      const double as = (1.0 - r) * (1.0 + r);
      double a = std::sqrt(as);
      const double bs = (h - k) * (h - k);
      const double c = (4.0 - hk) / 8.0;
      const double d = (12.0 - hk) / 16.0;
      double asr = -(bs / as + hk) / 2.0;
      if (asr > -100.0) {
        bvn = a * std::exp(asr) *
              (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as * as / 5.0);
      }
      if (-hk < 100.0) {
        const double b = std::sqrt(bs);
        bvn -= std::exp(-hk / 2.0) * std::sqrt(two_pi) * phid(-b / a) * b *
               (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
      }
      a /= 2.0;
      for (int i = 0; i < lg; ++i) {
        for (int is = -1; is <= 1; is += 2) {
          const double xs = a * (is * xgl[ng][i] + 1.0) * a * (is * xgl[ng][i] + 1.0);
          const double rs = std::sqrt(1.0 - xs);
          asr = -(bs / xs + hk) / 2.0;
          if (asr > -100.0) {
            bvn += a * wgl[ng][i] * std::exp(asr) *
                   (std::exp(-hk * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs -
                    (1.0 + c * xs * (1.0 + d * xs)));
          }
        }
      }
      bvn = -bvn / two_pi;
    }
    if (r > 0.0) {
      bvn += phid(-std::max(h, k));
    } else {
      bvn = -bvn;
      if (k > h) bvn += phid(k) - phid(h);
    }
  }
  return bvn;
}

}  // namespace

double bvn_cdf(double h, double k, double rho) { return bvnd(-h, -k, rho); }

}  // namespace detail

namespace {

void require_finite(std::span<const double> values, const char* who) {
  for (double v : values) {
    if (!std::isfinite(v)) throw DataError(std::string(who) + ": non-finite input");
  }
}

bool all_equal(std::span<const double> values) {
  for (double v : values) {
    if (v != values[0]) return false;
  }
  return true;
}

std::int64_t merge_count(std::vector<double>& v, std::vector<double>& buf, std::size_t lo,
                         std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t count = merge_count(v, buf, lo, mid) + merge_count(v, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      count += static_cast<std::int64_t>(mid - i);
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + static_cast<long>(lo), buf.begin() + static_cast<long>(hi),
            v.begin() + static_cast<long>(lo));
  return count;
}

std::vector<int> quantile_bin_assign(std::span<const double> values, int n_bins,
                                     std::vector<double>* edges_out) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(n_bins) - 1);
  for (int j = 1; j < n_bins; ++j) {
    const std::size_t pos =
        std::min(n - 1, static_cast<std::size_t>(j) * n / static_cast<std::size_t>(n_bins));
    edges.push_back(sorted[pos]);
  }
  std::vector<int> bins(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    bins[i] = static_cast<int>(std::upper_bound(edges.begin(), edges.end(), values[i]) -
                               edges.begin());
  }
  if (edges_out != nullptr) *edges_out = std::move(edges);
  return bins;
}

double pearson_chi2(const ContingencyTable& t) {
  const std::size_t r = t.n_rows(), k = t.n_cols();
  std::vector<double> row(r, 0.0), col(k, 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      row[i] += static_cast<double>(t.counts[i][j]);
      col[j] += static_cast<double>(t.counts[i][j]);
    }
  }
  const auto n = static_cast<double>(t.total);
  double chi2 = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double e = row[i] * col[j] / n;
      const double d = static_cast<double>(t.counts[i][j]) - e;
      chi2 += d * d / e;
    }
  }
  return chi2;
}

// Chi-square a discretized bivariate normal of correlation rho produces on
// the quantile grid given by the table's marginals, scaled to n samples.
double bvn_chi2(double rho, std::span<const double> p_row, std::span<const double> p_col,
                double n) {
  constexpr double kZClamp = 37.0;
  const std::size_t r = p_row.size(), k = p_col.size();
  std::vector<double> zr(r + 1), zc(k + 1);
  zr[0] = -kZClamp;
  zc[0] = -kZClamp;
  zr[r] = kZClamp;
  zc[k] = kZClamp;
  double cum = 0.0;
  for (std::size_t i = 0; i + 1 < r; ++i) {
    cum += p_row[i];
    zr[i + 1] = detail::norm_ppf(std::clamp(cum, 1e-300, 1.0 - 1e-16));
  }
  cum = 0.0;
  for (std::size_t j = 0; j + 1 < k; ++j) {
    cum += p_col[j];
    zc[j + 1] = detail::norm_ppf(std::clamp(cum, 1e-300, 1.0 - 1e-16));
  }

  std::vector<std::vector<double>> cdf(r + 1, std::vector<double>(k + 1));
  for (std::size_t i = 0; i <= r; ++i) {
    for (std::size_t j = 0; j <= k; ++j) {
      cdf[i][j] = detail::bvn_cdf(zr[i], zc[j], rho);
    }
  }
  double chi2 = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double cell =
          std::max(0.0, cdf[i + 1][j + 1] - cdf[i][j + 1] - cdf[i + 1][j] + cdf[i][j]);
      const double indep = p_row[i] * p_col[j];
      const double d = cell - indep;
      chi2 += n * d * d / indep;
    }
  }
  return chi2;
}

}  // namespace

std::string drop_reason_name(DropReason reason) {
  switch (reason) {
    case DropReason::kPhikOne:
      return "phik_one";
    case DropReason::kTauThreshold:
      return "tau_threshold";
    case DropReason::kConstant:
      return "constant";
  }
  return "unknown";
}

double kendall_tau(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("kendall_tau: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("kendall_tau: need at least 2 samples");
  require_finite(x, "kendall_tau");
  require_finite(y, "kendall_tau");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (x[a] != x[b]) return x[a] < x[b];
    return y[a] < y[b];
  });

  // Tie pair counts: n1 over x runs, n3 over joint (x, y) runs.
  std::int64_t n1 = 0, n3 = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && x[order[j]] == x[order[i]]) ++j;
    const auto t = static_cast<std::int64_t>(j - i);
    n1 += t * (t - 1) / 2;
    for (std::size_t a = i; a < j;) {
      std::size_t b = a + 1;
      while (b < j && y[order[b]] == y[order[a]]) ++b;
      const auto u = static_cast<std::int64_t>(b - a);
      n3 += u * (u - 1) / 2;
      a = b;
    }
    i = j;
  }

  std::int64_t n2 = 0;
  {
    std::vector<double> ys(y.begin(), y.end());
    std::sort(ys.begin(), ys.end());
    for (std::size_t i = 0; i < n;) {
      std::size_t j = i + 1;
      while (j < n && ys[j] == ys[i]) ++j;
      const auto t = static_cast<std::int64_t>(j - i);
      n2 += t * (t - 1) / 2;
      i = j;
    }
  }

  // Discordant pairs are the strict y-inversions once sorted by (x, y).
  std::vector<double> seq(n);
  for (std::size_t i = 0; i < n; ++i) seq[i] = y[order[i]];
  std::vector<double> buf(n);
  const std::int64_t discordant = merge_count(seq, buf, 0, n);

  const auto n0 = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
  const std::int64_t d1 = n0 - n1;
  const std::int64_t d2 = n0 - n2;
  if (d1 == 0 || d2 == 0) return 0.0;  // constant column
  const std::int64_t num = n0 - n1 - n2 + n3 - 2 * discordant;
  return static_cast<double>(num) /
         std::sqrt(static_cast<double>(d1) * static_cast<double>(d2));
}

ContingencyTable contingency_table(std::span<const double> x, std::span<const double> y,
                                   int n_bins) {
  if (x.size() != y.size()) throw std::invalid_argument("contingency_table: length mismatch");
  if (x.empty()) throw std::invalid_argument("contingency_table: empty input");
  if (n_bins < 2) throw std::invalid_argument("contingency_table: n_bins must be >= 2");

  ContingencyTable t;
  const std::vector<int> bx = quantile_bin_assign(x, n_bins, &t.row_edges);
  const std::vector<int> by = quantile_bin_assign(y, n_bins, &t.col_edges);

  std::vector<std::vector<std::int64_t>> counts(
      static_cast<std::size_t>(n_bins), std::vector<std::int64_t>(n_bins, 0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    ++counts[static_cast<std::size_t>(bx[i])][static_cast<std::size_t>(by[i])];
  }

  // Compact away empty rows and columns so every marginal is positive.
  std::vector<std::size_t> rows_used, cols_used;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (std::accumulate(counts[i].begin(), counts[i].end(), std::int64_t{0}) > 0) {
      rows_used.push_back(i);
    }
  }
  for (std::size_t j = 0; j < counts[0].size(); ++j) {
    std::int64_t s = 0;
    for (const auto& row : counts) s += row[j];
    if (s > 0) cols_used.push_back(j);
  }
  t.counts.reserve(rows_used.size());
  for (std::size_t i : rows_used) {
    std::vector<std::int64_t> row;
    row.reserve(cols_used.size());
    for (std::size_t j : cols_used) row.push_back(counts[i][j]);
    t.counts.push_back(std::move(row));
  }
  t.total = static_cast<std::int64_t>(x.size());
  return t;
}

double phi_k(std::span<const double> x, std::span<const double> y, int n_bins) {
  if (x.size() != y.size()) throw std::invalid_argument("phi_k: length mismatch");
  if (x.size() < 2) throw std::invalid_argument("phi_k: need at least 2 samples");
  if (n_bins < 2) throw std::invalid_argument("phi_k: n_bins must be >= 2");
  require_finite(x, "phi_k");
  require_finite(y, "phi_k");

  const ContingencyTable t = contingency_table(x, y, n_bins);
  const std::size_t r = t.n_rows(), k = t.n_cols();
  if (r < 2 || k < 2) return 0.0;  // constant column

  const double chi2 = pearson_chi2(t);
  if (!std::isfinite(chi2)) throw EstimationError("phi_k: chi-square not finite");
  // A chi-square at its theoretical maximum means a deterministic relation
  // (duplicate or mapped columns): that is phi_k = 1 exactly.
  const double chi2_max =
      static_cast<double>(t.total) * static_cast<double>(std::min(r, k) - 1);
  if (chi2 >= chi2_max * (1.0 - 1e-12)) return 1.0;
  const double pedestal = static_cast<double>((r - 1) * (k - 1));
  const double target = chi2 - pedestal;
  if (target <= 0.0) return 0.0;

  const auto n = static_cast<double>(t.total);
  std::vector<double> p_row(r, 0.0), p_col(k, 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      p_row[i] += static_cast<double>(t.counts[i][j]) / n;
      p_col[j] += static_cast<double>(t.counts[i][j]) / n;
    }
  }

  // chi2 of the discretized bivariate normal increases monotonically in rho;
  // bisect for the rho that reproduces the pedestal-corrected statistic.
  const double rho_hi = 1.0 - 1e-9;
  if (bvn_chi2(rho_hi, p_row, p_col, n) <= target) return 1.0;
  double lo = 0.0, hi = rho_hi;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (bvn_chi2(mid, p_row, p_col, n) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

PruneResult prune_features(const FeatureTable& table, const PruneOptions& options) {
  if (table.features() < 2) {
    throw std::invalid_argument("prune_features: need at least 2 features");
  }
  if (options.n_bins < 2) throw std::invalid_argument("prune_features: n_bins must be >= 2");

  const std::size_t f = table.features();
  CorrelationReport rep;
  rep.feature_names = table.feature_names;
  rep.tau_threshold = options.tau_threshold;
  rep.n_bins = options.n_bins;

  std::vector<bool> is_const(f);
  for (std::size_t j = 0; j < f; ++j) {
    is_const[j] = all_equal(table.columns[j]);
    if (is_const[j]) rep.constant_columns.push_back(j);
  }

  rep.phi_k.assign(f, std::vector<double>(f, 0.0));
  rep.kendall.assign(f, std::vector<double>(f, 0.0));
  for (std::size_t i = 0; i < f; ++i) {
    if (!is_const[i]) {
      rep.phi_k[i][i] = 1.0;
      rep.kendall[i][i] = 1.0;
    }
  }
  for (std::size_t i = 0; i < f; ++i) {
    for (std::size_t j = i + 1; j < f; ++j) {
      if (is_const[i] || is_const[j]) continue;
      const double p = phi_k(table.columns[i], table.columns[j], options.n_bins);
      const double t = kendall_tau(table.columns[i], table.columns[j]);
      rep.phi_k[i][j] = rep.phi_k[j][i] = p;
      rep.kendall[i][j] = rep.kendall[j][i] = t;
    }
  }

  std::vector<double> target(table.rows());
  {
    const std::vector<std::string> classes = table.label_set();
    for (std::size_t i = 0; i < table.rows(); ++i) {
      const auto it = std::lower_bound(classes.begin(), classes.end(), table.labels[i]);
      target[i] = static_cast<double>(it - classes.begin());
    }
  }
  rep.target_association.resize(f, 0.0);
  for (std::size_t j = 0; j < f; ++j) {
    if (!is_const[j] && !all_equal(target)) {
      rep.target_association[j] = phi_k(table.columns[j], target, options.n_bins);
    }
  }

  std::vector<bool> kept(f, true);
  auto drop = [&](std::size_t victim, DropReason reason, std::size_t against) {
    kept[victim] = false;
    rep.dropped.push_back({victim, rep.feature_names[victim], reason, against});
  };
  for (std::size_t j = 0; j < f; ++j) {
    if (is_const[j]) drop(j, DropReason::kConstant, j);
  }
  // Of a redundant pair the weaker label association goes; ties drop the
  // higher column index.
  auto pair_drop = [&](std::size_t i, std::size_t j, DropReason reason) {
    const std::size_t victim = rep.target_association[i] < rep.target_association[j] ? i : j;
    drop(victim, reason, victim == i ? j : i);
  };
  if (options.drop_phik_one) {
    for (std::size_t i = 0; i < f; ++i) {
      for (std::size_t j = i + 1; j < f; ++j) {
        if (kept[i] && kept[j] && rep.phi_k[i][j] >= 1.0 - 1e-9) {
          pair_drop(i, j, DropReason::kPhikOne);
        }
      }
    }
  }
  for (std::size_t i = 0; i < f; ++i) {
    for (std::size_t j = i + 1; j < f; ++j) {
      if (kept[i] && kept[j] && std::fabs(rep.kendall[i][j]) > options.tau_threshold) {
        pair_drop(i, j, DropReason::kTauThreshold);
      }
    }
  }

  PruneResult result;
  for (std::size_t j = 0; j < f; ++j) {
    if (kept[j]) result.kept.push_back(j);
  }
  result.report = std::move(rep);
  return result;
}

}  // namespace dsrr
