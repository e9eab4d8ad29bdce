#pragma once

// Dataset statistics over extracted feature records: pairwise-complete
// Pearson correlation, IQR outlier pruning, Welch t-tests, hierarchical
// agglomerative clustering, and OLS regression with inference.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "walkability/stats.hpp"

namespace walkability {

struct AnalyticsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RowMeta {
  std::string trip_id;
  std::string segment_id;
  std::string kind;
};

struct FeatureMatrix {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;  // row major
  std::vector<RowMeta> meta;                             // may be empty

  std::size_t n_rows() const { return rows.size(); }

  std::size_t column_index(const std::string& name) const {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw AnalyticsError("unknown column: " + name);
    return static_cast<std::size_t>(it - columns.begin());
  }

  bool has_column(const std::string& name) const {
    return std::find(columns.begin(), columns.end(), name) != columns.end();
  }
};

// ---------- correlation ----------

struct CorrelationMatrix {
  std::vector<std::string> features;
  std::vector<std::vector<std::optional<double>>> r;  // row major, symmetric
};

// Pairwise-complete Pearson r. Pairs with fewer than 3 jointly complete rows
// or a constant column are reported as null.
inline CorrelationMatrix pearson_matrix(const FeatureMatrix& m) {
  CorrelationMatrix out;
  out.features = m.columns;
  const std::size_t p = m.columns.size();
  out.r.assign(p, std::vector<std::optional<double>>(p));
  for (std::size_t i = 0; i < p; ++i) {
    out.r[i][i] = 1.0;
    for (std::size_t j = i + 1; j < p; ++j) {
      std::vector<double> xs, ys;
      for (const auto& row : m.rows)
        if (row[i] && row[j]) {
          xs.push_back(*row[i]);
          ys.push_back(*row[j]);
        }
      std::optional<double> r;
      if (xs.size() >= 3) {
        const double mx = mean(xs), my = mean(ys);
        double sxy = 0, sxx = 0, syy = 0;
        for (std::size_t k = 0; k < xs.size(); ++k) {
          sxy += (xs[k] - mx) * (ys[k] - my);
          sxx += (xs[k] - mx) * (xs[k] - mx);
          syy += (ys[k] - my) * (ys[k] - my);
        }
        if (sxx > 0 && syy > 0) r = sxy / std::sqrt(sxx * syy);
      }
      out.r[i][j] = r;
      out.r[j][i] = r;
    }
  }
  return out;
}

// ---------- IQR outlier rule ----------

// Retain values in [Q1 - 1.5 IQR, Q3 + 1.5 IQR]. Fewer than 4 values: keep
// everything (quartiles are not meaningful).
inline std::vector<bool> iqr_filter(std::span<const double> values) {
  std::vector<bool> keep(values.size(), true);
  if (values.size() < 4) return keep;
  std::vector<double> v(values.begin(), values.end());
  const double q1 = percentile(v, 0.25);
  const double q3 = percentile(v, 0.75);
  const double iqr = q3 - q1;
  const double lo = q1 - 1.5 * iqr;
  const double hi = q3 + 1.5 * iqr;
  for (std::size_t i = 0; i < values.size(); ++i)
    keep[i] = values[i] >= lo && values[i] <= hi;
  return keep;
}

// ---------- t-tests ----------

struct TTestResult {
  double t = 0.0;
  double dof = 0.0;
  std::optional<double> p;  // two-sided; null when undefined
};

// Welch's unequal-variance t-test.
inline TTestResult welch_ttest(std::span<const double> a,
                               std::span<const double> b) {
  TTestResult res;
  if (a.size() < 2 || b.size() < 2) return res;
  const double va = variance(a, 1), vb = variance(b, 1);
  if (va == 0.0 && vb == 0.0) return res;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double se2 = va / na + vb / nb;
  res.t = (mean(a) - mean(b)) / std::sqrt(se2);
  res.dof = se2 * se2 /
            ((va / na) * (va / na) / (na - 1) + (vb / nb) * (vb / nb) / (nb - 1));
  res.p = student_t_p_two_sided(res.t, res.dof);
  return res;
}

// Student's pooled-variance variant (available behind a flag).
inline TTestResult student_ttest(std::span<const double> a,
                                 std::span<const double> b) {
  TTestResult res;
  if (a.size() < 2 || b.size() < 2) return res;
  const double va = variance(a, 1), vb = variance(b, 1);
  if (va == 0.0 && vb == 0.0) return res;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double sp2 = ((na - 1) * va + (nb - 1) * vb) / (na + nb - 2);
  res.t = (mean(a) - mean(b)) / std::sqrt(sp2 * (1.0 / na + 1.0 / nb));
  res.dof = na + nb - 2;
  res.p = student_t_p_two_sided(res.t, res.dof);
  return res;
}

// ---------- hierarchical clustering ----------

enum class Linkage { ward, single, complete, average };

inline Linkage linkage_from_string(const std::string& s) {
  if (s == "ward") return Linkage::ward;
  if (s == "single") return Linkage::single;
  if (s == "complete") return Linkage::complete;
  if (s == "average") return Linkage::average;
  throw AnalyticsError("unknown linkage: " + s);
}

struct LinkageStep {
  std::size_t a = 0;  // scipy-style ids: leaves 0..n-1, merges n+step
  std::size_t b = 0;
  double height = 0.0;
  std::size_t size = 0;
};

struct ClusterStat {
  double mean = 0.0;
  double sd = 0.0;
  std::size_t n = 0;
};

struct HClusterConfig {
  std::vector<std::string> behavior_features{"ped_speed_variation", "ped_turns",
                                             "ped_path_deviation"};
  std::string iqr_feature = "ped_turns";  // pruned before clustering
  std::string reference_feature = "ped_speed_variation";
  Linkage linkage = Linkage::ward;
  bool use_welch = true;
  std::size_t k = 3;
};

struct ClusterResult {
  std::size_t k = 0;
  std::vector<std::size_t> retained_rows;  // indices into the source matrix
  std::vector<int> assignments;            // parallel to retained_rows
  std::vector<LinkageStep> linkage;
  // per matrix column: stats per cluster and p-values vs cluster 0
  std::vector<std::string> stat_columns;
  std::vector<std::vector<ClusterStat>> stats;                 // [col][cluster]
  std::vector<std::vector<std::optional<double>>> p_vs_ref;    // [col][cluster]
  std::vector<std::size_t> cluster_sizes;
};

namespace detail {

// Agglomerative merge loop with Lance-Williams updates. Ward works on
// squared Euclidean distances; the other linkages on plain distances.
inline std::pair<std::vector<int>, std::vector<LinkageStep>> agglomerate(
    const std::vector<std::vector<double>>& points, std::size_t k,
    Linkage linkage) {
  const std::size_t n = points.size();
  if (n == 0 || k == 0 || k > n) throw AnalyticsError("bad clustering input");
  const bool squared = linkage == Linkage::ward;

  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t f = 0; f < points[i].size(); ++f) {
        const double diff = points[i][f] - points[j][f];
        acc += diff * diff;
      }
      d[i][j] = d[j][i] = squared ? acc : std::sqrt(acc);
    }

  std::vector<bool> active(n, true);
  std::vector<std::size_t> sizes(n, 1);
  std::vector<std::size_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = {i};

  std::vector<LinkageStep> steps;
  std::size_t next_id = n;
  std::size_t remaining = n;
  while (remaining > k) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!active[j]) continue;
        if (d[i][j] < best) {
          best = d[i][j];
          bi = i;
          bj = j;
        }
      }
    }
    const double ni = static_cast<double>(sizes[bi]);
    const double nj = static_cast<double>(sizes[bj]);
    for (std::size_t m = 0; m < n; ++m) {
      if (!active[m] || m == bi || m == bj) continue;
      const double nm = static_cast<double>(sizes[m]);
      double nd = 0.0;
      switch (linkage) {
        case Linkage::single:
          nd = std::min(d[bi][m], d[bj][m]);
          break;
        case Linkage::complete:
          nd = std::max(d[bi][m], d[bj][m]);
          break;
        case Linkage::average:
          nd = (ni * d[bi][m] + nj * d[bj][m]) / (ni + nj);
          break;
        case Linkage::ward:
          nd = ((ni + nm) * d[bi][m] + (nj + nm) * d[bj][m] - nm * d[bi][bj]) /
               (ni + nj + nm);
          break;
      }
      d[bi][m] = d[m][bi] = nd;
    }
    steps.push_back({ids[bi], ids[bj], squared ? std::sqrt(best) : best,
                     sizes[bi] + sizes[bj]});
    sizes[bi] += sizes[bj];
    members[bi].insert(members[bi].end(), members[bj].begin(), members[bj].end());
    ids[bi] = next_id++;
    active[bj] = false;
    --remaining;
  }

  std::vector<int> labels(n, -1);
  int next_label = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    for (std::size_t r : members[i]) labels[r] = next_label;
    ++next_label;
  }
  return {labels, steps};
}

}  // namespace detail

// Clusters rows on the z-scored behavior features after IQR-pruning the
// turning column; the cluster with the lowest mean speed variation becomes
// the reference label 0, the rest follow in decreasing order.
inline ClusterResult hcluster(const FeatureMatrix& m,
                              const HClusterConfig& cfg = {}) {
  ClusterResult out;
  out.k = cfg.k;

  std::vector<std::size_t> feature_idx;
  for (const auto& f : cfg.behavior_features)
    feature_idx.push_back(m.column_index(f));

  std::vector<std::size_t> complete;
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    bool ok = true;
    for (std::size_t f : feature_idx)
      if (!m.rows[r][f]) ok = false;
    if (ok) complete.push_back(r);
  }

  if (m.has_column(cfg.iqr_feature)) {
    const std::size_t iqr_idx = m.column_index(cfg.iqr_feature);
    std::vector<double> turns;
    turns.reserve(complete.size());
    for (std::size_t r : complete) turns.push_back(*m.rows[r][iqr_idx]);
    const std::vector<bool> keep = iqr_filter(turns);
    std::vector<std::size_t> pruned;
    for (std::size_t i = 0; i < complete.size(); ++i)
      if (keep[i]) pruned.push_back(complete[i]);
    complete = std::move(pruned);
  }

  if (complete.size() < cfg.k)
    throw AnalyticsError("fewer complete rows than clusters");

  // z-score over the retained rows
  std::vector<std::vector<double>> pts(complete.size(),
                                       std::vector<double>(feature_idx.size()));
  for (std::size_t f = 0; f < feature_idx.size(); ++f) {
    std::vector<double> col;
    col.reserve(complete.size());
    for (std::size_t r : complete) col.push_back(*m.rows[r][feature_idx[f]]);
    const double mu = mean(col);
    const double sd = complete.size() > 1 ? stddev(col, 1) : 0.0;
    for (std::size_t i = 0; i < complete.size(); ++i)
      pts[i][f] = sd > 0 ? (col[i] - mu) / sd : 0.0;
  }

  auto [raw_labels, steps] = detail::agglomerate(pts, cfg.k, cfg.linkage);
  out.linkage = std::move(steps);
  out.retained_rows = complete;

  // relabel: lowest mean reference feature -> 0, then decreasing
  const std::size_t ref_idx = m.column_index(cfg.reference_feature);
  std::vector<double> sums(cfg.k, 0.0);
  std::vector<std::size_t> counts(cfg.k, 0);
  for (std::size_t i = 0; i < complete.size(); ++i) {
    const auto& cell = m.rows[complete[i]][ref_idx];
    if (cell) {
      sums[raw_labels[i]] += *cell;
      ++counts[raw_labels[i]];
    }
  }
  std::vector<std::pair<double, int>> order;  // (mean ref, raw label)
  for (std::size_t c = 0; c < cfg.k; ++c)
    order.push_back({counts[c] ? sums[c] / counts[c] : 0.0, static_cast<int>(c)});
  std::sort(order.begin(), order.end());
  std::vector<int> relabel(cfg.k);
  relabel[order.front().second] = 0;  // lowest variation is the reference
  int next = 1;
  for (std::size_t i = order.size(); i-- > 1;)  // then highest to lowest
    relabel[order[i].second] = next++;

  out.assignments.resize(complete.size());
  out.cluster_sizes.assign(cfg.k, 0);
  for (std::size_t i = 0; i < complete.size(); ++i) {
    out.assignments[i] = relabel[raw_labels[i]];
    ++out.cluster_sizes[out.assignments[i]];
  }

  // per-column descriptive stats and significance vs the reference cluster
  out.stat_columns = m.columns;
  out.stats.assign(m.columns.size(), std::vector<ClusterStat>(cfg.k));
  out.p_vs_ref.assign(m.columns.size(),
                      std::vector<std::optional<double>>(cfg.k));
  for (std::size_t col = 0; col < m.columns.size(); ++col) {
    std::vector<std::vector<double>> groups(cfg.k);
    for (std::size_t i = 0; i < complete.size(); ++i) {
      const auto& cell = m.rows[complete[i]][col];
      if (cell) groups[out.assignments[i]].push_back(*cell);
    }
    for (std::size_t c = 0; c < cfg.k; ++c) {
      ClusterStat st;
      st.n = groups[c].size();
      if (st.n >= 1) st.mean = mean(groups[c]);
      if (st.n >= 2) st.sd = stddev(groups[c], 1);
      out.stats[col][c] = st;
      if (c > 0 && groups[0].size() >= 2 && groups[c].size() >= 2) {
        const TTestResult tt = cfg.use_welch
                                   ? welch_ttest(groups[c], groups[0])
                                   : student_ttest(groups[c], groups[0]);
        out.p_vs_ref[col][c] = tt.p;
      }
    }
  }
  return out;
}

// ---------- OLS regression ----------

struct RegressionTerm {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double p_value = 1.0;
};

struct RegressionResult {
  std::string response;
  std::vector<RegressionTerm> terms;  // intercept first
  double r2 = 0.0;
  double adj_r2 = 0.0;
  double f_stat = 0.0;
  std::optional<double> f_p;
  std::size_t n_obs = 0;
  std::size_t df_resid = 0;
  std::vector<std::string> predictors;
  std::vector<std::string> notes;
};

struct OlsConfig {
  bool minmax_normalize = true;
  std::vector<std::string> log_transform{"avg_ped_density"};
  double log_eps = 1e-4;
};

namespace detail {

// Householder QR of the design matrix; throws on rank deficiency, naming a
// correlated column pair when one can be identified.
struct QrOls {
  std::vector<double> beta;
  std::vector<double> se;
  double ssr = 0.0;
};

inline QrOls solve_ols(const std::vector<std::vector<double>>& x,  // column major
                       const std::vector<double>& y,
                       const std::vector<std::string>& names) {
  const std::size_t p = x.size();
  const std::size_t n = y.size();
  std::vector<std::vector<double>> a = x;  // working copy
  std::vector<double> qty = y;

  double scale = 0.0;
  for (const auto& col : x)
    for (double v : col) scale = std::max(scale, std::abs(v));
  const double rank_tol = 1e-10 * std::max(scale, 1.0) *
                          std::sqrt(static_cast<double>(n));

  for (std::size_t j = 0; j < p; ++j) {
    double nrm = 0.0;
    for (std::size_t i = j; i < n; ++i) nrm += a[j][i] * a[j][i];
    nrm = std::sqrt(nrm);
    if (nrm < rank_tol) {
      // the column is (numerically) in the span of the previous ones
      std::string partner;
      double best = 0.0;
      for (std::size_t jj = 0; jj < j; ++jj) {
        double dxy = 0.0, nx = 0.0, ny = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          dxy += x[j][i] * x[jj][i];
          nx += x[j][i] * x[j][i];
          ny += x[jj][i] * x[jj][i];
        }
        const double c = nx > 0 && ny > 0 ? std::abs(dxy) / std::sqrt(nx * ny) : 0.0;
        if (c > best) {
          best = c;
          partner = names[jj];
        }
      }
      throw AnalyticsError(
          "design matrix is rank deficient: column '" + names[j] + "'" +
          (partner.empty() ? "" : " is collinear with '" + partner + "'"));
    }
    const double alpha = a[j][j] > 0 ? -nrm : nrm;
    std::vector<double> v(n - j);
    v[0] = a[j][j] - alpha;
    for (std::size_t i = j + 1; i < n; ++i) v[i - j] = a[j][i];
    double vtv = 0.0;
    for (double w : v) vtv += w * w;
    if (vtv > 0) {
      for (std::size_t k = j; k < p; ++k) {
        double d = 0.0;
        for (std::size_t i = j; i < n; ++i) d += v[i - j] * a[k][i];
        const double f = 2.0 * d / vtv;
        for (std::size_t i = j; i < n; ++i) a[k][i] -= f * v[i - j];
      }
      double d = 0.0;
      for (std::size_t i = j; i < n; ++i) d += v[i - j] * qty[i];
      const double f = 2.0 * d / vtv;
      for (std::size_t i = j; i < n; ++i) qty[i] -= f * v[i - j];
    }
    a[j][j] = alpha;  // guard against residual rounding below the diagonal
  }
  // now R[j][k] (j <= k) lives in a[k][j]

  QrOls out;
  out.beta.assign(p, 0.0);
  for (std::size_t j = p; j-- > 0;) {
    double s = qty[j];
    for (std::size_t k = j + 1; k < p; ++k) s -= a[k][j] * out.beta[k];
    out.beta[j] = s / a[j][j];
  }
  for (std::size_t i = p; i < n; ++i) out.ssr += qty[i] * qty[i];

  // (X'X)^-1 = R^-1 R^-T; build R^-1 column by column
  std::vector<std::vector<double>> rinv(p, std::vector<double>(p, 0.0));
  for (std::size_t col = 0; col < p; ++col) {
    for (std::size_t j = col + 1; j-- > 0;) {
      double s = j == col ? 1.0 : 0.0;
      for (std::size_t k = j + 1; k <= col; ++k) s -= a[k][j] * rinv[col][k];
      rinv[col][j] = s / a[j][j];
    }
  }
  out.se.assign(p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    double s = 0.0;
    for (std::size_t col = i; col < p; ++col) s += rinv[col][i] * rinv[col][i];
    out.se[i] = s;  // diagonal of (X'X)^-1; scaled by sigma^2 by the caller
  }
  return out;
}

}  // namespace detail

inline RegressionResult ols(const FeatureMatrix& m, const std::string& response,
                            const std::vector<std::string>& predictors,
                            const OlsConfig& cfg = {}) {
  RegressionResult res;
  res.response = response;
  res.predictors = predictors;

  const std::size_t yi = m.column_index(response);
  std::vector<std::size_t> xi;
  for (const auto& p : predictors) xi.push_back(m.column_index(p));

  std::vector<std::size_t> complete;
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    bool ok = m.rows[r][yi].has_value();
    for (std::size_t f : xi)
      if (!m.rows[r][f]) ok = false;
    if (ok) complete.push_back(r);
  }
  const std::size_t n = complete.size();
  const std::size_t p = predictors.size() + 1;
  if (n <= p)
    throw AnalyticsError("not enough complete observations: n=" +
                         std::to_string(n) + ", coefficients=" + std::to_string(p));

  std::vector<double> y;
  y.reserve(n);
  for (std::size_t r : complete) y.push_back(*m.rows[r][yi]);

  std::vector<std::vector<double>> x(p, std::vector<double>(n, 1.0));
  std::vector<std::string> names{"(Intercept)"};
  for (std::size_t f = 0; f < xi.size(); ++f) {
    names.push_back(predictors[f]);
    auto& col = x[f + 1];
    const bool log_it =
        std::find(cfg.log_transform.begin(), cfg.log_transform.end(),
                  predictors[f]) != cfg.log_transform.end();
    for (std::size_t i = 0; i < n; ++i) {
      double v = *m.rows[complete[i]][xi[f]];
      if (log_it) {
        if (v + cfg.log_eps <= 0)
          throw AnalyticsError("cannot log-transform non-positive value in " +
                               predictors[f]);
        v = std::log(v + cfg.log_eps);
      }
      col[i] = v;
    }
    if (cfg.minmax_normalize) {
      const auto [lo_it, hi_it] = std::minmax_element(col.begin(), col.end());
      const double lo = *lo_it, hi = *hi_it;
      if (hi <= lo)
        throw AnalyticsError("constant predictor column: " + predictors[f]);
      for (double& v : col) v = (v - lo) / (hi - lo);
    }
  }

  const detail::QrOls fit = detail::solve_ols(x, y, names);

  const double ybar = mean(y);
  double sst = 0.0;
  for (double v : y) sst += (v - ybar) * (v - ybar);
  const std::size_t df = n - p;
  const double sigma2 = fit.ssr / static_cast<double>(df);

  res.n_obs = n;
  res.df_resid = df;
  res.r2 = sst > 0 ? 1.0 - fit.ssr / sst : 1.0;
  res.adj_r2 = 1.0 - (1.0 - res.r2) * static_cast<double>(n - 1) /
                         static_cast<double>(df);
  if (p > 1 && fit.ssr > 0 && sst > 0) {
    res.f_stat = ((sst - fit.ssr) / static_cast<double>(p - 1)) /
                 (fit.ssr / static_cast<double>(df));
    res.f_p = fisher_f_sf(res.f_stat, static_cast<double>(p - 1),
                          static_cast<double>(df));
  } else if (p > 1 && fit.ssr == 0.0) {
    res.f_stat = std::numeric_limits<double>::infinity();
    res.f_p = 0.0;
  }

  for (std::size_t j = 0; j < p; ++j) {
    RegressionTerm term;
    term.name = names[j];
    term.estimate = fit.beta[j];
    term.std_error = std::sqrt(sigma2 * fit.se[j]);
    if (term.std_error > 0) {
      term.p_value = student_t_p_two_sided(term.estimate / term.std_error,
                                           static_cast<double>(df));
    } else {
      term.p_value = term.estimate == 0.0 ? 1.0 : 0.0;
    }
    res.terms.push_back(std::move(term));
  }
  return res;
}

// Single-pass removal of predictors with p above the threshold from the full
// model, then one refit.
inline RegressionResult reduce_model(const RegressionResult& full,
                                     const FeatureMatrix& m,
                                     double threshold = 0.1,
                                     const OlsConfig& cfg = {}) {
  std::vector<std::string> kept, removed;
  for (const auto& term : full.terms) {
    if (term.name == "(Intercept)") continue;
    if (term.p_value > threshold)
      removed.push_back(term.name);
    else
      kept.push_back(term.name);
  }
  if (kept.empty()) {
    // intercept-only fallback
    RegressionResult res;
    res.response = full.response;
    res.notes.push_back("all predictors removed at threshold; intercept-only model");
    const std::size_t yi = m.column_index(full.response);
    std::vector<double> y;
    for (const auto& row : m.rows)
      if (row[yi]) y.push_back(*row[yi]);
    if (y.size() < 2) throw AnalyticsError("not enough observations");
    RegressionTerm t;
    t.name = "(Intercept)";
    t.estimate = mean(y);
    t.std_error = stddev(y, 1) / std::sqrt(static_cast<double>(y.size()));
    t.p_value = student_t_p_two_sided(t.estimate / t.std_error,
                                      static_cast<double>(y.size() - 1));
    res.terms.push_back(t);
    res.n_obs = y.size();
    res.df_resid = y.size() - 1;
    for (const auto& r : removed) res.notes.push_back("removed: " + r);
    return res;
  }
  RegressionResult res = ols(m, full.response, kept, cfg);
  for (const auto& r : removed) res.notes.push_back("removed: " + r);
  return res;
}

}  // namespace walkability
