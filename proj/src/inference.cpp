#include "gstab/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gstab/error.hpp"
#include "gstab/parallel.hpp"
#include "gstab/stability.hpp"

namespace gstab {

namespace {

// Linear interpolation between order statistics.
double percentile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double w = pos - static_cast<double>(lo);
  return (1.0 - w) * sorted[lo] + w * sorted[hi];
}

double safe_statistic(const RowStatistic& statistic, std::span<const Index> rows) {
  try {
    return statistic(rows);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Degenerate) return std::nan("");
    throw;
  }
}

void check_levels(const DriftSeries& series) {
  require(!series.levels.empty(), ErrorKind::EmptySeries, "drift series has no levels");
  for (std::size_t i = 1; i < series.levels.size(); ++i)
    require(series.levels[i] > series.levels[i - 1], ErrorKind::InvalidArgument,
            "drift series levels must be strictly increasing");
}

void check_truth(std::span<const double> scores, std::span<const int> truth, std::size_t& pos, std::size_t& neg) {
  require(scores.size() == truth.size(), ErrorKind::LengthMismatch, "scores and truth differ in length");
  pos = 0;
  neg = 0;
  for (int t : truth) {
    require(t == 0 || t == 1, ErrorKind::InvalidLabels, "ground truth must be 0 or 1");
    (t == 1 ? pos : neg) += 1;
  }
  require(pos > 0 && neg > 0, ErrorKind::SingleClass, "ground truth must contain both classes");
}

}  // namespace

BootstrapResult bootstrap_ci(Index n_rows, const RowStatistic& statistic, const RandomStream& stream, int iterations,
                             double level) {
  require(n_rows >= 2, ErrorKind::TooFewSamples, "bootstrap needs at least 2 rows");
  require(iterations >= 1, ErrorKind::InvalidArgument, "iterations must be positive");
  require(level > 0.0 && level < 1.0, ErrorKind::InvalidArgument, "level must lie in (0, 1)");
  BootstrapResult out;
  out.iterations = iterations;
  std::vector<Index> all(static_cast<std::size_t>(n_rows));
  std::iota(all.begin(), all.end(), Index{0});
  out.point = safe_statistic(statistic, all);
  std::vector<double> reps(static_cast<std::size_t>(iterations));
  parallel_for(iterations, [&](Index b) {
    Engine engine = stream.derive(static_cast<std::uint64_t>(b)).engine();
    std::uniform_int_distribution<Index> pick(0, n_rows - 1);
    std::vector<Index> rows(static_cast<std::size_t>(n_rows));
    for (auto& r : rows) r = pick(engine);
    reps[static_cast<std::size_t>(b)] = safe_statistic(statistic, rows);
  });
  std::vector<double> kept;
  kept.reserve(reps.size());
  for (double v : reps)
    if (std::isfinite(v)) kept.push_back(v);
  out.dropped = iterations - static_cast<int>(kept.size());
  out.warned = out.dropped > 0.05 * iterations;
  require(!kept.empty(), ErrorKind::AllReplicatesDegenerate, "every bootstrap replicate was degenerate");
  std::sort(kept.begin(), kept.end());
  const double tail = (1.0 - level) / 2.0;
  out.ci_low = percentile(kept, tail);
  out.ci_high = percentile(kept, 1.0 - tail);
  return out;
}

std::vector<double> jackknife(Index n_rows, const RowStatistic& statistic) {
  require(n_rows >= 2, ErrorKind::TooFewSamples, "jackknife needs at least 2 rows");
  std::vector<double> out(static_cast<std::size_t>(n_rows));
  parallel_for(n_rows, [&](Index left_out) {
    std::vector<Index> rows;
    rows.reserve(static_cast<std::size_t>(n_rows - 1));
    for (Index i = 0; i < n_rows; ++i)
      if (i != left_out) rows.push_back(i);
    out[static_cast<std::size_t>(left_out)] = safe_statistic(statistic, rows);
  });
  return out;
}

PermutationNull permutation_null_centroid(const EmbeddingMatrix& x, Index split_index, const RandomStream& stream,
                                          int permutations) {
  require(permutations >= 2, ErrorKind::InvalidArgument, "need at least 2 permutations");
  PermutationNull out;
  out.permutations = permutations;
  out.observed = centroid_drift(x, split_index);
  std::vector<double> null(static_cast<std::size_t>(permutations));
  parallel_for(permutations, [&](Index p) {
    Engine engine = stream.derive(static_cast<std::uint64_t>(p)).engine();
    const auto order = permutation(x.n(), engine);
    null[static_cast<std::size_t>(p)] = centroid_drift(x.select_rows(order), split_index);
  });
  double sum = 0.0;
  for (double v : null) sum += v;
  out.null_mean = sum / permutations;
  double ss = 0.0;
  for (double v : null) ss += (v - out.null_mean) * (v - out.null_mean);
  out.null_std = std::sqrt(ss / (permutations - 1));
  // A degenerate null carries no scale; report no deviation.
  out.z = out.null_std > 0.0 ? (out.observed - out.null_mean) / out.null_std : 0.0;
  return out;
}

double partial_spearman(std::span<const double> a, std::span<const double> b,
                        const std::vector<std::vector<double>>& controls) {
  require(a.size() == b.size(), ErrorKind::LengthMismatch, "a and b differ in length");
  for (const auto& c : controls)
    require(c.size() == a.size(), ErrorKind::LengthMismatch, "a control differs in length");
  require(a.size() >= controls.size() + 3, ErrorKind::TooShort, "need at least (controls + 3) observations");
  if (controls.empty()) return spearman(a, b);
  const Index n = static_cast<Index>(a.size());
  const Index p = static_cast<Index>(controls.size()) + 1;
  Eigen::MatrixXd design(n, p);
  design.col(0).setOnes();
  for (Index j = 1; j < p; ++j) {
    const auto r = average_ranks(controls[static_cast<std::size_t>(j - 1)]);
    design.col(j) = Eigen::Map<const Eigen::VectorXd>(r.data(), n);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  require(qr.rank() == p, ErrorKind::CollinearControls, "control design matrix is rank deficient");
  auto residual = [&](std::span<const double> v) {
    const auto r = average_ranks(v);
    const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(r.data(), n);
    const Eigen::VectorXd res = y - design * qr.solve(y);
    const double scale = (y.array() - y.mean()).matrix().norm();
    return std::pair{res, scale};
  };
  const auto [ra, sa] = residual(a);
  const auto [rb, sb] = residual(b);
  // A variable fully explained by the controls has no partial association.
  if (ra.norm() <= 1e-12 * std::max(1.0, sa) || rb.norm() <= 1e-12 * std::max(1.0, sb)) return 0.0;
  std::vector<double> va(ra.data(), ra.data() + n), vb(rb.data(), rb.data() + n);
  return pearson(va, vb);
}

const std::vector<double>& DriftSeries::metric(const std::string& name) const {
  const auto it = drift.find(name);
  require(it != drift.end(), ErrorKind::InvalidArgument, "series has no metric '" + name + "'");
  require(it->second.size() == levels.size(), ErrorKind::LengthMismatch,
          "metric '" + name + "' length differs from levels");
  return it->second;
}

std::optional<double> detection_threshold(const DriftSeries& series, const std::string& metric, double threshold) {
  check_levels(series);
  const auto& values = series.metric(metric);
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] >= threshold) return series.levels[i];
  return std::nullopt;
}

std::string early_warning_compare(const DriftSeries& a, const std::string& metric_a, const DriftSeries& b,
                                  const std::string& metric_b, double threshold) {
  require(a.levels == b.levels, ErrorKind::LevelMismatch, "series do not share perturbation levels");
  const auto ta = detection_threshold(a, metric_a, threshold);
  const auto tb = detection_threshold(b, metric_b, threshold);
  if (ta == tb) return "tie";
  if (!tb || (ta && *ta < *tb)) return metric_a;
  return metric_b;
}

double roc_auc(std::span<const double> scores, std::span<const int> truth) {
  std::size_t pos = 0, neg = 0;
  check_truth(scores, truth, pos, neg);
  const auto ranks = average_ranks(scores);
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (truth[i] == 1) rank_sum += ranks[i];
  const double np = static_cast<double>(pos);
  return (rank_sum - np * (np + 1.0) / 2.0) / (np * static_cast<double>(neg));
}

double sensitivity_at_fpr(std::span<const double> scores, std::span<const int> truth, double fpr) {
  std::size_t pos = 0, neg = 0;
  check_truth(scores, truth, pos, neg);
  std::vector<double> thresholds(scores.begin(), scores.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  thresholds.push_back(std::numeric_limits<double>::infinity());
  // Lowering the threshold only adds detections, so the best operating point
  // within the FPR budget is the lowest admissible threshold.
  double best = 0.0;
  for (double t : thresholds) {
    std::size_t tp = 0, fp = 0;
    for (std::size_t i = 0; i < scores.size(); ++i)
      if (scores[i] >= t) (truth[i] == 1 ? tp : fp) += 1;
    if (static_cast<double>(fp) / static_cast<double>(neg) <= fpr)
      best = std::max(best, static_cast<double>(tp) / static_cast<double>(pos));
  }
  return best;
}

std::vector<double> accuracy_drops(const DriftSeries& series) {
  require(series.accuracy.has_value(), ErrorKind::InvalidArgument, "series carries no accuracy values");
  const auto& acc = *series.accuracy;
  require(acc.size() == series.levels.size() && !acc.empty(), ErrorKind::LengthMismatch,
          "accuracy length differs from levels");
  std::vector<double> out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = acc[0] - acc[i];
  return out;
}

double false_alarm_rate(const DriftSeries& series, const std::string& metric, double drift_threshold,
                        double stable_acc_drop) {
  check_levels(series);
  const auto drops = accuracy_drops(series);
  const auto& values = series.metric(metric);
  std::size_t stable = 0, alarms = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (drops[i] >= stable_acc_drop) continue;
    ++stable;
    if (values[i] >= drift_threshold) ++alarms;
  }
  require(stable > 0, ErrorKind::NoStablePoints, "no level has an accuracy drop below the stability bound");
  return static_cast<double>(alarms) / static_cast<double>(stable);
}

}  // namespace gstab
