#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gstab/core.hpp"

namespace gstab {

struct BootstrapResult {
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int iterations = 0;
  int dropped = 0;
  bool warned = false;
};

// Statistic over a resample, given as row indices into the caller's table.
// Must be safe to call concurrently. NaN results and Degenerate errors count
// as dropped replicates.
using RowStatistic = std::function<double(std::span<const Index> rows)>;

BootstrapResult bootstrap_ci(Index n_rows, const RowStatistic& statistic, const RandomStream& stream,
                             int iterations = 10000, double level = 0.95);
// Leave-one-out values of the statistic, in row order.
std::vector<double> jackknife(Index n_rows, const RowStatistic& statistic);

struct PermutationNull {
  double observed = 0.0;
  double null_mean = 0.0;
  double null_std = 0.0;
  double z = 0.0;
  int permutations = 0;
};

PermutationNull permutation_null_centroid(const EmbeddingMatrix& x, Index split_index, const RandomStream& stream,
                                          int permutations = 500);

double partial_spearman(std::span<const double> a, std::span<const double> b,
                        const std::vector<std::vector<double>>& controls);

struct DriftSeries {
  std::vector<double> levels;
  std::map<std::string, std::vector<double>> drift;
  std::optional<std::vector<double>> accuracy;

  const std::vector<double>& metric(const std::string& name) const;
};

std::optional<double> detection_threshold(const DriftSeries& series, const std::string& metric,
                                          double threshold = 0.05);
// Name of the metric that crosses first, or "tie".
std::string early_warning_compare(const DriftSeries& a, const std::string& metric_a, const DriftSeries& b,
                                  const std::string& metric_b, double threshold = 0.05);

double roc_auc(std::span<const double> scores, std::span<const int> truth);
double sensitivity_at_fpr(std::span<const double> scores, std::span<const int> truth, double fpr = 0.05);

// Accuracy drop of each level relative to the first level.
std::vector<double> accuracy_drops(const DriftSeries& series);
double false_alarm_rate(const DriftSeries& series, const std::string& metric, double drift_threshold = 0.05,
                        double stable_acc_drop = 0.01);

}  // namespace gstab
