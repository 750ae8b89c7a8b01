#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gstab/core.hpp"
#include "gstab/inference.hpp"

namespace gstab {

enum class DriftMetric { shesha, cka, procrustes, rdm_pearson, wasserstein, mmd };

std::string_view to_string(DriftMetric metric);
DriftMetric parse_drift_metric(std::string_view name);
const std::vector<DriftMetric>& all_drift_metrics();

struct DriftOptions {
  DistanceKind distance = DistanceKind::cosine;
  std::uint64_t seed = 320;
  int projections = 100;
};

// 1 - similarity for shesha, cka, procrustes and rdm_pearson; the raw
// distance for wasserstein and mmd.
double drift_score(const EmbeddingMatrix& baseline, const EmbeddingMatrix& current, DriftMetric metric,
                   const DriftOptions& options = {});

using AccuracyFn = std::function<double(const EmbeddingMatrix&)>;

// Gaussian-noise perturber: level sigma adds sigma * std(baseline) noise.
// Every level reuses one noise draw from options.seed, scaled by its sigma;
// a level of 0 leaves the baseline unchanged.
EmbeddingMatrix noise_perturb(const EmbeddingMatrix& baseline, double sigma, std::uint64_t seed);

DriftSeries build_drift_series(const EmbeddingMatrix& baseline, const std::vector<double>& levels,
                               const std::vector<DriftMetric>& metrics, const DriftOptions& options = {},
                               const AccuracyFn& accuracy = nullptr);

}  // namespace gstab
