#include "gstab/drift.hpp"

#include "gstab/error.hpp"
#include "gstab/similarity.hpp"
#include "gstab/synthetic.hpp"

namespace gstab {

namespace {

struct MetricName {
  DriftMetric metric;
  std::string_view name;
};

constexpr MetricName kNames[] = {
    {DriftMetric::shesha, "shesha"},           {DriftMetric::cka, "cka"},
    {DriftMetric::procrustes, "procrustes"},   {DriftMetric::rdm_pearson, "rdm_pearson"},
    {DriftMetric::wasserstein, "wasserstein"}, {DriftMetric::mmd, "mmd"},
};

}  // namespace

std::string_view to_string(DriftMetric metric) {
  for (const auto& e : kNames)
    if (e.metric == metric) return e.name;
  return "unknown";
}

DriftMetric parse_drift_metric(std::string_view name) {
  for (const auto& e : kNames)
    if (e.name == name) return e.metric;
  fail(ErrorKind::InvalidArgument, "unknown drift metric '" + std::string(name) + "'");
}

const std::vector<DriftMetric>& all_drift_metrics() {
  static const std::vector<DriftMetric> all = {DriftMetric::shesha,      DriftMetric::cka,
                                               DriftMetric::procrustes,  DriftMetric::rdm_pearson,
                                               DriftMetric::wasserstein, DriftMetric::mmd};
  return all;
}

double drift_score(const EmbeddingMatrix& baseline, const EmbeddingMatrix& current, DriftMetric metric,
                   const DriftOptions& options) {
  require(baseline.n() == current.n(), ErrorKind::RowCountMismatch,
          "baseline has " + std::to_string(baseline.n()) + " rows, current has " + std::to_string(current.n()));
  const Matrix& a = baseline.values();
  const Matrix& b = current.values();
  switch (metric) {
    case DriftMetric::shesha: return 1.0 - rsa_spearman(a, b, options.distance);
    case DriftMetric::cka: return 1.0 - debiased_cka(a, b);
    case DriftMetric::procrustes: return 1.0 - procrustes_similarity(a, b);
    case DriftMetric::rdm_pearson: return 1.0 - rdm_pearson(a, b, options.distance);
    case DriftMetric::wasserstein:
      return sliced_wasserstein(a, b, RandomStream(options.seed), options.projections);
    case DriftMetric::mmd: return mmd_rbf(a, b);
  }
  fail(ErrorKind::InvalidArgument, "unknown drift metric");
}

EmbeddingMatrix noise_perturb(const EmbeddingMatrix& baseline, double sigma, std::uint64_t seed) {
  require(sigma >= 0.0, ErrorKind::InvalidArgument, "noise level must be non-negative");
  if (sigma == 0.0) return baseline;
  EncoderTransform t;
  t.kind = EncoderKind::noise;
  t.sigma = sigma;
  t.seed = seed;
  return apply_encoder(baseline, t);
}

DriftSeries build_drift_series(const EmbeddingMatrix& baseline, const std::vector<double>& levels,
                               const std::vector<DriftMetric>& metrics, const DriftOptions& options,
                               const AccuracyFn& accuracy) {
  require(!levels.empty(), ErrorKind::EmptySeries, "no perturbation levels given");
  for (std::size_t i = 1; i < levels.size(); ++i)
    require(levels[i] > levels[i - 1], ErrorKind::InvalidArgument, "levels must be strictly increasing");
  DriftSeries series;
  series.levels = levels;
  for (DriftMetric m : metrics) series.drift[std::string(to_string(m))].resize(levels.size());
  if (accuracy) series.accuracy.emplace(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const EmbeddingMatrix current = noise_perturb(baseline, levels[i], options.seed);
    for (DriftMetric m : metrics) series.drift[std::string(to_string(m))][i] = drift_score(baseline, current, m, options);
    if (accuracy) (*series.accuracy)[i] = accuracy(current);
  }
  return series;
}

}  // namespace gstab
