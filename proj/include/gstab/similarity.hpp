#pragma once

#include <optional>

#include "gstab/core.hpp"

namespace gstab {

struct SimilarityValue {
  double value = 0.0;
  std::optional<double> aux;
};

double linear_cka(const Matrix& x, const Matrix& y);
double debiased_cka(const Matrix& x, const Matrix& y);
SimilarityValue pwcka_effective_rank(const Matrix& x, const Matrix& y, double variance_threshold = 0.99);
double procrustes_similarity(const Matrix& x, const Matrix& y);
double rsa_spearman(const Matrix& x, const Matrix& y, DistanceKind kind = DistanceKind::cosine);
double rdm_pearson(const Matrix& x, const Matrix& y, DistanceKind kind = DistanceKind::cosine);

double sliced_wasserstein(const Matrix& x, const Matrix& y, const RandomStream& stream, int projections = 100);
double mmd_rbf(const Matrix& x, const Matrix& y, std::optional<double> bandwidth = std::nullopt);
// Median of all pairwise euclidean distances in the pooled sample.
double median_heuristic_bandwidth(const Matrix& x, const Matrix& y);

double subspace_overlap(const Matrix& x, const Matrix& y, Index k);
double eigenspectrum_similarity(const Matrix& x, const Matrix& y);
double participation_ratio(const Matrix& x);
double effective_rank(const Matrix& x);

}  // namespace gstab
