#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gstab/core.hpp"

namespace gstab {

enum class DegeneratePolicy { error, zero };

struct SheshaConfig {
  int n_splits = 30;
  DistanceKind distance = DistanceKind::cosine;
  std::optional<Index> max_samples = 1600;
  std::uint64_t seed = 320;
  DegeneratePolicy degenerate_policy = DegeneratePolicy::zero;
};

struct StabilityScore {
  double value = 0.0;
  std::vector<double> per_split;
  int degenerate_splits = 0;
};

// Split-half variants.
StabilityScore shesha_feature_split(const EmbeddingMatrix& x, const SheshaConfig& cfg = {});
StabilityScore shesha_sample_split(const EmbeddingMatrix& x, const SheshaConfig& cfg = {}, Index anchors = 32);
// One sample split with the partition given explicitly.
double shesha_sample_split_once(const Matrix& x, std::span<const Index> anchors, std::span<const Index> half1,
                                std::span<const Index> half2, DistanceKind kind);
StabilityScore shesha_label_conditioned(const EmbeddingMatrix& x, const LabelVector& y,
                                        const SheshaConfig& cfg = {});

// Supervised variants.
double shesha_supervised_rdm(const EmbeddingMatrix& x, const LabelVector& y, const SheshaConfig& cfg = {});
double shesha_variance_ratio(const EmbeddingMatrix& x, const LabelVector& y);
// Within-class share of total variance; complements the variance ratio.
double within_variance_ratio(const EmbeddingMatrix& x, const LabelVector& y);
double shesha_class_separation(const EmbeddingMatrix& x, const LabelVector& y, const RandomStream& stream,
                               int iterations = 50, double frac = 0.5);
Vector lda_direction(const Matrix& x, const LabelVector& y, double shrinkage = 0.1);
double shesha_lda_subspace(const EmbeddingMatrix& x, const LabelVector& y, const RandomStream& stream,
                           int iterations = 50, double frac = 0.5);

// Baselines.
double fisher_discriminant(const EmbeddingMatrix& x, const LabelVector& y);
double silhouette_score(const EmbeddingMatrix& x, const LabelVector& y);
double anisotropy(const EmbeddingMatrix& x);

// Domain adaptations.
double shesha_trial_split(const EmbeddingMatrix& x, const LabelVector& conditions,
                          DistanceKind kind = DistanceKind::cosine);
double wuc(const EmbeddingMatrix& x, const LabelVector& conditions, double shrinkage = 0.1);
double centroid_drift(const EmbeddingMatrix& x, Index split_index);

enum class CoherenceVariant { euclidean, whitened, knn };

struct CoherenceOptions {
  CoherenceVariant variant = CoherenceVariant::euclidean;
  Index k = 50;
  double whitening_shrinkage = 0.1;
};

double perturbation_coherence(const EmbeddingMatrix& control, const EmbeddingMatrix& perturbed,
                              const CoherenceOptions& options = {});
double latent_perturbation_stability(const Vector& base, const Matrix& perturbed);

// Rows kept by the max_samples cap; identity when no cap applies.
std::vector<Index> subsample_rows(Index n, const SheshaConfig& cfg);

}  // namespace gstab
