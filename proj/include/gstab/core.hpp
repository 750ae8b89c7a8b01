#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "gstab/kernels.hpp"
#include "gstab/matrix.hpp"
#include "gstab/random.hpp"

namespace gstab {

std::string_view to_string(DistanceKind kind);
DistanceKind parse_distance_kind(std::string_view name);

struct Rdm {
  Index n = 0;
  DistanceKind kind = DistanceKind::cosine;
  std::vector<double> condensed;
};

Rdm compute_rdm(const Matrix& x, DistanceKind kind);

std::vector<double> average_ranks(std::span<const double> values);
double spearman(std::span<const double> a, std::span<const double> b);
double pearson(std::span<const double> a, std::span<const double> b);

EmbeddingMatrix center_columns(const Matrix& x);
EmbeddingMatrix zscore_columns(const Matrix& x);
EmbeddingMatrix l2_normalize_rows(const Matrix& x);

struct Svd {
  Matrix u;  // n x r
  Vector s;  // r, descending
  Matrix v;  // d x r
};

// Thin SVD of an arbitrary matrix.
Svd thin_svd(const Matrix& x);

struct PcaResult {
  Matrix scores;      // n x k
  Vector spectrum;    // k singular values of the centered matrix
  Matrix components;  // d x k, unit columns
  Vector mean;        // column means
};

PcaResult pca(const Matrix& x, Index k);

// Fitted shrinkage-ZCA map: y = (x - mean) * transform.
struct ZcaTransform {
  Vector mean;
  Matrix transform;

  Matrix apply(const Matrix& x) const;
};

ZcaTransform fit_zca(const Matrix& x, double shrinkage);
EmbeddingMatrix zca_whiten(const Matrix& x, double shrinkage);

Matrix random_orthogonal(Index dim, const RandomStream& stream);

}  // namespace gstab
