#pragma once

// Data-parallel inner loops. Each kernel has a serial reference written as
// the direct textbook formula, kept for tests and benchmarks, and an OpenMP
// version used by the metrics. Parallel kernels compute every output entry
// independently of the thread that owns it, so results are bit-identical
// for any worker count.

#include <span>
#include <vector>

#include "gstab/matrix.hpp"

namespace gstab {

enum class DistanceKind { cosine, correlation, euclidean };

namespace kernels {

void set_workers(int workers);
int workers();

// Offset of pair (i, j), i < j, in a row-major condensed upper triangle.
inline std::size_t condensed_index(Index n, Index i, Index j) {
  return static_cast<std::size_t>(i * n - i * (i + 1) / 2 + (j - i - 1));
}

namespace serial {
std::vector<double> condensed_distances(const Matrix& x, DistanceKind kind);
std::vector<double> average_ranks(std::span<const double> values);
// Pearson correlation accumulated in a single pass of sums.
double pearson(std::span<const double> a, std::span<const double> b);
}  // namespace serial

namespace parallel {
std::vector<double> condensed_distances(const Matrix& x, DistanceKind kind);
std::vector<double> average_ranks(std::span<const double> values);
double pearson(std::span<const double> a, std::span<const double> b);
}  // namespace parallel

}  // namespace kernels
}  // namespace gstab
