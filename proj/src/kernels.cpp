#include "gstab/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gstab::kernels {

void set_workers(int workers) { omp_set_num_threads(std::max(1, workers)); }

int workers() { return omp_get_max_threads(); }

namespace {

double clamp_distance(double v, DistanceKind kind) {
  if (kind == DistanceKind::euclidean) return std::max(0.0, v);
  return std::clamp(v, 0.0, 2.0);
}

}  // namespace

namespace serial {

std::vector<double> condensed_distances(const Matrix& x, DistanceKind kind) {
  const Index n = x.rows();
  const Index d = x.cols();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      double value = 0.0;
      if (kind == DistanceKind::euclidean) {
        double ss = 0.0;
        for (Index k = 0; k < d; ++k) ss += (x(i, k) - x(j, k)) * (x(i, k) - x(j, k));
        value = std::sqrt(ss);
      } else {
        double mi = 0.0, mj = 0.0;
        if (kind == DistanceKind::correlation) {
          for (Index k = 0; k < d; ++k) {
            mi += x(i, k);
            mj += x(j, k);
          }
          mi /= static_cast<double>(d);
          mj /= static_cast<double>(d);
        }
        double dot = 0.0, ni = 0.0, nj = 0.0;
        for (Index k = 0; k < d; ++k) {
          const double a = x(i, k) - mi;
          const double b = x(j, k) - mj;
          dot += a * b;
          ni += a * a;
          nj += b * b;
        }
        value = 1.0 - dot / (std::sqrt(ni) * std::sqrt(nj));
      }
      out.push_back(clamp_distance(value, kind));
    }
  }
  return out;
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t less = 0, equal = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (values[j] < values[i]) ++less;
      else if (values[j] == values[i]) ++equal;
    }
    ranks[i] = static_cast<double>(less) + (static_cast<double>(equal) + 1.0) / 2.0;
  }
  return ranks;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  const double n = static_cast<double>(a.size());
  double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
    saa += a[i] * a[i];
    sbb += b[i] * b[i];
    sab += a[i] * b[i];
  }
  const double cov = sab - sa * sb / n;
  const double va = saa - sa * sa / n;
  const double vb = sbb - sb * sb / n;
  return cov / std::sqrt(va * vb);
}

}  // namespace serial

namespace parallel {

std::vector<double> condensed_distances(const Matrix& x, DistanceKind kind) {
  const Index n = x.rows();
  std::vector<double> out(static_cast<std::size_t>(n * (n - 1) / 2));
  if (kind == DistanceKind::euclidean) {
#pragma omp parallel for schedule(dynamic, 8)
    for (Index i = 0; i < n - 1; ++i) {
      std::size_t pos = condensed_index(n, i, i + 1);
      for (Index j = i + 1; j < n; ++j) out[pos++] = (x.row(i) - x.row(j)).norm();
    }
    return out;
  }
  // Unit rows (after per-row centering for correlation) turn every entry
  // into one dot product.
  Matrix unit = x;
  if (kind == DistanceKind::correlation) unit.colwise() -= unit.rowwise().mean();
  for (Index i = 0; i < n; ++i) unit.row(i) /= unit.row(i).norm();
#pragma omp parallel for schedule(dynamic, 8)
  for (Index i = 0; i < n - 1; ++i) {
    std::size_t pos = condensed_index(n, i, i + 1);
    for (Index j = i + 1; j < n; ++j)
      out[pos++] = clamp_distance(1.0 - unit.row(i).dot(unit.row(j)), kind);
  }
  return out;
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b] || (values[a] == values[b] && a < b);
  });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

// Two-pass form: means first, then centered moments. Chunk partials are
// combined in chunk order, and the chunking depends only on the length.
double pearson(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  constexpr std::size_t kChunk = 1 << 14;
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> sum_a(chunks), sum_b(chunks);
#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < chunks; ++c) {
    double s1 = 0, s2 = 0;
    for (std::size_t i = c * kChunk; i < std::min(n, (c + 1) * kChunk); ++i) {
      s1 += a[i];
      s2 += b[i];
    }
    sum_a[c] = s1;
    sum_b[c] = s2;
  }
  const double ma = std::accumulate(sum_a.begin(), sum_a.end(), 0.0) / static_cast<double>(n);
  const double mb = std::accumulate(sum_b.begin(), sum_b.end(), 0.0) / static_cast<double>(n);
  std::vector<double> cab(chunks), caa(chunks), cbb(chunks);
#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < chunks; ++c) {
    double s_ab = 0, s_aa = 0, s_bb = 0;
    for (std::size_t i = c * kChunk; i < std::min(n, (c + 1) * kChunk); ++i) {
      const double da = a[i] - ma;
      const double db = b[i] - mb;
      s_ab += da * db;
      s_aa += da * da;
      s_bb += db * db;
    }
    cab[c] = s_ab;
    caa[c] = s_aa;
    cbb[c] = s_bb;
  }
  const double sab = std::accumulate(cab.begin(), cab.end(), 0.0);
  const double saa = std::accumulate(caa.begin(), caa.end(), 0.0);
  const double sbb = std::accumulate(cbb.begin(), cbb.end(), 0.0);
  if (saa <= 0.0 || sbb <= 0.0) return std::nan("");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

}  // namespace parallel
}  // namespace gstab::kernels
