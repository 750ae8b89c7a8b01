#include <algorithm>
#include <cmath>
#include <numeric>

#include "detail.hpp"
#include "gstab/error.hpp"
#include "gstab/parallel.hpp"
#include "gstab/stability.hpp"

namespace gstab {

namespace {

bool is_degenerate(const Error& e) { return e.kind() == ErrorKind::Degenerate; }

StabilityScore summarize(std::vector<double> per_split, const std::vector<char>& degenerate) {
  StabilityScore out;
  out.per_split = std::move(per_split);
  double total = 0.0;
  for (std::size_t k = 0; k < out.per_split.size(); ++k) {
    total += out.per_split[k];
    out.degenerate_splits += degenerate[k] ? 1 : 0;
  }
  out.value = total / static_cast<double>(out.per_split.size());
  return out;
}

// Runs one score per split, applying the degenerate-split policy.
template <class SplitFn>
StabilityScore run_splits(const SheshaConfig& cfg, SplitFn&& split) {
  require(cfg.n_splits >= 1, ErrorKind::InvalidArgument, "n_splits must be at least 1");
  const Index k_total = cfg.n_splits;
  std::vector<double> values(static_cast<std::size_t>(k_total), 0.0);
  std::vector<char> degenerate(static_cast<std::size_t>(k_total), 0);
  const RandomStream base(cfg.seed);
  parallel_for(k_total, [&](Index k) {
    try {
      values[static_cast<std::size_t>(k)] = split(base.derive(static_cast<std::uint64_t>(k)));
    } catch (const Error& e) {
      if (!is_degenerate(e) || cfg.degenerate_policy == DegeneratePolicy::error) throw;
      degenerate[static_cast<std::size_t>(k)] = 1;
    }
  });
  return summarize(std::move(values), degenerate);
}

Matrix cross_distances(const Matrix& a, const Matrix& b, DistanceKind kind) {
  Matrix out(a.rows(), b.rows());
  if (kind == DistanceKind::euclidean) {
    for (Index i = 0; i < a.rows(); ++i)
      for (Index j = 0; j < b.rows(); ++j) out(i, j) = (a.row(i) - b.row(j)).norm();
    return out;
  }
  auto unit = [kind](const Matrix& m) {
    Matrix u = m;
    if (kind == DistanceKind::correlation) u.colwise() -= u.rowwise().mean();
    for (Index i = 0; i < u.rows(); ++i) {
      const double norm = u.row(i).norm();
      require(norm >= 1e-12, kind == DistanceKind::cosine ? ErrorKind::ZeroNormRow : ErrorKind::ConstantRow,
              "row with no spread in sample-split profile");
      u.row(i) /= norm;
    }
    return u;
  };
  out = (1.0 - (unit(a) * unit(b).transpose()).array()).matrix();
  return out;
}

}  // namespace

std::vector<Index> subsample_rows(Index n, const SheshaConfig& cfg) {
  if (cfg.max_samples) {
    require(*cfg.max_samples >= 4, ErrorKind::InvalidArgument, "max_samples must be at least 4");
    if (n > *cfg.max_samples) {
      Engine engine = RandomStream(cfg.seed).engine();
      return sample_without_replacement(n, *cfg.max_samples, engine);
    }
  }
  std::vector<Index> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), Index{0});
  return all;
}

StabilityScore shesha_feature_split(const EmbeddingMatrix& x, const SheshaConfig& cfg) {
  require(x.d() >= 2, ErrorKind::TooFewFeatures, "feature split needs at least 2 features");
  require(x.n() >= 4, ErrorKind::TooFewSamples, "feature split needs at least 4 samples");
  const auto rows = subsample_rows(x.n(), cfg);
  const Matrix data = detail::gather_rows(x.values(), rows);
  const Index d = data.cols();
  const Index first = (d + 1) / 2;
  return run_splits(cfg, [&](const RandomStream& stream) {
    Engine engine = stream.engine();
    const auto order = permutation(d, engine);
    const std::span<const Index> all(order);
    const Rdm a = compute_rdm(detail::gather_cols(data, all.first(static_cast<std::size_t>(first))), cfg.distance);
    const Rdm b = compute_rdm(detail::gather_cols(data, all.subspan(static_cast<std::size_t>(first))), cfg.distance);
    return spearman(a.condensed, b.condensed);
  });
}

double shesha_sample_split_once(const Matrix& x, std::span<const Index> anchors, std::span<const Index> half1,
                                std::span<const Index> half2, DistanceKind kind) {
  require(anchors.size() >= 3, ErrorKind::TooFewSamples, "sample split needs at least 3 anchors");
  require(half1.size() >= 2 && half2.size() >= 2, ErrorKind::TooFewSamples, "each half needs at least 2 samples");
  const Matrix anchor_rows = detail::gather_rows(x, anchors);
  const Matrix p1 = cross_distances(anchor_rows, detail::gather_rows(x, half1), kind);
  const Matrix p2 = cross_distances(anchor_rows, detail::gather_rows(x, half2), kind);
  const Rdm r1 = compute_rdm(p1, DistanceKind::correlation);
  const Rdm r2 = compute_rdm(p2, DistanceKind::correlation);
  return spearman(r1.condensed, r2.condensed);
}

StabilityScore shesha_sample_split(const EmbeddingMatrix& x, const SheshaConfig& cfg, Index anchors) {
  require(anchors >= 3, ErrorKind::InvalidArgument, "anchors must be at least 3");
  const auto rows = subsample_rows(x.n(), cfg);
  const Index n = static_cast<Index>(rows.size());
  require(n >= 3 * anchors, ErrorKind::TooFewSamples,
          "sample split needs n >= 3 * anchors (" + std::to_string(3 * anchors) + ")");
  const Matrix data = detail::gather_rows(x.values(), rows);
  const std::size_t a = static_cast<std::size_t>(anchors);
  const std::size_t half = static_cast<std::size_t>(n - anchors) / 2;
  return run_splits(cfg, [&](const RandomStream& stream) {
    Engine engine = stream.engine();
    const auto order = permutation(n, engine);
    const std::span<const Index> all(order);
    return shesha_sample_split_once(data, all.first(a), all.subspan(a, half), all.subspan(a + half, half),
                                    cfg.distance);
  });
}

StabilityScore shesha_label_conditioned(const EmbeddingMatrix& x, const LabelVector& y, const SheshaConfig& cfg) {
  require(static_cast<Index>(y.size()) == x.n(), ErrorKind::LengthMismatch, "labels and rows differ in count");
  require(y.n_classes() >= 3, ErrorKind::TooFewClasses, "label-conditioned split needs at least 3 classes");
  const auto groups = y.members();
  for (std::size_t c = 0; c < groups.size(); ++c)
    require(groups[c].size() >= 2, ErrorKind::ClassTooSmall,
            "class " + std::to_string(c) + " has fewer than 2 samples");
  const Matrix& data = x.values();
  return run_splits(cfg, [&](const RandomStream& stream) {
    Engine engine = stream.engine();
    std::vector<std::vector<Index>> h1(groups.size()), h2(groups.size());
    for (std::size_t c = 0; c < groups.size(); ++c) {
      std::vector<Index> members = groups[c];
      std::shuffle(members.begin(), members.end(), engine);
      const std::size_t half = members.size() / 2;
      h1[c].assign(members.begin(), members.begin() + static_cast<std::ptrdiff_t>(half));
      h2[c].assign(members.begin() + static_cast<std::ptrdiff_t>(half),
                   members.begin() + static_cast<std::ptrdiff_t>(2 * half));
    }
    const Rdm r1 = compute_rdm(detail::class_centroids(data, h1), cfg.distance);
    const Rdm r2 = compute_rdm(detail::class_centroids(data, h2), cfg.distance);
    return spearman(r1.condensed, r2.condensed);
  });
}

}  // namespace gstab
