#include <algorithm>
#include <cmath>

#include "detail.hpp"
#include "gstab/error.hpp"
#include "gstab/parallel.hpp"
#include "gstab/stability.hpp"

namespace gstab {

namespace {

void check_labels(const EmbeddingMatrix& x, const LabelVector& y) {
  require(static_cast<Index>(y.size()) == x.n(), ErrorKind::LengthMismatch,
          "labels (" + std::to_string(y.size()) + ") and rows (" + std::to_string(x.n()) + ") differ in count");
}

void check_class_sizes(const LabelVector& y) {
  require(y.n_classes() >= 2, ErrorKind::TooFewClasses, "at least 2 classes are required");
  const auto counts = y.counts();
  for (std::size_t c = 0; c < counts.size(); ++c)
    require(counts[c] >= 2, ErrorKind::ClassTooSmall, "class " + std::to_string(c) + " has fewer than 2 samples");
}

struct VarianceParts {
  double between = 0.0;
  double within = 0.0;
  double total = 0.0;
};

VarianceParts variance_parts(const Matrix& x, const LabelVector& y) {
  const auto groups = y.members();
  const Matrix centroids = detail::class_centroids(x, groups);
  const Eigen::RowVectorXd mu = x.colwise().mean();
  VarianceParts out;
  for (std::size_t c = 0; c < groups.size(); ++c)
    out.between += static_cast<double>(groups[c].size()) * (centroids.row(static_cast<Index>(c)) - mu).squaredNorm();
  for (Index i = 0; i < x.rows(); ++i) {
    out.within += (x.row(i) - centroids.row(y[static_cast<std::size_t>(i)])).squaredNorm();
    out.total += (x.row(i) - mu).squaredNorm();
  }
  return out;
}

// ceil(frac * n_c) members of every class, drawn without replacement.
std::vector<Index> stratified_subsample(const std::vector<std::vector<Index>>& groups, double frac, Engine& engine) {
  std::vector<Index> out;
  for (const auto& members : groups) {
    const auto take = static_cast<std::size_t>(std::ceil(frac * static_cast<double>(members.size())));
    std::vector<Index> shuffled = members;
    std::shuffle(shuffled.begin(), shuffled.end(), engine);
    out.insert(out.end(), shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(std::max<std::size_t>(1, take)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

LabelVector relabel(const LabelVector& y, std::span<const Index> rows) {
  std::vector<int> out;
  out.reserve(rows.size());
  for (Index i : rows) out.push_back(y[static_cast<std::size_t>(i)]);
  return LabelVector(std::move(out));
}

}  // namespace

double shesha_supervised_rdm(const EmbeddingMatrix& x, const LabelVector& y, const SheshaConfig& cfg) {
  check_labels(x, y);
  require(y.n_classes() >= 2, ErrorKind::TooFewClasses, "supervised alignment needs at least 2 classes");
  const auto rows = subsample_rows(x.n(), cfg);
  const Matrix data = detail::gather_rows(x.values(), rows);
  const Rdm rdm = compute_rdm(data, cfg.distance);
  const Index n = data.rows();
  std::vector<double> label_rdm;
  label_rdm.reserve(rdm.condensed.size());
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      label_rdm.push_back(y[static_cast<std::size_t>(rows[static_cast<std::size_t>(i)])] ==
                                  y[static_cast<std::size_t>(rows[static_cast<std::size_t>(j)])]
                              ? 0.0
                              : 1.0);
  return spearman(rdm.condensed, label_rdm);
}

double shesha_variance_ratio(const EmbeddingMatrix& x, const LabelVector& y) {
  check_labels(x, y);
  const VarianceParts parts = variance_parts(x.values(), y);
  require(parts.total > 0.0, ErrorKind::ZeroTotalVariance, "total variance is zero");
  return parts.between / parts.total;
}

double within_variance_ratio(const EmbeddingMatrix& x, const LabelVector& y) {
  check_labels(x, y);
  const VarianceParts parts = variance_parts(x.values(), y);
  require(parts.total > 0.0, ErrorKind::ZeroTotalVariance, "total variance is zero");
  return parts.within / parts.total;
}

double shesha_class_separation(const EmbeddingMatrix& x, const LabelVector& y, const RandomStream& stream,
                               int iterations, double frac) {
  check_labels(x, y);
  require(y.n_classes() >= 2, ErrorKind::TooFewClasses, "class separation needs at least 2 classes");
  require(iterations >= 1 && frac > 0.0 && frac <= 1.0, ErrorKind::InvalidArgument,
          "iterations must be positive and frac in (0, 1]");
  const auto groups = y.members();
  std::vector<double> ratios(static_cast<std::size_t>(iterations));
  parallel_for(iterations, [&](Index b) {
    const RandomStream replicate = stream.derive(static_cast<std::uint64_t>(b));
    constexpr int kRetries = 10;
    for (int attempt = 0; attempt <= kRetries; ++attempt) {
      Engine engine = replicate.derive(static_cast<std::uint64_t>(attempt)).engine();
      const auto rows = stratified_subsample(groups, frac, engine);
      const Rdm rdm = compute_rdm(detail::gather_rows(x.values(), rows), DistanceKind::cosine);
      const Index n = static_cast<Index>(rows.size());
      double within = 0.0, between = 0.0;
      std::size_t n_within = 0, n_between = 0, pos = 0;
      for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j, ++pos) {
          if (y[static_cast<std::size_t>(rows[static_cast<std::size_t>(i)])] ==
              y[static_cast<std::size_t>(rows[static_cast<std::size_t>(j)])]) {
            within += rdm.condensed[pos];
            ++n_within;
          } else {
            between += rdm.condensed[pos];
            ++n_between;
          }
        }
      if (n_within == 0 || n_between == 0) continue;
      within /= static_cast<double>(n_within);
      between /= static_cast<double>(n_between);
      require(within > 0.0, ErrorKind::Degenerate, "mean within-class distance is zero");
      ratios[static_cast<std::size_t>(b)] = between / within;
      return;
    }
    fail(ErrorKind::EmptyWithinPairs, "no within-class pair after 10 redraws");
  });
  double total = 0.0;
  for (double r : ratios) total += r;
  return total / static_cast<double>(iterations);
}

Vector lda_direction(const Matrix& x, const LabelVector& y, double shrinkage) {
  require(y.n_classes() == 2, ErrorKind::UnsupportedClassCount, "LDA direction is defined for exactly 2 classes");
  const auto groups = y.members();
  const Matrix centroids = detail::class_centroids(x, groups);
  const Index d = x.cols();
  Eigen::MatrixXd sw = Eigen::MatrixXd::Zero(d, d);
  for (Index i = 0; i < x.rows(); ++i) {
    const Eigen::RowVectorXd r = x.row(i) - centroids.row(y[static_cast<std::size_t>(i)]);
    sw.noalias() += r.transpose() * r;
  }
  sw /= static_cast<double>(x.rows());
  const double iso = sw.trace() / static_cast<double>(d);
  sw = (1.0 - shrinkage) * sw + shrinkage * iso * Eigen::MatrixXd::Identity(d, d);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(sw);
  const Vector diag = ldlt.vectorD();
  require(ldlt.info() == Eigen::Success && diag.minCoeff() > 1e-12 * std::max(1.0, diag.cwiseAbs().maxCoeff()),
          ErrorKind::SingularWithinCovariance, "within-class covariance is singular");
  Vector w = ldlt.solve(Vector((centroids.row(1) - centroids.row(0)).transpose()));
  const double norm = w.norm();
  require(norm > 0.0 && std::isfinite(norm), ErrorKind::SingularWithinCovariance, "class means coincide");
  return w / norm;
}

double shesha_lda_subspace(const EmbeddingMatrix& x, const LabelVector& y, const RandomStream& stream,
                           int iterations, double frac) {
  check_labels(x, y);
  require(y.n_classes() == 2, ErrorKind::UnsupportedClassCount, "LDA subspace stability supports 2 classes only");
  require(iterations >= 1 && frac > 0.0 && frac <= 1.0, ErrorKind::InvalidArgument,
          "iterations must be positive and frac in (0, 1]");
  const Vector full = lda_direction(x.values(), y);
  const auto groups = y.members();
  std::vector<double> overlaps(static_cast<std::size_t>(iterations));
  parallel_for(iterations, [&](Index b) {
    Engine engine = stream.derive(static_cast<std::uint64_t>(b)).engine();
    const auto rows = stratified_subsample(groups, frac, engine);
    const Vector w = lda_direction(detail::gather_rows(x.values(), rows), relabel(y, rows));
    overlaps[static_cast<std::size_t>(b)] = std::abs(full.dot(w));
  });
  double total = 0.0;
  for (double v : overlaps) total += v;
  return total / static_cast<double>(iterations);
}

double fisher_discriminant(const EmbeddingMatrix& x, const LabelVector& y) {
  check_labels(x, y);
  check_class_sizes(y);
  const VarianceParts parts = variance_parts(x.values(), y);
  require(parts.within > 0.0, ErrorKind::ZeroTotalVariance, "within-class variance is zero");
  return parts.between / parts.within;
}

double silhouette_score(const EmbeddingMatrix& x, const LabelVector& y) {
  check_labels(x, y);
  check_class_sizes(y);
  const Rdm rdm = compute_rdm(x.values(), DistanceKind::cosine);
  const Index n = x.n();
  const int classes = y.n_classes();
  const auto counts = y.counts();
  std::vector<double> scores(static_cast<std::size_t>(n));
  parallel_for(n, [&](Index i) {
    std::vector<double> sums(static_cast<std::size_t>(classes), 0.0);
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dist = i < j ? rdm.condensed[kernels::condensed_index(n, i, j)]
                                : rdm.condensed[kernels::condensed_index(n, j, i)];
      sums[static_cast<std::size_t>(y[static_cast<std::size_t>(j)])] += dist;
    }
    const int own = y[static_cast<std::size_t>(i)];
    const double a = sums[static_cast<std::size_t>(own)] / static_cast<double>(counts[static_cast<std::size_t>(own)] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (int c = 0; c < classes; ++c)
      if (c != own) b = std::min(b, sums[static_cast<std::size_t>(c)] / static_cast<double>(counts[static_cast<std::size_t>(c)]));
    const double denom = std::max(a, b);
    scores[static_cast<std::size_t>(i)] = denom > 0.0 ? (b - a) / denom : 0.0;
  });
  double total = 0.0;
  for (double s : scores) total += s;
  return total / static_cast<double>(n);
}

double anisotropy(const EmbeddingMatrix& x) {
  const Matrix centered = x.values().rowwise() - x.values().colwise().mean();
  const double total = centered.squaredNorm();
  require(total > 0.0, ErrorKind::ZeroTotalVariance, "total variance is zero");
  const Vector s = thin_svd(centered).s;
  return s(0) * s(0) / s.squaredNorm();
}

}  // namespace gstab
