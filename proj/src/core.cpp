#include "gstab/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gstab/error.hpp"

namespace gstab {

namespace {

constexpr double kZeroNorm = 1e-12;

void require_valid(const Matrix& x) {
  require(x.rows() >= 2 && x.cols() >= 1, ErrorKind::InvalidShape,
          "matrix must have at least 2 rows and 1 column, got " + std::to_string(x.rows()) + "x" +
              std::to_string(x.cols()));
  require(all_finite(x), ErrorKind::NonFinite, "matrix contains NaN or Inf");
}

}  // namespace

bool all_finite(const Matrix& x) { return x.allFinite(); }

EmbeddingMatrix::EmbeddingMatrix(Matrix values) : values_(std::move(values)) { require_valid(values_); }

EmbeddingMatrix::EmbeddingMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  const Index n = static_cast<Index>(rows.size());
  const Index d = n > 0 ? static_cast<Index>(rows.begin()->size()) : 0;
  values_.resize(n, d);
  Index i = 0;
  for (const auto& row : rows) {
    require(static_cast<Index>(row.size()) == d, ErrorKind::InvalidShape, "ragged rows");
    Index j = 0;
    for (double v : row) values_(i, j++) = v;
    ++i;
  }
  require_valid(values_);
}

EmbeddingMatrix EmbeddingMatrix::select_rows(std::span<const Index> rows) const {
  Matrix out(static_cast<Index>(rows.size()), d());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = values_.row(rows[i]);
  return EmbeddingMatrix(std::move(out));
}

EmbeddingMatrix EmbeddingMatrix::select_cols(std::span<const Index> cols) const {
  Matrix out(n(), static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Index>(j)) = values_.col(cols[j]);
  return EmbeddingMatrix(std::move(out));
}

LabelVector::LabelVector(std::vector<int> labels) : labels_(std::move(labels)) {
  require(!labels_.empty(), ErrorKind::InvalidLabels, "label vector is empty");
  int top = -1;
  for (int v : labels_) {
    require(v >= 0, ErrorKind::InvalidLabels, "labels must be non-negative");
    top = std::max(top, v);
  }
  n_classes_ = top + 1;
  std::vector<char> seen(static_cast<std::size_t>(n_classes_), 0);
  for (int v : labels_) seen[static_cast<std::size_t>(v)] = 1;
  for (int c = 0; c < n_classes_; ++c)
    require(seen[static_cast<std::size_t>(c)] != 0, ErrorKind::InvalidLabels,
            "class " + std::to_string(c) + " has no samples; classes must be 0..C-1");
}

std::vector<Index> LabelVector::counts() const {
  std::vector<Index> out(static_cast<std::size_t>(n_classes_), 0);
  for (int v : labels_) ++out[static_cast<std::size_t>(v)];
  return out;
}

std::vector<std::vector<Index>> LabelVector::members() const {
  std::vector<std::vector<Index>> out(static_cast<std::size_t>(n_classes_));
  for (std::size_t i = 0; i < labels_.size(); ++i)
    out[static_cast<std::size_t>(labels_[i])].push_back(static_cast<Index>(i));
  return out;
}

std::string_view to_string(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::cosine: return "cosine";
    case DistanceKind::correlation: return "correlation";
    case DistanceKind::euclidean: return "euclidean";
  }
  return "unknown";
}

DistanceKind parse_distance_kind(std::string_view name) {
  if (name == "cosine") return DistanceKind::cosine;
  if (name == "correlation") return DistanceKind::correlation;
  if (name == "euclidean") return DistanceKind::euclidean;
  fail(ErrorKind::InvalidArgument, "unknown distance kind '" + std::string(name) + "'");
}

Rdm compute_rdm(const Matrix& x, DistanceKind kind) {
  require_valid(x);
  if (kind == DistanceKind::cosine) {
    for (Index i = 0; i < x.rows(); ++i)
      require(x.row(i).norm() >= kZeroNorm, ErrorKind::ZeroNormRow,
              "row " + std::to_string(i) + " has zero norm");
  } else if (kind == DistanceKind::correlation) {
    for (Index i = 0; i < x.rows(); ++i) {
      const double spread = (x.row(i).array() - x.row(i).mean()).matrix().norm();
      require(spread >= kZeroNorm, ErrorKind::ConstantRow, "row " + std::to_string(i) + " is constant");
    }
  }
  return Rdm{x.rows(), kind, kernels::parallel::condensed_distances(x, kind)};
}

std::vector<double> average_ranks(std::span<const double> values) {
  return kernels::parallel::average_ranks(values);
}

namespace {

void check_pair(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorKind::LengthMismatch,
          "vectors differ in length (" + std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  require(a.size() >= 3, ErrorKind::TooShort, "correlation needs at least 3 values");
  for (std::size_t i = 0; i < a.size(); ++i)
    require(std::isfinite(a[i]) && std::isfinite(b[i]), ErrorKind::NonFinite, "non-finite value");
}

double checked_pearson(std::span<const double> a, std::span<const double> b) {
  const double r = kernels::parallel::pearson(a, b);
  require(!std::isnan(r), ErrorKind::Degenerate, "constant input to correlation");
  return r;
}

}  // namespace

double spearman(std::span<const double> a, std::span<const double> b) {
  check_pair(a, b);
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  return checked_pearson(ra, rb);
}

double pearson(std::span<const double> a, std::span<const double> b) {
  check_pair(a, b);
  return checked_pearson(a, b);
}

EmbeddingMatrix center_columns(const Matrix& x) {
  require_valid(x);
  Matrix out = x.rowwise() - x.colwise().mean();
  return EmbeddingMatrix(std::move(out));
}

EmbeddingMatrix zscore_columns(const Matrix& x) {
  require_valid(x);
  Matrix out = x.rowwise() - x.colwise().mean();
  const double n = static_cast<double>(x.rows());
  for (Index j = 0; j < out.cols(); ++j) {
    const double sd = std::sqrt(out.col(j).squaredNorm() / n);
    require(sd > kZeroNorm, ErrorKind::ConstantColumn, "column " + std::to_string(j) + " is constant");
    out.col(j) /= sd;
  }
  return EmbeddingMatrix(std::move(out));
}

EmbeddingMatrix l2_normalize_rows(const Matrix& x) {
  require_valid(x);
  Matrix out = x;
  for (Index i = 0; i < out.rows(); ++i) {
    const double norm = out.row(i).norm();
    require(norm > kZeroNorm, ErrorKind::ZeroNormRow, "row " + std::to_string(i) + " has zero norm");
    out.row(i) /= norm;
  }
  return EmbeddingMatrix(std::move(out));
}

Svd thin_svd(const Matrix& x) {
  Eigen::MatrixXd a = x;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return Svd{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

PcaResult pca(const Matrix& x, Index k) {
  require_valid(x);
  require(k >= 1 && k <= std::min(x.rows() - 1, x.cols()), ErrorKind::RankTooHigh,
          "pca k=" + std::to_string(k) + " exceeds min(n-1, d)");
  PcaResult out;
  out.mean = x.colwise().mean().transpose();
  const Matrix centered = x.rowwise() - out.mean.transpose();
  Svd svd = thin_svd(centered);
  out.components = svd.v.leftCols(k);
  for (Index j = 0; j < k; ++j) {
    Index arg = 0;
    out.components.col(j).cwiseAbs().maxCoeff(&arg);
    if (out.components(arg, j) < 0) out.components.col(j) *= -1.0;
  }
  out.spectrum = svd.s.head(k);
  out.scores = centered * out.components;
  return out;
}

Matrix ZcaTransform::apply(const Matrix& x) const {
  require(x.cols() == mean.size(), ErrorKind::DimMismatch, "whitening transform fitted on a different width");
  return (x.rowwise() - mean.transpose()) * transform;
}

ZcaTransform fit_zca(const Matrix& x, double shrinkage) {
  require_valid(x);
  require(shrinkage >= 0.0 && shrinkage <= 1.0, ErrorKind::InvalidArgument, "shrinkage must lie in [0, 1]");
  ZcaTransform out;
  out.mean = x.colwise().mean().transpose();
  const Matrix centered = x.rowwise() - out.mean.transpose();
  const Index d = x.cols();
  Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(x.rows());
  const double iso = cov.trace() / static_cast<double>(d);
  cov = (1.0 - shrinkage) * cov + shrinkage * iso * Eigen::MatrixXd::Identity(d, d);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const Vector values = eig.eigenvalues();
  const double top = values.maxCoeff();
  require(top > 0.0 && values.minCoeff() > 1e-10 * top, ErrorKind::SingularCovariance,
          "covariance is singular; use a positive shrinkage");
  const Vector inv_sqrt = values.cwiseSqrt().cwiseInverse();
  out.transform = eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().transpose();
  return out;
}

EmbeddingMatrix zca_whiten(const Matrix& x, double shrinkage) {
  return EmbeddingMatrix(fit_zca(x, shrinkage).apply(x));
}

Matrix random_orthogonal(Index dim, const RandomStream& stream) {
  require(dim >= 1, ErrorKind::InvalidShape, "dimension must be positive");
  if (dim == 1) return Matrix::Ones(1, 1);
  Engine engine = stream.engine();
  Eigen::MatrixXd a = standard_normal(dim, dim, engine);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim);
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (Index j = 0; j < dim; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

}  // namespace gstab
