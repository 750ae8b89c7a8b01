#include "gstab/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "gstab/error.hpp"
#include "gstab/parallel.hpp"

namespace gstab {

namespace {

void check_same_rows(const Matrix& x, const Matrix& y) {
  require(x.rows() == y.rows(), ErrorKind::RowCountMismatch,
          "row counts differ (" + std::to_string(x.rows()) + " vs " + std::to_string(y.rows()) + ")");
  require(x.allFinite() && y.allFinite(), ErrorKind::NonFinite, "non-finite input");
}

Matrix centered(const Matrix& x) { return x.rowwise() - x.colwise().mean(); }

double linear_cka_centered(const Matrix& xc, const Matrix& yc) {
  double cross, xx, yy;
  const Index n = xc.rows();
  if (n * n < xc.cols() * yc.cols()) {
    const Eigen::MatrixXd k = xc * xc.transpose();
    const Eigen::MatrixXd l = yc * yc.transpose();
    cross = (k.array() * l.array()).sum();
    xx = k.squaredNorm();
    yy = l.squaredNorm();
  } else {
    cross = (yc.transpose() * xc).squaredNorm();
    xx = (xc.transpose() * xc).squaredNorm();
    yy = (yc.transpose() * yc).squaredNorm();
  }
  require(xx > 0.0 && yy > 0.0, ErrorKind::ZeroNorm, "a representation has a zero centered Gram matrix");
  return cross / std::sqrt(xx * yy);
}

// Unbiased HSIC on Gram matrices with the diagonal already zeroed.
double hsic_unbiased(const Eigen::MatrixXd& k, const Eigen::MatrixXd& l) {
  const double n = static_cast<double>(k.rows());
  const Eigen::VectorXd k1 = k.rowwise().sum();
  const Eigen::VectorXd l1 = l.rowwise().sum();
  const double trace_kl = (k.array() * l.array()).sum();
  const double term2 = k1.sum() * l1.sum() / ((n - 1.0) * (n - 2.0));
  const double term3 = 2.0 * k1.dot(l1) / (n - 2.0);
  return (trace_kl + term2 - term3) / (n * (n - 3.0));
}

Eigen::MatrixXd zero_diag_gram(const Matrix& x) {
  Eigen::MatrixXd g = x * x.transpose();
  g.diagonal().setZero();
  return g;
}

Index rank_for_variance(const Vector& s, double threshold) {
  const Eigen::ArrayXd power = s.array().square();
  const double total = power.sum();
  require(total > 0.0, ErrorKind::ZeroSpectrum, "representation has zero variance");
  double cum = 0.0;
  for (Index j = 0; j < power.size(); ++j) {
    cum += power(j);
    if (cum / total >= threshold) return j + 1;
  }
  return power.size();
}

Index numerical_rank(const Vector& s) {
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  Index r = 0;
  for (Index j = 0; j < s.size(); ++j)
    if (s(j) > 1e-10 * s(0)) ++r;
  return r;
}

Vector covariance_eigenvalues(const Matrix& x) {
  require(x.rows() >= 2 && x.allFinite(), ErrorKind::InvalidShape, "need at least 2 finite rows");
  const Vector s = thin_svd(centered(x)).s;
  Vector lambda = s.array().square() / static_cast<double>(x.rows());
  require(lambda.sum() > 0.0, ErrorKind::ZeroSpectrum, "spectrum is zero");
  return lambda;
}

std::vector<double> interpolated_quantiles(std::vector<double> sorted, std::size_t m) {
  if (sorted.size() == m) return sorted;
  std::vector<double> out(m);
  const double last = static_cast<double>(sorted.size() - 1);
  for (std::size_t i = 0; i < m; ++i) {
    const double pos = m == 1 ? 0.0 : last * static_cast<double>(i) / static_cast<double>(m - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double w = pos - static_cast<double>(lo);
    out[i] = (1.0 - w) * sorted[lo] + w * sorted[hi];
  }
  return out;
}

}  // namespace

double linear_cka(const Matrix& x, const Matrix& y) {
  check_same_rows(x, y);
  require(x.rows() >= 2, ErrorKind::TooFewSamples, "CKA needs at least 2 samples");
  return linear_cka_centered(centered(x), centered(y));
}

double debiased_cka(const Matrix& x, const Matrix& y) {
  check_same_rows(x, y);
  require(x.rows() >= 4, ErrorKind::TooFewSamples, "debiased CKA needs at least 4 samples");
  const Eigen::MatrixXd k = zero_diag_gram(centered(x));
  const Eigen::MatrixXd l = zero_diag_gram(centered(y));
  const double kk = hsic_unbiased(k, k);
  const double ll = hsic_unbiased(l, l);
  require(kk > 0.0 && ll > 0.0, ErrorKind::ZeroNorm, "a representation has zero unbiased HSIC");
  return hsic_unbiased(k, l) / std::sqrt(kk * ll);
}

SimilarityValue pwcka_effective_rank(const Matrix& x, const Matrix& y, double variance_threshold) {
  check_same_rows(x, y);
  require(x.rows() >= 4, ErrorKind::TooFewSamples, "PWCKA needs at least 4 samples");
  const Svd sx = thin_svd(centered(x));
  const Svd sy = thin_svd(centered(y));
  const Index k = std::min(rank_for_variance(sx.s, variance_threshold), rank_for_variance(sy.s, variance_threshold));
  const Matrix tx = sx.u.leftCols(k) * sx.s.head(k).asDiagonal();
  const Matrix ty = sy.u.leftCols(k) * sy.s.head(k).asDiagonal();
  return SimilarityValue{linear_cka_centered(tx, ty), static_cast<double>(k)};
}

double procrustes_similarity(const Matrix& x, const Matrix& y) {
  check_same_rows(x, y);
  Matrix xc = centered(x);
  Matrix yc = centered(y);
  const double nx = xc.norm();
  const double ny = yc.norm();
  require(nx > 0.0 && ny > 0.0, ErrorKind::ZeroFrobenius, "a centered representation has zero Frobenius norm");
  xc /= nx;
  yc /= ny;
  // Zero-padding the narrower input only adds zero singular values, so the
  // cross-product spectrum is computed on the unpadded shapes.
  const Eigen::MatrixXd cross = yc.transpose() * xc;
  const double t = Eigen::BDCSVD<Eigen::MatrixXd>(cross).singularValues().sum();
  return std::clamp(t * t, 0.0, 1.0);
}

double rsa_spearman(const Matrix& x, const Matrix& y, DistanceKind kind) {
  check_same_rows(x, y);
  return spearman(compute_rdm(x, kind).condensed, compute_rdm(y, kind).condensed);
}

double rdm_pearson(const Matrix& x, const Matrix& y, DistanceKind kind) {
  check_same_rows(x, y);
  return pearson(compute_rdm(x, kind).condensed, compute_rdm(y, kind).condensed);
}

double sliced_wasserstein(const Matrix& x, const Matrix& y, const RandomStream& stream, int projections) {
  require(x.cols() == y.cols(), ErrorKind::DimMismatch, "inputs differ in width");
  require(x.rows() >= 1 && y.rows() >= 1, ErrorKind::InvalidShape, "inputs must be non-empty");
  require(projections >= 1, ErrorKind::InvalidArgument, "projections must be positive");
  require(x.allFinite() && y.allFinite(), ErrorKind::NonFinite, "non-finite input");
  const std::size_t m = static_cast<std::size_t>(std::max(x.rows(), y.rows()));
  std::vector<double> per(static_cast<std::size_t>(projections));
  parallel_for(projections, [&](Index p) {
    Engine engine = stream.derive(static_cast<std::uint64_t>(p)).engine();
    const Vector u = random_unit_vector(x.cols(), engine);
    const Vector px = x * u;
    const Vector py = y * u;
    std::vector<double> a(px.data(), px.data() + px.size());
    std::vector<double> b(py.data(), py.data() + py.size());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    a = interpolated_quantiles(std::move(a), m);
    b = interpolated_quantiles(std::move(b), m);
    double ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) ss += (a[i] - b[i]) * (a[i] - b[i]);
    per[static_cast<std::size_t>(p)] = std::sqrt(ss / static_cast<double>(m));
  });
  double total = 0.0;
  for (double v : per) total += v;
  return total / static_cast<double>(projections);
}

double median_heuristic_bandwidth(const Matrix& x, const Matrix& y) {
  Matrix pooled(x.rows() + y.rows(), x.cols());
  pooled << x, y;
  std::vector<double> d = kernels::parallel::condensed_distances(pooled, DistanceKind::euclidean);
  const std::size_t mid = d.size() / 2;
  std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(mid), d.end());
  double median = d[mid];
  if (d.size() % 2 == 0) median = 0.5 * (median + *std::max_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(mid)));
  return median;
}

double mmd_rbf(const Matrix& x, const Matrix& y, std::optional<double> bandwidth) {
  require(x.cols() == y.cols(), ErrorKind::DimMismatch, "inputs differ in width");
  require(x.rows() >= 2 && y.rows() >= 2, ErrorKind::TooFewSamples, "MMD needs at least 2 rows per sample");
  require(x.allFinite() && y.allFinite(), ErrorKind::NonFinite, "non-finite input");
  const double sigma = bandwidth ? *bandwidth : median_heuristic_bandwidth(x, y);
  require(sigma > 0.0 && std::isfinite(sigma), ErrorKind::DegenerateBandwidth, "RBF bandwidth is zero");
  const double gamma = 1.0 / (2.0 * sigma * sigma);
  auto gram = [gamma](const Matrix& a, const Matrix& b) {
    const Eigen::VectorXd na = a.rowwise().squaredNorm();
    const Eigen::VectorXd nb = b.rowwise().squaredNorm();
    Eigen::MatrixXd sq = -2.0 * (a * b.transpose());
    sq.colwise() += na;
    sq.rowwise() += nb.transpose();
    return Eigen::MatrixXd((-gamma * sq.array().max(0.0)).exp());
  };
  const Eigen::MatrixXd kxx = gram(x, x);
  const Eigen::MatrixXd kyy = gram(y, y);
  const Eigen::MatrixXd kxy = gram(x, y);
  const double nx = static_cast<double>(x.rows());
  const double ny = static_cast<double>(y.rows());
  const double sxx = kxx.sum() - kxx.trace();
  const double syy = kyy.sum() - kyy.trace();
  if (x.rows() == y.rows()) {
    // Paired U-statistic: cross terms also skip i == j.
    const double sxy = kxy.sum() - kxy.trace();
    return (sxx + syy - 2.0 * sxy) / (nx * (nx - 1.0));
  }
  return sxx / (nx * (nx - 1.0)) + syy / (ny * (ny - 1.0)) - 2.0 * kxy.sum() / (nx * ny);
}

double subspace_overlap(const Matrix& x, const Matrix& y, Index k) {
  check_same_rows(x, y);
  const Svd sx = thin_svd(centered(x));
  const Svd sy = thin_svd(centered(y));
  require(k >= 1 && k <= std::min(numerical_rank(sx.s), numerical_rank(sy.s)), ErrorKind::RankTooHigh,
          "k=" + std::to_string(k) + " exceeds the rank of an input");
  const Eigen::MatrixXd cosines = sx.u.leftCols(k).transpose() * sy.u.leftCols(k);
  return cosines.squaredNorm() / static_cast<double>(k);
}

double eigenspectrum_similarity(const Matrix& x, const Matrix& y) {
  require(x.rows() >= 2 && y.rows() >= 2, ErrorKind::InvalidShape, "need at least 2 rows");
  const Vector sx = thin_svd(centered(x)).s;
  const Vector sy = thin_svd(centered(y)).s;
  require(sx.sum() > 0.0 && sy.sum() > 0.0, ErrorKind::ZeroSpectrum, "spectrum is zero");
  const Index len = std::max(sx.size(), sy.size());
  Vector a = Vector::Zero(len), b = Vector::Zero(len);
  a.head(sx.size()) = sx / sx.sum();
  b.head(sy.size()) = sy / sy.sum();
  return a.dot(b) / (a.norm() * b.norm());
}

double participation_ratio(const Matrix& x) {
  const Vector lambda = covariance_eigenvalues(x);
  return lambda.sum() * lambda.sum() / lambda.squaredNorm();
}

double effective_rank(const Matrix& x) {
  const Vector lambda = covariance_eigenvalues(x);
  const double total = lambda.sum();
  double entropy = 0.0;
  for (Index i = 0; i < lambda.size(); ++i) {
    const double p = lambda(i) / total;
    if (p > 0.0) entropy -= p * std::log(p);
  }
  return std::exp(entropy);
}

}  // namespace gstab
