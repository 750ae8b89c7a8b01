#pragma once

// Slow, direct reference implementations used only by the tests. None of
// them call into the library's numerical code.

#include <cmath>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double less = 0, equal = 0;
    for (double w : v) {
      if (w < v[i]) less += 1;
      if (w == v[i]) equal += 1;
    }
    r[i] = less + (equal + 1.0) / 2.0;
  }
  return r;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  long double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= a.size();
  mb /= b.size();
  long double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return static_cast<double>(sab / std::sqrt(saa * sbb));
}

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  return pearson(ranks(a), ranks(b));
}

inline double row_distance(const Mat& x, Eigen::Index i, Eigen::Index j, int kind) {
  // kind: 0 cosine, 1 correlation, 2 euclidean
  const Eigen::VectorXd a = x.row(i).transpose(), b = x.row(j).transpose();
  if (kind == 2) return (a - b).norm();
  if (kind == 0) return 1.0 - a.dot(b) / (a.norm() * b.norm());
  std::vector<double> va(a.data(), a.data() + a.size()), vb(b.data(), b.data() + b.size());
  return 1.0 - pearson(va, vb);
}

inline std::vector<double> rdm(const Mat& x, int kind) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = i + 1; j < x.rows(); ++j) out.push_back(row_distance(x, i, j, kind));
  return out;
}

inline Mat centering(Eigen::Index n) {
  return Mat::Identity(n, n) - Mat::Constant(n, n, 1.0 / static_cast<double>(n));
}

inline double hsic_biased(const Mat& k, const Mat& l) {
  const Mat h = centering(k.rows());
  return (k * h * l * h).trace();
}

inline double linear_cka(const Mat& x, const Mat& y) {
  const Mat k = x * x.transpose(), l = y * y.transpose();
  return hsic_biased(k, l) / std::sqrt(hsic_biased(k, k) * hsic_biased(l, l));
}

// Unbiased HSIC written as an explicit sum over distinct index tuples.
inline double hsic_unbiased(const Mat& k0, const Mat& l0) {
  const Eigen::Index n = k0.rows();
  Mat k = k0, l = l0;
  k.diagonal().setZero();
  l.diagonal().setZero();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const double a = (k.cwiseProduct(l)).sum();
  const double b = (ones.transpose() * k * ones)(0) * (ones.transpose() * l * ones)(0) / ((n - 1.0) * (n - 2.0));
  const double c = 2.0 / (n - 2.0) * (ones.transpose() * k * l * ones)(0);
  return (a + b - c) / (n * (n - 3.0));
}

inline Mat center(const Mat& x) { return x.rowwise() - x.colwise().mean(); }

inline double debiased_cka(const Mat& x, const Mat& y) {
  const Mat xc = center(x), yc = center(y);
  const Mat k = xc * xc.transpose(), l = yc * yc.transpose();
  return hsic_unbiased(k, l) / std::sqrt(hsic_unbiased(k, k) * hsic_unbiased(l, l));
}

// Squared nuclear norm of the cross-covariance of normalized inputs.
inline double procrustes(const Mat& x, const Mat& y) {
  Mat xc = center(x), yc = center(y);
  xc /= xc.norm();
  yc /= yc.norm();
  Eigen::JacobiSVD<Mat> svd(Mat(xc.transpose() * yc));
  const double t = svd.singularValues().sum();
  return t * t;
}

}  // namespace oracle
