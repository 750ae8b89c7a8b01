#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace gstab {

using Index = Eigen::Index;
// Rows are samples; row-major keeps each sample contiguous for the
// pairwise-distance kernels.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// n x d matrix of finite reals with n >= 2 and d >= 1.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  explicit EmbeddingMatrix(Matrix values);
  EmbeddingMatrix(std::initializer_list<std::initializer_list<double>> rows);

  Index n() const { return values_.rows(); }
  Index d() const { return values_.cols(); }
  const Matrix& values() const { return values_; }
  operator const Matrix&() const { return values_; }

  EmbeddingMatrix select_rows(std::span<const Index> rows) const;
  EmbeddingMatrix select_cols(std::span<const Index> cols) const;

 private:
  Matrix values_;
};

// Integer class assignments; classes are 0..C-1 and every class occurs.
class LabelVector {
 public:
  LabelVector() = default;
  explicit LabelVector(std::vector<int> labels);

  std::size_t size() const { return labels_.size(); }
  int n_classes() const { return n_classes_; }
  int operator[](std::size_t i) const { return labels_[i]; }
  const std::vector<int>& values() const { return labels_; }
  std::vector<Index> counts() const;
  // Row indices of each class, in ascending order.
  std::vector<std::vector<Index>> members() const;

 private:
  std::vector<int> labels_;
  int n_classes_ = 0;
};

bool all_finite(const Matrix& x);

}  // namespace gstab
