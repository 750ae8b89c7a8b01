#pragma once

#include <span>
#include <vector>

#include "gstab/matrix.hpp"

namespace gstab::detail {

inline Matrix gather_rows(const Matrix& x, std::span<const Index> rows) {
  Matrix out(static_cast<Index>(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = x.row(rows[i]);
  return out;
}

inline Matrix gather_cols(const Matrix& x, std::span<const Index> cols) {
  Matrix out(x.rows(), static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Index>(j)) = x.col(cols[j]);
  return out;
}

inline Matrix class_centroids(const Matrix& x, const std::vector<std::vector<Index>>& groups) {
  Matrix out = Matrix::Zero(static_cast<Index>(groups.size()), x.cols());
  for (std::size_t c = 0; c < groups.size(); ++c) {
    for (Index i : groups[c]) out.row(static_cast<Index>(c)) += x.row(i);
    out.row(static_cast<Index>(c)) /= static_cast<double>(groups[c].size());
  }
  return out;
}

}  // namespace gstab::detail
