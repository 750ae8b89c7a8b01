#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gstab/matrix.hpp"

namespace gstab {

enum class MatrixFormat { csv, binary };

struct Table {
  std::vector<std::string> header;  // empty when the file has no header row
  Matrix values;
};

// Binary files are recognised by their magic bytes, everything else is CSV.
MatrixFormat detect_format(const std::string& path);
Table read_table(const std::string& path);
EmbeddingMatrix read_matrix(const std::string& path);
// Reads the matrix and splits off the named CSV column as labels.
std::pair<EmbeddingMatrix, LabelVector> read_matrix_with_labels(const std::string& path, const std::string& label_col);
LabelVector read_labels(const std::string& path);

void write_binary(const std::string& path, const Matrix& x);
void write_csv(const std::string& path, const Matrix& x, const std::vector<std::string>& header = {});
void write_matrix(const std::string& path, const Matrix& x, MatrixFormat format);
// Chooses the format from the extension: ".csv" is CSV, anything else binary.
MatrixFormat format_for_path(const std::string& path);

std::vector<double> read_column(const std::string& path);

}  // namespace gstab
