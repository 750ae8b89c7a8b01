#include "gstab/io.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "gstab/error.hpp"

namespace gstab {

namespace {

constexpr char kMagic[4] = {'G', 'S', 'T', 'B'};
constexpr std::uint16_t kVersion = 1;
constexpr std::size_t kHeaderBytes = 24;

template <class T>
void put_le(std::string& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
}

template <class T>
T get_le(const unsigned char* p) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(p[i]) << (8 * i);
  return value;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool parse_double(std::string_view field, double& value) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return false;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  return ec == std::errc() && end == field.data() + field.size();
}

Table parse_binary(const std::string& bytes, const std::string& path) {
  require(bytes.size() >= kHeaderBytes, ErrorKind::Io, "'" + path + "' is too short for a GSTB header");
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const auto version = get_le<std::uint16_t>(p + 4);
  require(version == kVersion, ErrorKind::Io, "unsupported GSTB version " + std::to_string(version));
  const auto n = get_le<std::uint64_t>(p + 8);
  const auto d = get_le<std::uint64_t>(p + 16);
  require(n > 0 && d > 0 && n < (1ULL << 32) && d < (1ULL << 32), ErrorKind::Io, "implausible GSTB shape");
  require(bytes.size() == kHeaderBytes + 8 * n * d, ErrorKind::Io,
          "'" + path + "' length does not match its header (" + std::to_string(n) + "x" + std::to_string(d) + ")");
  Table t;
  t.values.resize(static_cast<Index>(n), static_cast<Index>(d));
  const unsigned char* data = p + kHeaderBytes;
  for (std::uint64_t k = 0; k < n * d; ++k) {
    const auto bits = get_le<std::uint64_t>(data + 8 * k);
    double v;
    std::memcpy(&v, &bits, sizeof v);
    t.values.data()[k] = v;
  }
  return t;
}

Table parse_csv(const std::string& text, const std::string& path) {
  Table t;
  std::vector<double> cells;
  std::size_t cols = 0, rows = 0, line_no = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    const std::string_view line = trim(std::string_view(text).substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto fields = split_fields(line);
    std::vector<double> parsed(fields.size());
    bool numeric = true;
    for (std::size_t j = 0; j < fields.size() && numeric; ++j) numeric = parse_double(fields[j], parsed[j]);
    if (!numeric) {
      require(rows == 0 && t.header.empty(), ErrorKind::Io,
              "'" + path + "' line " + std::to_string(line_no) + ": non-numeric field");
      for (auto f : fields) t.header.emplace_back(f);
      cols = fields.size();
      continue;
    }
    if (cols == 0) cols = fields.size();
    require(fields.size() == cols, ErrorKind::Io,
            "'" + path + "' line " + std::to_string(line_no) + ": expected " + std::to_string(cols) + " fields");
    cells.insert(cells.end(), parsed.begin(), parsed.end());
    ++rows;
    if (end == text.size()) break;
  }
  require(rows > 0, ErrorKind::Io, "'" + path + "' contains no data rows");
  t.values = Eigen::Map<const Matrix>(cells.data(), static_cast<Index>(rows), static_cast<Index>(cols));
  return t;
}

void spit(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), ErrorKind::Io, "cannot write '" + path + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  require(out.good(), ErrorKind::Io, "write to '" + path + "' failed");
}

LabelVector labels_from_column(const Matrix& values, Index col, const std::string& what) {
  std::vector<int> labels(static_cast<std::size_t>(values.rows()));
  for (Index i = 0; i < values.rows(); ++i) {
    const double v = values(i, col);
    require(v == std::floor(v) && v >= 0 && v < 1e9, ErrorKind::InvalidLabels,
            what + " row " + std::to_string(i) + " is not a non-negative integer");
    labels[static_cast<std::size_t>(i)] = static_cast<int>(v);
  }
  return LabelVector(std::move(labels));
}

}  // namespace

MatrixFormat detect_format(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorKind::Io, "cannot open '" + path + "'");
  char head[4] = {};
  in.read(head, 4);
  return in.gcount() == 4 && std::memcmp(head, kMagic, 4) == 0 ? MatrixFormat::binary : MatrixFormat::csv;
}

Table read_table(const std::string& path) {
  const std::string bytes = slurp(path);
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic, 4) == 0) return parse_binary(bytes, path);
  return parse_csv(bytes, path);
}

EmbeddingMatrix read_matrix(const std::string& path) { return EmbeddingMatrix(read_table(path).values); }

std::pair<EmbeddingMatrix, LabelVector> read_matrix_with_labels(const std::string& path,
                                                                const std::string& label_col) {
  Table t = read_table(path);
  Index col = -1;
  for (std::size_t j = 0; j < t.header.size(); ++j)
    if (t.header[j] == label_col) col = static_cast<Index>(j);
  require(col >= 0, ErrorKind::LabelRequired, "column '" + label_col + "' not found in '" + path + "' header");
  LabelVector labels = labels_from_column(t.values, col, "label column");
  Matrix features(t.values.rows(), t.values.cols() - 1);
  for (Index j = 0, k = 0; j < t.values.cols(); ++j)
    if (j != col) features.col(k++) = t.values.col(j);
  return {EmbeddingMatrix(std::move(features)), std::move(labels)};
}

LabelVector read_labels(const std::string& path) {
  const Table t = read_table(path);
  require(t.values.cols() == 1, ErrorKind::InvalidLabels, "labels file '" + path + "' must have one column");
  return labels_from_column(t.values, 0, "labels file");
}

std::vector<double> read_column(const std::string& path) {
  const Table t = read_table(path);
  require(t.values.cols() == 1, ErrorKind::Io, "'" + path + "' must have exactly one column");
  return std::vector<double>(t.values.data(), t.values.data() + t.values.size());
}

void write_binary(const std::string& path, const Matrix& x) {
  std::string bytes(kMagic, 4);
  put_le<std::uint16_t>(bytes, kVersion);
  put_le<std::uint16_t>(bytes, 0);
  put_le<std::uint64_t>(bytes, static_cast<std::uint64_t>(x.rows()));
  put_le<std::uint64_t>(bytes, static_cast<std::uint64_t>(x.cols()));
  bytes.reserve(kHeaderBytes + 8 * static_cast<std::size_t>(x.size()));
  for (Index k = 0; k < x.size(); ++k) {
    std::uint64_t bits;
    std::memcpy(&bits, x.data() + k, sizeof bits);
    put_le<std::uint64_t>(bytes, bits);
  }
  spit(path, bytes);
}

void write_csv(const std::string& path, const Matrix& x, const std::vector<std::string>& header) {
  std::string out;
  if (!header.empty()) {
    for (std::size_t j = 0; j < header.size(); ++j) out += (j ? "," : "") + header[j];
    out += '\n';
  }
  char buf[40];
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      const auto res = std::to_chars(buf, buf + sizeof buf, x(i, j), std::chars_format::general, 17);
      if (j) out += ',';
      out.append(buf, res.ptr);
    }
    out += '\n';
  }
  spit(path, out);
}

void write_matrix(const std::string& path, const Matrix& x, MatrixFormat format) {
  if (format == MatrixFormat::binary) write_binary(path, x);
  else write_csv(path, x);
}

MatrixFormat format_for_path(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0 ? MatrixFormat::csv
                                                                             : MatrixFormat::binary;
}

}  // namespace gstab
