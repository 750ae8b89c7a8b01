#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gstab/error.hpp"
#include "gstab/io.hpp"
#include "gstab/report.hpp"

using namespace gstab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "gstab_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

Matrix awkward_values() {
  Matrix x(3, 3);
  x << 0.1, -1e-300, 1.0 / 3.0, 6.02214076e23, -0.0, 123456789.123456789, 5e-324, 2.5, -7;
  return x;
}

}  // namespace

TEST_CASE("binary round trip is bitwise and has the documented size") {
  const Matrix x = awkward_values();
  const auto path = scratch("m.bin").string();
  write_binary(path, x);
  CHECK(fs::file_size(path) == 24 + 8 * 9);
  CHECK(detect_format(path) == MatrixFormat::binary);
  const Matrix back = read_matrix(path).values();
  CHECK(std::memcmp(back.data(), x.data(), sizeof(double) * 9) == 0);

  std::ifstream in(path, std::ios::binary);
  char head[8];
  in.read(head, 8);
  CHECK(std::string(head, 4) == "GSTB");
  CHECK(head[4] == 1);
  CHECK(head[5] == 0);
}

TEST_CASE("csv round trip keeps 17 significant digits") {
  const Matrix x = awkward_values();
  const auto path = scratch("m.csv").string();
  write_csv(path, x, {"a", "b", "c"});
  const Table t = read_table(path);
  CHECK(t.header == std::vector<std::string>{"a", "b", "c"});
  CHECK(t.values == x);
}

TEST_CASE("csv parsing rules") {
  const auto path = scratch("plain.csv");
  write_text(path, "1,2\n3,4.5\n");
  const Table t = read_table(path.string());
  CHECK(t.header.empty());
  CHECK(t.values(1, 1) == 4.5);

  write_text(path, "1,2\n3\n");
  CHECK(kind_of([&] { read_table(path.string()); }) == ErrorKind::Io);
  write_text(path, "1,2\n3,4x\n");
  CHECK(kind_of([&] { read_table(path.string()); }) == ErrorKind::Io);
  write_text(path, "1,2\n3,nan\n");
  CHECK(kind_of([&] { read_matrix(path.string()); }) == ErrorKind::NonFinite);
  CHECK(kind_of([] { read_table("/nonexistent/x.csv"); }) == ErrorKind::Io);
}

TEST_CASE("labels from a file or a named column") {
  const auto labels = scratch("y.csv");
  write_text(labels, "0\n1\n1\n0\n");
  CHECK(read_labels(labels.string()).values() == std::vector<int>{0, 1, 1, 0});

  const auto data = scratch("xy.csv");
  write_text(data, "f1,class,f2\n0.5,1,2\n0.25,0,3\n");
  const auto [x, y] = read_matrix_with_labels(data.string(), "class");
  CHECK(x.d() == 2);
  CHECK(x.values()(1, 1) == 3.0);
  CHECK(y.values() == std::vector<int>{1, 0});
  CHECK(kind_of([&] { read_matrix_with_labels(data.string(), "label"); }) == ErrorKind::LabelRequired);
  write_text(labels, "0\n1.5\n");
  CHECK(kind_of([&] { read_labels(labels.string()); }) == ErrorKind::InvalidLabels);
}

TEST_CASE("format follows the extension") {
  CHECK(format_for_path("a.csv") == MatrixFormat::csv);
  CHECK(format_for_path("a.bin") == MatrixFormat::binary);
  CHECK(format_for_path("a") == MatrixFormat::binary);
}

TEST_CASE("reports serialize non-finite values as null") {
  Report r;
  r.command = "metrics";
  MetricResult m;
  m.metric = "x";
  m.value = std::numeric_limits<double>::quiet_NaN();
  r.results.push_back(m);
  const auto j = to_json(r);
  CHECK(j["results"][0]["value"].is_null());
  CHECK(j["tool_version"] == std::string(kToolVersion));
  CHECK_FALSE(j.contains("elapsed_seconds"));
  CHECK(render(r) == render(r));

  const Check c = check_within("c", 0.2, 0.204, 0.15);
  CHECK(c.passed);
  CHECK_FALSE(check_at_most("nan", std::numeric_limits<double>::quiet_NaN(), 1.0).passed);
  CHECK_FALSE(check_below("edge", 0.4, 0.4).passed);
  CHECK(check_at_most("edge", 0.4, 0.4).passed);
}

TEST_CASE("reported doubles parse back to the same bits") {
  Report r;
  r.command = "metrics";
  MetricResult m;
  m.metric = "x";
  m.value = 0.1 + 0.2;
  r.results.push_back(m);
  const auto parsed = nlohmann::json::parse(render(r));
  const double back = parsed["results"][0]["value"];
  CHECK(back == *m.value);
}
