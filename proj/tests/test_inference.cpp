#include <doctest.h>

#include <cmath>

#include "gstab/error.hpp"
#include "gstab/inference.hpp"
#include "gstab/kernels.hpp"
#include "oracles.hpp"

using namespace gstab;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

std::vector<double> normals(std::size_t n, Engine& engine) {
  const Vector v = standard_normal(static_cast<Index>(n), engine);
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

TEST_CASE("bootstrap of a constant statistic") {
  const auto b = bootstrap_ci(50, [](std::span<const Index>) { return 0.25; }, RandomStream(1), 200);
  CHECK(b.ci_low == 0.25);
  CHECK(b.ci_high == 0.25);
  CHECK(b.point == 0.25);
}

TEST_CASE("bootstrap of spearman on perfectly monotone pairs") {
  std::vector<double> a(40), b(40);
  for (int i = 0; i < 40; ++i) {
    a[static_cast<std::size_t>(i)] = i;
    b[static_cast<std::size_t>(i)] = std::exp(0.1 * i);
  }
  const auto stat = [&](std::span<const Index> rows) {
    std::vector<double> ra, rb;
    for (Index i : rows) {
      ra.push_back(a[static_cast<std::size_t>(i)]);
      rb.push_back(b[static_cast<std::size_t>(i)]);
    }
    return spearman(ra, rb);
  };
  const auto r = bootstrap_ci(40, stat, RandomStream(2), 500);
  CHECK(r.ci_low == doctest::Approx(1.0));
  CHECK(r.ci_high == doctest::Approx(1.0));
}

TEST_CASE("bootstrap is independent of worker count and drops degenerate replicates") {
  Engine engine = RandomStream(3).engine();
  const auto a = normals(60, engine), b = normals(60, engine);
  const auto stat = [&](std::span<const Index> rows) {
    std::vector<double> ra, rb;
    for (Index i : rows) {
      ra.push_back(a[static_cast<std::size_t>(i)]);
      rb.push_back(b[static_cast<std::size_t>(i)]);
    }
    return pearson(ra, rb);
  };
  const int saved = kernels::workers();
  kernels::set_workers(1);
  const auto one = bootstrap_ci(60, stat, RandomStream(4), 1000);
  kernels::set_workers(4);
  const auto four = bootstrap_ci(60, stat, RandomStream(4), 1000);
  kernels::set_workers(saved);
  CHECK(std::memcmp(&one.ci_low, &four.ci_low, sizeof(double)) == 0);
  CHECK(std::memcmp(&one.ci_high, &four.ci_high, sizeof(double)) == 0);

  // Replicates whose first row is even fail; about half are dropped.
  const auto flaky = [&](std::span<const Index> rows) {
    if (rows[0] % 2 == 0) fail(ErrorKind::Degenerate, "flaky");
    return 1.0;
  };
  const auto r = bootstrap_ci(60, flaky, RandomStream(5), 400);
  CHECK(r.dropped > 100);
  CHECK(r.warned);
  CHECK(kind_of([] { bootstrap_ci(10, [](std::span<const Index>) { return NAN; }, RandomStream(6), 20); }) ==
        ErrorKind::AllReplicatesDegenerate);
}

TEST_CASE("jackknife leaves one row out in order") {
  const std::vector<double> v{1, 2, 3, 4, 10};
  const auto out = jackknife(5, [&](std::span<const Index> rows) {
    double s = 0;
    for (Index i : rows) s += v[static_cast<std::size_t>(i)];
    return s;
  });
  CHECK(out == std::vector<double>{19, 18, 17, 16, 10});
}

TEST_CASE("permutation null for centroid drift") {
  // Exchangeable rows: |z| small in most trials.
  int small = 0;
  for (std::uint64_t t = 0; t < 40; ++t) {
    Engine engine = RandomStream(700 + t).engine();
    const Matrix x = standard_normal(60, 5, engine).array() + 1.0;
    if (std::abs(permutation_null_centroid(EmbeddingMatrix(x), 30, RandomStream(t), 200).z) <= 3.0) ++small;
  }
  CHECK(small >= 36);

  Engine engine = RandomStream(8).engine();
  Matrix shift = standard_normal(60, 5, engine) * 0.3;
  shift.topRows(30).array() += 1.0;
  shift.bottomRows(30).col(0).array() -= 2.0;
  CHECK(permutation_null_centroid(EmbeddingMatrix(shift), 30, RandomStream(9), 200).z < -5.0);

  // Constant rows: every permutation gives the same value.
  const auto flat = permutation_null_centroid(EmbeddingMatrix(Matrix::Ones(10, 3)), 5, RandomStream(10), 50);
  CHECK(flat.z == 0.0);
}

TEST_CASE("partial spearman") {
  Engine engine = RandomStream(11).engine();
  const auto a = normals(50, engine);
  auto b = normals(50, engine);
  CHECK(std::abs(partial_spearman(a, b, {}) - spearman(a, b)) <= 1e-9);
  CHECK(std::abs(partial_spearman(a, b, {b})) <= 1e-9);

  // Single control: closed-form first-order partial correlation of ranks.
  const auto c = normals(50, engine);
  for (std::size_t i = 0; i < 50; ++i) b[i] += 0.7 * c[i];
  const double rab = oracle::spearman(a, b), rac = oracle::spearman(a, c), rbc = oracle::spearman(b, c);
  const double closed = (rab - rac * rbc) / std::sqrt((1 - rac * rac) * (1 - rbc * rbc));
  CHECK(std::abs(partial_spearman(a, b, {c}) - closed) <= 1e-8);

  // Two controls: normal equations solved directly.
  const auto d = normals(50, engine);
  oracle::Mat design(50, 3);
  const auto rc = oracle::ranks(c), rd = oracle::ranks(d);
  for (int i = 0; i < 50; ++i) design.row(i) << 1.0, rc[static_cast<std::size_t>(i)], rd[static_cast<std::size_t>(i)];
  auto resid = [&](const std::vector<double>& v) {
    const auto r = oracle::ranks(v);
    const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(r.data(), 50);
    const Eigen::VectorXd beta = (design.transpose() * design).inverse() * design.transpose() * y;
    const Eigen::VectorXd e = y - design * beta;
    return std::vector<double>(e.data(), e.data() + 50);
  };
  CHECK(std::abs(partial_spearman(a, b, {c, d}) - oracle::pearson(resid(a), resid(b))) <= 1e-8);
  CHECK(kind_of([&] { partial_spearman(a, b, {c, c}); }) == ErrorKind::CollinearControls);
}

TEST_CASE("detection threshold and early warning") {
  DriftSeries s;
  s.levels = {0.0, 0.1, 0.2};
  s.drift["m"] = {0.0, 0.04, 0.06};
  s.drift["low"] = {0.0, 0.01, 0.02};
  CHECK(detection_threshold(s, "m") == 0.2);
  CHECK_FALSE(detection_threshold(s, "low").has_value());
  CHECK(early_warning_compare(s, "m", s, "m") == "tie");

  // Rows of the published mean-drift table.
  DriftSeries table;
  table.levels = {0.01, 0.02, 0.05, 0.10, 0.15, 0.20, 0.30, 0.40, 0.50};
  table.drift["shesha"] = {0.003, 0.012, 0.049, 0.119, 0.225, 0.361, 0.630, 0.714, 0.716};
  table.drift["cka"] = {0.002, 0.007, 0.032, 0.074, 0.146, 0.238, 0.380, 0.432, 0.430};
  table.drift["procrustes"] = {0.019, 0.037, 0.085, 0.141, 0.206, 0.278, 0.362, 0.396, 0.414};
  CHECK(detection_threshold(table, "shesha") == 0.10);
  CHECK(detection_threshold(table, "procrustes") == 0.05);
  CHECK(early_warning_compare(table, "procrustes", table, "shesha") == "procrustes");

  // Same table with the CKA row lagging one level: Shesha warns first.
  DriftSeries lagged = table;
  lagged.drift["cka"] = {0.002, 0.007, 0.032, 0.044, 0.146, 0.238, 0.380, 0.432, 0.430};
  CHECK(early_warning_compare(table, "shesha", lagged, "cka") == "shesha");
  DriftSeries other = table;
  other.levels.back() = 0.6;
  CHECK(kind_of([&] { early_warning_compare(table, "shesha", other, "cka"); }) == ErrorKind::LevelMismatch);
}

TEST_CASE("roc auc") {
  const std::vector<double> scores{0.1, 0.4, 0.35, 0.8};
  const std::vector<int> truth{0, 0, 1, 1};
  CHECK(roc_auc(std::vector<double>{1, 2, 3, 4}, truth) == 1.0);
  CHECK(roc_auc(scores, truth) == doctest::Approx(0.75));
  const std::vector<int> flipped{1, 1, 0, 0};
  CHECK(std::abs(roc_auc(scores, flipped) - (1 - roc_auc(scores, truth))) <= 1e-12);

  Engine engine = RandomStream(12).engine();
  const auto noise = normals(1000, engine);
  std::vector<int> coin(1000);
  for (auto& c : coin) c = static_cast<int>(engine() % 2);
  CHECK(std::abs(roc_auc(noise, coin) - 0.5) <= 0.05);
  CHECK(kind_of([] { roc_auc(std::vector<double>{1, 2}, std::vector<int>{1, 1}); }) == ErrorKind::SingleClass);
}

TEST_CASE("sensitivity at a fixed false-positive rate") {
  const std::vector<double> scores{0.9, 0.8, 0.7, 0.6, 0.5, 0.4};
  const std::vector<int> truth{1, 1, 0, 1, 0, 0};
  CHECK(sensitivity_at_fpr(scores, truth, 0.0) == doctest::Approx(2.0 / 3.0));
  CHECK(sensitivity_at_fpr(scores, truth, 0.34) == doctest::Approx(1.0));
}

TEST_CASE("false alarm rate") {
  DriftSeries s;
  s.levels = {0.1, 0.2, 0.3, 0.4};
  s.accuracy = std::vector<double>{0.9, 0.899, 0.895, 0.8};
  s.drift["zero"] = {0, 0, 0, 0};
  s.drift["all"] = {0.1, 0.1, 0.1, 0.1};
  s.drift["mixed"] = {0.0, 0.07, 0.01, 0.3};
  CHECK(false_alarm_rate(s, "zero") == 0.0);
  CHECK(false_alarm_rate(s, "all") == 1.0);
  // stable points are the first three; one of them triggers
  CHECK(false_alarm_rate(s, "mixed") == doctest::Approx(1.0 / 3.0));
  s.accuracy = std::vector<double>{0.9, 0.5, 0.4, 0.3};
  s.levels = {0.0, 0.2, 0.3, 0.4};
  CHECK(false_alarm_rate(s, "mixed") == 0.0);
  s.accuracy = std::vector<double>{0.0, 0.0, 0.0, 0.0};
  CHECK(false_alarm_rate(s, "all") == 1.0);
}
