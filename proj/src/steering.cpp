#include "gstab/steering.hpp"

#include <algorithm>
#include <cmath>

#include "gstab/error.hpp"
#include "gstab/parallel.hpp"

namespace gstab {

namespace {

struct Objective {
  double value = 0.0;
  Eigen::MatrixXd grad_w;
  Eigen::VectorXd grad_b;
};

Eigen::MatrixXd one_hot(const LabelVector& y) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Index>(y.size()), y.n_classes());
  for (std::size_t i = 0; i < y.size(); ++i) out(static_cast<Index>(i), y[i]) = 1.0;
  return out;
}

Objective evaluate(const Matrix& x, const Eigen::MatrixXd& targets, const Eigen::MatrixXd& w,
                   const Eigen::VectorXd& b, double penalty, bool with_gradient) {
  const double n = static_cast<double>(x.rows());
  Eigen::MatrixXd logits = x * w.transpose();
  logits.rowwise() += b.transpose();
  const Eigen::VectorXd top = logits.rowwise().maxCoeff();
  logits.colwise() -= top;
  Eigen::MatrixXd probs = logits.array().exp();
  const Eigen::VectorXd z = probs.rowwise().sum();
  const Eigen::VectorXd log_z = z.array().log();
  Objective out;
  out.value = -((targets.array() * logits.array()).rowwise().sum().matrix() - log_z).sum() / n +
              0.5 * penalty / n * w.squaredNorm();
  if (with_gradient) {
    probs.array().colwise() /= z.array();
    const Eigen::MatrixXd residual = (probs - targets) / n;
    out.grad_w = residual.transpose() * x + (penalty / n) * w;
    out.grad_b = residual.colwise().sum().transpose();
  }
  return out;
}

double flat_norm(const Objective& o) { return std::sqrt(o.grad_w.squaredNorm() + o.grad_b.squaredNorm()); }

}  // namespace

LinearProbe train_linear_probe(const Matrix& x, const LabelVector& y, const ProbeOptions& options) {
  require(static_cast<Index>(y.size()) == x.rows(), ErrorKind::LengthMismatch, "labels and rows differ in count");
  require(y.n_classes() >= 2, ErrorKind::SingleClass, "probe training needs at least 2 classes");
  require(x.allFinite(), ErrorKind::NonFinite, "features contain NaN or Inf");
  require(options.l2_penalty >= 0.0, ErrorKind::InvalidArgument, "l2_penalty must be non-negative");
  const Eigen::MatrixXd targets = one_hot(y);
  const Index c = y.n_classes();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(c, x.cols());
  Eigen::VectorXd b = Eigen::VectorXd::Zero(c);
  Objective cur = evaluate(x, targets, w, b, options.l2_penalty, true);
  LinearProbe probe;
  double step = 1.0;
  Eigen::MatrixXd prev_w, prev_gw;
  Eigen::VectorXd prev_b, prev_gb;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    const double gnorm = flat_norm(cur);
    if (gnorm <= options.tolerance) break;
    if (it > 0) {
      // Barzilai-Borwein step from the last displacement.
      const double sy = (w - prev_w).cwiseProduct(cur.grad_w - prev_gw).sum() +
                        (b - prev_b).dot(cur.grad_b - prev_gb);
      const double ss = (w - prev_w).squaredNorm() + (b - prev_b).squaredNorm();
      if (sy > 0.0) step = std::clamp(ss / sy, 1e-10, 1e10);
    }
    prev_w = w;
    prev_b = b;
    prev_gw = cur.grad_w;
    prev_gb = cur.grad_b;
    const double decrease = gnorm * gnorm;
    Objective next;
    Eigen::MatrixXd w_try;
    Eigen::VectorXd b_try;
    for (int shrink = 0; shrink < 60; ++shrink) {
      w_try = w - step * cur.grad_w;
      b_try = b - step * cur.grad_b;
      next = evaluate(x, targets, w_try, b_try, options.l2_penalty, false);
      if (next.value <= cur.value - 1e-4 * step * decrease) break;
      step *= 0.5;
    }
    w = std::move(w_try);
    b = std::move(b_try);
    cur = evaluate(x, targets, w, b, options.l2_penalty, true);
  }
  probe.weights = w;
  probe.bias = b;
  probe.iterations = it;
  probe.gradient_norm = flat_norm(cur);
  probe.converged = probe.gradient_norm <= options.tolerance;
  return probe;
}

Vector probe_gradient(const LinearProbe& probe, const Matrix& x, const LabelVector& y, double l2_penalty) {
  const Objective o = evaluate(x, one_hot(y), probe.weights, probe.bias, l2_penalty, true);
  Vector out(o.grad_w.size() + o.grad_b.size());
  out << Eigen::Map<const Eigen::VectorXd>(o.grad_w.data(), o.grad_w.size()), o.grad_b;
  return out;
}

std::vector<int> probe_predict(const LinearProbe& probe, const Matrix& x) {
  Eigen::MatrixXd logits = x * probe.weights.transpose();
  logits.rowwise() += probe.bias.transpose();
  std::vector<int> out(static_cast<std::size_t>(x.rows()));
  for (Index i = 0; i < x.rows(); ++i) {
    Index arg = 0;
    logits.row(i).maxCoeff(&arg);
    out[static_cast<std::size_t>(i)] = static_cast<int>(arg);
  }
  return out;
}

double probe_accuracy(const LinearProbe& probe, const Matrix& x, const LabelVector& y) {
  require(static_cast<Index>(y.size()) == x.rows(), ErrorKind::LengthMismatch, "labels and rows differ in count");
  const auto pred = probe_predict(probe, x);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hits += pred[i] == y[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

Vector steering_direction(const LinearProbe& probe) {
  const Matrix& w = probe.weights;
  require(w.norm() > 0.0, ErrorKind::ZeroWeights, "probe weights are zero");
  Vector dir;
  if (w.rows() == 2) {
    dir = (w.row(1) - w.row(0)).transpose();
    require(dir.norm() > 0.0, ErrorKind::ZeroWeights, "binary probe weights coincide");
    return dir / dir.norm();
  }
  dir = thin_svd(w).v.col(0);
  Index arg = 0;
  dir.cwiseAbs().maxCoeff(&arg);
  if (dir(arg) < 0) dir = -dir;
  return dir / dir.norm();
}

std::vector<double> default_alphas() {
  std::vector<double> out;
  for (int i = -4; i <= 4; ++i) out.push_back(0.5 * i);
  return out;
}

SteeringResult steering_sweep(const LinearProbe& probe, const Matrix& x_test, const LabelVector& y_test,
                              const Vector& direction, const std::vector<double>& alphas) {
  require(direction.size() == x_test.cols(), ErrorKind::DimMismatch, "direction width differs from features");
  require(std::abs(direction.norm() - 1.0) < 1e-8, ErrorKind::InvalidArgument, "direction must be unit norm");
  require(!alphas.empty(), ErrorKind::InvalidArgument, "alpha grid is empty");
  SteeringResult out;
  out.alphas = alphas;
  out.baseline_accuracy = probe_accuracy(probe, x_test, y_test);
  double worst = out.baseline_accuracy;
  for (double a : alphas) {
    const Matrix shifted = x_test.rowwise() + a * direction.transpose();
    const double acc = a == 0.0 ? out.baseline_accuracy : probe_accuracy(probe, shifted, y_test);
    out.accuracy.push_back(acc);
    worst = std::min(worst, acc);
  }
  out.max_drop = out.baseline_accuracy - worst;
  return out;
}

double random_direction_control(const LinearProbe& probe, const Matrix& x_test, const LabelVector& y_test, int m,
                                const RandomStream& stream, const std::vector<double>& alphas) {
  require(m >= 1, ErrorKind::InvalidArgument, "need at least one random direction");
  std::vector<double> drops(static_cast<std::size_t>(m));
  parallel_for(m, [&](Index r) {
    Engine engine = stream.derive(static_cast<std::uint64_t>(r)).engine();
    const Vector u = random_unit_vector(x_test.cols(), engine);
    drops[static_cast<std::size_t>(r)] = steering_sweep(probe, x_test, y_test, u, alphas).max_drop;
  });
  double total = 0.0;
  for (double v : drops) total += v;
  return total / m;
}

LabelVector shuffle_labels(const LabelVector& y, const RandomStream& stream) {
  std::vector<int> labels = y.values();
  Engine engine = stream.engine();
  std::shuffle(labels.begin(), labels.end(), engine);
  return LabelVector(std::move(labels));
}

double shuffled_label_control(const EmbeddingMatrix& x, const LabelVector& y, const SupervisedMetric& metric,
                              const RandomStream& stream) {
  return metric(x, shuffle_labels(y, stream));
}

SteeringData gen_steering_data(const SteeringDataSpec& spec) {
  require(spec.classes >= 2 && spec.d >= 3 && spec.per_class >= 2, ErrorKind::InvalidArgument,
          "steering data needs >= 2 classes, d >= 3 and >= 2 samples per class");
  const RandomStream layout(spec.layout_seed);
  const Matrix basis = random_orthogonal(spec.d, layout.derive(0)).leftCols(3);
  Engine layout_engine = layout.derive(1).engine();
  const Matrix coords = standard_normal(spec.classes, 3, layout_engine);
  Matrix means = spec.separation * coords * basis.transpose();
  means.col(0).array() += spec.offset;

  const RandomStream stream(spec.seed);
  auto draw = [&](std::uint64_t which, EmbeddingMatrix& x, LabelVector& y) {
    Engine engine = stream.derive(which).engine();
    const Index n = spec.classes * spec.per_class;
    std::vector<int> labels(static_cast<std::size_t>(n));
    Matrix out = spec.noise * standard_normal(n, spec.d, engine);
    for (Index i = 0; i < n; ++i) {
      labels[static_cast<std::size_t>(i)] = static_cast<int>(i / spec.per_class);
      out.row(i) += means.row(i / spec.per_class);
    }
    x = EmbeddingMatrix(std::move(out));
    y = LabelVector(std::move(labels));
  };
  SteeringData data;
  draw(0, data.set_a, data.y_a);
  draw(1, data.train, data.y_train);
  draw(2, data.test, data.y_test);
  return data;
}

}  // namespace gstab
