#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gstab/core.hpp"

namespace gstab {

// Multinomial logistic regression: logits = x * weights^T + bias.
struct LinearProbe {
  Matrix weights;  // C x d
  Vector bias;     // C
  int iterations = 0;
  double gradient_norm = 0.0;
  bool converged = false;
};

struct ProbeOptions {
  double l2_penalty = 1.0;
  int max_iterations = 5000;
  double tolerance = 1e-6;
};

// Minimizes mean cross-entropy + l2_penalty / (2n) * ||W||^2 (bias not
// penalized) by gradient descent with Barzilai-Borwein trial steps and
// Armijo backtracking, from zero.
LinearProbe train_linear_probe(const Matrix& x, const LabelVector& y, const ProbeOptions& options = {});
std::vector<int> probe_predict(const LinearProbe& probe, const Matrix& x);
double probe_accuracy(const LinearProbe& probe, const Matrix& x, const LabelVector& y);
// Gradient of the training objective at the probe's parameters, flattened.
Vector probe_gradient(const LinearProbe& probe, const Matrix& x, const LabelVector& y, double l2_penalty);

Vector steering_direction(const LinearProbe& probe);

struct SteeringResult {
  std::vector<double> alphas;
  std::vector<double> accuracy;
  double baseline_accuracy = 0.0;
  double max_drop = 0.0;
};

std::vector<double> default_alphas();
SteeringResult steering_sweep(const LinearProbe& probe, const Matrix& x_test, const LabelVector& y_test,
                              const Vector& direction, const std::vector<double>& alphas = default_alphas());

// Mean max_drop over m random unit directions.
double random_direction_control(const LinearProbe& probe, const Matrix& x_test, const LabelVector& y_test, int m,
                                const RandomStream& stream, const std::vector<double>& alphas = default_alphas());

using SupervisedMetric = std::function<double(const EmbeddingMatrix&, const LabelVector&)>;
LabelVector shuffle_labels(const LabelVector& y, const RandomStream& stream);
double shuffled_label_control(const EmbeddingMatrix& x, const LabelVector& y, const SupervisedMetric& metric,
                              const RandomStream& stream);

// Desk-scale stand-in for an encoder: C Gaussian classes whose means share a
// fixed random 3-D layout, shifted off the origin and scaled by separation.
struct SteeringDataSpec {
  int classes = 5;
  Index d = 256;
  Index per_class = 100;
  double separation = 0.5;
  double noise = 0.3;
  double offset = 3.0;
  std::uint64_t layout_seed = 3;
  std::uint64_t seed = 320;
};

struct SteeringData {
  EmbeddingMatrix set_a;
  LabelVector y_a;
  EmbeddingMatrix train;
  LabelVector y_train;
  EmbeddingMatrix test;
  LabelVector y_test;
};

SteeringData gen_steering_data(const SteeringDataSpec& spec);

}  // namespace gstab
