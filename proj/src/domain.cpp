#include <algorithm>
#include <cmath>
#include <numeric>

#include "detail.hpp"
#include "gstab/error.hpp"
#include "gstab/stability.hpp"

namespace gstab {

namespace {

constexpr double kShiftFloor = 1e-6;

double mean_cosine_to_mean_shift(const Matrix& shifts) {
  const Eigen::RowVectorXd mean_shift = shifts.colwise().mean();
  const double mean_norm = mean_shift.norm();
  require(mean_norm > kShiftFloor, ErrorKind::DegenerateShift, "mean shift magnitude is below 1e-6");
  double total = 0.0;
  Index used = 0;
  for (Index j = 0; j < shifts.rows(); ++j) {
    const double norm = shifts.row(j).norm();
    if (norm <= kShiftFloor) continue;
    total += shifts.row(j).dot(mean_shift) / (norm * mean_norm);
    ++used;
  }
  require(used > 0, ErrorKind::DegenerateShift, "every shift vector is below 1e-6");
  return total / static_cast<double>(used);
}

}  // namespace

double shesha_trial_split(const EmbeddingMatrix& x, const LabelVector& conditions, DistanceKind kind) {
  require(static_cast<Index>(conditions.size()) == x.n(), ErrorKind::LengthMismatch,
          "condition labels and rows differ in count");
  require(conditions.n_classes() >= 3, ErrorKind::TooFewConditions, "trial split needs at least 3 conditions");
  const auto groups = conditions.members();
  std::vector<std::vector<Index>> even(groups.size()), odd(groups.size());
  for (std::size_t c = 0; c < groups.size(); ++c) {
    require(groups[c].size() >= 2, ErrorKind::ConditionTooSmall,
            "condition " + std::to_string(c) + " has fewer than 2 trials");
    for (std::size_t t = 0; t < groups[c].size(); ++t) (t % 2 == 0 ? even : odd)[c].push_back(groups[c][t]);
  }
  const Rdm a = compute_rdm(detail::class_centroids(x.values(), even), kind);
  const Rdm b = compute_rdm(detail::class_centroids(x.values(), odd), kind);
  return spearman(a.condensed, b.condensed);
}

double wuc(const EmbeddingMatrix& x, const LabelVector& conditions, double shrinkage) {
  return shesha_trial_split(zca_whiten(x.values(), shrinkage), conditions);
}

double centroid_drift(const EmbeddingMatrix& x, Index split_index) {
  require(split_index >= 1 && split_index < x.n(), ErrorKind::InvalidArgument,
          "split index must leave both epochs non-empty");
  const EmbeddingMatrix unit = l2_normalize_rows(x.values());
  const Eigen::RowVectorXd early = unit.values().topRows(split_index).colwise().mean();
  const Eigen::RowVectorXd late = unit.values().bottomRows(x.n() - split_index).colwise().mean();
  const double ne = early.norm();
  const double nl = late.norm();
  require(ne > 1e-12 && nl > 1e-12, ErrorKind::ZeroCentroid, "an epoch centroid is zero");
  return std::clamp(early.dot(late) / (ne * nl), -1.0, 1.0);
}

double perturbation_coherence(const EmbeddingMatrix& control, const EmbeddingMatrix& perturbed,
                              const CoherenceOptions& options) {
  require(perturbed.n() >= 10, ErrorKind::TooFewCells, "perturbed population needs at least 10 cells");
  require(control.d() == perturbed.d(), ErrorKind::DimMismatch, "control and perturbed widths differ");
  switch (options.variant) {
    case CoherenceVariant::euclidean: {
      const Eigen::RowVectorXd c = control.values().colwise().mean();
      return mean_cosine_to_mean_shift(perturbed.values().rowwise() - c);
    }
    case CoherenceVariant::whitened: {
      // The fitted map centers on the control mean, so the control centroid
      // lands at the origin.
      const ZcaTransform zca = fit_zca(control.values(), options.whitening_shrinkage);
      return mean_cosine_to_mean_shift(zca.apply(perturbed.values()));
    }
    case CoherenceVariant::knn: {
      require(options.k >= 1, ErrorKind::InvalidArgument, "k must be positive");
      const Matrix& ctrl = control.values();
      const Index k = std::min(options.k, control.n());
      Matrix shifts(perturbed.n(), perturbed.d());
      std::vector<double> dist(static_cast<std::size_t>(ctrl.rows()));
      std::vector<Index> order(static_cast<std::size_t>(ctrl.rows()));
      for (Index j = 0; j < perturbed.n(); ++j) {
        for (Index i = 0; i < ctrl.rows(); ++i)
          dist[static_cast<std::size_t>(i)] = (ctrl.row(i) - perturbed.values().row(j)).squaredNorm();
        std::iota(order.begin(), order.end(), Index{0});
        std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](Index a, Index b) {
          const double da = dist[static_cast<std::size_t>(a)];
          const double db = dist[static_cast<std::size_t>(b)];
          return da < db || (da == db && a < b);
        });
        Eigen::RowVectorXd local = Eigen::RowVectorXd::Zero(ctrl.cols());
        for (Index t = 0; t < k; ++t) local += ctrl.row(order[static_cast<std::size_t>(t)]);
        shifts.row(j) = perturbed.values().row(j) - local / static_cast<double>(k);
      }
      return mean_cosine_to_mean_shift(shifts);
    }
  }
  fail(ErrorKind::InvalidArgument, "unknown coherence variant");
}

double latent_perturbation_stability(const Vector& base, const Matrix& perturbed) {
  require(perturbed.rows() >= 1 && perturbed.cols() == base.size(), ErrorKind::DimMismatch,
          "perturbed set must be non-empty and match the base width");
  require(base.allFinite() && perturbed.allFinite(), ErrorKind::NonFinite, "non-finite input");
  const double base_norm = base.norm();
  require(base_norm > 1e-12, ErrorKind::ZeroNormRow, "base vector has zero norm");
  const Vector unit_base = base / base_norm;
  double total = 0.0;
  for (Index k = 0; k < perturbed.rows(); ++k) {
    const double norm = perturbed.row(k).norm();
    require(norm > 1e-12, ErrorKind::ZeroNormRow, "perturbed row " + std::to_string(k) + " has zero norm");
    total += (perturbed.row(k).transpose() / norm - unit_base).norm();
  }
  return 1.0 / (1.0 + total / static_cast<double>(perturbed.rows()));
}

}  // namespace gstab
