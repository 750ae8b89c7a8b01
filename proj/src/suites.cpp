#include "gstab/suites.hpp"

#include <cmath>
#include <cstring>
#include <functional>
#include <map>

#include "gstab/drift.hpp"
#include "gstab/error.hpp"
#include "gstab/inference.hpp"
#include "gstab/kernels.hpp"
#include "gstab/similarity.hpp"
#include "gstab/stability.hpp"
#include "gstab/steering.hpp"
#include "gstab/synthetic.hpp"

namespace gstab {

namespace {

using Json = nlohmann::ordered_json;

// Ground-truth style runs: correlation distance, 50 splits.
SheshaConfig ground_truth_config(std::uint64_t seed) {
  SheshaConfig cfg;
  cfg.distance = DistanceKind::correlation;
  cfg.n_splits = 50;
  cfg.seed = seed;
  return cfg;
}

SheshaConfig default_config(std::uint64_t seed) {
  SheshaConfig cfg;
  cfg.seed = seed;
  return cfg;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

std::string fmt_key(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

MetricResult result(std::string metric, double value, Json aux = Json::object()) {
  MetricResult r;
  r.metric = std::move(metric);
  r.value = value;
  r.aux = std::move(aux);
  return r;
}

SuiteResult ground_truth(std::uint64_t seed) {
  SuiteResult out;
  const SheshaConfig cfg = ground_truth_config(seed);
  std::vector<double> alphas, scores;
  for (int i = 0; i <= 20; ++i) {
    MixedSpec spec;
    spec.alpha = i / 20.0;
    spec.seed = seed;
    alphas.push_back(spec.alpha);
    scores.push_back(shesha_feature_split(gen_mixed(spec), cfg).value);
  }
  out.tables["alpha_sweep"] = {{"alpha", alphas}, {"shesha", scores}};
  const double rho = spearman(scores, alphas);
  out.results.push_back(result("spearman_shesha_alpha", rho));
  out.checks.push_back(check_at_least("spearman(shesha, alpha)", rho, 0.98));
  return out;
}

SuiteResult sanity(std::uint64_t seed) {
  SuiteResult out;
  const RandomStream root(seed);
  Engine ex = root.derive(0).engine();
  const EmbeddingMatrix x(standard_normal(500, 128, ex));
  Engine ey = root.derive(1).engine();
  std::uniform_int_distribution<int> pick(0, 9);
  std::vector<int> labels(500);
  for (auto& l : labels) l = pick(ey);
  const LabelVector y(labels);
  const SheshaConfig cfg = default_config(seed);
  const double fs = shesha_feature_split(x, cfg).value;
  const double var = shesha_variance_ratio(x, y);
  const double z = shesha_supervised_rdm(zscore_columns(x), y, cfg);
  const double lc = shesha_label_conditioned(x, y, cfg).value;
  // Anchor profiles keep the anchors' own geometry, so this one sits well
  // above zero even for pure noise. Reported, not checked.
  const double ss = shesha_sample_split(x, cfg).value;
  out.results = {result("feature_split", fs), result("variance", var), result("zscore", z),
                 result("label_conditioned", lc), result("sample_split", ss)};
  out.checks = {check_abs_at_most("feature_split", fs, 0.05), check_at_most("variance", var, 0.05),
                check_abs_at_most("zscore", z, 0.05), check_abs_at_most("label_conditioned", lc, 0.05)};
  return out;
}

SuiteResult spectral(std::uint64_t seed) {
  SuiteResult out;
  const SheshaConfig cfg = ground_truth_config(seed);
  const EmbeddingMatrix base = gen_power_law(200, 256, seed);
  const std::vector<Index> ks = {0, 1, 2, 5, 10, 20, 30};
  // Reference rows of the published deletion table.
  const std::map<Index, std::array<double, 4>> expected = {
      {0, {0.979, 1.000, 1.000, 1.000}},   {1, {0.950, 0.262, 0.274, 0.389}},
      {5, {0.846, 0.012, 0.043, 0.108}},   {10, {0.715, -0.027, 0.016, 0.055}},
      {30, {0.299, -0.075, 0.002, 0.017}},
  };
  const char* names[4] = {"shesha", "debiased_cka", "pwcka", "procrustes"};
  Json table = {{"k", Json::array()}, {"shesha", Json::array()}, {"debiased_cka", Json::array()},
                {"pwcka", Json::array()}, {"pwcka_rank", Json::array()}, {"procrustes", Json::array()}};
  for (Index k : ks) {
    const EmbeddingMatrix y = spectral_delete(base.values(), k);
    const SimilarityValue pw = pwcka_effective_rank(base.values(), y.values());
    const std::array<double, 4> v = {shesha_feature_split(y, cfg).value, debiased_cka(base.values(), y.values()),
                                     pw.value, procrustes_similarity(base.values(), y.values())};
    table["k"].push_back(k);
    for (int m = 0; m < 4; ++m) table[names[m]].push_back(v[static_cast<std::size_t>(m)]);
    table["pwcka_rank"].push_back(*pw.aux);
    if (k == 1) {
      out.checks.push_back(check_below("debiased_cka at k=1", v[1], 0.4));
      out.checks.push_back(check_below("pwcka at k=1", v[2], 0.4));
      out.checks.push_back(check_below("procrustes at k=1", v[3], 0.4));
      out.checks.push_back(check_above("shesha at k=1", v[0], 0.9));
    }
    if (k <= 20) out.checks.push_back(check_above("shesha at k=" + std::to_string(k), v[0], 0.4));
    if (const auto it = expected.find(k); it != expected.end())
      for (int m = 0; m < 4; ++m)
        out.checks.push_back(check_within(std::string(names[m]) + " at k=" + std::to_string(k) + " vs table",
                                          v[static_cast<std::size_t>(m)], it->second[static_cast<std::size_t>(m)],
                                          0.10));
  }
  out.tables["deletion"] = table;
  return out;
}

SuiteResult quadrants(std::uint64_t seed) {
  SuiteResult out;
  const SheshaConfig cfg = ground_truth_config(seed);
  const auto pairs = gen_quadrants(15, seed, cfg);
  const std::map<Quadrant, std::pair<double, double>> target = {
      {Quadrant::Q1, {0.701, 0.998}}, {Quadrant::Q2, {0.701, 0.001}},
      {Quadrant::Q3, {0.001, -0.001}}, {Quadrant::Q4, {-0.001, 0.978}}};
  std::vector<double> shesha, cka;
  std::map<Quadrant, std::pair<std::vector<double>, std::vector<double>>> by_q;
  Json table = {{"quadrant", Json::array()}, {"shesha", Json::array()}, {"debiased_cka", Json::array()}};
  for (const auto& p : pairs) {
    const double s = shesha_feature_split(p.x, cfg).value;
    const double c = debiased_cka(p.x.values(), p.y.values());
    shesha.push_back(s);
    cka.push_back(c);
    by_q[p.quadrant].first.push_back(s);
    by_q[p.quadrant].second.push_back(c);
    table["quadrant"].push_back(to_string(p.quadrant));
    table["shesha"].push_back(s);
    table["debiased_cka"].push_back(c);
  }
  for (const auto& [q, vals] : by_q) {
    const std::string name(to_string(q));
    const double ms = mean(vals.first), mc = mean(vals.second);
    out.results.push_back(result(name + "_shesha_mean", ms));
    out.results.push_back(result(name + "_cka_mean", mc));
    out.checks.push_back(check_within(name + " mean shesha", ms, target.at(q).first, 0.05));
    out.checks.push_back(check_within(name + " mean cka", mc, target.at(q).second, 0.05));
  }
  const double rho = spearman(shesha, cka);
  out.results.push_back(result("pooled_spearman", rho));
  out.checks.push_back(check_within("pooled spearman(shesha, cka)", rho, 0.204, 0.15));
  out.tables["pairs"] = table;
  return out;
}

SuiteResult invariance(std::uint64_t seed) {
  SuiteResult out;
  const SheshaConfig cfg = ground_truth_config(seed);
  MixedSpec spec;
  spec.alpha = 0.9;
  spec.seed = seed;
  const EmbeddingMatrix x = gen_mixed(spec);
  const double base = shesha_feature_split(x, cfg).value;
  const RandomStream root(seed);
  const Matrix r = random_orthogonal(x.d(), root.derive(7));
  const double rotated = shesha_feature_split(EmbeddingMatrix(x.values() * r), cfg).value;
  const double scaled = shesha_feature_split(EmbeddingMatrix(2.5 * x.values()), cfg).value;
  const double shifted = shesha_feature_split(EmbeddingMatrix(x.values().array() + 1.0), cfg).value;
  out.results = {result("base", base), result("rotation_delta", rotated - base),
                 result("scaling_delta", scaled - base), result("translation_delta", shifted - base)};
  out.checks = {check_abs_at_most("rotation delta", rotated - base, 0.01),
                check_abs_at_most("scaling delta", scaled - base, 0.01),
                check_abs_at_most("translation delta", shifted - base, 0.01)};
  std::vector<double> sigmas, scores;
  Engine engine = root.derive(8).engine();
  const Matrix noise = standard_normal(x.n(), x.d(), engine);
  for (int i = 0; i <= 10; ++i) {
    sigmas.push_back(i / 10.0);
    scores.push_back(shesha_feature_split(EmbeddingMatrix(x.values() + sigmas.back() * noise), cfg).value);
  }
  const double rho = spearman(scores, sigmas);
  out.tables["noise_sweep"] = {{"sigma", sigmas}, {"shesha", scores}};
  out.results.push_back(result("noise_spearman", rho));
  out.checks.push_back(check_at_most("spearman(shesha, noise sigma)", rho, -0.95));
  return out;
}

SuiteResult convergence(std::uint64_t seed) {
  SuiteResult out;
  Json table = {{"alpha", Json::array()}, {"n1600", Json::array()}, {"n400", Json::array()}};
  for (double alpha : {0.3, 0.6, 0.9}) {
    MixedSpec spec;
    spec.n = 1600;
    spec.alpha = alpha;
    spec.seed = seed;
    const EmbeddingMatrix x = gen_mixed(spec);
    SheshaConfig cfg = default_config(seed);
    cfg.max_samples = 1600;
    const double full = shesha_feature_split(x, cfg).value;
    cfg.max_samples = 400;
    const double small = shesha_feature_split(x, cfg).value;
    table["alpha"].push_back(alpha);
    table["n1600"].push_back(full);
    table["n400"].push_back(small);
    out.checks.push_back(check_below("|n400 - n1600| at alpha=" + fmt_key(alpha), std::abs(small - full), 0.05));
  }
  out.tables["convergence"] = table;
  return out;
}

// Values from a fixed mixed workload; used to compare runs bit for bit.
std::vector<double> determinism_workload(std::uint64_t seed) {
  MixedSpec spec;
  spec.alpha = 0.7;
  spec.seed = seed;
  const EmbeddingMatrix x = gen_mixed(spec);
  std::vector<double> out = shesha_feature_split(x, default_config(seed)).per_split;
  const RandomStream root(seed);
  std::vector<int> labels(static_cast<std::size_t>(x.n()));
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i % 4);
  const LabelVector y(labels);
  out.push_back(shesha_label_conditioned(x, y, default_config(seed)).value);
  out.push_back(shesha_class_separation(x, y, root.derive(1)));
  const EmbeddingMatrix noisy = noise_perturb(x, 0.2, seed);
  out.push_back(sliced_wasserstein(x.values(), noisy.values(), root.derive(2)));
  out.push_back(mmd_rbf(x.values(), noisy.values()));
  const Vector a = x.values().col(0), b = x.values().col(1);
  const BootstrapResult boot = bootstrap_ci(
      x.n(),
      [&](std::span<const Index> rows) {
        std::vector<double> va, vb;
        for (Index i : rows) {
          va.push_back(a(i));
          vb.push_back(b(i));
        }
        return spearman(va, vb);
      },
      root.derive(3), 500);
  out.push_back(boot.ci_low);
  out.push_back(boot.ci_high);
  return out;
}

double count_bit_differences(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return static_cast<double>(std::max(a.size(), b.size()));
  double diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) diff += std::memcmp(&a[i], &b[i], sizeof(double)) != 0 ? 1 : 0;
  return diff;
}

SuiteResult determinism(std::uint64_t seed) {
  SuiteResult out;
  const int saved = kernels::workers();
  const auto first = determinism_workload(seed);
  const auto second = determinism_workload(seed);
  kernels::set_workers(1);
  const auto one = determinism_workload(seed);
  kernels::set_workers(4);
  const auto four = determinism_workload(seed);
  kernels::set_workers(saved);
  out.results.push_back(result("workload_values", static_cast<double>(first.size())));
  out.checks.push_back(check_at_most("differing values between repeated runs", count_bit_differences(first, second), 0));
  out.checks.push_back(check_at_most("differing values between 1 and 4 workers", count_bit_differences(one, four), 0));
  out.tables["workload"] = first;
  return out;
}

SuiteResult regimes(std::uint64_t seed) {
  SuiteResult out;
  const SheshaConfig cfg = default_config(seed);
  const std::vector<Index> pca_grid = {5, 10, 20, 30, 50, 75, 100, 150, 199};
  const std::vector<Index> rp_grid = {16, 32, 64, 128, 256};
  std::vector<double> pca_shesha, pca_cka, rp_shesha, rp_cka;
  const double alphas[4] = {0.3, 0.5, 0.7, 0.9};
  for (int j = 0; j < 4; ++j) {
    MixedSpec spec;
    spec.alpha = alphas[j];
    spec.seed = seed + static_cast<std::uint64_t>(j);
    const EmbeddingMatrix base = gen_mixed(spec);
    for (Index k : pca_grid) {
      const EmbeddingMatrix y = apply_encoder(base, {EncoderKind::pca, k, 0.0, spec.seed});
      pca_shesha.push_back(shesha_feature_split(y, cfg).value);
      pca_cka.push_back(linear_cka(base.values(), y.values()));
    }
    for (Index k : rp_grid) {
      const EmbeddingMatrix y = apply_encoder(base, {EncoderKind::random_projection, k, 0.0, spec.seed});
      rp_shesha.push_back(shesha_feature_split(y, cfg).value);
      rp_cka.push_back(linear_cka(base.values(), y.values()));
    }
  }
  const double rho_pca = spearman(pca_shesha, pca_cka);
  const double rho_rp = spearman(rp_shesha, rp_cka);
  out.results = {result("pca_spearman", rho_pca), result("random_projection_spearman", rho_rp)};
  out.checks = {check_below("spearman(shesha, cka) over pca grid", rho_pca, 0.0),
                check_above("spearman(shesha, cka) over random-projection grid", rho_rp, 0.5)};
  out.tables["pca"] = {{"shesha", pca_shesha}, {"cka", pca_cka}};
  out.tables["random_projection"] = {{"shesha", rp_shesha}, {"cka", rp_cka}};
  return out;
}

SuiteResult drift(std::uint64_t seed) {
  SuiteResult out;
  const std::vector<double> levels = {0.01, 0.02, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.40, 0.50};
  const std::vector<std::string> monotone = {"shesha", "cka", "procrustes", "rdm_pearson"};
  std::map<std::string, std::vector<double>> mean_drift;
  std::map<std::string, double> worst_rho;
  for (const auto& m : all_drift_metrics()) mean_drift[std::string(to_string(m))].assign(levels.size(), 0.0);
  for (const auto& m : monotone) worst_rho[m] = 1.0;
  const int bases = 5;
  for (int j = 0; j < bases; ++j) {
    MixedSpec spec;
    spec.alpha = 0.5 + 0.1 * j;
    spec.seed = seed + static_cast<std::uint64_t>(j);
    DriftOptions options;
    options.seed = seed + 100 + static_cast<std::uint64_t>(j);
    const DriftSeries s = build_drift_series(gen_mixed(spec), levels, all_drift_metrics(), options);
    for (const auto& [name, values] : s.drift)
      for (std::size_t i = 0; i < values.size(); ++i) mean_drift[name][i] += values[i] / bases;
    for (const auto& m : monotone) worst_rho[m] = std::min(worst_rho[m], spearman(s.metric(m), levels));
  }
  for (const auto& m : monotone)
    out.checks.push_back(check_at_least("min over bases spearman(" + m + " drift, sigma)", worst_rho[m], 0.95));
  for (std::size_t i = 0; i < levels.size(); ++i)
    if (levels[i] >= 0.15)
      out.checks.push_back(check_above("mean shesha - cka drift at sigma=" + fmt_key(levels[i]),
                                       mean_drift["shesha"][i] - mean_drift["cka"][i], 0.0));
  DriftSeries mean_series;
  mean_series.levels = levels;
  mean_series.drift = mean_drift;
  Json thresholds = Json::object();
  for (const auto& [name, values] : mean_drift) {
    if (name == "wasserstein" || name == "mmd") continue;
    const auto t = detection_threshold(mean_series, name);
    thresholds[name] = t ? Json(*t) : Json(nullptr);
  }
  out.tables["levels"] = levels;
  Json means = Json::object();
  for (const auto& [name, values] : mean_drift) means[name] = values;
  out.tables["mean_drift"] = means;
  out.tables["detection_threshold"] = thresholds;
  out.tables["early_warning_shesha_vs_cka"] = early_warning_compare(mean_series, "shesha", mean_series, "cka");
  return out;
}

SuiteResult steering(std::uint64_t seed) {
  SuiteResult out;
  const RandomStream root(seed);
  const std::vector<double> seps = {0.25, 0.5, 0.75, 1.0};
  const std::vector<double> noises = {0.2, 0.3, 0.4, 0.5};
  std::vector<double> lc, lc_shuffled, drops, random_drops;
  Json table = {{"separation", Json::array()}, {"noise", Json::array()}, {"shesha_lc", Json::array()},
                {"shesha_lc_shuffled", Json::array()}, {"baseline_accuracy", Json::array()},
                {"max_drop", Json::array()}, {"random_drop", Json::array()}};
  std::uint64_t model = 0;
  for (double sep : seps)
    for (double noise : noises) {
      const RandomStream stream = root.derive(model++);
      SteeringDataSpec spec;
      spec.separation = sep;
      spec.noise = noise;
      spec.layout_seed = root.replicate_seed(1000);
      spec.seed = stream.replicate_seed(0);
      const SteeringData data = gen_steering_data(spec);
      SheshaConfig cfg = default_config(stream.replicate_seed(1));
      const double s = shesha_label_conditioned(data.set_a, data.y_a, cfg).value;
      // A single shuffle has a spread near 0.15, so each model averages several.
      const RandomStream shuffles = stream.derive(2);
      double s_shuffled = 0.0;
      for (std::uint64_t r = 0; r < 10; ++r)
        s_shuffled += shuffled_label_control(
                          data.set_a, data.y_a,
                          [&](const EmbeddingMatrix& x, const LabelVector& y) {
                            return shesha_label_conditioned(x, y, cfg).value;
                          },
                          shuffles.derive(r)) /
                      10.0;
      const LinearProbe probe = train_linear_probe(data.train.values(), data.y_train);
      const SteeringResult sweep =
          steering_sweep(probe, data.test.values(), data.y_test, steering_direction(probe));
      const double rnd = random_direction_control(probe, data.test.values(), data.y_test, 20, stream.derive(3));
      lc.push_back(s);
      lc_shuffled.push_back(s_shuffled);
      drops.push_back(sweep.max_drop);
      random_drops.push_back(rnd);
      table["separation"].push_back(sep);
      table["noise"].push_back(noise);
      table["shesha_lc"].push_back(s);
      table["shesha_lc_shuffled"].push_back(s_shuffled);
      table["baseline_accuracy"].push_back(sweep.baseline_accuracy);
      table["max_drop"].push_back(sweep.max_drop);
      table["random_drop"].push_back(rnd);
    }
  const double rho = spearman(lc, drops);
  const double shuffled = mean(lc_shuffled);
  const double ratio = mean(drops) / mean(random_drops);
  out.results = {result("spearman_shesha_max_drop", rho), result("shuffled_shesha_mean", shuffled),
                 result("true_random_drop_ratio", ratio)};
  out.checks = {check_at_least("spearman(label-conditioned shesha, max_drop)", rho, 0.8),
                check_abs_at_most("mean shuffled-label shesha", shuffled, 0.05),
                check_above("true / random direction drop ratio", ratio, 2.0)};
  out.tables["models"] = table;
  return out;
}

SuiteResult inference(std::uint64_t seed) {
  SuiteResult out;
  const RandomStream root(seed);
  // Percentile-interval coverage for a correlation of 0.5.
  const int trials = 200;
  std::vector<char> covered(trials);
  for (int t = 0; t < trials; ++t) {
    const RandomStream stream = root.derive(static_cast<std::uint64_t>(t));
    Engine engine = stream.engine();
    const Vector u = standard_normal(200, engine);
    const Vector v = 0.5 * u + std::sqrt(0.75) * standard_normal(200, engine);
    const BootstrapResult boot = bootstrap_ci(
        200,
        [&](std::span<const Index> rows) {
          std::vector<double> a(rows.size()), b(rows.size());
          for (std::size_t i = 0; i < rows.size(); ++i) {
            a[i] = u(rows[i]);
            b[i] = v(rows[i]);
          }
          return kernels::serial::pearson(a, b);
        },
        stream.derive(1), 2000);
    covered[static_cast<std::size_t>(t)] = boot.ci_low <= 0.5 && 0.5 <= boot.ci_high;
  }
  double coverage = 0.0;
  for (char c : covered) coverage += c;
  coverage /= trials;
  out.results.push_back(result("bootstrap_coverage", coverage));
  out.checks.push_back(check_within("bootstrap 95% CI coverage of rho=0.5", coverage, 0.94, 0.04));

  // AUC against an exhaustive concordant-pair count.
  double worst_auc = 0.0;
  Engine engine = root.derive(trials + 1).engine();
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(engine() % 49);
    std::vector<double> scores(static_cast<std::size_t>(n));
    std::vector<int> truth(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      scores[static_cast<std::size_t>(i)] = static_cast<double>(engine() % 7);
      truth[static_cast<std::size_t>(i)] = static_cast<int>(engine() % 2);
    }
    truth[0] = 0;
    truth[1] = 1;
    double concordant = 0.0, pairs = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (truth[static_cast<std::size_t>(i)] == 1 && truth[static_cast<std::size_t>(j)] == 0) {
          pairs += 1.0;
          const double a = scores[static_cast<std::size_t>(i)], b = scores[static_cast<std::size_t>(j)];
          concordant += a > b ? 1.0 : (a == b ? 0.5 : 0.0);
        }
    worst_auc = std::max(worst_auc, std::abs(roc_auc(scores, truth) - concordant / pairs));
  }
  out.results.push_back(result("auc_max_abs_error", worst_auc));
  out.checks.push_back(check_at_most("roc_auc vs concordant pairs, max |error|", worst_auc, 1e-12));

  double worst_partial = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Vector a = standard_normal(30, engine);
    Vector b = standard_normal(30, engine);
    b = 0.3 * a + b;
    std::vector<double> va(a.data(), a.data() + 30), vb(b.data(), b.data() + 30);
    worst_partial = std::max(worst_partial, std::abs(partial_spearman(va, vb, {}) - spearman(va, vb)));
  }
  out.results.push_back(result("partial_empty_max_abs_error", worst_partial));
  out.checks.push_back(check_at_most("partial_spearman(empty) vs spearman, max |error|", worst_partial, 1e-9));
  return out;
}

const std::map<std::string, std::function<SuiteResult(std::uint64_t)>, std::less<>>& registry() {
  static const std::map<std::string, std::function<SuiteResult(std::uint64_t)>, std::less<>> r = {
      {"ground_truth", ground_truth}, {"sanity", sanity},       {"spectral", spectral},
      {"quadrants", quadrants},       {"invariance", invariance}, {"convergence", convergence},
      {"determinism", determinism},   {"regimes", regimes},     {"drift", drift},
      {"steering", steering},         {"inference", inference},
  };
  return r;
}

}  // namespace

bool SuiteResult::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"ground_truth", "spectral",    "quadrants",   "sanity",
                                                 "invariance",   "convergence", "determinism", "regimes",
                                                 "drift",        "steering",    "inference"};
  return names;
}

SuiteResult run_suite(std::string_view name, std::uint64_t seed) {
  const auto it = registry().find(name);
  require(it != registry().end(), ErrorKind::InvalidArgument, "unknown suite '" + std::string(name) + "'");
  SuiteResult out = it->second(seed);
  out.name = std::string(name);
  return out;
}

}  // namespace gstab
