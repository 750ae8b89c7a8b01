#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gstab/core.hpp"
#include "gstab/drift.hpp"
#include "gstab/error.hpp"
#include "gstab/inference.hpp"
#include "gstab/io.hpp"
#include "gstab/kernels.hpp"
#include "gstab/report.hpp"
#include "gstab/similarity.hpp"
#include "gstab/stability.hpp"
#include "gstab/steering.hpp"
#include "gstab/suites.hpp"
#include "gstab/synthetic.hpp"

using namespace gstab;
using Json = nlohmann::ordered_json;

namespace {

struct RunConfig {
  std::uint64_t seed = 320;
  int splits = 30;
  std::string distance = "cosine";
  Index max_samples = 1600;
  int bootstrap = 0;
  std::string output;
  int workers = 0;
  bool timing = false;
};

void add_run_config(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--seed", rc.seed, "root random seed")->envname("GSTB_SEED");
  cmd->add_option("--splits", rc.splits, "number of random splits K")->check(CLI::PositiveNumber);
  cmd->add_option("--distance", rc.distance, "RDM distance")->check(CLI::IsMember({"cosine", "correlation", "euclidean"}));
  cmd->add_option("--max-samples", rc.max_samples, "row cap before splitting, 0 disables")->check(CLI::NonNegativeNumber);
  cmd->add_option("--bootstrap", rc.bootstrap, "bootstrap iterations, 0 disables")->check(CLI::NonNegativeNumber);
  cmd->add_option("--output", rc.output, "output path (default: stdout)");
  cmd->add_option("--workers", rc.workers, "worker threads (default: all cores)")->check(CLI::PositiveNumber);
  cmd->add_flag("--timing", rc.timing, "include wall-clock time in the report");
}

SheshaConfig shesha_config(const RunConfig& rc) {
  SheshaConfig cfg;
  cfg.n_splits = rc.splits;
  cfg.distance = parse_distance_kind(rc.distance);
  cfg.seed = rc.seed;
  if (rc.max_samples > 0)
    cfg.max_samples = rc.max_samples;
  else
    cfg.max_samples.reset();
  return cfg;
}

Json run_config_json(const RunConfig& rc) {
  return {{"seed", rc.seed},          {"splits", rc.splits},       {"distance", rc.distance},
          {"max_samples", rc.max_samples}, {"bootstrap", rc.bootstrap}, {"workers", rc.workers}};
}

const auto g_start = std::chrono::steady_clock::now();

void emit(Report report, const RunConfig& rc) {
  if (rc.timing)
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - g_start).count();
  const std::string text = render(report);
  if (rc.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(rc.output, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::Io, "cannot open '" + rc.output + "' for writing");
  out << text;
  require(static_cast<bool>(out), ErrorKind::Io, "failed writing '" + rc.output + "'");
}

// ---- metrics -------------------------------------------------------------

struct MetricsArgs {
  std::string input, labels, label_col, reference;
  std::vector<std::string> metrics;
  Index k = 10;
  Index split_index = 0;
};

// Inputs seen by one metric evaluation; rows may be a bootstrap resample.
struct MetricInputs {
  const EmbeddingMatrix* x = nullptr;
  const LabelVector* y = nullptr;
  const EmbeddingMatrix* ref = nullptr;
};

enum class Needs { none, labels, reference };

struct MetricDef {
  Needs needs;
  std::function<double(const MetricInputs&, const RunConfig&, std::vector<double>*)> eval;
};

std::map<std::string, MetricDef> metric_table(const MetricsArgs& args) {
  std::map<std::string, MetricDef> table;
  auto split_score = [](const StabilityScore& s, std::vector<double>* per_split) {
    if (per_split) *per_split = s.per_split;
    return s.value;
  };
  table["shesha_fs"] = {Needs::none, [=](const MetricInputs& in, const RunConfig& rc, std::vector<double>* ps) {
                          return split_score(shesha_feature_split(*in.x, shesha_config(rc)), ps);
                        }};
  table["shesha_ss"] = {Needs::none, [=](const MetricInputs& in, const RunConfig& rc, std::vector<double>* ps) {
                          return split_score(shesha_sample_split(*in.x, shesha_config(rc)), ps);
                        }};
  table["shesha_lc"] = {Needs::labels, [=](const MetricInputs& in, const RunConfig& rc, std::vector<double>* ps) {
                          return split_score(shesha_label_conditioned(*in.x, *in.y, shesha_config(rc)), ps);
                        }};
  table["shesha_rdm"] = {Needs::labels, [](const MetricInputs& in, const RunConfig& rc, std::vector<double>*) {
                           return shesha_supervised_rdm(*in.x, *in.y, shesha_config(rc));
                         }};
  table["variance_ratio"] = {Needs::labels, [](const MetricInputs& in, const RunConfig&, std::vector<double>*) {
                               return shesha_variance_ratio(*in.x, *in.y);
                             }};
  table["within_variance_ratio"] = {Needs::labels, [](const MetricInputs& in, const RunConfig&, std::vector<double>*) {
                                      return within_variance_ratio(*in.x, *in.y);
                                    }};
  table["class_separation"] = {Needs::labels, [](const MetricInputs& in, const RunConfig& rc, std::vector<double>*) {
                                 return shesha_class_separation(*in.x, *in.y, RandomStream(rc.seed));
                               }};
  table["lda_subspace"] = {Needs::labels, [](const MetricInputs& in, const RunConfig& rc, std::vector<double>*) {
                             return shesha_lda_subspace(*in.x, *in.y, RandomStream(rc.seed));
                           }};
  table["fisher"] = {Needs::labels, [](const MetricInputs& in, const RunConfig&, std::vector<double>*) {
                       return fisher_discriminant(*in.x, *in.y);
                     }};
  table["silhouette"] = {Needs::labels, [](const MetricInputs& in, const RunConfig&, std::vector<double>*) {
                           return silhouette_score(*in.x, *in.y);
                         }};
  table["trial_split"] = {Needs::labels, [](const MetricInputs& in, const RunConfig& rc, std::vector<double>*) {
                            return shesha_trial_split(*in.x, *in.y, parse_distance_kind(rc.distance));
                          }};
  table["wuc"] = {Needs::labels, [](const MetricInputs& in, const RunConfig&, std::vector<double>*) {
                    return wuc(*in.x, *in.y);
                  }};
  table["anisotropy"] = {Needs::none, [](const MetricInputs& in, const RunConfig&, std::vector<double>*) {
                           return anisotropy(*in.x);
                         }};
  table["participation_ratio"] = {Needs::none, [](const MetricInputs& in, const RunConfig&, std::vector<double>*) {
                                    return participation_ratio(in.x->values());
                                  }};
  table["effective_rank"] = {Needs::none, [](const MetricInputs& in, const RunConfig&, std::vector<double>*) {
                               return effective_rank(in.x->values());
                             }};
  const Index split_index = args.split_index;
  table["centroid_drift"] = {Needs::none, [split_index](const MetricInputs& in, const RunConfig&, std::vector<double>*) {
                               return centroid_drift(*in.x, split_index);
                             }};
  table["cka"] = {Needs::reference, [](const MetricInputs& in, const RunConfig&, std::vector<double>*) {
                    return linear_cka(in.x->values(), in.ref->values());
                  }};
  table["debiased_cka"] = {Needs::reference, [](const MetricInputs& in, const RunConfig&, std::vector<double>*) {
                             return debiased_cka(in.x->values(), in.ref->values());
                           }};
  table["pwcka"] = {Needs::reference, [](const MetricInputs& in, const RunConfig&, std::vector<double>*) {
                      return pwcka_effective_rank(in.x->values(), in.ref->values()).value;
                    }};
  table["procrustes"] = {Needs::reference, [](const MetricInputs& in, const RunConfig&, std::vector<double>*) {
                           return procrustes_similarity(in.x->values(), in.ref->values());
                         }};
  table["rsa"] = {Needs::reference, [](const MetricInputs& in, const RunConfig& rc, std::vector<double>*) {
                    return rsa_spearman(in.x->values(), in.ref->values(), parse_distance_kind(rc.distance));
                  }};
  table["rdm_pearson"] = {Needs::reference, [](const MetricInputs& in, const RunConfig& rc, std::vector<double>*) {
                            return rdm_pearson(in.x->values(), in.ref->values(), parse_distance_kind(rc.distance));
                          }};
  table["wasserstein"] = {Needs::reference, [](const MetricInputs& in, const RunConfig& rc, std::vector<double>*) {
                            return sliced_wasserstein(in.x->values(), in.ref->values(), RandomStream(rc.seed));
                          }};
  table["mmd"] = {Needs::reference, [](const MetricInputs& in, const RunConfig&, std::vector<double>*) {
                    return mmd_rbf(in.x->values(), in.ref->values());
                  }};
  const Index k = args.k;
  table["subspace_overlap"] = {Needs::reference, [k](const MetricInputs& in, const RunConfig&, std::vector<double>*) {
                                 return subspace_overlap(in.x->values(), in.ref->values(), k);
                               }};
  table["eigenspectrum"] = {Needs::reference, [](const MetricInputs& in, const RunConfig&, std::vector<double>*) {
                              return eigenspectrum_similarity(in.x->values(), in.ref->values());
                            }};
  table["coherence"] = {Needs::reference, [](const MetricInputs& in, const RunConfig&, std::vector<double>*) {
                          return perturbation_coherence(*in.x, *in.ref);
                        }};
  return table;
}

int cmd_metrics(const MetricsArgs& args, const RunConfig& rc) {
  const auto table = metric_table(args);
  for (const auto& name : args.metrics)
    require(table.count(name) > 0, ErrorKind::InvalidArgument, "unknown metric '" + name + "'");

  std::optional<LabelVector> labels;
  EmbeddingMatrix x;
  if (!args.label_col.empty()) {
    auto [m, y] = read_matrix_with_labels(args.input, args.label_col);
    x = std::move(m);
    labels = std::move(y);
  } else {
    x = read_matrix(args.input);
  }
  if (!args.labels.empty()) labels = read_labels(args.labels);
  std::optional<EmbeddingMatrix> ref;
  if (!args.reference.empty()) ref = read_matrix(args.reference);

  for (const auto& name : args.metrics) {
    const Needs needs = table.at(name).needs;
    require(needs != Needs::labels || labels.has_value(), ErrorKind::LabelRequired,
            "metric '" + name + "' needs --labels or --label-col");
    require(needs != Needs::reference || ref.has_value(), ErrorKind::ReferenceRequired,
            "metric '" + name + "' needs --reference");
  }
  if (labels)
    require(static_cast<Index>(labels->size()) == x.n(), ErrorKind::LengthMismatch,
            "labels have " + std::to_string(labels->size()) + " entries for " + std::to_string(x.n()) + " rows");
  if (ref) require(ref->n() == x.n(), ErrorKind::RowCountMismatch, "reference and input differ in row count");

  Report report;
  report.command = "metrics";
  report.seed = rc.seed;
  report.params = run_config_json(rc);
  report.params["input"] = args.input;
  report.params["labels"] = args.labels.empty() ? Json(nullptr) : Json(args.labels);
  report.params["label_col"] = args.label_col.empty() ? Json(nullptr) : Json(args.label_col);
  report.params["reference"] = args.reference.empty() ? Json(nullptr) : Json(args.reference);
  report.params["metrics"] = args.metrics;
  report.params["k"] = args.k;
  report.params["split_index"] = args.split_index;

  const MetricInputs full{&x, labels ? &*labels : nullptr, ref ? &*ref : nullptr};
  for (std::size_t m = 0; m < args.metrics.size(); ++m) {
    const auto& name = args.metrics[m];
    const MetricDef& def = table.at(name);
    MetricResult r;
    r.metric = name;
    std::vector<double> per_split;
    r.value = def.eval(full, rc, &per_split);
    if (!per_split.empty()) r.per_split = per_split;
    if (rc.bootstrap > 0) {
      const auto stat = [&](std::span<const Index> rows) {
        const EmbeddingMatrix xs = x.select_rows(rows);
        std::optional<LabelVector> ys;
        if (labels) {
          std::vector<int> v;
          v.reserve(rows.size());
          for (Index i : rows) v.push_back((*labels)[static_cast<std::size_t>(i)]);
          ys = LabelVector(std::move(v));
        }
        std::optional<EmbeddingMatrix> rs;
        if (ref) rs = ref->select_rows(rows);
        return def.eval({&xs, ys ? &*ys : nullptr, rs ? &*rs : nullptr}, rc, nullptr);
      };
      const BootstrapResult b =
          bootstrap_ci(x.n(), stat, RandomStream(rc.seed).derive(1000 + m), rc.bootstrap);
      r.ci = ConfidenceInterval{b.ci_low, b.ci_high, b.iterations};
      r.aux["bootstrap_dropped"] = b.dropped;
      if (b.warned)
        report.warnings.push_back(name + ": " + std::to_string(b.dropped) + " of " + std::to_string(b.iterations) +
                                  " bootstrap replicates were degenerate");
    }
    report.results.push_back(std::move(r));
  }
  emit(report, rc);
  return 0;
}

// ---- validate ------------------------------------------------------------

int cmd_validate(const std::string& suite, const RunConfig& rc) {
  const SuiteResult s = run_suite(suite, rc.seed);
  Report report;
  report.command = "validate";
  report.seed = rc.seed;
  report.params = {{"suite", suite}, {"seed", rc.seed}, {"workers", rc.workers}};
  report.results = s.results;
  report.checks = s.checks;
  report.tables = s.tables;
  emit(report, rc);
  return s.passed() ? 0 : 1;
}

// ---- drift ---------------------------------------------------------------

struct DriftArgs {
  std::string baseline, current, sweep, accuracy;
  std::vector<std::string> metrics;
};

std::vector<double> parse_sweep(const std::string& text) {
  const std::string prefix = "noise:";
  require(text.rfind(prefix, 0) == 0, ErrorKind::SpecParse, "sweep must look like noise:s1,s2,...");
  std::vector<double> levels;
  std::stringstream ss(text.substr(prefix.size()));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      require(used == item.size() && v >= 0.0, ErrorKind::SpecParse, "bad noise level '" + item + "'");
      levels.push_back(v);
    } catch (const std::logic_error&) {
      fail(ErrorKind::SpecParse, "bad noise level '" + item + "'");
    }
  }
  require(!levels.empty(), ErrorKind::SpecParse, "sweep lists no levels");
  return levels;
}

int cmd_drift(const DriftArgs& args, const RunConfig& rc) {
  require(args.current.empty() != args.sweep.empty(), ErrorKind::InvalidArgument,
          "give exactly one of --current or --sweep");
  std::vector<DriftMetric> metrics;
  if (args.metrics.empty())
    metrics = all_drift_metrics();
  else
    for (const auto& m : args.metrics) metrics.push_back(parse_drift_metric(m));
  DriftOptions options;
  options.distance = parse_distance_kind(rc.distance);
  options.seed = rc.seed;

  const EmbeddingMatrix baseline = read_matrix(args.baseline);
  Report report;
  report.command = "drift";
  report.seed = rc.seed;
  report.params = run_config_json(rc);
  report.params["baseline"] = args.baseline;
  report.params["current"] = args.current.empty() ? Json(nullptr) : Json(args.current);
  report.params["sweep"] = args.sweep.empty() ? Json(nullptr) : Json(args.sweep);
  report.params["accuracy"] = args.accuracy.empty() ? Json(nullptr) : Json(args.accuracy);
  Json names = Json::array();
  for (auto m : metrics) names.push_back(to_string(m));
  report.params["metrics"] = names;

  if (!args.current.empty()) {
    const EmbeddingMatrix current = read_matrix(args.current);
    for (auto m : metrics) {
      MetricResult r;
      r.metric = std::string(to_string(m));
      r.value = drift_score(baseline, current, m, options);
      report.results.push_back(std::move(r));
    }
    emit(report, rc);
    return 0;
  }

  DriftSeries series = build_drift_series(baseline, parse_sweep(args.sweep), metrics, options);
  if (!args.accuracy.empty()) {
    const std::vector<double> acc = read_column(args.accuracy);
    require(acc.size() == series.levels.size(), ErrorKind::LevelMismatch,
            "accuracy file has " + std::to_string(acc.size()) + " values for " +
                std::to_string(series.levels.size()) + " levels");
    series.accuracy = acc;
  }
  Json table = {{"level", series.levels}};
  for (auto m : metrics) table[std::string(to_string(m))] = series.metric(std::string(to_string(m)));
  std::vector<int> impacted;
  if (series.accuracy) {
    table["accuracy"] = *series.accuracy;
    for (double drop : accuracy_drops(series)) impacted.push_back(drop >= 0.01 ? 1 : 0);
  }
  const bool both_classes = std::count(impacted.begin(), impacted.end(), 1) > 0 &&
                            std::count(impacted.begin(), impacted.end(), 0) > 0;
  if (series.accuracy && !both_classes)
    report.warnings.push_back("accuracy never or always drops by 1%; ROC and sensitivity skipped");
  for (auto m : metrics) {
    const std::string name(to_string(m));
    MetricResult r;
    r.metric = name;
    const auto threshold = detection_threshold(series, name);
    r.value = threshold;
    r.aux["detection_threshold"] = threshold ? Json(*threshold) : Json(nullptr);
    r.aux["max_drift"] = *std::max_element(series.metric(name).begin(), series.metric(name).end());
    if (series.accuracy) {
      if (both_classes) {
        r.aux["roc_auc"] = roc_auc(series.metric(name), impacted);
        r.aux["sensitivity_at_5pct_fpr"] = sensitivity_at_fpr(series.metric(name), impacted);
      }
      try {
        r.aux["false_alarm_rate"] = false_alarm_rate(series, name);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoStablePoints) throw;
        r.aux["false_alarm_rate"] = nullptr;
      }
    }
    report.results.push_back(std::move(r));
  }
  if (series.drift.count("shesha") && series.drift.count("cka"))
    report.tables["early_warning_shesha_vs_cka"] = early_warning_compare(series, "shesha", series, "cka");
  report.tables["series"] = table;
  emit(report, rc);
  return 0;
}

// ---- transform -----------------------------------------------------------

int cmd_transform(const std::string& input, const std::string& encoder, const RunConfig& rc) {
  require(!rc.output.empty(), ErrorKind::InvalidArgument, "transform needs --output");
  const EncoderTransform t = parse_encoder(encoder, rc.seed);
  const EmbeddingMatrix x = read_matrix(input);
  const EmbeddingMatrix y = apply_encoder(x, t);
  write_matrix(rc.output, y.values(), format_for_path(rc.output));
  Json params = Json::object();
  for (const auto& [k, v] : encoder_params(t)) params[k] = v;
  const Json sidecar = {{"tool_version", kToolVersion}, {"command", "transform"}, {"seed", rc.seed},
                        {"input", input},               {"output", rc.output},  {"encoder", to_string(t)},
                        {"params", params},             {"n", y.n()},           {"d", y.d()}};
  const std::string path = rc.output + ".json";
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::Io, "cannot open '" + path + "' for writing");
  out << sidecar.dump(2) << "\n";
  return 0;
}

// ---- steer ---------------------------------------------------------------

struct SteerArgs {
  std::vector<std::string> train, test;
  std::vector<double> alphas;
  std::vector<std::string> controls;
  double l2 = 1.0;
};

// Shuffled-label values are averaged over this many permutations.
constexpr std::uint64_t kShuffles = 10;

int cmd_steer(const SteerArgs& args, const RunConfig& rc) {
  const EmbeddingMatrix x_train = read_matrix(args.train[0]);
  const LabelVector y_train = read_labels(args.train[1]);
  const EmbeddingMatrix x_test = read_matrix(args.test[0]);
  const LabelVector y_test = read_labels(args.test[1]);
  require(y_train.n_classes() >= 2, ErrorKind::SingleClass, "training labels contain a single class");
  require(static_cast<Index>(y_train.size()) == x_train.n() && static_cast<Index>(y_test.size()) == x_test.n(),
          ErrorKind::LengthMismatch, "label count does not match row count");
  const std::vector<double> alphas = args.alphas.empty() ? default_alphas() : args.alphas;

  ProbeOptions popts;
  popts.l2_penalty = args.l2;
  const LinearProbe probe = train_linear_probe(x_train.values(), y_train, popts);
  const Vector direction = steering_direction(probe);
  const SteeringResult sweep = steering_sweep(probe, x_test.values(), y_test, direction, alphas);

  Report report;
  report.command = "steer";
  report.seed = rc.seed;
  report.params = run_config_json(rc);
  report.params["train"] = args.train;
  report.params["test"] = args.test;
  report.params["alphas"] = alphas;
  report.params["controls"] = args.controls;
  report.params["l2_penalty"] = args.l2;
  if (!probe.converged)
    report.warnings.push_back("probe stopped after " + std::to_string(probe.iterations) +
                              " iterations without reaching the gradient tolerance");

  MetricResult main;
  main.metric = "max_drop";
  main.value = sweep.max_drop;
  main.aux = {{"baseline_accuracy", sweep.baseline_accuracy}, {"alphas", sweep.alphas},
              {"accuracy", sweep.accuracy}, {"probe_iterations", probe.iterations},
              {"probe_gradient_norm", probe.gradient_norm}};
  report.results.push_back(main);

  const RandomStream root(rc.seed);
  const SheshaConfig cfg = shesha_config(rc);
  for (const auto& control : args.controls) {
    if (control == "shuffled") {
      const std::vector<std::pair<std::string, SupervisedMetric>> supervised = {
          {"shesha_lc", [&](const EmbeddingMatrix& x, const LabelVector& y) {
             return shesha_label_conditioned(x, y, cfg).value;
           }},
          {"variance_ratio", [](const EmbeddingMatrix& x, const LabelVector& y) {
             return shesha_variance_ratio(x, y);
           }}};
      for (std::size_t i = 0; i < supervised.size(); ++i) {
        const auto& [name, fn] = supervised[i];
        MetricResult r;
        r.metric = "shuffled_" + name;
        const RandomStream stream = root.derive(10 + i);
        double total = 0.0;
        for (std::uint64_t s = 0; s < kShuffles; ++s) total += shuffled_label_control(x_train, y_train, fn, stream.derive(s));
        r.value = total / static_cast<double>(kShuffles);
        r.aux["shuffles"] = kShuffles;
        r.aux["true_labels"] = fn(x_train, y_train);
        report.results.push_back(std::move(r));
      }
    } else if (control.rfind("random:", 0) == 0) {
      int m = 0;
      try {
        std::size_t used = 0;
        m = std::stoi(control.substr(7), &used);
        require(used == control.size() - 7 && m > 0, ErrorKind::SpecParse, "bad control '" + control + "'");
      } catch (const std::logic_error&) {
        fail(ErrorKind::SpecParse, "bad control '" + control + "'");
      }
      MetricResult r;
      r.metric = "random_direction_drop";
      r.value = random_direction_control(probe, x_test.values(), y_test, m, root.derive(20), alphas);
      r.aux["directions"] = m;
      r.aux["true_to_random_ratio"] = *r.value > 0 ? Json(sweep.max_drop / *r.value) : Json(nullptr);
      report.results.push_back(std::move(r));
    } else {
      fail(ErrorKind::SpecParse, "unknown control '" + control + "' (expected shuffled or random:m)");
    }
  }
  emit(report, rc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric stability metrics for embedding matrices"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  RunConfig rc;

  MetricsArgs margs;
  auto* metrics = app.add_subcommand("metrics", "compute metrics for one embedding matrix");
  metrics->add_option("--input", margs.input, "embedding matrix (CSV or binary)")->required();
  metrics->add_option("--labels", margs.labels, "single-column label file");
  metrics->add_option("--label-col", margs.label_col, "label column inside the input CSV");
  metrics->add_option("--reference", margs.reference, "second matrix for similarity metrics");
  metrics->add_option("--metric", margs.metrics, "metric names")->required()->delimiter(',');
  metrics->add_option("--k", margs.k, "subspace dimension for subspace_overlap");
  metrics->add_option("--split-index", margs.split_index, "first row of the second group for centroid_drift");
  add_run_config(metrics, rc);

  std::string suite;
  auto* validate = app.add_subcommand("validate", "run a validation suite");
  validate->add_option("--suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  add_run_config(validate, rc);

  DriftArgs dargs;
  auto* drift = app.add_subcommand("drift", "drift between snapshots or along a noise sweep");
  drift->add_option("--baseline", dargs.baseline, "baseline matrix")->required();
  drift->add_option("--current", dargs.current, "current matrix");
  drift->add_option("--sweep", dargs.sweep, "noise:s1,s2,...");
  drift->add_option("--metrics", dargs.metrics, "drift metrics")->delimiter(',');
  drift->add_option("--accuracy", dargs.accuracy, "one accuracy per sweep level");
  add_run_config(drift, rc);

  std::string tinput, encoder;
  auto* transform = app.add_subcommand("transform", "apply an encoder transform");
  transform->add_option("--input", tinput, "embedding matrix")->required();
  transform->add_option("--encoder", encoder, "kind(:key=value)*")->required();
  add_run_config(transform, rc);

  SteerArgs sargs;
  auto* steer = app.add_subcommand("steer", "probe steering sweep with controls");
  steer->add_option("--train", sargs.train, "embeddings,labels")->required()->expected(2)->delimiter(',');
  steer->add_option("--test", sargs.test, "embeddings,labels")->required()->expected(2)->delimiter(',');
  steer->add_option("--alphas", sargs.alphas, "steering scales")->delimiter(',');
  steer->add_option("--controls", sargs.controls, "shuffled and/or random:m")->delimiter(',');
  steer->add_option("--l2", sargs.l2, "probe L2 penalty")->check(CLI::NonNegativeNumber);
  add_run_config(steer, rc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (rc.workers > 0) kernels::set_workers(rc.workers);
    int code = 0;
    if (*metrics) code = cmd_metrics(margs, rc);
    if (*validate) code = cmd_validate(suite, rc);
    if (*drift) code = cmd_drift(dargs, rc);
    if (*transform) code = cmd_transform(tinput, encoder, rc);
    if (*steer) code = cmd_steer(sargs, rc);
    return code;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 2;
  }
}
