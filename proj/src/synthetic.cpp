#include "gstab/synthetic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "gstab/error.hpp"
#include "gstab/similarity.hpp"

namespace gstab {

EmbeddingMatrix gen_mixed(const MixedSpec& spec) {
  require(spec.alpha >= 0.0 && spec.alpha <= 1.0, ErrorKind::InvalidArgument, "alpha must lie in [0, 1]");
  require(spec.n >= 2 && spec.d >= 1 && spec.k_latent >= 1 && spec.k_latent <= std::min(spec.n, spec.d),
          ErrorKind::InvalidShape, "mixed generator needs n >= 2, d >= 1 and 1 <= k_latent <= min(n, d)");
  const RandomStream stream(spec.seed);
  Engine ez = stream.derive(0).engine();
  Engine ew = stream.derive(1).engine();
  Engine ee = stream.derive(2).engine();
  const Matrix z = standard_normal(spec.n, spec.k_latent, ez);
  const Matrix w = standard_normal(spec.k_latent, spec.d, ew);
  const Matrix noise = standard_normal(spec.n, spec.d, ee);
  Matrix signal = z * w;
  // Unit RMS per entry so signal and noise share a scale.
  signal *= std::sqrt(static_cast<double>(spec.n * spec.d)) / signal.norm();
  return EmbeddingMatrix(spec.alpha * signal + (1.0 - spec.alpha) * noise);
}

EmbeddingMatrix gen_power_law(Index n, Index d, std::uint64_t seed) {
  const RandomStream stream(seed);
  const Matrix u = random_orthogonal(n, stream.derive(0));
  const Matrix v = random_orthogonal(d, stream.derive(1));
  const Index m = std::min(n, d);
  Vector s(m);
  for (Index i = 0; i < m; ++i) s(i) = 100.0 / static_cast<double>(i + 1);
  return EmbeddingMatrix(u.leftCols(m) * s.asDiagonal() * v.leftCols(m).transpose());
}

EmbeddingMatrix spectral_delete(const Matrix& x, Index k_remove) {
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Matrix c = x.rowwise() - mean;
  const Svd svd = thin_svd(c);
  Index rank = 0;
  for (Index j = 0; j < svd.s.size(); ++j)
    if (svd.s(j) > 1e-10 * svd.s(0)) ++rank;
  require(k_remove >= 0 && k_remove < rank, ErrorKind::RankTooHigh,
          "cannot delete " + std::to_string(k_remove) + " components from rank " + std::to_string(rank));
  Matrix coords = svd.u * svd.s.asDiagonal();
  coords.leftCols(k_remove).setZero();
  // Back in the original feature basis: feature-split partitions features,
  // so the basis matters.
  Matrix out = coords * svd.v.transpose();
  out.rowwise() += mean;
  return EmbeddingMatrix(std::move(out));
}

std::string_view to_string(Quadrant q) {
  switch (q) {
    case Quadrant::Q1: return "Q1";
    case Quadrant::Q2: return "Q2";
    case Quadrant::Q3: return "Q3";
    case Quadrant::Q4: return "Q4";
  }
  return "?";
}

std::vector<QuadrantPair> gen_quadrants(int pairs_per_quadrant, std::uint64_t seed, const SheshaConfig& cfg) {
  require(pairs_per_quadrant >= 1, ErrorKind::InvalidArgument, "pairs_per_quadrant must be positive");
  const RandomStream root(seed);
  const Index total = 4 * static_cast<Index>(pairs_per_quadrant);
  std::vector<QuadrantPair> out(static_cast<std::size_t>(total));
  auto mixed = [](double alpha, std::uint64_t s) {
    MixedSpec spec;
    spec.alpha = alpha;
    spec.seed = s;
    return gen_mixed(spec);
  };
  // Outer loop is serial over pairs; the Shesha calls inside parallelize
  // over splits.
  for (Index idx = 0; idx < total; ++idx) {
    const auto q = static_cast<Quadrant>(idx / pairs_per_quadrant);
    const RandomStream stream = root.derive(static_cast<std::uint64_t>(idx));
    QuadrantPair& pair = out[static_cast<std::size_t>(idx)];
    pair.quadrant = q;
    switch (q) {
      case Quadrant::Q1: {
        pair.x = mixed(0.9, stream.replicate_seed(0));
        Engine engine = stream.derive(1).engine();
        pair.y = EmbeddingMatrix(pair.x.values() + 0.1 * standard_normal(pair.x.n(), pair.x.d(), engine));
        break;
      }
      case Quadrant::Q2:
        pair.x = mixed(0.9, stream.replicate_seed(0));
        pair.y = mixed(0.9, stream.replicate_seed(1));
        break;
      case Quadrant::Q3:
        pair.x = mixed(0.1, stream.replicate_seed(0));
        pair.y = mixed(0.1, stream.replicate_seed(1));
        break;
      case Quadrant::Q4: {
        constexpr int kAttempts = 100;
        pair.accepted = false;
        for (int attempt = 0; attempt < kAttempts && !pair.accepted; ++attempt) {
          Engine engine = stream.derive(static_cast<std::uint64_t>(attempt)).engine();
          pair.x = EmbeddingMatrix(standard_normal(200, 256, engine));
          pair.y = EmbeddingMatrix(pair.x.values() + 0.15 * standard_normal(200, 256, engine));
          pair.accepted = shesha_feature_split(pair.x, cfg).value < 0.4 &&
                          debiased_cka(pair.x.values(), pair.y.values()) > 0.4;
        }
        require(pair.accepted, ErrorKind::RejectionExhausted, "Q4 rejection sampling exhausted 100 attempts");
        break;
      }
    }
  }
  return out;
}

namespace {

struct KindName {
  EncoderKind kind;
  std::string_view name;
};

constexpr KindName kKinds[] = {
    {EncoderKind::pca, "pca"},
    {EncoderKind::random_projection, "random_projection"},
    {EncoderKind::top_variance, "top_variance"},
    {EncoderKind::random_features, "random_features"},
    {EncoderKind::noise, "noise"},
    {EncoderKind::zscore, "zscore"},
    {EncoderKind::l2, "l2"},
    {EncoderKind::identity, "identity"},
};

bool needs_k(EncoderKind kind) {
  return kind == EncoderKind::pca || kind == EncoderKind::random_projection || kind == EncoderKind::top_variance ||
         kind == EncoderKind::random_features;
}

double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  require(ec == std::errc() && end == text.data() + text.size() && std::isfinite(value), ErrorKind::SpecParse,
          "invalid number '" + std::string(text) + "' for " + std::string(what));
  return value;
}

}  // namespace

EncoderTransform parse_encoder(std::string_view text, std::uint64_t seed) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  EncoderTransform t;
  t.seed = seed;
  bool known = false;
  for (const auto& entry : kKinds)
    if (entry.name == parts[0]) {
      t.kind = entry.kind;
      known = true;
    }
  require(known, ErrorKind::SpecParse, "unknown encoder kind '" + std::string(parts[0]) + "'");
  bool have_k = false, have_sigma = false;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const std::string_view p = parts[i];
    const std::size_t eq = p.find('=');
    require(eq != std::string_view::npos && eq > 0, ErrorKind::SpecParse,
            "encoder parameter '" + std::string(p) + "' must be key=value");
    const std::string_view key = p.substr(0, eq);
    const std::string_view value = p.substr(eq + 1);
    if (key == "k" && needs_k(t.kind)) {
      const double k = parse_number(value, key);
      require(k >= 1 && k == std::floor(k), ErrorKind::SpecParse, "k must be a positive integer");
      t.k = static_cast<Index>(k);
      have_k = true;
    } else if (key == "sigma" && t.kind == EncoderKind::noise) {
      t.sigma = parse_number(value, key);
      require(t.sigma > 0.0, ErrorKind::SpecParse, "sigma must be positive");
      have_sigma = true;
    } else if (key == "seed") {
      const double s = parse_number(value, key);
      require(s >= 0 && s == std::floor(s), ErrorKind::SpecParse, "seed must be a non-negative integer");
      t.seed = static_cast<std::uint64_t>(s);
    } else {
      fail(ErrorKind::SpecParse, "parameter '" + std::string(key) + "' does not apply to '" + std::string(parts[0]) + "'");
    }
  }
  require(!needs_k(t.kind) || have_k, ErrorKind::SpecParse, std::string(parts[0]) + " requires k=<int>");
  require(t.kind != EncoderKind::noise || have_sigma, ErrorKind::SpecParse, "noise requires sigma=<real>");
  return t;
}

std::string to_string(const EncoderTransform& t) {
  std::string out;
  for (const auto& entry : kKinds)
    if (entry.kind == t.kind) out = std::string(entry.name);
  if (needs_k(t.kind)) out += ":k=" + std::to_string(t.k);
  if (t.kind == EncoderKind::noise) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, t.sigma);
    out += ":sigma=" + std::string(buf, res.ptr);
  }
  return out;
}

std::map<std::string, double> encoder_params(const EncoderTransform& t) {
  std::map<std::string, double> out;
  if (needs_k(t.kind)) out["k"] = static_cast<double>(t.k);
  if (t.kind == EncoderKind::noise) out["sigma"] = t.sigma;
  return out;
}

double global_std(const Matrix& x) {
  const double mean = x.mean();
  return std::sqrt((x.array() - mean).square().sum() / static_cast<double>(x.size()));
}

EmbeddingMatrix apply_encoder(const EmbeddingMatrix& x, const EncoderTransform& t) {
  auto check_k = [&](Index limit) {
    require(t.k >= 1 && t.k <= limit, ErrorKind::RankTooHigh,
            "k=" + std::to_string(t.k) + " outside [1, " + std::to_string(limit) + "]");
  };
  Engine engine = RandomStream(t.seed).derive(static_cast<std::uint64_t>(t.kind)).engine();
  switch (t.kind) {
    case EncoderKind::identity: return x;
    case EncoderKind::zscore: return zscore_columns(x);
    case EncoderKind::l2: return l2_normalize_rows(x);
    case EncoderKind::pca: return EmbeddingMatrix(pca(x, t.k).scores);
    case EncoderKind::random_projection: {
      check_k(std::numeric_limits<Index>::max());
      const Matrix g = standard_normal(x.d(), t.k, engine) / std::sqrt(static_cast<double>(t.k));
      return EmbeddingMatrix(x.values() * g);
    }
    case EncoderKind::top_variance: {
      check_k(x.d());
      const Matrix c = x.values().rowwise() - x.values().colwise().mean();
      const Eigen::VectorXd var = c.colwise().squaredNorm().transpose();
      std::vector<Index> order(static_cast<std::size_t>(x.d()));
      std::iota(order.begin(), order.end(), Index{0});
      std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return var(a) > var(b); });
      order.resize(static_cast<std::size_t>(t.k));
      return x.select_cols(order);
    }
    case EncoderKind::random_features: {
      check_k(x.d());
      return x.select_cols(sample_without_replacement(x.d(), t.k, engine));
    }
    case EncoderKind::noise: {
      require(t.sigma > 0.0, ErrorKind::InvalidArgument, "sigma must be positive");
      const double scale = t.sigma * global_std(x.values());
      return EmbeddingMatrix(x.values() + scale * standard_normal(x.n(), x.d(), engine));
    }
  }
  fail(ErrorKind::InvalidArgument, "unknown encoder");
}

}  // namespace gstab
