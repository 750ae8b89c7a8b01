#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gstab/core.hpp"
#include "gstab/stability.hpp"

namespace gstab {

struct MixedSpec {
  Index n = 200;
  Index d = 256;
  Index k_latent = 50;
  double alpha = 0.5;
  std::uint64_t seed = 320;
};

EmbeddingMatrix gen_mixed(const MixedSpec& spec);
EmbeddingMatrix gen_power_law(Index n = 200, Index d = 256, std::uint64_t seed = 320);
EmbeddingMatrix spectral_delete(const Matrix& x, Index k_remove);

enum class Quadrant { Q1, Q2, Q3, Q4 };
std::string_view to_string(Quadrant q);

struct QuadrantPair {
  Quadrant quadrant = Quadrant::Q1;
  EmbeddingMatrix x;
  EmbeddingMatrix y;
  bool accepted = true;
};

// cfg is the Shesha configuration used by the Q4 acceptance test.
std::vector<QuadrantPair> gen_quadrants(int pairs_per_quadrant, std::uint64_t seed, const SheshaConfig& cfg);

enum class EncoderKind { pca, random_projection, top_variance, random_features, noise, zscore, l2, identity };

struct EncoderTransform {
  EncoderKind kind = EncoderKind::identity;
  Index k = 0;
  double sigma = 0.0;
  std::uint64_t seed = 320;
};

// Grammar: kind(:param(=value))*, e.g. "pca:k=100" or "noise:sigma=0.2".
EncoderTransform parse_encoder(std::string_view text, std::uint64_t seed);
std::string to_string(const EncoderTransform& t);
std::map<std::string, double> encoder_params(const EncoderTransform& t);
EmbeddingMatrix apply_encoder(const EmbeddingMatrix& x, const EncoderTransform& t);

// Global elementwise population standard deviation.
double global_std(const Matrix& x);

}  // namespace gstab
