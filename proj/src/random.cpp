#include "gstab/random.hpp"

#include <algorithm>
#include <numeric>

namespace gstab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t RandomStream::replicate_seed(std::uint64_t index) const {
  const std::uint64_t mix = (index + 1) * 0xD1B54A32D192ED03ULL;
  return splitmix64(base_seed_ ^ splitmix64(mix));
}

Matrix standard_normal(Index rows, Index cols, Engine& engine) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) out(i, j) = normal(engine);
  return out;
}

Vector standard_normal(Index size, Engine& engine) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector out(size);
  for (Index i = 0; i < size; ++i) out(i) = normal(engine);
  return out;
}

std::vector<Index> permutation(Index n, Engine& engine) {
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::shuffle(idx.begin(), idx.end(), engine);
  return idx;
}

std::vector<Index> sample_without_replacement(Index n, Index k, Engine& engine) {
  auto idx = permutation(n, engine);
  idx.resize(static_cast<std::size_t>(k));
  std::sort(idx.begin(), idx.end());
  return idx;
}

Vector random_unit_vector(Index dim, Engine& engine) {
  Vector v = standard_normal(dim, engine);
  double norm = v.norm();
  while (norm < 1e-12) {
    v = standard_normal(dim, engine);
    norm = v.norm();
  }
  return v / norm;
}

}  // namespace gstab
