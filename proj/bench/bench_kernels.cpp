#include <benchmark/benchmark.h>

#include "gstab/kernels.hpp"
#include "gstab/random.hpp"

namespace {

gstab::Matrix make_matrix(gstab::Index n, gstab::Index d) {
  gstab::Engine engine = gstab::RandomStream(7).engine();
  return gstab::standard_normal(n, d, engine);
}

std::vector<double> make_vector(std::size_t n, std::uint64_t seed) {
  gstab::Engine engine = gstab::RandomStream(seed).engine();
  const gstab::Vector v = gstab::standard_normal(static_cast<gstab::Index>(n), engine);
  return std::vector<double>(v.data(), v.data() + n);
}

void BM_DistancesSerial(benchmark::State& state) {
  const auto x = make_matrix(state.range(0), 128);
  for (auto _ : state)
    benchmark::DoNotOptimize(gstab::kernels::serial::condensed_distances(x, gstab::DistanceKind::cosine));
}

void BM_DistancesParallel(benchmark::State& state) {
  const auto x = make_matrix(state.range(0), 128);
  for (auto _ : state)
    benchmark::DoNotOptimize(gstab::kernels::parallel::condensed_distances(x, gstab::DistanceKind::cosine));
}

void BM_RanksSerial(benchmark::State& state) {
  const auto v = make_vector(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(gstab::kernels::serial::average_ranks(v));
}

void BM_RanksParallel(benchmark::State& state) {
  const auto v = make_vector(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(gstab::kernels::parallel::average_ranks(v));
}

void BM_PearsonSerial(benchmark::State& state) {
  const auto a = make_vector(static_cast<std::size_t>(state.range(0)), 1);
  const auto b = make_vector(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(gstab::kernels::serial::pearson(a, b));
}

void BM_PearsonParallel(benchmark::State& state) {
  const auto a = make_vector(static_cast<std::size_t>(state.range(0)), 1);
  const auto b = make_vector(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(gstab::kernels::parallel::pearson(a, b));
}

}  // namespace

BENCHMARK(BM_DistancesSerial)->Arg(200)->Arg(800)->Arg(1600);
BENCHMARK(BM_DistancesParallel)->Arg(200)->Arg(800)->Arg(1600);
// The serial ranks are the quadratic counting definition, so sizes stay small.
BENCHMARK(BM_RanksSerial)->Arg(4950)->Arg(19900);
BENCHMARK(BM_RanksParallel)->Arg(4950)->Arg(19900);
BENCHMARK(BM_PearsonSerial)->Arg(19900)->Arg(1279200);
BENCHMARK(BM_PearsonParallel)->Arg(19900)->Arg(1279200);

BENCHMARK_MAIN();
