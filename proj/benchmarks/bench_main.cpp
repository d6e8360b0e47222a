#include <benchmark/benchmark.h>

#include <random>

#include "genecon/estimate.hpp"
#include "genecon/simplicity.hpp"
#include "genecon/simulate.hpp"
#include "genecon/spaces.hpp"

using namespace genecon;

namespace {

SymMatrix random_symmetric(Index k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  Matrix a(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) a(i, j) = z(rng);
  return SymMatrix(0.5 * (a + a.transpose()));
}

TraitGrid uniform_grid(Index k) {
  std::vector<double> t;
  for (Index i = 0; i < k; ++i) t.push_back(static_cast<double>(i));
  return TraitGrid(t);
}

SimulationParams bench_params(Index families) {
  const Index k = 6;
  const SymMatrix g(random_symmetric(k, 3).matrix() * random_symmetric(k, 3).matrix() / 10.0);
  SimulationParams p{.grid = uniform_grid(k),
                     .mu = Vector::Zero(k),
                     .g = simulation_covariance(g),
                     .e = SymMatrix::identity(k)};
  p.sigma2 = 0.01;
  p.families = families;
  p.family_size = 20;
  p.seed = 1;
  return p;
}

}  // namespace

static void BM_SymmetricEigen(benchmark::State& state) {
  const SymMatrix m = random_symmetric(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(symmetric_eigen(m));
}
BENCHMARK(BM_SymmetricEigen)->Arg(6)->Arg(12)->Arg(24)->Arg(48);

static void BM_SimplicityBasis(benchmark::State& state) {
  const Index k = state.range(0);
  const auto m = first_difference_measure(uniform_grid(k));
  const Matrix basis = symmetric_eigen(random_symmetric(k, 2)).vectors.rightCols(k / 2);
  for (auto _ : state) benchmark::DoNotOptimize(simplicity_basis(basis, m));
}
BENCHMARK(BM_SimplicityBasis)->Arg(6)->Arg(24);

static void BM_AnovaEstimate(benchmark::State& state) {
  const auto data = generate_dataset(bench_params(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(anova_estimate(data));
}
BENCHMARK(BM_AnovaEstimate)->Arg(100)->Arg(2000);

static void BM_GenerateDataset(benchmark::State& state) {
  const auto p = bench_params(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate_dataset(p));
}
BENCHMARK(BM_GenerateDataset)->Arg(100);

static void BM_StudyReplicate(benchmark::State& state) {
  const auto p = bench_params(100);
  const auto m = first_difference_measure(p.grid);
  for (auto _ : state) benchmark::DoNotOptimize(run_study(p, 1, 3, m));
}
BENCHMARK(BM_StudyReplicate);
